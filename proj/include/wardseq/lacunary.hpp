#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "wardseq/sequence.hpp"

namespace wardseq {

/// Generator for a lacunary sequence k_0 = 0 < k_1 < k_2 < ...
///
/// Descriptor strings: "geo:<rho>", "poly:<p>", "fact", "explicit:0,k1,k2,...".
struct SchemeSpec {
    enum class Kind { Geometric, Polynomial, Factorial, Explicit };

    Kind kind = Kind::Geometric;
    double param = 2.0;         // rho for Geometric, p for Polynomial
    std::vector<Index> table;   // Explicit, starting at k_0

    static SchemeSpec parse(std::string_view descriptor);
    std::string descriptor() const;
};

/// Inclusive integer range first..last.
struct IndexRange {
    Index first = 0;
    Index last = -1;
    Index size() const { return last - first + 1; }
    bool contains(Index n) const { return n >= first && n <= last; }
};

struct RatioStats {
    std::vector<double> window_qr;  // q_r for r = r_lo .. r_hi
    double inf_estimate = 0.0;
    double sup_estimate = 0.0;
    std::pair<int, int> window{0, 0};
};

/// Materialized prefix k_0 .. k_R of a lacunary sequence.
class LacunaryScheme {
public:
    LacunaryScheme() = default;
    LacunaryScheme(SchemeSpec spec, std::vector<Index> k);

    int horizon() const { return static_cast<int>(k_.size()) - 1; }
    Index k(int r) const { return k_.at(static_cast<std::size_t>(r)); }
    Index h(int r) const { return k(r) - k(r - 1); }
    /// q_r = k_r / k_{r-1}; defined for r >= 2.
    double q(int r) const;

    /// (k_{r-1}, k_r] as the integers k_{r-1}+1 .. k_r.
    IndexRange interval(int r) const;

    /// Block index r with n in I_r, or 0 if n is beyond k_R.
    int block_of(Index n) const;

    /// Largest r with k_r <= n.
    int last_block_within(Index n) const;

    const std::vector<Index>& ks() const { return k_; }
    const std::vector<std::string>& warnings() const { return warnings_; }
    const SchemeSpec& spec() const { return spec_; }
    std::string descriptor() const { return spec_.descriptor(); }

private:
    void validate();

    SchemeSpec spec_;
    std::vector<Index> k_;
    std::vector<std::string> warnings_;
};

/// Materializes r = 0 .. horizon_r. Throws ConfigError on k_0 != 0, non-monotone k_r,
/// horizon_r < 2 or int64 overflow.
LacunaryScheme make_lacunary(const SchemeSpec& spec, int horizon_r);
LacunaryScheme make_lacunary(std::string_view descriptor, int horizon_r);

/// Materializes blocks until k_R >= max_index (or the generator is exhausted).
LacunaryScheme make_lacunary_covering(const SchemeSpec& spec, Index max_index);

/// Min/max of q_r over r_lo..r_hi (requires 2 <= r_lo <= r_hi <= horizon).
RatioStats ratio_stats(const LacunaryScheme& theta, std::pair<int, int> window);
/// Default window: upper half of the materialized blocks.
RatioStats ratio_stats(const LacunaryScheme& theta);

/// Tail inf of q_r exceeds 1 + margin (finite stand-in for lim inf q_r > 1).
bool satisfies_liminf_margin(const LacunaryScheme& theta, double margin = 0.05);

}  // namespace wardseq
