#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "wardseq/lacunary.hpp"
#include "wardseq/sequence.hpp"

namespace wardseq {

enum class Expect { Member, NonMember, Unspecified };

std::string to_string(Expect e);

/// Class keys used in expectations: "cauchy", "slowly_oscillating", "quasi_cauchy",
/// "stat_qc", "lac_stat_qc", "delta_qc", "bounded".
using Expectations = std::map<std::string, Expect, std::less<>>;

struct GalleryEntry {
    std::string id;
    RealSeq seq;
    Expectations expected;
    std::string provenance;
};

/// Violations of cauchy => slowly_oscillating => quasi_cauchy => stat_qc and
/// quasi_cauchy => delta_qc among the annotations; empty when consistent.
std::vector<std::string> expectation_conflicts(const Expectations& e);

/// sqrt_n, identity, log10_n, ln_n, harmonic_partial, nested_harmonic_avg,
/// cos_pi_sqrt, cos_6log, alternating, square_indicator, interleave(a,b),
/// random_spikes:<seed>. Throws ConfigError on unknown names.
GalleryEntry builtin(std::string_view name);

/// Ids accepted by builtin() without parameters.
std::vector<std::string> builtin_names();

/// H_n = sum_{k <= n} 1/k
double harmonic(Index n);

/// Value c at a pseudo-random sparse set of indices (probability min(1, rate / sqrt n),
/// decided by a counter-based hash of (seed, n)), 0 elsewhere.
RealSeq random_spikes(std::uint64_t seed, double c = 1.0, double rate = 0.5);

/// One exact integer inequality checked during block selection: lhs op rhs.
struct Constraint {
    int j = 0;
    int r = 0;
    int r_prev = 0;        // r_{j-1}, 0 for j = 1
    std::string relation;  // human-readable form with symbols
    Index lhs = 0;
    std::string op;        // "<", ">" or "<="
    Index rhs = 0;
    bool holds = false;
};

struct BlockSelection {
    std::vector<int> r_js;
    std::vector<Constraint> constraints_log;
    std::vector<std::string> notes;
};

struct Construction {
    RealSeq seq;
    BlockSelection selection;
    LacunaryScheme theta;  // possibly extended to cover the selection
    double c = 1.0;
};

inline constexpr int kDefaultJMax = 8;

/// Greedy-minimal selection r_j >= r_{j-1} + 2 with j k_r < (j+1) k_{r-1} and
/// k_{r-1} > j k_{r_{j-1}}; the sequence is 2c (even k) / c (odd k) on the
/// selected I_{r_j} and 0 elsewhere. The scheme is extended up to `index_cap`.
Construction thm1_counterexample(const LacunaryScheme& theta, double c, int j_max = kDefaultJMax,
                                 Index index_cap = 0);

/// Greedy-minimal selection r_j > r_{j-1} with k_r > j k_{r-1} and k_r > j + 3;
/// the sequence is 2c / c on (k_{r_j - 1}, 2 k_{r_j - 1}] and 0 elsewhere.
Construction thm2_counterexample(const LacunaryScheme& theta, double c, int j_max = kDefaultJMax,
                                 Index index_cap = 0);

/// Recomputes every logged constraint from the scheme; true if all still hold.
bool recheck_constraints(const BlockSelection& sel, const LacunaryScheme& theta);

/// "thm1" / "thm2" constructions and builtins by id.
GalleryEntry gallery_entry(std::string_view id, const LacunaryScheme& theta, double c = 1.0,
                           int j_max = kDefaultJMax);

/// The zoo followed by 9 random spike sequences (seeds 1..9).
std::vector<GalleryEntry> standard_corpus();

}  // namespace wardseq
