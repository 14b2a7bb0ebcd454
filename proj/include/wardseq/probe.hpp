#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "wardseq/gallery.hpp"
#include "wardseq/lacunary.hpp"
#include "wardseq/methods.hpp"
#include "wardseq/sequence.hpp"
#include "wardseq/wardclass.hpp"

namespace wardseq {

/// Real function of x on the closed interval [lo, hi] (infinite ends allowed).
class FuncSpec {
public:
    /// Expression in x. Throws ParseError, or ConfigError if the 10^4-point
    /// validation grid over the domain hits a NaN/inf.
    static FuncSpec parse(std::string_view text, double lo = -std::numeric_limits<double>::infinity(),
                          double hi = std::numeric_limits<double>::infinity());
    static FuncSpec from_function(std::string name, std::function<double(double)> fn,
                                  double lo = -std::numeric_limits<double>::infinity(),
                                  double hi = std::numeric_limits<double>::infinity());

    /// Raw value; the caller checks the domain.
    double operator()(double x) const { return fn_(x); }
    bool in_domain(double x) const { return x >= lo_ && x <= hi_; }
    double lo() const { return lo_; }
    double hi() const { return hi_; }
    const std::string& text() const { return text_; }

    friend FuncSpec operator+(const FuncSpec& f, const FuncSpec& g);
    friend FuncSpec operator*(const FuncSpec& f, const FuncSpec& g);
    /// (f o g)(x) = f(g(x)) on g's domain.
    friend FuncSpec compose(const FuncSpec& f, const FuncSpec& g);

private:
    void validate() const;

    std::function<double(double)> fn_;
    double lo_ = -std::numeric_limits<double>::infinity();
    double hi_ = std::numeric_limits<double>::infinity();
    std::string text_;
};

/// n -> f(seq(n)); a value outside f's domain is an EvalError at that n.
RealSeq transport(const FuncSpec& f, const RealSeq& seq);

enum class Outcome { Supports, Fails };
std::string to_string(Outcome o);

/// Continuity types: "delta_s_theta", "delta_s_theta_c", "c", "c_delta_s_theta", "s_theta".
std::vector<std::string> continuity_types();

struct ClassVerdicts {
    Verdict lac_stat_qc;
    Verdict convergent;
    Verdict s_theta;      // S_theta-lim at the estimated limit
    double s_theta_limit = 0.0;
};

struct WitnessOutcome {
    std::string type;
    Outcome outcome = Outcome::Supports;
    Status hypothesis = Status::Inconclusive;
    Status conclusion = Status::Inconclusive;
};

struct WitnessReport {
    std::string id;
    ClassVerdicts input;
    ClassVerdicts output;
    std::vector<WitnessOutcome> outcomes;  // in continuity_types() order
};

struct TypeSummary {
    std::string type;
    Outcome outcome = Outcome::Supports;
    std::vector<std::string> failing_witnesses;
};

struct PreservationReport {
    std::string function;
    std::string theta;
    Index horizon = 0;
    std::vector<WitnessReport> witnesses;
    std::vector<TypeSummary> summary;
    /// Per-witness violations of (c) Holds => (c delta s_theta) not Fails; empty when consistent.
    std::vector<std::string> consistency_issues;
};

/// Verdicts used by the probe: lacunary statistical quasi-Cauchy, ordinary
/// convergence and S_theta convergence to the median of the last checkpoint block.
ClassVerdicts probe_classes(const RealSeq& seq, const LacunaryScheme& theta, const DetectorParams& params);

PreservationReport preservation_report(const FuncSpec& f, const std::vector<GalleryEntry>& witnesses,
                                       const LacunaryScheme& theta, const DetectorParams& params = {});

struct ModulusPoint {
    double delta = 0.0;
    double omega = 0.0;
};

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

/// omega(delta) = max |f(x) - f(y)| over pairs |x - y| <= delta drawn from a
/// 2*10^4-point interior grid of (a, b) plus 10^3 seeded random pairs.
std::vector<ModulusPoint> uniform_modulus(const FuncSpec& f, double a, double b, const std::vector<double>& delta_grid,
                                          std::uint64_t seed = kDefaultSeed);

/// Holds if max |v| <= bound_hint (witnesses: a nested-bisection subsequence with
/// shrinking gaps). Fails if the sample passes every rung bound_hint + j, j = 1..8
/// (witnesses: first index reaching each rung). Inconclusive in between.
/// v[i] is the term at index first + i.
Verdict ward_compactness_probe(const std::vector<double>& values, Index first, double bound_hint);
Verdict ward_compactness_probe(const RealSeq& seq, Index lo, Index hi, double bound_hint);

/// Increasing indices whose values lie in nested halvings of [-bound, bound],
/// so consecutive gaps are at most 2 bound / 2^j.
std::vector<Index> bisection_subsequence(const std::vector<double>& values, Index first, double bound, int depth = 20);

/// Resolves a witness id: gallery ids, "thm1"/"thm2" (falling back to poly:2 /
/// fact when theta is outside their regime) or an expression in n.
GalleryEntry resolve_witness(std::string_view id, const LacunaryScheme& theta);

}  // namespace wardseq
