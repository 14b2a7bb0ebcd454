#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wardseq/kernels.hpp"
#include "wardseq/lacunary.hpp"
#include "wardseq/sequence.hpp"

namespace wardseq {

using kernels::Exec;

enum class Status { Holds, Fails, Inconclusive };

std::string to_string(Status s);

/// One row of a density trace. For windowed traces `at` is the index (or block)
/// inside the checkpoint's window where the density peaks; density == count / denominator.
struct DensityPoint {
    Index checkpoint = 0;
    Index at = 0;
    Index count = 0;
    Index denominator = 1;
    double density = 0.0;
};

struct DensityTrace {
    double epsilon = 0.0;
    std::vector<DensityPoint> checkpoints;
};

/// Non-density evidence (window maxima, estimates) attached to a verdict.
struct Evidence {
    std::string label;
    double at = 0.0;
    double value = 0.0;
};

struct Verdict {
    Status status = Status::Inconclusive;
    std::vector<DensityTrace> traces;
    std::vector<Index> witnesses;
    std::string note;
    std::vector<Evidence> evidence;
};

/// Finite stand-ins for "density -> 0" and "density does not -> 0".
struct VerdictRules {
    double pass_tolerance = 0.02;
    double fail_floor = 0.1;
    double trend_slack = 0.1;
};

/// Applies the Holds/Fails/Inconclusive rules to finished traces and fills
/// status, witnesses and note.
///
/// Holds: every trace ends at density <= pass_tolerance and its last three
/// points are non-increasing within trend_slack.
/// Fails: some trace stays >= fail_floor on its last three points without
/// decaying by more than trend_slack across them; witnesses are the peak
/// locations of those points.
void apply_rules(Verdict& verdict, const VerdictRules& rules);

struct CountResult {
    Index count = 0;
    double density = 0.0;
};

/// |{k <= n : |seq(k) - ell| >= eps}| and that count over n.
CountResult counting_density(const RealSeq& seq, double ell, double eps, Index n, Exec exec = Exec::Parallel);

/// {1, 1/2, 1/4, 1/10} * max(1, median |seq| over the first 1000 terms).
std::vector<double> default_eps_grid(const RealSeq& seq);

/// Geometric ladder horizon/4^i (at most six points, none below 16), increasing.
std::vector<Index> default_checkpoints(Index horizon);

/// Six evenly spaced blocks in the upper half of 1..r_max.
std::vector<int> default_r_checkpoints(int r_max);

/// Natural-density verdict for st-lim seq = ell. Each checkpoint reports the
/// peak running density over its window (previous checkpoint, checkpoint].
Verdict stat_limit_verdict(const RealSeq& seq, double ell, const std::vector<double>& eps_grid,
                           const std::vector<Index>& checkpoints, const VerdictRules& rules = {},
                           Exec exec = Exec::Parallel);

/// Deviation count inside I_r and that count over h_r.
CountResult block_density(const RealSeq& seq, const LacunaryScheme& theta, double ell, double eps, int r);

/// Lacunary-density verdict for S_theta-lim seq = ell. Each checkpoint reports
/// the largest block density over blocks (previous checkpoint, checkpoint].
Verdict lacunary_stat_limit_verdict(const RealSeq& seq, const LacunaryScheme& theta, double ell,
                                    const std::vector<double>& eps_grid, const std::vector<int>& r_checkpoints,
                                    const VerdictRules& rules = {}, Exec exec = Exec::Parallel);

struct AbelOptions {
    double series_tol = 1e-12;
    /// Declared envelope |p_k| <= C (k+1)^d for sequences that are not bounded.
    std::optional<double> growth_degree;
    /// Verdict target; no verdict without it.
    std::optional<double> target;
    /// Sequence index mapped to k = 0; defaults to the sequence's domain start.
    std::optional<Index> start;
    double verdict_tol = 1e-9;
    Index max_terms = Index{1} << 31;
};

struct AbelEstimate {
    double x = 0.0;
    double value = 0.0;
    Index terms = 0;
};

struct AbelResult {
    std::vector<AbelEstimate> estimates;
    double extrapolated = 0.0;
    std::optional<Verdict> verdict;
};

/// (1 - x) sum_k p_k x^k on each x of an increasing grid in (0, 1).
AbelResult abel_limit(const RealSeq& seq, const std::vector<double>& x_grid, const AbelOptions& opts = {});

/// Row rule of a summability matrix. Row n is supported on columns
/// support(n).first .. support(n).second; entries in the `probe_columns`
/// columns beyond must be below `truncation_tol`.
struct MatrixSpec {
    std::string name;
    std::function<double(Index n, Index k)> entry;
    std::function<std::pair<Index, Index>(Index n)> support;
    double truncation_tol = 0.0;
    Index probe_columns = 0;

    static MatrixSpec identity();
    static MatrixSpec cesaro();
};

double matrix_transform(const MatrixSpec& a, const RealSeq& seq, Index n);

/// max over j in 0..J of |(1/n) sum_{k=1..n} seq(k + j) - ell|
double almost_convergence_estimate(const RealSeq& seq, double ell, Index n, Index J, Exec exec = Exec::Parallel);

}  // namespace wardseq
