#pragma once

#include <string>
#include <vector>

#include "wardseq/lacunary.hpp"
#include "wardseq/methods.hpp"
#include "wardseq/sequence.hpp"

namespace wardseq {

inline constexpr Index kHorizonCap = Index{1} << 24;

struct DetectorParams {
    Index horizon = Index{1} << 20;
    /// Tail-window tolerance for "null sequence" (quasi-Cauchy, delta-quasi-Cauchy, convergence).
    double qc_tol = 1e-2;
    /// Tolerance on M(lambda, n) at the smallest lambda.
    double so_tol = 0.1;
    std::vector<double> lambda_grid{1.01, 1.05, 1.1, 1.5};
    /// Number of base indices n sampled in the tail window for slow oscillation.
    int so_samples = 64;
    /// Empty means the default grid/ladder derived from the sequence and horizon.
    std::vector<double> eps_grid;
    std::vector<Index> checkpoints;
    std::vector<int> r_checkpoints;
    VerdictRules rules;
    double theta_margin = 0.05;
    Index horizon_cap = kHorizonCap;
    Exec exec = Exec::Parallel;
};

/// Horizon cap honoring SEQ_HORIZON_CAP (which may only lower it).
Index effective_horizon_cap();

/// Holds iff the tail-window maximum of |delta seq| over [N/2, N] is <= tol at
/// N = horizon and the window maxima along the ladder are non-increasing.
/// Fails if the last three window maxima all stay >= 10 tol.
Verdict is_quasi_cauchy(const RealSeq& seq, Index horizon, double tol, Exec exec = Exec::Parallel);

/// st-lim delta seq = 0
Verdict is_stat_quasi_cauchy(const RealSeq& seq, const DetectorParams& params = {});

/// S_theta-lim delta seq = 0. `theta` must cover the horizon for the default checkpoints.
Verdict is_lac_stat_quasi_cauchy(const RealSeq& seq, const LacunaryScheme& theta, const DetectorParams& params = {});

/// M(lambda, n) = max_{n < k <= floor(lambda n)} |seq(k) - seq(n)| over n sampled in [N/2, N].
Verdict is_slowly_oscillating(const RealSeq& seq, const std::vector<double>& lambda_grid, Index horizon, double tol,
                              int samples = 64);

/// Tail-window test on delta2 seq.
Verdict is_delta_quasi_cauchy(const RealSeq& seq, const DetectorParams& params = {});

/// Ordinary convergence: tail-window maxima of |seq(n) - seq(N)|; the limit
/// estimate is seq(N), reported as evidence "limit".
Verdict is_convergent(const RealSeq& seq, Index horizon, double tol, Exec exec = Exec::Parallel);

struct ClassReport {
    std::string sequence;
    std::string theta;
    Index horizon = 0;
    Verdict quasi_cauchy;
    Verdict stat_qc;
    Verdict lac_stat_qc;
    Verdict slowly_oscillating;
    Verdict delta_qc;
    bool theta_margin_ok = false;
    std::vector<std::string> notes;
};

/// Runs all five detectors on a shared horizon and repairs verdict-level
/// implication violations by one 4x escalation of the weaker detector.
ClassReport classify(const RealSeq& seq, const LacunaryScheme& theta, const DetectorParams& params = {});

/// True when the report respects quasi_cauchy => stat_qc, stat_qc (+margin) => lac_stat_qc,
/// and slowly_oscillating => quasi_cauchy at verdict level.
bool report_consistent(const ClassReport& report);

}  // namespace wardseq
