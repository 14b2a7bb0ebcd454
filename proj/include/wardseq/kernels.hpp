#pragma once

// Data-parallel inner loops. Every kernel has a serial reference path
// (Exec::Serial) and an OpenMP path (Exec::Parallel). Work is split into
// fixed-size chunks independent of the thread count and partial results are
// merged in chunk order, so both paths return bit-identical results.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "wardseq/lacunary.hpp"
#include "wardseq/sequence.hpp"

namespace wardseq::kernels {

enum class Exec { Serial, Parallel };

inline constexpr std::size_t kChunk = 1 << 14;

/// Checked evaluation of seq at lo..hi. On failure rethrows the error of the lowest index.
std::vector<double> sample(const RealSeq& seq, Index lo, Index hi, Exec exec = Exec::Parallel);

/// |{i : |v[i] - ell| >= eps}|
Index count_deviations(std::span<const double> v, double ell, double eps, Exec exec = Exec::Parallel);

/// Largest running density count(m)/m inside a window of m values.
struct PeakDensity {
    Index at = 0;     // m achieving the peak (smallest on ties)
    Index count = 0;  // |{k <= m : |v_k - ell| >= eps}|
};

/// v[0] holds index 1. Window i is (checkpoints[i-1], checkpoints[i]]; the first
/// window is the single point checkpoints[0]. Checkpoints must be increasing and
/// at most v.size().
std::vector<PeakDensity> window_peak_density(std::span<const double> v, double ell, double eps,
                                             std::span<const Index> checkpoints, Exec exec = Exec::Parallel);

/// Deviation counts inside I_r for r = r_lo..r_hi. v[0] holds index 1 and must cover k_{r_hi}.
std::vector<Index> block_counts(std::span<const double> v, const LacunaryScheme& theta, int r_lo, int r_hi,
                                double ell, double eps, Exec exec = Exec::Parallel);

struct AbsMax {
    Index at = 0;
    double value = 0.0;
};

/// max |v| over the inclusive index window [lo, hi], where v[0] holds index `first`.
AbsMax window_abs_max(std::span<const double> v, Index first, Index lo, Index hi, Exec exec = Exec::Parallel);

}  // namespace wardseq::kernels
