#include "wardseq/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "wardseq/error.hpp"

namespace wardseq::kernels {

namespace {

std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

// a/am > b/bm, exact
bool denser(Index a, Index am, Index b, Index bm) {
    return static_cast<__int128>(a) * bm > static_cast<__int128>(b) * am;
}

bool deviates(double v, double ell, double eps) { return std::fabs(v - ell) >= eps; }

struct Window {
    Index lo;
    Index hi;
};

std::vector<Window> peak_windows(std::span<const Index> checkpoints, std::size_t available) {
    std::vector<Window> w;
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        const Index c = checkpoints[i];
        if (c < 1 || static_cast<std::size_t>(c) > available) throw ConfigError("checkpoint outside sampled range");
        if (i > 0 && c <= checkpoints[i - 1]) throw ConfigError("checkpoints must be strictly increasing");
        w.push_back({i == 0 ? c : checkpoints[i - 1] + 1, c});
    }
    return w;
}

void consider(PeakDensity& best, Index m, Index count) {
    if (best.at == 0 || denser(count, m, best.count, best.at)) best = {m, count};
}

}  // namespace

std::vector<double> sample(const RealSeq& seq, Index lo, Index hi, Exec exec) {
    if (hi < lo) return {};
    seq.check_range(lo, hi);
    std::vector<double> out(static_cast<std::size_t>(hi - lo + 1));
    const SeqNode& node = seq.node();

    if (exec == Exec::Serial) {
        node.fill(lo, out);
        require_finite(out, lo);
        return out;
    }

    const auto chunks = static_cast<std::int64_t>(chunk_count(out.size()));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const std::size_t begin = static_cast<std::size_t>(c) * kChunk;
        const std::size_t len = std::min(kChunk, out.size() - begin);
        try {
            std::span<double> part(out.data() + begin, len);
            node.fill(lo + static_cast<Index>(begin), part);
            require_finite(part, lo + static_cast<Index>(begin));
        } catch (...) {
            errors[static_cast<std::size_t>(c)] = std::current_exception();
        }
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return out;
}

Index count_deviations(std::span<const double> v, double ell, double eps, Exec exec) {
    Index total = 0;
    const auto n = static_cast<std::int64_t>(v.size());
    if (exec == Exec::Serial) {
        for (std::int64_t i = 0; i < n; ++i) total += deviates(v[static_cast<std::size_t>(i)], ell, eps) ? 1 : 0;
        return total;
    }
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::int64_t i = 0; i < n; ++i) total += deviates(v[static_cast<std::size_t>(i)], ell, eps) ? 1 : 0;
    return total;
}

std::vector<PeakDensity> window_peak_density(std::span<const double> v, double ell, double eps,
                                             std::span<const Index> checkpoints, Exec exec) {
    const auto windows = peak_windows(checkpoints, v.size());
    std::vector<PeakDensity> best(windows.size());
    if (windows.empty()) return best;
    const Index last = windows.back().hi;

    if (exec == Exec::Serial) {
        Index count = 0;
        std::size_t w = 0;
        for (Index m = 1; m <= last; ++m) {
            count += deviates(v[static_cast<std::size_t>(m - 1)], ell, eps) ? 1 : 0;
            while (w < windows.size() && m > windows[w].hi) ++w;
            if (w < windows.size() && m >= windows[w].lo) consider(best[w], m, count);
        }
        return best;
    }

    const auto chunks = static_cast<std::int64_t>(chunk_count(static_cast<std::size_t>(last)));
    std::vector<Index> chunk_total(static_cast<std::size_t>(chunks), 0);
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const Index begin = c * static_cast<Index>(kChunk) + 1;
        const Index end = std::min<Index>(begin + static_cast<Index>(kChunk) - 1, last);
        Index t = 0;
        for (Index m = begin; m <= end; ++m) t += deviates(v[static_cast<std::size_t>(m - 1)], ell, eps) ? 1 : 0;
        chunk_total[static_cast<std::size_t>(c)] = t;
    }
    std::vector<Index> offset(static_cast<std::size_t>(chunks), 0);
    for (std::size_t c = 1; c < offset.size(); ++c) offset[c] = offset[c - 1] + chunk_total[c - 1];

    std::vector<std::vector<PeakDensity>> partial(static_cast<std::size_t>(chunks),
                                                  std::vector<PeakDensity>(windows.size()));
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const Index begin = c * static_cast<Index>(kChunk) + 1;
        const Index end = std::min<Index>(begin + static_cast<Index>(kChunk) - 1, last);
        auto& mine = partial[static_cast<std::size_t>(c)];
        Index count = offset[static_cast<std::size_t>(c)];
        std::size_t w = 0;
        while (w < windows.size() && windows[w].hi < begin) ++w;
        for (Index m = begin; m <= end; ++m) {
            count += deviates(v[static_cast<std::size_t>(m - 1)], ell, eps) ? 1 : 0;
            while (w < windows.size() && m > windows[w].hi) ++w;
            if (w < windows.size() && m >= windows[w].lo) consider(mine[w], m, count);
        }
    }
    for (const auto& mine : partial) {
        for (std::size_t w = 0; w < windows.size(); ++w) {
            if (mine[w].at != 0) consider(best[w], mine[w].at, mine[w].count);
        }
    }
    return best;
}

std::vector<Index> block_counts(std::span<const double> v, const LacunaryScheme& theta, int r_lo, int r_hi,
                                double ell, double eps, Exec exec) {
    if (r_lo < 1 || r_hi > theta.horizon() || r_lo > r_hi) throw ConfigError("block range outside scheme");
    if (static_cast<std::size_t>(theta.k(r_hi)) > v.size()) throw ConfigError("samples do not cover block range");
    std::vector<Index> out(static_cast<std::size_t>(r_hi - r_lo + 1), 0);

    auto count_block = [&](int r) {
        const IndexRange I = theta.interval(r);
        Index c = 0;
        for (Index k = I.first; k <= I.last; ++k) c += deviates(v[static_cast<std::size_t>(k - 1)], ell, eps) ? 1 : 0;
        return c;
    };

    if (exec == Exec::Serial) {
        for (int r = r_lo; r <= r_hi; ++r) out[static_cast<std::size_t>(r - r_lo)] = count_block(r);
        return out;
    }
    // Large blocks dominate; split each one into chunks so the work balances.
    for (int r = r_lo; r <= r_hi; ++r) {
        const IndexRange I = theta.interval(r);
        if (static_cast<std::size_t>(I.size()) <= kChunk) {
            out[static_cast<std::size_t>(r - r_lo)] = count_block(r);
        } else {
            out[static_cast<std::size_t>(r - r_lo)] =
                count_deviations(v.subspan(static_cast<std::size_t>(I.first - 1), static_cast<std::size_t>(I.size())),
                                 ell, eps, Exec::Parallel);
        }
    }
    return out;
}

AbsMax window_abs_max(std::span<const double> v, Index first, Index lo, Index hi, Exec exec) {
    if (lo < first || hi < lo || static_cast<std::size_t>(hi - first) >= v.size()) {
        throw ConfigError("window outside sampled range");
    }
    auto scan = [&](Index a, Index b) {
        AbsMax m{a, std::fabs(v[static_cast<std::size_t>(a - first)])};
        for (Index i = a + 1; i <= b; ++i) {
            const double x = std::fabs(v[static_cast<std::size_t>(i - first)]);
            if (x > m.value) m = {i, x};
        }
        return m;
    };
    if (exec == Exec::Serial) return scan(lo, hi);

    const auto len = static_cast<std::size_t>(hi - lo + 1);
    const auto chunks = static_cast<std::int64_t>(chunk_count(len));
    std::vector<AbsMax> partial(static_cast<std::size_t>(chunks));
#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
        const Index a = lo + c * static_cast<Index>(kChunk);
        const Index b = std::min<Index>(a + static_cast<Index>(kChunk) - 1, hi);
        partial[static_cast<std::size_t>(c)] = scan(a, b);
    }
    AbsMax best = partial[0];
    for (std::size_t c = 1; c < partial.size(); ++c) {
        if (partial[c].value > best.value) best = partial[c];
    }
    return best;
}

}  // namespace wardseq::kernels
