#include "wardseq/methods.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wardseq/error.hpp"

namespace wardseq {

std::string to_string(Status s) {
    switch (s) {
        case Status::Holds: return "Holds";
        case Status::Fails: return "Fails";
        case Status::Inconclusive: return "Inconclusive";
    }
    return "?";
}

namespace {

std::span<const DensityPoint> last_three(const DensityTrace& t) {
    const std::size_t n = t.checkpoints.size();
    const std::size_t from = n > 3 ? n - 3 : 0;
    return std::span<const DensityPoint>(t.checkpoints).subspan(from);
}

bool trend_non_increasing(std::span<const DensityPoint> pts, double slack) {
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].density > pts[i - 1].density * (1.0 + slack)) return false;
    }
    return true;
}

bool sustained(std::span<const DensityPoint> pts, const VerdictRules& rules) {
    if (pts.empty()) return false;
    double peak = 0.0;
    for (const auto& p : pts) {
        if (p.density < rules.fail_floor) return false;
        peak = std::max(peak, p.density);
    }
    return pts.back().density >= (1.0 - rules.trend_slack) * peak;
}

void require_unit_start(const RealSeq& seq) {
    if (seq.domain_start() > 1) {
        throw ConfigError("density methods count from k = 1; sequence starts at " + std::to_string(seq.domain_start()));
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

}  // namespace

void apply_rules(Verdict& verdict, const VerdictRules& rules) {
    verdict.witnesses.clear();
    bool all_pass = !verdict.traces.empty();
    for (const auto& t : verdict.traces) {
        if (t.checkpoints.empty()) {
            all_pass = false;
            continue;
        }
        const auto tail = last_three(t);
        if (!(tail.back().density <= rules.pass_tolerance && trend_non_increasing(tail, rules.trend_slack))) {
            all_pass = false;
        }
    }
    for (const auto& t : verdict.traces) {
        const auto tail = last_three(t);
        if (sustained(tail, rules)) {
            verdict.status = Status::Fails;
            for (const auto& p : tail) verdict.witnesses.push_back(p.at);
            verdict.note = "density stays >= " + fmt(rules.fail_floor) + " at eps = " + fmt(t.epsilon);
            return;
        }
    }
    if (all_pass) {
        verdict.status = Status::Holds;
        verdict.note = "final densities <= " + fmt(rules.pass_tolerance) + " with non-increasing tail";
    } else {
        verdict.status = Status::Inconclusive;
        verdict.note = "densities neither vanish nor stay bounded away from zero on this horizon";
    }
}

CountResult counting_density(const RealSeq& seq, double ell, double eps, Index n, Exec exec) {
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    if (n < 1) throw ConfigError("n must be at least 1");
    require_unit_start(seq);
    const auto values = kernels::sample(seq, 1, n, exec);
    const Index count = kernels::count_deviations(values, ell, eps, exec);
    return {count, static_cast<double>(count) / static_cast<double>(n)};
}

std::vector<double> default_eps_grid(const RealSeq& seq) {
    Index lo = seq.domain_start();
    Index hi = lo + 999;
    if (auto end = seq.domain_end()) hi = std::min(hi, *end);
    auto v = seq.sample(lo, hi);
    for (auto& x : v) x = std::fabs(x);
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    double median = *mid;
    if (v.size() % 2 == 0) {
        const double lower = *std::max_element(v.begin(), mid);
        median = 0.5 * (median + lower);
    }
    const double scale = std::max(1.0, median);
    return {scale, scale / 2.0, scale / 4.0, scale / 10.0};
}

std::vector<Index> default_checkpoints(Index horizon) {
    std::vector<Index> out;
    for (Index c = horizon; c >= 16 && out.size() < 6; c /= 4) out.push_back(c);
    if (out.empty()) out.push_back(std::max<Index>(horizon, 1));
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<int> default_r_checkpoints(int r_max) {
    const int lo = std::max(1, r_max / 2);
    std::vector<int> out;
    for (int i = 0; i < 6; ++i) {
        const int r = lo + static_cast<int>(std::lround(static_cast<double>(i) * (r_max - lo) / 5.0));
        if (out.empty() || r > out.back()) out.push_back(r);
    }
    return out;
}

Verdict stat_limit_verdict(const RealSeq& seq, double ell, const std::vector<double>& eps_grid,
                           const std::vector<Index>& checkpoints, const VerdictRules& rules, Exec exec) {
    if (eps_grid.empty() || checkpoints.empty()) throw ConfigError("eps grid and checkpoints must be non-empty");
    for (double e : eps_grid) {
        if (!(e > 0.0)) throw ConfigError("eps must be positive");
    }
    require_unit_start(seq);
    const auto values = kernels::sample(seq, 1, checkpoints.back(), exec);

    Verdict v;
    for (double eps : eps_grid) {
        DensityTrace trace{eps, {}};
        const auto peaks = kernels::window_peak_density(values, ell, eps, checkpoints, exec);
        for (std::size_t i = 0; i < peaks.size(); ++i) {
            const auto& p = peaks[i];
            trace.checkpoints.push_back(
                {checkpoints[i], p.at, p.count, p.at, static_cast<double>(p.count) / static_cast<double>(p.at)});
        }
        v.traces.push_back(std::move(trace));
    }
    apply_rules(v, rules);
    return v;
}

CountResult block_density(const RealSeq& seq, const LacunaryScheme& theta, double ell, double eps, int r) {
    if (!(eps > 0.0)) throw ConfigError("eps must be positive");
    const IndexRange I = theta.interval(r);
    const auto values = seq.sample(I.first, I.last);
    const Index count = kernels::count_deviations(values, ell, eps, Exec::Serial);
    return {count, static_cast<double>(count) / static_cast<double>(I.size())};
}

Verdict lacunary_stat_limit_verdict(const RealSeq& seq, const LacunaryScheme& theta, double ell,
                                    const std::vector<double>& eps_grid, const std::vector<int>& r_checkpoints,
                                    const VerdictRules& rules, Exec exec) {
    if (eps_grid.empty() || r_checkpoints.empty()) throw ConfigError("eps grid and checkpoints must be non-empty");
    for (std::size_t i = 0; i < r_checkpoints.size(); ++i) {
        if (r_checkpoints[i] < 1 || r_checkpoints[i] > theta.horizon()) {
            throw ConfigError("block checkpoint outside materialized scheme");
        }
        if (i > 0 && r_checkpoints[i] <= r_checkpoints[i - 1]) throw ConfigError("block checkpoints must increase");
    }
    for (double e : eps_grid) {
        if (!(e > 0.0)) throw ConfigError("eps must be positive");
    }
    require_unit_start(seq);
    const int r_first = r_checkpoints.front();
    const int r_last = r_checkpoints.back();
    const auto values = kernels::sample(seq, 1, theta.k(r_last), exec);

    Verdict v;
    for (double eps : eps_grid) {
        const auto counts = kernels::block_counts(values, theta, r_first, r_last, ell, eps, exec);
        DensityTrace trace{eps, {}};
        int lo = r_first;
        for (int rc : r_checkpoints) {
            int best = lo;
            for (int r = lo + 1; r <= rc; ++r) {
                const Index c = counts[static_cast<std::size_t>(r - r_first)];
                const Index cb = counts[static_cast<std::size_t>(best - r_first)];
                if (static_cast<__int128>(c) * theta.h(best) > static_cast<__int128>(cb) * theta.h(r)) best = r;
            }
            const Index c = counts[static_cast<std::size_t>(best - r_first)];
            trace.checkpoints.push_back(
                {rc, best, c, theta.h(best), static_cast<double>(c) / static_cast<double>(theta.h(best))});
            lo = rc + 1;
        }
        v.traces.push_back(std::move(trace));
    }
    apply_rules(v, rules);
    return v;
}

namespace {

struct Neumaier {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

AbelEstimate abel_at(const RealSeq& seq, Index start, double x, const AbelOptions& opts) {
    Neumaier acc;
    double xpow = 1.0;
    double sup = 0.0;
    double envelope = 0.0;  // C in |p_k| <= C (k+1)^d
    // record maxima (index, value) to compare first-half and overall sup
    std::vector<std::pair<Index, double>> records;
    constexpr Index kBlock = 4096;
    std::vector<double> buf;

    for (Index base = 0; base < opts.max_terms; base += kBlock) {
        buf.resize(static_cast<std::size_t>(kBlock));
        seq.sample(start + base, buf);
        for (Index i = 0; i < kBlock; ++i) {
            const Index k = base + i;
            const double p = buf[static_cast<std::size_t>(i)];
            acc.add(p * xpow);
            if (std::fabs(p) > sup) {
                sup = std::fabs(p);
                records.emplace_back(k, sup);
            }
            if (opts.growth_degree) {
                envelope = std::max(envelope, std::fabs(p) / std::pow(static_cast<double>(k + 1), *opts.growth_degree));
            }
            xpow *= x;
            if (k < 16) continue;

            double bound = 0.0;
            if (opts.growth_degree) {
                const double d = *opts.growth_degree;
                const double ratio = x * std::pow((static_cast<double>(k) + 3.0) / (static_cast<double>(k) + 2.0), d);
                if (ratio >= 1.0) continue;
                bound = (1.0 - x) * envelope * std::pow(static_cast<double>(k) + 2.0, d) * xpow / (1.0 - ratio);
            } else {
                bound = sup * xpow;
            }
            if (bound < opts.series_tol) {
                if (!opts.growth_degree) {
                    double first_half = 0.0;
                    for (const auto& [idx, val] : records) {
                        if (idx <= k / 2) first_half = val;
                    }
                    if (sup > 1.5 * first_half + opts.series_tol) {
                        throw ConfigError("Abel series truncation bound unavailable: terms not observed bounded "
                                          "(declare a growth degree)");
                    }
                }
                return {x, (1.0 - x) * acc.value(), k + 1};
            }
        }
    }
    throw ConfigError("Abel series did not reach tolerance within max_terms");
}

}  // namespace

AbelResult abel_limit(const RealSeq& seq, const std::vector<double>& x_grid, const AbelOptions& opts) {
    if (x_grid.empty()) throw ConfigError("x grid must be non-empty");
    for (std::size_t i = 0; i < x_grid.size(); ++i) {
        if (!(x_grid[i] > 0.0 && x_grid[i] < 1.0)) throw ConfigError("x grid must lie in (0, 1)");
        if (i > 0 && x_grid[i] <= x_grid[i - 1]) throw ConfigError("x grid must be increasing");
    }
    const Index start = opts.start.value_or(seq.domain_start());
    AbelResult out;
    for (double x : x_grid) out.estimates.push_back(abel_at(seq, start, x, opts));
    out.extrapolated = out.estimates.back().value;

    if (opts.target) {
        const double ell = *opts.target;
        const double band = 10.0 * (1.0 - x_grid.back()) + opts.verdict_tol;
        Verdict v;
        for (const auto& e : out.estimates) v.evidence.push_back({"abel_estimate", e.x, e.value});
        const std::size_t n = out.estimates.size();
        bool decreasing = true;
        for (std::size_t i = (n > 3 ? n - 3 : 0) + 1; i < n; ++i) {
            const double prev = std::fabs(out.estimates[i - 1].value - ell);
            const double cur = std::fabs(out.estimates[i].value - ell);
            if (cur > prev * 1.1 + opts.verdict_tol) decreasing = false;
        }
        const double dev = std::fabs(out.extrapolated - ell);
        if (dev <= band && decreasing) {
            v.status = Status::Holds;
            v.note = "estimate within " + fmt(band) + " of target";
        } else if (dev >= 10.0 * band) {
            v.status = Status::Fails;
            v.witnesses.push_back(static_cast<Index>(n - 1));
            v.note = "estimate at largest x is " + fmt(dev) + " from target";
        } else {
            v.status = Status::Inconclusive;
            v.note = "estimate not settled near target";
        }
        out.verdict = std::move(v);
    }
    return out;
}

MatrixSpec MatrixSpec::identity() {
    return {"identity", [](Index n, Index k) { return n == k ? 1.0 : 0.0; },
            [](Index n) { return std::pair<Index, Index>{n, n}; }, 0.0, 0};
}

MatrixSpec MatrixSpec::cesaro() {
    return {"cesaro", [](Index n, Index k) { return k <= n ? 1.0 / static_cast<double>(n) : 0.0; },
            [](Index n) { return std::pair<Index, Index>{1, n}; }, 0.0, 4};
}

double matrix_transform(const MatrixSpec& a, const RealSeq& seq, Index n) {
    const auto [lo, hi] = a.support(n);
    if (hi < lo) throw ConfigError("empty row support");
    for (Index k = hi + 1; k <= hi + a.probe_columns; ++k) {
        if (std::fabs(a.entry(n, k)) > a.truncation_tol) {
            throw ConfigError("row " + std::to_string(n) + " has entries beyond its declared support (divergent row)");
        }
    }
    const auto values = seq.sample(lo, hi);
    double sum = 0.0;
    for (Index k = lo; k <= hi; ++k) sum += a.entry(n, k) * values[static_cast<std::size_t>(k - lo)];
    return sum;
}

double almost_convergence_estimate(const RealSeq& seq, double ell, Index n, Index J, Exec exec) {
    if (n < 1 || J < 0) throw ConfigError("almost convergence needs n >= 1 and J >= 0");
    const auto values = kernels::sample(seq, 1, n + J, exec);
    std::vector<double> dev(static_cast<std::size_t>(J + 1));
    auto window = [&](Index j) {
        double s = 0.0;
        for (Index k = 1; k <= n; ++k) s += values[static_cast<std::size_t>(k + j - 1)];
        dev[static_cast<std::size_t>(j)] = std::fabs(s / static_cast<double>(n) - ell);
    };
    if (exec == Exec::Serial) {
        for (Index j = 0; j <= J; ++j) window(j);
    } else {
#pragma omp parallel for schedule(static)
        for (Index j = 0; j <= J; ++j) window(j);
    }
    return *std::max_element(dev.begin(), dev.end());
}

}  // namespace wardseq
