#include "wardseq/probe.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <random>
#include <sstream>

#include "wardseq/error.hpp"
#include "wardseq/expr.hpp"

namespace wardseq {

namespace {

constexpr int kValidationPoints = 10000;
constexpr int kModulusGrid = 20000;
constexpr int kModulusPairs = 1000;
constexpr int kRungs = 8;

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

// Finite stand-in for an unbounded domain end.
double finite_end(double v) { return std::isfinite(v) ? v : std::copysign(1e3, v); }

}  // namespace

FuncSpec FuncSpec::parse(std::string_view text, double lo, double hi) {
    Expr e = parse_expr(text, "x");
    FuncSpec f;
    f.text_ = std::string(text);
    f.lo_ = lo;
    f.hi_ = hi;
    f.fn_ = [e = std::move(e)](double x) { return e(x); };
    f.validate();
    return f;
}

FuncSpec FuncSpec::from_function(std::string name, std::function<double(double)> fn, double lo, double hi) {
    FuncSpec f;
    f.text_ = std::move(name);
    f.fn_ = std::move(fn);
    f.lo_ = lo;
    f.hi_ = hi;
    f.validate();
    return f;
}

void FuncSpec::validate() const {
    if (!(lo_ < hi_)) throw ConfigError("function domain must satisfy lo < hi");
    const double a = std::max(lo_, -1e3);
    const double b = std::min(hi_, 1e3);
    const double lo = a < b ? a : finite_end(lo_);
    const double hi = a < b ? b : finite_end(hi_);
    for (int i = 0; i < kValidationPoints; ++i) {
        const double x = lo + (hi - lo) * (i + 0.5) / kValidationPoints;
        const double y = fn_(x);
        if (!std::isfinite(y)) throw ConfigError("f(" + fmt(x) + ") = " + fmt(y) + " on the declared domain of " + text_);
    }
}

FuncSpec operator+(const FuncSpec& f, const FuncSpec& g) {
    return FuncSpec::from_function("(" + f.text() + ") + (" + g.text() + ")",
                                   [f, g](double x) { return f(x) + g(x); }, std::max(f.lo(), g.lo()),
                                   std::min(f.hi(), g.hi()));
}

FuncSpec operator*(const FuncSpec& f, const FuncSpec& g) {
    return FuncSpec::from_function("(" + f.text() + ") * (" + g.text() + ")",
                                   [f, g](double x) { return f(x) * g(x); }, std::max(f.lo(), g.lo()),
                                   std::min(f.hi(), g.hi()));
}

FuncSpec compose(const FuncSpec& f, const FuncSpec& g) {
    return FuncSpec::from_function("(" + f.text() + ") o (" + g.text() + ")",
                                   [f, g](double x) {
                                       const double y = g(x);
                                       return f.in_domain(y) ? f(y) : std::numeric_limits<double>::quiet_NaN();
                                   },
                                   g.lo(), g.hi());
}

RealSeq transport(const FuncSpec& f, const RealSeq& seq) {
    auto fn = [f, seq](Index n) {
        const double v = seq(n);
        if (!f.in_domain(v)) throw EvalError("value " + fmt(v) + " outside the domain of " + f.text(), n);
        return f(v);
    };
    return RealSeq::from_function(f.text() + " o " + seq.describe(), fn, seq.domain_start());
}

std::string to_string(Outcome o) { return o == Outcome::Supports ? "Supports" : "Fails"; }

std::vector<std::string> continuity_types() {
    return {"delta_s_theta", "delta_s_theta_c", "c", "c_delta_s_theta", "s_theta"};
}

namespace {

LacunaryScheme covering(const LacunaryScheme& theta, Index n) {
    if (theta.k(theta.horizon()) >= n || theta.spec().kind == SchemeSpec::Kind::Explicit) return theta;
    return make_lacunary_covering(theta.spec(), n);
}

double median(std::vector<double> v) {
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

ClassVerdicts classes_at(const RealSeq& seq, const LacunaryScheme& theta, const DetectorParams& params,
                         std::optional<double> limit) {
    ClassVerdicts out;
    const LacunaryScheme th = covering(theta, params.horizon + 1);
    out.lac_stat_qc = is_lac_stat_quasi_cauchy(seq, th, params);
    out.convergent = is_convergent(seq, params.horizon, params.qc_tol, params.exec);

    std::vector<int> rcs = params.r_checkpoints;
    if (rcs.empty()) rcs = default_r_checkpoints(th.last_block_within(params.horizon));
    if (limit) {
        out.s_theta_limit = *limit;
    } else {
        const IndexRange I = th.interval(rcs.back());
        out.s_theta_limit = median(seq.sample(I.first, I.last));
    }
    const auto eps = params.eps_grid.empty() ? default_eps_grid(seq) : params.eps_grid;
    out.s_theta = lacunary_stat_limit_verdict(seq, th, out.s_theta_limit, eps, rcs, params.rules, params.exec);
    return out;
}

WitnessOutcome judge(std::string type, const Verdict& hyp, const Verdict& concl) {
    WitnessOutcome w;
    w.type = std::move(type);
    w.hypothesis = hyp.status;
    w.conclusion = concl.status;
    w.outcome = hyp.status == Status::Holds && concl.status == Status::Fails ? Outcome::Fails : Outcome::Supports;
    return w;
}

}  // namespace

ClassVerdicts probe_classes(const RealSeq& seq, const LacunaryScheme& theta, const DetectorParams& params) {
    return classes_at(seq, theta, params, std::nullopt);
}

PreservationReport preservation_report(const FuncSpec& f, const std::vector<GalleryEntry>& witnesses,
                                       const LacunaryScheme& theta, const DetectorParams& params) {
    PreservationReport rep;
    rep.function = f.text();
    rep.theta = theta.descriptor();
    rep.horizon = params.horizon;

    for (const auto& w : witnesses) {
        WitnessReport wr;
        wr.id = w.id;
        wr.input = probe_classes(w.seq, theta, params);
        const RealSeq image = transport(f, w.seq);
        std::optional<double> image_limit;
        if (f.in_domain(wr.input.s_theta_limit)) image_limit = f(wr.input.s_theta_limit);
        wr.output = classes_at(image, theta, params, image_limit);

        wr.outcomes.push_back(judge("delta_s_theta", wr.input.lac_stat_qc, wr.output.lac_stat_qc));
        wr.outcomes.push_back(judge("delta_s_theta_c", wr.input.lac_stat_qc, wr.output.convergent));
        wr.outcomes.push_back(judge("c", wr.input.convergent, wr.output.convergent));
        wr.outcomes.push_back(judge("c_delta_s_theta", wr.input.convergent, wr.output.lac_stat_qc));
        wr.outcomes.push_back(judge("s_theta", wr.input.s_theta, wr.output.s_theta));

        const auto& c = wr.outcomes[2];
        const auto& cd = wr.outcomes[3];
        if (c.hypothesis == Status::Holds && c.conclusion == Status::Holds && cd.outcome == Outcome::Fails) {
            rep.consistency_issues.push_back(w.id + ": (c) holds but (c delta s_theta) fails");
        }
        rep.witnesses.push_back(std::move(wr));
    }

    const auto types = continuity_types();
    for (std::size_t t = 0; t < types.size(); ++t) {
        TypeSummary s;
        s.type = types[t];
        for (const auto& wr : rep.witnesses) {
            if (wr.outcomes[t].outcome == Outcome::Fails) {
                s.outcome = Outcome::Fails;
                s.failing_witnesses.push_back(wr.id);
            }
        }
        rep.summary.push_back(std::move(s));
    }
    return rep;
}

std::vector<ModulusPoint> uniform_modulus(const FuncSpec& f, double a, double b, const std::vector<double>& delta_grid,
                                          std::uint64_t seed) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw ConfigError("modulus needs a finite interval a < b");
    for (double d : delta_grid) {
        if (!(d > 0.0)) throw ConfigError("delta must be positive");
    }
    const double step = (b - a) / kModulusGrid;
    std::vector<double> x(kModulusGrid);
    std::vector<double> y(kModulusGrid);
    for (int i = 0; i < kModulusGrid; ++i) {
        x[static_cast<std::size_t>(i)] = a + step * (i + 0.5);
        y[static_cast<std::size_t>(i)] = f(x[static_cast<std::size_t>(i)]);
        if (!std::isfinite(y[static_cast<std::size_t>(i)])) {
            throw EvalError("f is not finite at x = " + fmt(x[static_cast<std::size_t>(i)]), i);
        }
    }

    std::vector<ModulusPoint> out;
    for (double d : delta_grid) {
        // sliding max/min of y over grid points j >= i with x_j - x_i <= d
        double omega = 0.0;
        std::deque<std::size_t> hi_q;
        std::deque<std::size_t> lo_q;
        std::size_t j = 0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            while (j < x.size() && x[j] - x[i] <= d) {
                while (!hi_q.empty() && y[hi_q.back()] <= y[j]) hi_q.pop_back();
                while (!lo_q.empty() && y[lo_q.back()] >= y[j]) lo_q.pop_back();
                hi_q.push_back(j);
                lo_q.push_back(j);
                ++j;
            }
            while (hi_q.front() < i) hi_q.pop_front();
            while (lo_q.front() < i) lo_q.pop_front();
            omega = std::max({omega, y[hi_q.front()] - y[i], y[i] - y[lo_q.front()]});
        }

        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> ux(a, b);
        std::uniform_real_distribution<double> uh(-1.0, 1.0);
        for (int p = 0; p < kModulusPairs; ++p) {
            const double s = ux(rng);
            const double t = std::clamp(s + d * uh(rng), a, b);
            if (s <= a || s >= b || t <= a || t >= b) continue;  // open interval
            const double diff = std::fabs(f(s) - f(t));
            if (std::isfinite(diff)) omega = std::max(omega, diff);
        }
        out.push_back({d, omega});
    }
    return out;
}

std::vector<Index> bisection_subsequence(const std::vector<double>& values, Index first, double bound, int depth) {
    std::vector<Index> out;
    double lo = -bound;
    double hi = bound;
    std::size_t pos = 0;  // next admissible position
    for (int level = 0; level < depth && pos < values.size(); ++level) {
        const double mid = 0.5 * (lo + hi);
        std::size_t left = 0;
        std::size_t right = 0;
        for (std::size_t i = pos; i < values.size(); ++i) {
            if (values[i] >= lo && values[i] <= mid) ++left;
            else if (values[i] > mid && values[i] <= hi) ++right;
        }
        if (left == 0 && right == 0) break;
        if (left >= right) hi = mid;
        else lo = mid;
        std::size_t i = pos;
        while (!(values[i] >= lo && values[i] <= hi)) ++i;
        out.push_back(first + static_cast<Index>(i));
        pos = i + 1;
    }
    return out;
}

Verdict ward_compactness_probe(const std::vector<double>& values, Index first, double bound_hint) {
    if (values.empty()) throw ConfigError("boundedness probe needs a non-empty sample");
    if (!(bound_hint >= 0.0)) throw ConfigError("bound hint must be non-negative");
    double sup = 0.0;
    for (double v : values) sup = std::max(sup, std::fabs(v));

    Verdict out;
    out.evidence.push_back({"sup_norm", static_cast<double>(values.size()), sup});
    if (sup <= bound_hint) {
        out.status = Status::Holds;
        out.witnesses = bisection_subsequence(values, first, bound_hint);
        out.note = "sample sup " + fmt(sup) + " <= " + fmt(bound_hint) + "; witnesses form a nested-bisection subsequence";
        return out;
    }
    std::size_t i = 0;
    for (int j = 1; j <= kRungs; ++j) {
        const double rung = bound_hint + j;
        while (i < values.size() && std::fabs(values[i]) < rung) ++i;
        if (i == values.size()) break;
        out.witnesses.push_back(first + static_cast<Index>(i));
        out.evidence.push_back({"rung", rung, values[i]});
    }
    if (out.witnesses.size() == static_cast<std::size_t>(kRungs)) {
        out.status = Status::Fails;
        out.note = "sample escapes every rung hint + j, j = 1.." + std::to_string(kRungs);
    } else {
        out.status = Status::Inconclusive;
        out.witnesses.clear();
        out.note = "sample sup " + fmt(sup) + " exceeds the hint but not every rung";
    }
    return out;
}

Verdict ward_compactness_probe(const RealSeq& seq, Index lo, Index hi, double bound_hint) {
    if (hi < lo) throw ConfigError("boundedness probe needs a non-empty index range");
    return ward_compactness_probe(kernels::sample(seq, lo, hi), lo, bound_hint);
}

GalleryEntry resolve_witness(std::string_view id, const LacunaryScheme& theta) {
    if (id == "thm1" || id == "thm2") {
        try {
            return gallery_entry(id, theta);
        } catch (const ConfigError&) {
            return gallery_entry(id, make_lacunary_covering(SchemeSpec::parse(id == "thm1" ? "poly:2" : "fact"), Index{1} << 16));
        }
    }
    try {
        return builtin(id);
    } catch (const ConfigError&) {
    }
    try {
        return {std::string(id), RealSeq::parse(id), {}, "expression"};
    } catch (const ParseError&) {
        throw ConfigError("unknown witness: " + std::string(id));
    }
}

}  // namespace wardseq
