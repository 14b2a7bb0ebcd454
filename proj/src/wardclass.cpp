#include "wardseq/wardclass.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "wardseq/error.hpp"

namespace wardseq {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

struct WindowMax {
    Index n;       // ladder point N
    Index at;      // argmax inside [N/2, N]
    double value;
};

// Window maxima of |v| over [N/2, N] for each ladder point N; v holds indices first.. .
std::vector<WindowMax> ladder_maxima(const std::vector<double>& v, Index first, const std::vector<Index>& ladder,
                                     Exec exec) {
    std::vector<WindowMax> out;
    for (Index n : ladder) {
        const Index lo = std::max(n / 2, first);
        const auto m = kernels::window_abs_max(v, first, lo, n, exec);
        out.push_back({n, m.at, m.value});
    }
    return out;
}

// Shared "null sequence" rule on ladder window maxima.
Verdict null_verdict(const std::vector<WindowMax>& maxima, double tol, const std::string& label) {
    Verdict v;
    for (const auto& m : maxima) v.evidence.push_back({label, static_cast<double>(m.n), m.value});

    bool non_increasing = true;
    for (std::size_t i = 1; i < maxima.size(); ++i) {
        const double prev = maxima[i - 1].value;
        const double cur = maxima[i].value;
        // below tol/10 the ordering is noise
        if (cur > 1.1 * prev && cur > 0.1 * tol) non_increasing = false;
    }
    const double last = maxima.back().value;
    const std::size_t from = maxima.size() > 3 ? maxima.size() - 3 : 0;
    bool stuck = maxima.size() >= 3;
    for (std::size_t i = from; i < maxima.size(); ++i) stuck = stuck && maxima[i].value >= 10.0 * tol;

    if (last <= tol && non_increasing) {
        v.status = Status::Holds;
        v.note = "tail max " + fmt(last) + " <= " + fmt(tol);
    } else if (stuck) {
        v.status = Status::Fails;
        for (std::size_t i = from; i < maxima.size(); ++i) v.witnesses.push_back(maxima[i].at);
        v.note = "tail max stays >= " + fmt(10.0 * tol) + " (last " + fmt(last) + ")";
    } else {
        v.status = Status::Inconclusive;
        v.note = "tail max " + fmt(last) + " neither below " + fmt(tol) + " with a falling trend nor stuck above " +
                 fmt(10.0 * tol);
    }
    return v;
}

Verdict tail_null(const RealSeq& diff, Index horizon, double tol, Exec exec, const std::string& label) {
    if (horizon < 16) throw ConfigError("horizon must be at least 16");
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
    const auto ladder = default_checkpoints(horizon);
    const Index first = std::max(ladder.front() / 2, diff.domain_start());
    const auto values = kernels::sample(diff, first, horizon, exec);
    return null_verdict(ladder_maxima(values, first, ladder, exec), tol, label);
}

bool covers(const LacunaryScheme& theta, Index n) { return theta.k(theta.horizon()) >= n; }

LacunaryScheme cover(const LacunaryScheme& theta, Index n) {
    if (covers(theta, n) || theta.spec().kind == SchemeSpec::Kind::Explicit) return theta;
    return make_lacunary_covering(theta.spec(), n);
}

DetectorParams escalated(const DetectorParams& p, Index horizon) {
    DetectorParams q = p;
    q.horizon = horizon;
    q.checkpoints.clear();
    q.r_checkpoints.clear();
    return q;
}

}  // namespace

Index effective_horizon_cap() {
    Index cap = kHorizonCap;
    if (const char* env = std::getenv("SEQ_HORIZON_CAP")) {
        char* end = nullptr;
        const long long v = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) cap = std::min<Index>(cap, v);
    }
    return cap;
}

Verdict is_quasi_cauchy(const RealSeq& seq, Index horizon, double tol, Exec exec) {
    return tail_null(delta(seq), horizon, tol, exec, "window_max_abs_delta");
}

Verdict is_stat_quasi_cauchy(const RealSeq& seq, const DetectorParams& params) {
    const RealSeq d = delta(seq);
    const auto eps = params.eps_grid.empty() ? default_eps_grid(d) : params.eps_grid;
    const auto cps = params.checkpoints.empty() ? default_checkpoints(params.horizon) : params.checkpoints;
    return stat_limit_verdict(d, 0.0, eps, cps, params.rules, params.exec);
}

Verdict is_lac_stat_quasi_cauchy(const RealSeq& seq, const LacunaryScheme& theta, const DetectorParams& params) {
    const RealSeq d = delta(seq);
    const auto eps = params.eps_grid.empty() ? default_eps_grid(d) : params.eps_grid;
    std::vector<int> rcs = params.r_checkpoints;
    if (rcs.empty()) {
        const int r_max = theta.last_block_within(params.horizon);
        if (r_max < 2) throw ConfigError("lacunary scheme has fewer than two blocks below the horizon");
        rcs = default_r_checkpoints(r_max);
    }
    return lacunary_stat_limit_verdict(d, theta, 0.0, eps, rcs, params.rules, params.exec);
}

Verdict is_slowly_oscillating(const RealSeq& seq, const std::vector<double>& lambda_grid, Index horizon, double tol,
                              int samples) {
    if (lambda_grid.empty()) throw ConfigError("lambda grid must be non-empty");
    for (double l : lambda_grid) {
        if (!(l > 1.0 && l <= 2.0)) throw ConfigError("lambda values must lie in (1, 2]");
    }
    if (horizon < 16) throw ConfigError("horizon must be at least 16");
    if (samples < 2) throw ConfigError("need at least two base samples");
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");

    std::vector<double> lambdas = lambda_grid;
    std::sort(lambdas.begin(), lambdas.end());

    std::vector<Index> bases;
    const Index lo = std::max(horizon / 2, seq.domain_start());
    for (int i = 0; i < samples; ++i) {
        const Index n = lo + (horizon - lo) * i / (samples - 1);
        if (bases.empty() || n > bases.back()) bases.push_back(n);
    }

    struct Sup {
        double value = 0.0;
        Index n = 0;
        Index k = 0;
    };
    std::vector<Sup> sups(lambdas.size());
    for (std::size_t li = 0; li < lambdas.size(); ++li) {
        const double lam = lambdas[li];
        Sup s;
        for (Index n : bases) {
            const Index top = static_cast<Index>(std::floor(lam * static_cast<double>(n)));
            if (top < n + 1) continue;
            const Index stride = std::max<Index>(1, (top - n) / 256);
            const double an = seq(n);
            auto look = [&](Index k) {
                const double d = std::fabs(seq(k) - an);
                if (d > s.value || s.n == 0) s = {d, n, k};
            };
            for (Index k = n + 1; k <= top; k += stride) look(k);
            if ((top - n - 1) % stride != 0) look(top);
        }
        sups[li] = s;
    }

    Verdict v;
    for (std::size_t li = 0; li < lambdas.size(); ++li) v.evidence.push_back({"tail_sup_M", lambdas[li], sups[li].value});

    bool shrinking = true;  // sups must not grow as lambda decreases
    for (std::size_t li = 1; li < lambdas.size(); ++li) {
        if (sups[li - 1].value > 1.1 * sups[li].value && sups[li - 1].value > 0.1 * tol) shrinking = false;
    }
    bool all_high = true;
    for (const auto& s : sups) all_high = all_high && s.value >= 10.0 * tol;

    if (sups.front().value <= tol && shrinking) {
        v.status = Status::Holds;
        v.note = "M(" + fmt(lambdas.front()) + ", n) <= " + fmt(sups.front().value) + " on the tail";
    } else if (all_high) {
        const auto& w = sups.front();
        v.status = Status::Fails;
        v.witnesses = {w.n, w.k};
        v.evidence.push_back({"witness_lambda", lambdas.front(), w.value});
        v.note = "|a_k - a_n| = " + fmt(w.value) + " at n = " + std::to_string(w.n) + ", k = " + std::to_string(w.k) +
                 ", lambda = " + fmt(lambdas.front());
    } else {
        v.status = Status::Inconclusive;
        v.note = "tail sup of M at lambda = " + fmt(lambdas.front()) + " is " + fmt(sups.front().value);
    }
    return v;
}

Verdict is_delta_quasi_cauchy(const RealSeq& seq, const DetectorParams& params) {
    return tail_null(delta2(seq), params.horizon, params.qc_tol, params.exec, "window_max_abs_delta2");
}

Verdict is_convergent(const RealSeq& seq, Index horizon, double tol, Exec exec) {
    if (horizon < 16) throw ConfigError("horizon must be at least 16");
    if (!(tol > 0.0)) throw ConfigError("tolerance must be positive");
    const auto ladder = default_checkpoints(horizon);
    const Index first = std::max(ladder.front() / 2, seq.domain_start());
    auto values = kernels::sample(seq, first, horizon, exec);
    const double limit = values.back();
    for (auto& x : values) x -= limit;
    Verdict v = null_verdict(ladder_maxima(values, first, ladder, exec), tol, "window_max_abs_dev");
    v.evidence.push_back({"limit", static_cast<double>(horizon), limit});
    return v;
}

bool report_consistent(const ClassReport& r) {
    if (r.quasi_cauchy.status == Status::Holds && r.stat_qc.status == Status::Fails) return false;
    if (r.stat_qc.status == Status::Holds && r.theta_margin_ok && r.lac_stat_qc.status == Status::Fails) return false;
    if (r.slowly_oscillating.status == Status::Holds && r.quasi_cauchy.status == Status::Fails) return false;
    return true;
}

ClassReport classify(const RealSeq& seq, const LacunaryScheme& theta, const DetectorParams& params) {
    const Index cap = std::min(params.horizon_cap, effective_horizon_cap());
    if (params.horizon > cap) throw ConfigError("horizon exceeds cap " + std::to_string(cap));

    ClassReport rep;
    rep.sequence = seq.describe();
    rep.theta = theta.descriptor();
    rep.horizon = params.horizon;

    const LacunaryScheme th = cover(theta, params.horizon);
    rep.theta_margin_ok = satisfies_liminf_margin(th, params.theta_margin);
    for (const auto& w : th.warnings()) rep.notes.push_back("theta: " + w);

    rep.quasi_cauchy = is_quasi_cauchy(seq, params.horizon, params.qc_tol, params.exec);
    rep.stat_qc = is_stat_quasi_cauchy(seq, params);
    rep.lac_stat_qc = is_lac_stat_quasi_cauchy(seq, th, params);
    rep.slowly_oscillating =
        is_slowly_oscillating(seq, params.lambda_grid, params.horizon, params.so_tol, params.so_samples);
    rep.delta_qc = is_delta_quasi_cauchy(seq, params);

    const Index bigger = std::min(params.horizon * 4, cap);
    const bool can_escalate = bigger > params.horizon;
    const DetectorParams up = escalated(params, bigger);

    auto give_up = [&](Verdict& a, Verdict& b, const std::string& what) {
        a.status = Status::Inconclusive;
        b.status = Status::Inconclusive;
        a.note += "; " + what;
        b.note += "; " + what;
        rep.notes.push_back(what);
    };

    if (rep.quasi_cauchy.status == Status::Holds && rep.stat_qc.status == Status::Fails) {
        if (can_escalate) {
            rep.stat_qc = is_stat_quasi_cauchy(seq, up);
            rep.notes.push_back("stat_qc rerun at horizon " + std::to_string(bigger));
        }
        if (rep.stat_qc.status == Status::Fails) {
            give_up(rep.quasi_cauchy, rep.stat_qc, "quasi_cauchy Holds but stat_qc Fails; both set Inconclusive");
        }
    }
    if (rep.stat_qc.status == Status::Holds && rep.theta_margin_ok && rep.lac_stat_qc.status == Status::Fails) {
        if (can_escalate) {
            rep.lac_stat_qc = is_lac_stat_quasi_cauchy(seq, cover(theta, bigger), up);
            rep.notes.push_back("lac_stat_qc rerun at horizon " + std::to_string(bigger));
        }
        if (rep.lac_stat_qc.status == Status::Fails) {
            give_up(rep.stat_qc, rep.lac_stat_qc, "stat_qc Holds but lac_stat_qc Fails; both set Inconclusive");
        }
    }
    if (rep.slowly_oscillating.status == Status::Holds && rep.quasi_cauchy.status == Status::Fails) {
        if (can_escalate) {
            rep.quasi_cauchy = is_quasi_cauchy(seq, bigger, params.qc_tol, params.exec);
            rep.notes.push_back("quasi_cauchy rerun at horizon " + std::to_string(bigger));
        }
        if (rep.quasi_cauchy.status == Status::Fails) {
            give_up(rep.slowly_oscillating, rep.quasi_cauchy,
                    "slowly_oscillating Holds but quasi_cauchy Fails; both set Inconclusive");
        }
    }
    return rep;
}

}  // namespace wardseq
