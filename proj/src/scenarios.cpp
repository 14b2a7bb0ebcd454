#include "wardseq/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "wardseq/error.hpp"

namespace wardseq {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

std::string ratio(Index a, Index b) { return std::to_string(a) + "/" + std::to_string(b); }

LacunaryScheme scheme_for(const ScenarioConfig& cfg, const char* fallback, Index cover) {
    const std::string desc = cfg.theta.empty() ? fallback : cfg.theta;
    return make_lacunary_covering(SchemeSpec::parse(desc), cover);
}

LacunaryScheme extend_to(const LacunaryScheme& th, Index n) {
    if (th.k(th.horizon()) >= n || th.spec().kind == SchemeSpec::Kind::Explicit) return th;
    return make_lacunary_covering(th.spec(), n);
}

DetectorParams params_for(const ScenarioConfig& cfg) {
    DetectorParams p;
    p.horizon = cfg.horizon;
    p.exec = cfg.exec;
    return p;
}

void add(ScenarioResult& r, std::string name, bool pass, std::string detail) {
    r.checks.push_back({std::move(name), pass, std::move(detail)});
}

const DensityTrace& trace_at(const Verdict& v, double eps) {
    for (const auto& t : v.traces) {
        if (t.epsilon == eps) return t;
    }
    throw ConfigError("no trace at eps " + fmt(eps));
}

}  // namespace

bool ScenarioResult::passed() const {
    return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ScenarioResult verify_thm1(const ScenarioConfig& cfg) {
    ScenarioResult out;
    out.id = "thm1";
    const LacunaryScheme theta0 = scheme_for(cfg, "poly:2", cfg.horizon + 1);
    out.theta = theta0.descriptor();
    const Construction con = thm1_counterexample(theta0, cfg.c, cfg.j_max.value_or(6));
    const LacunaryScheme th = extend_to(con.theta, cfg.horizon + 1);
    out.selection = con.selection;
    const RealSeq d = delta(con.seq);
    const double c = cfg.c;

    add(out, "selection constraints recheck exactly", recheck_constraints(con.selection, th),
        std::to_string(con.selection.constraints_log.size()) + " constraints");

    // global density of {k <= m : |delta a_k| >= c} along the default ladder
    const auto ladder = default_checkpoints(cfg.horizon);
    const Verdict global = stat_limit_verdict(d, 0.0, {c, c / 2.0}, ladder, {}, cfg.exec);
    const auto& tr = trace_at(global, c);
    const auto& last = tr.checkpoints.back();
    add(out, "global density at final checkpoint < 0.05", last.count * 20 < last.denominator,
        ratio(last.count, last.denominator) + " at m = " + std::to_string(last.at));
    bool falling = true;
    for (std::size_t i = 1; i < tr.checkpoints.size(); ++i) {
        const auto& a = tr.checkpoints[i - 1];
        const auto& b = tr.checkpoints[i];
        if (static_cast<__int128>(b.count) * a.denominator > static_cast<__int128>(a.count) * b.denominator) falling = false;
    }
    add(out, "global density trend non-increasing", falling, std::to_string(tr.checkpoints.size()) + " checkpoints");
    out.verdicts.emplace_back("global_density", global);

    const Verdict stat = is_stat_quasi_cauchy(con.seq, params_for(cfg));
    add(out, "stat_qc Holds", stat.status == Status::Holds, to_string(stat.status));
    out.verdicts.emplace_back("stat_qc", stat);

    bool dense = true;
    std::vector<int> rs;
    for (int r : con.selection.r_js) {
        const CountResult b = block_density(d, th, 0.0, c / 2.0, r);
        out.audits.push_back({"block_density_eps_half_c", static_cast<double>(r), b.density});
        if (b.count * 10 < th.h(r) * 9) dense = false;
        rs.push_back(r);
    }
    add(out, "block density >= 0.9 on every selected block", dense, std::to_string(rs.size()) + " blocks");

    const Verdict lac = lacunary_stat_limit_verdict(d, th, 0.0, {c / 2.0}, rs, {}, cfg.exec);
    add(out, "lac_stat_qc Fails along the selected blocks", lac.status == Status::Fails, to_string(lac.status));
    out.verdicts.emplace_back("lac_stat_qc_selected_blocks", lac);

    // the default tail blocks see no jumps at this horizon; reported, not checked
    out.verdicts.emplace_back("lac_stat_qc_tail_blocks", is_lac_stat_quasi_cauchy(con.seq, th, params_for(cfg)));
    return out;
}

ScenarioResult verify_thm2(const ScenarioConfig& cfg) {
    ScenarioResult out;
    out.id = "thm2";
    const LacunaryScheme theta0 = scheme_for(cfg, "fact", 1024);
    out.theta = theta0.descriptor();
    const Construction con = thm2_counterexample(theta0, cfg.c, cfg.j_max.value_or(kDefaultJMax));
    const LacunaryScheme& th = con.theta;
    out.selection = con.selection;
    const RealSeq d = delta(con.seq);
    const double c = cfg.c;

    add(out, "selection constraints recheck exactly", recheck_constraints(con.selection, th),
        std::to_string(con.selection.constraints_log.size()) + " constraints");

    bool bound_ok = true;
    bool half_ok = true;
    std::string bound_detail;
    std::string half_detail;
    std::vector<Index> n_checkpoints;
    std::vector<double> block_dens;
    for (int j = 1; j <= static_cast<int>(con.selection.r_js.size()); ++j) {
        const int r = con.selection.r_js[static_cast<std::size_t>(j - 1)];
        const Index K = th.k(r - 1);
        n_checkpoints.push_back(2 * K);
        if (j < 2) continue;
        const CountResult upto = counting_density(d, 0.0, c, th.k(r), cfg.exec);
        const Index h = th.h(r);
        // count / h < 1 / (j - 1)
        const bool ok = static_cast<__int128>(upto.count) * (j - 1) < static_cast<__int128>(h);
        bound_ok = bound_ok && ok;
        block_dens.push_back(static_cast<double>(upto.count) / static_cast<double>(h));
        out.audits.push_back({"count_over_h_j" + std::to_string(j), static_cast<double>(r),
                              static_cast<double>(upto.count) / static_cast<double>(h)});
        bound_detail += (bound_detail.empty() ? "" : "; ") + ratio(upto.count, h) + " vs 1/" + std::to_string(j - 1);

        const CountResult half = counting_density(d, 0.0, c, 2 * K, cfg.exec);
        const bool hok = half.count * 100 >= 45 * (2 * K);
        half_ok = half_ok && hok;
        out.audits.push_back({"global_density_at_2k_j" + std::to_string(j), static_cast<double>(2 * K), half.density});
        half_detail += (half_detail.empty() ? "" : "; ") + ratio(half.count, 2 * K);
    }
    add(out, "count/h_{r_j} < 1/(j-1) for j >= 2", bound_ok, bound_detail);
    add(out, "global density at 2k_{r_j - 1} >= 0.45 for j >= 2", half_ok, half_detail);

    bool shrinking = true;
    for (std::size_t i = 1; i < block_dens.size(); ++i) shrinking = shrinking && block_dens[i] < block_dens[i - 1];
    add(out, "count/h_{r_j} strictly decreasing in j", shrinking, std::to_string(block_dens.size()) + " blocks");

    const Verdict stat = stat_limit_verdict(d, 0.0, {c}, n_checkpoints, {}, cfg.exec);
    add(out, "stat_qc Fails at n = 2k_{r_j - 1}", stat.status == Status::Fails, to_string(stat.status));
    out.verdicts.emplace_back("stat_qc_selected", stat);

    std::vector<int> rs = con.selection.r_js;
    out.verdicts.emplace_back("lac_stat_qc_selected", lacunary_stat_limit_verdict(d, th, 0.0, {c}, rs, {}, cfg.exec));
    return out;
}

ScenarioResult verify_cor3(const ScenarioConfig& cfg) {
    ScenarioResult out;
    out.id = "cor3";
    const LacunaryScheme th = scheme_for(cfg, "geo:2", cfg.horizon + 1);
    out.theta = th.descriptor();
    const auto rs = ratio_stats(th);
    const bool margin = satisfies_liminf_margin(th);
    add(out, "tail q_r within (1.05, inf)", margin && std::isfinite(rs.sup_estimate),
        "q_r in [" + fmt(rs.inf_estimate) + ", " + fmt(rs.sup_estimate) + "]");

    const auto params = params_for(cfg);
    int violations = 0;
    int disagreements = 0;
    int holds = 0;
    std::string where;
    for (const auto& e : standard_corpus()) {
        const Verdict s = is_stat_quasi_cauchy(e.seq, params);
        const Verdict l = is_lac_stat_quasi_cauchy(e.seq, th, params);
        if (s.status == Status::Holds) ++holds;
        if (s.status == Status::Holds && l.status == Status::Fails) {
            ++violations;
            where += " " + e.id;
        }
        if ((s.status == Status::Holds && l.status == Status::Fails) ||
            (s.status == Status::Fails && l.status == Status::Holds)) {
            ++disagreements;
            if (!(s.status == Status::Holds)) where += " " + e.id;
        }
        out.verdicts.emplace_back(e.id + ":stat_qc", s);
        out.verdicts.emplace_back(e.id + ":lac_stat_qc", l);
    }
    add(out, "no stat_qc Holds with lac_stat_qc Fails", violations == 0,
        std::to_string(holds) + " stat_qc Holds, " + std::to_string(violations) + " violations" + where);
    add(out, "stat_qc and lac_stat_qc agree up to Inconclusive", disagreements == 0,
        std::to_string(disagreements) + " disagreements");
    return out;
}

ScenarioResult verify_thm6(const ScenarioConfig&) {
    ScenarioResult out;
    out.id = "thm6";
    out.theta = "";
    const Index n = 100000;
    const RealSeq root = RealSeq::parse("sqrt(n)");
    const Verdict vr = ward_compactness_probe(root, 1, n, 1.0);
    bool exact = vr.witnesses.size() == 8;
    for (std::size_t j = 1; exact && j <= 8; ++j) {
        const Index want = static_cast<Index>((j + 1) * (j + 1));  // ceil((1 + j)^2)
        exact = vr.witnesses[j - 1] == want;
    }
    add(out, "sqrt(n) fails boundedness", vr.status == Status::Fails, to_string(vr.status));
    add(out, "escape witnesses at ceil((hint + j)^2)", exact, std::to_string(vr.witnesses.size()) + " witnesses");
    out.verdicts.emplace_back("sqrt_n", vr);

    const RealSeq sine = RealSeq::parse("sin(n)");
    const Verdict vs = ward_compactness_probe(sine, 1, n, 1.0);
    add(out, "sin(n) bounded by 1", vs.status == Status::Holds, to_string(vs.status));
    bool nested = vs.witnesses.size() >= 10;
    for (std::size_t i = 1; nested && i < vs.witnesses.size(); ++i) {
        const double gap = std::fabs(sine(vs.witnesses[i]) - sine(vs.witnesses[i - 1]));
        nested = vs.witnesses[i] > vs.witnesses[i - 1] && gap <= 2.0 / std::ldexp(1.0, static_cast<int>(i)) + 1e-15;
    }
    add(out, "sin(n) has a subsequence with halving gaps", nested, std::to_string(vs.witnesses.size()) + " terms");
    out.verdicts.emplace_back("sin_n", vs);
    return out;
}

ScenarioResult verify_thm9(const ScenarioConfig& cfg) {
    ScenarioResult out;
    out.id = "thm9";
    const LacunaryScheme th = scheme_for(cfg, "geo:2", cfg.horizon + 1);
    out.theta = th.descriptor();
    const auto params = params_for(cfg);

    const auto square = preservation_report(FuncSpec::parse("x^2"), {builtin("sqrt_n")}, th, params);
    const auto& s0 = square.summary[0];
    add(out, "x^2: (delta s_theta) Fails on sqrt_n",
        s0.outcome == Outcome::Fails && s0.failing_witnesses == std::vector<std::string>{"sqrt_n"},
        to_string(s0.outcome));
    out.verdicts.emplace_back("sqrt_n:lac_stat_qc", square.witnesses[0].input.lac_stat_qc);
    out.verdicts.emplace_back("x^2 o sqrt_n:lac_stat_qc", square.witnesses[0].output.lac_stat_qc);

    const auto affine = preservation_report(FuncSpec::parse("2*x+1"), standard_corpus(), th, params);
    const auto& a0 = affine.summary[0];
    std::string failing;
    for (const auto& w : a0.failing_witnesses) failing += " " + w;
    add(out, "2x+1: (delta s_theta) no counterexample on the corpus", a0.outcome == Outcome::Supports,
        std::to_string(affine.witnesses.size()) + " witnesses" + failing);
    add(out, "preservation reports consistent", square.consistency_issues.empty() && affine.consistency_issues.empty(),
        std::to_string(square.consistency_issues.size() + affine.consistency_issues.size()) + " issues");
    return out;
}

ScenarioResult run_scenario(const std::string& id, const ScenarioConfig& cfg) {
    if (id == "thm1") return verify_thm1(cfg);
    if (id == "thm2") return verify_thm2(cfg);
    if (id == "cor3") return verify_cor3(cfg);
    if (id == "thm6") return verify_thm6(cfg);
    if (id == "thm9") return verify_thm9(cfg);
    throw ConfigError("unknown theorem id: " + id);
}

}  // namespace wardseq
