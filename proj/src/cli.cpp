#include "wardseq/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "wardseq/error.hpp"
#include "wardseq/gallery.hpp"
#include "wardseq/probe.hpp"
#include "wardseq/report.hpp"
#include "wardseq/scenarios.hpp"
#include "wardseq/wardclass.hpp"

namespace wardseq {

namespace {

struct RunConfig {
    std::string seq;
    std::string builtin_id;
    std::string f = "x";
    std::string theta = "geo:2";
    Index horizon = Index{1} << 20;
    std::vector<double> eps;
    std::vector<Index> checkpoints;
    std::string format;
    std::string out_path;
    std::uint64_t seed = kDefaultSeed;
    double c = 1.0;
    int j_max = 0;
    Index n = 1000;
    std::string theorem;
    std::string gallery_id;
    std::vector<std::string> witnesses{"sqrt_n"};
    std::vector<double> x_grid{0.9, 0.99, 0.999};
    std::vector<double> domain;
    std::vector<double> interval{0.0, 1.0};
    std::vector<double> deltas{0.1, 0.01, 0.001};
    double target = 0.0;
    bool has_target = false;
    double growth = 0.0;
    bool has_growth = false;
    std::string trace = "stat_qc";
    Index abel_start = 0;
};

void check_horizon(const RunConfig& cfg) {
    const Index cap = effective_horizon_cap();
    if (cfg.horizon < 16 || cfg.horizon > cap) {
        throw ConfigError("horizon must lie in [16, " + std::to_string(cap) + "]");
    }
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
    if (cfg.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + cfg.out_path);
    f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s + " " : s + std::string(w - s.size(), ' '); }

RealSeq input_sequence(const RunConfig& cfg) {
    if (!cfg.builtin_id.empty()) return builtin(cfg.builtin_id).seq;
    if (cfg.seq.empty()) throw ConfigError("--seq or --builtin is required");
    return RealSeq::parse(cfg.seq);
}

DetectorParams detector_params(const RunConfig& cfg) {
    DetectorParams p;
    p.horizon = cfg.horizon;
    p.eps_grid = cfg.eps;
    p.checkpoints = cfg.checkpoints;
    return p;
}

int cmd_analyze(const RunConfig& cfg, std::ostream& out) {
    check_horizon(cfg);
    const RealSeq seq = input_sequence(cfg);
    const auto theta = make_lacunary_covering(SchemeSpec::parse(cfg.theta), cfg.horizon + 1);
    const ClassReport rep = classify(seq, theta, detector_params(cfg));
    const std::string fmt = cfg.format.empty() ? "table" : cfg.format;
    if (fmt == "json") {
        emit(cfg, out, dump(document("class_report", to_json(rep))));
    } else if (fmt == "csv") {
        if (cfg.trace == "stat_qc") emit(cfg, out, trace_csv(rep.stat_qc));
        else if (cfg.trace == "lac_stat_qc") emit(cfg, out, trace_csv(rep.lac_stat_qc));
        else throw ConfigError("--trace must be stat_qc or lac_stat_qc");
    } else {
        std::ostringstream t;
        t << "sequence " << rep.sequence << "  theta " << rep.theta << "  horizon " << rep.horizon << "\n";
        const std::pair<const char*, const Verdict*> rows[] = {{"quasi_cauchy", &rep.quasi_cauchy},
                                                               {"stat_qc", &rep.stat_qc},
                                                               {"lac_stat_qc", &rep.lac_stat_qc},
                                                               {"slowly_oscillating", &rep.slowly_oscillating},
                                                               {"delta_qc", &rep.delta_qc}};
        for (const auto& [name, v] : rows) t << pad(name, 20) << pad(to_string(v->status), 14) << v->note << "\n";
        for (const auto& n : rep.notes) t << "note: " << n << "\n";
        emit(cfg, out, t.str());
    }
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
    check_horizon(cfg);
    ScenarioConfig sc;
    sc.theta = cfg.theta;
    sc.c = cfg.c;
    if (cfg.j_max > 0) sc.j_max = cfg.j_max;
    sc.horizon = cfg.horizon;
    const ScenarioResult r = run_scenario(cfg.theorem, sc);
    const std::string fmt = cfg.format.empty() ? "table" : cfg.format;
    if (fmt == "json") {
        emit(cfg, out, dump(document("verification", to_json(r))));
    } else {
        std::ostringstream t;
        t << r.id << (r.theta.empty() ? "" : " theta " + r.theta) << ": " << (r.passed() ? "PASS" : "FAIL") << "\n";
        for (const auto& c : r.checks) t << "  " << (c.pass ? "PASS " : "FAIL ") << c.name << "  [" << c.detail << "]\n";
        emit(cfg, out, t.str());
    }
    return r.passed() ? kExitOk : kExitVerifyFail;
}

int cmd_gallery_list(const RunConfig& cfg, std::ostream& out) {
    std::vector<std::pair<std::string, std::string>> rows;
    for (const auto& name : builtin_names()) rows.emplace_back(name, builtin(name).provenance);
    rows.emplace_back("interleave(a,b)", "odd terms from a, even terms from b");
    rows.emplace_back("random_spikes:<seed>", "spikes of height 1 at index density ~ n^(-1/2)");
    rows.emplace_back("thm1", "jumps of size c filling sparse blocks I_{r_j} with q_{r_j} -> 1 (needs --theta, e.g. poly:2)");
    rows.emplace_back("thm2", "jumps of size c on (k_{r_j - 1}, 2k_{r_j - 1}] with q_{r_j} > j (needs --theta, e.g. fact)");
    if (cfg.format == "json") {
        Json arr = Json::array();
        for (const auto& [id, prov] : rows) arr.push_back({{"id", id}, {"provenance", prov}});
        emit(cfg, out, dump(document("gallery", {{"entries", arr}})));
    } else {
        std::ostringstream t;
        for (const auto& [id, prov] : rows) t << pad(id, 24) << prov << "\n";
        emit(cfg, out, t.str());
    }
    return kExitOk;
}

int cmd_gallery_emit(const RunConfig& cfg, std::ostream& out) {
    if (cfg.n < 1 || cfg.n > effective_horizon_cap()) throw ConfigError("--n must lie in [1, cap]");
    GalleryEntry e;
    if (cfg.gallery_id == "thm1" || cfg.gallery_id == "thm2") {
        const auto theta = make_lacunary_covering(SchemeSpec::parse(cfg.theta), cfg.n + 1);
        e = gallery_entry(cfg.gallery_id, theta, cfg.c, cfg.j_max > 0 ? cfg.j_max : kDefaultJMax);
    } else {
        e = builtin(cfg.gallery_id);
    }
    emit(cfg, out, gallery_csv(e.seq, cfg.n));
    return kExitOk;
}

int cmd_probe(const RunConfig& cfg, std::ostream& out) {
    check_horizon(cfg);
    const double lo = cfg.domain.size() == 2 ? cfg.domain[0] : -std::numeric_limits<double>::infinity();
    const double hi = cfg.domain.size() == 2 ? cfg.domain[1] : std::numeric_limits<double>::infinity();
    if (!cfg.domain.empty() && cfg.domain.size() != 2) throw ConfigError("--domain takes two values a,b");
    const FuncSpec f = FuncSpec::parse(cfg.f, lo, hi);
    const auto theta = make_lacunary_covering(SchemeSpec::parse(cfg.theta), cfg.horizon + 1);
    std::vector<GalleryEntry> ws;
    for (const auto& id : cfg.witnesses) ws.push_back(resolve_witness(id, theta));
    const auto rep = preservation_report(f, ws, theta, detector_params(cfg));
    if (cfg.format == "table") {
        std::ostringstream t;
        t << "f = " << rep.function << "  theta " << rep.theta << "  horizon " << rep.horizon << "\n";
        for (const auto& s : rep.summary) {
            t << pad(s.type, 18) << pad(to_string(s.outcome), 10);
            for (const auto& w : s.failing_witnesses) t << w << " ";
            t << "\n";
        }
        emit(cfg, out, t.str());
    } else {
        emit(cfg, out, dump(document("preservation_report", to_json(rep))));
    }
    return kExitOk;
}

int cmd_abel(const RunConfig& cfg, std::ostream& out) {
    // series convention: term k is the sequence at n = k + start
    const RealSeq seq = cfg.builtin_id.empty() && !cfg.seq.empty() ? RealSeq::parse(cfg.seq, cfg.abel_start)
                                                                   : input_sequence(cfg);
    AbelOptions opts;
    if (cfg.has_target) opts.target = cfg.target;
    if (cfg.has_growth) opts.growth_degree = cfg.growth;
    const auto res = abel_limit(seq, cfg.x_grid, opts);
    if (cfg.format == "table") {
        std::ostringstream t;
        t << std::setprecision(10);
        for (const auto& e : res.estimates) t << "x = " << e.x << "  estimate " << e.value << "  terms " << e.terms << "\n";
        if (res.verdict) t << "verdict " << to_string(res.verdict->status) << ": " << res.verdict->note << "\n";
        emit(cfg, out, t.str());
    } else {
        emit(cfg, out, dump(document("abel", to_json(res))));
    }
    return kExitOk;
}

int cmd_modulus(const RunConfig& cfg, std::ostream& out) {
    if (cfg.interval.size() != 2) throw ConfigError("--interval takes two values a,b");
    const FuncSpec f = FuncSpec::parse(cfg.f, cfg.interval[0], cfg.interval[1]);
    const auto m = uniform_modulus(f, cfg.interval[0], cfg.interval[1], cfg.deltas, cfg.seed);
    if (cfg.format == "table") {
        std::ostringstream t;
        for (const auto& p : m) t << "delta " << format_number(p.delta) << "  omega " << format_number(p.omega) << "\n";
        emit(cfg, out, t.str());
    } else {
        emit(cfg, out, dump(document("modulus", {{"function", cfg.f}, {"seed", cfg.seed}, {"points", to_json(m)}})));
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-horizon analysis of quasi-Cauchy and lacunary statistical sequence classes"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto output_opts = [&](CLI::App* sub, const std::string& formats) {
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember(CLI::detail::split(formats, ',')));
        sub->add_option("--out", cfg.out_path, "Write output to this file");
    };
    auto positive = CLI::PositiveNumber;

    auto* analyze = app.add_subcommand("analyze", "Classify a sequence");
    analyze->add_option("--seq", cfg.seq, "Sequence expression in n");
    analyze->add_option("--builtin", cfg.builtin_id, "Gallery sequence id");
    analyze->add_option("--theta", cfg.theta, "Lacunary scheme descriptor");
    analyze->add_option("--horizon", cfg.horizon, "Largest index examined")->check(positive);
    analyze->add_option("--eps", cfg.eps, "Epsilon grid")->delimiter(',')->check(positive);
    analyze->add_option("--checkpoints", cfg.checkpoints, "Density checkpoints")->delimiter(',')->check(positive);
    analyze->add_option("--trace", cfg.trace, "Trace written by --format csv");
    output_opts(analyze, "json,csv,table");

    auto* verify = app.add_subcommand("verify", "Run a packaged theorem scenario");
    verify->add_option("theorem", cfg.theorem, "thm1, thm2, cor3, thm6 or thm9")->required();
    verify->add_option("--theta", cfg.theta, "Lacunary scheme descriptor (scenario default if omitted)");
    verify->add_option("--c", cfg.c, "Jump size")->check(positive);
    verify->add_option("--j-max", cfg.j_max, "Selected blocks")->check(positive);
    verify->add_option("--horizon", cfg.horizon, "Largest index examined")->check(positive);
    output_opts(verify, "json,table");

    auto* gallery = app.add_subcommand("gallery", "List or emit gallery sequences");
    gallery->require_subcommand(1);
    auto* glist = gallery->add_subcommand("list", "List ids");
    output_opts(glist, "json,table");
    auto* gemit = gallery->add_subcommand("emit", "Write k,alpha_k CSV");
    gemit->add_option("id", cfg.gallery_id, "Gallery id")->required();
    gemit->add_option("--n", cfg.n, "Rows")->check(positive);
    gemit->add_option("--theta", cfg.theta, "Scheme for thm1/thm2");
    gemit->add_option("--c", cfg.c, "Jump size")->check(positive);
    gemit->add_option("--j-max", cfg.j_max, "Selected blocks")->check(positive);
    gemit->add_option("--out", cfg.out_path, "Write output to this file");

    auto* probe = app.add_subcommand("probe", "Test whether f preserves sequence classes on witnesses");
    probe->add_option("--f", cfg.f, "Function expression in x")->required();
    probe->add_option("--domain", cfg.domain, "Domain a,b of f")->delimiter(',');
    probe->add_option("--theta", cfg.theta, "Lacunary scheme descriptor");
    probe->add_option("--witness", cfg.witnesses, "Witness ids or expressions")->delimiter(',');
    probe->add_option("--horizon", cfg.horizon, "Largest index examined")->check(positive);
    output_opts(probe, "json,table");

    auto* abel = app.add_subcommand("abel", "Abel means (1-x) sum p_k x^k");
    abel->add_option("--seq", cfg.seq, "Sequence expression in n; term k uses n = k + start");
    abel->add_option("--start", cfg.abel_start, "Index of the k = 0 term for --seq (default 0)")->check(CLI::NonNegativeNumber);
    abel->add_option("--builtin", cfg.builtin_id, "Gallery sequence id");
    abel->add_option("--x", cfg.x_grid, "Increasing x grid in (0,1)")->delimiter(',');
    auto* tgt = abel->add_option("--target", cfg.target, "Limit to test");
    auto* gr = abel->add_option("--growth", cfg.growth, "Declared polynomial growth degree");
    output_opts(abel, "json,table");

    auto* modulus = app.add_subcommand("modulus", "Estimate the modulus of continuity of f on (a,b)");
    modulus->add_option("--f", cfg.f, "Function expression in x")->required();
    modulus->add_option("--interval", cfg.interval, "Interval a,b")->delimiter(',');
    modulus->add_option("--delta", cfg.deltas, "Delta grid")->delimiter(',')->check(positive);
    modulus->add_option("--seed", cfg.seed, "RNG seed for random pairs");
    output_opts(modulus, "json,table");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::Success& e) {
        app.exit(e, out, err);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }
    cfg.has_target = tgt->count() > 0;
    cfg.has_growth = gr->count() > 0;

    try {
        if (analyze->parsed()) return cmd_analyze(cfg, out);
        if (verify->parsed()) return cmd_verify(cfg, out);
        if (glist->parsed()) return cmd_gallery_list(cfg, out);
        if (gemit->parsed()) return cmd_gallery_emit(cfg, out);
        if (probe->parsed()) return cmd_probe(cfg, out);
        if (abel->parsed()) return cmd_abel(cfg, out);
        if (modulus->parsed()) return cmd_modulus(cfg, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const EvalError& e) {
        err << "evaluation error: " << e.what() << "\n";
        return kExitEval;
    } catch (const SelectionError& e) {
        err << "construction failed: " << e.what() << "\n";
        return kExitVerifyFail;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace wardseq
