#include "wardseq/report.hpp"

#include <charconv>
#include <sstream>

#include "wardseq/error.hpp"
#include "wardseq/kernels.hpp"

namespace wardseq {

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

Json to_json(const DensityTrace& t) {
    Json cps = Json::array();
    for (const auto& p : t.checkpoints) {
        cps.push_back({{"checkpoint", p.checkpoint},
                       {"at", p.at},
                       {"count", p.count},
                       {"denominator", p.denominator},
                       {"density", p.density}});
    }
    return {{"epsilon", t.epsilon}, {"checkpoints", cps}};
}

Json to_json(const Verdict& v) {
    Json traces = Json::array();
    for (const auto& t : v.traces) traces.push_back(to_json(t));
    Json evidence = Json::array();
    for (const auto& e : v.evidence) evidence.push_back({{"label", e.label}, {"at", e.at}, {"value", e.value}});
    return {{"status", to_string(v.status)},
            {"traces", traces},
            {"witnesses", v.witnesses},
            {"note", v.note},
            {"evidence", evidence}};
}

Json to_json(const ClassReport& r) {
    return {{"sequence", r.sequence},
            {"theta", r.theta},
            {"horizon", r.horizon},
            {"theta_margin_ok", r.theta_margin_ok},
            {"quasi_cauchy", to_json(r.quasi_cauchy)},
            {"stat_qc", to_json(r.stat_qc)},
            {"lac_stat_qc", to_json(r.lac_stat_qc)},
            {"slowly_oscillating", to_json(r.slowly_oscillating)},
            {"delta_qc", to_json(r.delta_qc)},
            {"notes", r.notes}};
}

Json to_json(const BlockSelection& s) {
    Json log = Json::array();
    for (const auto& c : s.constraints_log) {
        log.push_back({{"j", c.j},
                       {"r", c.r},
                       {"r_prev", c.r_prev},
                       {"relation", c.relation},
                       {"lhs", c.lhs},
                       {"op", c.op},
                       {"rhs", c.rhs},
                       {"holds", c.holds}});
    }
    return {{"r_js", s.r_js}, {"constraints_log", log}, {"notes", s.notes}};
}

Json to_json(const RatioStats& s) {
    return {{"window", {s.window.first, s.window.second}},
            {"inf_estimate", s.inf_estimate},
            {"sup_estimate", s.sup_estimate},
            {"window_qr", s.window_qr}};
}

Json to_json(const AbelResult& r) {
    Json est = Json::array();
    for (const auto& e : r.estimates) est.push_back({{"x", e.x}, {"value", e.value}, {"terms", e.terms}});
    Json out = {{"estimates", est}, {"extrapolated", r.extrapolated}};
    out["verdict"] = r.verdict ? to_json(*r.verdict) : Json(nullptr);
    return out;
}

namespace {

Json class_verdicts(const ClassVerdicts& c) {
    return {{"lac_stat_qc", to_json(c.lac_stat_qc)},
            {"convergent", to_json(c.convergent)},
            {"s_theta", to_json(c.s_theta)},
            {"s_theta_limit", c.s_theta_limit}};
}

}  // namespace

Json to_json(const PreservationReport& r) {
    Json ws = Json::array();
    for (const auto& w : r.witnesses) {
        Json outs = Json::array();
        for (const auto& o : w.outcomes) {
            outs.push_back({{"type", o.type},
                            {"outcome", to_string(o.outcome)},
                            {"hypothesis", to_string(o.hypothesis)},
                            {"conclusion", to_string(o.conclusion)}});
        }
        ws.push_back({{"id", w.id}, {"input", class_verdicts(w.input)}, {"output", class_verdicts(w.output)},
                      {"outcomes", outs}});
    }
    Json summary = Json::array();
    for (const auto& s : r.summary) {
        summary.push_back({{"type", s.type}, {"outcome", to_string(s.outcome)}, {"failing_witnesses", s.failing_witnesses}});
    }
    return {{"function", r.function},           {"theta", r.theta},   {"horizon", r.horizon},
            {"summary", summary},               {"witnesses", ws},    {"consistency_issues", r.consistency_issues}};
}

Json to_json(const ScenarioResult& r) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name}, {"result", c.pass ? "PASS" : "FAIL"}, {"detail", c.detail}});
    }
    Json verdicts = Json::array();
    for (const auto& [name, v] : r.verdicts) verdicts.push_back({{"name", name}, {"verdict", to_json(v)}});
    Json audits = Json::array();
    for (const auto& a : r.audits) audits.push_back({{"label", a.label}, {"at", a.at}, {"value", a.value}});
    Json out = {{"theorem", r.id}, {"theta", r.theta}, {"result", r.passed() ? "PASS" : "FAIL"}, {"checks", checks}};
    out["selection"] = r.selection ? to_json(*r.selection) : Json(nullptr);
    out["audits"] = audits;
    out["verdicts"] = verdicts;
    return out;
}

Json to_json(const std::vector<ModulusPoint>& m) {
    Json out = Json::array();
    for (const auto& p : m) out.push_back({{"delta", p.delta}, {"omega", p.omega}});
    return out;
}

Json document(const std::string& kind, const Json& payload) {
    Json out = {{"schema", kSchemaVersion}, {"kind", kind}};
    for (auto it = payload.begin(); it != payload.end(); ++it) out[it.key()] = it.value();
    return out;
}

std::string trace_csv(const Verdict& v) {
    std::string out = "checkpoint,epsilon,count,denominator,density\n";
    for (const auto& t : v.traces) {
        for (const auto& p : t.checkpoints) {
            out += std::to_string(p.checkpoint) + "," + format_number(t.epsilon) + "," + std::to_string(p.count) + "," +
                   std::to_string(p.denominator) + "," + format_number(p.density) + "\n";
        }
    }
    return out;
}

namespace {

template <typename T>
T parse_field(std::string_view s, std::size_t line) {
    T v{};
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ConfigError("bad CSV field '" + std::string(s) + "' on line " + std::to_string(line));
    }
    return v;
}

}  // namespace

std::vector<TraceRow> parse_trace_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "checkpoint,epsilon,count,denominator,density") {
        throw ConfigError("missing trace CSV header");
    }
    std::vector<TraceRow> rows;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string_view> f;
        std::string_view rest(line);
        for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos; rest.remove_prefix(pos + 1)) {
            f.push_back(rest.substr(0, pos));
        }
        f.push_back(rest);
        if (f.size() != 5) throw ConfigError("trace CSV row needs 5 fields on line " + std::to_string(lineno));
        rows.push_back({parse_field<Index>(f[0], lineno), parse_field<double>(f[1], lineno),
                        parse_field<Index>(f[2], lineno), parse_field<Index>(f[3], lineno),
                        parse_field<double>(f[4], lineno)});
    }
    return rows;
}

std::string gallery_csv(const RealSeq& seq, Index n) {
    if (n < 1) throw ConfigError("n must be at least 1");
    const auto values = kernels::sample(seq, 1, n);
    std::string out = "k,alpha_k\n";
    out.reserve(out.size() + static_cast<std::size_t>(n) * 12);
    for (Index k = 1; k <= n; ++k) {
        out += std::to_string(k);
        out += ',';
        out += format_number(values[static_cast<std::size_t>(k - 1)]);
        out += '\n';
    }
    return out;
}

}  // namespace wardseq
