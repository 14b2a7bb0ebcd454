#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wardseq/gallery.hpp"
#include "wardseq/lacunary.hpp"
#include "wardseq/methods.hpp"
#include "wardseq/probe.hpp"
#include "wardseq/scenarios.hpp"
#include "wardseq/wardclass.hpp"

namespace wardseq {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json to_json(const DensityTrace& t);
Json to_json(const Verdict& v);
Json to_json(const ClassReport& r);
Json to_json(const BlockSelection& s);
Json to_json(const RatioStats& s);
Json to_json(const AbelResult& r);
Json to_json(const PreservationReport& r);
Json to_json(const ScenarioResult& r);
Json to_json(const std::vector<ModulusPoint>& m);

/// Adds "schema": 1 and a "kind" tag in front of the payload.
Json document(const std::string& kind, const Json& payload);

/// Shortest round-trip decimal form.
std::string format_number(double v);

/// Header plus one row per (trace, checkpoint): checkpoint,epsilon,count,denominator,density.
std::string trace_csv(const Verdict& v);

struct TraceRow {
    Index checkpoint = 0;
    double epsilon = 0.0;
    Index count = 0;
    Index denominator = 1;
    double density = 0.0;
};

/// Inverse of trace_csv. Throws ConfigError on malformed input.
std::vector<TraceRow> parse_trace_csv(const std::string& text);

/// Header "k,alpha_k" plus rows k = 1..n.
std::string gallery_csv(const RealSeq& seq, Index n);

}  // namespace wardseq
