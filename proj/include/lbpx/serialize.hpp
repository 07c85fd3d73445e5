#pragma once

#include "lbpx/classify.hpp"
#include "lbpx/descriptor.hpp"
#include "lbpx/detect.hpp"
#include "lbpx/eval.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace lbpx {

using Json = nlohmann::ordered_json;

// JSON documents keep doubles at full round-trip precision; keys are
// emitted in a fixed order so output is byte-stable. All *_from_json
// functions throw SchemaError on missing or mistyped fields.

Json params_to_json(const LbpParams& params);
LbpParams params_from_json(const Json& j);

/// {"grid": [rows, cols], "params": {...}, "bins": [...]} plus "weights"
/// when the descriptor carries region weights.
Json descriptor_to_json(const GridDescriptor& d);
GridDescriptor descriptor_from_json(const Json& j);

/// {"format_version": 1, "params": {...}, "grid": [rows, cols],
///  "classes": [{"label": ..., "template": [...]}], "weights": [...]?}
Json model_to_json(const Model& model);
Model model_from_json(const Json& j);

std::string serialize_model(const Model& model);
/// Parses and validates a model file. Throws SchemaError for malformed
/// JSON and ModelMismatchError for inconsistent content.
Model parse_model(std::string_view text);

Json eval_config_to_json(const EvalConfig& config);
EvalConfig eval_config_from_json(const Json& j);

Json report_to_json(const EvalReport& report);
EvalReport report_from_json(const Json& j);

Json bench_to_json(const BenchResult& result);

/// One detection as a compact JSON line, score in fixed 6-decimal form:
/// {"x":..,"y":..,"w":..,"h":..,"score":..}
std::string detection_json_line(const Detection& d);

/// Fixed-point with six decimals, the format used for human-facing numbers.
std::string format_fixed(double value);

/// Pretty-printed with a trailing newline.
std::string dump_pretty(const Json& j);

} // namespace lbpx
