#include "lbpx/serialize.hpp"

#include "lbpx/errors.hpp"

#include <cmath>
#include <cstdio>

namespace lbpx {

namespace {

const Json& field(const Json& j, const char* key) {
    if (!j.is_object()) throw SchemaError(std::string("expected JSON object holding '") + key + "'");
    const auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
    return *it;
}

template <typename T>
T get_as(const Json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("field '") + key + "' has the wrong type: " + e.what());
    }
}

std::pair<int, int> grid_from_json(const Json& j) {
    const auto grid = get_as<std::vector<int>>(j, "grid");
    if (grid.size() != 2) throw SchemaError("field 'grid' must be [rows, cols]");
    return {grid[0], grid[1]};
}

template <typename Enum>
Enum parse_enum(const Json& j, const char* key, std::optional<Enum> (*parser)(std::string_view) noexcept) {
    const auto text = get_as<std::string>(j, key);
    const auto value = parser(text);
    if (!value) throw SchemaError(std::string("field '") + key + "' has unknown value '" + text + "'");
    return *value;
}

} // namespace

std::string format_fixed(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value == 0.0 ? 0.0 : value);
    return buf;
}

std::string dump_pretty(const Json& j) { return j.dump(2) + "\n"; }

Json params_to_json(const LbpParams& params) {
    Json j;
    j["neighbors"] = params.neighbors;
    j["radius"] = params.sampling == Sampling::square3x3 ? 1.0 : params.radius;
    j["sampling"] = std::string(to_string(params.sampling));
    j["mapping"] = std::string(to_string(params.mapping));
    return j;
}

LbpParams params_from_json(const Json& j) {
    LbpParams p;
    p.neighbors = get_as<int>(j, "neighbors");
    p.radius = get_as<double>(j, "radius");
    p.sampling = parse_enum<Sampling>(j, "sampling", &parse_sampling);
    p.mapping = parse_enum<MappingMode>(j, "mapping", &parse_mapping_mode);
    try {
        p.validate();
    } catch (const ParameterError& e) {
        throw SchemaError(std::string("invalid params: ") + e.what());
    }
    return p;
}

Json descriptor_to_json(const GridDescriptor& d) {
    Json j;
    j["grid"] = {d.grid_rows, d.grid_cols};
    j["params"] = params_to_json(d.params);
    j["bins"] = d.values;
    if (d.region_weights) j["weights"] = *d.region_weights;
    return j;
}

GridDescriptor descriptor_from_json(const Json& j) {
    GridDescriptor d;
    std::tie(d.grid_rows, d.grid_cols) = grid_from_json(j);
    d.params = params_from_json(field(j, "params"));
    d.bin_count = d.params.label_count();
    d.values = get_as<std::vector<double>>(j, "bins");
    if (j.contains("weights")) d.region_weights = get_as<std::vector<double>>(j, "weights");
    if (d.grid_rows < 1 || d.grid_cols < 1 ||
        d.values.size() != static_cast<std::size_t>(d.region_count()) * d.bin_count) {
        throw SchemaError("descriptor bins do not match grid and label count");
    }
    return d;
}

Json model_to_json(const Model& model) {
    Json j;
    j["format_version"] = model.format_version;
    j["params"] = params_to_json(model.params);
    j["grid"] = {model.grid_rows, model.grid_cols};
    Json classes = Json::array();
    for (const auto& c : model.classes) {
        Json entry;
        entry["label"] = c.label;
        entry["template"] = c.descriptor.values;
        classes.push_back(std::move(entry));
    }
    j["classes"] = std::move(classes);
    if (model.region_weights) j["weights"] = *model.region_weights;
    return j;
}

Model model_from_json(const Json& j) {
    Model m;
    m.format_version = get_as<int>(j, "format_version");
    if (m.format_version != Model::kFormatVersion) {
        throw SchemaError("unsupported model format_version " + std::to_string(m.format_version));
    }
    m.params = params_from_json(field(j, "params"));
    std::tie(m.grid_rows, m.grid_cols) = grid_from_json(j);
    if (m.grid_rows < 1 || m.grid_cols < 1) throw SchemaError("model grid must be at least 1x1");
    const std::uint32_t bins = m.params.label_count();

    const Json& classes = field(j, "classes");
    if (!classes.is_array()) throw SchemaError("field 'classes' must be an array");
    for (const auto& entry : classes) {
        GridDescriptor d;
        d.grid_rows = m.grid_rows;
        d.grid_cols = m.grid_cols;
        d.bin_count = bins;
        d.params = m.params;
        d.values = get_as<std::vector<double>>(entry, "template");
        m.classes.push_back({get_as<std::string>(entry, "label"), std::move(d)});
    }
    if (j.contains("weights") && !j.at("weights").is_null()) {
        m.region_weights = get_as<std::vector<double>>(j, "weights");
    }
    validate_model(m);
    return m;
}

std::string serialize_model(const Model& model) { return dump_pretty(model_to_json(model)); }

Model parse_model(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("model is not valid JSON: ") + e.what());
    }
    return model_from_json(j);
}

Json eval_config_to_json(const EvalConfig& config) {
    Json j;
    j["params"] = params_to_json(config.params);
    j["grid"] = {config.grid_rows, config.grid_cols};
    j["metric"] = std::string(to_string(config.metric));
    if (config.region_weights) j["weights"] = *config.region_weights;
    return j;
}

EvalConfig eval_config_from_json(const Json& j) {
    EvalConfig c;
    c.params = params_from_json(field(j, "params"));
    std::tie(c.grid_rows, c.grid_cols) = grid_from_json(j);
    c.metric = parse_enum<Metric>(j, "metric", &parse_metric);
    if (j.contains("weights")) c.region_weights = get_as<std::vector<double>>(j, "weights");
    return c;
}

Json report_to_json(const EvalReport& report) {
    Json j;
    j["accuracy"] = report.accuracy;
    j["n_test"] = report.n_test;
    j["classes"] = report.classes;
    j["confusion"] = report.confusion;
    if (report.fps) j["fps"] = *report.fps;
    j["config"] = eval_config_to_json(report.config);
    return j;
}

EvalReport report_from_json(const Json& j) {
    EvalReport r;
    r.accuracy = get_as<double>(j, "accuracy");
    r.n_test = get_as<std::uint64_t>(j, "n_test");
    r.classes = get_as<std::vector<std::string>>(j, "classes");
    r.confusion = get_as<std::vector<std::vector<std::uint64_t>>>(j, "confusion");
    if (j.contains("fps")) r.fps = get_as<double>(j, "fps");
    r.config = eval_config_from_json(field(j, "config"));
    return r;
}

Json bench_to_json(const BenchResult& result) {
    Json j;
    j["fps"] = result.fps;
    j["ms_per_frame"] = result.ms_per_frame;
    j["seconds"] = result.seconds;
    j["iterations"] = result.iterations;
    j["threads"] = result.threads;
    j["image"] = {result.width, result.height};
    j["params"] = params_to_json(result.params);
    j["checksum"] = result.checksum;
    return j;
}

std::string detection_json_line(const Detection& d) {
    return "{\"x\":" + std::to_string(d.x) + ",\"y\":" + std::to_string(d.y) + ",\"w\":" + std::to_string(d.width) +
           ",\"h\":" + std::to_string(d.height) + ",\"score\":" + format_fixed(d.score) + "}";
}

} // namespace lbpx
