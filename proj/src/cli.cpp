#include "lbpx/cli.hpp"

#include "lbpx/descriptor.hpp"
#include "lbpx/detect.hpp"
#include "lbpx/errors.hpp"
#include "lbpx/eval.hpp"
#include "lbpx/lbp.hpp"
#include "lbpx/parallel.hpp"
#include "lbpx/serialize.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <filesystem>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace lbpx {

namespace {

namespace fs = std::filesystem;

struct LbpOptions {
    int neighbors = 8;
    double radius = 1.0;
    std::string sampling = "square3x3";
    std::string mapping = "u2";

    LbpParams params() const {
        LbpParams p;
        p.neighbors = neighbors;
        p.radius = radius;
        p.sampling = *parse_sampling(sampling);
        p.mapping = *parse_mapping_mode(mapping);
        if (p.sampling == Sampling::square3x3) p.radius = 1.0;
        p.validate();
        return p;
    }
};

void add_lbp_options(CLI::App& cmd, LbpOptions& o) {
    cmd.add_option("--neighbors", o.neighbors, "Sampling points P (2..24; 8 for square3x3)")
        ->capture_default_str();
    cmd.add_option("--radius", o.radius, "Sampling radius R in pixels (circular only)")->capture_default_str();
    cmd.add_option("--sampling", o.sampling, "Neighbourhood: square3x3 or circular")
        ->check(CLI::IsMember({"square3x3", "circular"}))
        ->capture_default_str();
    cmd.add_option("--mapping", o.mapping, "Label mapping: raw, u2, ri or riu2")
        ->check(CLI::IsMember({"raw", "u2", "ri", "riu2"}))
        ->capture_default_str();
}

std::pair<int, int> parse_pair(const std::string& text, const char* what) {
    const auto x = text.find('x');
    int a = 0;
    int b = 0;
    if (x != std::string::npos) {
        const auto r1 = std::from_chars(text.data(), text.data() + x, a);
        const auto r2 = std::from_chars(text.data() + x + 1, text.data() + text.size(), b);
        if (r1.ec == std::errc() && r1.ptr == text.data() + x && r2.ec == std::errc() &&
            r2.ptr == text.data() + text.size() && a > 0 && b > 0) {
            return {a, b};
        }
    }
    throw ParameterError(std::string("invalid ") + what + " '" + text + "' (expected AxB with positive integers)");
}

std::vector<double> parse_weights(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw ParameterError("invalid weight '" + item + "'");
        }
    }
    return out;
}

Metric metric_from(const std::string& text) { return *parse_metric(text); }

void emit(const std::string& output, std::string_view bytes, std::ostream& out) {
    if (output.empty() || output == "-") {
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
    } else {
        write_file(output, bytes);
    }
}

fs::path base_dir_of(const fs::path& file) {
    const auto parent = file.parent_path();
    return parent.empty() ? fs::path(".") : parent;
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ModelMismatchError*>(&e) || dynamic_cast<const TrainingError*>(&e) ||
        dynamic_cast<const CorruptMapError*>(&e)) {
        return kExitMismatch;
    }
    if (const auto* ev = dynamic_cast<const EvaluationError*>(&e)) {
        return ev->kind() == EvaluationError::Kind::UnknownLabel ? kExitMismatch : kExitIo;
    }
    if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const FormatError*>(&e) ||
        dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const ManifestError*>(&e)) {
        return kExitIo;
    }
    if (dynamic_cast<const ParameterError*>(&e) || dynamic_cast<const BoundsError*>(&e)) return kExitUsage;
    return kExitIo;
}

GrayImage synthetic_image(int width, int height, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(0, 255);
    GrayImage img(width, height);
    for (auto& px : img.pixels()) px = static_cast<std::uint8_t>(dist(rng));
    return img;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Local binary pattern texture features: maps, descriptors, template classification, "
                 "sliding-window detection and benchmarks",
                 "lbpx"};
    app.require_subcommand(1, 1);
    app.set_help_all_flag("--help-all", "Show help for every subcommand");

    // map
    auto* map_cmd = app.add_subcommand("map", "Write the LBP label map of an image as PGM (labels > 255 clamped)");
    std::string map_input, map_output;
    LbpOptions map_lbp;
    map_cmd->add_option("--input", map_input, "Input PGM image")->required();
    map_cmd->add_option("--output", map_output, "Output PGM path (default: standard output)");
    add_lbp_options(*map_cmd, map_lbp);

    // describe
    auto* desc_cmd = app.add_subcommand("describe", "Write the grid histogram descriptor of an image as JSON");
    std::string desc_input, desc_output, desc_grid = "3x3";
    LbpOptions desc_lbp;
    desc_cmd->add_option("--input", desc_input, "Input PGM image")->required();
    desc_cmd->add_option("--output", desc_output, "Output JSON path (default: standard output)");
    desc_cmd->add_option("--grid", desc_grid, "Grid as ROWSxCOLS")->capture_default_str();
    add_lbp_options(*desc_cmd, desc_lbp);

    // train
    auto* train_cmd = app.add_subcommand("train", "Build per-class templates from a manifest's train split");
    std::string train_manifest, train_output, train_grid = "3x3", train_weights;
    LbpOptions train_lbp;
    train_cmd->add_option("--manifest", train_manifest, "Manifest CSV (path,label,split)")->required();
    train_cmd->add_option("--output", train_output, "Output model JSON path (default: standard output)");
    train_cmd->add_option("--grid", train_grid, "Grid as ROWSxCOLS")->capture_default_str();
    train_cmd->add_option("--weights", train_weights, "Comma-separated per-region weights for wchi2");
    add_lbp_options(*train_cmd, train_lbp);

    // classify
    auto* cls_cmd = app.add_subcommand("classify", "Predict the class of an image with a template model");
    std::string cls_model, cls_input, cls_output, cls_metric = "chi2";
    cls_cmd->add_option("--model", cls_model, "Model JSON")->required();
    cls_cmd->add_option("--input", cls_input, "Input PGM image")->required();
    cls_cmd->add_option("--output", cls_output, "Output path (default: standard output)");
    cls_cmd->add_option("--metric", cls_metric, "Distance: chi2, wchi2, intersect or l1")
        ->check(CLI::IsMember({"chi2", "wchi2", "intersect", "l1"}))
        ->capture_default_str();

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Train on the train split, score the test split, report JSON");
    std::string eval_manifest, eval_output, eval_grid = "3x3", eval_metric = "chi2", eval_weights;
    std::uint64_t eval_bench_iterations = 0;
    LbpOptions eval_lbp;
    eval_cmd->add_option("--manifest", eval_manifest, "Manifest CSV (path,label,split)")->required();
    eval_cmd->add_option("--output", eval_output, "Output report JSON path (default: standard output)");
    eval_cmd->add_option("--grid", eval_grid, "Grid as ROWSxCOLS")->capture_default_str();
    eval_cmd->add_option("--metric", eval_metric, "Distance: chi2, wchi2, intersect or l1")
        ->check(CLI::IsMember({"chi2", "wchi2", "intersect", "l1"}))
        ->capture_default_str();
    eval_cmd->add_option("--weights", eval_weights, "Comma-separated per-region weights for wchi2");
    eval_cmd->add_option("--bench-iterations", eval_bench_iterations,
                         "Also time LBP maps on the first test image and add fps to the report (0 = off)")
        ->capture_default_str();
    add_lbp_options(*eval_cmd, eval_lbp);

    // detect
    auto* det_cmd = app.add_subcommand("detect", "Sliding-window search for the template of a single-class model");
    std::string det_scene, det_model, det_output, det_window;
    int det_stride = 4;
    double det_threshold = 0.0;
    double det_iou = 0.3;
    std::size_t det_max = 0;
    det_cmd->add_option("--scene", det_scene, "Scene PGM image")->required();
    det_cmd->add_option("--model", det_model, "Single-class model JSON")->required();
    det_cmd->add_option("--window", det_window, "Window as WIDTHxHEIGHT")->required();
    det_cmd->add_option("--stride", det_stride, "Window step in pixels")->capture_default_str();
    det_cmd->add_option("--threshold", det_threshold, "Keep windows with chi2 distance <= threshold")->required();
    det_cmd->add_option("--nms-iou", det_iou, "Suppress boxes overlapping a better one above this IoU")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    det_cmd->add_option("--max-detections", det_max, "Emit at most this many detections (0 = all)")
        ->capture_default_str();
    det_cmd->add_option("--output", det_output, "Output JSON-lines path (default: standard output)");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "Measure LBP map throughput in frames per second");
    std::string bench_input;
    int bench_width = 320;
    int bench_height = 240;
    std::uint32_t bench_seed = 1;
    std::uint64_t bench_iterations = 100;
    unsigned bench_threads = 1;
    bool bench_json = false;
    LbpOptions bench_lbp;
    bench_lbp.mapping = "raw";
    bench_cmd->add_option("--input", bench_input, "PGM image to process (default: random image)");
    bench_cmd->add_option("--width", bench_width, "Random image width")->capture_default_str();
    bench_cmd->add_option("--height", bench_height, "Random image height")->capture_default_str();
    bench_cmd->add_option("--seed", bench_seed, "Random image seed")->capture_default_str();
    bench_cmd->add_option("--iterations", bench_iterations, "Timed LBP map computations")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_option("--threads", bench_threads, "Worker threads per map (1 = single-threaded)")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    bench_cmd->add_flag("--json", bench_json, "Print the result as JSON");
    add_lbp_options(*bench_cmd, bench_lbp);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const unsigned threads = default_threads();

        if (*map_cmd) {
            const auto img = read_pgm_file(map_input);
            const auto map = lbp_map(img, map_lbp.params(), threads);
            emit(map_output, save_pgm(lbp_map_to_image(map)), out);
        } else if (*desc_cmd) {
            const auto [rows, cols] = parse_pair(desc_grid, "grid");
            const auto params = desc_lbp.params();
            const auto img = read_pgm_file(desc_input);
            emit(desc_output, dump_pretty(descriptor_to_json(describe_image(img, params, rows, cols, threads))), out);
        } else if (*train_cmd) {
            EvalConfig config;
            std::tie(config.grid_rows, config.grid_cols) = parse_pair(train_grid, "grid");
            config.params = train_lbp.params();
            if (!train_weights.empty()) config.region_weights = parse_weights(train_weights);
            const auto manifest = load_manifest(read_file(train_manifest));
            const auto model = train_model(manifest, config, base_dir_of(train_manifest), threads);
            emit(train_output, serialize_model(model), out);
        } else if (*cls_cmd) {
            const auto model = parse_model(read_file(cls_model));
            const auto img = read_pgm_file(cls_input);
            const auto query = describe_image(img, model.params, model.grid_rows, model.grid_cols, threads);
            const auto result = predict(model, query, metric_from(cls_metric));
            std::string text = result.label + "\n";
            for (const auto& [label, d] : result.scores) text += label + " " + format_fixed(d) + "\n";
            emit(cls_output, text, out);
        } else if (*eval_cmd) {
            EvalConfig config;
            std::tie(config.grid_rows, config.grid_cols) = parse_pair(eval_grid, "grid");
            config.params = eval_lbp.params();
            config.metric = metric_from(eval_metric);
            if (!eval_weights.empty()) config.region_weights = parse_weights(eval_weights);
            const auto manifest = load_manifest(read_file(eval_manifest));
            const auto base = base_dir_of(eval_manifest);
            auto report = evaluate(manifest, config, base, threads);
            if (eval_bench_iterations > 0) {
                const auto test = manifest.split(Split::test);
                const fs::path p(test.front().path);
                const auto img = read_pgm_file(p.is_absolute() ? p : base / p);
                report.fps = benchmark_fps(img, config.params, eval_bench_iterations).fps;
            }
            emit(eval_output, dump_pretty(report_to_json(report)), out);
        } else if (*det_cmd) {
            const auto model = parse_model(read_file(det_model));
            const auto scene = read_pgm_file(det_scene);
            ScanOptions opts;
            std::tie(opts.window_width, opts.window_height) = parse_pair(det_window, "window");
            opts.stride = det_stride;
            opts.threshold = det_threshold;
            opts.threads = threads;
            auto hits = nms(scan_detect(scene, model, opts), det_iou);
            if (det_max > 0 && hits.size() > det_max) hits.resize(det_max);
            std::string text;
            for (const auto& d : hits) text += detection_json_line(d) + "\n";
            emit(det_output, text, out);
        } else if (*bench_cmd) {
            const auto params = bench_lbp.params();
            const GrayImage img = bench_input.empty() ? synthetic_image(bench_width, bench_height, bench_seed)
                                                      : read_pgm_file(bench_input);
            const auto r = benchmark_fps(img, params, bench_iterations, bench_threads);
            if (bench_json) {
                out << dump_pretty(bench_to_json(r));
            } else {
                out << "fps " << format_fixed(r.fps) << "\n"
                    << "ms_per_frame " << format_fixed(r.ms_per_frame) << "\n"
                    << "iterations " << r.iterations << "\n"
                    << "threads " << r.threads << (r.threads == 1 ? " (single-threaded)" : " (multi-threaded)")
                    << "\n"
                    << "image " << r.width << "x" << r.height << "\n"
                    << "params neighbors=" << r.params.neighbors << " radius=" << format_fixed(r.params.radius)
                    << " sampling=" << to_string(r.params.sampling) << " mapping=" << to_string(r.params.mapping)
                    << "\n"
                    << "checksum " << r.checksum << "\n";
            }
            out.flush();
        }
    } catch (const std::exception& e) {
        err << "lbpx: error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitOk;
}

} // namespace lbpx
