#include "lbpx/eval.hpp"

#include "lbpx/errors.hpp"
#include "lbpx/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <sstream>

namespace lbpx {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return fields;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : base / path;
}

GrayImage load_entry(const std::filesystem::path& base, const ManifestEntry& entry) {
    const auto path = resolve(base, entry.path);
    try {
        return read_pgm_file(path);
    } catch (const Error& e) {
        throw EvaluationError(EvaluationError::Kind::UnreadableFile,
                              "cannot load '" + path.string() + "': " + e.what());
    }
}

std::vector<GridDescriptor> describe_all(const std::vector<ManifestEntry>& entries, const EvalConfig& config,
                                         const std::filesystem::path& base, unsigned threads) {
    std::vector<GridDescriptor> out(entries.size());
    parallel_for(entries.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto img = load_entry(base, entries[i]);
            out[i] = describe_image(img, config.params, config.grid_rows, config.grid_cols);
        }
    });
    return out;
}

std::uint64_t fnv1a(std::span<const std::uint32_t> labels) {
    std::uint64_t h = 14695981039346656037ull;
    for (const std::uint32_t v : labels) {
        for (int b = 0; b < 4; ++b) {
            h ^= (v >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    return h;
}

} // namespace

std::vector<ManifestEntry> Manifest::split(Split which) const {
    std::vector<ManifestEntry> out;
    std::copy_if(entries.begin(), entries.end(), std::back_inserter(out),
                 [which](const ManifestEntry& e) { return e.split == which; });
    return out;
}

Manifest load_manifest(std::string_view csv) {
    Manifest manifest;
    std::set<std::string, std::less<>> seen;
    bool header_seen = false;
    std::size_t row = 0;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        auto eol = csv.find('\n', pos);
        if (eol == std::string_view::npos) eol = csv.size();
        std::string_view line = csv.substr(pos, eol - pos);
        pos = eol + 1;
        ++row;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

        if (!header_seen) {
            if (line != "path,label,split") {
                throw ManifestError("manifest row 1: expected header 'path,label,split'");
            }
            header_seen = true;
            continue;
        }
        if (line.empty()) continue;

        const auto fields = split_fields(line);
        const std::string where = "manifest row " + std::to_string(row);
        if (fields.size() != 3) {
            throw ManifestError(where + ": expected 3 fields, got " + std::to_string(fields.size()));
        }
        if (fields[0].empty()) throw ManifestError(where + ": empty path");
        if (fields[1].empty()) throw ManifestError(where + ": empty label");
        Split split;
        if (fields[2] == "train") {
            split = Split::train;
        } else if (fields[2] == "test") {
            split = Split::test;
        } else {
            throw ManifestError(where + ": unknown split '" + std::string(fields[2]) + "' (expected train or test)");
        }
        if (!seen.emplace(fields[0]).second) {
            throw ManifestError(where + ": duplicate path '" + std::string(fields[0]) + "'");
        }
        manifest.entries.push_back({std::string(fields[0]), std::string(fields[1]), split});
    }
    if (!header_seen) throw ManifestError("manifest row 1: expected header 'path,label,split'");
    return manifest;
}

Model train_model(const Manifest& manifest, const EvalConfig& config, const std::filesystem::path& base_dir,
                  unsigned threads) {
    config.params.validate();
    const auto train = manifest.split(Split::train);
    if (train.empty()) throw EvaluationError(EvaluationError::Kind::EmptySplit, "manifest has no train entries");

    const auto descriptors = describe_all(train, config, base_dir, threads);
    std::vector<LabeledDescriptor> samples;
    samples.reserve(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) samples.emplace_back(train[i].label, descriptors[i]);

    Model model = build_templates(samples);
    if (config.region_weights) set_region_weights(model, *config.region_weights);
    return model;
}

EvalReport evaluate(const Manifest& manifest, const EvalConfig& config, const std::filesystem::path& base_dir,
                    unsigned threads) {
    const auto test = manifest.split(Split::test);
    if (test.empty()) throw EvaluationError(EvaluationError::Kind::EmptySplit, "manifest has no test entries");

    const Model model = train_model(manifest, config, base_dir, threads);
    std::map<std::string, std::size_t, std::less<>> index;
    for (std::size_t i = 0; i < model.classes.size(); ++i) index.emplace(model.classes[i].label, i);
    for (const auto& e : test) {
        if (!index.contains(e.label)) {
            throw EvaluationError(EvaluationError::Kind::UnknownLabel,
                                  "test entry '" + e.path + "' has label '" + e.label + "' absent from training");
        }
    }

    const auto descriptors = describe_all(test, config, base_dir, threads);
    std::vector<std::size_t> predicted(test.size());
    parallel_for(test.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            predicted[i] = index.find(predict(model, descriptors[i], config.metric).label)->second;
        }
    });

    EvalReport report;
    report.config = config;
    report.n_test = test.size();
    for (const auto& c : model.classes) report.classes.push_back(c.label);
    report.confusion.assign(model.classes.size(), std::vector<std::uint64_t>(model.classes.size(), 0));
    std::uint64_t correct = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        const std::size_t truth = index.find(test[i].label)->second;
        ++report.confusion[truth][predicted[i]];
        if (truth == predicted[i]) ++correct;
    }
    report.accuracy = static_cast<double>(correct) / static_cast<double>(report.n_test);
    return report;
}

BenchResult benchmark_fps(const GrayImage& img, const LbpParams& params, std::uint64_t iterations,
                          unsigned threads) {
    if (iterations == 0) throw ParameterError("iterations must be >= 1");
    params.validate();
    const unsigned workers = std::max(1u, threads);

    using clock = std::chrono::steady_clock;
    LbpMap map = lbp_map(img, params, workers); // warm mapping cache outside the timed loop
    const auto start = clock::now();
    for (std::uint64_t i = 0; i < iterations; ++i) map = lbp_map(img, params, workers);
    const std::chrono::duration<double> elapsed = clock::now() - start;

    BenchResult r;
    r.iterations = iterations;
    r.threads = workers;
    r.width = img.width();
    r.height = img.height();
    r.params = map.params;
    r.seconds = std::max(elapsed.count(), 1e-9);
    r.fps = static_cast<double>(iterations) / r.seconds;
    r.ms_per_frame = 1000.0 / r.fps;
    r.checksum = fnv1a(map.labels);
    return r;
}

} // namespace lbpx
