#pragma once

#include "lbpx/classify.hpp"
#include "lbpx/image.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lbpx {

enum class Split { train, test };

struct ManifestEntry {
    std::string path;
    std::string label;
    Split split = Split::train;

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

struct Manifest {
    std::vector<ManifestEntry> entries;

    std::vector<ManifestEntry> split(Split which) const;
};

/// Parses "path,label,split" CSV. Rows are numbered from 1 at the header.
/// Throws ManifestError naming the row for a missing header, wrong field
/// count, empty path/label, unknown split or duplicate path.
Manifest load_manifest(std::string_view csv);

struct EvalConfig {
    LbpParams params{8, 1.0, Sampling::square3x3, MappingMode::u2};
    int grid_rows = 3;
    int grid_cols = 3;
    Metric metric = Metric::chi2;
    std::optional<std::vector<double>> region_weights;

    friend bool operator==(const EvalConfig&, const EvalConfig&) = default;
};

struct EvalReport {
    double accuracy = 0.0;
    std::uint64_t n_test = 0;
    /// Class labels in model order; indexes rows and columns of `confusion`.
    std::vector<std::string> classes;
    /// confusion[true][predicted]
    std::vector<std::vector<std::uint64_t>> confusion;
    std::optional<double> fps;
    EvalConfig config;

    friend bool operator==(const EvalReport&, const EvalReport&) = default;
};

/// Builds the template model from the manifest's train split. Relative
/// paths resolve against `base_dir`. Throws EvaluationError for unreadable
/// images (naming the path) or an empty train split.
Model train_model(const Manifest& manifest, const EvalConfig& config, const std::filesystem::path& base_dir,
                  unsigned threads = 1);

/// Trains on the train split, predicts every test entry and tallies the
/// confusion matrix. Throws EvaluationError for unreadable images, test
/// labels unseen in training or an empty split.
EvalReport evaluate(const Manifest& manifest, const EvalConfig& config, const std::filesystem::path& base_dir,
                    unsigned threads = 1);

struct BenchResult {
    double fps = 0.0;
    double ms_per_frame = 0.0;
    double seconds = 0.0;
    std::uint64_t iterations = 0;
    unsigned threads = 1;
    int width = 0;
    int height = 0;
    LbpParams params;
    /// FNV-1a over the last map's labels; identical across runs.
    std::uint64_t checksum = 0;
};

/// Times `iterations` full lbp_map computations (allocation included, no
/// I/O). Throws ParameterError when iterations is 0.
BenchResult benchmark_fps(const GrayImage& img, const LbpParams& params, std::uint64_t iterations,
                          unsigned threads = 1);

} // namespace lbpx
