#pragma once

#include "lbpx/descriptor.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lbpx {

enum class Metric { chi2, wchi2, intersect, l1 };

std::string_view to_string(Metric metric) noexcept;
std::optional<Metric> parse_metric(std::string_view text) noexcept;

/// Histogram distance; every metric is 0 for identical inputs.
///
///   chi2       sum (a-b)^2 / (a+b), bins with a+b == 0 skipped
///   wchi2      chi2 per region, each region's partial sum scaled by its
///              weight; a.size() must split evenly into weights.size()
///              regions
///   intersect  1 - sum min(a,b) / max(sum a, sum b); for a single pair of
///              L1-normalized histograms this is 1 - sum min(a,b)
///   l1         sum |a-b|
///
/// Throws ParameterError on length mismatch, missing or negative weights.
double distance(std::span<const double> a, std::span<const double> b, Metric metric,
                std::span<const double> weights = {});

struct ClassTemplate {
    std::string label;
    GridDescriptor descriptor;

    friend bool operator==(const ClassTemplate&, const ClassTemplate&) = default;
};

/// Template gallery: one mean descriptor per class, labels ascending.
struct Model {
    static constexpr int kFormatVersion = 1;

    int format_version = kFormatVersion;
    LbpParams params;
    int grid_rows = 0;
    int grid_cols = 0;
    std::vector<ClassTemplate> classes;
    std::optional<std::vector<double>> region_weights;

    std::uint32_t bin_count() const noexcept { return classes.empty() ? 0 : classes.front().descriptor.bin_count; }

    friend bool operator==(const Model&, const Model&) = default;
};

using LabeledDescriptor = std::pair<std::string, GridDescriptor>;

/// Each class template is the element-wise mean of its samples with every
/// region slice re-normalized to sum 1. Throws TrainingError on empty
/// input, empty labels or samples whose configurations differ.
Model build_templates(std::span<const LabeledDescriptor> samples);

/// Attaches per-region weights for wchi2. Throws ParameterError when the
/// count does not match the grid or a weight is negative.
void set_region_weights(Model& model, std::vector<double> weights);

struct Prediction {
    std::string label;
    /// Distance to every class, in model order.
    std::vector<std::pair<std::string, double>> scores;
};

/// Nearest template. Equal distances resolve to the lexicographically
/// smallest label. Throws ModelMismatchError when the query's
/// configuration differs from the model's.
Prediction predict(const Model& model, const GridDescriptor& query, Metric metric = Metric::chi2);

/// Checks the structural invariants (>= 1 class, unique ascending labels,
/// identical template configuration). Throws ModelMismatchError.
void validate_model(const Model& model);

} // namespace lbpx
