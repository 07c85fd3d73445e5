#include "lbpx/classify.hpp"

#include "lbpx/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace lbpx {

namespace {

double chi2_sum(std::span<const double> a, std::span<const double> b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double denom = a[i] + b[i];
        if (denom == 0.0) continue;
        const double diff = a[i] - b[i];
        sum += diff * diff / denom;
    }
    return sum;
}

void renormalize_regions(GridDescriptor& d) {
    for (int r = 0; r < d.region_count(); ++r) {
        auto first = d.values.begin() + static_cast<std::ptrdiff_t>(r) * d.bin_count;
        auto last = first + d.bin_count;
        const double total = std::accumulate(first, last, 0.0);
        // Slices already summing to 1 are left bit-exact.
        if (total > 0.0 && std::abs(total - 1.0) > 1e-12) std::for_each(first, last, [total](double& v) { v /= total; });
    }
}

} // namespace

std::string_view to_string(Metric metric) noexcept {
    switch (metric) {
    case Metric::chi2: return "chi2";
    case Metric::wchi2: return "wchi2";
    case Metric::intersect: return "intersect";
    case Metric::l1: return "l1";
    }
    return "chi2";
}

std::optional<Metric> parse_metric(std::string_view text) noexcept {
    if (text == "chi2") return Metric::chi2;
    if (text == "wchi2") return Metric::wchi2;
    if (text == "intersect") return Metric::intersect;
    if (text == "l1") return Metric::l1;
    return std::nullopt;
}

double distance(std::span<const double> a, std::span<const double> b, Metric metric,
                std::span<const double> weights) {
    if (a.size() != b.size()) {
        throw ParameterError("descriptor lengths differ: " + std::to_string(a.size()) + " vs " +
                             std::to_string(b.size()));
    }
    switch (metric) {
    case Metric::chi2: return chi2_sum(a, b);

    case Metric::wchi2: {
        if (weights.empty()) throw ParameterError("wchi2 requires region weights");
        if (a.size() % weights.size() != 0) {
            throw ParameterError("descriptor length " + std::to_string(a.size()) + " does not split into " +
                                 std::to_string(weights.size()) + " weighted regions");
        }
        const std::size_t region = a.size() / weights.size();
        double sum = 0.0;
        for (std::size_t r = 0; r < weights.size(); ++r) {
            if (!(weights[r] >= 0.0)) throw ParameterError("region weights must be non-negative");
            sum += weights[r] * chi2_sum(a.subspan(r * region, region), b.subspan(r * region, region));
        }
        return sum;
    }

    case Metric::intersect: {
        double overlap = 0.0;
        double mass_a = 0.0;
        double mass_b = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) {
            overlap += std::min(a[i], b[i]);
            mass_a += a[i];
            mass_b += b[i];
        }
        const double mass = std::max(mass_a, mass_b);
        return mass > 0.0 ? std::max(0.0, 1.0 - overlap / mass) : 0.0;
    }

    case Metric::l1: {
        double sum = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
        return sum;
    }
    }
    throw ParameterError("unknown metric");
}

Model build_templates(std::span<const LabeledDescriptor> samples) {
    if (samples.empty()) throw TrainingError("no training samples");
    const GridDescriptor& reference = samples.front().second;

    std::map<std::string, std::pair<std::vector<double>, std::size_t>> sums;
    for (const auto& [label, desc] : samples) {
        if (label.empty()) throw TrainingError("training sample with empty class label");
        if (!desc.same_configuration(reference)) {
            throw TrainingError("training sample for class '" + label +
                                "' differs in configuration (params, grid or length) from the first sample");
        }
        auto& [sum, count] = sums[label];
        if (sum.empty()) sum.assign(desc.values.size(), 0.0);
        std::transform(sum.begin(), sum.end(), desc.values.begin(), sum.begin(), std::plus<>());
        ++count;
    }

    Model model;
    model.params = reference.params;
    model.grid_rows = reference.grid_rows;
    model.grid_cols = reference.grid_cols;
    for (auto& [label, entry] : sums) {
        auto& [sum, count] = entry;
        if (count == 0) throw TrainingError("class '" + label + "' has no samples");
        GridDescriptor t = reference;
        t.region_weights.reset();
        const double n = static_cast<double>(count);
        std::transform(sum.begin(), sum.end(), t.values.begin(), [n](double v) { return v / n; });
        renormalize_regions(t);
        model.classes.push_back({label, std::move(t)});
    }
    return model;
}

void set_region_weights(Model& model, std::vector<double> weights) {
    const auto regions = static_cast<std::size_t>(model.grid_rows) * static_cast<std::size_t>(model.grid_cols);
    if (weights.size() != regions) {
        throw ParameterError("expected " + std::to_string(regions) + " region weights, got " +
                             std::to_string(weights.size()));
    }
    if (std::any_of(weights.begin(), weights.end(), [](double w) { return !(w >= 0.0) || !std::isfinite(w); })) {
        throw ParameterError("region weights must be non-negative and finite");
    }
    model.region_weights = std::move(weights);
}

void validate_model(const Model& model) {
    if (model.format_version != Model::kFormatVersion) {
        throw ModelMismatchError("unsupported model format_version " + std::to_string(model.format_version));
    }
    if (model.classes.empty()) throw ModelMismatchError("model has no classes");
    const GridDescriptor& first = model.classes.front().descriptor;
    if (first.grid_rows != model.grid_rows || first.grid_cols != model.grid_cols || !(first.params == model.params)) {
        throw ModelMismatchError("template configuration disagrees with model header");
    }
    if (first.values.size() != static_cast<std::size_t>(first.region_count()) * first.bin_count) {
        throw ModelMismatchError("template length does not match grid and bin count");
    }
    for (std::size_t i = 0; i < model.classes.size(); ++i) {
        const auto& c = model.classes[i];
        if (!c.descriptor.same_configuration(first)) {
            throw ModelMismatchError("template for class '" + c.label + "' has a different configuration");
        }
        if (i > 0 && !(model.classes[i - 1].label < c.label)) {
            throw ModelMismatchError("class labels must be unique and ascending");
        }
    }
    if (model.region_weights && model.region_weights->size() != static_cast<std::size_t>(first.region_count())) {
        throw ModelMismatchError("region weight count does not match the grid");
    }
}

Prediction predict(const Model& model, const GridDescriptor& query, Metric metric) {
    if (model.classes.empty()) throw ModelMismatchError("model has no classes");
    const GridDescriptor& reference = model.classes.front().descriptor;
    if (!query.same_configuration(reference)) {
        throw ModelMismatchError("query descriptor (length " + std::to_string(query.values.size()) +
                                 ") does not match the model configuration (length " +
                                 std::to_string(reference.values.size()) + ")");
    }
    std::span<const double> weights;
    if (metric == Metric::wchi2) {
        if (!model.region_weights) throw ParameterError("wchi2 requires region weights in the model");
        weights = *model.region_weights;
    }

    Prediction out;
    out.scores.reserve(model.classes.size());
    std::size_t best = 0;
    for (std::size_t i = 0; i < model.classes.size(); ++i) {
        const double d = distance(query.values, model.classes[i].descriptor.values, metric, weights);
        out.scores.emplace_back(model.classes[i].label, d);
        const auto& [best_label, best_d] = out.scores[best];
        if (d < best_d || (d == best_d && model.classes[i].label < best_label)) best = i;
    }
    out.label = out.scores[best].first;
    return out;
}

} // namespace lbpx
