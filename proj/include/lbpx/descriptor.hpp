#pragma once

#include "lbpx/lbp.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace lbpx {

struct Histogram {
    std::vector<double> bins;

    friend bool operator==(const Histogram&, const Histogram&) = default;
};

/// Inclusive rectangle in label-map coordinates.
struct MapRect {
    int x0 = 0;
    int y0 = 0;
    int x1 = 0;
    int y1 = 0;

    int width() const noexcept { return x1 - x0 + 1; }
    int height() const noexcept { return y1 - y0 + 1; }
};

/// Label counts over `rect`, divided by its area when `normalize` is set.
/// Throws BoundsError for an empty, inverted or out-of-range rectangle and
/// CorruptMapError when a label does not fit in `bin_count`.
Histogram region_histogram(const LbpMap& map, const MapRect& rect, std::uint32_t bin_count, bool normalize);

/// Concatenated per-cell normalized histograms of an LBP map.
struct GridDescriptor {
    int grid_rows = 0;
    int grid_cols = 0;
    std::uint32_t bin_count = 0;
    LbpParams params;
    std::vector<double> values;
    std::optional<std::vector<double>> region_weights;

    int region_count() const noexcept { return grid_rows * grid_cols; }

    /// Histogram of one grid cell, cells numbered row-major.
    std::span<const double> region(int index) const {
        return std::span<const double>(values).subspan(static_cast<std::size_t>(index) * bin_count, bin_count);
    }

    /// Same grid, params and bin count; values are not compared.
    bool same_configuration(const GridDescriptor& other) const noexcept {
        return grid_rows == other.grid_rows && grid_cols == other.grid_cols && bin_count == other.bin_count &&
               params == other.params && values.size() == other.values.size();
    }

    friend bool operator==(const GridDescriptor&, const GridDescriptor&) = default;
};

/// Cell boundaries along one axis: `cells` spans of floor(extent / cells)
/// with the last one absorbing the remainder. Returned as begin offsets
/// plus a final end sentinel (cells + 1 entries).
std::vector<int> grid_edges(int extent, int cells);

/// Splits the map into grid_rows x grid_cols cells and concatenates each
/// cell's normalized histogram in row-major cell order. Throws
/// ParameterError when the grid is empty or larger than the map.
GridDescriptor grid_descriptor(const LbpMap& map, int grid_rows, int grid_cols);

/// Descriptor of the sub-map `roi` only, as if that part of the map were
/// the whole map. Lets a sliding window reuse one full-scene LBP map.
GridDescriptor grid_descriptor(const LbpMap& map, const MapRect& roi, int grid_rows, int grid_cols);

/// Convenience: lbp_map followed by grid_descriptor.
GridDescriptor describe_image(const GrayImage& img, const LbpParams& params, int grid_rows, int grid_cols,
                              unsigned threads = 1);

} // namespace lbpx
