#include "lbpx/descriptor.hpp"

#include "lbpx/errors.hpp"

#include <string>

namespace lbpx {

namespace {

void check_rect(const LbpMap& map, const MapRect& r) {
    if (r.x0 < 0 || r.y0 < 0 || r.x0 > r.x1 || r.y0 > r.y1 || r.x1 >= map.width || r.y1 >= map.height) {
        throw BoundsError("region (" + std::to_string(r.x0) + "," + std::to_string(r.y0) + ")-(" +
                          std::to_string(r.x1) + "," + std::to_string(r.y1) + ") invalid for " +
                          std::to_string(map.width) + "x" + std::to_string(map.height) + " map");
    }
}

// Accumulates normalized histogram of `r` into out[0, bin_count).
void accumulate(const LbpMap& map, const MapRect& r, std::uint32_t bin_count, double* out, bool normalize) {
    std::vector<std::uint64_t> counts(bin_count, 0);
    for (int y = r.y0; y <= r.y1; ++y) {
        const std::uint32_t* row = map.labels.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(map.width);
        for (int x = r.x0; x <= r.x1; ++x) {
            const std::uint32_t label = row[x];
            if (label >= bin_count) {
                throw CorruptMapError("label " + std::to_string(label) + " at map (" + std::to_string(x) + "," +
                                      std::to_string(y) + ") exceeds bin count " + std::to_string(bin_count));
            }
            ++counts[label];
        }
    }
    const double area = static_cast<double>(r.width()) * static_cast<double>(r.height());
    for (std::uint32_t b = 0; b < bin_count; ++b) {
        out[b] = normalize ? static_cast<double>(counts[b]) / area : static_cast<double>(counts[b]);
    }
}

} // namespace

Histogram region_histogram(const LbpMap& map, const MapRect& rect, std::uint32_t bin_count, bool normalize) {
    check_rect(map, rect);
    Histogram h;
    h.bins.resize(bin_count);
    accumulate(map, rect, bin_count, h.bins.data(), normalize);
    return h;
}

std::vector<int> grid_edges(int extent, int cells) {
    std::vector<int> edges(static_cast<std::size_t>(cells) + 1);
    const int step = extent / cells;
    for (int i = 0; i < cells; ++i) edges[static_cast<std::size_t>(i)] = i * step;
    edges.back() = extent;
    return edges;
}

GridDescriptor grid_descriptor(const LbpMap& map, const MapRect& roi, int grid_rows, int grid_cols) {
    check_rect(map, roi);
    if (grid_rows < 1 || grid_cols < 1) {
        throw ParameterError("grid must be at least 1x1, got " + std::to_string(grid_rows) + "x" +
                             std::to_string(grid_cols));
    }
    if (grid_rows > roi.height() || grid_cols > roi.width()) {
        throw ParameterError("grid " + std::to_string(grid_rows) + "x" + std::to_string(grid_cols) +
                             " exceeds map size " + std::to_string(roi.width()) + "x" + std::to_string(roi.height()));
    }

    GridDescriptor d;
    d.grid_rows = grid_rows;
    d.grid_cols = grid_cols;
    d.bin_count = map.label_count;
    d.params = map.params;
    d.values.assign(static_cast<std::size_t>(grid_rows) * static_cast<std::size_t>(grid_cols) * map.label_count, 0.0);

    const auto ys = grid_edges(roi.height(), grid_rows);
    const auto xs = grid_edges(roi.width(), grid_cols);
    double* out = d.values.data();
    for (int r = 0; r < grid_rows; ++r) {
        for (int c = 0; c < grid_cols; ++c) {
            const MapRect cell{roi.x0 + xs[static_cast<std::size_t>(c)], roi.y0 + ys[static_cast<std::size_t>(r)],
                               roi.x0 + xs[static_cast<std::size_t>(c) + 1] - 1,
                               roi.y0 + ys[static_cast<std::size_t>(r) + 1] - 1};
            accumulate(map, cell, map.label_count, out, true);
            out += map.label_count;
        }
    }
    return d;
}

GridDescriptor grid_descriptor(const LbpMap& map, int grid_rows, int grid_cols) {
    if (map.width < 1 || map.height < 1) throw ParameterError("empty LBP map");
    return grid_descriptor(map, MapRect{0, 0, map.width - 1, map.height - 1}, grid_rows, grid_cols);
}

GridDescriptor describe_image(const GrayImage& img, const LbpParams& params, int grid_rows, int grid_cols,
                              unsigned threads) {
    return grid_descriptor(lbp_map(img, params, threads), grid_rows, grid_cols);
}

} // namespace lbpx
