#pragma once

#include "lbpx/image.hpp"
#include "lbpx/mapping.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace lbpx {

enum class Sampling { square3x3, circular };

std::string_view to_string(Sampling sampling) noexcept;
std::optional<Sampling> parse_sampling(std::string_view text) noexcept;

/// Complete LBP configuration. For square3x3 the neighbor count must be 8
/// and the radius is ignored (treated as 1 in comparisons and output).
struct LbpParams {
    int neighbors = 8;
    double radius = 1.0;
    Sampling sampling = Sampling::square3x3;
    MappingMode mapping = MappingMode::raw;

    /// Throws ParameterError on any out-of-range field.
    void validate() const;

    /// Distance from the image border to the first labelled pixel:
    /// 1 for square3x3, ceil(R) for circular.
    int origin_offset() const;

    std::uint32_t label_count() const { return lbpx::label_count(mapping, neighbors); }

    friend bool operator==(const LbpParams& a, const LbpParams& b) noexcept {
        return a.neighbors == b.neighbors && a.sampling == b.sampling && a.mapping == b.mapping &&
               (a.sampling == Sampling::square3x3 || a.radius == b.radius);
    }
};

/// Per-pixel labels over the interior of an image whose full neighbourhood
/// is in bounds. labels[y * width + x] belongs to source pixel
/// (x + origin_offset, y + origin_offset).
struct LbpMap {
    LbpParams params;
    int origin_offset = 0;
    int width = 0;
    int height = 0;
    std::uint32_t label_count = 0;
    std::vector<std::uint32_t> labels;

    std::uint32_t at(int x, int y) const {
        return labels[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)];
    }

    friend bool operator==(const LbpMap&, const LbpMap&) = default;
};

/// Row-major 3x3 neighbourhood; element 4 is the centre.
using Patch3x3 = std::array<std::uint8_t, 9>;

/// Basic operator. Neighbours are read clockwise from the top-left
/// (TL, T, TR, R, BR, B, BL, L); a neighbour >= centre sets its bit, and the
/// top-left neighbour is the most significant bit.
std::uint8_t lbp_code_3x3(const Patch3x3& patch) noexcept;

struct Offset {
    double dx = 0.0;
    double dy = 0.0;
};

/// P points on a circle of radius R, y pointing down. Point 0 lies toward
/// the top-left (angle -3pi/4) and the rest follow clockwise, matching the
/// 3x3 ordering. Components within 1e-9 of an integer are snapped to it so
/// lattice-aligned circles sample pixels exactly.
std::vector<Offset> circular_offsets(int neighbors, double radius);

/// Circular operator at source pixel (cx, cy) using bilinear samples.
/// Throws BoundsError unless (cx, cy) is at least ceil(R) from every border.
std::uint32_t lbp_code_circular(const GrayImage& img, int cx, int cy, const LbpParams& params);

/// Labels for every interior pixel, mapped through the params' mapping.
/// `threads` > 1 splits rows across workers; output does not depend on it.
/// Throws ImageTooSmallError when the interior is empty.
LbpMap lbp_map(const GrayImage& img, const LbpParams& params, unsigned threads = 1);

/// Visualisation export: one pixel per label, labels above 255 clamped.
GrayImage lbp_map_to_image(const LbpMap& map);

} // namespace lbpx
