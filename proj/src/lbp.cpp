#include "lbpx/lbp.hpp"

#include "lbpx/errors.hpp"
#include "lbpx/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace lbpx {

namespace {

// An offset split into its integer lattice part and fractional weights,
// precomputed once per configuration.
struct SamplePoint {
    int ix;
    int iy;
    double fx;
    double fy;
};

std::vector<SamplePoint> sample_points(int neighbors, double radius) {
    std::vector<SamplePoint> points;
    points.reserve(static_cast<std::size_t>(neighbors));
    for (const auto& o : circular_offsets(neighbors, radius)) {
        const double fx0 = std::floor(o.dx);
        const double fy0 = std::floor(o.dy);
        points.push_back({static_cast<int>(fx0), static_cast<int>(fy0), o.dx - fx0, o.dy - fy0});
    }
    return points;
}

// Same blend as bilinear_sample, minus the bounds check.
inline double sample(const GrayImage& img, int cx, int cy, const SamplePoint& sp) {
    const int x0 = cx + sp.ix;
    const int y0 = cy + sp.iy;
    const int x1 = sp.fx > 0.0 ? x0 + 1 : x0;
    const int y1 = sp.fy > 0.0 ? y0 + 1 : y0;
    const double tl = img.at(x0, y0);
    const double tr = img.at(x1, y0);
    const double bl = img.at(x0, y1);
    const double br = img.at(x1, y1);
    const double top = tl + sp.fx * (tr - tl);
    const double bottom = bl + sp.fx * (br - bl);
    const double v = top + sp.fy * (bottom - top);
    const auto [lo, hi] = std::minmax({tl, tr, bl, br});
    return std::clamp(v, lo, hi);
}

inline std::uint32_t circular_code(const GrayImage& img, int cx, int cy, std::span<const SamplePoint> points) {
    const double center = img.at(cx, cy);
    std::uint32_t code = 0;
    for (const auto& sp : points) {
        code = (code << 1) | (sample(img, cx, cy, sp) >= center ? 1u : 0u);
    }
    return code;
}

void square_rows(const GrayImage& img, int y_begin, int y_end, std::uint32_t* out, int out_width,
                 const MappingTable* table) {
    const int w = img.width();
    for (int y = y_begin; y < y_end; ++y) {
        const std::uint8_t* up = img.row(y - 1).data();
        const std::uint8_t* mid = img.row(y).data();
        const std::uint8_t* down = img.row(y + 1).data();
        std::uint32_t* dst = out + static_cast<std::ptrdiff_t>(y - 1) * out_width;
        for (int x = 1; x < w - 1; ++x) {
            const std::uint8_t c = mid[x];
            std::uint32_t code = static_cast<std::uint32_t>(up[x - 1] >= c) << 7;
            code |= static_cast<std::uint32_t>(up[x] >= c) << 6;
            code |= static_cast<std::uint32_t>(up[x + 1] >= c) << 5;
            code |= static_cast<std::uint32_t>(mid[x + 1] >= c) << 4;
            code |= static_cast<std::uint32_t>(down[x + 1] >= c) << 3;
            code |= static_cast<std::uint32_t>(down[x] >= c) << 2;
            code |= static_cast<std::uint32_t>(down[x - 1] >= c) << 1;
            code |= static_cast<std::uint32_t>(mid[x - 1] >= c);
            dst[x - 1] = table ? (*table)[code] : code;
        }
    }
}

} // namespace

std::string_view to_string(Sampling sampling) noexcept {
    return sampling == Sampling::square3x3 ? "square3x3" : "circular";
}

std::optional<Sampling> parse_sampling(std::string_view text) noexcept {
    if (text == "square3x3") return Sampling::square3x3;
    if (text == "circular") return Sampling::circular;
    return std::nullopt;
}

void LbpParams::validate() const {
    if (neighbors < kMinNeighbors || neighbors > kMaxNeighbors) {
        throw ParameterError("neighbors must be in [" + std::to_string(kMinNeighbors) + ", " +
                             std::to_string(kMaxNeighbors) + "], got " + std::to_string(neighbors));
    }
    if (sampling == Sampling::square3x3) {
        if (neighbors != 8) {
            throw ParameterError("square3x3 sampling requires 8 neighbors, got " + std::to_string(neighbors));
        }
        return;
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ParameterError("radius must be a positive finite number, got " + std::to_string(radius));
    }
}

int LbpParams::origin_offset() const {
    return sampling == Sampling::square3x3 ? 1 : static_cast<int>(std::ceil(radius));
}

std::uint8_t lbp_code_3x3(const Patch3x3& patch) noexcept {
    static constexpr std::array<int, 8> kClockwise = {0, 1, 2, 5, 8, 7, 6, 3};
    const std::uint8_t center = patch[4];
    unsigned code = 0;
    for (const int idx : kClockwise) code = (code << 1) | (patch[static_cast<std::size_t>(idx)] >= center ? 1u : 0u);
    return static_cast<std::uint8_t>(code);
}

std::vector<Offset> circular_offsets(int neighbors, double radius) {
    if (neighbors < kMinNeighbors || neighbors > kMaxNeighbors) {
        throw ParameterError("neighbors must be in [" + std::to_string(kMinNeighbors) + ", " +
                             std::to_string(kMaxNeighbors) + "], got " + std::to_string(neighbors));
    }
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw ParameterError("radius must be a positive finite number");
    }
    constexpr double kSnap = 1e-9;
    const auto snap = [](double v) {
        const double r = std::round(v);
        return std::abs(v - r) < kSnap ? r + 0.0 : v;
    };
    std::vector<Offset> offsets;
    offsets.reserve(static_cast<std::size_t>(neighbors));
    for (int p = 0; p < neighbors; ++p) {
        const double angle = -0.75 * std::numbers::pi + 2.0 * std::numbers::pi * p / neighbors;
        offsets.push_back({snap(radius * std::cos(angle)), snap(radius * std::sin(angle))});
    }
    return offsets;
}

std::uint32_t lbp_code_circular(const GrayImage& img, int cx, int cy, const LbpParams& params) {
    const LbpParams circ{params.neighbors, params.radius, Sampling::circular, params.mapping};
    circ.validate();
    const int margin = circ.origin_offset();
    if (cx < margin || cy < margin || cx >= img.width() - margin || cy >= img.height() - margin) {
        throw BoundsError("centre (" + std::to_string(cx) + "," + std::to_string(cy) + ") closer than " +
                          std::to_string(margin) + " pixels to the image border");
    }
    const auto points = sample_points(circ.neighbors, circ.radius);
    return circular_code(img, cx, cy, points);
}

LbpMap lbp_map(const GrayImage& img, const LbpParams& params, unsigned threads) {
    params.validate();
    const int offset = params.origin_offset();
    const int out_w = img.width() - 2 * offset;
    const int out_h = img.height() - 2 * offset;
    if (out_w < 1 || out_h < 1) {
        throw ImageTooSmallError("image " + std::to_string(img.width()) + "x" + std::to_string(img.height()) +
                                 " too small for LBP neighbourhood of margin " + std::to_string(offset));
    }

    LbpMap map;
    map.params = params;
    if (params.sampling == Sampling::square3x3) map.params.radius = 1.0;
    map.origin_offset = offset;
    map.width = out_w;
    map.height = out_h;
    map.label_count = params.label_count();
    map.labels.resize(static_cast<std::size_t>(out_w) * static_cast<std::size_t>(out_h));

    const MappingTable* table =
        params.mapping == MappingMode::raw ? nullptr : &cached_mapping(params.neighbors, params.mapping);
    std::uint32_t* out = map.labels.data();

    if (params.sampling == Sampling::square3x3) {
        parallel_for(static_cast<std::size_t>(out_h), threads, [&](std::size_t begin, std::size_t end) {
            square_rows(img, static_cast<int>(begin) + 1, static_cast<int>(end) + 1, out, out_w, table);
        });
        return map;
    }

    const auto points = sample_points(params.neighbors, params.radius);
    parallel_for(static_cast<std::size_t>(out_h), threads, [&](std::size_t begin, std::size_t end) {
        for (auto row = static_cast<int>(begin); row < static_cast<int>(end); ++row) {
            std::uint32_t* dst = out + static_cast<std::ptrdiff_t>(row) * out_w;
            for (int col = 0; col < out_w; ++col) {
                const std::uint32_t code = circular_code(img, col + offset, row + offset, points);
                dst[col] = table ? (*table)[code] : code;
            }
        }
    });
    return map;
}

GrayImage lbp_map_to_image(const LbpMap& map) {
    std::vector<std::uint8_t> px(map.labels.size());
    std::transform(map.labels.begin(), map.labels.end(), px.begin(),
                   [](std::uint32_t l) { return static_cast<std::uint8_t>(std::min<std::uint32_t>(l, 255)); });
    return GrayImage(map.width, map.height, std::move(px));
}

} // namespace lbpx
