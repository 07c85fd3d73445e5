#include "lbpx/image.hpp"

#include "lbpx/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lbpx {

GrayImage::GrayImage(int width, int height)
    : GrayImage(width, height,
                std::vector<std::uint8_t>(width > 0 && height > 0
                                              ? static_cast<std::size_t>(width) * static_cast<std::size_t>(height)
                                              : 0)) {}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
    if (width < 1 || height < 1) {
        throw ParameterError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                             std::to_string(height));
    }
    if (data_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height)) {
        throw ParameterError("image data holds " + std::to_string(data_.size()) + " pixels, expected " +
                             std::to_string(static_cast<std::size_t>(width) * static_cast<std::size_t>(height)));
    }
}

GrayImage GrayImage::crop(int x, int y, int w, int h) const {
    if (x < 0 || y < 0 || w < 1 || h < 1 || x + w > width_ || y + h > height_) {
        throw BoundsError("crop rectangle out of image bounds");
    }
    GrayImage out(w, h);
    for (int r = 0; r < h; ++r) {
        auto src = row(y + r).subspan(static_cast<std::size_t>(x), static_cast<std::size_t>(w));
        std::copy(src.begin(), src.end(), out.data_.begin() + static_cast<std::ptrdiff_t>(r) * w);
    }
    return out;
}

IntegralImage::IntegralImage(const GrayImage& img)
    : width_(img.width()), height_(img.height()),
      data_(static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(img.height())) {
    const auto w = static_cast<std::size_t>(width_);
    for (int y = 0; y < height_; ++y) {
        std::uint64_t row_sum = 0;
        const auto src = img.row(y);
        std::uint64_t* dst = data_.data() + static_cast<std::size_t>(y) * w;
        const std::uint64_t* above = y > 0 ? dst - w : nullptr;
        for (std::size_t x = 0; x < w; ++x) {
            row_sum += src[x];
            dst[x] = row_sum + (above ? above[x] : 0);
        }
    }
}

IntegralImage integral_image(const GrayImage& img) { return IntegralImage(img); }

std::uint64_t region_sum(const IntegralImage& ii, int x0, int y0, int x1, int y1) {
    if (x0 < 0 || y0 < 0 || x0 > x1 || y0 > y1 || x1 >= ii.width() || y1 >= ii.height()) {
        throw BoundsError("rectangle (" + std::to_string(x0) + "," + std::to_string(y0) + ")-(" +
                          std::to_string(x1) + "," + std::to_string(y1) + ") invalid for " +
                          std::to_string(ii.width()) + "x" + std::to_string(ii.height()) + " integral image");
    }
    const std::uint64_t total = ii.value(x1, y1);
    const std::uint64_t left = x0 > 0 ? ii.value(x0 - 1, y1) : 0;
    const std::uint64_t top = y0 > 0 ? ii.value(x1, y0 - 1) : 0;
    const std::uint64_t corner = x0 > 0 && y0 > 0 ? ii.value(x0 - 1, y0 - 1) : 0;
    return total + corner - left - top;
}

double bilinear_sample(const GrayImage& img, double x, double y) {
    if (!(x >= 0.0 && y >= 0.0 && x <= img.width() - 1 && y <= img.height() - 1)) {
        throw BoundsError("sample (" + std::to_string(x) + "," + std::to_string(y) + ") outside " +
                          std::to_string(img.width()) + "x" + std::to_string(img.height()) + " image");
    }
    const int x0 = static_cast<int>(std::floor(x));
    const int y0 = static_cast<int>(std::floor(y));
    const double fx = x - x0;
    const double fy = y - y0;
    const int x1 = fx > 0.0 ? x0 + 1 : x0;
    const int y1 = fy > 0.0 ? y0 + 1 : y0;

    const double tl = img.at(x0, y0);
    const double tr = img.at(x1, y0);
    const double bl = img.at(x0, y1);
    const double br = img.at(x1, y1);
    // Difference form keeps equal neighbours exact, so ties stay ties.
    const double top = tl + fx * (tr - tl);
    const double bottom = bl + fx * (br - bl);
    const double v = top + fy * (bottom - top);
    const auto [lo, hi] = std::minmax({tl, tr, bl, br});
    return std::clamp(v, lo, hi);
}

} // namespace lbpx
