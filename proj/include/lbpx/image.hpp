#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lbpx {

/// 8-bit grayscale raster, row-major, top-left origin.
class GrayImage {
public:
    GrayImage() = default;
    /// Zero-filled image. Throws ParameterError unless both sides are >= 1.
    GrayImage(int width, int height);
    /// Throws ParameterError when data.size() != width * height.
    GrayImage(int width, int height, std::vector<std::uint8_t> data);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool empty() const noexcept { return data_.empty(); }

    std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
    std::uint8_t& at(int x, int y) { return data_[index(x, y)]; }

    std::span<const std::uint8_t> pixels() const noexcept { return data_; }
    std::span<std::uint8_t> pixels() noexcept { return data_; }
    std::span<const std::uint8_t> row(int y) const {
        return std::span<const std::uint8_t>(data_).subspan(index(0, y), static_cast<std::size_t>(width_));
    }

    /// Copy of the w x h block whose top-left corner is (x, y).
    GrayImage crop(int x, int y, int w, int h) const;

    friend bool operator==(const GrayImage&, const GrayImage&) = default;

private:
    std::size_t index(int x, int y) const noexcept {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> data_;
};

/// Inclusive summed-area table: value(x, y) is the sum of every source
/// pixel (i, j) with i <= x and j <= y.
class IntegralImage {
public:
    IntegralImage() = default;
    explicit IntegralImage(const GrayImage& img);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::uint64_t value(int x, int y) const {
        return data_[static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)];
    }
    std::span<const std::uint64_t> values() const noexcept { return data_; }

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint64_t> data_;
};

IntegralImage integral_image(const GrayImage& img);

/// Sum over the inclusive rectangle [x0, x1] x [y0, y1] in O(1).
/// Throws BoundsError for inverted or out-of-range rectangles.
std::uint64_t region_sum(const IntegralImage& ii, int x0, int y0, int x1, int y1);

/// Bilinear blend of the four grid pixels around (x, y). Requires
/// 0 <= x <= width-1 and 0 <= y <= height-1, otherwise BoundsError.
double bilinear_sample(const GrayImage& img, double x, double y);

// PGM I/O. Reading accepts binary P5 and ASCII P2 with maxval <= 255 and
// '#' comments in the header; writing always produces P5 with maxval 255.
GrayImage load_pgm(std::string_view bytes);
std::string save_pgm(const GrayImage& img);

GrayImage read_pgm_file(const std::filesystem::path& path);
void write_pgm_file(const std::filesystem::path& path, const GrayImage& img);

// Whole-file helpers; both throw IoError naming the path.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view bytes);

} // namespace lbpx
