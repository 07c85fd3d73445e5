#include "lbpx/errors.hpp"
#include "lbpx/image.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>

namespace lbpx {

namespace {

class HeaderReader {
public:
    explicit HeaderReader(std::string_view bytes) : bytes_(bytes) {}

    // Next whitespace-delimited token; '#' starts a comment running to end of line.
    std::optional<std::string_view> token() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
        if (pos_ >= bytes_.size()) return std::nullopt;
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])) && bytes_[pos_] != '#') {
            ++pos_;
        }
        return bytes_.substr(start, pos_ - start);
    }

    std::size_t position() const noexcept { return pos_; }
    void skip(std::size_t n) noexcept { pos_ += n; }
    std::string_view rest() const noexcept { return bytes_.substr(std::min(pos_, bytes_.size())); }

private:
    std::string_view bytes_;
    std::size_t pos_ = 0;
};

std::optional<long> parse_number(std::optional<std::string_view> tok) {
    if (!tok) return std::nullopt;
    long value = 0;
    const auto* first = tok->data();
    const auto* last = first + tok->size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last) return std::nullopt;
    return value;
}

long header_field(HeaderReader& reader, const char* name) {
    const auto tok = reader.token();
    if (!tok) {
        throw FormatError(FormatError::Kind::BadHeader, std::string("PGM header missing ") + name);
    }
    const auto value = parse_number(tok);
    if (!value || *value < 1) {
        throw FormatError(FormatError::Kind::BadHeader,
                          std::string("PGM header has invalid ") + name + " '" + std::string(*tok) + "'");
    }
    return *value;
}

} // namespace

GrayImage load_pgm(std::string_view bytes) {
    HeaderReader reader(bytes);
    const auto magic = reader.token();
    if (!magic || (*magic != "P5" && *magic != "P2")) {
        throw FormatError(FormatError::Kind::BadMagic, "not a PGM file (expected magic P5 or P2)");
    }
    const bool binary = *magic == "P5";

    const long width = header_field(reader, "width");
    const long height = header_field(reader, "height");
    const long maxval = header_field(reader, "maxval");
    if (maxval > 255) {
        throw FormatError(FormatError::Kind::MaxvalTooLarge,
                          "PGM maxval " + std::to_string(maxval) + " exceeds 255 (16-bit PGM unsupported)");
    }
    constexpr long kMaxSide = 1L << 15;
    if (width > kMaxSide || height > kMaxSide) {
        throw FormatError(FormatError::Kind::BadHeader, "PGM dimensions too large");
    }
    const auto count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<std::uint8_t> data(count);

    if (binary) {
        // Exactly one whitespace byte separates maxval from the payload.
        const auto after = reader.rest();
        if (after.empty() || !std::isspace(static_cast<unsigned char>(after.front()))) {
            throw FormatError(FormatError::Kind::TruncatedPayload, "PGM payload missing");
        }
        const auto payload = after.substr(1);
        if (payload.size() < count) {
            throw FormatError(FormatError::Kind::TruncatedPayload,
                              "PGM payload truncated: " + std::to_string(payload.size()) + " of " +
                                  std::to_string(count) + " bytes");
        }
        for (std::size_t i = 0; i < count; ++i) {
            const auto v = static_cast<std::uint8_t>(payload[i]);
            if (v > maxval) {
                throw FormatError(FormatError::Kind::BadPixel, "PGM pixel value exceeds maxval");
            }
            data[i] = v;
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const auto tok = reader.token();
            if (!tok) {
                throw FormatError(FormatError::Kind::TruncatedPayload,
                                  "PGM payload truncated: " + std::to_string(i) + " of " + std::to_string(count) +
                                      " values");
            }
            const auto v = parse_number(tok);
            if (!v || *v < 0 || *v > maxval) {
                throw FormatError(FormatError::Kind::BadPixel, "invalid PGM pixel value '" + std::string(*tok) + "'");
            }
            data[i] = static_cast<std::uint8_t>(*v);
        }
    }
    return GrayImage(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

std::string save_pgm(const GrayImage& img) {
    std::string out = "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
    const auto px = img.pixels();
    out.append(reinterpret_cast<const char*>(px.data()), px.size());
    return out;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return bytes;
}

void write_file(const std::filesystem::path& path, std::string_view bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

GrayImage read_pgm_file(const std::filesystem::path& path) {
    const auto bytes = read_file(path);
    try {
        return load_pgm(bytes);
    } catch (const FormatError& e) {
        throw FormatError(e.kind(), path.string() + ": " + e.what());
    }
}

void write_pgm_file(const std::filesystem::path& path, const GrayImage& img) { write_file(path, save_pgm(img)); }

} // namespace lbpx
