#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lbpx {

inline constexpr int kMinNeighbors = 2;
inline constexpr int kMaxNeighbors = 24;

/// How raw P-bit codes are folded into histogram labels.
enum class MappingMode { raw, u2, ri, riu2 };

std::string_view to_string(MappingMode mode) noexcept;
std::optional<MappingMode> parse_mapping_mode(std::string_view text) noexcept;

/// Number of 0/1 transitions in the circular P-bit string `code`.
/// Throws ParameterError if P is outside [2, 24] or code >= 2^P.
int uniformity(std::uint32_t code, int neighbors);

/// Lookup table from raw code to compact label.
///
/// Labels are assigned in ascending code order (u2) or ascending
/// representative order (ri), so tables are reproducible across builds.
///   raw   identity, 2^P labels
///   u2    uniform codes (<= 2 transitions) get distinct labels,
///         every other code shares the final label: P(P-1)+3 labels
///   ri    minimum over the P bit-rotations, compacted
///   riu2  uniform codes -> number of set bits, others -> P+1: P+2 labels
class MappingTable {
public:
    MappingTable(int neighbors, MappingMode mode, std::vector<std::uint32_t> table, std::uint32_t label_count);

    int neighbors() const noexcept { return neighbors_; }
    MappingMode mode() const noexcept { return mode_; }
    std::uint32_t label_count() const noexcept { return label_count_; }
    std::span<const std::uint32_t> table() const noexcept { return table_; }

    std::uint32_t operator[](std::uint32_t code) const noexcept { return table_[code]; }

private:
    int neighbors_;
    MappingMode mode_;
    std::vector<std::uint32_t> table_;
    std::uint32_t label_count_;
};

MappingTable build_mapping(int neighbors, MappingMode mode);

/// Process-wide table cache; tables are built once per (P, mode) and never
/// mutated, so the returned reference stays valid for the program lifetime.
const MappingTable& cached_mapping(int neighbors, MappingMode mode);

/// label_count without materialising the table (ri still enumerates codes).
std::uint32_t label_count(MappingMode mode, int neighbors);

} // namespace lbpx
