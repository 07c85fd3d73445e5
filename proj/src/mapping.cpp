#include "lbpx/mapping.hpp"

#include "lbpx/errors.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <mutex>

namespace lbpx {

namespace {

void check_neighbors(int neighbors) {
    if (neighbors < kMinNeighbors || neighbors > kMaxNeighbors) {
        throw ParameterError("neighbor count " + std::to_string(neighbors) + " outside [" +
                             std::to_string(kMinNeighbors) + ", " + std::to_string(kMaxNeighbors) + "]");
    }
}

constexpr std::uint32_t code_space(int neighbors) { return std::uint32_t{1} << neighbors; }

int transitions(std::uint32_t code, int neighbors) {
    const std::uint32_t mask = code_space(neighbors) - 1;
    // Rotate right by one within P bits and count differing positions.
    const std::uint32_t rotated = ((code >> 1) | (code << (neighbors - 1))) & mask;
    return std::popcount(code ^ rotated);
}

std::uint32_t min_rotation(std::uint32_t code, int neighbors) {
    const std::uint32_t mask = code_space(neighbors) - 1;
    std::uint32_t best = code;
    std::uint32_t r = code;
    for (int i = 1; i < neighbors; ++i) {
        r = ((r >> 1) | (r << (neighbors - 1))) & mask;
        best = std::min(best, r);
    }
    return best;
}

} // namespace

std::string_view to_string(MappingMode mode) noexcept {
    switch (mode) {
    case MappingMode::raw: return "raw";
    case MappingMode::u2: return "u2";
    case MappingMode::ri: return "ri";
    case MappingMode::riu2: return "riu2";
    }
    return "raw";
}

std::optional<MappingMode> parse_mapping_mode(std::string_view text) noexcept {
    if (text == "raw") return MappingMode::raw;
    if (text == "u2") return MappingMode::u2;
    if (text == "ri") return MappingMode::ri;
    if (text == "riu2") return MappingMode::riu2;
    return std::nullopt;
}

int uniformity(std::uint32_t code, int neighbors) {
    check_neighbors(neighbors);
    if (code >= code_space(neighbors)) {
        throw ParameterError("code " + std::to_string(code) + " does not fit in " + std::to_string(neighbors) +
                             " bits");
    }
    return transitions(code, neighbors);
}

MappingTable::MappingTable(int neighbors, MappingMode mode, std::vector<std::uint32_t> table,
                           std::uint32_t label_count)
    : neighbors_(neighbors), mode_(mode), table_(std::move(table)), label_count_(label_count) {}

MappingTable build_mapping(int neighbors, MappingMode mode) {
    check_neighbors(neighbors);
    const std::uint32_t n = code_space(neighbors);
    std::vector<std::uint32_t> table(n);

    switch (mode) {
    case MappingMode::raw:
        for (std::uint32_t c = 0; c < n; ++c) table[c] = c;
        return MappingTable(neighbors, mode, std::move(table), n);

    case MappingMode::u2: {
        const auto nonuniform = static_cast<std::uint32_t>(neighbors * (neighbors - 1) + 2);
        std::uint32_t next = 0;
        for (std::uint32_t c = 0; c < n; ++c) {
            table[c] = transitions(c, neighbors) <= 2 ? next++ : nonuniform;
        }
        return MappingTable(neighbors, mode, std::move(table), nonuniform + 1);
    }

    case MappingMode::ri: {
        // Representatives are their own minimal rotation; ascending scan
        // therefore visits them in ascending order.
        std::vector<std::uint32_t> label_of(n, 0);
        std::uint32_t next = 0;
        for (std::uint32_t c = 0; c < n; ++c) {
            const std::uint32_t rep = min_rotation(c, neighbors);
            if (rep == c) label_of[c] = next++;
            table[c] = label_of[rep];
        }
        return MappingTable(neighbors, mode, std::move(table), next);
    }

    case MappingMode::riu2: {
        const auto nonuniform = static_cast<std::uint32_t>(neighbors + 1);
        for (std::uint32_t c = 0; c < n; ++c) {
            table[c] = transitions(c, neighbors) <= 2 ? static_cast<std::uint32_t>(std::popcount(c)) : nonuniform;
        }
        return MappingTable(neighbors, mode, std::move(table), nonuniform + 1);
    }
    }
    throw ParameterError("unknown mapping mode");
}

const MappingTable& cached_mapping(int neighbors, MappingMode mode) {
    static std::mutex mutex;
    static std::map<std::pair<int, MappingMode>, std::unique_ptr<MappingTable>> cache;

    const std::lock_guard lock(mutex);
    auto& slot = cache[{neighbors, mode}];
    if (!slot) slot = std::make_unique<MappingTable>(build_mapping(neighbors, mode));
    return *slot;
}

std::uint32_t label_count(MappingMode mode, int neighbors) {
    check_neighbors(neighbors);
    switch (mode) {
    case MappingMode::raw: return code_space(neighbors);
    case MappingMode::u2: return static_cast<std::uint32_t>(neighbors * (neighbors - 1) + 3);
    case MappingMode::riu2: return static_cast<std::uint32_t>(neighbors + 2);
    case MappingMode::ri: return cached_mapping(neighbors, mode).label_count();
    }
    throw ParameterError("unknown mapping mode");
}

} // namespace lbpx
