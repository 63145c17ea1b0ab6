// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_SUPER_RESOLUTION_HPP
#define VOXSR_SUPER_RESOLUTION_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "voxsr/voxel_frame.hpp"

namespace voxsr {

// The 26 neighbor offsets of a 3x3x3 neighborhood (center excluded),
// enumerated lexicographically with dx outermost, then dy, then dz.
inline constexpr std::array<std::array<int, 3>, 26> kNeighborOffsets = [] {
    std::array<std::array<int, 3>, 26> offsets{};
    int i = 0;
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
            for (int dz = -1; dz <= 1; ++dz) {
                if (dx == 0 && dy == 0 && dz == 0)
                    continue;
                offsets[i++] = {dx, dy, dz};
            }
    return offsets;
}();

// 26-bit occupancy pattern of a voxel's 3x3x3 neighborhood; bit i follows
// kNeighborOffsets. Out-of-bounds neighbors contribute 0.
struct Descriptor26 {
    std::uint32_t bits = 0;

    friend bool operator==(const Descriptor26&, const Descriptor26&) = default;
};

struct MatchParams {
    // Chebyshev search radius in low-resolution voxel units; 0 restricts
    // candidates to the identical coordinate.
    int window = 4;
};

struct MatchResult {
    VoxelCoord candidate;     // occupied voxel of the downsampled reference
    int cost = 0;             // Hamming distance of descriptors, 0..26
    std::int64_t tieDistance = 0; // squared Euclidean distance to the query
};

// Neighborhood descriptor of `coord` in `frame` (center excluded).
Descriptor26 neighborhood(const VoxelFrame& frame, const VoxelCoord& coord);

// Hamming distance between descriptors, in [0, 26].
int matchCost(const Descriptor26& a, const Descriptor26& b);

// Best-matching occupied voxel of `refLow` within Chebyshev distance
// params.window of `coord`, minimizing (descriptor Hamming cost, squared
// Euclidean distance, Morton order of the candidate). Returns nullopt when
// the window holds no occupied candidate. Throws ParameterError on depth
// mismatch or a negative window.
std::optional<MatchResult> findBestMatch(const VoxelFrame& targetLow, const VoxelCoord& coord,
                                         const VoxelFrame& refLow, const MatchParams& params);

// Example-based super-resolution: each occupied voxel of `targetLow` emits
// the child mask of its best-matching neighborhood across the downsampled
// references (ties broken by cost, distance, Morton order, then reference
// list position). Voxels with no candidate in any reference fall back to all
// 8 children. Children inherit the parent's color when targetLow is colored.
// Throws ParameterError when refsFull is empty or a reference depth is not
// targetLow.depth + 1.
VoxelFrame superResolve(const VoxelFrame& targetLow, const std::vector<VoxelFrame>& refsFull,
                        const MatchParams& params);

} // namespace voxsr

#endif // VOXSR_SUPER_RESOLUTION_HPP
