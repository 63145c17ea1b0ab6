// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/super_resolution.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <string>

#include "voxsr/errors.hpp"

namespace voxsr {

namespace {

bool containsCode(const std::vector<std::uint64_t>& codes, std::uint64_t code) {
    auto it = std::lower_bound(codes.begin(), codes.end(), code);
    return it != codes.end() && *it == code;
}

std::vector<std::uint64_t> codesOf(const VoxelFrame& frame) {
    std::vector<std::uint64_t> codes(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i)
        codes[i] = mortonOf(frame.voxels[i]);
    return codes;
}

std::uint32_t descriptorAt(const std::vector<std::uint64_t>& codes, std::int64_t x, std::int64_t y,
                           std::int64_t z, std::int64_t grid) {
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < kNeighborOffsets.size(); ++i) {
        const std::int64_t nx = x + kNeighborOffsets[i][0];
        const std::int64_t ny = y + kNeighborOffsets[i][1];
        const std::int64_t nz = z + kNeighborOffsets[i][2];
        if (nx < 0 || ny < 0 || nz < 0 || nx >= grid || ny >= grid || nz >= grid)
            continue;
        if (containsCode(codes, mortonEncode(static_cast<std::uint32_t>(nx),
                                             static_cast<std::uint32_t>(ny),
                                             static_cast<std::uint32_t>(nz))))
            bits |= 1u << i;
    }
    return bits;
}

struct CandidateKey {
    int cost;
    std::int64_t dist2;
    std::uint64_t code;

    bool operator<(const CandidateKey& o) const {
        if (cost != o.cost)
            return cost < o.cost;
        if (dist2 != o.dist2)
            return dist2 < o.dist2;
        return code < o.code;
    }
};

// Reference state shared across all target voxels: sorted low-res codes and
// a descriptor per low-res voxel.
struct PreparedRef {
    std::vector<std::uint64_t> lowCodes;
    std::vector<std::uint32_t> lowDescriptors;
};

PreparedRef prepareLow(std::vector<std::uint64_t> lowCodes, std::int64_t grid) {
    PreparedRef ref;
    ref.lowCodes = std::move(lowCodes);
    ref.lowDescriptors.resize(ref.lowCodes.size());
    for (std::size_t i = 0; i < ref.lowCodes.size(); ++i) {
        std::uint32_t x, y, z;
        mortonDecode(ref.lowCodes[i], x, y, z);
        ref.lowDescriptors[i] = descriptorAt(ref.lowCodes, x, y, z, grid);
    }
    return ref;
}

// Best candidate in the Chebyshev window around `coord`, or nullopt. Scans
// the window cell by cell, or the candidate list when the window is larger;
// both walks minimize the same strict total order.
std::optional<CandidateKey> scanWindow(const PreparedRef& ref, const VoxelCoord& coord,
                                       std::uint32_t targetDescriptor, int window,
                                       std::int64_t grid) {
    std::optional<CandidateKey> best;
    auto consider = [&](std::uint64_t code, std::uint32_t descriptor, std::int64_t dx,
                        std::int64_t dy, std::int64_t dz) {
        CandidateKey key{std::popcount(targetDescriptor ^ descriptor), dx * dx + dy * dy + dz * dz,
                         code};
        if (!best || key < *best)
            best = key;
    };

    const std::int64_t px = coord.x, py = coord.y, pz = coord.z;
    const std::int64_t w = window;
    const std::uint64_t windowCells = static_cast<std::uint64_t>(2 * w + 1) *
                                      static_cast<std::uint64_t>(2 * w + 1) *
                                      static_cast<std::uint64_t>(2 * w + 1);
    if (windowCells <= ref.lowCodes.size() * 4) {
        const std::int64_t x0 = std::max<std::int64_t>(0, px - w), x1 = std::min(grid - 1, px + w);
        const std::int64_t y0 = std::max<std::int64_t>(0, py - w), y1 = std::min(grid - 1, py + w);
        const std::int64_t z0 = std::max<std::int64_t>(0, pz - w), z1 = std::min(grid - 1, pz + w);
        for (std::int64_t x = x0; x <= x1; ++x)
            for (std::int64_t y = y0; y <= y1; ++y)
                for (std::int64_t z = z0; z <= z1; ++z) {
                    const std::uint64_t code = mortonEncode(static_cast<std::uint32_t>(x),
                                                            static_cast<std::uint32_t>(y),
                                                            static_cast<std::uint32_t>(z));
                    auto it = std::lower_bound(ref.lowCodes.begin(), ref.lowCodes.end(), code);
                    if (it != ref.lowCodes.end() && *it == code)
                        consider(code, ref.lowDescriptors[it - ref.lowCodes.begin()], x - px,
                                 y - py, z - pz);
                }
    } else {
        for (std::size_t i = 0; i < ref.lowCodes.size(); ++i) {
            std::uint32_t x, y, z;
            mortonDecode(ref.lowCodes[i], x, y, z);
            const std::int64_t dx = static_cast<std::int64_t>(x) - px;
            const std::int64_t dy = static_cast<std::int64_t>(y) - py;
            const std::int64_t dz = static_cast<std::int64_t>(z) - pz;
            if (std::max({std::abs(dx), std::abs(dy), std::abs(dz)}) > w)
                continue;
            consider(ref.lowCodes[i], ref.lowDescriptors[i], dx, dy, dz);
        }
    }
    return best;
}

} // namespace

Descriptor26 neighborhood(const VoxelFrame& frame, const VoxelCoord& coord) {
    // One-shot probe path; batch callers precompute sorted code lists.
    const std::int64_t grid = frame.gridSize();
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < kNeighborOffsets.size(); ++i) {
        const std::int64_t nx = static_cast<std::int64_t>(coord.x) + kNeighborOffsets[i][0];
        const std::int64_t ny = static_cast<std::int64_t>(coord.y) + kNeighborOffsets[i][1];
        const std::int64_t nz = static_cast<std::int64_t>(coord.z) + kNeighborOffsets[i][2];
        if (nx < 0 || ny < 0 || nz < 0 || nx >= grid || ny >= grid || nz >= grid)
            continue;
        if (contains(frame, VoxelCoord{static_cast<std::uint32_t>(nx), static_cast<std::uint32_t>(ny),
                                       static_cast<std::uint32_t>(nz)}))
            bits |= 1u << i;
    }
    return Descriptor26{bits};
}

int matchCost(const Descriptor26& a, const Descriptor26& b) {
    return std::popcount(a.bits ^ b.bits);
}

std::optional<MatchResult> findBestMatch(const VoxelFrame& targetLow, const VoxelCoord& coord,
                                         const VoxelFrame& refLow, const MatchParams& params) {
    if (targetLow.depth != refLow.depth)
        throw ParameterError("findBestMatch: depth mismatch (target " +
                             std::to_string(targetLow.depth) + ", reference " +
                             std::to_string(refLow.depth) + ")");
    if (params.window < 0)
        throw ParameterError("findBestMatch: window must be >= 0");

    const std::int64_t grid = targetLow.gridSize();
    const std::uint32_t targetDescriptor = neighborhood(targetLow, coord).bits;
    PreparedRef ref = prepareLow(codesOf(refLow), grid);
    auto best = scanWindow(ref, coord, targetDescriptor, params.window, grid);
    if (!best)
        return std::nullopt;

    MatchResult result;
    mortonDecode(best->code, result.candidate.x, result.candidate.y, result.candidate.z);
    result.cost = best->cost;
    result.tieDistance = best->dist2;
    return result;
}

VoxelFrame superResolve(const VoxelFrame& targetLow, const std::vector<VoxelFrame>& refsFull,
                        const MatchParams& params) {
    if (refsFull.empty())
        throw ParameterError("superResolve: reference list is empty");
    if (targetLow.depth < 1 || targetLow.depth >= kMaxDepth)
        throw ParameterError("superResolve: target depth " + std::to_string(targetLow.depth) +
                             " outside [1, " + std::to_string(kMaxDepth - 1) + "]");
    for (std::size_t r = 0; r < refsFull.size(); ++r)
        if (refsFull[r].depth != targetLow.depth + 1)
            throw ParameterError("superResolve: reference " + std::to_string(r) + " has depth " +
                                 std::to_string(refsFull[r].depth) + ", expected " +
                                 std::to_string(targetLow.depth + 1));
    if (params.window < 0)
        throw ParameterError("superResolve: window must be >= 0");

    const std::int64_t grid = targetLow.gridSize();
    const std::vector<std::uint64_t> targetCodes = codesOf(targetLow);

    struct RefState {
        std::vector<std::uint64_t> fullCodes;
        PreparedRef low;
    };
    std::vector<RefState> refs(refsFull.size());
    for (std::size_t r = 0; r < refsFull.size(); ++r) {
        refs[r].fullCodes = codesOf(refsFull[r]);
        std::vector<std::uint64_t> lowCodes;
        lowCodes.reserve(refs[r].fullCodes.size());
        for (std::uint64_t code : refs[r].fullCodes)
            if (lowCodes.empty() || lowCodes.back() != (code >> 3))
                lowCodes.push_back(code >> 3);
        refs[r].low = prepareLow(std::move(lowCodes), grid);
    }

    VoxelFrame out;
    out.depth = targetLow.depth + 1;
    const bool colored = targetLow.hasColors();

    for (std::size_t i = 0; i < targetLow.voxels.size(); ++i) {
        const VoxelCoord& p = targetLow.voxels[i];
        const std::uint32_t targetDescriptor =
            descriptorAt(targetCodes, p.x, p.y, p.z, grid);

        std::optional<CandidateKey> best;
        std::size_t bestRef = 0;
        for (std::size_t r = 0; r < refs.size(); ++r) {
            auto candidate = scanWindow(refs[r].low, p, targetDescriptor, params.window, grid);
            if (candidate && (!best || *candidate < *best)) { // earlier reference wins ties
                best = candidate;
                bestRef = r;
            }
        }

        ChildMask mask = 0xFF; // no candidate anywhere: naive upsample of p
        if (best) {
            mask = 0;
            const std::vector<std::uint64_t>& fullCodes = refs[bestRef].fullCodes;
            const std::uint64_t base = best->code << 3;
            auto it = std::lower_bound(fullCodes.begin(), fullCodes.end(), base);
            for (; it != fullCodes.end() && *it <= base + 7; ++it)
                mask |= static_cast<ChildMask>(1u << (*it & 7));
        }

        for (std::uint32_t c = 0; c < 8; ++c) {
            if (!(mask & (1u << c)))
                continue;
            out.voxels.push_back(VoxelCoord{(p.x << 1) | ((c >> 2) & 1), (p.y << 1) | ((c >> 1) & 1),
                                            (p.z << 1) | (c & 1)});
            if (colored)
                out.colors.push_back(targetLow.colors[i]);
        }
    }
    return out;
}

} // namespace voxsr
