// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_VOXEL_FRAME_HPP
#define VOXSR_VOXEL_FRAME_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "voxsr/morton.hpp"

namespace voxsr {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

// Axis-aligned cube: min corner plus one edge length shared by all axes.
// Max faces are half-open; points landing exactly on them clamp to the last
// voxel during quantization.
struct BoundingBox {
    std::array<double, 3> min{0.0, 0.0, 0.0};
    double edge = 1.0;
};

// Raw input/output form: real-coordinate points with optional RGB color.
struct PointCloud {
    std::vector<std::array<double, 3>> points;
    std::vector<Rgb> colors; // empty, or exactly one entry per point
    BoundingBox bbox;

    bool hasColors() const { return !colors.empty(); }
};

struct VoxelCoord {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint32_t z = 0;

    friend bool operator==(const VoxelCoord&, const VoxelCoord&) = default;
};

inline std::uint64_t mortonOf(const VoxelCoord& v) {
    return mortonEncode(v.x, v.y, v.z);
}

// 8-bit child-occupancy pattern of a parent voxel; bit c = 4*dx + 2*dy + dz
// for the child offset (dx, dy, dz) in {0,1}^3.
using ChildMask = std::uint8_t;

// A voxelized frame: depth J plus a duplicate-free voxel set, kept strictly
// increasing in Morton order. Components lie in [0, 2^J).
struct VoxelFrame {
    int depth = 1;
    std::vector<VoxelCoord> voxels;
    std::vector<Rgb> colors; // empty, or aligned 1:1 with voxels

    bool hasColors() const { return !colors.empty(); }
    std::size_t size() const { return voxels.size(); }
    bool empty() const { return voxels.empty(); }

    std::uint32_t gridSize() const { return 1u << depth; }
};

// Quantizes each point to floor((p - bbox.min) / edge * 2^J), clamped to
// [0, 2^J - 1] per axis. Duplicates merge; a merged voxel's color is the
// per-channel mean of the contributing point colors, rounded half away from
// zero. Throws ParameterError when depth is outside [1, kMaxDepth].
VoxelFrame voxelize(const PointCloud& cloud, int depth);

// One level coarser: voxels halved per axis and deduplicated; a parent's
// color is the per-channel mean over its occupied children. Throws
// ParameterError on depth underflow (depth = 1).
VoxelFrame downsample(const VoxelFrame& frame);

// Child-occupancy mask of `parent` (a coordinate at depth J - 1). Returns 0
// for unoccupied parents.
ChildMask childMaskOf(const VoxelFrame& frame, const VoxelCoord& parent);

// One level finer: every voxel replaced by all 8 children, each inheriting
// the parent's color. Throws ParameterError when depth = kMaxDepth.
VoxelFrame naiveUpsample(const VoxelFrame& frame);

// Membership test; binary search over the Morton-sorted voxel list.
bool contains(const VoxelFrame& frame, const VoxelCoord& v);

} // namespace voxsr

#endif // VOXSR_VOXEL_FRAME_HPP
