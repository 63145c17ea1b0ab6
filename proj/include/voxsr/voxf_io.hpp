// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_VOXF_IO_HPP
#define VOXSR_VOXF_IO_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "voxsr/octree.hpp"
#include "voxsr/voxel_frame.hpp"

namespace voxsr {

// VOXF frame container: magic "VOXF", u8 version=1, u8 depth, u8 flags
// (bit0 = colors present), u64 count, then count records of u32 x,y,z
// (+ u8 r,g,b when flagged). Little-endian, Morton-sorted. Canonical:
// equal frames produce byte-identical files.
std::vector<std::uint8_t> writeVoxf(const VoxelFrame& frame);

// Throws CorruptFileError with a distinct message per defect: bad magic,
// unsupported version, invalid depth or flags, truncated body, coordinate
// out of range, voxels out of Morton order, trailing bytes.
VoxelFrame readVoxf(std::span<const std::uint8_t> bytes);

// VOXT octree file: magic "VOXT", u8 version=1, u8 depth, u64 mask count,
// then the masks in OctreeStream order.
std::vector<std::uint8_t> writeVoxt(const OctreeStream& stream);

// Validates the container and the stream's level structure. Throws
// CorruptFileError naming the defect and its byte offset or mask index.
OctreeStream readVoxt(std::span<const std::uint8_t> bytes);

} // namespace voxsr

#endif // VOXSR_VOXF_IO_HPP
