// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_OCTREE_HPP
#define VOXSR_OCTREE_HPP

#include <cstdint>
#include <vector>

#include "voxsr/voxel_frame.hpp"

namespace voxsr {

// Breadth-first sequence of child-occupancy masks, levels 1..depth, within
// each level ordered by the Morton order of the parent voxels. Level 1 holds
// exactly one mask (the root's children); the number of masks at level l+1
// equals the total set bits of the masks at level l. Geometry only.
struct OctreeStream {
    int depth = 1;
    std::vector<ChildMask> masks;
};

// Losslessly encodes a non-empty frame's geometry. Throws ParameterError on
// an empty frame.
OctreeStream octreeEncode(const VoxelFrame& frame);

// Reconstructs the unique frame the stream describes. Throws
// CorruptStreamError when mask counts disagree with parent popcounts or a
// claimed-occupied parent carries a zero mask.
VoxelFrame octreeDecode(const OctreeStream& stream);

// The prefix stream covering levels 1..levels; decoding it equals
// downsampling the full frame (depth - levels) times. Throws ParameterError
// when levels is outside [1, stream.depth], CorruptStreamError when the
// stream is too short to cover the requested levels.
OctreeStream truncated(const OctreeStream& stream, int levels);

} // namespace voxsr

#endif // VOXSR_OCTREE_HPP
