// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/octree.hpp"

#include <bit>
#include <string>
#include <utility>

#include "voxsr/errors.hpp"

namespace voxsr {

OctreeStream octreeEncode(const VoxelFrame& frame) {
    if (frame.empty())
        throw ParameterError("octreeEncode: frame is empty");

    std::vector<std::uint64_t> codes(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i)
        codes[i] = mortonOf(frame.voxels[i]);

    // Collapse levels bottom-up; each pass groups sorted codes by parent.
    std::vector<std::vector<ChildMask>> levelMasks(frame.depth + 1);
    for (int level = frame.depth; level >= 1; --level) {
        std::vector<std::uint64_t> parents;
        std::vector<ChildMask>& masks = levelMasks[level];
        for (std::size_t i = 0; i < codes.size();) {
            const std::uint64_t parent = codes[i] >> 3;
            ChildMask mask = 0;
            for (; i < codes.size() && (codes[i] >> 3) == parent; ++i)
                mask |= static_cast<ChildMask>(1u << (codes[i] & 7));
            parents.push_back(parent);
            masks.push_back(mask);
        }
        codes = std::move(parents);
    }

    OctreeStream stream;
    stream.depth = frame.depth;
    for (int level = 1; level <= frame.depth; ++level)
        stream.masks.insert(stream.masks.end(), levelMasks[level].begin(), levelMasks[level].end());
    return stream;
}

VoxelFrame octreeDecode(const OctreeStream& stream) {
    if (stream.depth < 1 || stream.depth > kMaxDepth)
        throw CorruptStreamError("octree stream: invalid depth " + std::to_string(stream.depth));

    std::vector<std::uint64_t> parents{0};
    std::size_t pos = 0;
    for (int level = 1; level <= stream.depth; ++level) {
        if (stream.masks.size() - pos < parents.size())
            throw CorruptStreamError("octree stream: level " + std::to_string(level) + " needs " +
                                     std::to_string(parents.size()) + " masks but only " +
                                     std::to_string(stream.masks.size() - pos) + " remain");
        std::vector<std::uint64_t> children;
        for (std::uint64_t parent : parents) {
            const ChildMask mask = stream.masks[pos];
            if (mask == 0)
                throw CorruptStreamError("octree stream: zero mask at index " + std::to_string(pos) +
                                         " (level " + std::to_string(level) + ")");
            ++pos;
            for (std::uint32_t c = 0; c < 8; ++c)
                if (mask & (1u << c))
                    children.push_back((parent << 3) | c);
        }
        parents = std::move(children);
    }
    if (pos != stream.masks.size())
        throw CorruptStreamError("octree stream: " + std::to_string(stream.masks.size() - pos) +
                                 " trailing masks after level " + std::to_string(stream.depth));

    VoxelFrame frame;
    frame.depth = stream.depth;
    frame.voxels.resize(parents.size());
    for (std::size_t i = 0; i < parents.size(); ++i) {
        VoxelCoord v;
        mortonDecode(parents[i], v.x, v.y, v.z);
        frame.voxels[i] = v;
    }
    return frame;
}

OctreeStream truncated(const OctreeStream& stream, int levels) {
    if (levels < 1 || levels > stream.depth)
        throw ParameterError("truncated: levels " + std::to_string(levels) + " outside [1, " +
                             std::to_string(stream.depth) + "]");

    std::size_t pos = 0;
    std::size_t levelCount = 1;
    for (int level = 1; level <= levels; ++level) {
        if (stream.masks.size() - pos < levelCount)
            throw CorruptStreamError("octree stream: level " + std::to_string(level) + " needs " +
                                     std::to_string(levelCount) + " masks but only " +
                                     std::to_string(stream.masks.size() - pos) + " remain");
        std::size_t bits = 0;
        for (std::size_t i = 0; i < levelCount; ++i)
            bits += std::popcount(stream.masks[pos + i]);
        pos += levelCount;
        levelCount = bits;
    }

    OctreeStream prefix;
    prefix.depth = levels;
    prefix.masks.assign(stream.masks.begin(), stream.masks.begin() + static_cast<std::ptrdiff_t>(pos));
    return prefix;
}

} // namespace voxsr
