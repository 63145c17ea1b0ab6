// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/voxel_frame.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>

#include "voxsr/errors.hpp"

namespace voxsr {

namespace {

// Mean of a nonnegative integer sum, rounded half away from zero.
std::uint8_t roundedMean(std::uint64_t sum, std::uint64_t n) {
    return static_cast<std::uint8_t>((2 * sum + n) / (2 * n));
}

std::uint32_t quantizeAxis(double p, double min, double edge, std::uint32_t maxCoord, int depth) {
    double t = (p - min) / edge * static_cast<double>(1u << depth);
    double f = std::floor(t);
    if (f < 0.0)
        return 0;
    if (f > static_cast<double>(maxCoord))
        return maxCoord;
    return static_cast<std::uint32_t>(f);
}

} // namespace

bool contains(const VoxelFrame& frame, const VoxelCoord& v) {
    const std::uint64_t code = mortonOf(v);
    auto it = std::lower_bound(frame.voxels.begin(), frame.voxels.end(), code,
                               [](const VoxelCoord& a, std::uint64_t c) { return mortonOf(a) < c; });
    return it != frame.voxels.end() && mortonOf(*it) == code;
}

VoxelFrame voxelize(const PointCloud& cloud, int depth) {
    if (depth < 1 || depth > kMaxDepth)
        throw ParameterError("voxelize: depth " + std::to_string(depth) + " outside [1, " +
                             std::to_string(kMaxDepth) + "]");
    if (cloud.bbox.edge <= 0.0)
        throw ParameterError("voxelize: bounding box edge must be positive");

    VoxelFrame frame;
    frame.depth = depth;
    if (cloud.points.empty())
        return frame;

    const std::uint32_t maxCoord = (1u << depth) - 1;
    const bool colored = cloud.hasColors();

    struct Quantized {
        std::uint64_t code;
        VoxelCoord coord;
        std::uint32_t pointIndex;
    };
    std::vector<Quantized> cells(cloud.points.size());
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const auto& p = cloud.points[i];
        VoxelCoord c{quantizeAxis(p[0], cloud.bbox.min[0], cloud.bbox.edge, maxCoord, depth),
                     quantizeAxis(p[1], cloud.bbox.min[1], cloud.bbox.edge, maxCoord, depth),
                     quantizeAxis(p[2], cloud.bbox.min[2], cloud.bbox.edge, maxCoord, depth)};
        cells[i] = {mortonOf(c), c, static_cast<std::uint32_t>(i)};
    }
    std::sort(cells.begin(), cells.end(),
              [](const Quantized& a, const Quantized& b) { return a.code < b.code; });

    for (std::size_t i = 0; i < cells.size();) {
        const std::uint64_t code = cells[i].code;
        std::uint64_t r = 0, g = 0, b = 0, n = 0;
        const VoxelCoord coord = cells[i].coord;
        for (; i < cells.size() && cells[i].code == code; ++i) {
            if (colored) {
                const Rgb& c = cloud.colors[cells[i].pointIndex];
                r += c.r;
                g += c.g;
                b += c.b;
            }
            ++n;
        }
        frame.voxels.push_back(coord);
        if (colored)
            frame.colors.push_back({roundedMean(r, n), roundedMean(g, n), roundedMean(b, n)});
    }
    return frame;
}

VoxelFrame downsample(const VoxelFrame& frame) {
    if (frame.depth < 2)
        throw ParameterError("downsample: depth underflow (depth must be >= 2)");

    VoxelFrame out;
    out.depth = frame.depth - 1;
    const bool colored = frame.hasColors();

    // Morton-sorted children of one parent are consecutive: code >> 3 groups.
    for (std::size_t i = 0; i < frame.voxels.size();) {
        const std::uint64_t parentCode = mortonOf(frame.voxels[i]) >> 3;
        const VoxelCoord& child = frame.voxels[i];
        VoxelCoord parent{child.x >> 1, child.y >> 1, child.z >> 1};
        std::uint64_t r = 0, g = 0, b = 0, n = 0;
        for (; i < frame.voxels.size() && (mortonOf(frame.voxels[i]) >> 3) == parentCode; ++i) {
            if (colored) {
                const Rgb& c = frame.colors[i];
                r += c.r;
                g += c.g;
                b += c.b;
            }
            ++n;
        }
        out.voxels.push_back(parent);
        if (colored)
            out.colors.push_back({roundedMean(r, n), roundedMean(g, n), roundedMean(b, n)});
    }
    return out;
}

ChildMask childMaskOf(const VoxelFrame& frame, const VoxelCoord& parent) {
    const std::uint64_t base = mortonEncode(parent.x, parent.y, parent.z) << 3;
    auto it = std::lower_bound(frame.voxels.begin(), frame.voxels.end(), base,
                               [](const VoxelCoord& a, std::uint64_t c) { return mortonOf(a) < c; });
    ChildMask mask = 0;
    for (; it != frame.voxels.end(); ++it) {
        const std::uint64_t code = mortonOf(*it);
        if (code > base + 7)
            break;
        mask |= static_cast<ChildMask>(1u << (code & 7));
    }
    return mask;
}

VoxelFrame naiveUpsample(const VoxelFrame& frame) {
    if (frame.depth >= kMaxDepth)
        throw ParameterError("naiveUpsample: depth " + std::to_string(frame.depth) +
                             " cannot be refined beyond " + std::to_string(kMaxDepth));

    VoxelFrame out;
    out.depth = frame.depth + 1;
    const bool colored = frame.hasColors();
    out.voxels.reserve(frame.size() * 8);
    if (colored)
        out.colors.reserve(frame.size() * 8);

    for (std::size_t i = 0; i < frame.voxels.size(); ++i) {
        const VoxelCoord& v = frame.voxels[i];
        for (std::uint32_t c = 0; c < 8; ++c) {
            out.voxels.push_back(VoxelCoord{(v.x << 1) | ((c >> 2) & 1), (v.y << 1) | ((c >> 1) & 1),
                                            (v.z << 1) | (c & 1)});
            if (colored)
                out.colors.push_back(frame.colors[i]);
        }
    }
    return out;
}

} // namespace voxsr
