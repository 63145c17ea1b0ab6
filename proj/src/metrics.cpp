// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <unordered_set>

#include "voxsr/errors.hpp"

namespace voxsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPeakColor = 255.0;

std::uint64_t packCoord(std::uint32_t x, std::uint32_t y, std::uint32_t z) {
    return (static_cast<std::uint64_t>(x) << 42) | (static_cast<std::uint64_t>(y) << 21) | z;
}

// Pixel coordinates (i, j) are the two non-projected axes in xyz order.
void facePixel(Axis axis, const VoxelCoord& v, std::uint32_t& i, std::uint32_t& j,
               std::uint32_t& along) {
    switch (axis) {
    case Axis::X: i = v.y; j = v.z; along = v.x; break;
    case Axis::Y: i = v.x; j = v.z; along = v.y; break;
    default:      i = v.x; j = v.y; along = v.z; break;
    }
}

// Mean squared nearest-neighbor distance from each voxel of `from` to the
// voxel set of `to`, over integer centers. Expanding Chebyshev shells: a
// cell at shell radius r is at least r^2 away, so the scan stops once no
// shell can improve the current best.
double meanNearestSq(const VoxelFrame& from, const VoxelFrame& to) {
    std::unordered_set<std::uint64_t> cells;
    cells.reserve(to.size() * 2);
    for (const VoxelCoord& v : to.voxels)
        cells.insert(packCoord(v.x, v.y, v.z));

    const std::int64_t grid = from.gridSize();
    auto occupied = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
        if (x < 0 || y < 0 || z < 0 || x >= grid || y >= grid || z >= grid)
            return false;
        return cells.count(packCoord(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y),
                                     static_cast<std::uint32_t>(z))) != 0;
    };

    std::uint64_t total = 0;
    for (const VoxelCoord& v : from.voxels) {
        const std::int64_t px = v.x, py = v.y, pz = v.z;
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        auto tryCell = [&](std::int64_t dx, std::int64_t dy, std::int64_t dz) {
            if (occupied(px + dx, py + dy, pz + dz))
                best = std::min(best, dx * dx + dy * dy + dz * dz);
        };
        for (std::int64_t r = 0; r <= 2 * grid; ++r) {
            if (r * r >= best)
                break;
            if (r == 0) {
                tryCell(0, 0, 0);
                continue;
            }
            for (std::int64_t dy = -r; dy <= r; ++dy)
                for (std::int64_t dz = -r; dz <= r; ++dz) {
                    tryCell(-r, dy, dz);
                    tryCell(r, dy, dz);
                }
            for (std::int64_t dx = -r + 1; dx <= r - 1; ++dx)
                for (std::int64_t dz = -r; dz <= r; ++dz) {
                    tryCell(dx, -r, dz);
                    tryCell(dx, r, dz);
                }
            for (std::int64_t dx = -r + 1; dx <= r - 1; ++dx)
                for (std::int64_t dy = -r + 1; dy <= r - 1; ++dy) {
                    tryCell(dx, dy, -r);
                    tryCell(dx, dy, r);
                }
        }
        total += static_cast<std::uint64_t>(best);
    }
    return static_cast<double>(total) / static_cast<double>(from.size());
}

} // namespace

std::string_view faceName(Axis axis, FaceDir dir) {
    static constexpr std::array<std::string_view, 6> names = {"X-", "X+", "Y-", "Y+", "Z-", "Z+"};
    return names[static_cast<std::size_t>(axis) * 2 + static_cast<std::size_t>(dir)];
}

FaceImage projectFace(const VoxelFrame& frame, Axis axis, FaceDir dir) {
    FaceImage img;
    img.axis = axis;
    img.dir = dir;
    img.size = frame.gridSize();
    const std::size_t pixels = static_cast<std::size_t>(img.size) * img.size;
    img.occupied.assign(pixels, 0);
    img.color.assign(pixels, Rgb{});
    img.depth.assign(pixels, 0);

    const bool colored = frame.hasColors();
    for (std::size_t n = 0; n < frame.voxels.size(); ++n) {
        std::uint32_t i, j, along;
        facePixel(axis, frame.voxels[n], i, j, along);
        const std::uint32_t d = dir == FaceDir::Negative ? along : img.size - 1 - along;
        const std::size_t px = img.index(i, j);
        if (!img.occupied[px] || d < img.depth[px]) {
            img.occupied[px] = 1;
            img.depth[px] = d;
            img.color[px] = colored ? frame.colors[n] : Rgb{128, 128, 128};
        }
    }
    return img;
}

MetricReport projectionPsnr(const VoxelFrame& a, const VoxelFrame& b) {
    if (a.depth != b.depth)
        throw ParameterError("projectionPsnr: depth mismatch (" + std::to_string(a.depth) + " vs " +
                             std::to_string(b.depth) + ")");

    MetricReport report;
    std::uint64_t bothTotal = 0, eitherTotal = 0;
    double finiteSum = 0.0;
    int finiteCount = 0;

    for (std::size_t f = 0; f < kFaces.size(); ++f) {
        const FaceImage fa = projectFace(a, kFaces[f].first, kFaces[f].second);
        const FaceImage fb = projectFace(b, kFaces[f].first, kFaces[f].second);

        std::uint64_t squaredError = 0, both = 0, either = 0;
        const std::size_t pixels = fa.occupied.size();
        for (std::size_t px = 0; px < pixels; ++px) {
            const bool oa = fa.occupied[px], ob = fb.occupied[px];
            if (oa || ob)
                ++either;
            if (oa && ob) {
                ++both;
                const Rgb& ca = fa.color[px];
                const Rgb& cb = fb.color[px];
                const std::int64_t dr = static_cast<std::int64_t>(ca.r) - cb.r;
                const std::int64_t dg = static_cast<std::int64_t>(ca.g) - cb.g;
                const std::int64_t db = static_cast<std::int64_t>(ca.b) - cb.b;
                squaredError += static_cast<std::uint64_t>(dr * dr + dg * dg + db * db);
            }
        }

        bothTotal += both;
        eitherTotal += either;
        double psnr = kInf;
        if (both > 0 && squaredError > 0) {
            const double mse = static_cast<double>(squaredError) / (3.0 * static_cast<double>(both));
            psnr = 10.0 * std::log10(kPeakColor * kPeakColor / mse);
        }
        report.facePsnr[f] = psnr;
        if (std::isfinite(psnr)) {
            finiteSum += psnr;
            ++finiteCount;
        }
    }

    report.meanPsnr = finiteCount > 0 ? finiteSum / finiteCount : kInf;
    report.occupancyAgreement =
        eitherTotal > 0 ? static_cast<double>(bothTotal) / static_cast<double>(eitherTotal) : 1.0;
    return report;
}

double d1Psnr(const VoxelFrame& a, const VoxelFrame& b) {
    if (a.empty() || b.empty())
        throw ParameterError("d1Psnr: frames must be non-empty");
    if (a.depth != b.depth)
        throw ParameterError("d1Psnr: depth mismatch (" + std::to_string(a.depth) + " vs " +
                             std::to_string(b.depth) + ")");

    const double mse = std::max(meanNearestSq(a, b), meanNearestSq(b, a));
    if (mse == 0.0)
        return kInf;
    const double span = static_cast<double>(a.gridSize() - 1);
    return 10.0 * std::log10(3.0 * span * span / mse);
}

} // namespace voxsr
