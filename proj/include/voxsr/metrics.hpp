// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_METRICS_HPP
#define VOXSR_METRICS_HPP

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "voxsr/voxel_frame.hpp"

namespace voxsr {

enum class Axis { X = 0, Y = 1, Z = 2 };
enum class FaceDir { Negative = 0, Positive = 1 };

// The six bounding-cube faces in report order.
inline constexpr std::array<std::pair<Axis, FaceDir>, 6> kFaces = {{
    {Axis::X, FaceDir::Negative},
    {Axis::X, FaceDir::Positive},
    {Axis::Y, FaceDir::Negative},
    {Axis::Y, FaceDir::Positive},
    {Axis::Z, FaceDir::Negative},
    {Axis::Z, FaceDir::Positive},
}};

std::string_view faceName(Axis axis, FaceDir dir); // "X-", "X+", ...

// Orthographic raster of one bounding-cube face: per-pixel color, occupancy
// and depth (distance from the face; the nearest voxel along the projection
// axis wins). Pixels are indexed row-major as (i, j) where (i, j) are the two
// non-projected axes in xyz order.
struct FaceImage {
    Axis axis = Axis::Z;
    FaceDir dir = FaceDir::Negative;
    std::uint32_t size = 0; // 2^J

    std::vector<std::uint8_t> occupied; // size*size
    std::vector<Rgb> color;             // valid where occupied
    std::vector<std::uint32_t> depth;   // valid where occupied

    std::size_t index(std::uint32_t i, std::uint32_t j) const {
        return static_cast<std::size_t>(i) * size + j;
    }
};

// Per-face PSNR values are infinity when the face MSE is 0 (or no pixel is
// occupied in both images); meanPsnr averages the finite faces and is
// infinity only when all six are.
struct MetricReport {
    std::array<double, 6> facePsnr{}; // kFaces order
    double meanPsnr = 0.0;
    double occupancyAgreement = 0.0; // pooled |both| / |either| over faces
};

// Projects the frame onto one face with depth buffering. Colorless frames
// render as uniform gray 128.
FaceImage projectFace(const VoxelFrame& frame, Axis axis, FaceDir dir);

// Projection-based distortion: per face, MSE over pixels occupied in both
// images (per channel, averaged over channels), PSNR = 10*log10(255^2/MSE).
// Throws ParameterError on depth mismatch.
MetricReport projectionPsnr(const VoxelFrame& a, const VoxelFrame& b);

// Symmetric point-to-point geometry PSNR over voxel centers:
// 10*log10(3*(2^J-1)^2 / max(MSE_ab, MSE_ba)); infinity for identical
// geometry. Throws ParameterError on empty input or depth mismatch.
double d1Psnr(const VoxelFrame& a, const VoxelFrame& b);

} // namespace voxsr

#endif // VOXSR_METRICS_HPP
