// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_PLY_IO_HPP
#define VOXSR_PLY_IO_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "voxsr/voxel_frame.hpp"

namespace voxsr {

enum class PlyFormat { Ascii, BinaryLittleEndian };

// Parses `format ascii 1.0` / `format binary_little_endian 1.0` files with
// float or double x,y,z and optional uchar red,green,blue; other scalar
// vertex properties are skipped by size. The bounding box is the tight
// axis-aligned box of the points expanded to a cube on the max edge.
// Throws ParseError naming the offending header line or byte offset.
PointCloud readPly(std::span<const std::uint8_t> bytes);

// Emits x,y,z as 32-bit floats plus uchar red,green,blue when colors are
// present; the header lists exactly the emitted properties.
std::vector<std::uint8_t> writePly(const PointCloud& cloud, PlyFormat format);

} // namespace voxsr

#endif // VOXSR_PLY_IO_HPP
