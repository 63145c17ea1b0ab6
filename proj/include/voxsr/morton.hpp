// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_MORTON_HPP
#define VOXSR_MORTON_HPP

#include <cstdint>

namespace voxsr {

// Coordinates are limited to 21 bits per axis so a 3D Morton code fits in
// 63 bits; frame depths are further capped at kMaxDepth = 20.
inline constexpr int kMaxDepth = 20;

namespace detail {

inline std::uint64_t spreadBits(std::uint32_t v) {
    std::uint64_t x = v & 0x1fffff;
    x = (x | (x << 32)) & 0x1f00000000ffffULL;
    x = (x | (x << 16)) & 0x1f0000ff0000ffULL;
    x = (x | (x << 8)) & 0x100f00f00f00f00fULL;
    x = (x | (x << 4)) & 0x10c30c30c30c30c3ULL;
    x = (x | (x << 2)) & 0x1249249249249249ULL;
    return x;
}

inline std::uint32_t compactBits(std::uint64_t v) {
    v &= 0x1249249249249249ULL;
    v = (v ^ (v >> 2)) & 0x10c30c30c30c30c3ULL;
    v = (v ^ (v >> 4)) & 0x100f00f00f00f00fULL;
    v = (v ^ (v >> 8)) & 0x1f0000ff0000ffULL;
    v = (v ^ (v >> 16)) & 0x1f00000000ffffULL;
    v = (v ^ (v >> 32)) & 0x1fffffULL;
    return static_cast<std::uint32_t>(v);
}

} // namespace detail

// Z-order linearization with x in the most significant position of each bit
// triple, matching the child-index convention c = 4*dx + 2*dy + dz.
inline std::uint64_t mortonEncode(std::uint32_t x, std::uint32_t y, std::uint32_t z) {
    return (detail::spreadBits(x) << 2) | (detail::spreadBits(y) << 1) | detail::spreadBits(z);
}

inline void mortonDecode(std::uint64_t code, std::uint32_t& x, std::uint32_t& y, std::uint32_t& z) {
    x = detail::compactBits(code >> 2);
    y = detail::compactBits(code >> 1);
    z = detail::compactBits(code);
}

} // namespace voxsr

#endif // VOXSR_MORTON_HPP
