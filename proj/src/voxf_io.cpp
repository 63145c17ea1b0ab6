// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/voxf_io.hpp"

#include <bit>
#include <cstring>
#include <string>

#include "voxsr/errors.hpp"

namespace voxsr {

namespace {

void putU64(std::vector<std::uint8_t>& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void putU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

class Reader {
public:
    Reader(std::span<const std::uint8_t> bytes, const char* what) : bytes_(bytes), what_(what) {}

    std::size_t offset() const { return pos_; }

    void require(std::size_t n, const char* section) {
        if (bytes_.size() - pos_ < n)
            throw CorruptFileError(std::string(what_) + ": truncated " + section + " at byte offset " +
                                   std::to_string(pos_) + " (need " + std::to_string(n) +
                                   " more bytes, have " + std::to_string(bytes_.size() - pos_) + ")");
    }

    std::uint8_t u8() {
        return bytes_[pos_++];
    }

    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i)
            v |= static_cast<std::uint32_t>(bytes_[pos_++]) << (8 * i);
        return v;
    }

    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i)
            v |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
        return v;
    }

    void expectMagic(const char* magic) {
        require(4, "header");
        if (std::memcmp(bytes_.data() + pos_, magic, 4) != 0)
            throw CorruptFileError(std::string(what_) + ": bad magic at byte offset 0 (expected '" +
                                   magic + "')");
        pos_ += 4;
    }

    void finish() {
        if (pos_ != bytes_.size())
            throw CorruptFileError(std::string(what_) + ": " + std::to_string(bytes_.size() - pos_) +
                                   " trailing bytes after byte offset " + std::to_string(pos_));
    }

private:
    std::span<const std::uint8_t> bytes_;
    const char* what_;
    std::size_t pos_ = 0;
};

} // namespace

std::vector<std::uint8_t> writeVoxf(const VoxelFrame& frame) {
    const bool colored = frame.hasColors();
    std::vector<std::uint8_t> out;
    out.reserve(15 + frame.size() * (colored ? 15 : 12));
    out.insert(out.end(), {'V', 'O', 'X', 'F'});
    out.push_back(1);
    out.push_back(static_cast<std::uint8_t>(frame.depth));
    out.push_back(colored ? 1 : 0);
    putU64(out, frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        const VoxelCoord& v = frame.voxels[i];
        putU32(out, v.x);
        putU32(out, v.y);
        putU32(out, v.z);
        if (colored) {
            out.push_back(frame.colors[i].r);
            out.push_back(frame.colors[i].g);
            out.push_back(frame.colors[i].b);
        }
    }
    return out;
}

VoxelFrame readVoxf(std::span<const std::uint8_t> bytes) {
    Reader reader(bytes, "voxf");
    reader.expectMagic("VOXF");
    reader.require(3 + 8, "header");
    const std::uint8_t version = reader.u8();
    if (version != 1)
        throw CorruptFileError("voxf: unsupported version " + std::to_string(version));
    const std::uint8_t depth = reader.u8();
    if (depth < 1 || depth > kMaxDepth)
        throw CorruptFileError("voxf: invalid depth " + std::to_string(depth));
    const std::uint8_t flags = reader.u8();
    if (flags > 1)
        throw CorruptFileError("voxf: invalid flags " + std::to_string(flags));
    const std::uint64_t count = reader.u64();
    const bool colored = flags & 1;

    VoxelFrame frame;
    frame.depth = depth;
    frame.voxels.reserve(count);
    if (colored)
        frame.colors.reserve(count);

    const std::uint32_t grid = 1u << depth;
    std::uint64_t prevCode = 0;
    for (std::uint64_t i = 0; i < count; ++i) {
        reader.require(colored ? 15 : 12, "body");
        VoxelCoord v{reader.u32(), reader.u32(), reader.u32()};
        if (v.x >= grid || v.y >= grid || v.z >= grid)
            throw CorruptFileError("voxf: record " + std::to_string(i) +
                                   ": coordinate out of range for depth " + std::to_string(depth));
        const std::uint64_t code = mortonOf(v);
        if (i > 0 && code <= prevCode)
            throw CorruptFileError("voxf: record " + std::to_string(i) +
                                   ": voxels out of Morton order");
        prevCode = code;
        frame.voxels.push_back(v);
        if (colored)
            frame.colors.push_back({reader.u8(), reader.u8(), reader.u8()});
    }
    reader.finish();
    return frame;
}

std::vector<std::uint8_t> writeVoxt(const OctreeStream& stream) {
    std::vector<std::uint8_t> out;
    out.reserve(14 + stream.masks.size());
    out.insert(out.end(), {'V', 'O', 'X', 'T'});
    out.push_back(1);
    out.push_back(static_cast<std::uint8_t>(stream.depth));
    putU64(out, stream.masks.size());
    out.insert(out.end(), stream.masks.begin(), stream.masks.end());
    return out;
}

OctreeStream readVoxt(std::span<const std::uint8_t> bytes) {
    Reader reader(bytes, "voxt");
    reader.expectMagic("VOXT");
    reader.require(2 + 8, "header");
    const std::uint8_t version = reader.u8();
    if (version != 1)
        throw CorruptFileError("voxt: unsupported version " + std::to_string(version));
    const std::uint8_t depth = reader.u8();
    if (depth < 1 || depth > kMaxDepth)
        throw CorruptFileError("voxt: invalid depth " + std::to_string(depth));
    const std::uint64_t count = reader.u64();
    reader.require(count, "body");

    OctreeStream stream;
    stream.depth = depth;
    stream.masks.resize(count);
    for (std::uint64_t i = 0; i < count; ++i)
        stream.masks[i] = reader.u8();
    reader.finish();

    // Level-structure validation: counts must chain by popcount and every
    // mask of a claimed-occupied parent must be non-zero.
    std::size_t pos = 0;
    std::size_t levelCount = 1;
    for (int level = 1; level <= stream.depth; ++level) {
        if (stream.masks.size() - pos < levelCount)
            throw CorruptFileError("voxt: level " + std::to_string(level) + " needs " +
                                   std::to_string(levelCount) + " masks but only " +
                                   std::to_string(stream.masks.size() - pos) + " remain");
        std::size_t bits = 0;
        for (std::size_t i = 0; i < levelCount; ++i) {
            if (stream.masks[pos + i] == 0)
                throw CorruptFileError("voxt: zero mask at index " + std::to_string(pos + i) +
                                       " (level " + std::to_string(level) + ")");
            bits += std::popcount(stream.masks[pos + i]);
        }
        pos += levelCount;
        levelCount = bits;
    }
    if (pos != stream.masks.size())
        throw CorruptFileError("voxt: " + std::to_string(stream.masks.size() - pos) +
                               " trailing masks after level " + std::to_string(stream.depth));
    return stream;
}

} // namespace voxsr
