// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include "voxsr/errors.hpp"
#include "voxsr/file_io.hpp"
#include "voxsr/manifest.hpp"
#include "voxsr/ply_io.hpp"
#include "voxsr/voxf_io.hpp"

#include "test_support.hpp"

using namespace voxsr;
namespace vt = voxsr::test;

namespace {

std::vector<std::uint8_t> bytesOf(const std::string& text) {
    return {text.begin(), text.end()};
}

} // namespace

TEST_SUITE("ply") {
    TEST_CASE("minimal ascii file with one vertex") {
        const auto cloud = readPly(bytesOf("ply\n"
                                           "format ascii 1.0\n"
                                           "element vertex 1\n"
                                           "property float x\n"
                                           "property float y\n"
                                           "property float z\n"
                                           "end_header\n"
                                           "0 0 0\n"));
        REQUIRE(cloud.points.size() == 1);
        CHECK(cloud.points[0] == std::array<double, 3>{0, 0, 0});
        CHECK_FALSE(cloud.hasColors());
    }

    TEST_CASE("round trip preserves points, colors and multiplicity") {
        std::mt19937_64 rng(7400);
        for (PlyFormat format : {PlyFormat::Ascii, PlyFormat::BinaryLittleEndian}) {
            for (bool colored : {false, true}) {
                PointCloud cloud = vt::randomCloud(rng, 200, colored);
                cloud.points.push_back(cloud.points.front()); // duplicate survives IO
                if (colored)
                    cloud.colors.push_back(cloud.colors.front());
                const PointCloud back = readPly(writePly(cloud, format));
                CHECK(back.points == cloud.points);
                CHECK(back.colors == cloud.colors);
            }
        }
    }

    TEST_CASE("writer lists exactly the emitted properties in order") {
        PointCloud cloud;
        cloud.points.push_back({1, 2, 3});
        cloud.colors.push_back({9, 8, 7});
        cloud.bbox = BoundingBox{{0, 0, 0}, 4.0};
        const auto bytes = writePly(cloud, PlyFormat::Ascii);
        const std::string text(bytes.begin(), bytes.end());
        const std::string expectedHeader = "ply\n"
                                           "format ascii 1.0\n"
                                           "element vertex 1\n"
                                           "property float x\n"
                                           "property float y\n"
                                           "property float z\n"
                                           "property uchar red\n"
                                           "property uchar green\n"
                                           "property uchar blue\n"
                                           "end_header\n";
        CHECK(text.substr(0, expectedHeader.size()) == expectedHeader);
    }

    TEST_CASE("empty cloud writes a valid zero-vertex file") {
        PointCloud cloud;
        const auto bytes = writePly(cloud, PlyFormat::Ascii);
        const std::string text(bytes.begin(), bytes.end());
        CHECK(text.find("element vertex 0\n") != std::string::npos);
        const PointCloud back = readPly(bytes);
        CHECK(back.points.empty());
    }

    TEST_CASE("vertex count mismatch is a parse error") {
        CHECK_THROWS_AS(readPly(bytesOf("ply\n"
                                        "format ascii 1.0\n"
                                        "element vertex 5\n"
                                        "property float x\n"
                                        "property float y\n"
                                        "property float z\n"
                                        "end_header\n"
                                        "0 0 0\n1 1 1\n2 2 2\n3 3 3\n")),
                        ParseError);

        PointCloud cloud;
        cloud.points = {{0, 0, 0}, {1, 1, 1}};
        cloud.bbox = BoundingBox{{0, 0, 0}, 2.0};
        auto bytes = writePly(cloud, PlyFormat::BinaryLittleEndian);
        bytes.resize(bytes.size() - 4); // drop part of the last record
        CHECK_THROWS_AS(readPly(bytes), ParseError);
    }

    TEST_CASE("malformed headers are rejected with the offending line") {
        CHECK_THROWS_WITH_AS(readPly(bytesOf("plx\nformat ascii 1.0\nend_header\n")),
                             doctest::Contains("line 1"), ParseError);
        CHECK_THROWS_WITH_AS(readPly(bytesOf("ply\nformat binary_big_endian 1.0\n"
                                             "element vertex 0\nproperty float x\n"
                                             "property float y\nproperty float z\nend_header\n")),
                             doctest::Contains("unsupported format"), ParseError);
        CHECK_THROWS_WITH_AS(readPly(bytesOf("ply\nformat ascii 1.0\nelement vertex 1\n"
                                             "property list uchar int vertex_indices\n"
                                             "end_header\n")),
                             doctest::Contains("list"), ParseError);
        CHECK_THROWS_AS(readPly(bytesOf("ply\nformat ascii 1.0\nelement vertex 1\n"
                                        "property float x\nproperty float y\nend_header\n0 0\n")),
                        ParseError); // missing z
    }

    TEST_CASE("unknown scalar vertex properties are skipped by size") {
        const auto cloud = readPly(bytesOf("ply\n"
                                           "format ascii 1.0\n"
                                           "comment has extras\n"
                                           "element vertex 2\n"
                                           "property float x\n"
                                           "property float y\n"
                                           "property float z\n"
                                           "property float confidence\n"
                                           "property uchar red\n"
                                           "property uchar green\n"
                                           "property uchar blue\n"
                                           "property int label\n"
                                           "end_header\n"
                                           "1 2 3 0.5 10 20 30 7\n"
                                           "4 5 6 0.25 40 50 60 8\n"));
        REQUIRE(cloud.points.size() == 2);
        CHECK(cloud.points[1] == std::array<double, 3>{4, 5, 6});
        REQUIRE(cloud.hasColors());
        CHECK(cloud.colors[0] == Rgb{10, 20, 30});
        CHECK(cloud.colors[1] == Rgb{40, 50, 60});
    }

    TEST_CASE("binary bodies skip unknown properties by size") {
        // Hand-build: x,y,z floats + one skipped int32 per vertex.
        std::string header = "ply\nformat binary_little_endian 1.0\nelement vertex 1\n"
                             "property float x\nproperty float y\nproperty float z\n"
                             "property int label\nend_header\n";
        std::vector<std::uint8_t> bytes(header.begin(), header.end());
        const float xyz[3] = {1.0f, 2.0f, 4.0f};
        const std::uint8_t* raw = reinterpret_cast<const std::uint8_t*>(xyz);
        bytes.insert(bytes.end(), raw, raw + 12);
        bytes.insert(bytes.end(), {0xDE, 0xAD, 0xBE, 0xEF});
        const PointCloud cloud = readPly(bytes);
        REQUIRE(cloud.points.size() == 1);
        CHECK(cloud.points[0] == std::array<double, 3>{1, 2, 4});
    }

    TEST_CASE("double coordinates are accepted") {
        const auto cloud = readPly(bytesOf("ply\nformat ascii 1.0\nelement vertex 1\n"
                                           "property double x\nproperty double y\n"
                                           "property double z\nend_header\n0.125 -2.5 7\n"));
        REQUIRE(cloud.points.size() == 1);
        CHECK(cloud.points[0] == std::array<double, 3>{0.125, -2.5, 7});
    }

    TEST_CASE("bbox is the tight box expanded to a cube") {
        const auto cloud = readPly(bytesOf("ply\nformat ascii 1.0\nelement vertex 2\n"
                                           "property float x\nproperty float y\n"
                                           "property float z\nend_header\n"
                                           "1 2 3\n3 10 4\n"));
        CHECK(cloud.bbox.min == std::array<double, 3>{1, 2, 3});
        CHECK(cloud.bbox.edge == doctest::Approx(8.0));
    }

    TEST_CASE("a degenerate extent still yields a positive cube") {
        const auto cloud = readPly(bytesOf("ply\nformat ascii 1.0\nelement vertex 1\n"
                                           "property float x\nproperty float y\n"
                                           "property float z\nend_header\n5 5 5\n"));
        CHECK(cloud.bbox.edge > 0.0);
    }

    TEST_CASE("CRLF line endings parse like LF") {
        const auto cloud = readPly(bytesOf("ply\r\nformat ascii 1.0\r\nelement vertex 1\r\n"
                                           "property float x\r\nproperty float y\r\n"
                                           "property float z\r\nend_header\r\n1 2 3\r\n"));
        REQUIRE(cloud.points.size() == 1);
        CHECK(cloud.points[0] == std::array<double, 3>{1, 2, 3});
    }
}

TEST_SUITE("voxf") {
    TEST_CASE("minimal colorless frame is exactly 27 bytes") {
        // 4 magic + 1 version + 1 depth + 1 flags + 8 count + 12 coordinates.
        const auto bytes = writeVoxf(vt::makeFrame(1, {{0, 0, 0}}));
        CHECK(bytes.size() == 27);
    }

    TEST_CASE("round trip is bit-exact and canonical") {
        std::mt19937_64 rng(7410);
        for (bool colored : {false, true}) {
            const VoxelFrame frame = vt::randomFrame(rng, 6, 500, colored);
            const auto bytes = writeVoxf(frame);
            CHECK(writeVoxf(frame) == bytes); // two writes, same bytes
            const VoxelFrame back = readVoxf(bytes);
            CHECK(back.depth == frame.depth);
            CHECK(back.voxels == frame.voxels);
            CHECK(back.colors == frame.colors);
            CHECK(writeVoxf(back) == bytes);
        }
    }

    TEST_CASE("empty frames round-trip through the 15-byte header") {
        VoxelFrame empty;
        empty.depth = 7;
        const auto bytes = writeVoxf(empty);
        CHECK(bytes.size() == 15);
        const VoxelFrame back = readVoxf(bytes);
        CHECK(back.depth == 7);
        CHECK(back.empty());
        CHECK_FALSE(back.hasColors());
    }

    TEST_CASE("corrupt containers fail with distinct errors") {
        const VoxelFrame frame = vt::makeFrame(2, {{0, 0, 0}, {3, 2, 1}});
        const auto good = writeVoxf(frame);

        auto corrupt = good;
        corrupt[0] = 'X';
        CHECK_THROWS_WITH_AS(readVoxf(corrupt), doctest::Contains("bad magic"), CorruptFileError);

        corrupt = good;
        corrupt[4] = 2;
        CHECK_THROWS_WITH_AS(readVoxf(corrupt), doctest::Contains("version"), CorruptFileError);

        corrupt = good;
        corrupt[5] = 0;
        CHECK_THROWS_WITH_AS(readVoxf(corrupt), doctest::Contains("depth"), CorruptFileError);

        corrupt = good;
        corrupt[6] = 0x40;
        CHECK_THROWS_WITH_AS(readVoxf(corrupt), doctest::Contains("flags"), CorruptFileError);

        corrupt = good;
        corrupt.resize(corrupt.size() - 5);
        CHECK_THROWS_WITH_AS(readVoxf(corrupt), doctest::Contains("truncated"), CorruptFileError);

        corrupt = good;
        corrupt.push_back(0);
        CHECK_THROWS_WITH_AS(readVoxf(corrupt), doctest::Contains("trailing"), CorruptFileError);

        corrupt = good;
        corrupt[15] = 9; // x of the first record: out of range for depth 2
        CHECK_THROWS_WITH_AS(readVoxf(corrupt), doctest::Contains("out of range"),
                             CorruptFileError);

        // Swap the two records: Morton order violated.
        corrupt = good;
        for (int i = 0; i < 12; ++i)
            std::swap(corrupt[15 + i], corrupt[27 + i]);
        CHECK_THROWS_WITH_AS(readVoxf(corrupt), doctest::Contains("Morton"), CorruptFileError);
    }

    TEST_CASE("duplicate voxels violate the strict Morton order") {
        const VoxelFrame frame = vt::makeFrame(2, {{1, 1, 1}});
        auto bytes = writeVoxf(frame);
        // Duplicate the single record and fix the count.
        std::vector<std::uint8_t> record(bytes.begin() + 15, bytes.end());
        bytes.insert(bytes.end(), record.begin(), record.end());
        bytes[7] = 2;
        CHECK_THROWS_AS(readVoxf(bytes), CorruptFileError);
    }
}

TEST_SUITE("voxt") {
    TEST_CASE("round trip preserves the stream") {
        std::mt19937_64 rng(7420);
        const OctreeStream stream = octreeEncode(vt::randomFrame(rng, 5, 300));
        const OctreeStream back = readVoxt(writeVoxt(stream));
        CHECK(back.depth == stream.depth);
        CHECK(back.masks == stream.masks);
    }

    TEST_CASE("corrupt streams fail with distinct errors") {
        const OctreeStream stream = octreeEncode(vt::makeFrame(2, {{0, 0, 0}, {3, 3, 3}}));
        const auto good = writeVoxt(stream);

        auto corrupt = good;
        corrupt[3] = 'F';
        CHECK_THROWS_WITH_AS(readVoxt(corrupt), doctest::Contains("bad magic"), CorruptFileError);

        corrupt = good;
        corrupt[4] = 9;
        CHECK_THROWS_WITH_AS(readVoxt(corrupt), doctest::Contains("version"), CorruptFileError);

        corrupt = good;
        corrupt[14] = 0; // level-1 mask zeroed
        CHECK_THROWS_WITH_AS(readVoxt(corrupt), doctest::Contains("zero mask"), CorruptFileError);

        corrupt = good;
        corrupt.pop_back();
        CHECK_THROWS_AS(readVoxt(corrupt), CorruptFileError);

        // Level-2 mask count no longer matches the level-1 popcount.
        corrupt = good;
        corrupt[14] = 0b00000111; // promises 3 children, only 2 masks follow
        corrupt[6] += 0;          // count byte unchanged: structure mismatch
        CHECK_THROWS_AS(readVoxt(corrupt), CorruptFileError);
    }
}

TEST_SUITE("manifest") {
    TEST_CASE("comments and blank lines are dropped, order preserved") {
        const SequenceManifest manifest = readManifest("a.ply\n# c\n\nb.ply", "/data");
        REQUIRE(manifest.entries.size() == 2);
        CHECK(manifest.entries[0] == std::filesystem::path("/data/a.ply"));
        CHECK(manifest.entries[1] == std::filesystem::path("/data/b.ply"));
    }

    TEST_CASE("absolute paths bypass the base directory") {
        const SequenceManifest manifest = readManifest("/abs/f.ply\nrel.ply\n", "/base");
        CHECK(manifest.entries[0] == std::filesystem::path("/abs/f.ply"));
        CHECK(manifest.entries[1] == std::filesystem::path("/base/rel.ply"));
    }

    TEST_CASE("comment-only input is an error") {
        CHECK_THROWS_AS(readManifest("# a\n  \n#b\n", "/data"), ParseError);
        CHECK_THROWS_AS(readManifest("", "/data"), ParseError);
    }

    TEST_CASE("matches a line-filter oracle on random interleavings") {
        std::mt19937_64 rng(7430);
        std::vector<std::string> paths;
        std::string text;
        for (int i = 0; i < 10; ++i) {
            if (rng() % 2)
                text += "# comment " + std::to_string(i) + "\n";
            if (rng() % 3 == 0)
                text += "\n";
            const std::string p = "frame_" + std::to_string(rng() % 1000) + ".ply";
            paths.push_back(p);
            text += p + "\n";
        }
        const SequenceManifest manifest = readManifest(text, "base");
        REQUIRE(manifest.entries.size() == paths.size());
        for (std::size_t i = 0; i < paths.size(); ++i)
            CHECK(manifest.entries[i] == std::filesystem::path("base") / paths[i]);
    }
}

TEST_SUITE("file io") {
    TEST_CASE("atomic write then read round-trips") {
        const auto dir = std::filesystem::temp_directory_path() / "voxsr_io_test";
        std::filesystem::create_directories(dir);
        const auto path = dir / "frame.voxf";
        const auto bytes = writeVoxf(vt::makeFrame(3, {{1, 2, 3}, {4, 5, 6}}));
        writeFileAtomic(path, bytes);
        CHECK(readFileBytes(path) == bytes);
        CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("missing files raise an error") {
        CHECK_THROWS_AS(readFileBytes("/nonexistent/voxsr/file.bin"), Error);
    }
}
