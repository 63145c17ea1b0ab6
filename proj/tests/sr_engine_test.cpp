// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "voxsr/errors.hpp"
#include "voxsr/super_resolution.hpp"

#include "test_support.hpp"

using namespace voxsr;
namespace vt = voxsr::test;

TEST_SUITE("neighborhood") {
    TEST_CASE("isolated voxel has an all-zero descriptor") {
        const VoxelFrame frame = vt::makeFrame(3, {{4, 4, 4}});
        CHECK(neighborhood(frame, {4, 4, 4}).bits == 0);
    }

    TEST_CASE("fully enclosed voxel sets all 26 bits") {
        std::vector<vt::Coord> coords;
        for (std::uint32_t x = 3; x <= 5; ++x)
            for (std::uint32_t y = 3; y <= 5; ++y)
                for (std::uint32_t z = 3; z <= 5; ++z)
                    if (!(x == 4 && y == 4 && z == 4))
                        coords.push_back({x, y, z});
        const VoxelFrame frame = vt::makeFrame(3, coords);
        CHECK(neighborhood(frame, {4, 4, 4}).bits == 0x3FFFFFF);
    }

    TEST_CASE("out-of-bounds neighbors read as unoccupied") {
        // Fill the whole 2x2x2 grid; the corner still only sees 7 neighbors.
        std::vector<vt::Coord> coords;
        for (std::uint32_t c = 0; c < 8; ++c)
            coords.push_back({(c >> 2) & 1, (c >> 1) & 1, c & 1});
        const VoxelFrame frame = vt::makeFrame(1, coords);
        const auto cells = vt::coordSet(frame);
        CHECK(neighborhood(frame, {0, 0, 0}).bits ==
              vt::neighborhoodOracle(cells, frame.gridSize(), {0, 0, 0}));
        CHECK(__builtin_popcount(neighborhood(frame, {0, 0, 0}).bits) == 7);
    }

    TEST_CASE("matches the offset-loop oracle on random frames") {
        std::mt19937_64 rng(7200);
        const VoxelFrame frame = vt::randomFrame(rng, 4, 500);
        const auto cells = vt::coordSet(frame);
        std::uniform_int_distribution<std::uint32_t> dist(0, frame.gridSize() - 1);
        for (int i = 0; i < 300; ++i) {
            const VoxelCoord coord{dist(rng), dist(rng), dist(rng)};
            CHECK(neighborhood(frame, coord).bits ==
                  vt::neighborhoodOracle(cells, frame.gridSize(), vt::coordOf(coord)));
        }
    }
}

TEST_SUITE("matchCost") {
    TEST_CASE("identical descriptors cost nothing") {
        CHECK(matchCost(Descriptor26{0x2ABCDEF}, Descriptor26{0x2ABCDEF}) == 0);
    }

    TEST_CASE("complementary descriptors cost 26") {
        const std::uint32_t bits = 0x155AA55;
        CHECK(matchCost(Descriptor26{bits}, Descriptor26{~bits & 0x3FFFFFF}) == 26);
    }

    TEST_CASE("matches the bit-loop oracle") {
        std::mt19937_64 rng(7210);
        std::uniform_int_distribution<std::uint32_t> dist(0, 0x3FFFFFF);
        for (int i = 0; i < 1000; ++i) {
            const std::uint32_t a = dist(rng), b = dist(rng);
            CHECK(matchCost(Descriptor26{a}, Descriptor26{b}) == vt::hammingOracle(a, b));
        }
    }
}

TEST_SUITE("findBestMatch") {
    TEST_CASE("the query coordinate with an identical neighborhood wins") {
        std::mt19937_64 rng(7220);
        const VoxelFrame low = vt::randomBlobFrame(rng, 4, 200);
        for (const VoxelCoord& coord : low.voxels) {
            const auto result = findBestMatch(low, coord, low, MatchParams{3});
            REQUIRE(result.has_value());
            CHECK(result->candidate == coord);
            CHECK(result->cost == 0);
            CHECK(result->tieDistance == 0);
        }
    }

    TEST_CASE("an empty window returns none") {
        const VoxelFrame target = vt::makeFrame(3, {{0, 0, 0}});
        const VoxelFrame ref = vt::makeFrame(3, {{7, 7, 7}});
        CHECK_FALSE(findBestMatch(target, {0, 0, 0}, ref, MatchParams{2}).has_value());
        CHECK(findBestMatch(target, {0, 0, 0}, ref, MatchParams{7}).has_value());
    }

    TEST_CASE("window zero restricts to the identical coordinate") {
        const VoxelFrame target = vt::makeFrame(3, {{2, 2, 2}});
        const VoxelFrame refHit = vt::makeFrame(3, {{2, 2, 2}, {3, 2, 2}});
        const VoxelFrame refMiss = vt::makeFrame(3, {{3, 2, 2}});
        const auto hit = findBestMatch(target, {2, 2, 2}, refHit, MatchParams{0});
        REQUIRE(hit.has_value());
        CHECK(hit->candidate == VoxelCoord{2, 2, 2});
        CHECK_FALSE(findBestMatch(target, {2, 2, 2}, refMiss, MatchParams{0}).has_value());
    }

    TEST_CASE("matches the exhaustive-search oracle") {
        std::mt19937_64 rng(7221);
        for (int round = 0; round < 10; ++round) {
            const VoxelFrame target = vt::randomBlobFrame(rng, 4, 150);
            const VoxelFrame ref = vt::randomBlobFrame(rng, 4, 150);
            const auto targetCells = vt::coordSet(target);
            const std::vector<std::set<vt::Coord>> refCells{vt::coordSet(ref)};
            for (const VoxelCoord& coord : target.voxels) {
                const auto got = findBestMatch(target, coord, ref, MatchParams{3});
                const auto expected =
                    vt::bestMatchOracle(targetCells, target.gridSize(), vt::coordOf(coord),
                                        refCells, 3);
                REQUIRE(got.has_value() == expected.has_value());
                if (got) {
                    CHECK(vt::coordOf(got->candidate) == expected->candidate);
                    CHECK(got->cost == expected->cost);
                    CHECK(got->tieDistance == expected->dist2);
                }
            }
        }
    }

    TEST_CASE("depth mismatch and negative window are rejected") {
        const VoxelFrame a = vt::makeFrame(3, {{0, 0, 0}});
        const VoxelFrame b = vt::makeFrame(4, {{0, 0, 0}});
        CHECK_THROWS_AS(findBestMatch(a, {0, 0, 0}, b, MatchParams{2}), ParameterError);
        CHECK_THROWS_AS(findBestMatch(a, {0, 0, 0}, a, MatchParams{-1}), ParameterError);
    }
}

TEST_SUITE("superResolve") {
    TEST_CASE("direct mask transfer from a single reference") {
        const VoxelFrame targetLow = vt::makeFrame(1, {{0, 0, 0}});
        const VoxelFrame ref = vt::makeFrame(2, {{0, 0, 0}, {1, 1, 1}});
        const VoxelFrame sr = superResolve(targetLow, {ref}, MatchParams{0});
        CHECK(sr.depth == 2);
        REQUIRE(sr.size() == 2);
        CHECK(sr.voxels[0] == VoxelCoord{0, 0, 0});
        CHECK(sr.voxels[1] == VoxelCoord{1, 1, 1});
    }

    TEST_CASE("empty windows everywhere degrade to the naive upsample") {
        std::map<vt::Coord, Rgb> colors{{{0, 0, 0}, Rgb{9, 8, 7}}};
        const VoxelFrame targetLow = vt::makeFrame(2, {{0, 0, 0}}, &colors);
        const VoxelFrame ref = vt::makeFrame(3, {{7, 7, 7}});
        const VoxelFrame sr = superResolve(targetLow, {ref}, MatchParams{1});
        const VoxelFrame naive = naiveUpsample(targetLow);
        CHECK(sr.voxels == naive.voxels);
        CHECK(sr.colors == naive.colors);
    }

    TEST_CASE("self-reference identity recovers the original geometry") {
        std::mt19937_64 rng(7230);
        for (int round = 0; round < 20; ++round) {
            const int depth = 3 + round % 4;
            const VoxelFrame full = vt::randomBlobFrame(rng, depth, 150 + 40 * round);
            const VoxelFrame low = downsample(full);
            for (int window : {0, 2, 4}) {
                const VoxelFrame sr = superResolve(low, {full}, MatchParams{window});
                CHECK(sr.depth == full.depth);
                CHECK(sr.voxels == full.voxels);
            }
        }
    }

    TEST_CASE("downsampling the output recovers the input voxel set") {
        std::mt19937_64 rng(7231);
        for (int round = 0; round < 10; ++round) {
            const VoxelFrame low = vt::randomBlobFrame(rng, 3, 60);
            const VoxelFrame ref = vt::randomBlobFrame(rng, 4, 300);
            const VoxelFrame sr = superResolve(low, {ref}, MatchParams{4});
            const VoxelFrame back = downsample(sr);
            CHECK(back.voxels == low.voxels);
            CHECK(sr.size() >= low.size());
            CHECK(sr.size() <= 8 * low.size());
        }
    }

    TEST_CASE("children inherit the low-resolution parent color") {
        std::map<vt::Coord, Rgb> colors{{{1, 1, 1}, Rgb{200, 100, 50}}};
        const VoxelFrame targetLow = vt::makeFrame(2, {{1, 1, 1}}, &colors);
        const VoxelFrame ref = vt::makeFrame(3, {{2, 2, 2}, {3, 3, 3}});
        const VoxelFrame sr = superResolve(targetLow, {ref}, MatchParams{4});
        REQUIRE(sr.hasColors());
        for (const Rgb& c : sr.colors)
            CHECK(c == Rgb{200, 100, 50});
    }

    TEST_CASE("earlier reference wins cross-reference ties") {
        const VoxelFrame targetLow = vt::makeFrame(1, {{0, 0, 0}});
        const VoxelFrame refA = vt::makeFrame(2, {{0, 0, 0}});
        std::vector<vt::Coord> allChildren;
        for (std::uint32_t c = 0; c < 8; ++c)
            allChildren.push_back({(c >> 2) & 1, (c >> 1) & 1, c & 1});
        const VoxelFrame refB = vt::makeFrame(2, allChildren);

        const VoxelFrame sr = superResolve(targetLow, {refA, refB}, MatchParams{0});
        REQUIRE(sr.size() == 1); // refA's single-child mask, not refB's 0xFF
        CHECK(sr.voxels[0] == VoxelCoord{0, 0, 0});

        const VoxelFrame srSwapped = superResolve(targetLow, {refB, refA}, MatchParams{0});
        CHECK(srSwapped.size() == 8);
    }

    TEST_CASE("matches the brute-force oracle, single and pooled references") {
        std::mt19937_64 rng(7232);
        for (int round = 0; round < 6; ++round) {
            const VoxelFrame low = vt::randomBlobFrame(rng, 3, 50, true);
            std::vector<VoxelFrame> refs{vt::randomBlobFrame(rng, 4, 350)};
            if (round % 2 == 1)
                refs.push_back(vt::randomBlobFrame(rng, 4, 350));
            const VoxelFrame sr = superResolve(low, refs, MatchParams{4});
            const VoxelFrame expected = vt::superResolveOracle(low, refs, 4);
            CHECK(sr.depth == expected.depth);
            CHECK(sr.voxels == expected.voxels);
            CHECK(sr.colors == expected.colors);
        }
    }

    TEST_CASE("an empty target yields an empty finer frame") {
        VoxelFrame low;
        low.depth = 3;
        const VoxelFrame sr = superResolve(low, {vt::makeFrame(4, {{0, 0, 0}})}, MatchParams{4});
        CHECK(sr.empty());
        CHECK(sr.depth == 4);
    }

    TEST_CASE("parameter validation") {
        const VoxelFrame low = vt::makeFrame(2, {{0, 0, 0}});
        const VoxelFrame ref = vt::makeFrame(3, {{0, 0, 0}});
        CHECK_THROWS_AS(superResolve(low, {}, MatchParams{4}), ParameterError);
        CHECK_THROWS_AS(superResolve(low, {vt::makeFrame(2, {{0, 0, 0}})}, MatchParams{4}),
                        ParameterError);
        CHECK_THROWS_AS(superResolve(low, {ref}, MatchParams{-2}), ParameterError);
    }
}
