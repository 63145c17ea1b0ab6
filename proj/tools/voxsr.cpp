// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "voxsr/errors.hpp"
#include "voxsr/file_io.hpp"
#include "voxsr/gop.hpp"
#include "voxsr/metrics.hpp"
#include "voxsr/octree.hpp"
#include "voxsr/ply_io.hpp"
#include "voxsr/super_resolution.hpp"
#include "voxsr/voxf_io.hpp"

namespace {

std::string formatDb(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", v);
    return buffer;
}

voxsr::VoxelFrame loadFrame(const std::string& path) {
    return voxsr::readVoxf(voxsr::readFileBytes(path));
}

void printProjection(const voxsr::MetricReport& report) {
    for (std::size_t f = 0; f < voxsr::kFaces.size(); ++f)
        std::cout << "proj_face_psnr_db "
                  << voxsr::faceName(voxsr::kFaces[f].first, voxsr::kFaces[f].second) << ' '
                  << formatDb(report.facePsnr[f]) << '\n';
    std::cout << "proj_mean_psnr_db " << formatDb(report.meanPsnr) << '\n';
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", report.occupancyAgreement);
    std::cout << "occupancy_agreement " << buffer << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mixed-resolution voxel super-resolution toolkit"};
    app.require_subcommand(1);

    std::string input, output, refInput;
    std::string manifestPath, csvPath;
    std::vector<std::string> refPaths;
    int depth = 9;
    int period = 2;
    int window = 4;
    std::string kind = "proj";

    auto* voxelizeCmd = app.add_subcommand("voxelize", "Quantize a PLY point cloud to a voxel frame");
    voxelizeCmd->add_option("input", input, "input .ply")->required();
    voxelizeCmd->add_option("--depth", depth, "octree depth J")->capture_default_str();
    voxelizeCmd->add_option("--out", output, "output .voxf")->required();

    auto* downsampleCmd = app.add_subcommand("downsample", "Halve a frame's resolution");
    downsampleCmd->add_option("input", input, "input .voxf")->required();
    downsampleCmd->add_option("--out", output, "output .voxf")->required();

    auto* upsampleCmd = app.add_subcommand("upsample", "Naive low-pass upsample (all 8 children)");
    upsampleCmd->add_option("input", input, "input .voxf")->required();
    upsampleCmd->add_option("--out", output, "output .voxf")->required();

    auto* superresCmd =
        app.add_subcommand("superres", "Super-resolve a low-resolution frame from references");
    superresCmd->add_option("input", input, "low-resolution .voxf")->required();
    superresCmd->add_option("--ref", refPaths, "full-resolution reference .voxf (repeatable)")
        ->required();
    superresCmd->add_option("--window", window, "Chebyshev search radius")->capture_default_str();
    superresCmd->add_option("--out", output, "output .voxf")->required();

    auto* octreeCmd = app.add_subcommand("octree", "Octree stream codec");
    octreeCmd->require_subcommand(1);
    auto* encodeCmd = octreeCmd->add_subcommand("encode", "frame -> octree stream");
    encodeCmd->add_option("input", input, "input .voxf")->required();
    encodeCmd->add_option("--out", output, "output .voxt")->required();
    auto* decodeCmd = octreeCmd->add_subcommand("decode", "octree stream -> frame");
    decodeCmd->add_option("input", input, "input .voxt")->required();
    decodeCmd->add_option("--out", output, "output .voxf")->required();

    auto* metricCmd = app.add_subcommand("metric", "Score frame A against frame B");
    metricCmd->add_option("a", input, "frame A .voxf")->required();
    metricCmd->add_option("b", refInput, "frame B .voxf")->required();
    metricCmd->add_option("--kind", kind, "proj | d1 | both")
        ->check(CLI::IsMember({"proj", "d1", "both"}))
        ->capture_default_str();

    auto* gopCmd = app.add_subcommand("gop", "Mixed-resolution sequence experiment");
    gopCmd->add_option("--manifest", manifestPath, "sequence manifest (one frame file per line)")
        ->required();
    gopCmd->add_option("--depth", depth, "octree depth J")->capture_default_str();
    gopCmd->add_option("--period", period, "anchor period N")->capture_default_str();
    gopCmd->add_option("--window", window, "Chebyshev search radius")->capture_default_str();
    gopCmd->add_option("--csv", csvPath, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << '\n' << app.help() << '\n';
        return 1;
    }

    try {
        if (voxelizeCmd->parsed()) {
            const voxsr::PointCloud cloud = voxsr::readPly(voxsr::readFileBytes(input));
            const auto bytes = voxsr::writeVoxf(voxsr::voxelize(cloud, depth));
            voxsr::writeFileAtomic(output, bytes);
        } else if (downsampleCmd->parsed()) {
            const auto bytes = voxsr::writeVoxf(voxsr::downsample(loadFrame(input)));
            voxsr::writeFileAtomic(output, bytes);
        } else if (upsampleCmd->parsed()) {
            const auto bytes = voxsr::writeVoxf(voxsr::naiveUpsample(loadFrame(input)));
            voxsr::writeFileAtomic(output, bytes);
        } else if (superresCmd->parsed()) {
            std::vector<voxsr::VoxelFrame> refs;
            refs.reserve(refPaths.size());
            for (const std::string& path : refPaths)
                refs.push_back(loadFrame(path));
            const voxsr::VoxelFrame sr =
                voxsr::superResolve(loadFrame(input), refs, voxsr::MatchParams{window});
            voxsr::writeFileAtomic(output, voxsr::writeVoxf(sr));
        } else if (encodeCmd->parsed()) {
            const auto bytes = voxsr::writeVoxt(voxsr::octreeEncode(loadFrame(input)));
            voxsr::writeFileAtomic(output, bytes);
        } else if (decodeCmd->parsed()) {
            const auto bytes = voxsr::writeVoxf(voxsr::octreeDecode(voxsr::readVoxt(
                voxsr::readFileBytes(input))));
            voxsr::writeFileAtomic(output, bytes);
        } else if (metricCmd->parsed()) {
            const voxsr::VoxelFrame a = loadFrame(input);
            const voxsr::VoxelFrame b = loadFrame(refInput);
            if (kind == "proj" || kind == "both")
                printProjection(voxsr::projectionPsnr(a, b));
            if (kind == "d1" || kind == "both")
                std::cout << "d1_psnr_db " << formatDb(voxsr::d1Psnr(a, b)) << '\n';
        } else if (gopCmd->parsed()) {
            const auto manifestBytes = voxsr::readFileBytes(manifestPath);
            const voxsr::SequenceManifest manifest = voxsr::readManifest(
                std::string_view(reinterpret_cast<const char*>(manifestBytes.data()),
                                 manifestBytes.size()),
                std::filesystem::path(manifestPath).parent_path());
            const voxsr::SequenceReport report =
                voxsr::gopSimulate(manifest, depth, voxsr::GopPattern{period},
                                   voxsr::MatchParams{window});
            const std::string csv = voxsr::toCsv(report);
            voxsr::writeFileAtomic(csvPath,
                                   std::span(reinterpret_cast<const std::uint8_t*>(csv.data()),
                                             csv.size()));
            std::cout << "mean_gain_db " << formatDb(report.meanGain) << '\n';
        }
    } catch (const voxsr::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
