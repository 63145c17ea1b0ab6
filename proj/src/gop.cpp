// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/gop.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "voxsr/errors.hpp"
#include "voxsr/file_io.hpp"
#include "voxsr/metrics.hpp"
#include "voxsr/ply_io.hpp"

namespace voxsr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int resolveWorkers(int requested, std::size_t tasks) {
    int workers = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1)
        workers = 1;
    if (const char* env = std::getenv("VOXSR_WORKERS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1)
            workers = std::min<long>(workers, cap);
    }
    return static_cast<int>(std::min<std::size_t>(workers, std::max<std::size_t>(tasks, 1)));
}

// Runs fn(0..n) on a small pool; rethrows the lowest-index failure so error
// reporting does not depend on scheduling.
void parallelFor(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (n == 0)
        return;
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (std::thread& t : pool)
        t.join();
    for (std::size_t i = 0; i < n; ++i)
        if (errors[i])
            std::rethrow_exception(errors[i]);
}

std::string formatDb(double v) {
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", v);
    return buffer;
}

} // namespace

SequenceReport gopSimulate(const SequenceManifest& manifest, int depth, const GopPattern& pattern,
                           const MatchParams& params, int workers) {
    if (pattern.period < 2)
        throw ParameterError("gop: period must be >= 2");
    const std::size_t frameCount = manifest.entries.size();

    // Frame i is a full-resolution anchor iff i is a multiple of the period.
    auto isAnchor = [&](std::size_t i) { return i % static_cast<std::size_t>(pattern.period) == 0; };
    std::vector<std::size_t> lowFrames;
    for (std::size_t i = 0; i < frameCount; ++i)
        if (!isAnchor(i))
            lowFrames.push_back(i);
    if (lowFrames.empty())
        throw ParameterError("gop: no low-resolution frames (manifest of " +
                             std::to_string(frameCount) + " frames with period " +
                             std::to_string(pattern.period) + " yields an empty report)");

    const int pool = resolveWorkers(workers, frameCount);

    std::vector<PointCloud> clouds(frameCount);
    parallelFor(frameCount, pool, [&](std::size_t i) {
        try {
            clouds[i] = readPly(readFileBytes(manifest.entries[i]));
        } catch (const Error& e) {
            throw Error("frame " + std::to_string(i) + " (" + manifest.entries[i].string() +
                        "): " + e.what());
        }
    });

    // One shared coordinate frame: union of the per-frame boxes, cubified.
    BoundingBox global = clouds[0].bbox;
    std::array<double, 3> hi{global.min[0] + global.edge, global.min[1] + global.edge,
                             global.min[2] + global.edge};
    for (const PointCloud& cloud : clouds)
        for (int a = 0; a < 3; ++a) {
            global.min[a] = std::min(global.min[a], cloud.bbox.min[a]);
            hi[a] = std::max(hi[a], cloud.bbox.min[a] + cloud.bbox.edge);
        }
    global.edge = std::max({hi[0] - global.min[0], hi[1] - global.min[1], hi[2] - global.min[2]});

    std::vector<VoxelFrame> full(frameCount);
    parallelFor(frameCount, pool, [&](std::size_t i) {
        clouds[i].bbox = global;
        full[i] = voxelize(clouds[i], depth);
    });

    SequenceReport report;
    report.rows.resize(lowFrames.size());
    parallelFor(lowFrames.size(), pool, [&](std::size_t n) {
        const std::size_t i = lowFrames[n];
        SequenceRow row;
        row.frameIndex = static_cast<int>(i);
        row.refBefore = static_cast<int>(i - i % pattern.period);
        const std::size_t after = i - i % pattern.period + pattern.period;
        if (after < frameCount)
            row.refAfter = static_cast<int>(after);

        std::vector<VoxelFrame> refs{full[row.refBefore]};
        if (row.refAfter)
            refs.push_back(full[*row.refAfter]);

        const VoxelFrame low = downsample(full[i]);
        const VoxelFrame sr = superResolve(low, refs, params);
        const VoxelFrame baseline = naiveUpsample(low);

        row.srProjPsnr = projectionPsnr(sr, full[i]).meanPsnr;
        row.baseProjPsnr = projectionPsnr(baseline, full[i]).meanPsnr;
        row.srD1Psnr = d1Psnr(sr, full[i]);
        row.baseD1Psnr = d1Psnr(baseline, full[i]);
        if (std::isinf(row.srProjPsnr))
            row.gain = kInf;
        else if (std::isinf(row.baseProjPsnr))
            row.gain = -kInf;
        else
            row.gain = row.srProjPsnr - row.baseProjPsnr;
        report.rows[n] = row;
    });

    double gainSum = 0.0;
    int finiteRows = 0;
    for (const SequenceRow& row : report.rows)
        if (std::isfinite(row.gain)) {
            gainSum += row.gain;
            ++finiteRows;
        }
    report.meanGain = finiteRows > 0 ? gainSum / finiteRows : kInf;
    return report;
}

std::string toCsv(const SequenceReport& report) {
    std::string csv = "frame_index,ref_before,ref_after,sr_proj_psnr_db,base_proj_psnr_db,"
                      "sr_d1_psnr_db,base_d1_psnr_db,gain_db\n";
    for (const SequenceRow& row : report.rows) {
        csv += std::to_string(row.frameIndex);
        csv += ',';
        csv += std::to_string(row.refBefore);
        csv += ',';
        if (row.refAfter)
            csv += std::to_string(*row.refAfter);
        csv += ',';
        csv += formatDb(row.srProjPsnr);
        csv += ',';
        csv += formatDb(row.baseProjPsnr);
        csv += ',';
        csv += formatDb(row.srD1Psnr);
        csv += ',';
        csv += formatDb(row.baseD1Psnr);
        csv += ',';
        csv += formatDb(row.gain);
        csv += '\n';
    }
    csv += "summary,,,,,,," + formatDb(report.meanGain) + "\n";
    return csv;
}

} // namespace voxsr
