// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_GOP_HPP
#define VOXSR_GOP_HPP

#include <optional>
#include <string>
#include <vector>

#include "voxsr/manifest.hpp"
#include "voxsr/super_resolution.hpp"

namespace voxsr {

// Frames 0, N, 2N, ... stay full-resolution anchors; all others are
// downsampled and then super-resolved from their nearest anchors.
struct GopPattern {
    int period = 2; // N >= 2
};

// One row per low-resolution frame. PSNR fields may be infinity; `gain` is
// srProjPsnr - baseProjPsnr (infinite when either side is).
struct SequenceRow {
    int frameIndex = 0;
    int refBefore = 0;
    std::optional<int> refAfter;
    double srProjPsnr = 0.0;
    double baseProjPsnr = 0.0;
    double srD1Psnr = 0.0;
    double baseD1Psnr = 0.0;
    double gain = 0.0;
};

struct SequenceReport {
    std::vector<SequenceRow> rows; // ordered by frame index
    double meanGain = 0.0;         // over rows with finite gain; inf when none
};

// Runs the mixed-resolution experiment: every frame is voxelized at `depth`
// against the shared global bounding box (union of per-frame boxes,
// cubified); each non-anchor frame is downsampled, reconstructed by
// super-resolution from its nearest anchors and by naive upsampling, and
// both reconstructions are scored against the full-resolution voxelization.
//
// `workers` caps frame-level parallelism; 0 picks the hardware concurrency,
// further capped by the VOXSR_WORKERS environment variable when set.
// Throws with the frame index when an entry cannot be loaded, and
// ParameterError when no frame is low-resolution.
SequenceReport gopSimulate(const SequenceManifest& manifest, int depth, const GopPattern& pattern,
                           const MatchParams& params, int workers = 0);

// Fixed columns: frame_index, ref_before, ref_after, sr_proj_psnr_db,
// base_proj_psnr_db, sr_d1_psnr_db, base_d1_psnr_db, gain_db, then a final
// `summary` row carrying the mean gain. Infinities serialize literally as
// `inf`. Byte-identical for identical reports.
std::string toCsv(const SequenceReport& report);

} // namespace voxsr

#endif // VOXSR_GOP_HPP
