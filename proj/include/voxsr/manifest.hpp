// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_MANIFEST_HPP
#define VOXSR_MANIFEST_HPP

#include <filesystem>
#include <string_view>
#include <vector>

namespace voxsr {

// Ordered list of frame files, one per line; '#' comments and blank lines
// are ignored and relative paths resolve against baseDir.
struct SequenceManifest {
    std::vector<std::filesystem::path> entries; // already resolved
    std::filesystem::path baseDir;
};

// Throws ParseError when no usable entries remain.
SequenceManifest readManifest(std::string_view text, const std::filesystem::path& baseDir);

} // namespace voxsr

#endif // VOXSR_MANIFEST_HPP
