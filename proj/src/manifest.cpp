// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#include "voxsr/manifest.hpp"

#include <string>

#include "voxsr/errors.hpp"

namespace voxsr {

namespace {

std::string_view trimmed(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

} // namespace

SequenceManifest readManifest(std::string_view text, const std::filesystem::path& baseDir) {
    SequenceManifest manifest;
    manifest.baseDir = baseDir;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line =
            text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        line = trimmed(line);
        if (!line.empty() && line.front() != '#') {
            std::filesystem::path entry{std::string(line)};
            manifest.entries.push_back(entry.is_absolute() ? entry : baseDir / entry);
        }
        if (eol == std::string_view::npos)
            break;
        pos = eol + 1;
    }

    if (manifest.entries.empty())
        throw ParseError("manifest: no usable entries (only comments or blank lines)");
    return manifest;
}

} // namespace voxsr
