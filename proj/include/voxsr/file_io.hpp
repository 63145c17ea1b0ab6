// SPDX-FileCopyrightText: 2026 voxsr authors
// SPDX-License-Identifier: Apache-2.0

#ifndef VOXSR_FILE_IO_HPP
#define VOXSR_FILE_IO_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace voxsr {

// Throws Error when the file cannot be opened or read.
std::vector<std::uint8_t> readFileBytes(const std::filesystem::path& path);

// Writes to a temporary sibling and renames over the target, so readers
// never observe a partially written file.
void writeFileAtomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

} // namespace voxsr

#endif // VOXSR_FILE_IO_HPP
