#pragma once

#include <filesystem>
#include <span>

#include "zkprov/common/bytes.h"

namespace zkprov {

Bytes read_file(const std::filesystem::path& path);
// Writes through a temporary sibling and renames; mode applies to the final file.
void write_file(const std::filesystem::path& path, std::span<const uint8_t> data,
                std::filesystem::perms mode = std::filesystem::perms::owner_read | std::filesystem::perms::owner_write |
                                              std::filesystem::perms::group_read | std::filesystem::perms::others_read);

// Appends a SHA-256 trailer over everything written so far.
Bytes seal(ByteWriter&& w);
// Checks and strips the trailer; throws DecodeError on mismatch.
std::span<const uint8_t> unseal(std::span<const uint8_t> data);

}  // namespace zkprov
