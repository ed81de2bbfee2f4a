#pragma once

#include <filesystem>

#include "ctsd/mask.hpp"

namespace ctsd {

/// Reads a binary PGM ("P5", maxval 255); pixel values >= 128 become
/// foreground. Throws MalformedHeader / UnsupportedMaxval / TruncatedData /
/// IoError.
BinaryMask read_pgm(const std::filesystem::path& path);

/// Writes a binary PGM with foreground 255, background 0. Byte-deterministic.
void write_pgm(const BinaryMask& mask, const std::filesystem::path& path);

}  // namespace ctsd
