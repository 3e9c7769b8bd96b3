#pragma once

#include <filesystem>

#include "zsl/solver.hpp"

namespace zsl {

struct Checkpoint {
  ZakharovState state;
  double lambda = 1.0;
};

// File layout: one UTF-8 JSON header line
//   {"format":"zsl-checkpoint","version":1,"nx":..,"ny":..,"lx":..,"ly":..,
//    "t":..,"lambda":..,"fields":[{"name":"u","kind":"complex"},...]}
// followed by the fields in header order as little-endian float64, row-major
// (index ix * ny + iy). Complex fields are interleaved re/im.

/// Throws IoError if the file cannot be written.
void write_checkpoint(const std::filesystem::path& path, const ZakharovState& s, double lambda);
/// Throws IoError on a missing, truncated or malformed file.
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace zsl
