#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>

#include "molcav/state.hpp"

namespace molcav {

// Binary checkpoint, all fields little-endian:
//
//   offset  size  field
//        0     8  magic "MOLCAVCK"
//        8     4  u32 format version (1)
//       12     4  u32 reserved (0)
//       16    24  u64 n1, n2, nf
//       40     8  f64 dt (atomic units)
//       48     8  u64 step count
//       56     8  u64 config physics hash
//       64  16*N  N = n1*n2*nf amplitudes as (f64 re, f64 im), flat index order
//   64+16N     4  u32 CRC-32 (zlib polynomial) of every preceding byte

struct Checkpoint {
  StateVector state;
  double dt = 0.0;
  std::uint64_t step = 0;
  std::uint64_t config_hash = 0;
};

inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Writes via a temporary file and rename so a partial file is never visible.
void write_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);
/// Throws FormatError on bad magic, truncated data or checksum mismatch.
Checkpoint read_checkpoint(const std::filesystem::path& path);

}  // namespace molcav
