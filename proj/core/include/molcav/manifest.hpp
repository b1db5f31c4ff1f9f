#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "molcav/config.hpp"
#include "molcav/lightmatter.hpp"

namespace molcav {

struct ManifestInfo {
  std::string command;  // run, sweep, wigner
  std::string status = "ok";
  SimulationConfig config;
  /// Command-line overrides as (flag, value), in the order given.
  std::vector<std::pair<std::string, std::string>> overrides;
  bool has_coupling = false;
  CouplingReport coupling;
  std::vector<std::pair<std::string, double>> timings_s;
  /// Free-form labelled facts (integrator, negativity method, thread count).
  std::vector<std::pair<std::string, std::string>> notes;
  std::vector<std::string> warnings;
};

std::uint32_t file_crc32(const std::filesystem::path& path);

/// File name of the manifest inside an output directory.
inline constexpr const char* kManifestName = "manifest.json";

/// Lists every regular file under `dir` (recursively, relative paths, sorted)
/// with size and CRC-32, then writes dir/manifest.json atomically. Call last.
void write_manifest(const std::filesystem::path& dir, const ManifestInfo& info);

/// Relative paths recorded in a manifest.
std::vector<std::string> manifest_files(const std::filesystem::path& manifest_path);

}  // namespace molcav
