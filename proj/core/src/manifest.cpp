#include "molcav/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include <json.hpp>
#include <zlib.h>

#include "molcav/error.hpp"
#include "molcav/units.hpp"

#ifndef MOLCAV_VERSION
#define MOLCAV_VERSION "unknown"
#endif

namespace molcav {

using nlohmann::json;

std::uint32_t file_crc32(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot read " + path.string());
  uLong c = crc32(0L, Z_NULL, 0);
  std::vector<char> buf(1 << 16);
  while (in) {
    in.read(buf.data(), static_cast<std::streamsize>(buf.size()));
    const auto got = in.gcount();
    if (got > 0) c = crc32(c, reinterpret_cast<const Bytef*>(buf.data()), static_cast<uInt>(got));
  }
  return static_cast<std::uint32_t>(c);
}

namespace {

json config_json(const SimulationConfig& c) {
  auto grid = [](const GridBasis1D& g) {
    return json{{"n_points", g.n_points}, {"spacing_bohr", g.spacing}, {"origin_bohr", g.origin}};
  };
  json j;
  j["grid1"] = grid(c.grid1);
  j["grid2"] = grid(c.grid2);
  j["fock_levels"] = c.fock.n_levels;
  j["omega_au"] = c.omega ? json(*c.omega) : json("auto");
  j["morse"] = {{"D_e_hartree", c.morse.D_e}, {"r_e_bohr", c.morse.r_e}, {"a_inv_bohr", c.morse.a}};
  j["mecke"] = {{"gamma", c.mecke.gamma},
                {"delta", c.mecke.delta},
                {"origin", c.mecke.origin == DipoleOrigin::Absolute ? "absolute" : "equilibrium"}};
  j["reduced_mass_me"] = effective_reduced_mass(c);
  j["reduced_mass_source"] = c.reduced_mass ? "config" : "auto";
  j["lambda_au"] = c.lambda;
  j["beta"] = {c.beta.real(), c.beta.imag()};
  j["dt_au"] = c.dt;
  j["t_final_fs"] = c.t_final;
  j["total_steps"] = total_steps(c);
  j["output_stride"] = c.output_stride;
  j["krylov_dim"] = c.krylov_dim;
  j["krylov_tol"] = c.krylov_tol;
  j["renormalize"] = c.renormalize;
  j["n_vib_project"] = c.n_vib_project;
  j["checkpoint_stride"] = c.checkpoint_stride;
  j["wigner_times_fs"] = c.wigner_times;
  j["wigner_points"] = c.wigner_points;
  j["wigner_range"] = effective_wigner_range(c);
  j["physics_hash"] = physics_hash(c);
  return j;
}

}  // namespace

void write_manifest(const std::filesystem::path& dir, const ManifestInfo& info) {
  namespace fs = std::filesystem;
  json files = json::array();
  std::vector<fs::path> paths;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir);
    if (rel == kManifestName || rel.extension() == ".tmp") continue;
    paths.push_back(rel);
  }
  std::sort(paths.begin(), paths.end());
  for (const auto& rel : paths) {
    char hex[9];
    std::snprintf(hex, sizeof hex, "%08x", file_crc32(dir / rel));
    files.push_back({{"path", rel.generic_string()}, {"bytes", fs::file_size(dir / rel)}, {"crc32", hex}});
  }

  json m;
  m["tool"] = "molcav";
  m["version"] = MOLCAV_VERSION;
  m["command"] = info.command;
  m["status"] = info.status;
  m["config"] = config_json(info.config);
  m["config_text"] = serialize_config(info.config);
  json ov = json::array();
  for (const auto& [k, v] : info.overrides) ov.push_back({{"flag", k}, {"value", v}});
  m["overrides"] = ov;
  if (info.has_coupling) {
    const auto& c = info.coupling;
    m["coupling"] = {{"lambda_au", c.lambda},   {"omega_au", c.omega},
                     {"omega_cm", units::hartree_to_wavenumber(c.omega)},
                     {"omega01_cm", c.omega01}, {"d01_bohr", c.d01},
                     {"g_au", c.g},             {"eta", c.eta}};
  }
  json t = json::object();
  for (const auto& [k, v] : info.timings_s) t[k] = v;
  m["timings_s"] = t;
  json n = json::object();
  for (const auto& [k, v] : info.notes) n[k] = v;
  m["notes"] = n;
  m["warnings"] = info.warnings;
  m["files"] = files;

  const fs::path target = dir / kManifestName;
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp.string());
    out << m.dump(2) << '\n';
  }
  fs::rename(tmp, target);
}

std::vector<std::string> manifest_files(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw FormatError("cannot read " + manifest_path.string());
  json m;
  try {
    in >> m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("manifest is not valid JSON: ") + e.what());
  }
  std::vector<std::string> out;
  for (const auto& f : m.at("files")) out.push_back(f.at("path").get<std::string>());
  return out;
}

}  // namespace molcav
