#include "molcav/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "molcav/error.hpp"
#include "molcav/units.hpp"

namespace molcav {

ConfigError::ConfigError(std::vector<std::string> problems)
    : Error([&] {
        std::string msg = "invalid configuration:";
        for (const auto& p : problems) msg += "\n  " + p;
        return msg;
      }()),
      problems_(std::move(problems)) {}

double effective_reduced_mass(const SimulationConfig& cfg) {
  if (cfg.reduced_mass) return *cfg.reduced_mass;
  return reduced_mass_for_gap(cfg.morse, units::wavenumber_to_hartree(kReferenceTransitionWavenumber));
}

double effective_wigner_range(const SimulationConfig& cfg) {
  if (cfg.wigner_range) return *cfg.wigner_range;
  return std::max(6.0, std::ceil(std::abs(cfg.beta) * std::sqrt(2.0) + 4.0));
}

std::size_t total_steps(const SimulationConfig& cfg) {
  return static_cast<std::size_t>(std::llround(units::fs_to_au(cfg.t_final) / cfg.dt));
}

double coherent_truncation_error(std::complex<double> beta, std::size_t n_levels) {
  const double x = std::norm(beta);
  if (x == 0.0) return n_levels >= 1 ? 0.0 : 1.0;
  double tail = 0.0;
  for (std::size_t n = n_levels;; ++n) {
    const double nn = static_cast<double>(n);
    const double term = std::exp(-x + nn * std::log(x) - std::lgamma(nn + 1.0));
    tail += term;
    if (nn > x && term < 1e-30 * std::max(tail, 1e-300)) break;
    if (n > n_levels + 100000) break;
  }
  return tail;
}

namespace {

void check_grid(const GridBasis1D& g, const std::string& name, std::vector<std::string>& out) {
  if (g.n_points < 9) out.push_back(name + ".n_points must be at least 9 (8th-order stencil)");
  if (!(g.spacing > 0.0)) out.push_back(name + ".spacing must be positive");
  if (!std::isfinite(g.origin)) out.push_back(name + ".origin must be finite");
}

}  // namespace

std::vector<std::string> config_problems(const SimulationConfig& cfg) {
  std::vector<std::string> out;
  check_grid(cfg.grid1, "grid1", out);
  check_grid(cfg.grid2, "grid2", out);
  if (cfg.fock.n_levels < 2) out.push_back("fock.n_levels must be at least 2");
  if (cfg.omega && !(*cfg.omega > 0.0)) out.push_back("omega must be positive");
  if (!(cfg.morse.D_e > 0.0)) out.push_back("morse.D_e must be positive");
  if (!(cfg.morse.a > 0.0)) out.push_back("morse.a must be positive");
  if (!(cfg.mecke.delta > 0.0)) out.push_back("mecke.delta must be positive");
  if (cfg.reduced_mass && !(*cfg.reduced_mass > 0.0)) out.push_back("reduced_mass must be positive");
  if (!std::isfinite(cfg.lambda)) out.push_back("lambda must be finite");
  if (!(cfg.dt > 0.0)) out.push_back("dt must be positive");
  if (!(cfg.t_final > 0.0)) out.push_back("t_final must be positive");
  if (cfg.output_stride < 1) out.push_back("output_stride must be at least 1");
  if (cfg.krylov_dim < 2) out.push_back("krylov_dim must be at least 2");
  if (!(cfg.krylov_tol > 0.0)) out.push_back("krylov_tol must be positive");
  if (cfg.n_vib_project < 2) out.push_back("n_vib_project must be at least 2");
  if (cfg.n_vib_project > std::min(cfg.grid1.n_points, cfg.grid2.n_points))
    out.push_back("n_vib_project exceeds the grid size");
  if (cfg.checkpoint_stride < 1) out.push_back("checkpoint_stride must be at least 1");
  if (cfg.wigner_points < 2) out.push_back("wigner.points must be at least 2");
  if (cfg.wigner_range) {
    const double need = std::abs(cfg.beta) * std::sqrt(2.0) + 4.0;
    if (!(*cfg.wigner_range >= need))
      out.push_back("wigner.range must cover |beta| sqrt(2) + 4 = " + std::to_string(need));
  }
  for (double t : cfg.wigner_times)
    if (!(t >= 0.0)) out.push_back("wigner_times entries must be non-negative");
  if (cfg.fock.n_levels >= 1) {
    const double tail = coherent_truncation_error(cfg.beta, cfg.fock.n_levels);
    if (!(tail < kCoherentTruncationLimit)) {
      std::ostringstream msg;
      msg << "fock.n_levels too small for beta: coherent-state weight beyond " << cfg.fock.n_levels
          << " levels is " << tail << " (limit " << kCoherentTruncationLimit << ")";
      out.push_back(msg.str());
    }
  }
  return out;
}

SimulationConfig validate_config(const SimulationConfig& cfg) {
  auto problems = config_problems(cfg);
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return cfg;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, const char* what) {
  throw ConfigError({std::string(key) + ": " + what + " (got '" + std::string(value) + "')"});
}

double to_double(std::string_view key, std::string_view v) {
  v = trim(v);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "expected a number");
  return out;
}

std::size_t to_size(std::string_view key, std::string_view v) {
  v = trim(v);
  std::size_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) bad_value(key, v, "expected a non-negative integer");
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  v = trim(v);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  bad_value(key, v, "expected true or false");
}

std::vector<std::string_view> split_list(std::string_view v) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= v.size(); ++i) {
    if (i == v.size() || v[i] == ',' || v[i] == ' ' || v[i] == '\t') {
      auto p = trim(v.substr(start, i - start));
      if (!p.empty()) parts.push_back(p);
      start = i + 1;
    }
  }
  return parts;
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

bool set_grid_field(GridBasis1D& g, std::string_view field, std::string_view key, std::string_view value) {
  if (field == "n_points") g.n_points = to_size(key, value);
  else if (field == "spacing") g.spacing = to_double(key, value);
  else if (field == "origin") g.origin = to_double(key, value);
  else return false;
  return true;
}

}  // namespace

void apply_config_entry(SimulationConfig& cfg, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const auto dot = key.find('.');
  const std::string_view head = key.substr(0, dot);
  const std::string_view field = dot == std::string_view::npos ? std::string_view{} : key.substr(dot + 1);

  if (head == "grid" && set_grid_field(cfg.grid1, field, key, value)) {
    set_grid_field(cfg.grid2, field, key, value);
  } else if (head == "grid1" && set_grid_field(cfg.grid1, field, key, value)) {
  } else if (head == "grid2" && set_grid_field(cfg.grid2, field, key, value)) {
  } else if (key == "fock.n_levels" || key == "n_levels") {
    cfg.fock.n_levels = to_size(key, value);
  } else if (key == "omega_au" || key == "fock.omega_au") {
    if (value == "auto") cfg.omega.reset();
    else cfg.omega = to_double(key, value);
  } else if (key == "omega_cm" || key == "fock.omega_cm") {
    if (value == "auto") cfg.omega.reset();
    else cfg.omega = units::wavenumber_to_hartree(to_double(key, value));
  } else if (key == "morse.D_e") {
    cfg.morse.D_e = to_double(key, value);
  } else if (key == "morse.r_e") {
    cfg.morse.r_e = to_double(key, value);
  } else if (key == "morse.a") {
    cfg.morse.a = to_double(key, value);
  } else if (key == "mecke.gamma") {
    cfg.mecke.gamma = to_double(key, value);
  } else if (key == "mecke.delta") {
    cfg.mecke.delta = to_double(key, value);
  } else if (key == "mecke.origin") {
    if (value == "absolute") cfg.mecke.origin = DipoleOrigin::Absolute;
    else if (value == "equilibrium") cfg.mecke.origin = DipoleOrigin::Equilibrium;
    else bad_value(key, value, "expected absolute or equilibrium");
  } else if (key == "reduced_mass") {
    if (value == "auto") cfg.reduced_mass.reset();
    else cfg.reduced_mass = to_double(key, value);
  } else if (key == "lambda") {
    cfg.lambda = to_double(key, value);
  } else if (key == "beta") {
    const auto parts = split_list(value);
    if (parts.empty() || parts.size() > 2) bad_value(key, value, "expected 're' or 're, im'");
    cfg.beta = {to_double(key, parts[0]), parts.size() == 2 ? to_double(key, parts[1]) : 0.0};
  } else if (key == "dt") {
    cfg.dt = to_double(key, value);
  } else if (key == "t_final") {
    cfg.t_final = to_double(key, value);
  } else if (key == "output_stride") {
    cfg.output_stride = to_size(key, value);
  } else if (key == "krylov_dim") {
    cfg.krylov_dim = to_size(key, value);
  } else if (key == "krylov_tol") {
    cfg.krylov_tol = to_double(key, value);
  } else if (key == "renormalize") {
    cfg.renormalize = to_bool(key, value);
  } else if (key == "n_vib_project") {
    cfg.n_vib_project = to_size(key, value);
  } else if (key == "checkpoint_stride") {
    cfg.checkpoint_stride = to_size(key, value);
  } else if (key == "wigner_times") {
    cfg.wigner_times.clear();
    for (auto p : split_list(value)) cfg.wigner_times.push_back(to_double(key, p));
  } else if (key == "wigner.points") {
    cfg.wigner_points = to_size(key, value);
  } else if (key == "wigner.range") {
    if (value == "auto") cfg.wigner_range.reset();
    else cfg.wigner_range = to_double(key, value);
  } else if (key == "wigner_series") {
    cfg.wigner_series = to_bool(key, value);
  } else {
    throw ConfigError({"unknown key '" + std::string(key) + "'"});
  }
}

SimulationConfig parse_config(std::istream& in) {
  SimulationConfig cfg;
  bool grid2_explicit = false;
  std::vector<std::string> problems;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv = line;
    if (auto hash = sv.find('#'); hash != std::string_view::npos) sv = sv.substr(0, hash);
    sv = trim(sv);
    if (sv.empty()) continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos) {
      problems.push_back("line " + std::to_string(lineno) + ": expected 'key = value'");
      continue;
    }
    const auto key = trim(sv.substr(0, eq));
    if (key.starts_with("grid2.")) grid2_explicit = true;
    try {
      apply_config_entry(cfg, key, sv.substr(eq + 1));
    } catch (const ConfigError& e) {
      for (const auto& p : e.problems()) problems.push_back("line " + std::to_string(lineno) + ": " + p);
    }
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  if (!grid2_explicit) cfg.grid2 = cfg.grid1;
  return cfg;
}

SimulationConfig parse_config_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file " + path.string()});
  return parse_config(in);
}

namespace {

void write_physics(std::ostream& o, const SimulationConfig& c) {
  for (const auto& [name, g] : {std::pair{"grid1", &c.grid1}, std::pair{"grid2", &c.grid2}}) {
    o << name << ".n_points = " << g->n_points << '\n';
    o << name << ".spacing = " << fmt(g->spacing) << '\n';
    o << name << ".origin = " << fmt(g->origin) << '\n';
  }
  o << "fock.n_levels = " << c.fock.n_levels << '\n';
  o << "omega_au = " << (c.omega ? fmt(*c.omega) : "auto") << '\n';
  o << "morse.D_e = " << fmt(c.morse.D_e) << '\n';
  o << "morse.r_e = " << fmt(c.morse.r_e) << '\n';
  o << "morse.a = " << fmt(c.morse.a) << '\n';
  o << "mecke.gamma = " << fmt(c.mecke.gamma) << '\n';
  o << "mecke.delta = " << fmt(c.mecke.delta) << '\n';
  o << "mecke.origin = " << (c.mecke.origin == DipoleOrigin::Absolute ? "absolute" : "equilibrium") << '\n';
  o << "reduced_mass = " << (c.reduced_mass ? fmt(*c.reduced_mass) : "auto") << '\n';
  o << "lambda = " << fmt(c.lambda) << '\n';
  o << "beta = " << fmt(c.beta.real()) << ", " << fmt(c.beta.imag()) << '\n';
  o << "dt = " << fmt(c.dt) << '\n';
  o << "krylov_dim = " << c.krylov_dim << '\n';
  o << "krylov_tol = " << fmt(c.krylov_tol) << '\n';
  o << "renormalize = " << (c.renormalize ? "true" : "false") << '\n';
}

}  // namespace

std::string serialize_config(const SimulationConfig& c) {
  std::ostringstream o;
  write_physics(o, c);
  o << "t_final = " << fmt(c.t_final) << '\n';
  o << "output_stride = " << c.output_stride << '\n';
  o << "n_vib_project = " << c.n_vib_project << '\n';
  o << "checkpoint_stride = " << c.checkpoint_stride << '\n';
  o << "wigner_times =";
  for (std::size_t i = 0; i < c.wigner_times.size(); ++i) o << (i ? ", " : " ") << fmt(c.wigner_times[i]);
  o << '\n';
  o << "wigner.points = " << c.wigner_points << '\n';
  o << "wigner.range = " << (c.wigner_range ? fmt(*c.wigner_range) : "auto") << '\n';
  o << "wigner_series = " << (c.wigner_series ? "true" : "false") << '\n';
  return o.str();
}

std::uint64_t physics_hash(const SimulationConfig& cfg) {
  std::ostringstream o;
  write_physics(o, cfg);
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : o.str()) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace molcav
