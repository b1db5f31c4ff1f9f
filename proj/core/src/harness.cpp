#include "molcav/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "molcav/checkpoint.hpp"
#include "molcav/error.hpp"
#include "molcav/manifest.hpp"
#include "molcav/plot.hpp"
#include "molcav/quantum_info.hpp"
#include "molcav/simulation.hpp"
#include "molcav/units.hpp"

namespace molcav {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  const auto b = s.find_last_not_of(" \t\r\n");
  return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
}

std::vector<double> parse_number_list(const std::string& key, const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError({key + ": '" + item + "' is not a number"});
    }
  }
  return out;
}

std::string wigner_file_name(double time_fs) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "wigner_t%09.2ffs.tsv", time_fs);
  return buf;
}

std::string lambda_dir_name(double lambda) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "lambda_%.6g", lambda);
  return buf;
}

std::vector<WignerField> read_wigner_dir(const fs::path& dir) {
  std::vector<fs::path> files;
  if (fs::is_directory(dir))
    for (const auto& e : fs::directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".tsv") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<WignerField> out;
  for (const auto& f : files) out.push_back(read_wigner_field(f));
  return out;
}

void write_wigner_summary(const fs::path& path, const std::vector<WignerField>& fields) {
  std::ostringstream o;
  o << "time_fs,normalization,purity,min_W,negativity_volume\n";
  char buf[160];
  for (const auto& f : fields) {
    const auto neg = wigner_negativity(f);
    std::snprintf(buf, sizeof buf, "%.6f,%.12g,%.12g,%.12g,%.12g\n", f.time_fs, f.normalization(), f.purity(),
                  neg.min_value, neg.volume);
    o << buf;
  }
  write_text_file(path, o.str());
}

void write_run_plots(const fs::path& out, const TimeSeries& ts, const std::vector<WignerField>& snapshots,
                     double lambda) {
  const auto t = ts.column(&Record::time_fs);
  char title[96];
  std::snprintf(title, sizeof title, "Bipartite entanglement entropies, lambda = %.4g au", lambda);
  write_text_file(out / "entropy.svg",
                  render_line_plot({title,
                                    "t (fs)",
                                    "S (bits)",
                                    {{"A|BC", t, ts.column(&Record::entropy_a_bc)},
                                     {"B|AC", t, ts.column(&Record::entropy_b_ac)},
                                     {"C|AB", t, ts.column(&Record::entropy_c_ab)}}}));
  std::snprintf(title, sizeof title, "Logarithmic negativity of the two molecules, lambda = %.4g au", lambda);
  write_text_file(out / "negativity.svg",
                  render_line_plot({title, "t (fs)", "E_N (bits)", {{"E_N(A:B)", t, ts.column(&Record::negativity_ab)}}}));
  if (!snapshots.empty()) {
    std::vector<WignerField> pair{snapshots.front()};
    if (snapshots.size() > 1) pair.push_back(snapshots.back());
    write_text_file(out / "wigner_pair.svg", render_wigner_plot(pair, "Photon Wigner function"));
    write_text_file(out / "wigner_snapshots.svg", render_wigner_plot(snapshots, "Photon Wigner function snapshots"));
  }
}

std::string describe(const std::exception& e) {
  if (const auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    std::string s = "invalid configuration:";
    for (const auto& p : ce->problems()) s += "\n  " + p;
    return s;
  }
  return e.what();
}

}  // namespace

SimulationConfig resolve_config(const std::optional<fs::path>& path, const std::vector<ConfigOverride>& overrides) {
  SimulationConfig cfg = path ? load_config(*path) : SimulationConfig{};
  for (const auto& o : overrides) apply_config_entry(cfg, o.key, o.value);
  return cfg;
}

int configure_threads(std::optional<int> requested) {
  int n = 0;
  if (requested) {
    n = *requested;
  } else if (const char* env = std::getenv(kThreadsEnv)) {
    n = std::atoi(env);
  }
#ifdef _OPENMP
  if (n <= 0) n = omp_get_max_threads();
  omp_set_num_threads(n);
#else
  n = 1;
#endif
  return std::max(n, 1);
}

std::string checkpoint_name(std::size_t step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "step_%09zu.ckpt", step);
  return buf;
}

void write_wigner_field(const fs::path& path, const WignerField& f) {
  std::ostringstream o;
  char buf[128];
  std::snprintf(buf, sizeof buf, "# time_fs=%.17g q_points=%zu p_points=%zu q_range=%.17g p_range=%.17g\n", f.time_fs,
                f.grid.q_points, f.grid.p_points, f.grid.q_range, f.grid.p_range);
  o << buf << "# x = sqrt(omega) q, y = p / sqrt(omega)\nx\ty\tW\n";
  for (std::size_t i = 0; i < f.grid.q_points; ++i)
    for (std::size_t j = 0; j < f.grid.p_points; ++j) {
      std::snprintf(buf, sizeof buf, "%.6f\t%.6f\t%.17g\n", f.grid.q(i), f.grid.p(j), f.at(i, j));
      o << buf;
    }
  write_text_file(path, o.str());
}

WignerField read_wigner_field(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path.string());
  std::string line;
  WignerField f;
  if (!std::getline(in, line) ||
      std::sscanf(line.c_str(), "# time_fs=%lf q_points=%zu p_points=%zu q_range=%lf p_range=%lf", &f.time_fs,
                  &f.grid.q_points, &f.grid.p_points, &f.grid.q_range, &f.grid.p_range) != 5)
    throw FormatError("wigner field header missing in " + path.string());
  f.values.reserve(f.grid.q_points * f.grid.p_points);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    double x = 0, y = 0, w = 0;
    if (std::sscanf(line.c_str(), "%lf\t%lf\t%lf", &x, &y, &w) != 3) throw FormatError("bad wigner row in " + path.string());
    f.values.push_back(w);
  }
  if (f.values.size() != f.grid.q_points * f.grid.p_points) throw FormatError("wigner field truncated: " + path.string());
  return f;
}

RunOutcome execute_run(const RunRequest& req, std::ostream& log) {
  RunOutcome outcome;
  ManifestInfo info;
  info.command = "run";
  info.config = req.config;
  for (const auto& o : req.overrides) info.overrides.emplace_back(o.flag, o.value);
  info.notes.emplace_back("threads", std::to_string(req.threads));
  const auto t_start = Clock::now();
  bool dir_ready = false;

  try {
    const SimulationConfig cfg = validate_config(req.config);
    fs::create_directories(req.out_dir / "checkpoints");
    fs::create_directories(req.out_dir / "wigner");
    dir_ready = true;

    auto t0 = Clock::now();
    const SimulationSetup setup = prepare_simulation(cfg);
    info.timings_s.emplace_back("setup", seconds_since(t0));
    info.has_coupling = true;
    info.coupling = setup.coupling;
    info.notes.emplace_back("negativity_method", negativity_method(cfg));
    info.notes.emplace_back("integrator", run_metadata(cfg)[1].substr(12));
    for (const auto& w : setup.hamiltonian.warnings()) info.warnings.push_back(w);
    for (const auto& w : info.warnings) log << "warning: " << w << '\n';

    const auto& c = setup.coupling;
    log << "molcav run: dims " << cfg.grid1.n_points << "x" << cfg.grid2.n_points << "x" << cfg.fock.n_levels
        << ", " << total_steps(cfg) << " steps of " << cfg.dt << " au\n"
        << "  omega01 = " << c.omega01 << " cm^-1, d01 = " << c.d01 << " bohr, g = " << c.g << " Eh, eta = " << c.eta
        << "\n";

    write_text_file(req.out_dir / "config.cfg", serialize_config(cfg));
    {
      std::ofstream mol(req.out_dir / "molecule_states.tsv");
      write_molecule_table(mol, setup.eig1, setup.hamiltonian.molecule1().potential,
                           setup.hamiltonian.molecule1().dipole);
    }
    if (!(cfg.grid2 == cfg.grid1)) {
      std::ofstream mol(req.out_dir / "molecule2_states.tsv");
      write_molecule_table(mol, setup.eig2, setup.hamiltonian.molecule2().potential,
                           setup.hamiltonian.molecule2().dipole);
    }

    RunOptions options;
    TimeSeries previous;
    if (req.resume_from) {
      Checkpoint ck = read_checkpoint(*req.resume_from);
      if (ck.config_hash != physics_hash(cfg))
        throw ConfigError({"resume: checkpoint " + req.resume_from->string() +
                           " was written with different physical parameters"});
      if (!(ck.state.basis == setup.hamiltonian.basis())) throw ConfigError({"resume: checkpoint dimensions differ"});
      options.start_step = ck.step;
      options.start_state = std::move(ck.state);
      log << "  resuming at step " << options.start_step << '\n';
      info.notes.emplace_back("resumed_from", req.resume_from->string());
      const fs::path old = req.out_dir / "timeseries.csv";
      if (fs::exists(old)) {
        std::ifstream in(old);
        for (const auto& r : read_timeseries(in).records)
          if (r.step < options.start_step) previous.records.push_back(r);
      }
    }
    options.stop_step = req.stop_after_step;
    const std::size_t total = total_steps(cfg);
    const std::size_t stop = std::min(options.stop_step.value_or(total), total);

    std::ofstream series_out(req.out_dir / "timeseries.csv", std::ios::trunc);
    if (!series_out) throw Error("cannot write timeseries.csv");
    TimeSeries header;
    header.metadata = run_metadata(cfg);
    write_timeseries_header(series_out, header);
    for (const auto& r : previous.records) write_record(series_out, r);
    series_out.flush();

    std::set<std::size_t> snapshot_steps;
    for (double t : cfg.wigner_times) {
      const auto s = static_cast<std::size_t>(std::llround(units::fs_to_au(t) / cfg.dt));
      if (s <= total) snapshot_steps.insert(s);
    }

    auto checkpoint = [&](std::size_t step, const StateVector& psi) {
      write_checkpoint(req.out_dir / "checkpoints" / checkpoint_name(step),
                       Checkpoint{psi, cfg.dt, static_cast<std::uint64_t>(step), physics_hash(cfg)});
    };

    RunObservers obs;
    obs.on_record = [&](const Record& r) {
      write_record(series_out, r);
      series_out.flush();
      if (cfg.output_stride > 0 && r.step % (cfg.output_stride * 10) == 0)
        log << "  t = " << r.time_fs << " fs  S(C|AB) = " << r.entropy_c_ab << "  E_N = " << r.negativity_ab << '\n';
    };
    obs.observers.push_back(Observer{"checkpoint", cfg.checkpoint_stride,
                                     [&](const StepContext& ctx) { checkpoint(ctx.step, ctx.psi); }, true});
    obs.observers.push_back(Observer{"wigner", 1,
                                     [&](const StepContext& ctx) {
                                       if (!snapshot_steps.count(ctx.step)) return;
                                       const auto field = wigner_from_density(reduced_photon_density(ctx.psi),
                                                                              setup.phase_grid, ctx.time_fs);
                                       write_wigner_field(req.out_dir / "wigner" / wigner_file_name(ctx.time_fs),
                                                          field);
                                     },
                                     false});
    // a resumed run must still produce the snapshot at its start step
    if (options.start_step > 0 && snapshot_steps.count(options.start_step)) {
      const double t = units::au_to_fs(static_cast<double>(options.start_step) * cfg.dt);
      write_wigner_field(req.out_dir / "wigner" / wigner_file_name(t),
                         wigner_from_density(reduced_photon_density(*options.start_state), setup.phase_grid, t));
    }

    t0 = Clock::now();
    TimeSeries ts;
    try {
      ts = run_simulation(setup, obs, options);
    } catch (const SimulationAborted& e) {
      checkpoint(e.step(), e.last_good());
      throw;
    }
    info.timings_s.emplace_back("propagation", seconds_since(t0));
    series_out.close();

    TimeSeries all = previous;
    all.metadata = ts.metadata;
    all.records.insert(all.records.end(), ts.records.begin(), ts.records.end());
    outcome.series = all;

    const auto snapshots = read_wigner_dir(req.out_dir / "wigner");
    write_wigner_summary(req.out_dir / "wigner" / "snapshots.csv", snapshots);
    if (req.write_plots && !all.records.empty()) write_run_plots(req.out_dir, all, snapshots, cfg.lambda);

    outcome.status = stop < total ? "stopped" : "ok";
    outcome.message = stop < total ? "stopped at step " + std::to_string(stop) : "completed";
    outcome.exit_code = kExitOk;
  } catch (const ConfigError& e) {
    outcome.exit_code = kExitValidation;
    outcome.status = "invalid";
    outcome.message = describe(e);
  } catch (const SimulationAborted& e) {
    outcome.exit_code = kExitRuntime;
    outcome.status = "aborted";
    outcome.message = std::string(e.what()) + " (last finite state saved as " + checkpoint_name(e.step()) + ")";
  } catch (const std::exception& e) {
    outcome.exit_code = kExitRuntime;
    outcome.status = "failed";
    outcome.message = e.what();
  }

  if (outcome.exit_code != kExitOk) log << "error: " << outcome.message << '\n';
  if (dir_ready) {
    info.status = outcome.status;
    if (outcome.exit_code != kExitOk) info.notes.emplace_back("error", outcome.message);
    info.timings_s.emplace_back("total", seconds_since(t_start));
    try {
      write_manifest(req.out_dir, info);
    } catch (const std::exception& e) {
      log << "error: manifest: " << e.what() << '\n';
      if (outcome.exit_code == kExitOk) outcome.exit_code = kExitRuntime;
    }
  }
  return outcome;
}

SweepSpec parse_sweep_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot read sweep file " + path.string()});
  SweepSpec spec;
  std::ostringstream rest;
  std::string line;
  while (std::getline(in, line)) {
    const std::string body = trim(line.substr(0, line.find('#')));
    const auto eq = body.find('=');
    const std::string key = eq == std::string::npos ? std::string{} : trim(body.substr(0, eq));
    if (key.rfind("sweep.", 0) != 0) {
      rest << line << '\n';
      continue;
    }
    const std::string value = trim(body.substr(eq + 1));
    if (key == "sweep.lambda") {
      spec.lambdas = parse_number_list(key, value);
    } else if (key == "sweep.eta") {
      spec.eta_targets = parse_number_list(key, value);
    } else if (key == "sweep.parallel") {
      const auto v = parse_number_list(key, value);
      if (v.size() != 1 || v[0] < 1 || v[0] != std::floor(v[0])) throw ConfigError({"sweep.parallel must be a positive integer"});
      spec.parallel = static_cast<std::size_t>(v[0]);
    } else {
      throw ConfigError({"unknown key '" + key + "'"});
    }
  }
  spec.base = parse_config_string(rest.str());
  return spec;
}

std::vector<std::string> sweep_problems(const SweepSpec& spec) {
  std::vector<std::string> p;
  if (!spec.lambdas.empty() && !spec.eta_targets.empty()) p.push_back("sweep: give either lambda values or eta targets, not both");
  const auto& v = spec.lambdas.empty() ? spec.eta_targets : spec.lambdas;
  const std::string name = spec.lambdas.empty() ? "sweep.eta" : "sweep.lambda";
  if (v.empty()) p.push_back("sweep: no lambda values or eta targets given");
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x)) p.push_back(name + " values must be positive (got " + std::to_string(x) + ")");
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      if (v[i] == v[j]) p.push_back(name + " contains duplicate value " + std::to_string(v[i]));
  if (spec.parallel == 0) p.push_back("sweep.parallel must be at least 1");
  return p;
}

std::string monotonic_trend(const std::vector<std::optional<double>>& values) {
  std::vector<double> v;
  for (const auto& x : values) {
    if (!x) return "insufficient data";
    v.push_back(*x);
  }
  if (v.size() < 2) return "insufficient data";
  bool inc = true, dec = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    inc = inc && v[i] > v[i - 1];
    dec = dec && v[i] < v[i - 1];
  }
  return inc ? "increasing" : dec ? "decreasing" : "not monotonic";
}

SweepOutcome execute_sweep(const SweepSpec& spec, const fs::path& out_dir, const std::vector<ConfigOverride>& overrides,
                           int threads, std::ostream& log) {
  SweepOutcome outcome;
  const auto t_start = Clock::now();
  std::vector<std::string> problems = sweep_problems(spec);
  for (const auto& p : config_problems(spec.base)) problems.push_back(p);
  if (!problems.empty()) {
    log << "error: invalid sweep:\n";
    for (const auto& p : problems) log << "  " << p << '\n';
    outcome.exit_code = kExitValidation;
    return outcome;
  }

  std::vector<double> lambdas = spec.lambdas;
  std::vector<double> etas;
  try {
    const SimulationConfig& base = spec.base;
    const double mu = effective_reduced_mass(base);
    const auto eig = solve_bound_states(base.grid1, morse_potential(base.grid1, base.morse), mu, 2, base.morse.D_e);
    SimulationConfig unit = base;
    unit.lambda = 1.0;
    const double eta_per_lambda = coupling_report(unit, eig).eta;
    if (lambdas.empty())
      for (double eta : spec.eta_targets) lambdas.push_back(eta / eta_per_lambda);
    for (double l : lambdas) etas.push_back(l * eta_per_lambda);
  } catch (const std::exception& e) {
    log << "error: " << describe(e) << '\n';
    outcome.exit_code = kExitValidation;
    return outcome;
  }

  try {
    fs::create_directories(out_dir);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    outcome.exit_code = kExitRuntime;
    return outcome;
  }

  const std::size_t n = lambdas.size();
  outcome.rows.resize(n);
  std::vector<TimeSeries> series(n);
  const std::size_t workers = std::min(spec.parallel, n);
  const int inner_threads = std::max(1, threads / static_cast<int>(workers));
  std::atomic<std::size_t> next{0};
  std::mutex log_mutex;

  auto worker = [&] {
#ifdef _OPENMP
    omp_set_num_threads(inner_threads);
#endif
    for (std::size_t i = next++; i < n; i = next++) {
      SweepRow& row = outcome.rows[i];
      row.lambda = lambdas[i];
      row.eta = etas[i];
      row.directory = lambda_dir_name(lambdas[i]);
      RunRequest req;
      req.config = spec.base;
      req.config.lambda = lambdas[i];
      req.out_dir = out_dir / row.directory;
      req.overrides = overrides;
      req.threads = inner_threads;
      std::ostringstream run_log;
      RunOutcome r;
      try {
        r = execute_run(req, run_log);
      } catch (const std::exception& e) {  // isolate anything unexpected to this lambda
        r.exit_code = kExitRuntime;
        r.status = "failed";
        r.message = e.what();
      }
      row.status = r.status;
      if (r.exit_code == kExitOk && !r.series.records.empty()) {
        const Record& peak = r.series.argmax(&Record::entropy_c_ab);
        row.peak_entropy = peak.entropy_c_ab;
        row.peak_time_fs = peak.time_fs;
      }
      series[i] = std::move(r.series);
      std::lock_guard<std::mutex> lock(log_mutex);
      log << "[lambda " << lambdas[i] << "] " << run_log.str();
      if (r.exit_code != kExitOk) log << "[lambda " << lambdas[i] << "] failed: " << r.message << '\n';
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // trends across increasing lambda
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lambdas[a] < lambdas[b]; });
  std::vector<std::optional<double>> peaks, times;
  for (std::size_t i : order) {
    peaks.push_back(outcome.rows[i].peak_entropy);
    times.push_back(outcome.rows[i].peak_time_fs);
  }
  outcome.entropy_trend = monotonic_trend(peaks);
  outcome.time_trend = monotonic_trend(times);

  std::ostringstream csv;
  csv << "# trend of peak S(C|AB) with increasing lambda: " << outcome.entropy_trend << '\n'
      << "# trend of peak time with increasing lambda: " << outcome.time_trend << '\n'
      << "lambda,eta,peak_S_C_AB_bits,peak_time_fs,status,directory\n";
  char buf[96];
  for (std::size_t i : order) {
    const auto& row = outcome.rows[i];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,", row.lambda, row.eta);
    csv << buf;
    if (row.peak_entropy) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,", *row.peak_entropy, *row.peak_time_fs);
      csv << buf;
    } else {
      csv << "missing,missing,";
    }
    csv << row.status << ',' << row.directory << '\n';
  }

  bool all_ok = true;
  for (const auto& row : outcome.rows) all_ok = all_ok && row.status == "ok";
  outcome.exit_code = all_ok ? kExitOk : kExitRuntime;

  ManifestInfo info;
  info.command = "sweep";
  info.status = all_ok ? "ok" : "partial";
  info.config = spec.base;
  for (const auto& o : overrides) info.overrides.emplace_back(o.flag, o.value);
  info.notes.emplace_back("lambdas", [&] {
    std::ostringstream o;
    for (std::size_t k = 0; k < n; ++k) o << (k ? "," : "") << lambdas[order[k]];
    return o.str();
  }());
  info.notes.emplace_back("parallel", std::to_string(workers));
  info.notes.emplace_back("entropy_trend", outcome.entropy_trend);
  info.notes.emplace_back("peak_time_trend", outcome.time_trend);
  try {
    write_text_file(out_dir / "summary.csv", csv.str());
    LinePlot plot{"Entropy S(C|AB) across the coupling sweep", "t (fs)", "S(C|AB) (bits)", {}};
    for (std::size_t i : order)
      if (!series[i].records.empty()) {
        std::snprintf(buf, sizeof buf, "lambda = %.4g", lambdas[i]);
        plot.series.push_back({buf, series[i].column(&Record::time_fs), series[i].column(&Record::entropy_c_ab)});
      }
    if (!plot.series.empty()) write_text_file(out_dir / "sweep_entropy.svg", render_line_plot(plot));
    info.timings_s.emplace_back("total", seconds_since(t_start));
    write_manifest(out_dir, info);
  } catch (const std::exception& e) {
    log << "error: " << e.what() << '\n';
    outcome.exit_code = kExitRuntime;
  }
  log << "sweep: peak S(C|AB) " << outcome.entropy_trend << ", peak time " << outcome.time_trend
      << " with increasing lambda\n";
  return outcome;
}

WignerOutcome execute_wigner(const WignerRequest& req, std::ostream& log) {
  WignerOutcome outcome;
  const auto t_start = Clock::now();
  if (req.checkpoints.empty()) {
    outcome.exit_code = kExitValidation;
    outcome.message = "no checkpoint given";
    log << "error: " << outcome.message << '\n';
    return outcome;
  }
  if (req.points < 2 || (req.range && !(*req.range > 0.0))) {
    outcome.exit_code = kExitValidation;
    outcome.message = "wigner grid needs at least 2 points and a positive range";
    log << "error: " << outcome.message << '\n';
    return outcome;
  }
  ManifestInfo info;
  info.command = "wigner";
  try {
    fs::create_directories(req.out_dir);
    for (const auto& path : req.checkpoints) {
      const Checkpoint ck = read_checkpoint(path);
      const DensityMatrix rho = reduced_photon_density(ck.state);
      double range = 0.0;
      if (req.range) {
        range = *req.range;
      } else {
        double mean_n = 0.0;
        for (Eigen::Index k = 0; k < rho.elements.rows(); ++k) mean_n += static_cast<double>(k) * rho.elements(k, k).real();
        range = std::max(6.0, std::ceil(std::sqrt(2.0 * std::max(mean_n, 0.0)) + 4.0));
      }
      const double t = units::au_to_fs(static_cast<double>(ck.step) * ck.dt);
      WignerField f = wigner_from_density(rho, PhaseSpaceGrid{req.points, req.points, range, range}, t);
      write_wigner_field(req.out_dir / wigner_file_name(t), f);
      const auto neg = wigner_negativity(f);
      log << "t = " << t << " fs: normalization " << f.normalization() << ", min W " << neg.min_value
          << ", negativity volume " << neg.volume << '\n';
      info.notes.emplace_back(wigner_file_name(t), "from " + fs::path(path).filename().string());
      outcome.fields.push_back(std::move(f));
    }
    std::sort(outcome.fields.begin(), outcome.fields.end(),
              [](const WignerField& a, const WignerField& b) { return a.time_fs < b.time_fs; });
    write_wigner_summary(req.out_dir / "snapshots.csv", outcome.fields);
    write_text_file(req.out_dir / "wigner.svg", render_wigner_plot(outcome.fields, "Photon Wigner function"));
  } catch (const std::exception& e) {
    outcome.exit_code = kExitRuntime;
    outcome.message = e.what();
    info.status = "failed";
    info.notes.emplace_back("error", outcome.message);
    log << "error: " << outcome.message << '\n';
  }
  info.timings_s.emplace_back("total", seconds_since(t_start));
  if (fs::is_directory(req.out_dir)) {
    try {
      write_manifest(req.out_dir, info);
    } catch (const std::exception& e) {
      log << "error: manifest: " << e.what() << '\n';
      outcome.exit_code = kExitRuntime;
    }
  }
  return outcome;
}

int execute_validate(const std::optional<fs::path>& path, const std::vector<ConfigOverride>& overrides,
                     std::ostream& out) {
  try {
    const SimulationConfig cfg = validate_config(resolve_config(path, overrides));
    const double mu = effective_reduced_mass(cfg);
    const auto eig = solve_bound_states(cfg.grid1, morse_potential(cfg.grid1, cfg.morse), mu, 2, cfg.morse.D_e);
    const auto c = coupling_report(cfg, eig);
    out << "config ok\n"
        << "  dims " << cfg.grid1.n_points << " x " << cfg.grid2.n_points << " x " << cfg.fock.n_levels << " = "
        << cfg.grid1.n_points * cfg.grid2.n_points * cfg.fock.n_levels << " amplitudes\n"
        << "  reduced mass " << mu << " m_e, " << total_steps(cfg) << " steps of " << cfg.dt << " au\n"
        << "  omega01 " << c.omega01 << " cm^-1, |d01| " << c.d01 << " bohr, g " << c.g << " Eh, eta " << c.eta << '\n'
        << "  coherent truncation " << coherent_truncation_error(cfg.beta, cfg.fock.n_levels) << '\n';
    return kExitOk;
  } catch (const ConfigError& e) {
    out << "error: " << describe(e) << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    out << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace molcav
