// Command-line driver: spectrum scans, ramp runs and sweeps, square-pulse
// stroboscopic runs and sweeps, the perturbation-theory identity checks, and
// power-law fitting of sweep outputs.
//
// Exit codes: 0 success, 1 numeric-tolerance failure, 2 configuration error.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dchain/analysis.hpp"
#include "dchain/floquet.hpp"
#include "dchain/fpt.hpp"
#include "dchain/ramp.hpp"
#include "dchain/run_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dchain;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonArgs* args) {
  cmd->add_option("--config", args->config_path, "key = value config file");
  cmd->add_option("--set", args->overrides, "override, key=value (repeatable)");
  cmd->add_option("-o,--out", args->out_dir, "output directory (default $DCHAIN_OUT or ./out)");
}

RunConfig load_config(const CommonArgs& args, const std::string& command) {
  RunConfig config;
  if (!args.config_path.empty()) config = parse_config_file(args.config_path);
  for (const std::string& s : args.overrides) apply_override(config, s);
  config.set("command", command);
  return config;
}

fs::path output_root(const CommonArgs& args) {
  if (!args.out_dir.empty()) return args.out_dir;
  if (const char* env = std::getenv("DCHAIN_OUT")) return env;
  return "out";
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

PropagatorPlan plan_from_config(const RunConfig& config) {
  PropagatorPlan plan;
  const std::string engine = config.get_string("engine", "eigenbasis");
  if (engine == "eigenbasis")
    plan.method = PropagatorMethod::EigenbasisOde;
  else if (engine == "rk4")
    plan.method = PropagatorMethod::DirectRk4;
  else if (engine == "expm")
    plan.method = PropagatorMethod::EigenExponential;
  else
    throw ConfigError("engine must be eigenbasis, rk4 or expm");
  plan.dt = config.get_double("dt", 0.0);
  plan.tol = config.get_double("tol", 1e-8);
  return plan;
}

struct RampSetup {
  RampSystem system;
  RampProtocol protocol;
  std::string model;
  std::string shape;
  double unit = 1.0;  // v0 for the degenerate chain, w for the PXP sector
  int num_sites = 0;
};

RampSetup ramp_setup(const RunConfig& config) {
  RampSetup setup;
  setup.model = config.get_string("model", "degenerate");
  setup.shape = config.get_string("protocol", "linear");
  const int L = config.get_int("L");
  const double amplitude = config.get_double("amplitude");
  const double tau = config.get_double("tau", 1.0);
  const double endpoint = config.get_double("endpoint", 1.0);
  setup.num_sites = L;

  const SpinBasis basis = build_basis(L);
  if (setup.model == "degenerate") {
    setup.unit = config.get_double("v0", 1.0);
    setup.system = degenerate_ramp_system(basis, setup.unit);
    if (setup.shape == "linear")
      setup.protocol = linear_degenerate_ramp(amplitude, tau, endpoint * tau);
    else if (setup.shape == "cosine")
      setup.protocol = cosine_degenerate_ramp(amplitude, tau, endpoint * tau);
    else
      throw ConfigError("protocol must be linear or cosine");
  } else if (setup.model == "pxp") {
    setup.unit = config.get_double("w", 1.0);
    const ConstrainedSubspace sub = enumerate_blockaded(basis);
    setup.system = pxp_ramp_system(sub, setup.unit);
    if (setup.shape == "linear")
      setup.protocol = linear_pxp_ramp(amplitude, setup.unit, tau, endpoint * tau);
    else if (setup.shape == "cosine")
      setup.protocol = cosine_pxp_ramp(amplitude, setup.unit, tau, endpoint * tau);
    else
      throw ConfigError("protocol must be linear or cosine");
  } else {
    throw ConfigError("model must be degenerate or pxp");
  }
  return setup;
}

std::vector<double> tau_grid(const RunConfig& config) {
  const double tau_min = config.get_double("tau_min");
  const double tau_max = config.get_double("tau_max", tau_min);
  const int n = config.get_int("tau_points", 40);
  if (n == 1 || tau_max == tau_min) return {tau_min};
  if (config.get_string("tau_spacing", "log") == "linear") {
    std::vector<double> out(n);
    for (int i = 0; i < n; ++i)
      out[i] = tau_min + (tau_max - tau_min) * double(i) / double(n - 1);
    return out;
  }
  return log_spaced(tau_min, tau_max, n);
}

// --- spectrum ---------------------------------------------------------------

int cmd_spectrum(const CommonArgs& args) {
  const RunConfig config = load_config(args, "spectrum");
  const std::string hash = config_hash(config);
  const int L = config.get_int("L");
  const double v0 = config.get_double("v0", 1.0);
  const double h_min = config.get_double("h_min", -1.0);
  const double h_max = config.get_double("h_max", 1.0);
  const int points = config.get_int("h_points", 101);
  if (points < 1) throw ConfigError("h_points must be >= 1");

  const SpinBasis basis = build_basis(L);
  RealVector grid(points);
  for (int i = 0; i < points; ++i)
    grid(i) = points == 1 ? h_min : h_min + (h_max - h_min) * double(i) / double(points - 1);

  const SpectrumScan scan = spectrum_scan(basis, v0, grid, config.get_int("workers", 0));

  CsvFile csv(kVersion, hash, {"h", "n", "energy"});
  for (Eigen::Index i = 0; i < grid.size(); ++i)
    for (Eigen::Index n = 0; n < basis.dim; ++n)
      csv.add_row(std::vector<double>{grid(i), double(n), scan.energies(i, n)});

  const fs::path root = output_root(args);
  const std::string name = "spectrum_L" + std::to_string(L) + "_v0" + number_slug(v0);
  csv.write(root / (name + ".csv"));
  write_text(root / (name + ".plot.txt"),
             "# gnuplot recipe\n"
             "set xlabel 'h/V0'\nset ylabel 'energy/V0'\n"
             "plot '" + name + ".csv' every ::1 using 1:3 with dots notitle\n");
  std::cout << "wrote " << (root / (name + ".csv")).string() << "\n";
  return 0;
}

// --- single ramp -------------------------------------------------------------

int cmd_ramp(const CommonArgs& args) {
  const RunConfig config = load_config(args, "ramp");
  const std::string hash = config_hash(config);
  const RampSetup setup = ramp_setup(config);
  const int samples = config.get_int("samples", kDefaultRampSamples);
  const RampTrace trace =
      run_ramp(setup.system, setup.protocol, samples, plan_from_config(config));

  CsvFile csv(kVersion, hash, {"t_over_tau", "F", "Q_over_v0", "ground_degenerate"});
  for (Eigen::Index i = 0; i < trace.times.size(); ++i)
    csv.add_row(std::vector<double>{trace.times(i) / setup.protocol.tau, trace.fidelity_log(i),
                                    trace.residual_energy(i) / setup.unit,
                                    trace.ground_degenerate[i] ? 1.0 : 0.0});
  const fs::path root = output_root(args);
  const std::string name = "ramp_" + setup.model + "_" + setup.shape + "_L" +
                           std::to_string(setup.num_sites) + "_amp" +
                           number_slug(setup.protocol.amplitude) + "_tau" +
                           number_slug(setup.protocol.tau);
  csv.write(root / (name + ".csv"));
  write_text(root / (name + ".plot.txt"),
             "# gnuplot recipe\nset xlabel 't/tau'\n"
             "plot '" + name + ".csv' every ::1 using 1:2 with lines title 'F', '' every ::1 "
             "using 1:3 with lines title 'Q'\n");
  std::cout << "wrote " << (root / (name + ".csv")).string() << "\n";
  return 0;
}

// --- tau sweep with checkpoint/resume ----------------------------------------

std::string sweep_point_line(std::size_t index, const SweepPoint& p) {
  std::ostringstream out;
  out << index << ',' << format_number(p.tau) << ',' << format_number(p.fidelity_log) << ','
      << format_number(p.residual_energy) << ',' << (p.ground_degenerate ? 1 : 0) << ','
      << format_number(p.norm_drift) << ',' << (p.ok ? 1 : 0) << ',' << p.error << '\n';
  return out.str();
}

bool parse_sweep_point_line(const std::string& line, std::size_t* index, SweepPoint* p) {
  std::istringstream in(line);
  std::string cell;
  auto next = [&](std::string* out) { return bool(std::getline(in, *out, ',')); };
  try {
    if (!next(&cell)) return false;
    *index = std::stoul(cell);
    if (!next(&cell)) return false;
    p->tau = std::stod(cell);
    if (!next(&cell)) return false;
    p->fidelity_log = std::stod(cell);
    if (!next(&cell)) return false;
    p->residual_energy = std::stod(cell);
    if (!next(&cell)) return false;
    p->ground_degenerate = cell == "1";
    if (!next(&cell)) return false;
    p->norm_drift = std::stod(cell);
    if (!next(&cell)) return false;
    p->ok = cell == "1";
    std::getline(in, p->error);
    return true;
  } catch (...) {
    return false;
  }
}

int cmd_ramp_sweep(const CommonArgs& args) {
  const RunConfig config = load_config(args, "ramp-sweep");
  const std::string hash = config_hash(config);
  RampSetup setup = ramp_setup(config);
  const double endpoint = config.get_double("endpoint", 0.5);
  const std::vector<double> taus = tau_grid(config);
  const PropagatorPlan plan = plan_from_config(config);

  const fs::path root = output_root(args);
  const std::string name = "sweep_" + setup.model + "_" + setup.shape + "_L" +
                           std::to_string(setup.num_sites) + "_amp" +
                           number_slug(setup.protocol.amplitude) + "_end" +
                           number_slug(endpoint);
  const fs::path ckpt_path = root / (name + ".ckpt");

  // completed points from a previous interrupted run with the same config
  std::vector<SweepPoint> points(taus.size());
  std::vector<bool> done(taus.size(), false);
  if (fs::exists(ckpt_path)) {
    std::ifstream in(ckpt_path);
    std::string line;
    bool hash_ok = false;
    if (std::getline(in, line))
      hash_ok = line == "# " + std::string(kVersion) + " config=" + hash;
    if (hash_ok) {
      while (std::getline(in, line)) {
        std::size_t index = 0;
        SweepPoint p;
        if (parse_sweep_point_line(line, &index, &p) && index < taus.size()) {
          points[index] = p;
          done[index] = true;
        }
      }
    }
  }

  std::vector<double> missing;
  std::vector<std::size_t> missing_index;
  for (std::size_t i = 0; i < taus.size(); ++i)
    if (!done[i]) {
      missing.push_back(taus[i]);
      missing_index.push_back(i);
    }

  if (!missing.empty()) {
    fs::create_directories(root);
    const bool fresh = std::none_of(done.begin(), done.end(), [](bool b) { return b; });
    std::ofstream ckpt(ckpt_path, fresh ? std::ios::trunc : std::ios::app);
    if (fresh) ckpt << "# " << kVersion << " config=" << hash << "\n";

    std::mutex mu;
    auto on_point = [&](std::size_t local_index, const SweepPoint& p) {
      const std::size_t global = missing_index[local_index];
      std::lock_guard<std::mutex> lock(mu);
      points[global] = p;
      ckpt << sweep_point_line(global, p);
      ckpt.flush();
    };
    sweep_tau(setup.system, setup.protocol, missing, endpoint, plan,
              config.get_int("workers", 0), on_point);
  }

  CsvFile csv(kVersion, hash,
              {"tau", "F", "Q", "Q_over_v0", "Q_over_v0L", "ground_degenerate", "status"});
  bool any_failed = false;
  for (const SweepPoint& p : points) {
    any_failed = any_failed || !p.ok;
    csv.add_row(std::vector<std::string>{
        format_number(p.tau), format_number(p.fidelity_log), format_number(p.residual_energy),
        format_number(p.residual_energy / setup.unit),
        format_number(p.residual_energy / (setup.unit * setup.num_sites)),
        p.ground_degenerate ? "1" : "0", p.ok ? "ok" : ("failed:" + p.error)});
  }
  csv.write(root / (name + ".csv"));
  write_text(root / (name + ".plot.txt"),
             "# gnuplot recipe\nset logscale xy\nset xlabel 'tau'\nset ylabel 'Q'\n"
             "plot '" + name + ".csv' every ::1 using 1:3 with linespoints notitle\n");
  std::cout << "wrote " << (root / (name + ".csv")).string() << "\n";
  return any_failed ? 1 : 0;
}

// --- square-pulse drive --------------------------------------------------------

int cmd_floquet(const CommonArgs& args, int special_table) {
  const RunConfig config = load_config(args, "floquet");
  if (special_table > 0) {
    const double h0 = config.get_double("h0");
    std::cout << "special frequencies omega_p* = h0/p for h0 = " << format_number(h0) << "\n";
    for (int p = 1; p <= special_table; ++p)
      std::cout << "p=" << p << "  omega=" << format_number(special_frequency(h0, p)) << "\n";
    return 0;
  }

  const std::string hash = config_hash(config);
  const int L = config.get_int("L");
  const double v0 = config.get_double("v0", 1.0);
  const double h0 = config.get_double("h0");
  const double omega =
      config.has("p") ? special_frequency(h0, config.get_int("p")) : config.get_double("omega");
  const double theta = config.get_double("theta", 0.0);
  const int m_max = config.get_int("m_max", 2500);

  const SpinBasis basis = build_basis(L);
  DriveConfig drive{h0, omega, v0, {}};
  validate_drive(drive);
  const double T = drive.period();

  const auto [first, second] = square_pulse_segments(basis, h0, v0);
  const FloquetOperator u = build_floquet(first, second, T);
  const StateVector psi0 = superposed_initial_state(basis, theta);
  const RealOperator observable = zz_minus_yy(basis);
  const StroboscopicTrace trace = stroboscopic_run(u, psi0, m_max, observable);

  const int m0 = config.get_int("m0", 1500);
  const int window = config.get_int("window", 1000);
  const int stride = config.get_int("stride", 5);
  double average = 0.0;
  bool have_average = false;
  if (m0 + window <= m_max) {
    average = long_time_average(trace, m0, window, stride);
    have_average = true;
  }

  const fs::path root = output_root(args);
  const std::string name = "floquet_L" + std::to_string(L) + "_h0" + number_slug(h0) + "_om" +
                           number_slug(omega) + "_theta" + number_slug(theta);
  CsvFile csv(kVersion, hash, {"m", "delta_c"});
  for (int m = 0; m <= m_max; ++m) csv.add_row(std::vector<double>{double(m), trace.values(m)});
  csv.write(root / (name + ".csv"));

  json summary;
  summary["version"] = kVersion;
  summary["config_hash"] = hash;
  summary["L"] = L;
  summary["v0"] = v0;
  summary["h0"] = h0;
  summary["omega_d"] = omega;
  summary["theta"] = theta;
  summary["m_max"] = m_max;
  summary["unitarity_defect"] = unitarity_defect(u);
  summary["max_norm_defect"] = trace.max_norm_defect;
  if (have_average) summary["delta_c_avg"] = average;
  write_json(root / (name + ".summary.json"), summary);
  write_text(root / (name + ".plot.txt"),
             "# gnuplot recipe\nset xlabel 'm'\nset ylabel 'Delta C'\n"
             "plot '" + name + ".csv' every ::1 using 1:2 with lines notitle\n");
  std::cout << "wrote " << (root / (name + ".csv")).string() << "\n";
  return 0;
}

int cmd_floquet_sweep(const CommonArgs& args) {
  const RunConfig config = load_config(args, "floquet-sweep");
  const std::string hash = config_hash(config);
  const int L = config.get_int("L");
  const double v0 = config.get_double("v0", 1.0);
  const std::string sweep = config.get_string("sweep", "h0");
  const double lo = config.get_double("grid_min");
  const double hi = config.get_double("grid_max");
  const int n = config.get_int("grid_points", 11);
  const int p = config.get_int("p", 1);
  const int m_max = config.get_int("m_max", 2500);
  const int m0 = config.get_int("m0", 1500);
  const int window = config.get_int("window", 1000);
  const int stride = config.get_int("stride", 5);

  const SpinBasis basis = build_basis(L);
  const RealOperator observable = zz_minus_yy(basis);

  CsvFile csv(kVersion, hash, {sweep, "delta_c_avg"});
  json points = json::array();
  for (int i = 0; i < n; ++i) {
    const double value = n == 1 ? lo : lo + (hi - lo) * double(i) / double(n - 1);
    double h0 = config.get_double("h0", 1.0);
    double theta = config.get_double("theta", 0.0);
    if (sweep == "h0")
      h0 = value;
    else if (sweep == "theta")
      theta = value;
    else
      throw ConfigError("sweep must be h0 or theta");
    const double omega =
        config.has("omega") ? config.get_double("omega") : special_frequency(h0, p);
    const double T = 2.0 * kPi / omega;
    const auto [first, second] = square_pulse_segments(basis, h0, v0);
    const FloquetOperator u = build_floquet(first, second, T);
    const StateVector psi0 = superposed_initial_state(basis, theta);
    const StroboscopicTrace trace = stroboscopic_run(u, psi0, m_max, observable);
    const double average = long_time_average(trace, m0, window, stride);
    csv.add_row(std::vector<double>{value, average});
    points.push_back({{"value", value},
                      {"h0", h0},
                      {"omega_d", omega},
                      {"theta", theta},
                      {"delta_c_avg", average}});
  }

  const fs::path root = output_root(args);
  const std::string name =
      "floquet_sweep_" + sweep + "_L" + std::to_string(L) + "_v0" + number_slug(v0);
  csv.write(root / (name + ".csv"));
  json summary;
  summary["version"] = kVersion;
  summary["config_hash"] = hash;
  summary["L"] = L;
  summary["sweep"] = sweep;
  summary["points"] = points;
  write_json(root / (name + ".summary.json"), summary);
  std::cout << "wrote " << (root / (name + ".csv")).string() << "\n";
  return 0;
}

// --- perturbation-theory identity suite -----------------------------------------

json report_to_json(const IdentityReport& rep) {
  json j;
  j["harmonic_sum"] = rep.harmonic_sum;
  j["harmonic_ladder"] = rep.harmonic_ladder;
  j["pair_symmetry"] = rep.pair_symmetry;
  j["pair_closed_form"] = rep.pair_closed_form;
  j["second_order"] = rep.second_order;
  j["triple_reversal"] = rep.triple_reversal;
  j["triple_cyclic"] = rep.triple_cyclic;
  j["order1_routes"] = rep.order1_routes;
  j["order3_routes"] = rep.order3_routes;
  if (rep.block_001) j["block_001"] = *rep.block_001;
  j["parity_inverse"] = rep.parity_inverse;
  j["parity_odd"] = rep.parity_odd;
  j["order1_commutator_x"] = rep.order1_commutator_x;
  j["order3_commutator_x"] = rep.order3_commutator_x;
  j["branch_warning"] = rep.branch_warning;
  return j;
}

bool report_passes(const IdentityReport& rep) {
  return rep.harmonic_sum < 1e-14 && rep.harmonic_ladder < 1e-10 && rep.pair_symmetry < 1e-12 &&
         rep.pair_closed_form < 1e-12 && rep.second_order < 1e-12 &&
         rep.triple_reversal < 1e-12 && rep.triple_cyclic < 1e-12 &&
         rep.order1_routes < 1e-12 && rep.order3_routes < 1e-10 &&
         (!rep.block_001 || *rep.block_001 < 1e-10) && rep.parity_inverse < 1e-10 &&
         rep.parity_odd < 1e-9;
}

int cmd_fpt_check(const CommonArgs& args) {
  const RunConfig config = load_config(args, "fpt-check");
  const std::string hash = config_hash(config);
  const int L = config.get_int("L", 3);
  const int n_points = config.get_int("points", 3);
  const unsigned seed = static_cast<unsigned>(config.get_int("seed", 1));
  const bool include_special = config.get_int("include_special", 1) != 0;

  const SpinBasis basis = build_basis(L);
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> v0_range(0.3, 1.2), h0_range(0.8, 2.5),
      t_range(0.8, 5.5);

  struct Point {
    double v0, h0, period;
  };
  std::vector<Point> grid;
  for (int i = 0; i < n_points; ++i)
    grid.push_back({v0_range(rng), h0_range(rng), t_range(rng)});
  if (include_special) {
    const double h0 = 1.5;
    grid.push_back({0.8, h0, 2.0 * kPi / h0});  // p = 1: exercises the block check
  }

  json out;
  out["version"] = kVersion;
  out["config_hash"] = hash;
  out["L"] = L;
  json points = json::array();
  bool all_ok = true;
  for (const Point& pt : grid) {
    const IdentityReport rep = identity_report(basis, pt.v0, pt.h0, pt.period);
    const bool ok = report_passes(rep);
    all_ok = all_ok && ok;
    json j = report_to_json(rep);
    j["v0"] = pt.v0;
    j["h0"] = pt.h0;
    j["T"] = pt.period;
    j["passed"] = ok;
    points.push_back(j);
  }
  out["points"] = points;
  out["all_passed"] = all_ok;

  const fs::path root = output_root(args);
  const std::string name = "fptcheck_L" + std::to_string(L) + "_seed" + std::to_string(seed);
  write_json(root / (name + ".json"), out);
  std::cout << "wrote " << (root / (name + ".json")).string()
            << (all_ok ? " (all identities passed)" : " (FAILURES)") << "\n";
  return all_ok ? 0 : 1;
}

// --- fit ----------------------------------------------------------------------

int cmd_fit(const CommonArgs& args) {
  const RunConfig config = load_config(args, "fit");
  const std::string hash = config_hash(config);
  const std::string input = config.get_string("input");
  if (input.empty()) throw ConfigError("fit: missing input CSV path (key 'input')");
  const std::string column = config.get_string("column", "Q");

  std::ifstream in(input);
  if (!in) throw ConfigError("fit: cannot open " + input);
  std::string line;
  std::vector<double> taus, values;
  int tau_col = -1, val_col = -1;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    if (tau_col < 0) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i] == "tau") tau_col = static_cast<int>(i);
        if (cells[i] == column) val_col = static_cast<int>(i);
      }
      if (tau_col < 0 || val_col < 0)
        throw ConfigError("fit: input needs 'tau' and '" + column + "' columns");
      continue;
    }
    taus.push_back(std::stod(cells[tau_col]));
    values.push_back(std::stod(cells[val_col]));
  }

  const double window_lo = config.get_double("window_lo", taus.empty() ? 0.0 : taus.front());
  const double window_hi = config.get_double("window_hi", taus.empty() ? 0.0 : taus.back());
  const PowerLawFit fit = fit_power_law(taus, values, window_lo, window_hi);

  json out;
  out["version"] = kVersion;
  out["config_hash"] = hash;
  out["input"] = input;
  out["column"] = column;
  out["window"] = {window_lo, window_hi};
  out["a"] = fit.a;
  out["b"] = fit.b;
  out["r2"] = fit.r2;
  out["n_points"] = fit.n_points;

  const fs::path root = output_root(args);
  const std::string stem = fs::path(input).stem().string();
  write_json(root / ("fit_" + stem + ".json"), out);

  if (config.get_int("segments", 1) != 0) {
    try {
      const auto segments = segment_decades(taus, values);
      CsvFile csv(kVersion, hash, {"tau_lo", "tau_hi", "fitted_b", "label", "n_points"});
      for (const DecadeSegment& s : segments)
        csv.add_row(
            std::vector<double>{s.tau_lo, s.tau_hi, s.fitted_b, s.label, double(s.n_points)});
      csv.write(root / ("segments_" + stem + ".csv"));
    } catch (const ConfigError& e) {
      std::cerr << "segmentation skipped: " << e.what() << "\n";
    }
  }
  std::cout << "fit: a=" << format_number(fit.a) << " b=" << format_number(fit.b)
            << " r2=" << format_number(fit.r2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynamics of a spin chain with an extensively degenerate point"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  CommonArgs spectrum_args, ramp_args, sweep_args, floquet_args, fsweep_args, fpt_args, fit_args;
  int special_table = 0;

  add_common(app.add_subcommand("spectrum", "eigenvalues on a transverse-field grid"),
             &spectrum_args);
  add_common(app.add_subcommand("ramp", "one ramp protocol, F(t) and Q(t)"), &ramp_args);
  add_common(app.add_subcommand("ramp-sweep", "terminal F/Q versus ramp time"), &sweep_args);
  CLI::App* floquet_cmd = app.add_subcommand("floquet", "square-pulse stroboscopic run");
  add_common(floquet_cmd, &floquet_args);
  floquet_cmd->add_option("--special-table", special_table,
                          "print omega_p* for p = 1..N and exit");
  add_common(app.add_subcommand("floquet-sweep", "long-time average over a drive grid"),
             &fsweep_args);
  add_common(app.add_subcommand("fpt-check", "perturbation-theory identity residuals"),
             &fpt_args);
  add_common(app.add_subcommand("fit", "power-law fit of a sweep CSV"), &fit_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("spectrum")) return cmd_spectrum(spectrum_args);
    if (app.got_subcommand("ramp")) return cmd_ramp(ramp_args);
    if (app.got_subcommand("ramp-sweep")) return cmd_ramp_sweep(sweep_args);
    if (app.got_subcommand("floquet")) return cmd_floquet(floquet_args, special_table);
    if (app.got_subcommand("floquet-sweep")) return cmd_floquet_sweep(fsweep_args);
    if (app.got_subcommand("fpt-check")) return cmd_fpt_check(fpt_args);
    if (app.got_subcommand("fit")) return cmd_fit(fit_args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
