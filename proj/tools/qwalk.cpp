// qwalk: command-line front end for the split-step walk toolkit.
//
// Exit codes: 0 success, 1 domain error (JSON on stderr), 2 usage error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/disorder.hpp"
#include "qwalk/errors.hpp"
#include "qwalk/io.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/recover.hpp"
#include "qwalk/tomography.hpp"
#include "qwalk/topology.hpp"
#include "qwalk/walk.hpp"

using namespace qwalk;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct WalkFlags {
  double theta1 = 22.5;
  double theta2 = 10.0;
  std::string frame = "standard";
  std::string protocol = "split";
  int steps = 20;
  std::size_t kpoints = 0;
  std::string initial = "H";
  std::string out;
};

const std::vector<std::string> kFrames{"standard", "prime", "dprime"};
const std::vector<std::string> kInitials{"H", "V", "L", "D", "chiral"};

void add_angles(CLI::App* app, WalkFlags& f) {
  app->add_option("--theta1", f.theta1, "first coin angle, degrees")->capture_default_str();
  app->add_option("--theta2", f.theta2, "second coin angle, degrees")->capture_default_str();
  app->add_option("--frame", f.frame, "time-frame")
      ->check(CLI::IsMember(kFrames))
      ->capture_default_str();
}

void add_initial(CLI::App* app, WalkFlags& f) {
  app->add_option("--initial", f.initial, "initial coin state at the origin")
      ->check(CLI::IsMember(kInitials))
      ->capture_default_str();
}

CoinAngles angles_of(const WalkFlags& f) { return CoinAngles::from_degrees(f.theta1, f.theta2); }

Spinor initial_spinor(const WalkFlags& f) {
  if (f.initial == "H") return basis::H;
  if (f.initial == "V") return basis::V;
  if (f.initial == "L") return basis::L;
  if (f.initial == "D") return basis::D;
  if (f.protocol == "hadamard") throw UsageError("--initial chiral needs the split protocol");
  return default_initial_spinor(frame_from_string(f.frame), angles_of(f));
}

// Recovery picks the chiral spinor itself, after its flat-band check.
std::optional<Spinor> recovery_initial(const WalkFlags& f) {
  if (f.initial == "chiral") return std::nullopt;
  return initial_spinor(f);
}

Protocol protocol_of(const WalkFlags& f) {
  if (f.protocol == "hadamard") return Protocol::simple(hadamard_coin());
  return Protocol::split_step(frame_from_string(f.frame));
}

void emit(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout << data;
  } else {
    io::write_text_file(path, data);
  }
}

std::string fixed(double v, int digits = 6) {
  if (std::abs(v) < 0.5 * std::pow(10.0, -digits)) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string signed_int(int w) { return w > 0 ? "+" + std::to_string(w) : std::to_string(w); }

// --- subcommands -----------------------------------------------------------

void run_walk(const WalkFlags& f, const std::string& state_out) {
  if (f.steps < 0) throw UsageError("--steps must be non-negative");
  const auto state = evolve(WalkerState::delta(0, initial_spinor(f)), protocol_of(f), angles_of(f), f.steps);
  const auto dist = position_distribution(state);
  std::ostringstream csv;
  io::write_distribution_csv(csv, dist);
  emit(f.out, csv.str());
  if (!state_out.empty()) io::write_text_file(state_out, io::to_json(state).dump(1) + "\n");
  if (!f.out.empty() && f.out != "-") {
    std::cout << "steps " << f.steps << ", window [" << state.offset() << ", " << state.last_site()
              << "], norm " << fixed(state.norm_sq(), 12) << "\n";
    if (f.steps > 0) {
      std::cout << "M1 " << fixed(normalized_moment(dist, f.steps, 1)) << ", M2 "
                << fixed(normalized_moment(dist, f.steps, 2)) << "\n";
    }
  }
}

void run_bands(const WalkFlags& f) {
  const std::size_t m = f.kpoints ? f.kpoints : 101;
  const Frame frame = frame_from_string(f.frame);
  std::vector<BandPoint> points;
  for (double k : k_grid(m)) points.push_back(band_point(frame, angles_of(f), k));
  std::ostringstream csv;
  io::write_band_csv(csv, points);
  emit(f.out, csv.str());
}

void run_axis(const WalkFlags& f) {
  if (f.steps < 2) throw UsageError("--steps must be at least 2");
  const Frame frame = frame_from_string(f.frame);
  const auto field = recover_axes(frame, angles_of(f), f.steps, f.kpoints, recovery_initial(f));
  std::ostringstream csv;
  io::write_axis_csv(csv, field);
  emit(f.out, csv.str());
  if (!f.out.empty() && f.out != "-") {
    std::cout << field.samples.size() << " k-points, " << field.interpolated_count()
              << " interpolated\n";
  }
}

void run_winding(const WalkFlags& f, const std::string& mode) {
  const Frame frame = frame_from_string(f.frame);
  const auto angles = angles_of(f);
  int w = 0;
  if (mode == "analytic") {
    const std::size_t m = f.kpoints ? f.kpoints : kAnalyticSamples;
    w = winding_number(analytic_axes(frame, angles, m), chiral_axis(frame, angles));
  } else {
    if (f.steps < 2) throw UsageError("--steps must be at least 2");
    const auto field = recover_axes(frame, angles, f.steps, f.kpoints, recovery_initial(f));
    w = winding_number(field.axes(), chiral_axis(frame, angles));
  }
  std::cout << signed_int(w) << "\n";
}

void run_phase_scan(std::size_t points, double offset1, double offset2, const std::string& out) {
  if (points < 1) throw UsageError("--points must be positive");
  const auto g1 = offset_angle_grid(points, offset1);
  const auto g2 = offset_angle_grid(points, offset2);
  const auto cells = phase_scan(g1, g2);
  std::ostringstream csv;
  io::write_phase_csv(csv, cells);
  emit(out, csv.str());
  if (!out.empty() && out != "-") {
    std::size_t gaps = 0, boundary = 0;
    for (const auto& c : cells) {
      gaps += c.gap_closed;
      boundary += c.boundary;
    }
    std::cout << cells.size() << " cells, " << boundary << " near a boundary, " << gaps
              << " gap-closed\n";
  }
}

void run_tomo_simulate(const WalkFlags& f, long shots, std::uint64_t seed,
                       const std::string& state_out) {
  if (shots < 1) throw UsageError("--shots must be positive");
  if (f.steps < 0) throw UsageError("--steps must be non-negative");
  const auto state = evolve(WalkerState::delta(0, initial_spinor(f)), protocol_of(f), angles_of(f), f.steps);
  const auto counts = simulate_counts(state, shots, seed);
  emit(f.out, io::to_json(counts).dump() + "\n");
  if (!state_out.empty()) io::write_text_file(state_out, io::to_json(state).dump(1) + "\n");
}

void run_tomo_reconstruct(const std::string& counts_path, const AnnealConfig& config,
                          const std::string& truth_path, const std::string& out) {
  const auto counts = io::count_set_from_json(io::read_json_file(counts_path));
  const auto rec = reconstruct(counts, config);
  emit(out, io::to_json(rec.state).dump(1) + "\n");
  if (!out.empty() && out != "-") {
    std::cout << "likelihood " << fixed(rec.likelihood, 4) << " (initial "
              << fixed(rec.initial_likelihood, 4) << ") over " << counts.cells() << " cells\n";
    if (!truth_path.empty()) {
      const auto truth = io::walker_state_from_json(io::read_json_file(truth_path));
      std::cout << "fidelity " << fixed(state_fidelity(rec.state, truth)) << "\n";
    }
  }
}

void run_disorder(const WalkFlags& f, const std::vector<double>& deltas, int samples,
                  std::uint64_t seed) {
  if (samples < 1) throw UsageError("--samples must be positive");
  if (f.steps < 2) throw UsageError("--steps must be at least 2");
  std::ostringstream csv;
  io::write_disorder_header(csv);
  for (double d : deltas) {
    if (d < 0.0) throw UsageError("--delta-theta1 must be non-negative");
    DisorderConfig config;
    config.mean_angles = angles_of(f);
    config.delta_theta1 = deg_to_rad(d);
    config.frame = frame_from_string(f.frame);
    config.steps = f.steps;
    config.samples = samples;
    config.seed = seed;
    config.kpoints = f.kpoints;
    io::write_disorder_row(csv, config, disorder_ensemble(config));
  }
  emit(f.out, csv.str());
}

void print_error(const std::string& kind, const std::string& message) {
  std::cerr << io::json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split-step quantum walk simulation, tomography and topology readout"};
  app.require_subcommand(1);

  WalkFlags walk_flags;
  std::string walk_state_out;
  auto* walk = app.add_subcommand("walk", "evolve a walker from the origin, write P(x) as CSV");
  add_angles(walk, walk_flags);
  add_initial(walk, walk_flags);
  walk->add_option("--protocol", walk_flags.protocol, "coined walk kind")
      ->check(CLI::IsMember({"hadamard", "split"}))
      ->capture_default_str();
  walk->add_option("--steps", walk_flags.steps)->capture_default_str();
  walk->add_option("--out", walk_flags.out, "distribution CSV (stdout if omitted)");
  walk->add_option("--state-out", walk_state_out, "final WalkerState JSON");

  WalkFlags band_flags;
  auto* bands = app.add_subcommand("bands", "quasienergy and eigen-axis table over the Brillouin zone");
  add_angles(bands, band_flags);
  bands->add_option("--kpoints", band_flags.kpoints, "grid size (default 101)");
  bands->add_option("--out", band_flags.out);

  WalkFlags axis_flags;
  axis_flags.initial = "chiral";
  auto* axis = app.add_subcommand("axis", "recover n(k) from simulated {0, 1, T} snapshots");
  add_angles(axis, axis_flags);
  add_initial(axis, axis_flags);
  axis->add_option("--steps", axis_flags.steps)->capture_default_str();
  axis->add_option("--kpoints", axis_flags.kpoints, "grid size (default 2 steps + 1)");
  axis->add_option("--out", axis_flags.out);

  WalkFlags wind_flags;
  wind_flags.initial = "chiral";
  std::string mode = "analytic";
  auto* winding = app.add_subcommand("winding", "print the winding number of n(k)");
  add_angles(winding, wind_flags);
  add_initial(winding, wind_flags);
  winding->add_option("--mode", mode)
      ->check(CLI::IsMember({"analytic", "dynamics"}))
      ->capture_default_str();
  winding->add_option("--steps", wind_flags.steps)->capture_default_str();
  winding->add_option("--kpoints", wind_flags.kpoints);

  std::size_t scan_points = 64;
  double scan_offset1 = 0.3, scan_offset2 = 0.6;
  std::string scan_out;
  auto* scan = app.add_subcommand("phase-scan", "nu', nu'' over a (theta1, theta2) grid");
  scan->add_option("--points", scan_points, "grid points per angle")->capture_default_str();
  scan->add_option("--offset1", scan_offset1, "theta1 grid offset in units of the step")
      ->capture_default_str();
  scan->add_option("--offset2", scan_offset2, "theta2 grid offset in units of the step")
      ->capture_default_str();
  scan->add_option("--out", scan_out);

  WalkFlags sim_flags;
  sim_flags.initial = "L";
  long shots = 20000;
  std::uint64_t sim_seed = 1;
  std::string sim_state_out;
  auto* sim = app.add_subcommand("tomo-simulate", "synthetic tomography counts for a walked state");
  add_angles(sim, sim_flags);
  add_initial(sim, sim_flags);
  sim->add_option("--protocol", sim_flags.protocol)
      ->check(CLI::IsMember({"hadamard", "split"}))
      ->capture_default_str();
  sim->add_option("--steps", sim_flags.steps)->capture_default_str();
  sim->add_option("--shots", shots, "shots per analyzer setting")->capture_default_str();
  sim->add_option("--seed", sim_seed)->capture_default_str();
  sim->add_option("--out", sim_flags.out, "CountSet JSON");
  sim->add_option("--state-out", sim_state_out, "true WalkerState JSON");

  std::string counts_path, truth_path, rec_out;
  AnnealConfig anneal;
  auto* rec = app.add_subcommand("tomo-reconstruct", "anneal a pure state from a CountSet");
  rec->add_option("counts", counts_path, "CountSet JSON")->required();
  rec->add_option("--seed", anneal.seed)->capture_default_str();
  rec->add_option("--iterations", anneal.iterations)->capture_default_str();
  rec->add_option("--restarts", anneal.restarts)->capture_default_str();
  rec->add_option("--alpha", anneal.alpha)->capture_default_str();
  rec->add_option("--truth", truth_path, "WalkerState JSON to report fidelity against");
  rec->add_option("--out", rec_out, "reconstructed WalkerState JSON");

  WalkFlags dis_flags;
  dis_flags.theta1 = -22.5;
  dis_flags.frame = "prime";
  std::vector<double> deltas{3.0};
  int samples = 100;
  std::uint64_t dis_seed = 1;
  auto* dis = app.add_subcommand("disorder", "winding readout under per-step theta1 noise");
  add_angles(dis, dis_flags);
  dis->add_option("--steps", dis_flags.steps)->capture_default_str();
  dis->add_option("--kpoints", dis_flags.kpoints);
  dis->add_option("--delta-theta1", deltas, "half-width(s) of the theta1 window, degrees")
      ->delimiter(',');
  dis->add_option("--samples", samples)->capture_default_str();
  dis->add_option("--seed", dis_seed)->capture_default_str();
  dis->add_option("--out", dis_flags.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("UsageError", e.what());
    return 2;
  }

  try {
    if (*walk) run_walk(walk_flags, walk_state_out);
    if (*bands) run_bands(band_flags);
    if (*axis) run_axis(axis_flags);
    if (*winding) run_winding(wind_flags, mode);
    if (*scan) run_phase_scan(scan_points, scan_offset1, scan_offset2, scan_out);
    if (*sim) run_tomo_simulate(sim_flags, shots, sim_seed, sim_state_out);
    if (*rec) run_tomo_reconstruct(counts_path, anneal, truth_path, rec_out);
    if (*dis) run_disorder(dis_flags, deltas, samples, dis_seed);
  } catch (const DomainError& e) {
    print_error(e.kind(), e.what());
    return 1;
  } catch (const io::json::exception& e) {
    print_error("UsageError", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    print_error("UsageError", e.what());
    return 2;
  } catch (const std::domain_error& e) {
    print_error("DomainError", e.what());
    return 1;
  }
  return 0;
}
