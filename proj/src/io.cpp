#include "qwalk/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <stdexcept>

namespace qwalk::io {

namespace {

json spinor_row(const Spinor& s) {
  return json::array({s.h.real(), s.h.imag(), s.v.real(), s.v.imag()});
}

Spinor spinor_from_row(const json& row) {
  if (!row.is_array() || row.size() != 4) {
    throw std::invalid_argument("amplitude rows must be [reH, imH, reV, imV]");
  }
  return {{row[0].get<double>(), row[1].get<double>()},
          {row[2].get<double>(), row[3].get<double>()}};
}

json count_value(double v) {
  if (v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<long long>(v);
  return v;
}

json block_to_json(const CountBlock& block) {
  json rows = json::array();
  for (const auto& c : block.counts) {
    rows.push_back(json::array(
        {count_value(c[kOutH]), count_value(c[kOutV]), count_value(c[kOutR]), count_value(c[kOutD])}));
  }
  return {{"offset", block.offset}, {"counts", rows}};
}

CountBlock block_from_json(const json& j) {
  CountBlock block;
  block.offset = j.at("offset").get<long>();
  for (const auto& row : j.at("counts")) {
    if (!row.is_array() || row.size() != kOutcomes) {
      throw std::invalid_argument("count rows must be [nH, nV, nR, nD]");
    }
    std::array<double, kOutcomes> c{};
    for (std::size_t i = 0; i < kOutcomes; ++i) {
      c[i] = row[i].get<double>();
      if (c[i] < 0.0) throw std::invalid_argument("counts must be non-negative");
    }
    block.counts.push_back(c);
  }
  return block;
}

}  // namespace

json to_json(const WalkerState& state) {
  json amps = json::array();
  for (const auto& s : state.amps()) amps.push_back(spinor_row(s));
  return {{"offset", state.offset()}, {"amps", amps}};
}

WalkerState walker_state_from_json(const json& j) {
  std::vector<Spinor> amps;
  for (const auto& row : j.at("amps")) amps.push_back(spinor_from_row(row));
  return {j.at("offset").get<long>(), std::move(amps)};
}

json to_json(const MomentumState& ms) {
  json amps = json::array();
  for (const auto& s : ms.spinors) amps.push_back(spinor_row(s));
  return {{"offset", ms.offset},
          {"length", ms.length},
          {"k_grid", ms.k},
          {"amps", amps},
          {"weights", ms.weights}};
}

json to_json(const CountSet& counts) {
  return {{"shots", counts.shots},
          {"seed", counts.seed},
          {"direct", block_to_json(counts.direct)},
          {"shifted", block_to_json(counts.shifted)}};
}

CountSet count_set_from_json(const json& j) {
  CountSet counts;
  counts.shots = j.at("shots").get<long>();
  counts.seed = j.value("seed", std::uint64_t{0});
  counts.direct = block_from_json(j.at("direct"));
  counts.shifted = block_from_json(j.at("shifted"));
  if (counts.shots < 1) throw std::invalid_argument("count set: shots must be positive");
  return counts;
}

std::string format_double(double v) {
  char buf[32];
  for (int precision = 6; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

void write_distribution_csv(std::ostream& out, const Distribution& dist) {
  out << "site,probability\n";
  for (const auto& [x, p] : dist) {
    if (p == 0.0) continue;
    out << x << ',' << format_double(p) << '\n';
  }
}

void write_band_csv(std::ostream& out, std::span<const BandPoint> points) {
  out << "k,E,nx,ny,nz\n";
  for (const auto& b : points) {
    out << format_double(b.k) << ',' << format_double(b.energy) << ',' << format_double(b.axis[0])
        << ',' << format_double(b.axis[1]) << ',' << format_double(b.axis[2]) << '\n';
  }
}

void write_axis_csv(std::ostream& out, const AxisField& field) {
  out << "k,nx,ny,nz,flag\n";
  for (const auto& s : field.samples) {
    out << format_double(s.k) << ',' << format_double(s.axis[0]) << ','
        << format_double(s.axis[1]) << ',' << format_double(s.axis[2]) << ',' << to_string(s.flag)
        << '\n';
  }
}

void write_phase_csv(std::ostream& out, std::span<const PhaseCell> cells) {
  out << "theta1_deg,theta2_deg,nu_prime,nu_dprime,two_nu0,two_nupi,flags\n";
  for (const auto& c : cells) {
    out << format_double(rad_to_deg(c.theta1)) << ',' << format_double(rad_to_deg(c.theta2))
        << ',';
    if (c.gap_closed) {
      out << "NA,NA,NA,NA";
    } else {
      out << c.report.nu_prime << ',' << c.report.nu_double_prime << ',' << c.report.two_nu0
          << ',' << c.report.two_nu_pi;
    }
    out << ',' << c.flags() << '\n';
  }
}

void write_disorder_header(std::ostream& out) {
  out << "delta_deg,T,samples,readable_fraction,modal_winding,mean_divergence_rad\n";
}

void write_disorder_row(std::ostream& out, const DisorderConfig& config,
                        const EnsembleSummary& summary) {
  out << format_double(rad_to_deg(config.delta_theta1)) << ',' << config.steps << ','
      << config.samples << ',' << format_double(summary.readable_fraction) << ',';
  if (summary.modal_winding) {
    out << *summary.modal_winding;
  } else {
    out << "NA";
  }
  out << ',' << format_double(summary.mean_divergence) << '\n';
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return json::parse(in);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << contents;
}

}  // namespace qwalk::io
