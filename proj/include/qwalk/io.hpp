#pragma once

// File formats: JSON for states and count sets, CSV for tables.

#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "qwalk/disorder.hpp"
#include "qwalk/momentum.hpp"
#include "qwalk/recover.hpp"
#include "qwalk/tomography.hpp"
#include "qwalk/topology.hpp"
#include "qwalk/walk.hpp"

namespace qwalk::io {

using json = nlohmann::json;

/// {"offset": int, "amps": [[reH, imH, reV, imV], ...]}
json to_json(const WalkerState& state);
WalkerState walker_state_from_json(const json& j);

/// WalkerState layout plus "length", "k_grid" and "weights".
json to_json(const MomentumState& ms);

/// {"shots", "seed", "direct": {"offset", "counts": [[nH, nV, nR, nD], ...]}, "shifted": {...}}
json to_json(const CountSet& counts);
CountSet count_set_from_json(const json& j);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

/// "site,probability"; sites with exactly zero probability are skipped.
void write_distribution_csv(std::ostream& out, const Distribution& dist);

/// "k,E,nx,ny,nz"
void write_band_csv(std::ostream& out, std::span<const BandPoint> points);

/// "k,nx,ny,nz,flag"
void write_axis_csv(std::ostream& out, const AxisField& field);

/// "theta1_deg,theta2_deg,nu_prime,nu_dprime,two_nu0,two_nupi,flags"
void write_phase_csv(std::ostream& out, std::span<const PhaseCell> cells);

/// "delta_deg,T,samples,readable_fraction,modal_winding,mean_divergence_rad"
void write_disorder_header(std::ostream& out);
void write_disorder_row(std::ostream& out, const DisorderConfig& config,
                        const EnsembleSummary& summary);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace qwalk::io
