#include "qwalk/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "qwalk/errors.hpp"
#include "qwalk/parallel.hpp"
#include "qwalk/random.hpp"

namespace qwalk {

namespace {

constexpr double kTwoPi = 2.0 * kPi;

double wrap_2pi(double a) {
  a = std::fmod(a, kTwoPi);
  return a < 0.0 ? a + kTwoPi : a;
}

double reflect_0_pi(double a) {
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  return a > kPi ? kTwoPi - a : a;
}

Spinor site_amplitude(const SiteParams& s) {
  const cplx phase = std::polar(s.p, -s.phi);
  return {phase * std::cos(s.theta / 2.0),
          phase * std::polar(std::sin(s.theta / 2.0), s.delta)};
}

/// Outcome probabilities {H, V, R, D} of an unnormalized local amplitude.
std::array<double, kOutcomes> outcome_weights(const Spinor& a) {
  return {std::norm(a.h), std::norm(a.v), 0.5 * std::norm(a.h + kI * a.v),
          0.5 * std::norm(a.h + a.v)};
}

double block_term(const Spinor& a, double scale, const std::array<double, kOutcomes>& observed) {
  const auto w = outcome_weights(a);
  double term = 0.0;
  for (std::size_t i = 0; i < kOutcomes; ++i) {
    const double model = std::max(kCountFloor, scale * w[i]);
    const double diff = model - observed[i];
    term += diff * diff / (2.0 * model);
  }
  return term;
}

/// Likelihood over a flat parameter vector [p, phi, theta, delta] per site,
/// with cached per-site amplitudes so single-parameter moves are cheap.
class Objective {
 public:
  Objective(const CountSet& counts, bool with_shifted)
      : counts_(counts), with_shifted_(with_shifted), n_(counts.direct.size()) {}

  void load(const std::vector<double>& x) {
    x_ = x;
    amps_.resize(n_);
    norm_sq_ = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      amps_[i] = site_amplitude(params(i));
      norm_sq_ += x_[4 * i] * x_[4 * i];
    }
    direct_.assign(n_, 0.0);
    shifted_.assign(shifted_size(), 0.0);
    value_ = recompute_all(amps_, norm_sq_, direct_, shifted_);
  }

  double value() const { return value_; }
  const std::vector<double>& point() const { return x_; }

  /// Likelihood with x[index] = v; the move is held until commit().
  double trial(std::size_t index, double v) {
    pending_index_ = index;
    pending_value_ = v;
    const std::size_t site = index / 4;
    SiteParams s = params(site);
    switch (index % 4) {
      case 0: s.p = v; break;
      case 1: s.phi = v; break;
      case 2: s.theta = v; break;
      default: s.delta = v; break;
    }
    pending_amp_ = site_amplitude(s);
    if (index % 4 == 0) {
      pending_norm_sq_ = norm_sq_ - x_[index] * x_[index] + v * v;
      scratch_amps_ = amps_;
      scratch_amps_[site] = pending_amp_;
      scratch_direct_.resize(n_);
      scratch_shifted_.resize(shifted_size());
      pending_full_ = true;
      pending_total_ =
          recompute_all(scratch_amps_, pending_norm_sq_, scratch_direct_, scratch_shifted_);
      return pending_total_;
    }
    pending_full_ = false;
    pending_norm_sq_ = norm_sq_;
    const double scale = counts_.shots / norm_sq_;
    double total = value_;
    pending_direct_ = block_term(pending_amp_, scale, counts_.direct.counts[site]);
    total += pending_direct_ - direct_[site];
    if (with_shifted_) {
      if (site >= 1 && site - 1 < shifted_size()) {
        pending_left_ = block_term({pending_amp_.h, amps_[site - 1].v}, scale,
                                   counts_.shifted.counts[site - 1]);
        total += pending_left_ - shifted_[site - 1];
      }
      if (site < shifted_size()) {
        pending_right_ = block_term({amps_[site + 1].h, pending_amp_.v}, scale,
                                    counts_.shifted.counts[site]);
        total += pending_right_ - shifted_[site];
      }
    }
    pending_total_ = total;
    return total;
  }

  void commit() {
    const std::size_t site = pending_index_ / 4;
    x_[pending_index_] = pending_value_;
    amps_[site] = pending_amp_;
    norm_sq_ = pending_norm_sq_;
    if (pending_full_) {
      direct_.swap(scratch_direct_);
      shifted_.swap(scratch_shifted_);
    } else {
      direct_[site] = pending_direct_;
      if (with_shifted_) {
        if (site >= 1 && site - 1 < shifted_size()) shifted_[site - 1] = pending_left_;
        if (site < shifted_size()) shifted_[site] = pending_right_;
      }
    }
    value_ = pending_total_;
  }

 private:
  SiteParams params(std::size_t i) const {
    return {x_[4 * i], x_[4 * i + 1], x_[4 * i + 2], x_[4 * i + 3]};
  }

  std::size_t shifted_size() const { return with_shifted_ ? counts_.shifted.size() : 0; }

  double recompute_all(const std::vector<Spinor>& amps, double norm_sq,
                       std::vector<double>& direct, std::vector<double>& shifted) const {
    const double scale = norm_sq > 0.0 ? counts_.shots / norm_sq : 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      direct[i] = block_term(amps[i], scale, counts_.direct.counts[i]);
      total += direct[i];
    }
    for (std::size_t i = 0; i < shifted_size(); ++i) {
      shifted[i] = block_term({amps[i + 1].h, amps[i].v}, scale, counts_.shifted.counts[i]);
      total += shifted[i];
    }
    return total;
  }

  const CountSet& counts_;
  bool with_shifted_;
  std::size_t n_;
  std::vector<double> x_;
  std::vector<Spinor> amps_;
  double norm_sq_ = 0.0;
  std::vector<double> direct_, shifted_;
  double value_ = 0.0;

  std::size_t pending_index_ = 0;
  double pending_value_ = 0.0;
  Spinor pending_amp_{};
  double pending_norm_sq_ = 0.0;
  bool pending_full_ = false;
  double pending_total_ = 0.0;
  double pending_direct_ = 0.0, pending_left_ = 0.0, pending_right_ = 0.0;
  std::vector<Spinor> scratch_amps_;
  std::vector<double> scratch_direct_, scratch_shifted_;
};

std::vector<double> flatten(const SiteParametrization& params) {
  std::vector<double> x;
  x.reserve(4 * params.sites.size());
  for (const auto& s : params.sites) {
    x.insert(x.end(), {s.p, s.phi, s.theta, s.delta});
  }
  return x;
}

SiteParametrization unflatten(long offset, const std::vector<double>& x) {
  SiteParametrization params;
  params.offset = offset;
  const std::size_t n = x.size() / 4;
  double norm_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) norm_sq += x[4 * i] * x[4 * i];
  const double scale = norm_sq > 0.0 ? 1.0 / std::sqrt(norm_sq) : 0.0;
  const double gauge = n > 0 ? x[1] : 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    params.sites.push_back({std::abs(x[4 * i]) * scale, wrap_2pi(x[4 * i + 1] - gauge),
                            reflect_0_pi(x[4 * i + 2]), wrap_2pi(x[4 * i + 3])});
  }
  return params;
}

void check_shape(const SiteParametrization& params, const CountSet& counts) {
  if (params.sites.size() != counts.direct.size() || params.offset != counts.direct.offset) {
    throw std::invalid_argument("likelihood: parametrization window does not match the count set");
  }
  if (counts.shifted.size() + 1 != counts.direct.size() && counts.shifted.size() != 0) {
    throw std::invalid_argument("likelihood: shifted collection must cover one site fewer");
  }
}

}  // namespace

SiteParametrization SiteParametrization::from_state(const WalkerState& state) {
  SiteParametrization params;
  params.offset = state.offset();
  for (const auto& a : state.amps()) {
    SiteParams s;
    s.p = a.norm();
    s.theta = 2.0 * std::atan2(std::abs(a.v), std::abs(a.h));
    if (std::abs(a.h) > 0.0) {
      s.phi = -std::arg(a.h);
      s.delta = std::abs(a.v) > 0.0 ? std::arg(a.v) - std::arg(a.h) : 0.0;
    } else {
      s.phi = std::abs(a.v) > 0.0 ? -std::arg(a.v) : 0.0;
      s.delta = 0.0;
    }
    params.sites.push_back(s);
  }
  const double gauge = params.sites.front().phi;
  for (auto& s : params.sites) {
    s.phi = wrap_2pi(s.phi - gauge);
    s.delta = wrap_2pi(s.delta);
  }
  return params;
}

WalkerState SiteParametrization::to_state() const {
  std::vector<Spinor> amps;
  amps.reserve(sites.size());
  double norm_sq = 0.0;
  for (const auto& s : sites) {
    amps.push_back(site_amplitude(s));
    norm_sq += s.p * s.p;
  }
  const double scale = 1.0 / std::sqrt(norm_sq);
  for (auto& a : amps) a = a * scale;
  return {offset, std::move(amps)};
}

WalkerState spin_echo_shift(const WalkerState& state) {
  const auto amps = state.amps();
  std::vector<Spinor> out(amps.size() + 1);
  // out[i] covers site offset - 1 + i.
  for (std::size_t i = 0; i < amps.size(); ++i) {
    out[i].h = amps[i].h;
    out[i + 1].v = amps[i].v;
  }
  return {state.offset() - 1, std::move(out), WalkerState::Unchecked{}};
}

CountSet expected_counts(const WalkerState& state, long shots) {
  CountSet out;
  out.shots = shots;
  const double s = static_cast<double>(shots);
  out.direct.offset = state.offset();
  for (const auto& a : state.amps()) {
    auto w = outcome_weights(a);
    for (auto& v : w) v *= s;
    out.direct.counts.push_back(w);
  }
  out.shifted.offset = state.offset();
  for (long x = state.offset(); x < state.last_site(); ++x) {
    auto w = outcome_weights({state.at(x + 1).h, state.at(x).v});
    for (auto& v : w) v *= s;
    out.shifted.counts.push_back(w);
  }
  return out;
}

CountSet simulate_counts(const WalkerState& state, long shots, std::uint64_t seed) {
  if (shots < 1) throw std::invalid_argument("simulate_counts: shots must be positive");
  CountSet out;
  out.shots = shots;
  out.seed = seed;
  Rng rng(seed);

  auto sample_block = [&](const std::vector<Spinor>& locals, CountBlock& block) {
    const std::size_t n = locals.size();
    block.counts.assign(n, {0.0, 0.0, 0.0, 0.0});
    std::vector<std::array<double, kOutcomes>> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = outcome_weights(locals[i]);

    std::vector<double> z(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      z[2 * i] = w[i][kOutH];
      z[2 * i + 1] = w[i][kOutV];
    }
    const auto zc = multinomial(z, shots, rng);
    for (std::size_t i = 0; i < n; ++i) {
      block.counts[i][kOutH] = static_cast<double>(zc[2 * i]);
      block.counts[i][kOutV] = static_cast<double>(zc[2 * i + 1]);
    }
    for (const Outcome kept : {kOutD, kOutR}) {
      std::vector<double> p(n);
      for (std::size_t i = 0; i < n; ++i) p[i] = w[i][kept];
      const auto c = multinomial(p, shots, rng);
      for (std::size_t i = 0; i < n; ++i) block.counts[i][kept] = static_cast<double>(c[i]);
    }
  };

  out.direct.offset = state.offset();
  sample_block({state.amps().begin(), state.amps().end()}, out.direct);

  // The echo window is [offset - 1, last]; only [offset, last - 1] is kept,
  // and the edge sites' weight falls into the discarded outcome.
  std::vector<Spinor> echoed;
  for (long x = state.offset(); x < state.last_site(); ++x) {
    echoed.push_back({state.at(x + 1).h, state.at(x).v});
  }
  out.shifted.offset = state.offset();
  sample_block(echoed, out.shifted);
  return out;
}

double likelihood(const SiteParametrization& params, const CountSet& counts) {
  check_shape(params, counts);
  Objective objective(counts, true);
  objective.load(flatten(params));
  return objective.value();
}

double likelihood_direct_only(const SiteParametrization& params, const CountSet& counts) {
  check_shape(params, counts);
  Objective objective(counts, false);
  objective.load(flatten(params));
  return objective.value();
}

SiteParametrization initial_guess(const CountSet& counts) {
  SiteParametrization params;
  params.offset = counts.direct.offset;
  const std::size_t n = counts.direct.size();
  params.sites.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = counts.direct.counts[i];
    const double total = c[kOutH] + c[kOutV];
    SiteParams& s = params.sites[i];
    if (total <= 0.0) {
      s = {0.0, 0.0, kPi / 2.0, 0.0};
      continue;
    }
    s.p = std::sqrt(total / static_cast<double>(counts.shots));
    s.theta = 2.0 * std::atan2(std::sqrt(c[kOutV]), std::sqrt(c[kOutH]));
    // D weight (1 + sin t cos d)/2, R weight (1 - sin t sin d)/2.
    s.delta = wrap_2pi(std::atan2(1.0 - 2.0 * c[kOutR] / total, 2.0 * c[kOutD] / total - 1.0));
  }
  double norm_sq = 0.0;
  for (const auto& s : params.sites) norm_sq += s.p * s.p;
  if (norm_sq <= 0.0) throw std::invalid_argument("initial_guess: count set has no direct counts");
  for (auto& s : params.sites) s.p /= std::sqrt(norm_sq);

  // Echo site x holds (A_H(x+1), A_V(x)); its relative phase is
  // phi(x+1) - phi(x) + delta(x).
  params.sites[0].phi = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    double relative = 0.0;
    if (i < counts.shifted.size()) {
      const auto& c = counts.shifted.counts[i];
      const double total = c[kOutH] + c[kOutV];
      if (total > 0.0) {
        relative = std::atan2(1.0 - 2.0 * c[kOutR] / total, 2.0 * c[kOutD] / total - 1.0);
      }
    }
    params.sites[i + 1].phi = wrap_2pi(relative + params.sites[i].phi - params.sites[i].delta);
  }
  return params;
}

namespace {

struct AnnealResult {
  std::vector<double> best;
  double best_value = 0.0;
};

AnnealResult anneal_once(const CountSet& counts, const std::vector<double>& start,
                         const AnnealConfig& config, double t0, std::uint64_t seed) {
  Objective objective(counts, true);
  objective.load(start);
  AnnealResult result{start, objective.value()};
  const std::size_t n_params = start.size();
  if (n_params <= 1 || result.best_value == 0.0) return result;

  // phi of the first site is the global-phase gauge and never moves.
  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n_params; ++i) {
    if (i != 1) active.push_back(i);
  }
  std::vector<double> width(n_params), max_width(n_params);
  for (std::size_t i = 0; i < n_params; ++i) {
    width[i] = i % 4 == 0 ? 0.05 : 0.1;
    max_width[i] = i % 4 == 0 ? 0.5 : kPi;
  }
  std::vector<long> tries(n_params, 0), accepts(n_params, 0);

  Rng rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, active.size() - 1);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  constexpr int kAdaptEvery = 20;
  const long sweep = static_cast<long>(active.size());
  double temperature = t0;
  long sweeps_done = 0;
  for (long it = 0; it < config.iterations; ++it) {
    const std::size_t idx = active[pick(rng)];
    double v = objective.point()[idx] + width[idx] * gauss(rng);
    switch (idx % 4) {
      case 0: v = std::abs(v); break;
      case 2: v = reflect_0_pi(v); break;
      default: v = wrap_2pi(v); break;
    }
    const double current = objective.value();
    const double proposed = objective.trial(idx, v);
    ++tries[idx];
    const double delta = proposed - current;
    if (delta <= 0.0 || (temperature > 0.0 && unit(rng) < std::exp(-delta / temperature))) {
      objective.commit();
      ++accepts[idx];
      if (proposed < result.best_value) {
        result.best_value = proposed;
        result.best = objective.point();
      }
    }
    if ((it + 1) % sweep == 0) {
      temperature *= config.alpha;
      if (++sweeps_done % kAdaptEvery == 0) {
        for (std::size_t i : active) {
          if (tries[i] == 0) continue;
          const double ratio = static_cast<double>(accepts[i]) / static_cast<double>(tries[i]);
          if (ratio > 0.6) width[i] *= 1.0 + 2.0 * (ratio - 0.6) / 0.4;
          else if (ratio < 0.4) width[i] /= 1.0 + 2.0 * (0.4 - ratio) / 0.4;
          width[i] = std::clamp(width[i], 1e-10, max_width[i]);
          tries[i] = accepts[i] = 0;
        }
      }
    }
  }
  return result;
}

}  // namespace

Reconstruction reconstruct(const CountSet& counts, const AnnealConfig& config) {
  if (counts.direct.size() == 0) throw std::invalid_argument("reconstruct: empty count set");
  if (config.alpha <= 0.0 || config.alpha >= 1.0) {
    throw std::invalid_argument("reconstruct: alpha must lie in (0, 1)");
  }
  if (config.iterations < 1 || config.restarts < 1) {
    throw std::invalid_argument("reconstruct: iterations and restarts must be positive");
  }
  const SiteParametrization init = initial_guess(counts);
  const std::vector<double> start = flatten(init);
  const double l0 = likelihood(init, counts);
  const double t0 = config.t0 > 0.0 ? config.t0 : l0 / 10.0;

  std::vector<AnnealResult> results(static_cast<std::size_t>(config.restarts));
  parallel_for(results.size(), [&](std::size_t r) {
    results[r] = anneal_once(counts, start, config, t0, derive_seed(config.seed, r));
  });
  std::size_t best = 0;
  for (std::size_t r = 1; r < results.size(); ++r) {
    if (results[r].best_value < results[best].best_value) best = r;
  }

  const double limit = 5.0 * static_cast<double>(counts.cells());
  if (results[best].best_value > limit) {
    throw NonConvergence("best likelihood " + std::to_string(results[best].best_value) +
                         " exceeds " + std::to_string(limit));
  }
  SiteParametrization params = unflatten(counts.direct.offset, results[best].best);
  WalkerState state = params.to_state();
  return {std::move(state), std::move(params), results[best].best_value, l0};
}

}  // namespace qwalk
