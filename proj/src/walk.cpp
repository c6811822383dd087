#include "qwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace qwalk {

WalkerState::WalkerState(long offset, std::vector<Spinor> amps)
    : offset_(offset), amps_(std::move(amps)) {
  if (amps_.empty()) throw std::invalid_argument("WalkerState: empty lattice window");
  const double n = norm_sq();
  if (std::abs(n - 1.0) > kNormTolerance) {
    throw std::invalid_argument("WalkerState: norm " + std::to_string(n) + " differs from 1");
  }
}

WalkerState::WalkerState(long offset, std::vector<Spinor> amps, Unchecked)
    : offset_(offset), amps_(std::move(amps)) {}

WalkerState WalkerState::delta(long site, const Spinor& spinor) {
  return WalkerState(site, {spinor});
}

Spinor WalkerState::at(long site) const {
  if (site < offset_ || site > last_site()) return {};
  return amps_[static_cast<std::size_t>(site - offset_)];
}

double WalkerState::norm_sq() const {
  double n = 0.0;
  for (const auto& s : amps_) n += s.norm_sq();
  return n;
}

std::string_view to_string(Frame frame) {
  switch (frame) {
    case Frame::Standard: return "standard";
    case Frame::Prime: return "prime";
    case Frame::DoublePrime: return "dprime";
  }
  return "standard";
}

Frame frame_from_string(std::string_view name) {
  if (name == "standard") return Frame::Standard;
  if (name == "prime") return Frame::Prime;
  if (name == "dprime") return Frame::DoublePrime;
  throw std::invalid_argument("unknown frame '" + std::string(name) + "'");
}

Mat2 coin_matrix(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, -s, s, c};
}

Mat2 wave_plate_coin(double plate_angle) {
  return coin_matrix(2.0 * plate_angle) * pauli::Z;
}

Mat2 hadamard_coin() {
  const double r = basis::kInvSqrt2;
  return {r, r, r, -r};
}

WalkerState apply_coin(const WalkerState& state, const Mat2& coin) {
  std::vector<Spinor> out(state.amps().begin(), state.amps().end());
  for (auto& s : out) s = coin * s;
  return {state.offset(), std::move(out), WalkerState::Unchecked{}};
}

WalkerState apply_shift(const WalkerState& state, ShiftDirection direction) {
  const auto amps = state.amps();
  const std::size_t n = amps.size();
  if (direction == ShiftDirection::Plus) {
    const bool grow = amps.back().h != cplx{};
    std::vector<Spinor> out(grow ? n + 1 : n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i].v = amps[i].v;
      if (i + 1 < out.size()) out[i + 1].h = amps[i].h;
    }
    return {state.offset(), std::move(out), WalkerState::Unchecked{}};
  }
  const bool grow = amps.front().v != cplx{};
  const std::size_t lead = grow ? 1 : 0;
  std::vector<Spinor> out(n + lead);
  for (std::size_t i = 0; i < n; ++i) {
    out[i + lead].h = amps[i].h;
    if (i + lead >= 1) out[i + lead - 1].v = amps[i].v;
  }
  return {state.offset() - static_cast<long>(lead), std::move(out), WalkerState::Unchecked{}};
}

namespace {

WalkerState shift_plus(const WalkerState& s) { return apply_shift(s, ShiftDirection::Plus); }
WalkerState shift_minus(const WalkerState& s) { return apply_shift(s, ShiftDirection::Minus); }

}  // namespace

WalkerState evolve_step(const WalkerState& state, const Protocol& protocol,
                        const CoinAngles& angles) {
  if (protocol.kind == Protocol::Kind::Simple) {
    return shift_minus(shift_plus(apply_coin(state, protocol.coin)));
  }
  const double t1 = angles.theta1;
  const double t2 = angles.theta2;
  // Operators act right-to-left as written: U = T- R(t2) T+ R(t1), etc.
  switch (protocol.frame) {
    case Frame::Standard: {
      auto s = apply_coin(state, coin_matrix(t1));
      s = shift_plus(s);
      s = apply_coin(s, coin_matrix(t2));
      return shift_minus(s);
    }
    case Frame::Prime: {
      const Mat2 half = coin_matrix(t1 / 2.0);
      auto s = apply_coin(state, half);
      s = shift_plus(s);
      s = apply_coin(s, coin_matrix(t2));
      s = shift_minus(s);
      return apply_coin(s, half);
    }
    case Frame::DoublePrime: {
      const Mat2 half = coin_matrix(t2 / 2.0);
      auto s = apply_coin(state, half);
      s = shift_minus(s);
      s = apply_coin(s, coin_matrix(t1));
      s = shift_plus(s);
      return apply_coin(s, half);
    }
  }
  return state;
}

WalkerState evolve(WalkerState state, const Protocol& protocol, const CoinAngles& angles,
                   int steps) {
  if (steps < 0) throw std::invalid_argument("evolve: negative step count");
  for (int t = 0; t < steps; ++t) state = evolve_step(state, protocol, angles);
  return state;
}

Distribution position_distribution(const WalkerState& state) {
  Distribution dist;
  dist.reserve(state.size());
  long site = state.offset();
  for (const auto& s : state.amps()) dist.emplace_back(site++, s.norm_sq());
  return dist;
}

double normalized_moment(const Distribution& dist, int t, int order) {
  if (t < 1) throw std::invalid_argument("normalized_moment: t must be >= 1");
  if (order != 1 && order != 2) throw std::invalid_argument("normalized_moment: order must be 1 or 2");
  double acc = 0.0;
  for (const auto& [x, p] : dist) {
    const double xd = static_cast<double>(x);
    acc += (order == 1 ? xd : xd * xd) * p;
  }
  return acc / std::pow(static_cast<double>(t), order);
}

Moments analytic_moments(const CoinAngles& angles, const Spinor& psi0) {
  if (std::abs(std::abs(angles.theta1) - kPi) < 1e-12) {
    throw std::domain_error("analytic_moments: tan(theta1/2) diverges at |theta1| = pi");
  }
  const double h1 = angles.theta1 / 2.0;
  const double h2 = angles.theta2 / 2.0;
  const double tan1 = std::tan(h1);
  const double bracket = 1.0 - std::max(std::abs(std::sin(h1)), std::abs(std::sin(h2)));
  const double sx = std::real(inner(psi0, pauli::X * psi0));
  const double sz = std::real(inner(psi0, pauli::Z * psi0));
  return {tan1 * bracket * (sx + tan1 * sz), tan1 * tan1 * bracket};
}

double similarity(const Distribution& a, const Distribution& b) {
  auto check = [](const Distribution& d) {
    double total = 0.0;
    for (const auto& [x, p] : d) {
      if (p < 0.0) throw std::invalid_argument("similarity: negative probability");
      total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) throw std::invalid_argument("similarity: distribution not normalized");
  };
  check(a);
  check(b);
  std::map<long, double> pb(b.begin(), b.end());
  double overlap = 0.0;
  for (const auto& [x, p] : a) {
    const auto it = pb.find(x);
    if (it != pb.end()) overlap += std::sqrt(p * it->second);
  }
  return overlap * overlap;
}

double state_fidelity(const WalkerState& a, const WalkerState& b) {
  for (const auto* s : {&a, &b}) {
    if (std::abs(s->norm_sq() - 1.0) > 1e-6) {
      throw std::invalid_argument("state_fidelity: state not normalized");
    }
  }
  const long lo = std::min(a.offset(), b.offset());
  const long hi = std::max(a.last_site(), b.last_site());
  cplx overlap{};
  for (long x = lo; x <= hi; ++x) overlap += inner(a.at(x), b.at(x));
  return std::norm(overlap);
}

}  // namespace qwalk
