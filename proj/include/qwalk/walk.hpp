#pragma once

// Position-space walker states, coin and shift operators, walk protocols in
// the standard and shifted time-frames, distributions and comparison metrics.

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "qwalk/linalg.hpp"

namespace qwalk {

/// Tolerance on the global norm of a WalkerState.
inline constexpr double kNormTolerance = 1e-9;

/// Amplitudes over the contiguous lattice window [offset, offset + size - 1].
class WalkerState {
 public:
  struct Unchecked {};

  /// Throws std::invalid_argument unless amps is non-empty and normalized.
  WalkerState(long offset, std::vector<Spinor> amps);
  /// Skips the normalization check; used by norm-preserving operations.
  WalkerState(long offset, std::vector<Spinor> amps, Unchecked);

  static WalkerState delta(long site, const Spinor& spinor);

  long offset() const { return offset_; }
  long last_site() const { return offset_ + static_cast<long>(amps_.size()) - 1; }
  std::size_t size() const { return amps_.size(); }
  std::span<const Spinor> amps() const { return amps_; }

  /// Amplitude at an absolute site; zero outside the window.
  Spinor at(long site) const;
  double norm_sq() const;

 private:
  long offset_;
  std::vector<Spinor> amps_;
};

struct CoinAngles {
  double theta1 = 0.0;  // radians
  double theta2 = 0.0;  // radians

  static CoinAngles from_degrees(double t1, double t2) {
    return {deg_to_rad(t1), deg_to_rad(t2)};
  }
};

enum class Frame { Standard, Prime, DoublePrime };

std::string_view to_string(Frame frame);
Frame frame_from_string(std::string_view name);

/// Either a coined walk with one coin and a symmetric shift per step, or the
/// two-coin split-step walk in one of its time-frames.
struct Protocol {
  enum class Kind { Simple, SplitStep };

  Kind kind = Kind::SplitStep;
  Mat2 coin = Mat2::identity();
  Frame frame = Frame::Standard;

  static Protocol simple(const Mat2& coin) { return {Kind::Simple, coin, Frame::Standard}; }
  static Protocol split_step(Frame frame) { return {Kind::SplitStep, Mat2::identity(), frame}; }
};

enum class ShiftDirection { Plus, Minus };

/// exp(-i theta sigma_y) = [[cos, -sin], [sin, cos]].
Mat2 coin_matrix(double theta);

/// The half-wave-plate coin exp(-2i h sigma_y) sigma_z at plate angle h.
Mat2 wave_plate_coin(double plate_angle);

/// (1/sqrt2) [[1, 1], [1, -1]].
Mat2 hadamard_coin();

WalkerState apply_coin(const WalkerState& state, const Mat2& coin);

/// Plus moves every H amplitude one site right; Minus moves every V amplitude
/// one site left. The window grows only when an edge amplitude is nonzero.
WalkerState apply_shift(const WalkerState& state, ShiftDirection direction);

WalkerState evolve_step(const WalkerState& state, const Protocol& protocol,
                        const CoinAngles& angles);

WalkerState evolve(WalkerState state, const Protocol& protocol,
                   const CoinAngles& angles, int steps);

/// Site/probability pairs over the state's window, in site order.
using Distribution = std::vector<std::pair<long, double>>;

Distribution position_distribution(const WalkerState& state);

/// sum_x x^order P(x) / t^order, for order 1 or 2 and t >= 1.
double normalized_moment(const Distribution& dist, int t, int order);

struct Moments {
  double m1 = 0.0;
  double m2 = 0.0;
};

/// Closed-form long-time normalized moments of the split-step walk,
///   M2 = tan^2(t1/2) [1 - max(|sin(t1/2)|, |sin(t2/2)|)]
///   M1 = tan(t1/2) [1 - max(...)] <psi0|(sigma_x + tan(t1/2) sigma_z)|psi0>.
/// Throws std::domain_error at the tangent pole |theta1| = pi.
Moments analytic_moments(const CoinAngles& angles, const Spinor& psi0);

/// Classical overlap [sum_x sqrt(P_a(x) P_b(x))]^2.
double similarity(const Distribution& a, const Distribution& b);

/// |<a|b>|^2 over the union of both windows.
double state_fidelity(const WalkerState& a, const WalkerState& b);

}  // namespace qwalk
