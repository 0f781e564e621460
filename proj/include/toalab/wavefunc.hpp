#pragma once

#include <cstddef>
#include <utility>
#include <variant>
#include <vector>

#include "toalab/core.hpp"

namespace toalab {

/// Freely evolving Gaussian packet on a line. `weight` is its coefficient in a
/// superposition; a lone unit-weight packet is normalized.
struct GaussianPacket {
  double x0 = 0.0;
  double p0 = 0.0;
  double sigma0 = 1.0;
  Complex weight{1.0, 0.0};

  friend bool operator==(const GaussianPacket&, const GaussianPacket&) = default;
};

void validate(const GaussianPacket& packet);

Complex packet_amplitude(const GaussianPacket& packet, double x, double t, const UnitSystem& u);
Complex packet_amplitude_dx(const GaussianPacket& packet, double x, double t,
                            const UnitSystem& u);

/// psi(x, t) - psi(x_ref, t), evaluated without cancellation when x is close to x_ref.
Complex packet_amplitude_delta(const GaussianPacket& packet, double x, double x_ref,
                               double t, const UnitSystem& u);

/// Momentum amplitude with the symmetric (2 pi hbar)^(-1/2) Fourier convention,
/// including the free phase exp(-i t k^2 / 2 m hbar).
Complex packet_momentum_amplitude(const GaussianPacket& packet, double k, double t,
                                  const UnitSystem& u);

/// Standard deviation of |psi(x, t)| as an amplitude envelope, sigma0 sqrt(1 + (hbar t / m sigma0^2)^2).
double packet_width(const GaussianPacket& packet, double t, const UnitSystem& u);

/// Weighted sum of Gaussian packets sharing one unit system.
class Superposition {
 public:
  Superposition(std::vector<GaussianPacket> packets, UnitSystem units);

  /// Equal-weight train: every weight is replaced by 1 / sqrt(n).
  static Superposition wave_train(std::vector<GaussianPacket> packets, UnitSystem units);

  const std::vector<GaussianPacket>& packets() const noexcept { return packets_; }
  const UnitSystem& units() const noexcept { return units_; }
  std::size_t size() const noexcept { return packets_.size(); }

  Complex amplitude(double x, double t) const;
  Complex amplitude_dx(double x, double t) const;
  Complex amplitude_delta(double x, double x_ref, double t) const;
  Complex momentum_amplitude(double k, double t) const;

  /// Momentum interval holding every packet's amplitude down to exp(-radius^2 / 2).
  Interval momentum_support(double radius = 12.0) const;
  /// Smallest |x| beyond which every packet amplitude is below exp(-radius^2 / 2) at time t.
  double position_extent(double t, double radius = 12.0) const;

  bool has_positive_momentum() const;
  bool has_negative_momentum() const;

  /// Same state seen from a frame whose origin sits at `x`.
  Superposition translated(double x) const;

  friend bool operator==(const Superposition&, const Superposition&) = default;

 private:
  std::vector<GaussianPacket> packets_;
  UnitSystem units_;
};

/// One packet on the ring, expanded on the discrete plane waves p_n = n hbar / R.
struct RingPacket {
  double xbar = 0.0;
  double pbar = 0.0;
  double sigma0 = 0.0;
  Complex weight{1.0, 0.0};
  long n_min = 0;
  std::vector<double> coefficients;  // a_n for n = n_min, n_min + 1, ...

  long n_max() const noexcept { return n_min + static_cast<long>(coefficients.size()) - 1; }
  friend bool operator==(const RingPacket&, const RingPacket&) = default;
};

/// Superposition of Gaussian packets on a ring of circumference d = 2 pi R.
class RingState {
 public:
  RingState(double radius, UnitSystem units, std::vector<RingPacket> packets);

  double radius() const noexcept { return radius_; }
  double circumference() const noexcept;
  const UnitSystem& units() const noexcept { return units_; }
  const std::vector<RingPacket>& packets() const noexcept { return packets_; }

  double mode_momentum(long n) const noexcept { return static_cast<double>(n) * units_.hbar() / radius_; }
  double mode_energy(long n) const noexcept;

  /// Maps x into [-d/2, d/2).
  double canonical_position(double x) const;

  Complex amplitude(double x, double t) const;
  Complex amplitude_dx(double x, double t) const;

  /// Sum over modes with p_n > 0 (sign = +1) or p_n < 0 (sign = -1) of
  /// a_n sqrt(|p_n|) exp(i p_n (x - xbar) / hbar - i E_n t / hbar), weighted.
  Complex sqrt_momentum_sum(int sign, double x, double t) const;

  bool has_positive_momentum() const;
  bool has_negative_momentum() const;

  /// Coherent sum of ring states on the same ring, each packet weight scaled by its factor.
  static RingState superpose(const std::vector<std::pair<Complex, RingState>>& terms);

  RingState translated(double x) const;

  friend bool operator==(const RingState&, const RingState&) = default;

 private:
  double radius_;
  UnitSystem units_;
  std::vector<RingPacket> packets_;
};

/// Expands a Gaussian packet on the ring's plane waves, keeping every mode whose
/// coefficient is at least `tail_epsilon` times the largest one.
RingState build_ring_state(double xbar, double pbar, double sigma0, double radius,
                           const UnitSystem& u, double tail_epsilon = 1e-8);

Complex ring_amplitude(const RingState& ring, double x, double t);
Complex ring_amplitude_dx(const RingState& ring, double x, double t);

using State = std::variant<Superposition, RingState>;

const UnitSystem& units_of(const State& state);
/// Moves the detector at `detector_position` to the origin.
State to_detector_frame(const State& state, double detector_position);

}  // namespace toalab
