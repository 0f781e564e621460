#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace toalab {

using Complex = std::complex<double>;

namespace constants {
/// Reduced Planck constant [J s].
inline constexpr double kHbarSI = 1.054571817e-34;
/// Mass of a rubidium-87 atom [kg].
inline constexpr double kRb87Mass = 1.44316060e-25;
}  // namespace constants

/// Throws InvalidInput naming `what` unless both components are finite.
void require_finite(Complex z, std::string_view what);
void require_finite(double v, std::string_view what);

enum class UnitMode { Natural, SI };

/// Unit convention shared by every quantity of a computation.
///
/// Natural mode sets hbar = m = 1, so the length, time and energy units are
/// the oscillator scales l0 = sqrt(hbar / m omega), t0 = 1 / omega,
/// E0 = hbar omega with all three equal to one. SI mode carries the physical
/// hbar and particle mass; the oscillator units are defined only when a trap
/// frequency is supplied.
class UnitSystem {
 public:
  static UnitSystem natural();
  static UnitSystem si(double mass = constants::kRb87Mass,
                       std::optional<double> omega = std::nullopt);

  UnitMode mode() const noexcept { return mode_; }
  double hbar() const noexcept { return hbar_; }
  double mass() const noexcept { return mass_; }
  std::optional<double> omega() const noexcept { return omega_; }

  bool has_oscillator_units() const noexcept;
  double length_unit() const;
  double time_unit() const;
  double energy_unit() const;

  std::string describe() const;

  friend bool operator==(const UnitSystem&, const UnitSystem&) = default;

 private:
  UnitSystem(UnitMode mode, double hbar, double mass, std::optional<double> omega)
      : mode_(mode), hbar_(hbar), mass_(mass), omega_(omega) {}

  UnitMode mode_;
  double hbar_;
  double mass_;
  std::optional<double> omega_;
};

/// Throws UnitMismatch when `a` and `b` differ.
void require_same_units(const UnitSystem& a, const UnitSystem& b,
                        std::string_view context);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const noexcept { return hi - lo; }
  bool contains(double t) const noexcept { return t >= lo && t <= hi; }
  bool contains(const Interval& other) const noexcept {
    return other.lo >= lo && other.hi <= hi;
  }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Uniform sampling lattice on [t_start, t_end].
class TimeGrid {
 public:
  TimeGrid(double t_start, double t_end, std::size_t n_points);

  double start() const noexcept { return start_; }
  double end() const noexcept { return end_; }
  std::size_t size() const noexcept { return n_; }
  double step() const noexcept { return (end_ - start_) / static_cast<double>(n_ - 1); }
  Interval span() const noexcept { return {start_, end_}; }

  /// i-th point; the last point is exactly t_end.
  double at(std::size_t i) const noexcept;
  std::vector<double> points() const;

  /// Grid with twice the resolution (2n - 1 points), sharing every point of this one.
  TimeGrid refined() const { return TimeGrid(start_, end_, 2 * n_ - 1); }

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double start_;
  double end_;
  std::size_t n_;
};

enum class NormalizationPolicy { FullWindow, PlotInterval, Unnormalized };

std::string_view to_string(NormalizationPolicy policy);
NormalizationPolicy parse_normalization_policy(std::string_view text);

}  // namespace toalab
