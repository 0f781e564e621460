#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "toalab/core.hpp"
#include "toalab/numerics.hpp"
#include "toalab/wavefunc.hpp"

namespace toalab {

enum class ToaMethod { KijowskiMomentum, KijowskiLeavens, Flux, Semiclassical, QuantumClock };

std::string_view to_string(ToaMethod method);
/// Accepts the CLI names: kijowski, leavens, flux, semiclassical, clock.
ToaMethod parse_toa_method(std::string_view name);

struct Normalization {
  double constant = 1.0;
  Interval window;
  NormalizationPolicy policy = NormalizationPolicy::Unnormalized;
};

/// A time-of-arrival density sampled on a grid.
struct ToaCurve {
  TimeGrid grid;
  std::vector<double> values;
  ToaMethod method;
  Normalization normalization;
  bool negativity_flag = false;

  double peak() const;
  /// Integral of the sampled values over the whole grid.
  double grid_mass() const;
};

/// Values below this count as negative (backflow) in normalized units.
inline constexpr double kNegativityThreshold = -1e-12;

struct ToaOptions {
  NormalizationPolicy policy = NormalizationPolicy::FullWindow;
  /// Regularization window [-T/2, T/2]; defaults to 100 t0.
  std::optional<double> T;
  QuadratureSpec quadrature{};
};

/// Unnormalized densities at the detector (origin), one time at a time.
struct KijowskiParts {
  double plus = 0.0;
  double minus = 0.0;
  double total() const noexcept { return plus + minus; }
};

KijowskiParts kijowski_density(const State& state, double t, const QuadratureSpec& spec = {});
KijowskiParts kijowski_leavens_density(const Superposition& state, double t,
                                       const QuadratureSpec& spec = {});
double flux_density(const State& state, double t);
double clock_density(const State& state, double t);
double semiclassical_density(const GaussianPacket& packet, const UnitSystem& u, double t);

/// Kijowski distribution from the sqrt|p|-weighted half-line momentum integrals.
ToaCurve kijowski_momentum(const State& state, const TimeGrid& grid, const ToaOptions& options = {});
/// Same distribution from the position-space singular kernel; line states only.
ToaCurve kijowski_leavens(const Superposition& state, const TimeGrid& grid,
                          const ToaOptions& options = {});
/// Probability current at the detector. Throws FluxInapplicable for mixed
/// momentum signs or a vanishing normalization.
ToaCurve quantum_flux(const State& state, const TimeGrid& grid, const ToaOptions& options = {});
/// Momentum-measurement reading t = m L / p for a single packet at distance L = |x0|.
ToaCurve semiclassical(const GaussianPacket& packet, const UnitSystem& u, const TimeGrid& grid,
                       const ToaOptions& options = {});
/// |psi(0, t)|^2 conditioned on the clock window [-T/2, T/2].
ToaCurve quantum_clock(const State& state, const TimeGrid& grid, const ToaOptions& options = {});

ToaCurve compute_curve(ToaMethod method, const State& state, const TimeGrid& grid,
                       const ToaOptions& options = {});

/// N_C(T) = integral of |psi(0, t)|^2 over [-T/2, T/2], sampled at the grid
/// resolution near the grid and with doubling steps outside it.
double clock_normalization(const State& state, double T, const TimeGrid& fine_grid);
/// N_F(T), the flux integrated over [-T/2, T/2].
double flux_normalization(const State& state, double T, const TimeGrid& fine_grid);

/// Default regularization window for a unit system: 100 t0.
double default_regularization(const UnitSystem& u);

struct BackflowInterval {
  Interval times;
  double min_value = 0.0;
};

/// Maximal runs of grid points where a flux curve is below kNegativityThreshold.
std::vector<BackflowInterval> detect_backflow(const ToaCurve& curve);

/// Fringe contrast (max - min) / (max + min) over the interior extrema in `window`.
///
/// Only local maxima above a thousandth of the window maximum are counted, and
/// a local minimum counts only when such maxima sit on both sides of it. Zero
/// when no minimum qualifies.
double fringe_visibility(const ToaCurve& curve, Interval window);

}  // namespace toalab
