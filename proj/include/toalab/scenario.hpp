#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "toalab/core.hpp"
#include "toalab/wavefunc.hpp"

namespace toalab {

enum class FigureId { Fig2, Fig3, Fig4, Fig5, Fig6, Fig7, Fig8a, Fig8b };

std::string_view to_string(FigureId id);
/// Accepts "fig2" ... "fig8b" (case-insensitive).
FigureId parse_figure_id(std::string_view name);
const std::vector<FigureId>& all_figures();

/// A state, its units and the sampling and normalization choices for one run.
struct Scenario {
  std::string name;
  State state;
  UnitSystem units;
  TimeGrid grid;
  double detector_position = 0.0;
  NormalizationPolicy policy = NormalizationPolicy::FullWindow;
  /// Regularization window length; unset means 100 t0.
  std::optional<double> T;
  /// Mode cut used to build ring states (ignored for line states).
  double ring_tail_epsilon = 1e-8;

  /// [-T/2, T/2] for FullWindow, the grid span otherwise.
  Interval normalization_window() const;
  /// The state with the detector moved to the origin.
  State detector_frame_state() const;
};

/// Checks detector placement, grid and window consistency.
void validate(const Scenario& scenario);

Scenario make_scenario_preset(FigureId id);

/// x1 = x0 p1 / p0: the partner packet reaching the detector at the same mean time.
double overtaking_partner(double x0, double p0, double p1);

/// Momentum separations used for the Delta p sweep, in hbar / l0.
const std::vector<double>& fig6_sweep();
/// Two-packet overtaking train with p1 = p0 + delta_p, based on the Fig5 packet.
Scenario fig6_member(double delta_p);

/// Temporal resolution of the ring detection scheme, the recommended bin width [s].
inline constexpr double kRingTemporalResolution = 0.1;
/// Bin used for the ring discrimination analysis [s].
inline constexpr Interval kRingDiscriminationBin{1.29, 1.83};

/// Parses a scenario document (YAML). Every dimensional quantity is a string
/// "<number> <unit>".
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
/// Writes every quantity in the base units of the scenario with 17 significant digits.
std::string serialize_scenario(const Scenario& scenario);
void save_scenario(const Scenario& scenario, const std::string& path);

enum class Dimension { Length, Time, Momentum, Mass, Frequency };

/// Converts "<number> <unit>" to the base units of `u`. Throws UnitMismatch when
/// the unit has the wrong dimension or is unavailable in `u`.
double parse_quantity(std::string_view text, Dimension dim, const UnitSystem& u);

}  // namespace toalab
