#pragma once

#include <functional>
#include <span>

#include "toalab/core.hpp"

namespace toalab {

struct QuadratureSpec {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_subdivisions = 2000;
};

void validate(const QuadratureSpec& spec);

struct QuadratureResult {
  Complex value;
  double error = 0.0;
  int intervals = 0;
};

using ComplexIntegrand = std::function<Complex(double)>;

/// Globally adaptive 21-point Gauss-Kronrod quadrature on [a, b].
///
/// Bisects the interval with the largest error estimate until the summed
/// estimate is at most max(rel_tol |value|, abs_tol). Throws NonConvergence,
/// carrying the best value, once max_subdivisions intervals are in use.
QuadratureResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                    const QuadratureSpec& spec = {});

enum class HalfLine { Plus, Minus };

/// Integral of g over [0, inf) or (-inf, 0], truncated at
/// envelope_center +- 12 envelope_width. g must decay at least like a Gaussian
/// of that width.
Complex integrate_halfline_momentum(const ComplexIntegrand& g, HalfLine sign,
                                    double envelope_center, double envelope_width,
                                    const QuadratureSpec& spec = {});

struct LeavensIntegrals {
  Complex plus;   // int dx (1 + i sign x) |x|^(-3/2) g(x, t)
  Complex minus;  // int dx (1 - i sign x) |x|^(-3/2) g(x, t)
};

using SpaceTimeIntegrand = std::function<Complex(double, double)>;

/// Singular position-space integrals with kernel (1 +- i sign x) / |x|^(3/2).
///
/// g(0, t) must vanish. Each half axis is mapped by x = +-u^2, which turns the
/// integrand into the smooth 2 g(+-u^2, t) / u^2 on (0, sqrt(window)]. Beyond
/// the window g is taken as constant, which adds 2 g(+-window, t) / sqrt(window).
/// Throws InvalidInput when g at 1.5 and 3 times the window still differs from
/// its value at the edge. The u range is cut into panels no wider in x than
/// `feature_length` (window / 32 when zero) so narrow peaks are not missed.
LeavensIntegrals integrate_leavens_singular(const SpaceTimeIntegrand& g, double t,
                                            double window, double feature_length = 0.0,
                                            const QuadratureSpec& spec = {});

/// Composite Simpson over the grid samples (3/8 rule closes an even point
/// count, trapezoid for two points).
double integrate_time_grid(std::span<const double> values, const TimeGrid& grid);

/// Integral over [a, b] inside the grid span, using the piecewise quadratic
/// interpolant of the samples so partial cells at the edges are handled.
double integrate_time_grid(std::span<const double> values, const TimeGrid& grid, double a,
                           double b);

/// Integral of `f` over `window`, which must contain the grid span. Samples
/// already taken on the grid are reused; outside it the step doubles each time
/// the covered distance doubles.
double integrate_extended_window(const std::function<double(double)>& f,
                                 std::span<const double> grid_values, const TimeGrid& grid,
                                 Interval window);

}  // namespace toalab
