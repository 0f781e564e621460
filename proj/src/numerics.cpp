#include "toalab/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "toalab/error.hpp"

namespace toalab {

namespace {

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525478800, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

struct Segment {
  double a;
  double b;
  Complex value;
  double error;
};

Segment gauss_kronrod21(const ComplexIntegrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<Complex, 10> f1{};
  std::array<Complex, 10> f2{};

  const Complex fc = f(center);
  Complex resk = fc * kWgk[10];
  Complex resg{};
  double resabs = std::abs(fc) * kWgk[10];
  for (std::size_t j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const Complex pair = f1[j] + f2[j];
    resk += kWgk[j] * pair;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * pair;
  }

  const Complex mean = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - mean);
  for (std::size_t j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  const double h = std::abs(half);
  resabs *= h;
  resasc *= h;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return {a, b, resk * half, err};
}

bool by_error(const Segment& x, const Segment& y) { return x.error < y.error; }

}  // namespace

void validate(const QuadratureSpec& spec) {
  if (!(spec.rel_tol > 0.0) || !(spec.abs_tol > 0.0)) {
    throw InvalidInput("quadrature tolerances must be positive");
  }
  if (spec.max_subdivisions < 1) throw InvalidInput("max_subdivisions must be at least 1");
}

QuadratureResult integrate_adaptive(const ComplexIntegrand& f, double a, double b,
                                    const QuadratureSpec& spec) {
  validate(spec);
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
    throw InvalidInput("integrate_adaptive requires finite a < b");
  }

  std::vector<Segment> heap;
  heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
  heap.push_back(gauss_kronrod21(f, a, b));
  Complex total = heap.front().value;
  double total_error = heap.front().error;

  auto converged = [&] {
    return total_error <= std::max(spec.rel_tol * std::abs(total), spec.abs_tol);
  };

  while (!converged()) {
    if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
      throw NonConvergence("adaptive quadrature did not converge within " +
                               std::to_string(spec.max_subdivisions) + " subdivisions",
                           total, total_error);
    }
    std::pop_heap(heap.begin(), heap.end(), by_error);
    const Segment worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NonConvergence("adaptive quadrature reached machine resolution", total,
                           total_error);
    }
    Segment left = gauss_kronrod21(f, worst.a, mid);
    Segment right = gauss_kronrod21(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end(), by_error);
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end(), by_error);
  }

  // Re-sum to shed the drift of the running totals.
  std::sort(heap.begin(), heap.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  Complex value{};
  double error = 0.0;
  for (const auto& s : heap) {
    value += s.value;
    error += s.error;
  }
  return {value, error, static_cast<int>(heap.size())};
}

Complex integrate_halfline_momentum(const ComplexIntegrand& g, HalfLine sign,
                                    double envelope_center, double envelope_width,
                                    const QuadratureSpec& spec) {
  if (!(envelope_width > 0.0) || !std::isfinite(envelope_center)) {
    throw InvalidInput("momentum envelope needs a finite center and positive width");
  }
  constexpr double kRadius = 12.0;
  double lo = envelope_center - kRadius * envelope_width;
  double hi = envelope_center + kRadius * envelope_width;
  if (sign == HalfLine::Plus) {
    lo = std::max(lo, 0.0);
  } else {
    hi = std::min(hi, 0.0);
  }
  if (!(lo < hi)) return {};
  return integrate_adaptive(g, lo, hi, spec).value;
}

LeavensIntegrals integrate_leavens_singular(const SpaceTimeIntegrand& g, double t,
                                            double window, double feature_length,
                                            const QuadratureSpec& spec) {
  if (!(window > 0.0) || !std::isfinite(window)) {
    throw InvalidInput("Leavens window must be positive and finite");
  }
  if (!(feature_length >= 0.0) || !std::isfinite(feature_length)) {
    throw InvalidInput("Leavens feature length must be non-negative");
  }

  const Complex edge_right = g(window, t);
  const Complex edge_left = g(-window, t);
  double scale = std::max(std::abs(edge_right), std::abs(edge_left));
  constexpr int kProbe = 64;
  for (int i = 1; i < kProbe; ++i) {
    const double x = window * (2.0 * i / kProbe - 1.0);
    scale = std::max(scale, std::abs(g(x, t)));
  }
  if (scale == 0.0) return {};

  // g must already equal its asymptotic constant at the window edges.
  constexpr double kFlatness = 1e-6;
  for (double side : {1.0, -1.0}) {
    const Complex edge = side > 0.0 ? edge_right : edge_left;
    for (double factor : {1.5, 3.0}) {
      if (std::abs(edge - g(side * factor * window, t)) > kFlatness * scale) {
        throw InvalidInput("Leavens window too small to contain the wavefunction support");
      }
    }
  }

  // Panels in u = sqrt|x| no wider than the feature length in x at the far end.
  const double root = std::sqrt(window);
  const double feature = feature_length > 0.0 ? feature_length : window / 32.0;
  const int panels = static_cast<int>(std::clamp(std::ceil(2.0 * window / feature), 1.0, 4096.0));
  auto half_axis = [&](double side, Complex edge) {
    const ComplexIntegrand mapped = [&](double u) {
      const double x = side * u * u;
      return 2.0 * g(x, t) / (u * u);
    };
    Complex sum{};
    for (int k = 0; k < panels; ++k) {
      sum += integrate_adaptive(mapped, root * k / panels, root * (k + 1) / panels, spec).value;
    }
    return sum + 2.0 * edge / root;
  };
  const Complex right = half_axis(1.0, edge_right);
  const Complex left = half_axis(-1.0, edge_left);

  const Complex i{0.0, 1.0};
  return {(1.0 + i) * right + (1.0 - i) * left, (1.0 - i) * right + (1.0 + i) * left};
}

double integrate_time_grid(std::span<const double> values, const TimeGrid& grid) {
  const std::size_t n = grid.size();
  if (values.size() != n) {
    throw InvalidInput("integrate_time_grid: " + std::to_string(values.size()) +
                       " values for a grid of " + std::to_string(n) + " points");
  }
  const double h = grid.step();
  if (n == 2) return 0.5 * h * (values[0] + values[1]);

  auto simpson = [&](std::size_t count) {
    // count odd, count >= 1
    if (count < 3) return 0.0;
    double s = values[0] + values[count - 1];
    for (std::size_t i = 1; i + 1 < count; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
    return s * h / 3.0;
  };

  if (n % 2 == 1) return simpson(n);
  // Simpson on points 0 .. n-4, the 3/8 rule on the last three cells.
  const std::size_t m = n - 4;
  const double tail = 3.0 * h / 8.0 *
                      (values[m] + 3.0 * values[m + 1] + 3.0 * values[m + 2] + values[m + 3]);
  return simpson(n - 3) + tail;
}

namespace {

// Integral of the local quadratic interpolant over [t_i, t_i + s h].
double partial_cell(std::span<const double> v, std::size_t i, double s, double h) {
  const std::size_t n = v.size();
  if (n == 2) return h * (v[0] * (s - 0.5 * s * s) + v[1] * 0.5 * s * s);
  const double s2 = s * s;
  const double s3 = s2 * s;
  if (i == 0) {
    return h * (v[0] * (s3 / 6.0 - 0.75 * s2 + s) - v[1] * (s3 / 3.0 - s2) +
                v[2] * (s3 / 6.0 - 0.25 * s2));
  }
  return h * (v[i - 1] * (s3 / 6.0 - 0.25 * s2) + v[i] * (s - s3 / 3.0) +
              v[i + 1] * (s3 / 6.0 + 0.25 * s2));
}

double cumulative(std::span<const double> v, const TimeGrid& grid, double t) {
  const double h = grid.step();
  const std::size_t cells = grid.size() - 1;
  double pos = (t - grid.start()) / h;
  pos = std::clamp(pos, 0.0, static_cast<double>(cells));
  std::size_t cell = std::min(static_cast<std::size_t>(pos), cells - 1);
  const double frac = std::clamp(pos - static_cast<double>(cell), 0.0, 1.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < cell; ++i) sum += partial_cell(v, i, 1.0, h);
  return sum + partial_cell(v, cell, frac, h);
}

}  // namespace

double integrate_time_grid(std::span<const double> values, const TimeGrid& grid, double a,
                           double b) {
  if (values.size() != grid.size()) {
    throw InvalidInput("integrate_time_grid: value count does not match the grid");
  }
  if (!(a <= b)) throw InvalidInput("integration interval must satisfy a <= b");
  const double slack = 1e-9 * grid.step();
  if (a < grid.start() - slack || b > grid.end() + slack) {
    throw InvalidInput("integration interval lies outside the grid span");
  }
  if (a == b) return 0.0;
  return cumulative(values, grid, b) - cumulative(values, grid, a);
}

double integrate_extended_window(const std::function<double(double)>& f,
                                 std::span<const double> grid_values, const TimeGrid& grid,
                                 Interval window) {
  const double slack = 1e-12 * std::max(1.0, std::abs(grid.end()) + std::abs(grid.start()));
  if (window.lo > grid.start() + slack || window.hi < grid.end() - slack) {
    throw InvalidInput("normalization window must contain the time grid");
  }
  double total = integrate_time_grid(grid_values, grid);

  auto extend = [&](double from, double to, double direction) {
    double pos = from;
    double width = grid.end() - grid.start();
    double step = grid.step();
    std::vector<double> samples;
    while (direction * (to - pos) > 0.0) {
      const double next = direction > 0.0 ? std::min(pos + width, to) : std::max(pos - width, to);
      const double len = std::abs(next - pos);
      const auto half_cells = static_cast<std::size_t>(std::ceil(len / (2.0 * step)));
      const std::size_t n = 2 * std::max<std::size_t>(half_cells, 1) + 1;
      const TimeGrid seg(std::min(pos, next), std::max(pos, next), n);
      samples.resize(n);
      for (std::size_t i = 0; i < n; ++i) samples[i] = f(seg.at(i));
      total += integrate_time_grid(samples, seg);
      pos = next;
      width *= 2.0;
      step *= 2.0;
    }
  };
  extend(grid.end(), window.hi, 1.0);
  extend(grid.start(), window.lo, -1.0);
  return total;
}

}  // namespace toalab
