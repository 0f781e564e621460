#include "toalab/toa.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "toalab/error.hpp"

namespace toalab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kVanishing = 1e-12;

template <typename... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double resolve_T(const UnitSystem& u, const ToaOptions& options) {
  const double T = options.T ? *options.T : default_regularization(u);
  if (!(T > 0.0) || !std::isfinite(T)) throw InvalidInput("regularization window T must be positive");
  return T;
}

Interval clock_window(double T, const TimeGrid& grid) {
  const Interval window{-0.5 * T, 0.5 * T};
  if (!window.contains(grid.span())) {
    throw InvalidInput("time grid must lie inside the regularization window [-T/2, T/2]");
  }
  return window;
}

// Grid span extended to cover the crossing of every packet heading for the detector.
Interval arrival_window(const State& state, const TimeGrid& grid, double T) {
  Interval hull = grid.span();
  if (const auto* line = std::get_if<Superposition>(&state)) {
    const UnitSystem& u = line->units();
    for (const auto& p : line->packets()) {
      if (!(p.x0 * p.p0 < 0.0)) continue;
      const double arrival = -p.x0 * u.mass() / p.p0;
      const double spread = 8.0 * packet_width(p, arrival, u) * u.mass() / std::abs(p.p0);
      hull.lo = std::min(hull.lo, arrival - spread);
      hull.hi = std::max(hull.hi, arrival + spread);
    }
  } else {
    hull = {-0.5 * T, 0.5 * T};
  }
  hull.lo = std::max(hull.lo, -0.5 * T);
  hull.hi = std::min(hull.hi, 0.5 * T);
  if (!hull.contains(grid.span())) {
    throw InvalidInput("time grid must lie inside the regularization window [-T/2, T/2]");
  }
  return hull;
}

ToaCurve build_curve(ToaMethod method, const TimeGrid& grid,
                     const std::function<double(double)>& density, NormalizationPolicy policy,
                     const std::function<Interval()>& full_window) {
  ToaCurve curve{grid, std::vector<double>(grid.size()), method, {}, false};
  for (std::size_t i = 0; i < grid.size(); ++i) curve.values[i] = density(grid.at(i));

  Normalization& norm = curve.normalization;
  norm.policy = policy;
  switch (policy) {
    case NormalizationPolicy::Unnormalized:
      norm.constant = 1.0;
      norm.window = grid.span();
      break;
    case NormalizationPolicy::PlotInterval:
      norm.window = grid.span();
      norm.constant = integrate_time_grid(curve.values, grid);
      break;
    case NormalizationPolicy::FullWindow:
      norm.window = full_window();
      norm.constant = integrate_extended_window(density, curve.values, grid, norm.window);
      break;
  }

  if (policy != NormalizationPolicy::Unnormalized) {
    const bool vanishing = !std::isfinite(norm.constant) ||
                           (method == ToaMethod::QuantumClock ? !(norm.constant > 0.0)
                                                              : !(norm.constant > kVanishing));
    if (vanishing) {
      if (method == ToaMethod::Flux) {
        throw FluxInapplicable("normalization N_F is not positive (no net flux reaches the detector)");
      }
      throw VanishingNormalization(std::string(to_string(method)) +
                                   ": normalization vanishes, the state does not reach the "
                                   "detector within the window");
    }
    for (double& v : curve.values) v /= norm.constant;
  }

  const double lowest = *std::min_element(curve.values.begin(), curve.values.end());
  curve.negativity_flag = method == ToaMethod::Flux && lowest < kNegativityThreshold;
  return curve;
}

void require_flux_applicable(const State& state) {
  const bool pos = std::visit([](const auto& s) { return s.has_positive_momentum(); }, state);
  const bool neg = std::visit([](const auto& s) { return s.has_negative_momentum(); }, state);
  if (pos && neg) throw FluxInapplicable("mixed momentum signs");
}

}  // namespace

std::string_view to_string(ToaMethod method) {
  switch (method) {
    case ToaMethod::KijowskiMomentum: return "kijowski";
    case ToaMethod::KijowskiLeavens: return "leavens";
    case ToaMethod::Flux: return "flux";
    case ToaMethod::Semiclassical: return "semiclassical";
    case ToaMethod::QuantumClock: return "clock";
  }
  return "?";
}

ToaMethod parse_toa_method(std::string_view name) {
  if (name == "kijowski") return ToaMethod::KijowskiMomentum;
  if (name == "leavens") return ToaMethod::KijowskiLeavens;
  if (name == "flux") return ToaMethod::Flux;
  if (name == "semiclassical") return ToaMethod::Semiclassical;
  if (name == "clock") return ToaMethod::QuantumClock;
  throw InvalidInput("unknown method '" + std::string(name) +
                     "' (expected kijowski, leavens, flux, semiclassical or clock)");
}

double ToaCurve::peak() const { return *std::max_element(values.begin(), values.end()); }

double ToaCurve::grid_mass() const { return integrate_time_grid(values, grid); }

double default_regularization(const UnitSystem& u) {
  if (!u.has_oscillator_units()) {
    throw InvalidInput("no default regularization window without a trap frequency; pass T");
  }
  return 100.0 * u.time_unit();
}

KijowskiParts kijowski_density(const State& state, double t, const QuadratureSpec& spec) {
  return std::visit(
      Overloaded{
          [&](const Superposition& s) {
            const UnitSystem& u = s.units();
            const Interval support = s.momentum_support(12.0);
            const double center = 0.5 * (support.lo + support.hi);
            const double width = support.width() / 24.0;
            const ComplexIntegrand g = [&](double p) {
              return std::sqrt(std::abs(p)) * s.momentum_amplitude(p, t);
            };
            const double scale = 1.0 / (2.0 * kPi * u.mass() * u.hbar());
            const Complex plus = integrate_halfline_momentum(g, HalfLine::Plus, center, width, spec);
            const Complex minus = integrate_halfline_momentum(g, HalfLine::Minus, center, width, spec);
            return KijowskiParts{scale * std::norm(plus), scale * std::norm(minus)};
          },
          [&](const RingState& r) {
            const double inv_m = 1.0 / r.units().mass();
            return KijowskiParts{inv_m * std::norm(r.sqrt_momentum_sum(+1, 0.0, t)),
                                 inv_m * std::norm(r.sqrt_momentum_sum(-1, 0.0, t))};
          }},
      state);
}

KijowskiParts kijowski_leavens_density(const Superposition& state, double t,
                                       const QuadratureSpec& spec) {
  const UnitSystem& u = state.units();
  const double window = state.position_extent(t, 12.0);
  const SpaceTimeIntegrand g = [&](double x, double time) {
    return state.amplitude_delta(x, 0.0, time);
  };
  double narrowest = window;
  for (const auto& p : state.packets()) narrowest = std::min(narrowest, packet_width(p, t, u));
  const LeavensIntegrals I = integrate_leavens_singular(g, t, window, narrowest, spec);
  const double scale = u.hbar() / (32.0 * kPi * u.mass());
  return {scale * std::norm(I.plus), scale * std::norm(I.minus)};
}

double flux_density(const State& state, double t) {
  return std::visit(
      [t](const auto& s) {
        const Complex psi = s.amplitude(0.0, t);
        const Complex dpsi = s.amplitude_dx(0.0, t);
        return s.units().hbar() / s.units().mass() * std::imag(std::conj(psi) * dpsi);
      },
      state);
}

double clock_density(const State& state, double t) {
  return std::visit([t](const auto& s) { return std::norm(s.amplitude(0.0, t)); }, state);
}

double semiclassical_density(const GaussianPacket& packet, const UnitSystem& u, double t) {
  if (t < 0.0) throw InvalidInput("semiclassical distribution is defined for t >= 0 only");
  if (t == 0.0) return 0.0;
  const double L = std::abs(packet.x0);
  const double direction = packet.x0 < 0.0 ? 1.0 : -1.0;
  const double p = direction * u.mass() * L / t;
  return u.mass() * L / (t * t) * std::norm(packet_momentum_amplitude(packet, p, 0.0, u));
}

ToaCurve kijowski_momentum(const State& state, const TimeGrid& grid, const ToaOptions& options) {
  const double T = options.policy == NormalizationPolicy::FullWindow
                       ? resolve_T(units_of(state), options)
                       : 0.0;
  return build_curve(
      ToaMethod::KijowskiMomentum, grid,
      [&](double t) { return kijowski_density(state, t, options.quadrature).total(); },
      options.policy, [&] { return arrival_window(state, grid, T); });
}

ToaCurve kijowski_leavens(const Superposition& state, const TimeGrid& grid,
                          const ToaOptions& options) {
  const State as_state{state};
  const double T = options.policy == NormalizationPolicy::FullWindow
                       ? resolve_T(state.units(), options)
                       : 0.0;
  return build_curve(
      ToaMethod::KijowskiLeavens, grid,
      [&](double t) { return kijowski_leavens_density(state, t, options.quadrature).total(); },
      options.policy, [&] { return arrival_window(as_state, grid, T); });
}

ToaCurve quantum_flux(const State& state, const TimeGrid& grid, const ToaOptions& options) {
  require_flux_applicable(state);
  const double T = options.policy == NormalizationPolicy::FullWindow
                       ? resolve_T(units_of(state), options)
                       : 0.0;
  return build_curve(
      ToaMethod::Flux, grid, [&](double t) { return flux_density(state, t); }, options.policy,
      [&] { return arrival_window(state, grid, T); });
}

ToaCurve semiclassical(const GaussianPacket& packet, const UnitSystem& u, const TimeGrid& grid,
                       const ToaOptions& options) {
  validate(packet);
  if (std::abs(packet.x0) < 5.0 * packet.sigma0) {
    throw TrajectoryInterpretationRequired(
        "source-detector distance must be at least 5 sigma0");
  }
  if (grid.start() < 0.0) {
    throw InvalidInput("semiclassical distribution needs a grid with t >= 0");
  }
  const double T = options.policy == NormalizationPolicy::FullWindow ? resolve_T(u, options) : 0.0;
  return build_curve(
      ToaMethod::Semiclassical, grid, [&](double t) { return semiclassical_density(packet, u, t); },
      options.policy, [&] {
        const Interval window{0.0, 0.5 * T};
        if (!window.contains(grid.span())) {
          throw InvalidInput("time grid must lie inside [0, T/2]");
        }
        return window;
      });
}

ToaCurve quantum_clock(const State& state, const TimeGrid& grid, const ToaOptions& options) {
  const double T = options.policy == NormalizationPolicy::FullWindow
                       ? resolve_T(units_of(state), options)
                       : 0.0;
  return build_curve(
      ToaMethod::QuantumClock, grid, [&](double t) { return clock_density(state, t); },
      options.policy, [&] { return clock_window(T, grid); });
}

ToaCurve compute_curve(ToaMethod method, const State& state, const TimeGrid& grid,
                       const ToaOptions& options) {
  switch (method) {
    case ToaMethod::KijowskiMomentum: return kijowski_momentum(state, grid, options);
    case ToaMethod::KijowskiLeavens: {
      const auto* line = std::get_if<Superposition>(&state);
      if (!line) throw MethodInapplicable("leavens: position-space form applies to line states only");
      return kijowski_leavens(*line, grid, options);
    }
    case ToaMethod::Flux: return quantum_flux(state, grid, options);
    case ToaMethod::Semiclassical: {
      const auto* line = std::get_if<Superposition>(&state);
      if (!line || line->size() != 1) {
        throw TrajectoryInterpretationRequired("needs a single Gaussian packet on a line");
      }
      return semiclassical(line->packets().front(), line->units(), grid, options);
    }
    case ToaMethod::QuantumClock: return quantum_clock(state, grid, options);
  }
  throw InvalidInput("unknown method");
}

double clock_normalization(const State& state, double T, const TimeGrid& fine_grid) {
  const Interval window = clock_window(T, fine_grid);
  std::vector<double> values(fine_grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = clock_density(state, fine_grid.at(i));
  return integrate_extended_window([&](double t) { return clock_density(state, t); }, values,
                                   fine_grid, window);
}

double flux_normalization(const State& state, double T, const TimeGrid& fine_grid) {
  require_flux_applicable(state);
  const Interval window = clock_window(T, fine_grid);
  std::vector<double> values(fine_grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = flux_density(state, fine_grid.at(i));
  return integrate_extended_window([&](double t) { return flux_density(state, t); }, values,
                                   fine_grid, window);
}

std::vector<BackflowInterval> detect_backflow(const ToaCurve& curve) {
  if (curve.method != ToaMethod::Flux) {
    throw InvalidInput("backflow detection applies to flux curves only");
  }
  std::vector<BackflowInterval> out;
  const std::size_t n = curve.values.size();
  std::size_t i = 0;
  while (i < n) {
    if (!(curve.values[i] < kNegativityThreshold)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    double lowest = curve.values[i];
    while (j + 1 < n && curve.values[j + 1] < kNegativityThreshold) {
      ++j;
      lowest = std::min(lowest, curve.values[j]);
    }
    out.push_back({{curve.grid.at(i), curve.grid.at(j)}, lowest});
    i = j + 1;
  }
  return out;
}

double fringe_visibility(const ToaCurve& curve, Interval window) {
  std::vector<double> v;
  for (std::size_t i = 0; i < curve.values.size(); ++i) {
    if (window.contains(curve.grid.at(i))) v.push_back(curve.values[i]);
  }
  if (v.size() < 5) throw InvalidInput("visibility window holds fewer than 5 grid points");
  if (*std::min_element(v.begin(), v.end()) < 0.0) {
    throw InvalidInput("visibility needs a non-negative curve on the window");
  }

  const double top = *std::max_element(v.begin(), v.end());
  constexpr double kSignificance = 1e-3;
  std::vector<std::size_t> maxima;
  std::vector<std::size_t> minima;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] >= kSignificance * top) maxima.push_back(i);
    if (v[i] < v[i - 1] && v[i] <= v[i + 1]) minima.push_back(i);
  }
  if (maxima.empty()) return 0.0;

  double highest = 0.0;
  for (std::size_t i : maxima) highest = std::max(highest, v[i]);
  bool found = false;
  double lowest = 0.0;
  for (std::size_t i : minima) {
    if (i < maxima.front() || i > maxima.back()) continue;
    lowest = found ? std::min(lowest, v[i]) : v[i];
    found = true;
  }
  if (!found || highest + lowest <= 0.0) return 0.0;
  return (highest - lowest) / (highest + lowest);
}

}  // namespace toalab
