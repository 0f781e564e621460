#include <doctest.h>

#include <cmath>
#include <numbers>

#include "toalab/error.hpp"
#include "toalab/scenario.hpp"
#include "toalab/toa.hpp"

using namespace toalab;

namespace {

const UnitSystem kNat = UnitSystem::natural();
const double kSqrtPi = std::sqrt(std::numbers::pi);

State single(double x0, double p0) { return State{Superposition({{x0, p0, 1.0}}, kNat)}; }

// Closed forms for a unit-width packet at the origin detector.
double clock_exact(double x0, double p0, double t) {
  const double c = x0 + p0 * t;
  return std::exp(-c * c / (1.0 + t * t)) / (kSqrtPi * std::sqrt(1.0 + t * t));
}

double flux_exact(double x0, double p0, double t) {
  return clock_exact(x0, p0, t) * (p0 - x0 * t) / (1.0 + t * t);
}

ToaOptions with_policy(NormalizationPolicy p) {
  ToaOptions o;
  o.policy = p;
  return o;
}

double adaptive(const std::function<double(double)>& f, double a, double b, int pieces) {
  double total = 0.0;
  for (int k = 0; k < pieces; ++k) {
    const double lo = a + (b - a) * k / pieces;
    const double hi = a + (b - a) * (k + 1) / pieces;
    total += integrate_adaptive([&](double t) { return Complex{f(t), 0.0}; }, lo, hi).value.real();
  }
  return total;
}

}  // namespace

TEST_CASE("method names round-trip") {
  for (auto m : {ToaMethod::KijowskiMomentum, ToaMethod::KijowskiLeavens, ToaMethod::Flux,
                 ToaMethod::Semiclassical, ToaMethod::QuantumClock}) {
    CHECK(parse_toa_method(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_toa_method("bohm"), InvalidInput);
}

TEST_CASE("clock and flux densities match the closed forms") {
  const State s = single(-10.0, 7.0);
  for (double t : {0.5, 1.2, 1.43, 2.0, 7.0}) {
    CHECK(clock_density(s, t) == doctest::Approx(clock_exact(-10.0, 7.0, t)).epsilon(1e-12));
    CHECK(flux_density(s, t) == doctest::Approx(flux_exact(-10.0, 7.0, t)).epsilon(1e-11));
  }
}

TEST_CASE("semiclassical density matches the momentum distribution") {
  const GaussianPacket p{-10.0, 7.0, 1.0};
  for (double t : {0.8, 1.43, 3.0}) {
    const double q = 10.0 / t;
    const double exact = 10.0 / (t * t) * std::exp(-(q - 7.0) * (q - 7.0)) / kSqrtPi;
    CHECK(semiclassical_density(p, kNat, t) == doctest::Approx(exact).epsilon(1e-12));
  }
  CHECK(semiclassical_density(p, kNat, 0.0) == 0.0);
  CHECK_THROWS_AS(semiclassical_density(p, kNat, -1.0), InvalidInput);
  // Detector on the other side: the reading uses negative momenta.
  const GaussianPacket q{10.0, -7.0, 1.0};
  CHECK(semiclassical_density(q, kNat, 1.43) == doctest::Approx(semiclassical_density(p, kNat, 1.43)));
}

TEST_CASE("unnormalized Kijowski density integrates to the norm") {
  const State s = single(-10.0, 7.0);
  const double mass = adaptive([&](double t) { return kijowski_density(s, t).total(); }, -2.0, 12.0, 28);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
  const KijowskiParts parts = kijowski_density(s, 1.43);
  CHECK(parts.minus < 1e-20);
  CHECK(parts.plus > 0.1);
}

TEST_CASE("momentum and position forms of Kijowski agree for mixed momenta") {
  const Superposition s({{-3.0, 0.5, 1.0, {0.8, 0.0}}, {4.0, -1.0, 0.7, {0.0, 0.6}}}, kNat);
  for (double t : {0.0, 0.9, 2.5, 6.0}) {
    const KijowskiParts a = kijowski_density(State{s}, t);
    const KijowskiParts b = kijowski_leavens_density(s, t);
    CHECK(a.plus == doctest::Approx(b.plus).epsilon(1e-7));
    CHECK(a.minus == doctest::Approx(b.minus).epsilon(1e-7));
  }
}

TEST_CASE("full-window curves carry their normalization") {
  const Scenario sc = make_scenario_preset(FigureId::Fig3);
  const ToaCurve clock = quantum_clock(sc.state, sc.grid);
  CHECK(clock.normalization.policy == NormalizationPolicy::FullWindow);
  CHECK(clock.normalization.window == Interval{-50.0, 50.0});
  CHECK_FALSE(clock.negativity_flag);

  const ToaCurve plot = quantum_clock(sc.state, sc.grid, with_policy(NormalizationPolicy::PlotInterval));
  CHECK(plot.grid_mass() == doctest::Approx(1.0).epsilon(1e-12));

  const ToaCurve raw = quantum_clock(sc.state, sc.grid, with_policy(NormalizationPolicy::Unnormalized));
  CHECK(raw.normalization.constant == 1.0);
  CHECK(raw.values[800] == doctest::Approx(clock_exact(-10.0, 7.0, sc.grid.at(800))));

  ToaOptions small_T;
  small_T.T = 2.0;
  CHECK_THROWS_AS(quantum_clock(sc.state, sc.grid, small_T), InvalidInput);
}

TEST_CASE("flux refuses mixed momentum signs and vanishing normalization") {
  const Scenario fig7 = make_scenario_preset(FigureId::Fig7);
  try {
    quantum_flux(fig7.state, fig7.grid);
    FAIL("expected FluxInapplicable");
  } catch (const FluxInapplicable& e) {
    CHECK(std::string(e.what()) == "flux inapplicable: mixed momentum signs");
  }
  const TimeGrid grid(0.0, 5.0, 501);
  CHECK_THROWS_AS(quantum_flux(single(-10.0, -7.0), grid), FluxInapplicable);
  CHECK_THROWS_AS(kijowski_momentum(single(-10.0, -7.0), grid), VanishingNormalization);
}

TEST_CASE("semiclassical applicability") {
  const TimeGrid grid(0.0, 5.0, 501);
  CHECK_THROWS_AS(semiclassical({-2.0, 7.0, 1.0}, kNat, grid), TrajectoryInterpretationRequired);
  CHECK_THROWS_AS(semiclassical({-10.0, 7.0, 1.0}, kNat, TimeGrid(-1.0, 5.0, 601)), InvalidInput);
  const Scenario fig5 = make_scenario_preset(FigureId::Fig5);
  CHECK_THROWS_AS(compute_curve(ToaMethod::Semiclassical, fig5.state, fig5.grid),
                  TrajectoryInterpretationRequired);
  const Scenario fig8 = make_scenario_preset(FigureId::Fig8a);
  CHECK_THROWS_AS(compute_curve(ToaMethod::KijowskiLeavens, fig8.state, fig8.grid), MethodInapplicable);
}

TEST_CASE("backflow intervals are maximal negative runs") {
  const TimeGrid grid(0.0, 6.0, 7);
  ToaCurve c{grid, {1.0, -1e-3, -2e-3, 1.0, -1e-13, 1.0, -1.0}, ToaMethod::Flux, {}, false};
  const auto runs = detect_backflow(c);
  REQUIRE(runs.size() == 2);
  CHECK(runs[0].times == Interval{1.0, 2.0});
  CHECK(runs[0].min_value == -2e-3);
  CHECK(runs[1].times == Interval{6.0, 6.0});
  c.method = ToaMethod::QuantumClock;
  CHECK_THROWS_AS(detect_backflow(c), InvalidInput);

  const Scenario fig5 = make_scenario_preset(FigureId::Fig5);
  CHECK(quantum_flux(fig5.state, fig5.grid).negativity_flag);
}

TEST_CASE("fringe visibility") {
  const TimeGrid grid(0.0, 5.0, 501);
  std::vector<double> v;
  for (double t : grid.points()) v.push_back(2.0 + std::cos(2.0 * std::numbers::pi * t));
  const ToaCurve fringes{grid, v, ToaMethod::QuantumClock, {}, false};
  CHECK(fringe_visibility(fringes, grid.span()) == doctest::Approx(0.5).epsilon(1e-9));

  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::exp(-(grid.at(i) - 2.5) * (grid.at(i) - 2.5));
  const ToaCurve bump{grid, v, ToaMethod::QuantumClock, {}, false};
  CHECK(fringe_visibility(bump, grid.span()) == 0.0);
  CHECK_THROWS_AS(fringe_visibility(bump, {1.0, 1.02}), InvalidInput);
}

TEST_CASE("regularization default") {
  CHECK(default_regularization(kNat) == 100.0);
  CHECK(default_regularization(UnitSystem::si(constants::kRb87Mass, 10.0)) == doctest::Approx(10.0));
  CHECK_THROWS_AS(default_regularization(UnitSystem::si()), InvalidInput);
}

TEST_CASE("clock normalization grows like the closed form") {
  const State s = single(0.0, 0.0);
  const TimeGrid fine(-5.0, 5.0, 2001);
  for (double T : {20.0, 1e3}) {
    CHECK(clock_normalization(s, T, fine) ==
          doctest::Approx(2.0 / kSqrtPi * std::asinh(0.5 * T)).epsilon(1e-9));
  }
}

TEST_CASE("ring Kijowski splits by mode sign") {
  const Scenario fig8a = make_scenario_preset(FigureId::Fig8a);
  const KijowskiParts parts = kijowski_density(fig8a.state, 1.5);
  CHECK(parts.minus == 0.0);
  CHECK(parts.plus > 0.0);
  const Scenario fig8b = make_scenario_preset(FigureId::Fig8b);
  const KijowskiParts both = kijowski_density(fig8b.state, 1.5);
  CHECK(both.minus > 0.0);
}

TEST_CASE("detector frame translation") {
  const State s = single(-10.0, 7.0);
  const State moved = to_detector_frame(s, 2.0);
  const double t = 1.7;
  const auto& line = std::get<Superposition>(s);
  const double direct = std::imag(std::conj(line.amplitude(2.0, t)) * line.amplitude_dx(2.0, t));
  CHECK(flux_density(moved, t) == doctest::Approx(direct).epsilon(1e-12));
}
