#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "toalab/error.hpp"
#include "toalab/numerics.hpp"

using namespace toalab;

TEST_CASE("adaptive quadrature reproduces closed-form integrals") {
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  auto gauss = integrate_adaptive([](double x) { return Complex{std::exp(-x * x), 0.0}; }, -12.0, 12.0);
  CHECK(gauss.value.real() == doctest::Approx(sqrt_pi).epsilon(1e-13));

  // Integral of exp(i k x) over [0, pi] = (exp(i k pi) - 1) / (i k).
  const double k = 25.0;
  auto osc = integrate_adaptive([&](double x) { return std::exp(Complex{0.0, k * x}); }, 0.0,
                                std::numbers::pi);
  const Complex exact = (std::exp(Complex{0.0, k * std::numbers::pi}) - 1.0) / Complex{0.0, k};
  CHECK(std::abs(osc.value - exact) < 1e-12);

  auto root = integrate_adaptive([](double x) { return Complex{std::sqrt(x), 0.0}; }, 0.0, 1.0);
  CHECK(root.value.real() == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(root.intervals > 1);
}

TEST_CASE("adaptive quadrature reports non-convergence with its best estimate") {
  QuadratureSpec spec;
  spec.rel_tol = 1e-15;
  spec.abs_tol = 1e-300;
  spec.max_subdivisions = 3;
  try {
    integrate_adaptive([](double x) { return Complex{std::sin(1.0 / (x + 1e-3)), 0.0}; }, 0.0, 1.0, spec);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(std::isfinite(e.best_value().real()));
    CHECK(e.best_error() > 0.0);
  }
  QuadratureSpec bad;
  bad.rel_tol = -1.0;
  CHECK_THROWS_AS(validate(bad), InvalidInput);
}

TEST_CASE("half-line momentum integral of a Gaussian") {
  // Integral over p >= 0 of exp(-(p - 1)^2) = sqrt(pi) / 2 * erfc(-1).
  const ComplexIntegrand g = [](double p) { return Complex{std::exp(-(p - 1.0) * (p - 1.0)), 0.0}; };
  const double plus = integrate_halfline_momentum(g, HalfLine::Plus, 1.0, 1.0).real();
  const double minus = integrate_halfline_momentum(g, HalfLine::Minus, 1.0, 1.0).real();
  const double sqrt_pi = std::sqrt(std::numbers::pi);
  CHECK(plus == doctest::Approx(0.5 * sqrt_pi * std::erfc(-1.0)).epsilon(1e-12));
  CHECK(minus == doctest::Approx(0.5 * sqrt_pi * std::erfc(1.0)).epsilon(1e-12));

  // Support entirely on the other side gives zero.
  const ComplexIntegrand far = [](double p) { return Complex{std::exp(-(p - 50.0) * (p - 50.0)), 0.0}; };
  CHECK(std::abs(integrate_halfline_momentum(far, HalfLine::Minus, 50.0, 1.0)) == 0.0);
}

TEST_CASE("singular position integrals against Gamma(1/4)") {
  // g = x exp(-x^2): the even half cancels and both integrals reduce to
  // +-2 i * integral_0^inf x^(-1/2) exp(-x^2) dx = +-i Gamma(1/4).
  const SpaceTimeIntegrand g = [](double x, double) { return Complex{x * std::exp(-x * x), 0.0}; };
  const LeavensIntegrals I = integrate_leavens_singular(g, 0.0, 12.0);
  const double gamma = std::tgamma(0.25);
  CHECK(std::abs(I.plus - Complex{0.0, gamma}) < 1e-9);
  CHECK(std::abs(I.minus - Complex{0.0, -gamma}) < 1e-9);
}

TEST_CASE("singular position integrals with a constant tail") {
  // g = 1 - exp(-x^2): even, integral over the axis of |x|^(-3/2) g = 2 * 2 Gamma(3/4).
  const SpaceTimeIntegrand g = [](double x, double) { return Complex{-std::expm1(-x * x), 0.0}; };
  const LeavensIntegrals I = integrate_leavens_singular(g, 0.0, 10.0);
  const double even = 4.0 * std::tgamma(0.75);
  CHECK(std::abs(I.plus - Complex{even, 0.0}) < 1e-8);
  CHECK(std::abs(I.minus - Complex{even, 0.0}) < 1e-8);
}

TEST_CASE("singular integrals refuse a window that cuts the support") {
  const SpaceTimeIntegrand g = [](double x, double) { return Complex{x * std::exp(-(x - 5.0) * (x - 5.0)), 0.0}; };
  CHECK_THROWS_AS(integrate_leavens_singular(g, 0.0, 4.0), InvalidInput);
  const SpaceTimeIntegrand zero = [](double, double) { return Complex{}; };
  CHECK(std::abs(integrate_leavens_singular(zero, 0.0, 4.0).plus) == 0.0);
}

TEST_CASE("grid integration is exact for cubics") {
  auto cubic = [](double t) { return 2.0 * t * t * t - t * t + 3.0; };
  auto exact = [](double a, double b) {
    auto F = [](double t) { return 0.5 * t * t * t * t - t * t * t / 3.0 + 3.0 * t; };
    return F(b) - F(a);
  };
  for (std::size_t n : {2u, 3u, 4u, 5u, 10u, 11u}) {
    const TimeGrid grid(-1.0, 2.0, n);
    std::vector<double> v;
    for (double t : grid.points()) v.push_back(cubic(t));
    if (n == 2) {
      CHECK(integrate_time_grid(v, grid) == doctest::Approx(1.5 * (cubic(-1.0) + cubic(2.0))));
    } else {
      CHECK(integrate_time_grid(v, grid) == doctest::Approx(exact(-1.0, 2.0)).epsilon(1e-13));
    }
  }
  const TimeGrid grid(0.0, 1.0, 3);
  CHECK_THROWS_AS(integrate_time_grid(std::vector<double>{1.0, 2.0}, grid), InvalidInput);
}

TEST_CASE("partial-interval grid integration is exact for quadratics") {
  auto quad = [](double t) { return 3.0 * t * t - 2.0 * t + 1.0; };
  auto F = [](double t) { return t * t * t - t * t + t; };
  const TimeGrid grid(0.0, 4.0, 41);
  std::vector<double> v;
  for (double t : grid.points()) v.push_back(quad(t));
  CHECK(integrate_time_grid(v, grid, 0.37, 2.913) == doctest::Approx(F(2.913) - F(0.37)).epsilon(1e-12));
  CHECK(integrate_time_grid(v, grid, 1.0, 1.0) == 0.0);
  CHECK(integrate_time_grid(v, grid, 0.0, 4.0) == doctest::Approx(F(4.0)).epsilon(1e-12));
  CHECK_THROWS_AS(integrate_time_grid(v, grid, -1.0, 2.0), InvalidInput);
}

TEST_CASE("extended window integral against the asinh closed form") {
  // |psi(0, t)|^2 for x0 = p0 = 0, sigma0 = 1 is 1 / (sqrt(pi) sqrt(1 + t^2)).
  auto f = [](double t) { return 1.0 / (std::sqrt(std::numbers::pi) * std::sqrt(1.0 + t * t)); };
  const TimeGrid grid(-5.0, 5.0, 2001);
  std::vector<double> v;
  for (double t : grid.points()) v.push_back(f(t));
  for (double T : {10.0, 100.0, 1e4}) {
    const double got = integrate_extended_window(f, v, grid, {-0.5 * T, 0.5 * T});
    const double exact = 2.0 / std::sqrt(std::numbers::pi) * std::asinh(0.5 * T);
    CHECK(got == doctest::Approx(exact).epsilon(1e-9));
  }
  CHECK_THROWS_AS(integrate_extended_window(f, v, grid, {-1.0, 1.0}), InvalidInput);
}
