#include <doctest.h>

#include <cmath>

#include "toalab/core.hpp"
#include "toalab/error.hpp"

using namespace toalab;

TEST_CASE("natural units are all one") {
  const UnitSystem u = UnitSystem::natural();
  CHECK(u.hbar() == 1.0);
  CHECK(u.mass() == 1.0);
  CHECK(u.length_unit() == 1.0);
  CHECK(u.time_unit() == 1.0);
  CHECK(u.energy_unit() == 1.0);
}

TEST_CASE("SI oscillator units follow from the trap frequency") {
  const double omega = 2.0 * 3.141592653589793 * 50.0;
  const UnitSystem u = UnitSystem::si(constants::kRb87Mass, omega);
  CHECK(u.length_unit() == doctest::Approx(std::sqrt(constants::kHbarSI / (constants::kRb87Mass * omega))));
  CHECK(u.time_unit() == doctest::Approx(1.0 / omega));
  CHECK(u.energy_unit() == doctest::Approx(constants::kHbarSI * omega));

  const UnitSystem bare = UnitSystem::si();
  CHECK_FALSE(bare.has_oscillator_units());
  CHECK_THROWS_AS(bare.length_unit(), InvalidInput);
  CHECK_THROWS_AS(UnitSystem::si(-1.0), InvalidInput);
  CHECK_THROWS_AS(UnitSystem::si(1.0, 0.0), InvalidInput);
}

TEST_CASE("mixing unit systems is rejected") {
  CHECK_NOTHROW(require_same_units(UnitSystem::natural(), UnitSystem::natural(), "x"));
  CHECK_THROWS_AS(require_same_units(UnitSystem::natural(), UnitSystem::si(), "x"), UnitMismatch);
}

TEST_CASE("non-finite values are rejected") {
  CHECK_THROWS_AS(require_finite(std::nan(""), "v"), InvalidInput);
  CHECK_THROWS_AS(require_finite(Complex{1.0, INFINITY}, "z"), InvalidInput);
  CHECK_NOTHROW(require_finite(Complex{1.0, 2.0}, "z"));
}

TEST_CASE("time grid") {
  const TimeGrid g(0.0, 5.0, 2001);
  CHECK(g.step() == doctest::Approx(0.0025));
  CHECK(g.at(0) == 0.0);
  CHECK(g.at(2000) == 5.0);
  CHECK(g.points().size() == 2001);
  CHECK(g.refined().size() == 4001);
  CHECK(g.refined().at(2) == g.at(1));

  CHECK_THROWS_AS(TimeGrid(1.0, 1.0, 10), InvalidInput);
  CHECK_THROWS_AS(TimeGrid(2.0, 1.0, 10), InvalidInput);
  CHECK_THROWS_AS(TimeGrid(0.0, 1.0, 1), InvalidInput);
}

TEST_CASE("interval containment") {
  const Interval a{-1.0, 1.0};
  CHECK(a.contains(0.0));
  CHECK(a.contains(Interval{-1.0, 0.5}));
  CHECK_FALSE(a.contains(Interval{-2.0, 0.5}));
  CHECK(a.width() == 2.0);
}

TEST_CASE("normalization policy names") {
  for (auto p : {NormalizationPolicy::FullWindow, NormalizationPolicy::PlotInterval,
                 NormalizationPolicy::Unnormalized}) {
    CHECK(parse_normalization_policy(to_string(p)) == p);
  }
  CHECK_THROWS_AS(parse_normalization_policy("bogus"), InvalidInput);
}

TEST_CASE("error codes match exit statuses") {
  CHECK(InvalidInput("x").code() == ErrorCode::InvalidInput);
  CHECK(static_cast<int>(FluxInapplicable("x").code()) == 3);
  CHECK(static_cast<int>(NonConvergence("x", {}, 0.0).code()) == 4);
  CHECK(std::string(FluxInapplicable("mixed momentum signs").what()) ==
        "flux inapplicable: mixed momentum signs");
}
