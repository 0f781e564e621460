#include <doctest.h>

#include <cmath>

#include "toalab/error.hpp"
#include "toalab/scenario.hpp"
#include "toalab/stats.hpp"

using namespace toalab;

namespace {

ToaCurve fig3_clock() {
  const Scenario s = make_scenario_preset(FigureId::Fig3);
  return quantum_clock(s.state, s.grid);
}

}  // namespace

TEST_CASE("counter generator matches the SplitMix64 reference stream") {
  CounterRng rng(0);
  CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
  CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(rng.next() == 0x06C45D188009454FULL);
  CounterRng again(0);
  CHECK(again.at(2) == 0x06C45D188009454FULL);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    CHECK((u > 0.0 && u < 1.0));
  }
}

TEST_CASE("minimum sample bound") {
  CHECK(min_samples(0.5, 0.1) == 101);
  CHECK(min_samples(0.0, 0.3) == 1);
  CHECK(min_samples(1.0, 0.3) == 1);
  CHECK(min_samples(0.2, 0.05) == 257);
  CHECK_THROWS_AS(min_samples(0.5, 0.0), Indistinguishable);
  CHECK_THROWS_AS(min_samples(1.5, 0.1), InvalidInput);
  CHECK(min_samples(0.3, 0.01) > min_samples(0.3, 0.02));
  CHECK(min_samples(0.5, 0.02) >= min_samples(0.4, 0.02));
  CHECK(min_samples(0.5, 0.02) >= min_samples(0.6, 0.02));
}

TEST_CASE("epsilon at the bound is below D / 2") {
  for (double f : {0.05, 0.3, 0.5, 0.9}) {
    for (double D : {0.001, 0.0067, 0.1}) {
      const long long n = min_samples(f, D);
      CHECK(epsilon_k(f, n) < D / 2.0 + 1e-16);
    }
  }
}

TEST_CASE("bin probability") {
  const ToaCurve c = fig3_clock();
  CHECK(bin_probability(c, c.grid.span()) == doctest::Approx(1.0).epsilon(1e-4));
  CHECK(bin_probability(c, {1.0, 1.0}) == 0.0);
  const double left = bin_probability(c, {0.0, 1.4321});
  const double right = bin_probability(c, {1.4321, 5.0});
  CHECK(left + right == doctest::Approx(bin_probability(c, c.grid.span())).epsilon(1e-12));
  CHECK_THROWS_AS(bin_probability(c, {4.0, 6.0}), InvalidInput);
}

TEST_CASE("separation between curves") {
  const ToaCurve c = fig3_clock();
  CHECK(separation_D(c, c, {1.0, 2.0}) == 0.0);
  const Scenario s = make_scenario_preset(FigureId::Fig3);
  const ToaCurve k = kijowski_momentum(s.state, s.grid);
  CHECK(separation_D(c, k, c.grid.span()) <= 1e-4);

  // Same curve on a coarser grid: resampling keeps D small.
  const ToaCurve coarse = quantum_clock(s.state, TimeGrid(0.0, 5.0, 1001));
  CHECK(separation_D(c, coarse, {1.0, 2.0}) < 1e-5);
  const ToaCurve far = quantum_clock(s.state, TimeGrid(10.0, 20.0, 101));
  CHECK_THROWS_AS(separation_D(c, far, {1.0, 2.0}), InvalidInput);

  const DiscriminationReport r = discrimination_report(c, k, {1.2, 1.6});
  CHECK(r.f_k.size() == 2);
  CHECK(r.D > 0.0);
  CHECK(r.N_s_min == min_samples(r.f_bound, r.D));
  CHECK(r.epsilon_k < r.D / 2.0 + 1e-16);
}

TEST_CASE("click sampling is deterministic and follows the curve") {
  const ToaCurve c = fig3_clock();
  const ClickSample a = sample_clicks(c, 1000, 42);
  const ClickSample b = sample_clicks(c, 1000, 42);
  CHECK(a.times == b.times);
  CHECK(a.source_curve->method == ToaMethod::QuantumClock);
  for (double t : a.times) CHECK(c.grid.span().contains(t));

  // Mean within 3 standard errors of the quadrature moment.
  const ClickSample big = sample_clicks(c, 100000, 7);
  std::vector<double> t1(c.values.size());
  std::vector<double> t2(c.values.size());
  for (std::size_t i = 0; i < t1.size(); ++i) {
    t1[i] = c.grid.at(i) * c.values[i];
    t2[i] = c.grid.at(i) * t1[i];
  }
  const double mass = integrate_time_grid(c.values, c.grid);
  const double mean = integrate_time_grid(t1, c.grid) / mass;
  const double var = integrate_time_grid(t2, c.grid) / mass - mean * mean;
  double sum = 0.0;
  for (double t : big.times) sum += t;
  const double emp = sum / static_cast<double>(big.times.size());
  CHECK(std::abs(emp - mean) < 3.0 * std::sqrt(var / 1e5));

  // Bin frequencies within 3 sigma of the bin probabilities.
  const BinSpec bins = BinSpec::with_count(c.grid.span(), 10);
  const ClickSample mid = sample_clicks(c, 10000, 3);
  for (std::size_t k = 0; k < bins.bins(); ++k) {
    const Interval bin = bins.bin(k);
    double n = 0.0;
    for (double t : mid.times) n += (t >= bin.lo && t < bin.hi) ? 1.0 : 0.0;
    const double f = bin_probability(c, bin);
    CHECK(std::abs(n / 1e4 - f) <= 3.0 * std::sqrt(f * (1.0 - f) / 1e4) + 1e-4);
  }
}

TEST_CASE("a single hot cell keeps every click inside it") {
  const TimeGrid grid(0.0, 10.0, 11);
  std::vector<double> v(11, 0.0);
  v[4] = 1.0;
  const ToaCurve spike{grid, v, ToaMethod::QuantumClock, {}, false};
  for (double t : sample_clicks(spike, 500, 9).times) CHECK((t >= 3.0 && t <= 5.0));

  v[5] = -0.1;
  const ToaCurve negative{grid, v, ToaMethod::Flux, {}, true};
  CHECK_THROWS_AS(sample_clicks(negative, 10, 1), MethodInapplicable);
  CHECK_THROWS_AS(sample_clicks(spike, 0, 1), InvalidInput);
}

TEST_CASE("chi-square test") {
  const ToaCurve c = fig3_clock();
  const BinSpec bins = BinSpec::with_count(c.grid.span(), 20);
  const ChiSquareResult self = chi_square_test(sample_clicks(c, 10000, 11), c, bins);
  CHECK(self.dof + 1 == static_cast<int>(self.merged_bins));
  CHECK(self.merged_bins < 20);
  CHECK((self.p_value >= 0.0 && self.p_value <= 1.0));

  const Scenario fig5 = make_scenario_preset(FigureId::Fig5);
  const ToaCurve other = quantum_clock(make_scenario_preset(FigureId::Fig4).state, fig5.grid);
  const ToaCurve own = quantum_clock(fig5.state, fig5.grid);
  const ChiSquareResult diff =
      chi_square_test(sample_clicks(own, 5000, 1), other, BinSpec::with_count(fig5.grid.span(), 40));
  CHECK(diff.p_value < 1e-6);

  CHECK_THROWS_AS(chi_square_test(sample_clicks(c, 100, 1), c, BinSpec{{0.0, 5.0}}), InvalidInput);
  CHECK_THROWS_AS(chi_square_test(sample_clicks(c, 6, 1), c, bins), InvalidInput);
  CHECK_THROWS_AS(validate(BinSpec{{0.0, 2.0, 1.0}}), InvalidInput);
}

TEST_CASE("chi-square p-values are calibrated") {
  const ToaCurve c = fig3_clock();
  const BinSpec bins = BinSpec::with_count(c.grid.span(), 20);
  int below = 0;
  for (std::uint64_t seed = 100; seed < 300; ++seed) {
    if (chi_square_test(sample_clicks(c, 2000, seed), c, bins).p_value < 0.1) ++below;
  }
  CHECK(below / 200.0 == doctest::Approx(0.1).epsilon(0.5));
}

TEST_CASE("bin construction") {
  const BinSpec w = BinSpec::with_width({0.0, 12.0}, 0.1);
  CHECK(w.bins() == 120);
  CHECK(w.edges.back() == 12.0);
  const BinSpec ragged = BinSpec::with_width({0.0, 1.05}, 0.5);
  CHECK(ragged.bins() == 3);
  CHECK(ragged.bin(2).width() == doctest::Approx(0.05));
  CHECK(BinSpec::with_count({0.0, 1.0}, 4).edges == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
}
