#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "toalab/core.hpp"
#include "toalab/toa.hpp"

namespace toalab {

/// Histogram bins given by strictly increasing edges.
struct BinSpec {
  std::vector<double> edges;

  std::size_t bins() const noexcept { return edges.empty() ? 0 : edges.size() - 1; }
  Interval bin(std::size_t k) const { return {edges.at(k), edges.at(k + 1)}; }

  /// Bins of equal `width` from span.lo; the last bin is shortened to end at span.hi.
  static BinSpec with_width(Interval span, double width);
  static BinSpec with_count(Interval span, std::size_t count);
};

void validate(const BinSpec& bins);

struct DiscriminationReport {
  Interval bin;
  std::vector<double> f_k;  // one per candidate curve
  double D = 0.0;
  /// f_k entering the sample bound (the one giving the larger bound).
  double f_bound = 0.0;
  long long N_s_min = 0;
  /// sqrt(f (1 - f) / N_s) at N_s = N_s_min.
  double epsilon_k = 0.0;
};

struct ClickSample {
  std::vector<double> times;
  std::uint64_t seed = 0;
  std::shared_ptr<const ToaCurve> source_curve;
};

/// Counter-based 64-bit generator: the n-th draw is the SplitMix64 finalizer
/// applied to seed + (n + 1) * 0x9E3779B97F4A7C15.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  std::uint64_t at(std::uint64_t counter) const noexcept;
  std::uint64_t next() noexcept { return at(counter_++); }
  /// Uniform double in the open interval (0, 1).
  double uniform() noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Probability of a click inside `bin`, integrating the sampled density.
double bin_probability(const ToaCurve& curve, Interval bin);

/// |integral over bin of (c1 - c2)|. A curve on a different grid is linearly
/// interpolated onto the grid of c1 first.
double separation_D(const ToaCurve& c1, const ToaCurve& c2, Interval bin);

/// Smallest integer strictly above 4 f (1 - f) / D^2. Throws Indistinguishable for D = 0.
long long min_samples(double f_k, double D);

double epsilon_k(double f_k, long long n_samples);

/// f_k for both curves, D, and the larger of the two sample bounds.
DiscriminationReport discrimination_report(const ToaCurve& c1, const ToaCurve& c2, Interval bin);

/// Inverse-CDF sampling with the CDF linear between grid points.
ClickSample sample_clicks(const ToaCurve& curve, long long n, std::uint64_t seed);

struct ChiSquareResult {
  double chi2 = 0.0;
  int dof = 0;
  double p_value = 1.0;
  /// Bins actually used after merging.
  std::size_t merged_bins = 0;
};

/// Pearson goodness of fit of `sample` against `candidate`.
///
/// Bins whose expected count is below 5 are merged left to right with their
/// neighbours. When the bins do not cover the candidate grid, the remainder
/// forms one extra bin.
ChiSquareResult chi_square_test(const ClickSample& sample, const ToaCurve& candidate,
                                const BinSpec& bins);

struct PowerSummary {
  int seeds = 0;
  long long n_samples = 0;
  double alpha = 0.0;
  int rejections = 0;
  double rejection_rate() const noexcept {
    return seeds > 0 ? static_cast<double>(rejections) / seeds : 0.0;
  }
};

/// Repeats sample_clicks(source, n, first_seed + i) against `candidate` for
/// `seeds` seeds and counts p-values below alpha.
PowerSummary chi_square_power(const ToaCurve& source, const ToaCurve& candidate,
                              const BinSpec& bins, long long n, int seeds,
                              std::uint64_t first_seed, double alpha);

}  // namespace toalab
