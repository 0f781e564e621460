#include "toalab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "toalab/error.hpp"

namespace toalab {

namespace {

constexpr double kMinExpected = 5.0;

void require_inside(const ToaCurve& curve, Interval bin) {
  if (!(bin.lo <= bin.hi)) throw InvalidInput("bin must satisfy lo <= hi");
  const double slack = 1e-9 * curve.grid.step();
  const Interval span = curve.grid.span();
  if (bin.lo < span.lo - slack || bin.hi > span.hi + slack) {
    throw InvalidInput("bin [" + std::to_string(bin.lo) + ", " + std::to_string(bin.hi) +
                       "] lies outside the curve grid");
  }
}

bool same_grid(const TimeGrid& a, const TimeGrid& b) {
  return a.start() == b.start() && a.end() == b.end() && a.size() == b.size();
}

// Values of `curve` at the points of `grid`, linear in between and held constant past the ends.
std::vector<double> resample(const ToaCurve& curve, const TimeGrid& grid) {
  std::vector<double> out(grid.size());
  const std::size_t n = curve.values.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.at(i);
    if (t <= curve.grid.start()) {
      out[i] = curve.values.front();
    } else if (t >= curve.grid.end()) {
      out[i] = curve.values.back();
    } else {
      const double pos = (t - curve.grid.start()) / curve.grid.step();
      const std::size_t j = std::min(static_cast<std::size_t>(pos), n - 2);
      const double w = pos - static_cast<double>(j);
      out[i] = (1.0 - w) * curve.values[j] + w * curve.values[j + 1];
    }
  }
  return out;
}

}  // namespace

BinSpec BinSpec::with_width(Interval span, double width) {
  if (!(width > 0.0) || !(span.hi > span.lo)) throw InvalidInput("bin width and span must be positive");
  BinSpec spec;
  const double count = std::ceil(span.width() / width - 1e-9);
  for (long k = 0; k < static_cast<long>(count); ++k) spec.edges.push_back(span.lo + k * width);
  spec.edges.push_back(span.hi);
  return spec;
}

BinSpec BinSpec::with_count(Interval span, std::size_t count) {
  if (count == 0 || !(span.hi > span.lo)) throw InvalidInput("bin count and span must be positive");
  BinSpec spec;
  for (std::size_t k = 0; k < count; ++k) {
    spec.edges.push_back(span.lo + span.width() * static_cast<double>(k) / static_cast<double>(count));
  }
  spec.edges.push_back(span.hi);
  return spec;
}

void validate(const BinSpec& bins) {
  if (bins.edges.size() < 2) throw InvalidInput("a bin specification needs at least 2 edges");
  for (std::size_t k = 0; k + 1 < bins.edges.size(); ++k) {
    if (!(bins.edges[k] < bins.edges[k + 1])) {
      throw InvalidInput("bin edges must be strictly increasing");
    }
  }
}

std::uint64_t CounterRng::at(std::uint64_t counter) const noexcept {
  std::uint64_t z = seed_ + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double CounterRng::uniform() noexcept {
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
}

double bin_probability(const ToaCurve& curve, Interval bin) {
  require_inside(curve, bin);
  const Interval span = curve.grid.span();
  return integrate_time_grid(curve.values, curve.grid, std::max(bin.lo, span.lo),
                             std::min(bin.hi, span.hi));
}

double separation_D(const ToaCurve& c1, const ToaCurve& c2, Interval bin) {
  const Interval a = c1.grid.span();
  const Interval b = c2.grid.span();
  if (a.hi < b.lo || b.hi < a.lo) throw InvalidInput("curves have disjoint time grids");
  require_inside(c1, bin);
  require_inside(c2, bin);
  const std::vector<double> other =
      same_grid(c1.grid, c2.grid) ? c2.values : resample(c2, c1.grid);
  std::vector<double> diff(c1.values.size());
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = c1.values[i] - other[i];
  return std::abs(integrate_time_grid(diff, c1.grid, std::max(bin.lo, a.lo),
                                      std::min(bin.hi, a.hi)));
}

long long min_samples(double f_k, double D) {
  if (!(f_k >= 0.0 && f_k <= 1.0)) throw InvalidInput("f_k must lie in [0, 1]");
  if (!(D >= 0.0) || !std::isfinite(D)) throw InvalidInput("D must be non-negative");
  if (D == 0.0) throw Indistinguishable("D = 0: the curves give the same bin probability");
  const double bound = 4.0 * f_k * (1.0 - f_k) / (D * D);
  if (!(bound < 9.0e15)) throw Indistinguishable("sample bound exceeds 9e15 clicks");
  // A bound that is an integer up to rounding in D^2 still needs one more sample.
  const double nearest = std::round(bound);
  if (std::abs(bound - nearest) <= 1e-12 * std::max(1.0, bound)) {
    return static_cast<long long>(nearest) + 1;
  }
  return static_cast<long long>(std::floor(bound)) + 1;
}

double epsilon_k(double f_k, long long n_samples) {
  if (n_samples < 1) throw InvalidInput("sample size must be positive");
  return std::sqrt(f_k * (1.0 - f_k) / static_cast<double>(n_samples));
}

DiscriminationReport discrimination_report(const ToaCurve& c1, const ToaCurve& c2, Interval bin) {
  DiscriminationReport report;
  report.bin = bin;
  report.f_k = {bin_probability(c1, bin), bin_probability(c2, bin)};
  report.D = separation_D(c1, c2, bin);
  for (double f : report.f_k) {
    const double clamped = std::clamp(f, 0.0, 1.0);
    if (clamped * (1.0 - clamped) >= report.f_bound * (1.0 - report.f_bound)) report.f_bound = clamped;
  }
  report.N_s_min = min_samples(report.f_bound, report.D);
  report.epsilon_k = epsilon_k(report.f_bound, report.N_s_min);
  return report;
}

ClickSample sample_clicks(const ToaCurve& curve, long long n, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("number of clicks must be at least 1");
  for (double v : curve.values) {
    if (v < 0.0) {
      throw MethodInapplicable(std::string(to_string(curve.method)) +
                               ": curve takes negative values and cannot be sampled");
    }
  }
  const std::size_t cells = curve.values.size() - 1;
  const double h = curve.grid.step();
  std::vector<double> cdf(cells + 1, 0.0);
  for (std::size_t i = 0; i < cells; ++i) {
    cdf[i + 1] = cdf[i] + 0.5 * h * (curve.values[i] + curve.values[i + 1]);
  }
  const double total = cdf.back();
  if (!(total > 0.0)) throw InvalidInput("curve has zero mass on its grid");

  ClickSample sample;
  sample.seed = seed;
  sample.source_curve = std::make_shared<const ToaCurve>(curve);
  sample.times.reserve(static_cast<std::size_t>(n));
  CounterRng rng(seed);
  for (long long k = 0; k < n; ++k) {
    const double target = rng.uniform() * total;
    auto it = std::upper_bound(cdf.begin() + 1, cdf.end(), target);
    std::size_t cell = static_cast<std::size_t>(it - cdf.begin()) - 1;
    cell = std::min(cell, cells - 1);
    const double mass = cdf[cell + 1] - cdf[cell];
    const double w = mass > 0.0 ? std::clamp((target - cdf[cell]) / mass, 0.0, 1.0) : 0.5;
    const double t = curve.grid.at(cell) + w * h;
    sample.times.push_back(std::min(t, curve.grid.end()));
  }
  return sample;
}

ChiSquareResult chi_square_test(const ClickSample& sample, const ToaCurve& candidate,
                                const BinSpec& bins) {
  validate(bins);
  if (bins.bins() < 2) throw InvalidInput("chi-square test needs at least 2 bins (dof = 0)");
  if (sample.times.empty()) throw InvalidInput("empty click sample");

  const std::size_t nb = bins.bins();
  std::vector<double> prob(nb);
  std::vector<double> count(nb, 0.0);
  double covered = 0.0;
  for (std::size_t k = 0; k < nb; ++k) {
    prob[k] = std::max(0.0, bin_probability(candidate, bins.bin(k)));
    covered += prob[k];
  }
  double outside = 0.0;
  for (double t : sample.times) {
    if (t < bins.edges.front() || t > bins.edges.back()) {
      outside += 1.0;
      continue;
    }
    auto it = std::upper_bound(bins.edges.begin(), bins.edges.end(), t);
    std::size_t k = static_cast<std::size_t>(it - bins.edges.begin());
    k = std::clamp<std::size_t>(k, 1, nb) - 1;
    count[k] += 1.0;
  }

  const Interval span = candidate.grid.span();
  const double tol = 1e-9 * candidate.grid.step();
  const bool full_cover = bins.edges.front() <= span.lo + tol && bins.edges.back() >= span.hi - tol;
  if (full_cover) {
    for (double& p : prob) p /= covered;
  } else {
    prob.push_back(std::max(0.0, 1.0 - covered));
    count.push_back(outside);
  }

  const double n = static_cast<double>(sample.times.size());
  std::vector<double> exp_merged;
  std::vector<double> obs_merged;
  double e_acc = 0.0;
  double o_acc = 0.0;
  for (std::size_t k = 0; k < prob.size(); ++k) {
    e_acc += n * prob[k];
    o_acc += count[k];
    if (e_acc >= kMinExpected) {
      exp_merged.push_back(e_acc);
      obs_merged.push_back(o_acc);
      e_acc = 0.0;
      o_acc = 0.0;
    }
  }
  if (e_acc > 0.0 || o_acc > 0.0) {
    if (exp_merged.empty()) {
      exp_merged.push_back(e_acc);
      obs_merged.push_back(o_acc);
    } else {
      exp_merged.back() += e_acc;
      obs_merged.back() += o_acc;
    }
  }
  if (exp_merged.size() < 2 || exp_merged.back() < kMinExpected) {
    throw InvalidInput("too few samples for expected counts >= 5 in at least 2 merged bins");
  }

  ChiSquareResult result;
  for (std::size_t k = 0; k < exp_merged.size(); ++k) {
    const double d = obs_merged[k] - exp_merged[k];
    result.chi2 += d * d / exp_merged[k];
  }
  result.merged_bins = exp_merged.size();
  result.dof = static_cast<int>(exp_merged.size()) - 1;
  result.p_value = boost::math::gamma_q(0.5 * result.dof, 0.5 * result.chi2);
  return result;
}

PowerSummary chi_square_power(const ToaCurve& source, const ToaCurve& candidate,
                              const BinSpec& bins, long long n, int seeds,
                              std::uint64_t first_seed, double alpha) {
  if (seeds < 1) throw InvalidInput("number of seeds must be positive");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidInput("alpha must lie in (0, 1)");
  PowerSummary summary;
  summary.seeds = seeds;
  summary.n_samples = n;
  summary.alpha = alpha;
  for (int i = 0; i < seeds; ++i) {
    const ClickSample sample = sample_clicks(source, n, first_seed + static_cast<std::uint64_t>(i));
    if (chi_square_test(sample, candidate, bins).p_value < alpha) ++summary.rejections;
  }
  return summary;
}

}  // namespace toalab
