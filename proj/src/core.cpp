#include "toalab/core.hpp"

#include <cmath>
#include <sstream>

#include "toalab/error.hpp"

namespace toalab {

void require_finite(Complex z, std::string_view what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw InvalidInput(std::string(what) + " must be finite");
  }
}

void require_finite(double v, std::string_view what) {
  if (!std::isfinite(v)) throw InvalidInput(std::string(what) + " must be finite");
}

UnitSystem UnitSystem::natural() { return UnitSystem(UnitMode::Natural, 1.0, 1.0, 1.0); }

UnitSystem UnitSystem::si(double mass, std::optional<double> omega) {
  if (!(mass > 0.0) || !std::isfinite(mass)) throw InvalidInput("mass must be positive");
  if (omega && !(*omega > 0.0)) throw InvalidInput("trap frequency must be positive");
  return UnitSystem(UnitMode::SI, constants::kHbarSI, mass, omega);
}

bool UnitSystem::has_oscillator_units() const noexcept { return omega_.has_value(); }

double UnitSystem::length_unit() const {
  if (!omega_) throw InvalidInput("SI unit system without trap frequency has no l0");
  return std::sqrt(hbar_ / (mass_ * *omega_));
}

double UnitSystem::time_unit() const {
  if (!omega_) throw InvalidInput("SI unit system without trap frequency has no t0");
  return 1.0 / *omega_;
}

double UnitSystem::energy_unit() const {
  if (!omega_) throw InvalidInput("SI unit system without trap frequency has no E0");
  return hbar_ * *omega_;
}

std::string UnitSystem::describe() const {
  if (mode_ == UnitMode::Natural) return "natural (hbar = m = omega = 1)";
  std::ostringstream out;
  out.precision(17);
  out << "SI (hbar = " << hbar_ << " J s, m = " << mass_ << " kg";
  if (omega_) out << ", omega = " << *omega_ << " 1/s";
  out << ")";
  return out.str();
}

void require_same_units(const UnitSystem& a, const UnitSystem& b,
                        std::string_view context) {
  if (!(a == b)) {
    throw UnitMismatch(std::string(context) + ": unit systems differ (" + a.describe() +
                       " vs " + b.describe() + ")");
  }
}

TimeGrid::TimeGrid(double t_start, double t_end, std::size_t n_points)
    : start_(t_start), end_(t_end), n_(n_points) {
  if (!std::isfinite(t_start) || !std::isfinite(t_end) || !(t_start < t_end)) {
    throw InvalidInput("time grid requires finite t_start < t_end");
  }
  if (n_points < 2) throw InvalidInput("time grid requires at least 2 points");
}

double TimeGrid::at(std::size_t i) const noexcept {
  if (i + 1 == n_) return end_;
  return start_ + static_cast<double>(i) * (end_ - start_) / static_cast<double>(n_ - 1);
}

std::vector<double> TimeGrid::points() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = at(i);
  return out;
}

std::string_view to_string(NormalizationPolicy policy) {
  switch (policy) {
    case NormalizationPolicy::FullWindow: return "full";
    case NormalizationPolicy::PlotInterval: return "plot";
    case NormalizationPolicy::Unnormalized: return "none";
  }
  return "?";
}

NormalizationPolicy parse_normalization_policy(std::string_view text) {
  if (text == "full") return NormalizationPolicy::FullWindow;
  if (text == "plot") return NormalizationPolicy::PlotInterval;
  if (text == "none") return NormalizationPolicy::Unnormalized;
  throw InvalidInput("unknown normalization policy '" + std::string(text) +
                     "' (expected full, plot or none)");
}

}  // namespace toalab
