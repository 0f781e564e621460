#include "toalab/wavefunc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "toalab/error.hpp"

namespace toalab {

namespace {

constexpr double kPi = std::numbers::pi;

// exp(z) - 1 for complex z without cancellation at small |z|.
Complex expm1_complex(Complex z) {
  const double a = z.real();
  const double b = z.imag();
  const double s = std::sin(0.5 * b);
  const double re = std::expm1(a) * std::cos(b) - 2.0 * s * s;
  const double im = std::exp(a) * std::sin(b);
  return {re, im};
}

struct PacketTerms {
  Complex spread;    // 1 + i hbar t / (m sigma0^2)
  Complex log_norm;  // log A(t)
  double drift;      // x0 + p0 t / m
};

PacketTerms packet_terms(const GaussianPacket& p, double t, const UnitSystem& u) {
  const double tau = u.hbar() * t / (u.mass() * p.sigma0 * p.sigma0);
  const Complex spread{1.0, tau};
  // A(t) = [sqrt(pi) (sigma0 + i hbar t / (m sigma0))]^(-1/2)
  const Complex log_norm = -0.5 * std::log(std::sqrt(kPi) * p.sigma0 * spread);
  return {spread, log_norm, p.x0 + p.p0 * t / u.mass()};
}

Complex packet_exponent(const GaussianPacket& p, const PacketTerms& k, double x, double t,
                        const UnitSystem& u) {
  const double xi = x - k.drift;
  const Complex gauss = -(xi * xi) / (2.0 * p.sigma0 * p.sigma0 * k.spread);
  const double phase = p.p0 / u.hbar() * (x - p.x0 - 0.5 * p.p0 * t / u.mass());
  return gauss + Complex{0.0, phase} + k.log_norm;
}

}  // namespace

void validate(const GaussianPacket& packet) {
  require_finite(packet.x0, "packet x0");
  require_finite(packet.p0, "packet p0");
  require_finite(packet.weight, "packet weight");
  if (!(packet.sigma0 > 0.0) || !std::isfinite(packet.sigma0)) {
    throw InvalidInput("packet sigma0 must be positive and finite");
  }
}

Complex packet_amplitude(const GaussianPacket& packet, double x, double t,
                         const UnitSystem& u) {
  const PacketTerms k = packet_terms(packet, t, u);
  return packet.weight * std::exp(packet_exponent(packet, k, x, t, u));
}

Complex packet_amplitude_dx(const GaussianPacket& packet, double x, double t,
                            const UnitSystem& u) {
  const PacketTerms k = packet_terms(packet, t, u);
  const Complex psi = packet.weight * std::exp(packet_exponent(packet, k, x, t, u));
  const Complex factor = -(x - k.drift) / (packet.sigma0 * packet.sigma0 * k.spread) +
                         Complex{0.0, packet.p0 / u.hbar()};
  return psi * factor;
}

Complex packet_amplitude_delta(const GaussianPacket& packet, double x, double x_ref,
                               double t, const UnitSystem& u) {
  const PacketTerms k = packet_terms(packet, t, u);
  const double dx = x - x_ref;
  const double xi_sum = (x - k.drift) + (x_ref - k.drift);
  const Complex diff = -(dx * xi_sum) / (2.0 * packet.sigma0 * packet.sigma0 * k.spread) +
                       Complex{0.0, packet.p0 / u.hbar() * dx};
  const Complex e_ref = packet_exponent(packet, k, x_ref, t, u);
  if (std::abs(diff) < 0.5) return packet.weight * std::exp(e_ref) * expm1_complex(diff);
  return packet.weight * (std::exp(e_ref + diff) - std::exp(e_ref));
}

Complex packet_momentum_amplitude(const GaussianPacket& packet, double k, double t,
                                  const UnitSystem& u) {
  const double hbar = u.hbar();
  const double s = packet.sigma0 / hbar;
  const double dk = k - packet.p0;
  const double log_mag = 0.25 * std::log(s * s / kPi) - 0.5 * dk * dk * s * s;
  const double phase = -k * packet.x0 / hbar - t * k * k / (2.0 * u.mass() * hbar);
  return packet.weight * std::polar(std::exp(log_mag), phase);
}

double packet_width(const GaussianPacket& packet, double t, const UnitSystem& u) {
  const double tau = u.hbar() * t / (u.mass() * packet.sigma0 * packet.sigma0);
  return packet.sigma0 * std::sqrt(1.0 + tau * tau);
}

// ---------------------------------------------------------------------------

Superposition::Superposition(std::vector<GaussianPacket> packets, UnitSystem units)
    : packets_(std::move(packets)), units_(units) {
  if (packets_.empty()) throw InvalidInput("superposition needs at least one packet");
  for (const auto& p : packets_) validate(p);
}

Superposition Superposition::wave_train(std::vector<GaussianPacket> packets,
                                        UnitSystem units) {
  const double w = 1.0 / std::sqrt(static_cast<double>(std::max<std::size_t>(packets.size(), 1)));
  for (auto& p : packets) p.weight = w;
  return Superposition(std::move(packets), units);
}

Complex Superposition::amplitude(double x, double t) const {
  Complex sum{};
  for (const auto& p : packets_) sum += packet_amplitude(p, x, t, units_);
  return sum;
}

Complex Superposition::amplitude_dx(double x, double t) const {
  Complex sum{};
  for (const auto& p : packets_) sum += packet_amplitude_dx(p, x, t, units_);
  return sum;
}

Complex Superposition::amplitude_delta(double x, double x_ref, double t) const {
  Complex sum{};
  for (const auto& p : packets_) sum += packet_amplitude_delta(p, x, x_ref, t, units_);
  return sum;
}

Complex Superposition::momentum_amplitude(double k, double t) const {
  Complex sum{};
  for (const auto& p : packets_) sum += packet_momentum_amplitude(p, k, t, units_);
  return sum;
}

Interval Superposition::momentum_support(double radius) const {
  Interval out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& p : packets_) {
    const double half = radius * units_.hbar() / p.sigma0;
    out.lo = std::min(out.lo, p.p0 - half);
    out.hi = std::max(out.hi, p.p0 + half);
  }
  return out;
}

double Superposition::position_extent(double t, double radius) const {
  double extent = 0.0;
  for (const auto& p : packets_) {
    const double center = p.x0 + p.p0 * t / units_.mass();
    extent = std::max(extent, std::abs(center) + radius * packet_width(p, t, units_));
  }
  return extent;
}

bool Superposition::has_positive_momentum() const {
  return std::any_of(packets_.begin(), packets_.end(),
                     [](const GaussianPacket& p) { return p.p0 > 0.0 && p.weight != 0.0; });
}

bool Superposition::has_negative_momentum() const {
  return std::any_of(packets_.begin(), packets_.end(),
                     [](const GaussianPacket& p) { return p.p0 < 0.0 && p.weight != 0.0; });
}

Superposition Superposition::translated(double x) const {
  auto moved = packets_;
  for (auto& p : moved) p.x0 -= x;
  return Superposition(std::move(moved), units_);
}

// ---------------------------------------------------------------------------

RingState::RingState(double radius, UnitSystem units, std::vector<RingPacket> packets)
    : radius_(radius), units_(units), packets_(std::move(packets)) {
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw InvalidInput("ring radius must be positive");
  for (const auto& p : packets_) {
    require_finite(p.weight, "ring packet weight");
    if (p.coefficients.empty()) throw InvalidInput("ring packet has an empty mode range");
  }
}

double RingState::circumference() const noexcept { return 2.0 * kPi * radius_; }

double RingState::mode_energy(long n) const noexcept {
  const double p = mode_momentum(n);
  return p * p / (2.0 * units_.mass());
}

double RingState::canonical_position(double x) const {
  const double d = circumference();
  return x - d * std::floor((x + 0.5 * d) / d);
}

namespace {

// Sum_n f(n) a_n exp(i n (x - xbar) / R - i E_n t / hbar) over the selected modes.
template <typename Weight>
Complex ring_mode_sum(const RingState& ring, double x, double t, Weight&& mode_weight) {
  const double xc = ring.canonical_position(x);
  const double hbar = ring.units().hbar();
  const double omega1 = hbar / (2.0 * ring.units().mass() * ring.radius() * ring.radius());
  Complex total{};
  for (const auto& packet : ring.packets()) {
    const double k1 = (xc - packet.xbar) / ring.radius();
    Complex sum{};
    for (std::size_t j = 0; j < packet.coefficients.size(); ++j) {
      const long n = packet.n_min + static_cast<long>(j);
      const double w = mode_weight(n);
      if (w == 0.0) continue;
      const double nd = static_cast<double>(n);
      const double phase = nd * k1 - nd * nd * omega1 * t;
      sum += w * packet.coefficients[j] * Complex{std::cos(phase), std::sin(phase)};
    }
    total += packet.weight * sum;
  }
  return total;
}

}  // namespace

Complex RingState::amplitude(double x, double t) const {
  return ring_mode_sum(*this, x, t, [](long) { return 1.0; });
}

Complex RingState::amplitude_dx(double x, double t) const {
  // d/dx multiplies mode n by i p_n / hbar = i n / R.
  const double r = radius_;
  const Complex s = ring_mode_sum(*this, x, t, [r](long n) { return static_cast<double>(n) / r; });
  return Complex{0.0, 1.0} * s;
}

Complex RingState::sqrt_momentum_sum(int sign, double x, double t) const {
  const RingState& self = *this;
  return ring_mode_sum(*this, x, t, [&self, sign](long n) {
    if (sign > 0 ? n <= 0 : n >= 0) return 0.0;
    return std::sqrt(std::abs(self.mode_momentum(n)));
  });
}

bool RingState::has_positive_momentum() const {
  return std::any_of(packets_.begin(), packets_.end(),
                     [](const RingPacket& p) { return p.pbar > 0.0 && p.weight != 0.0; });
}

bool RingState::has_negative_momentum() const {
  return std::any_of(packets_.begin(), packets_.end(),
                     [](const RingPacket& p) { return p.pbar < 0.0 && p.weight != 0.0; });
}

RingState RingState::superpose(const std::vector<std::pair<Complex, RingState>>& terms) {
  if (terms.empty()) throw InvalidInput("ring superposition needs at least one term");
  const RingState& first = terms.front().second;
  std::vector<RingPacket> packets;
  for (const auto& [factor, ring] : terms) {
    require_same_units(first.units(), ring.units(), "ring superposition");
    if (ring.radius() != first.radius()) throw InvalidInput("ring superposition mixes radii");
    for (auto p : ring.packets()) {
      p.weight *= factor;
      packets.push_back(std::move(p));
    }
  }
  return RingState(first.radius(), first.units(), std::move(packets));
}

RingState RingState::translated(double x) const {
  auto moved = packets_;
  for (auto& p : moved) p.xbar = canonical_position(p.xbar - x);
  return RingState(radius_, units_, std::move(moved));
}

RingState build_ring_state(double xbar, double pbar, double sigma0, double radius,
                           const UnitSystem& u, double tail_epsilon) {
  require_finite(xbar, "ring xbar");
  require_finite(pbar, "ring pbar");
  if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("ring radius must be positive");
  const double d = 2.0 * kPi * radius;
  if (!(sigma0 > 0.0)) throw InvalidInput("ring packet sigma0 must be positive");
  if (!(sigma0 < d / 10.0)) {
    throw InvalidInput("ring packet sigma0 must be below a tenth of the circumference");
  }
  if (!(tail_epsilon > 0.0 && tail_epsilon < 1.0)) {
    throw InvalidInput("tail_epsilon must lie in (0, 1)");
  }

  const double hbar = u.hbar();
  const double prefactor = std::pow(4.0 * kPi * sigma0 * sigma0 / (d * d * d * d), 0.25);
  auto coefficient = [&](long n) {
    const double dp = static_cast<double>(n) * hbar / radius - pbar;
    return prefactor * std::exp(-dp * dp * sigma0 * sigma0 / (2.0 * hbar * hbar));
  };

  const long peak = std::lround(pbar * radius / hbar);
  const double a_max = coefficient(peak);
  if (!(a_max > 0.0)) throw InvalidInput("ring packet has an empty mode range");
  const double cut = tail_epsilon * a_max;

  long lo = peak;
  while (coefficient(lo - 1) >= cut) --lo;
  long hi = peak;
  while (coefficient(hi + 1) >= cut) ++hi;

  RingPacket packet;
  packet.sigma0 = sigma0;
  packet.pbar = pbar;
  packet.n_min = lo;
  packet.coefficients.reserve(static_cast<std::size_t>(hi - lo + 1));
  for (long n = lo; n <= hi; ++n) packet.coefficients.push_back(coefficient(n));

  RingState ring(radius, u, {});
  packet.xbar = ring.canonical_position(xbar);
  return RingState(radius, u, {std::move(packet)});
}

Complex ring_amplitude(const RingState& ring, double x, double t) { return ring.amplitude(x, t); }

Complex ring_amplitude_dx(const RingState& ring, double x, double t) {
  return ring.amplitude_dx(x, t);
}

const UnitSystem& units_of(const State& state) {
  return std::visit([](const auto& s) -> const UnitSystem& { return s.units(); }, state);
}

State to_detector_frame(const State& state, double detector_position) {
  require_finite(detector_position, "detector position");
  return std::visit([&](const auto& s) -> State { return s.translated(detector_position); },
                    state);
}

}  // namespace toalab
