#include "toalab/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "toalab/error.hpp"

namespace toalab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAtomicMassUnit = 1.66053906660e-27;

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::Length: return "length";
    case Dimension::Time: return "time";
    case Dimension::Momentum: return "momentum";
    case Dimension::Mass: return "mass";
    case Dimension::Frequency: return "frequency";
  }
  return "?";
}

struct UnitEntry {
  std::string_view name;
  Dimension dim;
  double si_factor;  // 0 marks an oscillator unit
};

constexpr UnitEntry kSiUnits[] = {
    {"m", Dimension::Length, 1.0},
    {"mm", Dimension::Length, 1e-3},
    {"um", Dimension::Length, 1e-6},
    {"µm", Dimension::Length, 1e-6},
    {"nm", Dimension::Length, 1e-9},
    {"s", Dimension::Time, 1.0},
    {"ms", Dimension::Time, 1e-3},
    {"us", Dimension::Time, 1e-6},
    {"kg*m/s", Dimension::Momentum, 1.0},
    {"kg*mm/s", Dimension::Momentum, 1e-3},
    {"kg", Dimension::Mass, 1.0},
    {"u", Dimension::Mass, kAtomicMassUnit},
    {"rad/s", Dimension::Frequency, 1.0},
    {"1/s", Dimension::Frequency, 1.0},
};

// Oscillator units; in natural mode these are the only units.
constexpr UnitEntry kOscillatorUnits[] = {
    {"l0", Dimension::Length, 0.0},
    {"t0", Dimension::Time, 0.0},
    {"hbar/l0", Dimension::Momentum, 0.0},
    {"1/t0", Dimension::Frequency, 0.0},
};

double oscillator_factor(Dimension dim, const UnitSystem& u) {
  switch (dim) {
    case Dimension::Length: return u.length_unit();
    case Dimension::Time: return u.time_unit();
    case Dimension::Momentum: return u.hbar() / u.length_unit();
    case Dimension::Frequency: return 1.0 / u.time_unit();
    case Dimension::Mass: break;
  }
  throw UnitMismatch("no oscillator unit of mass");
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string base_unit(Dimension dim, const UnitSystem& u) {
  if (u.mode() == UnitMode::Natural) {
    switch (dim) {
      case Dimension::Length: return "l0";
      case Dimension::Time: return "t0";
      case Dimension::Momentum: return "hbar/l0";
      case Dimension::Frequency: return "1/t0";
      case Dimension::Mass: break;
    }
    throw UnitMismatch("natural units carry no mass unit");
  }
  switch (dim) {
    case Dimension::Length: return "m";
    case Dimension::Time: return "s";
    case Dimension::Momentum: return "kg*m/s";
    case Dimension::Mass: return "kg";
    case Dimension::Frequency: return "rad/s";
  }
  return "?";
}

std::string quantity(double v, Dimension dim, const UnitSystem& u) {
  return format_number(v) + " " + base_unit(dim, u);
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& key) {
  const YAML::Node child = node[key];
  if (!child) throw InvalidInput("scenario: missing key '" + key + "'");
  try {
    return child.as<T>();
  } catch (const YAML::Exception& e) {
    throw InvalidInput("scenario: bad value for '" + key + "': " + e.what());
  }
}

double read_quantity(const YAML::Node& node, const std::string& key, Dimension dim,
                     const UnitSystem& u) {
  const auto text = scalar<std::string>(node, key);
  try {
    return parse_quantity(text, dim, u);
  } catch (const UnitMismatch& e) {
    throw UnitMismatch("scenario key '" + key + "': " + e.what());
  } catch (const InvalidInput& e) {
    throw InvalidInput("scenario key '" + key + "': " + e.what());
  }
}

Complex read_weight(const YAML::Node& node) {
  const YAML::Node w = node["weight"];
  if (!w) return {1.0, 0.0};
  if (!w.IsSequence() || w.size() != 2) {
    throw InvalidInput("scenario: weight must be a [re, im] pair");
  }
  try {
    return {w[0].as<double>(), w[1].as<double>()};
  } catch (const YAML::Exception& e) {
    throw InvalidInput(std::string("scenario: bad weight: ") + e.what());
  }
}

UnitSystem read_units(const YAML::Node& node) {
  if (!node) throw InvalidInput("scenario: missing key 'units'");
  const std::string mode = lower(node.IsScalar() ? node.as<std::string>() : scalar<std::string>(node, "mode"));
  if (mode == "natural") return UnitSystem::natural();
  if (mode != "si") throw InvalidInput("scenario: units mode must be natural or SI");
  const UnitSystem probe = UnitSystem::si();
  const double mass = node.IsMap() && node["mass"] ? read_quantity(node, "mass", Dimension::Mass, probe)
                                                   : constants::kRb87Mass;
  std::optional<double> omega;
  if (node.IsMap() && node["omega"]) omega = read_quantity(node, "omega", Dimension::Frequency, probe);
  return UnitSystem::si(mass, omega);
}

State read_state(const YAML::Node& node, const UnitSystem& u, double& tail_epsilon) {
  if (!node) throw InvalidInput("scenario: missing key 'state'");
  const std::string kind = lower(scalar<std::string>(node, "kind"));
  const YAML::Node packets = node["packets"];
  if (!packets || !packets.IsSequence() || packets.size() == 0) {
    throw InvalidInput("scenario: state needs a non-empty 'packets' list");
  }
  if (kind == "line") {
    std::vector<GaussianPacket> list;
    for (const auto& p : packets) {
      list.push_back({read_quantity(p, "x0", Dimension::Length, u),
                      read_quantity(p, "p0", Dimension::Momentum, u),
                      read_quantity(p, "sigma0", Dimension::Length, u), read_weight(p)});
    }
    return Superposition(std::move(list), u);
  }
  if (kind == "ring") {
    const double radius = read_quantity(node, "radius", Dimension::Length, u);
    if (node["tail_epsilon"]) tail_epsilon = scalar<double>(node, "tail_epsilon");
    std::vector<std::pair<Complex, RingState>> terms;
    for (const auto& p : packets) {
      double pbar = 0.0;
      if (p["mode"] && p["pbar"]) throw InvalidInput("scenario: give either 'mode' or 'pbar'");
      if (p["mode"]) {
        pbar = static_cast<double>(scalar<long>(p, "mode")) * u.hbar() / radius;
      } else {
        pbar = read_quantity(p, "pbar", Dimension::Momentum, u);
      }
      terms.emplace_back(read_weight(p),
                         build_ring_state(read_quantity(p, "xbar", Dimension::Length, u), pbar,
                                          read_quantity(p, "sigma0", Dimension::Length, u), radius,
                                          u, tail_epsilon));
    }
    return RingState::superpose(terms);
  }
  throw InvalidInput("scenario: state kind must be line or ring");
}

Superposition line(std::vector<GaussianPacket> packets) {
  return Superposition::wave_train(std::move(packets), UnitSystem::natural());
}

Scenario natural_scenario(std::string name, Superposition state, TimeGrid grid) {
  return Scenario{std::move(name), State{std::move(state)}, UnitSystem::natural(), grid, 0.0,
                  NormalizationPolicy::FullWindow, 100.0, 1e-8};
}

Scenario ring_scenario(std::string name, long n0, long n1) {
  const UnitSystem u = UnitSystem::si();
  const double radius = 443e-6;
  const double sigma0 = 100e-6;
  const double xbar = -kPi * radius;
  const double tail = 1e-8;
  const Complex w{1.0 / std::sqrt(2.0), 0.0};
  auto packet = [&](long n) {
    return build_ring_state(xbar, static_cast<double>(n) * u.hbar() / radius, sigma0, radius, u,
                            tail);
  };
  RingState state = RingState::superpose({{w, packet(n0)}, {w, packet(n1)}});
  return Scenario{std::move(name), State{std::move(state)}, u, TimeGrid(0.0, 12.0, 2401), 0.0,
                  NormalizationPolicy::PlotInterval, std::nullopt, tail};
}

}  // namespace

std::string_view to_string(FigureId id) {
  switch (id) {
    case FigureId::Fig2: return "fig2";
    case FigureId::Fig3: return "fig3";
    case FigureId::Fig4: return "fig4";
    case FigureId::Fig5: return "fig5";
    case FigureId::Fig6: return "fig6";
    case FigureId::Fig7: return "fig7";
    case FigureId::Fig8a: return "fig8a";
    case FigureId::Fig8b: return "fig8b";
  }
  return "?";
}

FigureId parse_figure_id(std::string_view name) {
  const std::string key = lower(trim(name));
  for (FigureId id : all_figures()) {
    if (key == to_string(id)) return id;
  }
  throw InvalidInput("unknown figure id '" + std::string(name) +
                     "' (expected fig2, fig3, fig4, fig5, fig6, fig7, fig8a or fig8b)");
}

const std::vector<FigureId>& all_figures() {
  static const std::vector<FigureId> ids{FigureId::Fig2, FigureId::Fig3,  FigureId::Fig4,
                                         FigureId::Fig5, FigureId::Fig6,  FigureId::Fig7,
                                         FigureId::Fig8a, FigureId::Fig8b};
  return ids;
}

Interval Scenario::normalization_window() const {
  if (policy != NormalizationPolicy::FullWindow) return grid.span();
  if (!T && !units.has_oscillator_units()) {
    throw InvalidInput("scenario '" + name + "': full-window normalization needs T");
  }
  const double length = T ? *T : 100.0 * units.time_unit();
  return {-0.5 * length, 0.5 * length};
}

State Scenario::detector_frame_state() const {
  if (detector_position == 0.0) return state;
  return to_detector_frame(state, detector_position);
}

void validate(const Scenario& s) {
  require_same_units(s.units, units_of(s.state), "scenario '" + s.name + "'");
  require_finite(s.detector_position, "detector position");
  if (const auto* ring = std::get_if<RingState>(&s.state)) {
    const double half = 0.5 * ring->circumference();
    if (!(s.detector_position >= -half && s.detector_position < half)) {
      throw InvalidInput("scenario '" + s.name + "': detector must lie within [-d/2, d/2)");
    }
  }
  if (s.T && !(*s.T > 0.0)) throw InvalidInput("scenario '" + s.name + "': T must be positive");
  if (!(s.ring_tail_epsilon > 0.0 && s.ring_tail_epsilon < 1.0)) {
    throw InvalidInput("scenario '" + s.name + "': tail_epsilon must lie in (0, 1)");
  }
  if (s.policy == NormalizationPolicy::FullWindow &&
      !s.normalization_window().contains(s.grid.span())) {
    throw InvalidInput("scenario '" + s.name +
                       "': normalization window [-T/2, T/2] does not contain the grid");
  }
}

double overtaking_partner(double x0, double p0, double p1) {
  require_finite(x0, "x0");
  require_finite(p0, "p0");
  require_finite(p1, "p1");
  if (p0 == 0.0) throw InvalidInput("overtaking partner needs p0 != 0");
  if (p0 * p1 <= 0.0) {
    throw InvalidInput("overtaking partner needs p0 and p1 of the same sign; "
                       "build a counter-propagating scenario instead");
  }
  return x0 * p1 / p0;
}

const std::vector<double>& fig6_sweep() {
  static const std::vector<double> sweep{5.0, 3.0, 1.0, 0.2};
  return sweep;
}

Scenario fig6_member(double delta_p) {
  if (!(delta_p > 0.0)) throw InvalidInput("delta p must be positive");
  const double x0 = -30.0;
  const double p0 = 10.0;
  const double p1 = p0 + delta_p;
  return natural_scenario("fig6", line({{x0, p0, 1.0}, {overtaking_partner(x0, p0, p1), p1, 1.0}}),
                          TimeGrid(0.0, 8.0, 4001));
}

Scenario make_scenario_preset(FigureId id) {
  switch (id) {
    case FigureId::Fig2:
      return natural_scenario("fig2", line({{-10.0, 7.0, 1.0}}), TimeGrid(0.0, 5.0, 2001));
    case FigureId::Fig3:
      return natural_scenario("fig3", line({{-10.0, 7.0, 1.0}}), TimeGrid(0.0, 5.0, 2001));
    case FigureId::Fig4: {
      std::vector<GaussianPacket> packets;
      for (int k = 0; k < 4; ++k) packets.push_back({-10.0 - 8.0 * k, 7.0 + 3.0 * k, 1.0});
      return natural_scenario("fig4", line(std::move(packets)), TimeGrid(0.0, 8.0, 4001));
    }
    case FigureId::Fig5:
      return natural_scenario(
          "fig5", line({{-30.0, 10.0, 1.0}, {overtaking_partner(-30.0, 10.0, 15.0), 15.0, 1.0}}),
          TimeGrid(0.0, 8.0, 4001));
    case FigureId::Fig6: return fig6_member(fig6_sweep().front());
    case FigureId::Fig7:
      return natural_scenario("fig7", line({{-30.0, 10.0, 1.0}, {45.0, -15.0, 1.0}}),
                              TimeGrid(0.0, 8.0, 4001));
    case FigureId::Fig8a: return ring_scenario("fig8a", 450, 350);
    case FigureId::Fig8b: return ring_scenario("fig8b", 450, -400);
  }
  throw InvalidInput("unknown figure id");
}

double parse_quantity(std::string_view text, Dimension dim, const UnitSystem& u) {
  text = trim(text);
  const char* first = text.data();
  const char* last = text.data() + text.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{}) throw InvalidInput("cannot read a number from '" + std::string(text) + "'");
  const std::string_view unit = trim(std::string_view(ptr, static_cast<std::size_t>(last - ptr)));
  if (unit.empty()) {
    throw InvalidInput("quantity '" + std::string(text) + "' needs a unit annotation");
  }
  require_finite(value, "quantity");

  for (const auto& e : kOscillatorUnits) {
    if (e.name != unit) continue;
    if (e.dim != dim) {
      throw UnitMismatch("unit '" + std::string(unit) + "' is not a " +
                         std::string(dimension_name(dim)) + " unit");
    }
    if (!u.has_oscillator_units()) {
      throw UnitMismatch("unit '" + std::string(unit) + "' needs a trap frequency in SI mode");
    }
    return value * oscillator_factor(dim, u);
  }
  for (const auto& e : kSiUnits) {
    if (e.name != unit) continue;
    if (e.dim != dim) {
      throw UnitMismatch("unit '" + std::string(unit) + "' is not a " +
                         std::string(dimension_name(dim)) + " unit");
    }
    if (u.mode() != UnitMode::SI) {
      throw UnitMismatch("unit '" + std::string(unit) + "' cannot be used with natural units");
    }
    return value * e.si_factor;
  }
  throw InvalidInput("unknown unit '" + std::string(unit) + "'");
}

Scenario parse_scenario(std::string_view text) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw InvalidInput(std::string("scenario: malformed document: ") + e.what());
  }
  if (!root.IsMap()) throw InvalidInput("scenario: top level must be a mapping");

  const UnitSystem u = read_units(root["units"]);
  double tail = 1e-8;
  State state = read_state(root["state"], u, tail);

  const YAML::Node g = root["grid"];
  if (!g) throw InvalidInput("scenario: missing key 'grid'");
  const auto points = scalar<long>(g, "points");
  if (points < 2) throw InvalidInput("scenario: grid needs at least 2 points");
  const TimeGrid grid(read_quantity(g, "start", Dimension::Time, u),
                      read_quantity(g, "end", Dimension::Time, u),
                      static_cast<std::size_t>(points));

  Scenario s{root["name"] ? scalar<std::string>(root, "name") : "custom",
             std::move(state),
             u,
             grid,
             root["detector_position"]
                 ? read_quantity(root, "detector_position", Dimension::Length, u)
                 : 0.0,
             root["normalization"]
                 ? parse_normalization_policy(scalar<std::string>(root, "normalization"))
                 : NormalizationPolicy::FullWindow,
             root["T"] ? std::optional<double>(read_quantity(root, "T", Dimension::Time, u))
                       : std::nullopt,
             tail};
  validate(s);
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  const UnitSystem& u = s.units;
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "name" << YAML::Value << s.name;

  out << YAML::Key << "units" << YAML::Value << YAML::BeginMap;
  if (u.mode() == UnitMode::Natural) {
    out << YAML::Key << "mode" << YAML::Value << "natural";
  } else {
    out << YAML::Key << "mode" << YAML::Value << "SI";
    out << YAML::Key << "mass" << YAML::Value << quantity(u.mass(), Dimension::Mass, u);
    if (u.omega()) {
      out << YAML::Key << "omega" << YAML::Value << quantity(*u.omega(), Dimension::Frequency, u);
    }
  }
  out << YAML::EndMap;

  auto weight = [&](Complex w) {
    out << YAML::Key << "weight" << YAML::Value << YAML::Flow << YAML::BeginSeq
        << format_number(w.real()) << format_number(w.imag()) << YAML::EndSeq;
  };

  out << YAML::Key << "state" << YAML::Value << YAML::BeginMap;
  if (const auto* line_state = std::get_if<Superposition>(&s.state)) {
    out << YAML::Key << "kind" << YAML::Value << "line";
    out << YAML::Key << "packets" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : line_state->packets()) {
      out << YAML::BeginMap;
      out << YAML::Key << "x0" << YAML::Value << quantity(p.x0, Dimension::Length, u);
      out << YAML::Key << "p0" << YAML::Value << quantity(p.p0, Dimension::Momentum, u);
      out << YAML::Key << "sigma0" << YAML::Value << quantity(p.sigma0, Dimension::Length, u);
      weight(p.weight);
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  } else {
    const auto& ring = std::get<RingState>(s.state);
    out << YAML::Key << "kind" << YAML::Value << "ring";
    out << YAML::Key << "radius" << YAML::Value << quantity(ring.radius(), Dimension::Length, u);
    out << YAML::Key << "tail_epsilon" << YAML::Value << format_number(s.ring_tail_epsilon);
    out << YAML::Key << "packets" << YAML::Value << YAML::BeginSeq;
    for (const auto& p : ring.packets()) {
      out << YAML::BeginMap;
      out << YAML::Key << "xbar" << YAML::Value << quantity(p.xbar, Dimension::Length, u);
      out << YAML::Key << "pbar" << YAML::Value << quantity(p.pbar, Dimension::Momentum, u);
      out << YAML::Key << "sigma0" << YAML::Value << quantity(p.sigma0, Dimension::Length, u);
      weight(p.weight);
      out << YAML::EndMap;
    }
    out << YAML::EndSeq;
  }
  out << YAML::EndMap;

  out << YAML::Key << "grid" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "start" << YAML::Value << quantity(s.grid.start(), Dimension::Time, u);
  out << YAML::Key << "end" << YAML::Value << quantity(s.grid.end(), Dimension::Time, u);
  out << YAML::Key << "points" << YAML::Value << s.grid.size();
  out << YAML::EndMap;

  out << YAML::Key << "detector_position" << YAML::Value
      << quantity(s.detector_position, Dimension::Length, u);
  out << YAML::Key << "normalization" << YAML::Value << std::string(to_string(s.policy));
  if (s.T) out << YAML::Key << "T" << YAML::Value << quantity(*s.T, Dimension::Time, u);
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

void save_scenario(const Scenario& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write scenario file '" + path + "'");
  out << serialize_scenario(s);
}

}  // namespace toalab
