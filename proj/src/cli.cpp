#include "toalab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "toalab/error.hpp"
#include "toalab/stats.hpp"

#ifndef TOALAB_VERSION
#define TOALAB_VERSION "0.0.0"
#endif

namespace toalab::cli {

using nlohmann::ordered_json;

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.emplace_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_number(std::string_view text, std::string_view what) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw InvalidInput("cannot read " + std::string(what) + " from '" + std::string(text) + "'");
  }
  return v;
}

Interval parse_interval(std::string_view text, const UnitSystem& u) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw InvalidInput("expected lo:hi, got '" + std::string(text) + "'");
  const Interval iv{parse_time(parts[0], u), parse_time(parts[1], u)};
  if (!(iv.lo < iv.hi)) throw InvalidInput("interval needs lo < hi");
  return iv;
}

std::vector<ToaMethod> default_methods(const Scenario& s) {
  if (std::holds_alternative<RingState>(s.state)) {
    return {ToaMethod::KijowskiMomentum, ToaMethod::QuantumClock};
  }
  return {ToaMethod::KijowskiMomentum, ToaMethod::Flux, ToaMethod::QuantumClock};
}

ToaOptions options_for(const Scenario& s) {
  ToaOptions opts;
  opts.policy = s.policy;
  opts.T = s.T;
  return opts;
}

std::string base_time_unit(const UnitSystem& u) {
  return u.mode() == UnitMode::Natural ? "t0" : "s";
}

ordered_json scenario_metadata(const Scenario& s, const RunConfig& config) {
  ordered_json m;
  m["code_version"] = TOALAB_VERSION;
  if (config.preset) m["preset"] = *config.preset;
  if (config.scenario_path) m["scenario_file"] = *config.scenario_path;
  m["name"] = s.name;
  m["units"] = s.units.describe();
  m["time_unit"] = base_time_unit(s.units);
  m["grid"] = {{"start", s.grid.start()}, {"end", s.grid.end()}, {"points", s.grid.size()}};
  m["normalization"] = std::string(to_string(s.policy));
  if (s.policy == NormalizationPolicy::FullWindow) {
    const Interval w = s.normalization_window();
    m["regularization_T"] = w.width();
  }
  m["detector_position"] = s.detector_position;
  m["scenario"] = serialize_scenario(s);
  return m;
}

// Runs one method; failures are re-raised with the method and scenario named.
ToaCurve compute_named(ToaMethod method, const Scenario& s) {
  try {
    return compute_curve(method, s.detector_frame_state(), s.grid, options_for(s));
  } catch (const Error& e) {
    throw Error(e.code(), std::string(e.what()) + " [method " + std::string(to_string(method)) +
                              ", scenario " + s.name + "]");
  }
}

void add_curve(Table& table, const ToaCurve& curve, const std::string& column) {
  table.columns.push_back(column);
  table.data.push_back(curve.values);
  ordered_json info;
  info["normalization_constant"] = curve.normalization.constant;
  info["normalization_window"] = {curve.normalization.window.lo, curve.normalization.window.hi};
  info["negativity_flag"] = curve.negativity_flag;
  table.metadata["curves"][column] = info;
}

void add_time_column(Table& table, const TimeGrid& grid) {
  table.columns.push_back("t");
  table.data.push_back(grid.points());
}

Table curves_table(const Scenario& s, const RunConfig& config,
                   const std::vector<ToaMethod>& methods) {
  Table table;
  table.metadata = scenario_metadata(s, config);
  ordered_json names = ordered_json::array();
  for (ToaMethod m : methods) names.push_back(std::string(to_string(m)));
  table.metadata["methods"] = names;
  add_time_column(table, s.grid);
  for (ToaMethod m : methods) add_curve(table, compute_named(m, s), std::string(to_string(m)));
  return table;
}

// The scenario grid clipped to the window [-T/2, T/2], keeping its step.
TimeGrid window_grid(const Scenario& s, double T) {
  const double lo = std::max(s.grid.start(), -0.5 * T);
  const double hi = std::min(s.grid.end(), 0.5 * T);
  if (!(hi > lo)) return TimeGrid(-0.5 * T, 0.5 * T, 2001);
  const auto cells = static_cast<std::size_t>(std::ceil((hi - lo) / s.grid.step()));
  return TimeGrid(lo, hi, std::max<std::size_t>(cells, 2) + 1);
}

std::vector<double> sweep_values(const RunConfig& config, const UnitSystem& u,
                                 std::string_view fallback) {
  const std::string text = config.sweep ? *config.sweep : std::string(fallback);
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InvalidInput("sweep must be lo:hi:n, got '" + text + "'");
  const double lo = parse_time(parts[0], u);
  const double hi = parse_time(parts[1], u);
  const double n = parse_number(parts[2], "sweep count");
  if (!(lo > 0.0 && hi > lo) || n < 2 || n != std::floor(n)) {
    throw InvalidInput("sweep needs 0 < lo < hi and an integer count >= 2");
  }
  const auto count = static_cast<std::size_t>(n);
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    values[i] = config.log_sweep ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo);
  }
  values.back() = hi;
  return values;
}

ordered_json report_json(const DiscriminationReport& r) {
  ordered_json j;
  j["bin"] = {r.bin.lo, r.bin.hi};
  j["f_k"] = r.f_k;
  j["D"] = r.D;
  j["f_bound"] = r.f_bound;
  j["N_s_min"] = r.N_s_min;
  j["epsilon_k"] = r.epsilon_k;
  return j;
}

void emit(const Table& table, const RunConfig& config, std::ostream& out) {
  if (config.output_path.empty()) {
    write_table(table, config.format, out);
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary);
  if (!file) throw InvalidInput("cannot write output file '" + config.output_path + "'");
  write_table(table, config.format, file);
}

void emit_report(const ordered_json& report, const RunConfig& config, std::ostream& out) {
  std::ostringstream text;
  if (config.format == Format::JSON) {
    text << report.dump(2) << '\n';
  } else {
    for (auto it = report["metadata"].begin(); it != report["metadata"].end(); ++it) {
      const std::string value = it.value().is_string() ? it.value().get<std::string>()
                                                       : it.value().dump();
      for (const auto& line : split(value, '\n')) {
        if (line.empty()) continue;
        text << "# " << it.key() << ": " << line << '\n';
      }
    }
    text << "quantity,value\n";
    const ordered_json& r = report["report"];
    text << "bin_lo," << format_double(r["bin"][0].get<double>()) << '\n';
    text << "bin_hi," << format_double(r["bin"][1].get<double>()) << '\n';
    for (std::size_t k = 0; k < r["f_k"].size(); ++k) {
      text << "f_" << report["metadata"]["methods"][k].get<std::string>() << ','
           << format_double(r["f_k"][k].get<double>()) << '\n';
    }
    text << "D," << format_double(r["D"].get<double>()) << '\n';
    text << "f_bound," << format_double(r["f_bound"].get<double>()) << '\n';
    text << "N_s_min," << r["N_s_min"].get<long long>() << '\n';
    text << "epsilon_k," << format_double(r["epsilon_k"].get<double>()) << '\n';
    if (report.contains("power")) {
      const ordered_json& p = report["power"];
      text << "power_seeds," << p["seeds"].get<int>() << '\n';
      text << "power_samples," << p["n_samples"].get<long long>() << '\n';
      text << "power_alpha," << format_double(p["alpha"].get<double>()) << '\n';
      text << "power_rejection_rate," << format_double(p["rejection_rate"].get<double>()) << '\n';
    }
  }
  if (config.output_path.empty()) {
    out << text.str();
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary);
  if (!file) throw InvalidInput("cannot write output file '" + config.output_path + "'");
  file << text.str();
}

}  // namespace

Format parse_format(std::string_view text) {
  if (text == "csv" || text == "CSV") return Format::CSV;
  if (text == "json" || text == "JSON") return Format::JSON;
  throw InvalidInput("format must be csv or json");
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

void write_table(const Table& table, Format format, std::ostream& out) {
  if (table.columns.size() != table.data.size()) {
    throw InvalidInput("table has mismatched columns and data");
  }
  const std::size_t rows = table.data.empty() ? 0 : table.data.front().size();
  for (const auto& col : table.data) {
    if (col.size() != rows) throw InvalidInput("table columns differ in length");
  }
  if (format == Format::JSON) {
    ordered_json j;
    j["metadata"] = table.metadata;
    j["columns"] = table.columns;
    ordered_json data = ordered_json::object();
    for (std::size_t c = 0; c < table.columns.size(); ++c) data[table.columns[c]] = table.data[c];
    j["data"] = data;
    out << j.dump(1) << '\n';
    return;
  }
  for (auto it = table.metadata.begin(); it != table.metadata.end(); ++it) {
    const std::string value = it.value().is_string() ? it.value().get<std::string>()
                                                     : it.value().dump();
    const auto lines = split(value, '\n');
    if (lines.size() == 1 || (lines.size() == 2 && lines[1].empty())) {
      out << "# " << it.key() << ": " << lines[0] << '\n';
      continue;
    }
    out << "# " << it.key() << ":\n";
    for (const auto& line : lines) {
      if (!line.empty()) out << "#   " << line << '\n';
    }
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      out << (c ? "," : "") << format_double(table.data[c][r]);
    }
    out << '\n';
  }
}

double parse_time(std::string_view text, const UnitSystem& u) {
  const bool has_unit = std::any_of(text.begin(), text.end(), [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) && c != 'e' && c != 'E';
  });
  if (has_unit) return parse_quantity(text, Dimension::Time, u);
  return parse_number(text, "time");
}

TimeGrid parse_grid(std::string_view text, const UnitSystem& u) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw InvalidInput("grid must be t0:t1:n, got '" + std::string(text) + "'");
  const double t0 = parse_time(parts[0], u);
  const double t1 = parse_time(parts[1], u);
  const double n = parse_number(parts[2], "grid point count");
  if (n < 2 || n != std::floor(n) || n > 1e8) {
    throw InvalidInput("grid point count must be an integer >= 2");
  }
  return TimeGrid(t0, t1, static_cast<std::size_t>(n));
}

Scenario resolve_scenario(const RunConfig& config) {
  if (config.preset.has_value() == config.scenario_path.has_value()) {
    throw InvalidInput("give exactly one of --preset or --scenario");
  }
  Scenario s = config.preset ? make_scenario_preset(parse_figure_id(*config.preset))
                             : load_scenario(*config.scenario_path);
  if (config.grid) s.grid = parse_grid(*config.grid, s.units);
  if (config.normalization) s.policy = parse_normalization_policy(*config.normalization);
  if (config.T) s.T = parse_time(*config.T, s.units);
  validate(s);
  return s;
}

double clock_normalization_for(const Scenario& s, double T) {
  return clock_normalization(s.detector_frame_state(), T, window_grid(s, T));
}

double flux_normalization_for(const Scenario& s, double T) {
  return flux_normalization(s.detector_frame_state(), T, window_grid(s, T));
}

Table cmd_compute(const RunConfig& config) {
  const Scenario s = resolve_scenario(config);
  const auto methods = config.methods.empty() ? default_methods(s) : config.methods;
  return curves_table(s, config, methods);
}

Table cmd_figure(const RunConfig& config) {
  const FigureId id = parse_figure_id(config.figure_id);
  RunConfig cfg = config;
  cfg.preset = std::string(to_string(id));
  cfg.scenario_path.reset();
  Scenario s = resolve_scenario(cfg);

  switch (id) {
    case FigureId::Fig2: {
      Table table;
      table.metadata = scenario_metadata(s, cfg);
      table.metadata["quantity"] = "N_C(T), clock normalization over [-T/2, T/2]";
      const TimeGrid sweep = config.sweep ? parse_grid(*config.sweep, s.units)
                                          : TimeGrid(0.1, 100.0, 1000);
      table.metadata["sweep"] = {{"start", sweep.start()}, {"end", sweep.end()}, {"points", sweep.size()}};
      std::vector<double> nc(sweep.size());
      for (std::size_t i = 0; i < sweep.size(); ++i) nc[i] = clock_normalization_for(s, sweep.at(i));
      table.columns = {"T", "N_C"};
      table.data = {sweep.points(), nc};
      return table;
    }
    case FigureId::Fig3:
      return curves_table(s, cfg, {ToaMethod::KijowskiMomentum, ToaMethod::Flux,
                                   ToaMethod::QuantumClock, ToaMethod::Semiclassical});
    case FigureId::Fig4:
    case FigureId::Fig5: {
      Table table = curves_table(s, cfg, {ToaMethod::KijowskiMomentum, ToaMethod::Flux,
                                          ToaMethod::QuantumClock});
      ToaCurve flux{s.grid, table.data[2], ToaMethod::Flux, {}, false};
      ordered_json intervals = ordered_json::array();
      for (const auto& b : detect_backflow(flux)) {
        intervals.push_back({{"start", b.times.lo}, {"end", b.times.hi}, {"min", b.min_value}});
      }
      table.metadata["flux_backflow_intervals"] = intervals;
      return table;
    }
    case FigureId::Fig6: {
      Table table;
      table.metadata = scenario_metadata(s, cfg);
      table.metadata["sweep_delta_p"] = fig6_sweep();
      add_time_column(table, s.grid);
      ordered_json vis;
      for (double dp : fig6_sweep()) {
        Scenario member = fig6_member(dp);
        member.grid = s.grid;
        member.policy = s.policy;
        member.T = s.T;
        const ToaCurve curve = compute_named(ToaMethod::QuantumClock, member);
        const std::string column = "clock_dp" + format_double(dp);
        add_curve(table, curve, column);
        vis[column] = fringe_visibility(curve, s.grid.span());
      }
      table.metadata["visibility"] = vis;
      return table;
    }
    case FigureId::Fig7: {
      Table table = curves_table(s, cfg, {ToaMethod::KijowskiMomentum, ToaMethod::QuantumClock});
      try {
        compute_named(ToaMethod::Flux, s);
      } catch (const MethodInapplicable& e) {
        table.metadata["flux"] = e.what();
      } catch (const Error& e) {
        table.metadata["flux"] = e.what();
      }
      return table;
    }
    case FigureId::Fig8a:
    case FigureId::Fig8b: {
      Table table = curves_table(s, cfg, {ToaMethod::KijowskiMomentum, ToaMethod::QuantumClock});
      table.metadata["recommended_bin_width_s"] = kRingTemporalResolution;
      table.metadata["discrimination_bin_s"] = {kRingDiscriminationBin.lo, kRingDiscriminationBin.hi};
      const double hbar = s.units.hbar();
      ordered_json modes = ordered_json::array();
      for (const auto& p : std::get<RingState>(s.state).packets()) {
        modes.push_back({{"pbar_kg_mm_per_s", p.pbar * 1e3},
                         {"mode", std::lround(p.pbar * std::get<RingState>(s.state).radius() / hbar)}});
      }
      table.metadata["ring_packets"] = modes;
      return table;
    }
  }
  throw InvalidInput("unknown figure id");
}

ordered_json cmd_discriminate(const RunConfig& config) {
  const Scenario s = resolve_scenario(config);
  const auto methods = config.methods.empty()
                           ? std::vector<ToaMethod>{ToaMethod::QuantumClock, ToaMethod::KijowskiMomentum}
                           : config.methods;
  if (methods.size() != 2) throw InvalidInput("discriminate needs exactly two methods");
  const bool ring = std::holds_alternative<RingState>(s.state);

  Interval bin;
  if (config.bin) {
    bin = parse_interval(*config.bin, s.units);
  } else if (ring) {
    bin = kRingDiscriminationBin;
  } else {
    throw InvalidInput("discriminate needs --bin lo:hi for this scenario");
  }

  const ToaCurve c1 = compute_named(methods[0], s);
  const ToaCurve c2 = compute_named(methods[1], s);
  const DiscriminationReport report = discrimination_report(c1, c2, bin);

  ordered_json out;
  out["metadata"] = scenario_metadata(s, config);
  out["metadata"]["methods"] = {std::string(to_string(methods[0])), std::string(to_string(methods[1]))};
  out["report"] = report_json(report);

  if (config.seeds > 0) {
    const double width = config.chi_bin_width ? *config.chi_bin_width
                         : ring              ? kRingTemporalResolution
                                             : 0.0;
    const BinSpec bins = width > 0.0 ? BinSpec::with_width(s.grid.span(), width)
                                     : BinSpec::with_count(s.grid.span(), config.chi_bins);
    const PowerSummary power =
        chi_square_power(c1, c2, bins, config.samples, config.seeds, config.seed, config.alpha);
    out["power"] = {{"source", std::string(to_string(methods[0]))},
                    {"candidate", std::string(to_string(methods[1]))},
                    {"seeds", power.seeds},
                    {"first_seed", config.seed},
                    {"n_samples", power.n_samples},
                    {"alpha", power.alpha},
                    {"chi_square_bins", bins.bins()},
                    {"rejections", power.rejections},
                    {"rejection_rate", power.rejection_rate()}};
  }
  return out;
}

Table cmd_sample(const RunConfig& config) {
  const Scenario s = resolve_scenario(config);
  if (config.methods.size() != 1) throw InvalidInput("sample needs exactly one method");
  const ToaCurve curve = compute_named(config.methods.front(), s);
  const ClickSample sample = sample_clicks(curve, config.samples, config.seed);
  Table table;
  table.metadata = scenario_metadata(s, config);
  table.metadata["method"] = std::string(to_string(config.methods.front()));
  table.metadata["seed"] = config.seed;
  table.metadata["clicks"] = config.samples;
  table.metadata["generator"] = "splitmix64 counter-based";
  table.columns = {"t"};
  table.data = {sample.times};
  return table;
}

Table cmd_normscan(const RunConfig& config) {
  const Scenario s = resolve_scenario(config);
  const std::string fallback = s.units.has_oscillator_units()
                                   ? "1:1e5:21"
                                   : "";
  if (fallback.empty() && !config.sweep) throw InvalidInput("normscan needs --sweep lo:hi:n here");
  const std::vector<double> Ts = sweep_values(config, s.units, fallback);

  Table table;
  table.metadata = scenario_metadata(s, config);
  table.metadata["sweep_spacing"] = config.log_sweep ? "log" : "linear";
  std::vector<double> nc(Ts.size());
  for (std::size_t i = 0; i < Ts.size(); ++i) nc[i] = clock_normalization_for(s, Ts[i]);
  table.columns = {"T", "N_C"};
  table.data = {Ts, nc};
  try {
    std::vector<double> nf(Ts.size());
    for (std::size_t i = 0; i < Ts.size(); ++i) nf[i] = flux_normalization_for(s, Ts[i]);
    table.columns.push_back("N_F");
    table.data.push_back(nf);
  } catch (const FluxInapplicable& e) {
    table.metadata["flux"] = e.what();
  }
  return table;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum time-of-arrival distributions for Gaussian wave packets"};
  app.set_version_flag("--version", TOALAB_VERSION);
  app.require_subcommand(1);

  RunConfig config;
  std::string methods_text;
  std::string format_text = "csv";

  auto common = [&](CLI::App* sub, bool scenario_options) {
    if (scenario_options) {
      sub->add_option("--preset", config.preset, "Preset id: fig2 ... fig8b");
      sub->add_option("--scenario", config.scenario_path, "Scenario file (YAML)");
    }
    sub->add_option("--grid", config.grid, "Time grid t0:t1:n");
    sub->add_option("--normalization", config.normalization, "full, plot or none");
    sub->add_option("--T", config.T, "Regularization window length");
    sub->add_option("--out", config.output_path, "Output file (default: stdout)");
    sub->add_option("--format", format_text, "csv or json");
    sub->add_option("--seed", config.seed, "Random seed");
  };

  CLI::App* compute = app.add_subcommand("compute", "Sample distributions on a time grid");
  common(compute, true);
  compute->add_option("--methods", methods_text,
                      "Comma list of kijowski, leavens, flux, semiclassical, clock");

  CLI::App* figure = app.add_subcommand("figure", "Emit the dataset behind a figure");
  figure->add_option("figure_id", config.figure_id, "fig2 ... fig8b")->required();
  common(figure, false);
  figure->add_option("--sweep", config.sweep, "fig2: T sweep lo:hi:n");

  CLI::App* discriminate = app.add_subcommand("discriminate", "Minimum sample size and chi-square power");
  common(discriminate, true);
  discriminate->add_option("--methods", methods_text, "Two methods, e.g. clock,kijowski");
  discriminate->add_option("--bin", config.bin, "Bin lo:hi");
  discriminate->add_option("--samples", config.samples, "Clicks per simulated experiment");
  discriminate->add_option("--seeds", config.seeds, "Number of simulated experiments (0 skips)");
  discriminate->add_option("--alpha", config.alpha, "Rejection threshold on the p-value");
  discriminate->add_option("--chi-bin-width", config.chi_bin_width, "Histogram bin width");
  discriminate->add_option("--chi-bins", config.chi_bins, "Histogram bin count when no width is set");

  CLI::App* sample = app.add_subcommand("sample", "Draw synthetic detector clicks");
  common(sample, true);
  sample->add_option("--methods", methods_text, "One method");
  sample->add_option("-n,--samples", config.samples, "Number of clicks");

  CLI::App* normscan = app.add_subcommand("normscan", "N_C(T) and N_F(T) over a range of T");
  common(normscan, true);
  normscan->add_option("--sweep", config.sweep, "T range lo:hi:n");
  bool linear = false;
  normscan->add_flag("--linear", linear, "Linear instead of logarithmic spacing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << TOALAB_VERSION << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorCode::InvalidInput);
  }
  config.log_sweep = !linear;

  try {
    config.format = parse_format(format_text);
    if (!methods_text.empty()) {
      for (const auto& name : split(methods_text, ',')) config.methods.push_back(parse_toa_method(name));
    }
    if (compute->parsed()) {
      config.command = Command::Compute;
      emit(cmd_compute(config), config, out);
    } else if (figure->parsed()) {
      config.command = Command::Figure;
      emit(cmd_figure(config), config, out);
    } else if (discriminate->parsed()) {
      config.command = Command::Discriminate;
      emit_report(cmd_discriminate(config), config, out);
    } else if (sample->parsed()) {
      config.command = Command::Sample;
      emit(cmd_sample(config), config, out);
    } else if (normscan->parsed()) {
      config.command = Command::Normscan;
      emit(cmd_normscan(config), config, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return static_cast<int>(ErrorCode::InvalidInput);
  }
  return 0;
}

}  // namespace toalab::cli
