#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toalab/scenario.hpp"
#include "toalab/toa.hpp"

namespace toalab::cli {

enum class Command { Compute, Figure, Discriminate, Sample, Normscan };
enum class Format { CSV, JSON };

Format parse_format(std::string_view text);

struct RunConfig {
  Command command = Command::Compute;
  std::optional<std::string> preset;
  std::optional<std::string> scenario_path;
  std::vector<ToaMethod> methods;
  std::string output_path;  // empty writes to stdout
  Format format = Format::CSV;
  std::optional<std::string> grid;
  std::optional<std::string> normalization;
  std::optional<std::string> T;
  std::uint64_t seed = 1;

  std::string figure_id;
  std::optional<std::string> bin;
  long long samples = 1000;
  int seeds = 100;
  double alpha = 1e-3;
  std::optional<double> chi_bin_width;
  std::size_t chi_bins = 20;
  std::optional<std::string> sweep;
  bool log_sweep = true;
};

/// A column table plus a metadata block, written as CSV or JSON.
struct Table {
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<double>> data;  // one vector per column
};

void write_table(const Table& table, Format format, std::ostream& out);
/// Shortest round-trip decimal text, '.' separator regardless of locale.
std::string format_double(double v);

/// Parses "t0:t1:n".
TimeGrid parse_grid(std::string_view text, const UnitSystem& u);
/// A plain number in the scenario's base time unit, or "<number> <unit>".
double parse_time(std::string_view text, const UnitSystem& u);

/// Scenario selected by --preset or --scenario with the grid, policy and T overrides applied.
Scenario resolve_scenario(const RunConfig& config);

Table cmd_compute(const RunConfig& config);
Table cmd_figure(const RunConfig& config);
nlohmann::ordered_json cmd_discriminate(const RunConfig& config);
Table cmd_sample(const RunConfig& config);
Table cmd_normscan(const RunConfig& config);

/// N_C(T) on [-T/2, T/2], sampled at the scenario grid step where the grid overlaps the window.
double clock_normalization_for(const Scenario& scenario, double T);
double flux_normalization_for(const Scenario& scenario, double T);

/// Entry point of the command-line tool. Returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace toalab::cli
