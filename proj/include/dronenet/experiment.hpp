// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "dronenet/density.hpp"
#include "dronenet/mobility.hpp"
#include "dronenet/rate.hpp"

namespace dronenet {

enum class ExperimentKind { DisplacementDist, DensityProfile, Theorem1Check, AverageRate, SessionRate, ValidateAll };

std::string to_string(ExperimentKind kind);
ExperimentKind experiment_kind_from_string(const std::string& name);
const std::vector<ExperimentKind>& all_experiment_kinds();

enum class FlightLaw { Rayleigh, Exponential, Uniform, Deterministic };

// Mobility parameters shared by every model of an experiment.
struct MobilityParams {
  double v = 12.5;             // m/s
  FlightLaw flight = FlightLaw::Rayleigh;
  double flight_mean = 500.0;  // meters
  double hover_mean = 5.0;     // seconds, exponential hovers
  bool operator==(const MobilityParams&) const = default;
};

struct SimulationParams {
  double lambda0_mc = 1e-3;            // per m^2, density oracle
  long density_realizations = 20000;
  int density_bins = 50;
  long trajectories = 100000;          // displacement Monte Carlo
  int displacement_bins = 50;
  long rate_realizations = 0;          // 0 skips the Monte Carlo rate column
  double observation_radius = 20000.0; // meters
  bool operator==(const SimulationParams&) const = default;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::ValidateAll;
  std::uint64_t seed = 0;
  std::vector<MobilityKind> models{MobilityKind::SL, MobilityKind::RS, MobilityKind::RW, MobilityKind::RWP};
  ServiceModel service = ServiceModel::UDM;
  MobilityParams mobility;
  double lambda0 = 1e-6;                   // per m^2
  std::vector<double> u0{500.0};           // meters
  std::vector<double> times{0.0, 20.0, 40.0, 80.0};  // seconds
  std::vector<double> horizons{120.0};     // seconds, session-rate T grid
  std::vector<ChannelParams> channels{ChannelParams{}};
  SimulationParams simulation;
  std::string scale = "full";              // validate-all: "quick" or "full"

  void validate() const;
  MobilityModelSpec model_spec(MobilityKind kind) const;
};

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b);

// Strict JSON parsing; unknown keys, missing required keys and type mismatches raise ConfigError
// naming the key path. `kind` and `seed` may come from the caller instead of the document.
ExperimentConfig parse_config(const std::string& text, std::optional<ExperimentKind> kind = std::nullopt,
                              std::optional<std::uint64_t> seed = std::nullopt);
std::string emit_config(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

using Cell = std::variant<double, long long, std::string>;

struct Column {
  std::string name;
  std::string unit;
};

struct ResultTable {
  std::string name;
  std::vector<Column> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void add_row(std::vector<Cell> row);
  std::string to_csv() const;
  std::string metadata_json() const;
};

std::string format_number(double x);
std::string git_describe();

// Writes `<dir>/<name>.csv` and `<dir>/<name>.json` per table.
void write_tables(const std::vector<ResultTable>& tables, const std::filesystem::path& dir);

struct ExperimentOutput {
  std::vector<ResultTable> tables;
  bool all_passed = true;  // validate-all only
};

ExperimentOutput run_experiment(const ExperimentConfig& cfg);

// CSV column documentation per experiment kind, for --help.
std::string describe_columns(ExperimentKind kind);

}  // namespace dronenet
