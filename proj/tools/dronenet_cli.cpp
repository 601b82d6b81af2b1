// SPDX-License-Identifier: Apache-2.0
#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dronenet/error.hpp"
#include "dronenet/experiment.hpp"
#include "dronenet/simulator.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kNumerical = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw dronenet::ConfigError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run(dronenet::ExperimentKind kind, const std::string& config, std::uint64_t seed, const std::string& out) {
  const dronenet::ExperimentConfig cfg = dronenet::parse_config(read_file(config), kind, seed);
  const dronenet::ExperimentOutput result = dronenet::run_experiment(cfg);
  dronenet::write_tables(result.tables, out);
  for (const auto& t : result.tables) std::cerr << "wrote " << out << "/" << t.name << ".csv (" << t.rows.size() << " rows)\n";
  if (!result.all_passed) {
    std::cerr << "one or more checks failed\n";
    return kValidation;
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drone cellular network analysis: displacement laws, interferer densities and SIR rates.\n"
               "Usage: dronenet <experiment-kind> --config <path> --seed <u64> --out <dir>\n"
               "Exit codes: 0 success, 1 validation failure, 2 numerical failure.\n"
               "DRONENET_THREADS overrides the worker thread count."};
  app.require_subcommand(1);

  std::string config;
  std::uint64_t seed = 0;
  std::string out;
  for (dronenet::ExperimentKind kind : dronenet::all_experiment_kinds()) {
    CLI::App* sub = app.add_subcommand(dronenet::to_string(kind), "run the " + dronenet::to_string(kind) + " experiment");
    sub->add_option("--config", config, "JSON experiment config")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed, "64-bit seed (overrides the document)")->required();
    sub->add_option("--out", out, "output directory")->required();
    sub->footer("CSV columns:\n" + dronenet::describe_columns(kind));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  try {
    dronenet::apply_thread_override();
    for (dronenet::ExperimentKind kind : dronenet::all_experiment_kinds()) {
      if (app.got_subcommand(dronenet::to_string(kind))) return run(kind, config, seed, out);
    }
  } catch (const dronenet::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << " (residual " << e.residual() << ")\n";
    return kNumerical;
  } catch (const dronenet::ConsistencyError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return kValidation;
}
