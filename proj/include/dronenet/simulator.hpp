// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "dronenet/density.hpp"
#include "dronenet/mobility.hpp"
#include "dronenet/ppp.hpp"
#include "dronenet/rate.hpp"
#include "dronenet/rng.hpp"

namespace dronenet {

enum class Execution { Serial, Parallel };

struct SimConfig {
  double lambda0 = 1e-6;               // per m^2
  double observation_radius = 20000.0; // interferers are summed inside b(o', observation_radius)
  double window_radius = 0.0;          // sampling window; 0 selects observation_radius + v * horizon
  std::vector<double> times{0.0};      // seconds
  MobilityModelSpec model = MobilityModelSpec::sl(12.5);
  ServiceModel service = ServiceModel::UDM;
  ChannelParams channel;
  long realizations = 1000;
  std::uint64_t seed = 1;
  bool tail_correction = true;         // add the mean interference from beyond the observation disc

  double horizon() const;
  double effective_window() const;
  void validate() const;
};

struct Drone {
  Point start;
  Trajectory path;
};

struct NetworkRealization {
  std::vector<Drone> interferers;
  Point serving_start;
  double u0 = 0.0;
  std::vector<Trajectory> serving_path;  // UIM only: common mobility for the initial serving drone
  std::vector<std::vector<Point>> positions;  // [time index][interferer]
  bool empty = false;
};

NetworkRealization realize_network(const SimConfig& cfg, Rng& rng);

struct TimeStepSummary {
  double t = 0.0;
  long used = 0;
  long excluded = 0;           // realizations without interferers in the observation disc
  double rate = 0.0;           // mean log(1 + SIR)
  double rate_std_error = 0.0;
  long handover_violations = 0;
  std::vector<double> sir;     // per used realization, realization order
};

struct EmpiricalSummary {
  std::vector<TimeStepSummary> steps;
  std::vector<double> serving_distance0;  // u0 per realization
  double tail_mean = 0.0;                 // mean interference added per sample
  double window_radius = 0.0;
};

EmpiricalSummary run_simulation(const SimConfig& cfg, Execution exec = Execution::Parallel);

// Net displacement L(t) of `count` independent drones.
std::vector<double> sample_net_displacement(const MobilityModelSpec& model, double t, long count, const Rng& rng,
                                            Execution exec = Execution::Parallel);

// Endpoint after n flights of a random-walk drone: net displacement Z_n and bearing Psi_n.
struct WalkEndpoints {
  std::vector<double> z;
  std::vector<double> psi;
};
WalkEndpoints sample_walk_endpoints(const ScalarDistribution& flight, int n, long count, const Rng& rng,
                                    Execution exec = Execution::Parallel);

// Displaced-PPP counts in equal-width annuli of b(o', radius), one row per realization.
std::vector<std::vector<long>> displaced_annulus_counts(const MobilityModelSpec& model, double lambda0,
                                                        double radius, int annuli, double t, long realizations,
                                                        const Rng& rng, Execution exec = Execution::Parallel);

// Number of worker threads from DRONENET_THREADS (0 when unset).
int configured_threads();
void apply_thread_override();

}  // namespace dronenet
