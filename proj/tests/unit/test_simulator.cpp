// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "dronenet/error.hpp"
#include "dronenet/simulator.hpp"

using namespace dronenet;

namespace {

SimConfig small_config() {
  SimConfig cfg;
  cfg.lambda0 = 1e-5;
  cfg.observation_radius = 3000.0;
  cfg.times = {0.0, 20.0, 40.0};
  cfg.realizations = 400;
  cfg.seed = 9;
  return cfg;
}

}  // namespace

TEST_CASE("serial and parallel simulations agree bit for bit") {
  for (const auto& model : {MobilityModelSpec::sl(12.5), MobilityModelSpec::rw(12.5, ScalarDistribution::rayleigh_mean(500.0))}) {
    SimConfig cfg = small_config();
    cfg.model = model;
    const auto a = run_simulation(cfg, Execution::Serial);
    const auto b = run_simulation(cfg, Execution::Parallel);
    REQUIRE(a.steps.size() == b.steps.size());
    for (std::size_t k = 0; k < a.steps.size(); ++k) {
      CHECK(a.steps[k].sir == b.steps[k].sir);
      CHECK(a.steps[k].rate == b.steps[k].rate);
      CHECK(a.steps[k].used == b.steps[k].used);
    }
    CHECK(a.serving_distance0 == b.serving_distance0);
  }
}

TEST_CASE("sampled serving distances and exclusions") {
  SimConfig cfg = small_config();
  cfg.lambda0 = 2e-7;
  cfg.observation_radius = 1500.0;
  cfg.realizations = 2000;
  const auto r = run_simulation(cfg);
  for (const auto& s : r.steps) {
    CHECK(s.used + s.excluded == cfg.realizations);
    CHECK(s.excluded > 0);
    CHECK(s.handover_violations == 0);
    CHECK(static_cast<long>(s.sir.size()) == s.used);
  }
}

TEST_CASE("rates grow as the serving drone approaches") {
  SimConfig cfg = small_config();
  cfg.realizations = 2000;
  const auto r = run_simulation(cfg);
  CHECK(r.steps[2].rate > r.steps[0].rate);
  for (const auto& s : r.steps) CHECK(s.handover_violations == 0);
}

TEST_CASE("network realization") {
  SimConfig cfg = small_config();
  Rng rng(3);
  const auto net = realize_network(cfg, rng);
  REQUIRE_FALSE(net.empty);
  CHECK(net.positions.size() == cfg.times.size());
  for (const auto& d : net.interferers) CHECK(norm(d.start) >= net.u0);
  CHECK(norm(net.serving_start) == doctest::Approx(net.u0));
}

TEST_CASE("configuration errors") {
  SimConfig cfg = small_config();
  cfg.times.clear();
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  cfg.window_radius = 100.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg = small_config();
  CHECK(cfg.effective_window() == doctest::Approx(3000.0 + 12.5 * 40.0));
}
