// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <string>

#include "dronenet/error.hpp"
#include "dronenet/experiment.hpp"

using namespace dronenet;

TEST_CASE("minimal document uses the defaults") {
  const auto cfg = parse_config(R"({"kind": "average-rate", "seed": 3})");
  CHECK(cfg.kind == ExperimentKind::AverageRate);
  CHECK(cfg.seed == 3);
  CHECK(cfg.lambda0 == 1e-6);
  REQUIRE(cfg.channels.size() == 1);
  CHECK(cfg.channels[0].alpha == 3.0);
  CHECK(cfg.channels[0].h == 100.0);
  CHECK(cfg.mobility.v == 12.5);
  CHECK(cfg.models.size() == 4);
}

TEST_CASE("caller supplied kind and seed") {
  const auto cfg = parse_config(R"({"seed": 3})", ExperimentKind::SessionRate, 11);
  CHECK(cfg.kind == ExperimentKind::SessionRate);
  CHECK(cfg.seed == 11);
  CHECK_THROWS_AS(parse_config(R"({"kind": "average-rate"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"kind": "average-rate", "seed": 1})", ExperimentKind::SessionRate), ConfigError);
}

TEST_CASE("invalid documents are rejected with the offending key") {
  auto message = [](const std::string& doc) {
    try {
      parse_config(doc);
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"kind": "average-rate", "seed": 1, "channels": [{"alpha": 1.5}]})").find("must exceed 2") !=
        std::string::npos);
  CHECK(message(R"({"kind": "average-rate", "seed": 1, "foo": 2})").find("foo") != std::string::npos);
  CHECK_FALSE(message(R"({"kind": "average-rate", "seed": 1, "times": []})").empty());
  CHECK_FALSE(message(R"({"kind": "average-rate", "seed": 1, "lambda0": "x"})").empty());
  CHECK_FALSE(message(R"({"kind": "nope", "seed": 1})").empty());
  CHECK_FALSE(message("{not json").empty());
}

TEST_CASE("emit and parse round trip") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::DensityProfile;
  cfg.seed = 99;
  cfg.models = {MobilityKind::RW};
  cfg.times = {5.0, 50.0};
  cfg.mobility.flight = FlightLaw::Exponential;
  cfg.channels = {ChannelParams{200.0, 3.5, 2, 1, 1.0}};
  cfg.simulation.density_bins = 20;
  const auto back = parse_config(emit_config(cfg));
  CHECK(back == cfg);
  CHECK(config_hash(back) == config_hash(cfg));
  cfg.seed = 100;
  CHECK(config_hash(back) != config_hash(cfg));
}

TEST_CASE("number formatting and CSV layout") {
  CHECK(format_number(0.5) == "0.5");
  CHECK(format_number(1e-6) == "1e-06");
  ResultTable t{"demo", {{"a", "m"}, {"b", ""}, {"c", ""}}, {}, {}};
  t.add_row({1.25, 3LL, std::string("x")});
  CHECK(t.to_csv() == "a,b,c\n1.25,3,x\n");
  t.add_row({2.0, 4LL, std::string("p, \"q\"")});
  CHECK(t.to_csv() == "a,b,c\n1.25,3,x\n2,4,\"p, \"\"q\"\"\"\n");
  CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("theorem1 table is deterministic") {
  auto cfg = parse_config(R"({"kind": "theorem1-check", "seed": 5, "models": ["RS"], "u0": [500], "times": [20, 40]})");
  const auto a = run_experiment(cfg);
  const auto b = run_experiment(cfg);
  REQUIRE(a.tables.size() == b.tables.size());
  for (std::size_t i = 0; i < a.tables.size(); ++i) {
    CHECK(a.tables[i].to_csv() == b.tables[i].to_csv());
    CHECK(a.tables[i].metadata_json() == b.tables[i].metadata_json());
  }
  CHECK(a.all_passed);
}
