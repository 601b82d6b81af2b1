// SPDX-License-Identifier: Apache-2.0
#include "dronenet/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <fstream>
#include <limits>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "dronenet/displacement.hpp"
#include "dronenet/error.hpp"
#include "dronenet/simulator.hpp"
#include "dronenet/statistics.hpp"
#include "dronenet/validation.hpp"

#ifndef DRONENET_GIT_DESCRIBE
#define DRONENET_GIT_DESCRIBE "unknown"
#endif

namespace dronenet {

using json = nlohmann::json;

namespace {

const std::vector<std::pair<ExperimentKind, std::string>>& kind_names() {
  static const std::vector<std::pair<ExperimentKind, std::string>> names{
      {ExperimentKind::DisplacementDist, "displacement-dist"}, {ExperimentKind::DensityProfile, "density-profile"},
      {ExperimentKind::Theorem1Check, "theorem1-check"},      {ExperimentKind::AverageRate, "average-rate"},
      {ExperimentKind::SessionRate, "session-rate"},          {ExperimentKind::ValidateAll, "validate-all"}};
  return names;
}

const std::vector<std::pair<FlightLaw, std::string>>& flight_names() {
  static const std::vector<std::pair<FlightLaw, std::string>> names{{FlightLaw::Rayleigh, "rayleigh"},
                                                                     {FlightLaw::Exponential, "exponential"},
                                                                     {FlightLaw::Uniform, "uniform"},
                                                                     {FlightLaw::Deterministic, "deterministic"}};
  return names;
}

std::string flight_name(FlightLaw f) {
  for (const auto& [k, n] : flight_names()) {
    if (k == f) return n;
  }
  return "?";
}

// --- strict JSON readers ---

void reject_unknown(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "document must be an object" : path + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; })) {
      throw ConfigError("unknown key '" + (path.empty() ? it.key() : path + "." + it.key()) + "'");
    }
  }
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double read_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

long long read_integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return j.get<long long>();
}

std::string read_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

std::vector<double> read_numbers(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(read_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

template <class F>
void if_present(const json& obj, const char* key, const F& f) {
  auto it = obj.find(key);
  if (it != obj.end()) f(*it);
}

ChannelParams read_channel(const json& j, const std::string& path) {
  reject_unknown(j, path, {"h", "alpha", "m0", "mx", "power"});
  ChannelParams ch;
  if_present(j, "h", [&](const json& v) { ch.h = read_number(v, join(path, "h")); });
  if_present(j, "alpha", [&](const json& v) { ch.alpha = read_number(v, join(path, "alpha")); });
  if_present(j, "m0", [&](const json& v) { ch.m0 = static_cast<int>(read_integer(v, join(path, "m0"))); });
  if_present(j, "mx", [&](const json& v) { ch.mx = static_cast<int>(read_integer(v, join(path, "mx"))); });
  if_present(j, "power", [&](const json& v) { ch.power = read_number(v, join(path, "power")); });
  return ch;
}

json channel_json(const ChannelParams& ch) {
  return json{{"h", ch.h}, {"alpha", ch.alpha}, {"m0", ch.m0}, {"mx", ch.mx}, {"power", ch.power}};
}

bool same_channel(const ChannelParams& a, const ChannelParams& b) {
  return a.h == b.h && a.alpha == b.alpha && a.m0 == b.m0 && a.mx == b.mx && a.power == b.power;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, n] : kind_names()) {
    if (k == kind) return n;
  }
  return "?";
}

ExperimentKind experiment_kind_from_string(const std::string& name) {
  for (const auto& [k, n] : kind_names()) {
    if (n == name) return k;
  }
  throw ConfigError("unknown experiment kind '" + name + "'");
}

const std::vector<ExperimentKind>& all_experiment_kinds() {
  static const std::vector<ExperimentKind> kinds{ExperimentKind::DisplacementDist, ExperimentKind::DensityProfile,
                                                 ExperimentKind::Theorem1Check,    ExperimentKind::AverageRate,
                                                 ExperimentKind::SessionRate,      ExperimentKind::ValidateAll};
  return kinds;
}

MobilityModelSpec ExperimentConfig::model_spec(MobilityKind kind) const {
  const double mean = mobility.flight_mean;
  ScalarDistribution flight = [&] {
    switch (mobility.flight) {
      case FlightLaw::Rayleigh: return ScalarDistribution::rayleigh_mean(mean);
      case FlightLaw::Exponential: return ScalarDistribution::exponential(mean);
      case FlightLaw::Uniform: return ScalarDistribution::uniform(0.0, 2.0 * mean);
      case FlightLaw::Deterministic: return ScalarDistribution::deterministic(mean);
    }
    throw ConfigError("unknown flight law");
  }();
  switch (kind) {
    case MobilityKind::SL: return MobilityModelSpec::sl(mobility.v);
    case MobilityKind::RS: return MobilityModelSpec::rs(mobility.v, flight);
    case MobilityKind::RW: return MobilityModelSpec::rw(mobility.v, flight);
    case MobilityKind::RWP:
      return MobilityModelSpec::rwp(mobility.v, flight, ScalarDistribution::exponential(mobility.hover_mean));
  }
  throw ConfigError("unknown mobility model");
}

void ExperimentConfig::validate() const {
  auto positive = [](double x, const std::string& key) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(key + " must be positive");
  };
  positive(mobility.v, "mobility.v");
  positive(mobility.flight_mean, "mobility.flight_mean");
  positive(mobility.hover_mean, "mobility.hover_mean");
  positive(lambda0, "lambda0");
  if (models.empty()) throw ConfigError("models must not be empty");
  if (u0.empty()) throw ConfigError("u0 must not be empty");
  for (double u : u0) positive(u, "u0");
  if (times.empty()) throw ConfigError("times: time grid is empty");
  for (double t : times) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("times must be non-negative");
    if (kind == ExperimentKind::DisplacementDist && t == 0.0) throw ConfigError("times must be positive for displacement-dist");
  }
  if (horizons.empty()) throw ConfigError("horizons must not be empty");
  for (double T : horizons) positive(T, "horizons");
  if (channels.empty()) throw ConfigError("channels must not be empty");
  for (std::size_t i = 0; i < channels.size(); ++i) {
    const ChannelParams& ch = channels[i];
    const std::string p = "channels[" + std::to_string(i) + "].";
    if (!(ch.alpha > 2.0)) throw ConfigError(p + "alpha: α must exceed 2");
    if (ch.m0 < 1 || ch.mx < 1) throw ConfigError(p + "m0/mx: Nakagami shapes must be integers >= 1");
    positive(ch.h, p + "h");
    positive(ch.power, p + "power");
  }
  positive(simulation.lambda0_mc, "simulation.lambda0_mc");
  positive(simulation.observation_radius, "simulation.observation_radius");
  if (simulation.density_realizations < 1) throw ConfigError("simulation.density_realizations must be >= 1");
  if (simulation.density_bins < 1) throw ConfigError("simulation.density_bins must be >= 1");
  if (simulation.trajectories < 100) throw ConfigError("simulation.trajectories must be >= 100");
  if (simulation.displacement_bins < 1) throw ConfigError("simulation.displacement_bins must be >= 1");
  if (simulation.rate_realizations < 0) throw ConfigError("simulation.rate_realizations must be >= 0");
  if (scale != "quick" && scale != "full") throw ConfigError("scale must be 'quick' or 'full'");
}

bool operator==(const ExperimentConfig& a, const ExperimentConfig& b) {
  if (a.channels.size() != b.channels.size()) return false;
  for (std::size_t i = 0; i < a.channels.size(); ++i) {
    if (!same_channel(a.channels[i], b.channels[i])) return false;
  }
  return a.kind == b.kind && a.seed == b.seed && a.models == b.models && a.service == b.service &&
         a.mobility == b.mobility && a.lambda0 == b.lambda0 && a.u0 == b.u0 && a.times == b.times &&
         a.horizons == b.horizons && a.simulation == b.simulation && a.scale == b.scale;
}

ExperimentConfig parse_config(const std::string& text, std::optional<ExperimentKind> kind,
                              std::optional<std::uint64_t> seed) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed document: ") + e.what());
  }
  reject_unknown(doc, "", {"kind", "seed", "models", "service", "mobility", "lambda0", "u0", "times", "horizons",
                           "channels", "simulation", "scale"});
  ExperimentConfig cfg;

  if (auto it = doc.find("kind"); it != doc.end()) {
    const ExperimentKind k = experiment_kind_from_string(read_string(*it, "kind"));
    if (kind && *kind != k) throw ConfigError("kind: document says '" + to_string(k) + "' but '" + to_string(*kind) + "' was requested");
    cfg.kind = k;
  } else if (kind) {
    cfg.kind = *kind;
  } else {
    throw ConfigError("missing required key 'kind'");
  }

  if (auto it = doc.find("seed"); it != doc.end()) {
    if (!it->is_number_unsigned()) throw ConfigError("seed: expected a non-negative integer");
    cfg.seed = it->get<std::uint64_t>();
    if (seed && *seed != cfg.seed) {
      cfg.seed = *seed;
    }
  } else if (seed) {
    cfg.seed = *seed;
  } else {
    throw ConfigError("missing required key 'seed'");
  }

  if_present(doc, "models", [&](const json& v) {
    if (!v.is_array()) throw ConfigError("models: expected an array of strings");
    cfg.models.clear();
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string p = "models[" + std::to_string(i) + "]";
      try {
        cfg.models.push_back(mobility_kind_from_string(read_string(v[i], p)));
      } catch (const ParameterError& e) {
        throw ConfigError(p + ": " + e.what());
      }
    }
  });
  if_present(doc, "service", [&](const json& v) {
    try {
      cfg.service = service_model_from_string(read_string(v, "service"));
    } catch (const ParameterError& e) {
      throw ConfigError(std::string("service: ") + e.what());
    }
  });
  if_present(doc, "mobility", [&](const json& m) {
    reject_unknown(m, "mobility", {"v", "flight", "flight_mean", "hover_mean"});
    if_present(m, "v", [&](const json& v) { cfg.mobility.v = read_number(v, "mobility.v"); });
    if_present(m, "flight_mean", [&](const json& v) { cfg.mobility.flight_mean = read_number(v, "mobility.flight_mean"); });
    if_present(m, "hover_mean", [&](const json& v) { cfg.mobility.hover_mean = read_number(v, "mobility.hover_mean"); });
    if_present(m, "flight", [&](const json& v) {
      const std::string name = read_string(v, "mobility.flight");
      auto it = std::find_if(flight_names().begin(), flight_names().end(), [&](const auto& p) { return p.second == name; });
      if (it == flight_names().end()) throw ConfigError("mobility.flight: unknown flight law '" + name + "'");
      cfg.mobility.flight = it->first;
    });
  });
  if_present(doc, "lambda0", [&](const json& v) { cfg.lambda0 = read_number(v, "lambda0"); });
  if_present(doc, "u0", [&](const json& v) { cfg.u0 = read_numbers(v, "u0"); });
  if_present(doc, "times", [&](const json& v) { cfg.times = read_numbers(v, "times"); });
  if_present(doc, "horizons", [&](const json& v) { cfg.horizons = read_numbers(v, "horizons"); });
  if_present(doc, "channels", [&](const json& v) {
    if (!v.is_array()) throw ConfigError("channels: expected an array of objects");
    cfg.channels.clear();
    for (std::size_t i = 0; i < v.size(); ++i) cfg.channels.push_back(read_channel(v[i], "channels[" + std::to_string(i) + "]"));
  });
  if_present(doc, "simulation", [&](const json& s) {
    reject_unknown(s, "simulation", {"lambda0_mc", "density_realizations", "density_bins", "trajectories",
                                     "displacement_bins", "rate_realizations", "observation_radius"});
    SimulationParams& p = cfg.simulation;
    if_present(s, "lambda0_mc", [&](const json& v) { p.lambda0_mc = read_number(v, "simulation.lambda0_mc"); });
    if_present(s, "density_realizations", [&](const json& v) { p.density_realizations = read_integer(v, "simulation.density_realizations"); });
    if_present(s, "density_bins", [&](const json& v) { p.density_bins = static_cast<int>(read_integer(v, "simulation.density_bins")); });
    if_present(s, "trajectories", [&](const json& v) { p.trajectories = read_integer(v, "simulation.trajectories"); });
    if_present(s, "displacement_bins", [&](const json& v) { p.displacement_bins = static_cast<int>(read_integer(v, "simulation.displacement_bins")); });
    if_present(s, "rate_realizations", [&](const json& v) { p.rate_realizations = read_integer(v, "simulation.rate_realizations"); });
    if_present(s, "observation_radius", [&](const json& v) { p.observation_radius = read_number(v, "simulation.observation_radius"); });
  });
  if_present(doc, "scale", [&](const json& v) { cfg.scale = read_string(v, "scale"); });
  cfg.validate();
  return cfg;
}

std::string emit_config(const ExperimentConfig& cfg) {
  json doc;
  doc["kind"] = to_string(cfg.kind);
  doc["seed"] = cfg.seed;
  doc["models"] = json::array();
  for (MobilityKind m : cfg.models) doc["models"].push_back(to_string(m));
  doc["service"] = to_string(cfg.service);
  doc["mobility"] = json{{"v", cfg.mobility.v},
                         {"flight", flight_name(cfg.mobility.flight)},
                         {"flight_mean", cfg.mobility.flight_mean},
                         {"hover_mean", cfg.mobility.hover_mean}};
  doc["lambda0"] = cfg.lambda0;
  doc["u0"] = cfg.u0;
  doc["times"] = cfg.times;
  doc["horizons"] = cfg.horizons;
  doc["channels"] = json::array();
  for (const ChannelParams& ch : cfg.channels) doc["channels"].push_back(channel_json(ch));
  const SimulationParams& s = cfg.simulation;
  doc["simulation"] = json{{"lambda0_mc", s.lambda0_mc},
                           {"density_realizations", s.density_realizations},
                           {"density_bins", s.density_bins},
                           {"trajectories", s.trajectories},
                           {"displacement_bins", s.displacement_bins},
                           {"rate_realizations", s.rate_realizations},
                           {"observation_radius", s.observation_radius}};
  doc["scale"] = cfg.scale;
  return doc.dump(2);
}

std::uint64_t config_hash(const ExperimentConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : emit_config(cfg)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// --- result tables ---

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

std::string git_describe() { return DRONENET_GIT_DESCRIBE; }

void ResultTable::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw ConsistencyError("row width does not match table '" + name + "'");
  rows.push_back(std::move(row));
}

namespace {

// Quotes a field holding a comma, quote or line break; embedded quotes are doubled.
std::string csv_field(const std::string& v) {
  if (v.find_first_of(",\"\n\r") == std::string::npos) return v;
  std::string q = "\"";
  for (char ch : v) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << csv_field(columns[i].name);
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) out << format_number(v);
            else if constexpr (std::is_same_v<T, long long>) out << v;
            else out << csv_field(v);
          },
          row[i]);
    }
    out << '\n';
  }
  return out.str();
}

std::string ResultTable::metadata_json() const {
  json doc;
  doc["table"] = name;
  doc["columns"] = json::array();
  for (const Column& c : columns) doc["columns"].push_back(json{{"name", c.name}, {"unit", c.unit}});
  doc["rows"] = rows.size();
  json meta = json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  doc["metadata"] = meta;
  return doc.dump(2) + "\n";
}

void write_tables(const std::vector<ResultTable>& tables, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const ResultTable& t : tables) {
    std::ofstream csv(dir / (t.name + ".csv"), std::ios::binary);
    csv << t.to_csv();
    std::ofstream meta(dir / (t.name + ".json"), std::ios::binary);
    meta << t.metadata_json();
    if (!csv || !meta) throw ConfigError("cannot write output files in " + dir.string());
  }
}

namespace {

constexpr std::uint64_t kStreamDisplacement = 0xD15;
constexpr std::uint64_t kStreamDensity = 0xDE5;
constexpr std::uint64_t kStreamRate = 0x5A7E;

ResultTable make_table(const ExperimentConfig& cfg, std::string name, std::vector<Column> columns) {
  ResultTable t;
  t.name = std::move(name);
  t.columns = std::move(columns);
  char hash[17];
  std::snprintf(hash, sizeof hash, "%016llx", static_cast<unsigned long long>(config_hash(cfg)));
  t.metadata = {{"experiment", to_string(cfg.kind)},
                {"git_describe", git_describe()},
                {"seed", std::to_string(cfg.seed)},
                {"config_hash", hash},
                {"config", emit_config(cfg)}};
  return t;
}

std::vector<ResultTable> run_displacement(const ExperimentConfig& cfg) {
  ResultTable bins = make_table(cfg, "displacement_bins",
                                {{"model", ""}, {"t", "s"}, {"l_lo", "m"}, {"l_hi", "m"},
                                 {"analytic_prob", "1"}, {"mc_prob", "1"}});
  ResultTable summary = make_table(cfg, "displacement_summary",
                                   {{"model", ""}, {"t", "s"}, {"ks", "1"}, {"atom_mass", "1"},
                                    {"continuous_mass", "1"}, {"raw_total_mass", "1"}, {"series_terms", "count"}});
  const double t_max = *std::max_element(cfg.times.begin(), cfg.times.end());
  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
    const MobilityModelSpec spec = cfg.model_spec(cfg.models[mi]);
    const DisplacementModel model(spec, {}, {}, t_max);
    for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
      const double t = cfg.times[ti];
      const auto law = model.at(t);
      const Rng rng = Rng(cfg.seed, kStreamDisplacement).split(mi * 1000 + ti);
      const std::vector<double> samples = sample_net_displacement(spec, t, cfg.simulation.trajectories, rng);
      const int nb = cfg.simulation.displacement_bins;
      const double vt = law->vt();
      std::vector<long long> count(static_cast<std::size_t>(nb), 0);
      for (double l : samples) ++count[static_cast<std::size_t>(std::clamp(static_cast<int>(l / vt * nb), 0, nb - 1))];
      for (int b = 0; b < nb; ++b) {
        const double lo = vt * b / nb;
        const double hi = vt * (b + 1) / nb;
        const double upper = b + 1 == nb ? 1.0 : law->cdf_left(hi);
        bins.add_row({to_string(cfg.models[mi]), t, lo, hi, upper - law->cdf_left(lo),
                      static_cast<double>(count[static_cast<std::size_t>(b)]) / static_cast<double>(samples.size())});
      }
      double atoms = 0.0;
      for (const Atom& a : law->atoms()) atoms += a.mass;
      const double ks = ks_statistic(samples, [&](double x) { return law->cdf(x); },
                                     [&](double x) { return law->cdf_left(x); });
      summary.add_row({to_string(cfg.models[mi]), t, ks, atoms, law->continuous_mass(), law->raw_total_mass(),
                       static_cast<long long>(law->series_terms())});
    }
  }
  return {bins, summary};
}

std::vector<ResultTable> run_density(const ExperimentConfig& cfg) {
  ResultTable prof = make_table(cfg, "density_profile",
                                {{"model", ""}, {"u0", "m"}, {"t", "s"}, {"u_lo", "m"}, {"u_hi", "m"},
                                 {"analytic_ratio", "1"}, {"mc_ratio", "1"}, {"mc_std_error", "1"}});
  ResultTable summary = make_table(cfg, "density_summary",
                                   {{"model", ""}, {"u0", "m"}, {"t", "s"}, {"max_abs_deviation", "1"}});
  const double t_max = *std::max_element(cfg.times.begin(), cfg.times.end());
  for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
    const MobilityModelSpec spec = cfg.model_spec(cfg.models[mi]);
    const DensityProvider provider(ServiceModel::UDM, spec, cfg.lambda0, t_max);
    for (std::size_t ui = 0; ui < cfg.u0.size(); ++ui) {
      for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
        const double u0 = cfg.u0[ui];
        const double t = cfg.times[ti];
        OracleOptions opts;
        opts.realizations = cfg.simulation.density_realizations;
        opts.bins = cfg.simulation.density_bins;
        const Rng rng = Rng(cfg.seed, kStreamDensity).split((mi * 1000 + ui) * 1000 + ti);
        const RadialHistogram h = empirical_density_oracle(spec, cfg.simulation.lambda0_mc, u0, t, opts, rng);
        const std::vector<double> analytic = binned_ratio(provider.at(u0, t), h.edges);
        double worst = 0.0;
        for (std::size_t b = 0; b < analytic.size(); ++b) {
          worst = std::max(worst, std::abs(analytic[b] - h.ratio[b]));
          prof.add_row({to_string(cfg.models[mi]), u0, t, h.edges[b], h.edges[b + 1], analytic[b], h.ratio[b],
                        h.std_error[b]});
        }
        summary.add_row({to_string(cfg.models[mi]), u0, t, worst});
      }
    }
  }
  return {prof, summary};
}

std::vector<ResultTable> run_theorem1(const ExperimentConfig& cfg) {
  ResultTable table = make_table(cfg, "theorem1",
                                 {{"model", ""}, {"u0", "m"}, {"t", "s"}, {"radius", "m"}, {"measure_model", "count"},
                                  {"measure_sl", "count"}, {"relative_margin", "1"}, {"ordered", "bool"},
                                  {"sweep_min_margin", "1"}, {"sweep_radius", "m"}});
  const double t_max = *std::max_element(cfg.times.begin(), cfg.times.end());
  const double v = cfg.mobility.v;
  const DensityProvider sl(ServiceModel::UDM, MobilityModelSpec::sl(v), cfg.lambda0, t_max);
  auto emit = [&](const std::string& name, double u0, double t, const InterfererDensity& d) {
    const double radius = u0 + v * t;
    const InterfererDensity ds = sl.at(u0, t);
    const double ms = intensity_measure(ds, radius);
    const double mm = intensity_measure(d, radius);
    // At t = 0 both measures vanish.
    const double margin = mm > 0.0 ? (ms - mm) / mm : ms - mm;
    // Smaller discs b(o', r), r < radius, normalized by lambda0 pi r^2.
    double sweep = std::numeric_limits<double>::infinity();
    double sweep_r = radius;
    for (int k = 1; k < 20 && radius > 0.0; ++k) {
      const double r = radius * k / 20.0;
      const double m = (intensity_measure(ds, r) - intensity_measure(d, r)) / (cfg.lambda0 * std::numbers::pi * r * r);
      if (m < sweep) {
        sweep = m;
        sweep_r = r;
      }
    }
    if (!std::isfinite(sweep)) sweep = 0.0;
    table.add_row({name, u0, t, radius, mm, ms, margin, static_cast<long long>(margin >= -1e-3 && sweep >= -1e-3),
                   sweep, sweep_r});
  };
  for (MobilityKind kind : cfg.models) {
    if (kind == MobilityKind::SL) continue;
    const DensityProvider p(ServiceModel::UDM, cfg.model_spec(kind), cfg.lambda0, t_max);
    for (double u0 : cfg.u0) {
      for (double t : cfg.times) emit(to_string(kind), u0, t, p.at(u0, t));
    }
  }
  // Curved synthetic model: constant-speed circular arcs of radius flight_mean.
  for (double u0 : cfg.u0) {
    for (double t : cfg.times) {
      auto arc = std::make_shared<const NetDisplacementDistribution>(arc_displacement(cfg.mobility.flight_mean, v, t));
      emit("ARC", u0, t, udm_density_general(cfg.lambda0, u0, t, arc));
    }
  }
  return {table};
}

std::vector<ResultTable> run_average_rate(const ExperimentConfig& cfg) {
  ResultTable table = make_table(cfg, "average_rate",
                                 {{"model", ""}, {"service", ""}, {"h", "m"}, {"alpha", "1"}, {"m0", "1"}, {"mx", "1"},
                                  {"t", "s"}, {"rate", "nats"}, {"quad_error", "nats"}, {"mc_rate", "nats"},
                                  {"mc_std_error", "nats"}, {"mc_used", "count"}});
  const double t_max = *std::max_element(cfg.times.begin(), cfg.times.end());
  for (std::size_t ci = 0; ci < cfg.channels.size(); ++ci) {
    const ChannelParams& ch = cfg.channels[ci];
    for (std::size_t mi = 0; mi < cfg.models.size(); ++mi) {
      const MobilityModelSpec spec = cfg.model_spec(cfg.models[mi]);
      const RateEvaluator eval(cfg.service, spec, cfg.lambda0, ch, t_max);
      EmpiricalSummary mc;
      if (cfg.simulation.rate_realizations > 0) {
        SimConfig sim;
        sim.lambda0 = cfg.lambda0;
        sim.observation_radius = cfg.simulation.observation_radius;
        sim.times = cfg.times;
        sim.model = spec;
        sim.service = cfg.service;
        sim.channel = ch;
        sim.realizations = cfg.simulation.rate_realizations;
        sim.seed = Rng(cfg.seed, kStreamRate).split(ci * 1000 + mi)();
        mc = run_simulation(sim);
      }
      for (std::size_t ti = 0; ti < cfg.times.size(); ++ti) {
        const RateResult r = eval.average_rate(cfg.times[ti]);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        const bool has_mc = !mc.steps.empty();
        table.add_row({to_string(cfg.models[mi]), to_string(cfg.service), ch.h, ch.alpha, static_cast<long long>(ch.m0),
                       static_cast<long long>(ch.mx), cfg.times[ti], r.value, r.error,
                       has_mc ? mc.steps[ti].rate : nan, has_mc ? mc.steps[ti].rate_std_error : nan,
                       static_cast<long long>(has_mc ? mc.steps[ti].used : 0)});
      }
    }
  }
  return {table};
}

std::vector<ResultTable> run_session_rate(const ExperimentConfig& cfg) {
  ResultTable table = make_table(cfg, "session_rate",
                                 {{"model", ""}, {"service", ""}, {"h", "m"}, {"alpha", "1"}, {"m0", "1"}, {"mx", "1"},
                                  {"T", "s"}, {"session_rate", "nats"}, {"quad_error", "nats"}});
  const double T_max = *std::max_element(cfg.horizons.begin(), cfg.horizons.end());
  for (const ChannelParams& ch : cfg.channels) {
    for (MobilityKind kind : cfg.models) {
      const RateEvaluator eval(cfg.service, cfg.model_spec(kind), cfg.lambda0, ch, T_max);
      for (double T : cfg.horizons) {
        const RateResult r = eval.session_rate(T);
        table.add_row({to_string(kind), to_string(cfg.service), ch.h, ch.alpha, static_cast<long long>(ch.m0),
                       static_cast<long long>(ch.mx), T, r.value, r.error});
      }
    }
  }
  return {table};
}

ExperimentOutput run_validate_all(const ExperimentConfig& cfg) {
  ResultTable table = make_table(cfg, "validation",
                                 {{"criterion", ""}, {"check", ""}, {"name", ""}, {"value", ""}, {"relation", ""},
                                  {"threshold", ""}, {"pass", "bool"}, {"detail", ""}});
  ExperimentOutput out;
  for (const CheckResult& c : run_validation(ValidationScale::from_name(cfg.scale), cfg.seed)) {
    table.add_row({static_cast<long long>(c.criterion), c.id, c.name, c.value, c.relation, c.threshold,
                   static_cast<long long>(c.pass), c.detail});
    out.all_passed = out.all_passed && c.pass;
  }
  table.metadata.emplace_back("scale", cfg.scale);
  out.tables.push_back(std::move(table));
  return out;
}

}  // namespace

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  switch (cfg.kind) {
    case ExperimentKind::DisplacementDist: return {run_displacement(cfg), true};
    case ExperimentKind::DensityProfile: return {run_density(cfg), true};
    case ExperimentKind::Theorem1Check: {
      ExperimentOutput out{run_theorem1(cfg), true};
      for (const auto& row : out.tables.front().rows) out.all_passed = out.all_passed && std::get<long long>(row[7]) == 1;
      return out;
    }
    case ExperimentKind::AverageRate: return {run_average_rate(cfg), true};
    case ExperimentKind::SessionRate: return {run_session_rate(cfg), true};
    case ExperimentKind::ValidateAll: return run_validate_all(cfg);
  }
  throw ConfigError("unknown experiment kind");
}

std::string describe_columns(ExperimentKind kind) {
  switch (kind) {
    case ExperimentKind::DisplacementDist:
      return "displacement_bins.csv: model, t [s], l_lo [m], l_hi [m], analytic_prob, mc_prob "
             "(probability of L(t) in [l_lo, l_hi); the last bin includes the atom at vt)\n"
             "displacement_summary.csv: model, t [s], ks, atom_mass, continuous_mass, raw_total_mass, series_terms";
    case ExperimentKind::DensityProfile:
      return "density_profile.csv: model, u0 [m], t [s], u_lo [m], u_hi [m], analytic_ratio, mc_ratio, mc_std_error "
             "(bin-averaged lambda/lambda0, UDM)\n"
             "density_summary.csv: model, u0 [m], t [s], max_abs_deviation";
    case ExperimentKind::Theorem1Check:
      return "theorem1.csv: model, u0 [m], t [s], radius [m], measure_model, measure_sl, relative_margin, ordered, "
             "sweep_min_margin, sweep_radius [m] (expected interferers in b(o', u0 + vt); the sweep is the smallest "
             "(Lambda_SL - Lambda_model) / (lambda0 pi r^2) over 19 radii r < u0 + vt; ARC is a circular-arc model)";
    case ExperimentKind::AverageRate:
      return "average_rate.csv: model, service, h [m], alpha, m0, mx, t [s], rate [nats], quad_error [nats], "
             "mc_rate [nats], mc_std_error [nats], mc_used (nan when simulation.rate_realizations is 0)";
    case ExperimentKind::SessionRate:
      return "session_rate.csv: model, service, h [m], alpha, m0, mx, T [s], session_rate [nats], quad_error [nats]";
    case ExperimentKind::ValidateAll:
      return "validation.csv: criterion, check, name, value, relation, threshold, pass, detail";
  }
  return "";
}

}  // namespace dronenet
