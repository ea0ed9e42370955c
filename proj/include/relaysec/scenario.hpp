#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relaysec/errors.hpp"
#include "relaysec/geometry.hpp"

namespace relaysec {

// All dimensional and physical parameters of one experiment. Every field is
// explicit; serialization round-trips exactly.
struct ScenarioConfig {
  // Antenna counts.
  int n_t = 3;  // source transmit antennas
  int n_m = 1;  // antennas per relay
  int n_r = 1;  // antennas per user
  int n_e = 1;  // antennas per eavesdropper

  // Node counts.
  int relays = 3;         // M
  int users = 3;          // N_D
  int eavesdroppers = 3;  // N_E

  int buffer_size = 3;  // T, in symbols

  // Per link-class geometry. Source at the origin, destination nodes at
  // unit distance, relays midway; eavesdroppers at unit distance from both
  // the source and the relay cluster.
  LinkGeometry geom_sr{0.5, 1.0, 3.0, 3.0};
  LinkGeometry geom_rd{0.5, 1.0, 3.0, 3.0};
  LinkGeometry geom_sd{1.0, 1.0, 3.0, 3.0};
  LinkGeometry geom_se{1.0, 1.0, 3.0, 3.0};
  LinkGeometry geom_re{1.0, 1.0, 3.0, 3.0};

  std::vector<double> snr_db_grid{0.0, 5.0, 10.0, 15.0, 20.0};

  int episode_slots = 200;
  int warmup_slots = 50;
  int trials = 100;
  std::uint64_t master_seed = 1337;

  // The relay weights are fixed to identity; the flag documents the only
  // supported mode.
  bool relay_weights_identity = true;

  // Largest relay subset ML-SRS may select; 0 means "derive from the
  // scenario" (bounded by per-set ZF feasibility at the source).
  int max_set_size = 0;

  int effective_max_set_size() const {
    const int zf_cap = n_t / n_m;
    int cap = std::min(relays, zf_cap);
    if (max_set_size > 0) cap = std::min(cap, max_set_size);
    return std::max(1, cap);
  }

  double noise_variance_for(double snr_db) const {
    return std::pow(10.0, -snr_db / 10.0);  // E_s = 1 by convention
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> warnings;
    auto require = [](bool ok, const std::string& msg) {
      if (!ok) throw ValidationError(msg);
    };
    require(n_t >= 1 && n_m >= 1 && n_r >= 1 && n_e >= 1,
            "antenna counts must be >= 1");
    require(relays >= 1, "relays must be >= 1");
    require(users >= 1, "users must be >= 1");
    require(eavesdroppers >= 1, "eavesdroppers must be >= 1");
    require(n_t >= n_m, "n_t >= n_m required for per-relay zero forcing");
    require(buffer_size >= n_m, "T >= N_m required (buffer_size >= n_m)");
    require(!snr_db_grid.empty(), "snr_db_grid must be nonempty");
    require(episode_slots >= 1, "episode_slots must be >= 1");
    require(warmup_slots >= 0, "warmup_slots must be >= 0");
    require(trials >= 1, "trials must be >= 1");
    require(max_set_size >= 0, "max_set_size must be >= 0");
    require(relay_weights_identity,
            "identity relay weights are the only supported mode");
    geom_sr.validate("geometry.sr", &warnings);
    geom_rd.validate("geometry.rd", &warnings);
    geom_sd.validate("geometry.sd", &warnings);
    geom_se.validate("geometry.se", &warnings);
    geom_re.validate("geometry.re", &warnings);
    return warnings;
  }

  bool operator==(const ScenarioConfig& o) const {
    return n_t == o.n_t && n_m == o.n_m && n_r == o.n_r && n_e == o.n_e &&
           relays == o.relays && users == o.users &&
           eavesdroppers == o.eavesdroppers && buffer_size == o.buffer_size &&
           geom_sr == o.geom_sr && geom_rd == o.geom_rd &&
           geom_sd == o.geom_sd && geom_se == o.geom_se &&
           geom_re == o.geom_re && snr_db_grid == o.snr_db_grid &&
           episode_slots == o.episode_slots && warmup_slots == o.warmup_slots &&
           trials == o.trials && master_seed == o.master_seed &&
           relay_weights_identity == o.relay_weights_identity &&
           max_set_size == o.max_set_size;
  }
};

// Single-antenna scenario: N_t=3, N_m=1, N_r=1, N_e=1, M=3, N_D=3, N_E=3, T=3.
inline ScenarioConfig fig2_preset() {
  ScenarioConfig c;
  c.n_t = 3;
  c.n_m = 1;
  c.n_r = 1;
  c.n_e = 1;
  c.relays = 3;
  c.users = 3;
  c.eavesdroppers = 3;
  c.buffer_size = 3;
  return c;
}

// MU-MIMO scenario: N_t=6, N_m=2, N_r=2, N_e=2, M=3, N_D=3, N_E=3, T=6.
inline ScenarioConfig fig3_preset() {
  ScenarioConfig c;
  c.n_t = 6;
  c.n_m = 2;
  c.n_r = 2;
  c.n_e = 2;
  c.relays = 3;
  c.users = 3;
  c.eavesdroppers = 3;
  c.buffer_size = 6;
  return c;
}

namespace detail {

inline nlohmann::json geometry_to_json(const LinkGeometry& g) {
  return {{"distance", g.distance},
          {"reference_loss", g.reference_loss},
          {"path_loss_exponent", g.path_loss_exponent},
          {"shadowing_spread_db", g.shadowing_spread_db}};
}

inline LinkGeometry geometry_from_json(const nlohmann::json& j,
                                       const std::string& name) {
  static const std::set<std::string> known{
      "distance", "reference_loss", "path_loss_exponent",
      "shadowing_spread_db"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw ValidationError("unknown key '" + it.key() + "' in " + name);
  LinkGeometry g;
  g.distance = j.value("distance", g.distance);
  g.reference_loss = j.value("reference_loss", g.reference_loss);
  g.path_loss_exponent = j.value("path_loss_exponent", g.path_loss_exponent);
  g.shadowing_spread_db = j.value("shadowing_spread_db", g.shadowing_spread_db);
  return g;
}

}  // namespace detail

inline nlohmann::json serialize_scenario(const ScenarioConfig& c) {
  nlohmann::json j;
  j["n_t"] = c.n_t;
  j["n_m"] = c.n_m;
  j["n_r"] = c.n_r;
  j["n_e"] = c.n_e;
  j["relays"] = c.relays;
  j["users"] = c.users;
  j["eavesdroppers"] = c.eavesdroppers;
  j["buffer_size"] = c.buffer_size;
  j["geometry"] = {{"sr", detail::geometry_to_json(c.geom_sr)},
                   {"rd", detail::geometry_to_json(c.geom_rd)},
                   {"sd", detail::geometry_to_json(c.geom_sd)},
                   {"se", detail::geometry_to_json(c.geom_se)},
                   {"re", detail::geometry_to_json(c.geom_re)}};
  j["snr_db_grid"] = c.snr_db_grid;
  j["episode_slots"] = c.episode_slots;
  j["warmup_slots"] = c.warmup_slots;
  j["trials"] = c.trials;
  j["master_seed"] = c.master_seed;
  j["relay_weights_identity"] = c.relay_weights_identity;
  j["max_set_size"] = c.max_set_size;
  return j;
}

// Parses and validates a scenario document. Unknown keys are rejected so
// typos never silently fall back to defaults.
inline ScenarioConfig parse_scenario(const nlohmann::json& j) {
  static const std::set<std::string> known{
      "n_t", "n_m", "n_r", "n_e", "relays", "users", "eavesdroppers",
      "buffer_size", "geometry", "snr_db_grid", "episode_slots",
      "warmup_slots", "trials", "master_seed", "relay_weights_identity",
      "max_set_size"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key()))
      throw ValidationError("unknown key '" + it.key() + "' in scenario");

  ScenarioConfig c;
  c.n_t = j.value("n_t", c.n_t);
  c.n_m = j.value("n_m", c.n_m);
  c.n_r = j.value("n_r", c.n_r);
  c.n_e = j.value("n_e", c.n_e);
  c.relays = j.value("relays", c.relays);
  c.users = j.value("users", c.users);
  c.eavesdroppers = j.value("eavesdroppers", c.eavesdroppers);
  c.buffer_size = j.value("buffer_size", c.buffer_size);
  if (j.contains("geometry")) {
    const auto& g = j.at("geometry");
    static const std::set<std::string> classes{"sr", "rd", "sd", "se", "re"};
    for (auto it = g.begin(); it != g.end(); ++it)
      if (!classes.count(it.key()))
        throw ValidationError("unknown key '" + it.key() + "' in geometry");
    if (g.contains("sr")) c.geom_sr = detail::geometry_from_json(g["sr"], "geometry.sr");
    if (g.contains("rd")) c.geom_rd = detail::geometry_from_json(g["rd"], "geometry.rd");
    if (g.contains("sd")) c.geom_sd = detail::geometry_from_json(g["sd"], "geometry.sd");
    if (g.contains("se")) c.geom_se = detail::geometry_from_json(g["se"], "geometry.se");
    if (g.contains("re")) c.geom_re = detail::geometry_from_json(g["re"], "geometry.re");
  }
  if (j.contains("snr_db_grid"))
    c.snr_db_grid = j.at("snr_db_grid").get<std::vector<double>>();
  c.episode_slots = j.value("episode_slots", c.episode_slots);
  c.warmup_slots = j.value("warmup_slots", c.warmup_slots);
  c.trials = j.value("trials", c.trials);
  c.master_seed = j.value("master_seed", c.master_seed);
  c.relay_weights_identity =
      j.value("relay_weights_identity", c.relay_weights_identity);
  c.max_set_size = j.value("max_set_size", c.max_set_size);
  c.validate();
  return c;
}

// Accepts a preset name ("fig2", "fig3") or a path to a JSON scenario file.
inline ScenarioConfig load_scenario(const std::string& name_or_path) {
  if (name_or_path == "fig2") return fig2_preset();
  if (name_or_path == "fig3") return fig3_preset();
  std::ifstream in(name_or_path);
  if (!in)
    throw ValidationError("cannot open scenario file: " + name_or_path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("scenario parse error: " + std::string(e.what()));
  }
  return parse_scenario(j);
}

}  // namespace relaysec
