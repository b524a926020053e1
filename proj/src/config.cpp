#include "mwell/config.hpp"

#include <json.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "mwell/errors.hpp"
#include "mwell/numerics.hpp"

namespace mwell {

using nlohmann::json;

namespace {

template <typename T>
T get_req(const json& j, const std::string& path, const std::string& key) {
  if (!j.contains(key)) throw ConfigInvalid("missing required field: " + path + key);
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw ConfigInvalid("field has wrong type: " + path + key);
  }
}

template <typename T>
T get_opt(const json& j, const std::string& path, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const std::exception&) {
    throw ConfigInvalid("field has wrong type: " + path + key);
  }
}

cplx get_alpha(const json& j, const std::string& path) {
  if (!j.contains("alpha")) return cplx(1.1, 0.0);
  const auto& a = j.at("alpha");
  if (a.is_number()) return cplx(a.get<double>(), 0.0);
  if (a.is_array() && a.size() == 2) return cplx(a[0].get<double>(), a[1].get<double>());
  throw ConfigInvalid("field has wrong type: " + path + "alpha (number or [re, im])");
}

}  // namespace

Boundary RunConfig::boundary() const {
  if (bc == "cap") return Boundary::cap;
  if (bc == "hardwall" || bc == "hard_wall") return Boundary::hard_wall;
  throw ConfigInvalid("evolution.bc must be cap or hardwall");
}

EvolutionConfig RunConfig::evolution() const {
  EvolutionConfig e;
  e.dt = evolve_dt;
  e.T = evolve_T;
  e.record_stride = record_stride;
  return e;
}

RunConfig RunConfig::from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigInvalid(std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig cfg;
  cfg.name = get_opt<std::string>(j, "", "name", cfg.name);
  for (char ch : cfg.name)
    if (!(std::isalnum((unsigned char)ch) || ch == '-' || ch == '_'))
      throw ConfigInvalid("name must be a filesystem-safe token");

  if (j.contains("potential")) {
    const auto& p = j.at("potential");
    auto& ps = cfg.potential;
    ps.m = get_req<double>(p, "potential.", "m");
    ps.omega = get_req<double>(p, "potential.", "omega");
    ps.L = get_req<double>(p, "potential.", "L");
    ps.V_b = get_req<double>(p, "potential.", "V_b");
    ps.w = get_req<double>(p, "potential.", "w");
    ps.x_cap = get_req<double>(p, "potential.", "x_cap");
    ps.eta = get_req<double>(p, "potential.", "eta");
    ps.delta = get_req<double>(p, "potential.", "delta");
    ps.hbar = get_opt<double>(p, "potential.", "hbar", 1.0);
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    cfg.grid_x_min = get_req<double>(g, "grid.", "x_min");
    cfg.grid_x_max = get_req<double>(g, "grid.", "x_max");
    cfg.grid_h = get_req<double>(g, "grid.", "h");
  }
  if (j.contains("state")) {
    const auto& s = j.at("state");
    cfg.state.kind = get_opt<std::string>(s, "state.", "kind", "coherent");
    if (cfg.state.kind != "coherent" && cfg.state.kind != "random_phase" &&
        cfg.state.kind != "file")
      throw ConfigInvalid("state.kind must be coherent, random_phase or file");
    cfg.state.alpha = get_alpha(s, "state.");
    cfg.state.seed = get_opt<std::uint64_t>(s, "state.", "seed", 42);
    cfg.state.n_max = get_opt<int>(s, "state.", "n_max", -1);
    cfg.state.file = get_opt<std::string>(s, "state.", "file", "");
  }
  if (j.contains("evolution")) {
    const auto& e = j.at("evolution");
    cfg.evolve_dt = get_opt<double>(e, "evolution.", "dt", cfg.evolve_dt);
    cfg.evolve_T = get_opt<double>(e, "evolution.", "T", cfg.evolve_T);
    cfg.record_stride = get_opt<int>(e, "evolution.", "record_stride", cfg.record_stride);
    cfg.bc = get_opt<std::string>(e, "evolution.", "bc", cfg.bc);
  }
  cfg.x_T = get_opt<double>(j, "", "x_T", cfg.potential.L + cfg.potential.w + 1.0);
  cfg.max_resonances = get_opt<int>(j, "", "max_resonances", cfg.max_resonances);
  cfg.output_dir = get_opt<std::string>(j, "", "output_dir", cfg.output_dir);

  // cross-field checks; constructor errors become config errors with context
  try {
    Potential pot(cfg.potential);
    (void)cfg.grid();
    (void)cfg.boundary();
  } catch (const ConfigInvalid&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigInvalid(std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigInvalid("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return from_json_text(ss.str());
}

std::string RunConfig::to_json_text() const {
  json j;
  j["name"] = name;
  j["potential"] = {{"m", potential.m},     {"omega", potential.omega},
                    {"L", potential.L},     {"V_b", potential.V_b},
                    {"w", potential.w},     {"x_cap", potential.x_cap},
                    {"eta", potential.eta}, {"delta", potential.delta},
                    {"hbar", potential.hbar}};
  j["grid"] = {{"x_min", grid_x_min}, {"x_max", grid_x_max}, {"h", grid_h}};
  j["state"] = {{"kind", state.kind},
                {"alpha", {state.alpha.real(), state.alpha.imag()}},
                {"seed", state.seed},
                {"n_max", state.n_max},
                {"file", state.file}};
  j["evolution"] = {
      {"dt", evolve_dt}, {"T", evolve_T}, {"record_stride", record_stride}, {"bc", bc}};
  j["x_T"] = x_T;
  j["max_resonances"] = max_resonances;
  j["output_dir"] = output_dir;
  return j.dump(2);
}

std::string RunConfig::hash() const {
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a64(to_json_text()));
  return buf;
}

void write_manifest(const std::string& dir, const std::string& stage, const RunConfig& cfg,
                    const std::vector<std::string>& outputs, double wall_seconds) {
  json j;
  j["stage"] = stage;
  j["config_hash"] = cfg.hash();
  j["config"] = nlohmann::json::parse(cfg.to_json_text());
  j["outputs"] = outputs;
  j["wall_seconds"] = wall_seconds;
  j["format_version"] = 1;
  const std::string path = dir + "/" + stage + ".manifest.json";
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace mwell
