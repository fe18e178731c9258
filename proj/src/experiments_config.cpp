#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "geomsense/closed_form.hpp"
#include "geomsense/experiments.hpp"
#include "geomsense/noise.hpp"
#include "geomsense/states.hpp"

namespace geomsense {

const char* const kVersion = "0.1.0";

namespace {

const std::set<std::string> kExperiments = {
    "dispersive",   "free-evolution",   "freq-switch",      "geometric",
    "noise-sweep",  "sensitivity-curve", "wigner-snapshots"};

[[noreturn]] void fail(const std::string& pointer, const std::string& msg) {
  throw ConfigError("config error at " + (pointer.empty() ? "/" : pointer) + ": " + msg);
}

void require_keys(const json& obj, const std::string& pointer,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) fail(pointer, "expected an object");
  for (const auto& [key, _] : obj.items())
    if (!allowed.count(key)) fail(pointer + "/" + key, "unknown key");
}

double number_or(const json& obj, const std::string& pointer, const std::string& key,
                 double fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number()) fail(pointer + "/" + key, "expected a number");
  return obj[key].get<double>();
}

int integer_or(const json& obj, const std::string& pointer, const std::string& key,
               int fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_number_integer()) fail(pointer + "/" + key, "expected an integer");
  return obj[key].get<int>();
}

void check_positive(double v, const std::string& pointer) {
  if (!(v > 0)) fail(pointer, "must be > 0");
}

json resolve_sensing(const json& in, const std::string& pointer, bool allow_omega_prime,
                     bool want_squeeze) {
  std::set<std::string> allowed = {"omega", "gamma", "eta", "n_loops"};
  if (want_squeeze) {
    allowed.insert("squeeze_db");
    allowed.insert("squeeze_r");
  }
  if (allow_omega_prime) allowed.insert("omega_prime");
  require_keys(in, pointer, allowed);

  json out;
  out["omega"] = number_or(in, pointer, "omega", 1.0);
  check_positive(out["omega"].get<double>(), pointer + "/omega");
  out["gamma"] = number_or(in, pointer, "gamma", 0.2);
  if (out["gamma"].get<double>() < 0) fail(pointer + "/gamma", "must be >= 0");
  out["eta"] = number_or(in, pointer, "eta", 1e-5);
  out["n_loops"] = integer_or(in, pointer, "n_loops", 1);
  if (out["n_loops"].get<int>() < 1) fail(pointer + "/n_loops", "must be >= 1");

  if (want_squeeze) {
    if (in.contains("squeeze_db") && in.contains("squeeze_r"))
      fail(pointer, "give either squeeze_db or squeeze_r, not both");
    if (in.contains("squeeze_r")) {
      const double r = number_or(in, pointer, "squeeze_r", 0.0);
      if (r < 0) fail(pointer + "/squeeze_r", "must be >= 0");
      out["squeeze_r"] = r;
    } else {
      const double db = number_or(in, pointer, "squeeze_db", 10.0);
      if (db < 0) fail(pointer + "/squeeze_db", "must be >= 0");
      out["squeeze_db"] = db;
    }
  }
  if (allow_omega_prime) {
    const double op = number_or(in, pointer, "omega_prime", 0.6 * out["omega"].get<double>());
    if (!(op > 0) || op > out["omega"].get<double>())
      fail(pointer + "/omega_prime", "must be in (0, omega]");
    out["omega_prime"] = op;
  }
  return out;
}

json resolve_state(const json& in, const std::string& pointer) {
  require_keys(in, pointer, {"kind", "alpha_re", "alpha_im", "nbar", "delta", "peaks"});
  if (!in.contains("kind") || !in["kind"].is_string()) fail(pointer + "/kind", "expected a string");
  const std::string kind = in["kind"].get<std::string>();
  OscStateKind parsed;
  try {
    parsed = osc_state_kind_from_string(kind);
  } catch (const std::exception& e) {
    fail(pointer + "/kind", e.what());
  }
  json out;
  out["kind"] = kind;
  const auto reject = [&](const char* key) {
    if (in.contains(key)) fail(pointer + std::string("/") + key, "not valid for kind '" + kind + "'");
  };
  switch (parsed) {
    case OscStateKind::Vacuum:
      reject("alpha_re"); reject("alpha_im"); reject("nbar"); reject("delta"); reject("peaks");
      break;
    case OscStateKind::Coherent:
    case OscStateKind::Cat:
      reject("nbar"); reject("delta"); reject("peaks");
      out["alpha_re"] = number_or(in, pointer, "alpha_re", 1.0);
      out["alpha_im"] = number_or(in, pointer, "alpha_im", 0.0);
      break;
    case OscStateKind::Thermal:
      reject("alpha_re"); reject("alpha_im"); reject("delta"); reject("peaks");
      out["nbar"] = number_or(in, pointer, "nbar", 1.0);
      if (out["nbar"].get<double>() < 0) fail(pointer + "/nbar", "must be >= 0");
      break;
    case OscStateKind::Gkp:
      reject("alpha_re"); reject("alpha_im"); reject("nbar");
      out["delta"] = number_or(in, pointer, "delta", 0.3);
      check_positive(out["delta"].get<double>(), pointer + "/delta");
      out["peaks"] = integer_or(in, pointer, "peaks", 3);
      if (out["peaks"].get<int>() < 1) fail(pointer + "/peaks", "must be >= 1");
      break;
  }
  return out;
}

json default_states() {
  json arr = json::array();
  arr.push_back({{"kind", "vacuum"}});
  arr.push_back({{"kind", "coherent"}, {"alpha_re", 1.0}, {"alpha_im", 0.0}});
  arr.push_back({{"kind", "thermal"}, {"nbar", 1.0}});
  arr.push_back({{"kind", "cat"}, {"alpha_re", 1.0}, {"alpha_im", 0.0}});
  arr.push_back({{"kind", "gkp"}, {"delta", 0.3}, {"peaks", 3}});
  return arr;
}

json resolve_noise_grid(const json& in, const std::string& pointer) {
  require_keys(in, pointer, {"channels", "lambdas", "lambda_max", "points"});
  json out;
  json channels = json::array();
  if (in.contains("channels")) {
    if (!in["channels"].is_array()) fail(pointer + "/channels", "expected an array");
    for (size_t i = 0; i < in["channels"].size(); ++i) {
      const json& c = in["channels"][i];
      if (!c.is_string()) fail(pointer + "/channels/" + std::to_string(i), "expected a string");
      try {
        noise_kind_from_string(c.get<std::string>());
      } catch (const std::exception& e) {
        fail(pointer + "/channels/" + std::to_string(i), e.what());
      }
      channels.push_back(c);
    }
    if (channels.empty()) fail(pointer + "/channels", "must not be empty");
  } else {
    for (NoiseKind k : all_noise_kinds()) channels.push_back(noise_kind_name(k));
  }
  out["channels"] = channels;

  if (in.contains("lambdas") && (in.contains("lambda_max") || in.contains("points")))
    fail(pointer, "give either lambdas or lambda_max/points, not both");
  json lambdas = json::array();
  if (in.contains("lambdas")) {
    if (!in["lambdas"].is_array() || in["lambdas"].empty())
      fail(pointer + "/lambdas", "expected a non-empty array");
    for (size_t i = 0; i < in["lambdas"].size(); ++i) {
      const json& l = in["lambdas"][i];
      if (!l.is_number() || l.get<double>() < 0)
        fail(pointer + "/lambdas/" + std::to_string(i), "expected a number >= 0");
      lambdas.push_back(l.get<double>());
    }
  } else {
    const double lmax = number_or(in, pointer, "lambda_max", 0.05);
    if (lmax < 0) fail(pointer + "/lambda_max", "must be >= 0");
    const int points = integer_or(in, pointer, "points", 9);
    if (points < 2) fail(pointer + "/points", "must be >= 2");
    for (int i = 0; i < points; ++i) lambdas.push_back(lmax * double(i) / double(points - 1));
  }
  out["lambdas"] = lambdas;
  return out;
}

json resolve_single_channel(const json& in, const std::string& pointer) {
  require_keys(in, pointer, {"channel", "lambda"});
  if (!in.contains("channel") || !in["channel"].is_string())
    fail(pointer + "/channel", "expected a string");
  try {
    noise_kind_from_string(in["channel"].get<std::string>());
  } catch (const std::exception& e) {
    fail(pointer + "/channel", e.what());
  }
  json out;
  out["channel"] = in["channel"];
  out["lambda"] = number_or(in, pointer, "lambda", 0.05);
  if (out["lambda"].get<double>() < 0) fail(pointer + "/lambda", "must be >= 0");
  return out;
}

}  // namespace

json resolve_config(const json& config) {
  if (!config.is_object()) fail("", "config must be a JSON object");
  require_keys(config, "",
               {"experiment", "cutoff", "seed", "params", "dispersive", "state", "states",
                "noise", "times", "curve", "grid", "output_basename"});
  if (!config.contains("experiment") || !config["experiment"].is_string())
    fail("/experiment", "required string, one of the names from `list`");
  const std::string exp = config["experiment"].get<std::string>();
  if (!kExperiments.count(exp)) fail("/experiment", "unknown experiment '" + exp + "'");

  const auto reject_block = [&](const char* key) {
    if (config.contains(key))
      fail(std::string("/") + key, "not used by experiment '" + exp + "'");
  };

  json out;
  out["experiment"] = exp;
  out["seed"] = integer_or(config, "", "seed", 0);
  if (config.contains("output_basename")) {
    if (!config["output_basename"].is_string())
      fail("/output_basename", "expected a string");
    out["output_basename"] = config["output_basename"];
  } else {
    out["output_basename"] = exp;
  }

  int default_cutoff = 120;
  if (exp == "dispersive") default_cutoff = 80;
  if (exp == "noise-sweep" || exp == "wigner-snapshots") default_cutoff = 60;
  const int cutoff = integer_or(config, "", "cutoff", default_cutoff);
  if (cutoff < 1) fail("/cutoff", "must be >= 1");
  out["cutoff"] = cutoff;

  const json params_in = config.value("params", json::object());
  const json empty = json::object();

  if (exp == "free-evolution") {
    reject_block("dispersive"); reject_block("state"); reject_block("states");
    reject_block("noise"); reject_block("curve"); reject_block("grid");
    out["params"] = resolve_sensing(params_in, "/params", false, false);
    const json times = config.value("times", empty);
    require_keys(times, "/times", {"max", "points"});
    const double tau = 2.0 * kPi / out["params"]["omega"].get<double>();
    json t;
    t["max"] = number_or(times, "/times", "max", 2.0 * tau);
    check_positive(t["max"].get<double>(), "/times/max");
    t["points"] = integer_or(times, "/times", "points", 201);
    if (t["points"].get<int>() < 2) fail("/times/points", "must be >= 2");
    out["times"] = t;
  } else if (exp == "geometric") {
    reject_block("dispersive"); reject_block("states"); reject_block("noise");
    reject_block("times"); reject_block("curve"); reject_block("grid");
    out["params"] = resolve_sensing(params_in, "/params", false, true);
    out["state"] = resolve_state(config.value("state", json{{"kind", "vacuum"}}), "/state");
  } else if (exp == "freq-switch") {
    reject_block("dispersive"); reject_block("state"); reject_block("states");
    reject_block("noise"); reject_block("times"); reject_block("grid");
    out["params"] = resolve_sensing(params_in, "/params", true, false);
    const json curve = config.value("curve", empty);
    require_keys(curve, "/curve", {"r_min", "r_max", "points"});
    json c;
    c["r_min"] = number_or(curve, "/curve", "r_min", 0.0);
    c["r_max"] = number_or(curve, "/curve", "r_max", 1.5);
    if (c["r_min"].get<double>() < 0) fail("/curve/r_min", "must be >= 0");
    if (!(c["r_max"].get<double>() > c["r_min"].get<double>()))
      fail("/curve/r_max", "must be > r_min");
    c["points"] = integer_or(curve, "/curve", "points", 301);
    if (c["points"].get<int>() < 2) fail("/curve/points", "must be >= 2");
    out["curve"] = c;
  } else if (exp == "dispersive") {
    reject_block("params"); reject_block("states"); reject_block("noise");
    reject_block("times"); reject_block("curve"); reject_block("grid");
    const json d_in = config.value("dispersive", empty);
    require_keys(d_in, "/dispersive",
                 {"chi", "alpha", "t", "n_loops", "squeeze_db", "squeeze_r"});
    json d;
    d["chi"] = number_or(d_in, "/dispersive", "chi", 1.0);
    if (d["chi"].get<double>() < 0) fail("/dispersive/chi", "must be >= 0");
    d["alpha"] = number_or(d_in, "/dispersive", "alpha", 0.5);
    if (d["alpha"].get<double>() < 0) fail("/dispersive/alpha", "must be >= 0");
    d["t"] = number_or(d_in, "/dispersive", "t", kPi / 2.0);
    if (d["t"].get<double>() < 0) fail("/dispersive/t", "must be >= 0");
    d["n_loops"] = integer_or(d_in, "/dispersive", "n_loops", 1);
    if (d["n_loops"].get<int>() < 1) fail("/dispersive/n_loops", "must be >= 1");
    if (d_in.contains("squeeze_db") && d_in.contains("squeeze_r"))
      fail("/dispersive", "give either squeeze_db or squeeze_r, not both");
    if (d_in.contains("squeeze_r")) {
      const double r = number_or(d_in, "/dispersive", "squeeze_r", 0.0);
      if (r < 0) fail("/dispersive/squeeze_r", "must be >= 0");
      d["squeeze_r"] = r;
    } else {
      const double db = number_or(d_in, "/dispersive", "squeeze_db", 15.0);
      if (db < 0) fail("/dispersive/squeeze_db", "must be >= 0");
      d["squeeze_db"] = db;
    }
    out["dispersive"] = d;
    out["state"] = resolve_state(config.value("state", json{{"kind", "vacuum"}}), "/state");
  } else if (exp == "noise-sweep") {
    reject_block("dispersive"); reject_block("state"); reject_block("times");
    reject_block("curve"); reject_block("grid");
    out["params"] = resolve_sensing(params_in, "/params", false, true);
    out["noise"] = resolve_noise_grid(config.value("noise", empty), "/noise");
    json states = json::array();
    if (config.contains("states")) {
      if (!config["states"].is_array() || config["states"].empty())
        fail("/states", "expected a non-empty array");
      for (size_t i = 0; i < config["states"].size(); ++i)
        states.push_back(resolve_state(config["states"][i], "/states/" + std::to_string(i)));
    } else {
      states = default_states();
    }
    out["states"] = states;
  } else if (exp == "wigner-snapshots") {
    reject_block("dispersive"); reject_block("states"); reject_block("times");
    reject_block("curve");
    out["params"] = resolve_sensing(params_in, "/params", false, true);
    out["state"] = resolve_state(config.value("state", json{{"kind", "vacuum"}}), "/state");
    if (config.contains("noise"))
      out["noise"] = resolve_single_channel(config["noise"], "/noise");
    const json grid = config.value("grid", empty);
    require_keys(grid, "/grid", {"x_min", "x_max", "p_min", "p_max", "nx", "np"});
    json g;
    g["x_min"] = number_or(grid, "/grid", "x_min", -4.0);
    g["x_max"] = number_or(grid, "/grid", "x_max", 4.0);
    g["p_min"] = number_or(grid, "/grid", "p_min", -4.0);
    g["p_max"] = number_or(grid, "/grid", "p_max", 4.0);
    if (!(g["x_max"].get<double>() > g["x_min"].get<double>()))
      fail("/grid/x_max", "must be > x_min");
    if (!(g["p_max"].get<double>() > g["p_min"].get<double>()))
      fail("/grid/p_max", "must be > p_min");
    g["nx"] = integer_or(grid, "/grid", "nx", 81);
    g["np"] = integer_or(grid, "/grid", "np", 81);
    if (g["nx"].get<int>() < 2) fail("/grid/nx", "must be >= 2");
    if (g["np"].get<int>() < 2) fail("/grid/np", "must be >= 2");
    out["grid"] = g;
  } else if (exp == "sensitivity-curve") {
    reject_block("params"); reject_block("dispersive"); reject_block("state");
    reject_block("states"); reject_block("noise"); reject_block("times");
    reject_block("grid");
    const json curve = config.value("curve", empty);
    require_keys(curve, "/curve", {"db_min", "db_max", "points"});
    json c;
    c["db_min"] = number_or(curve, "/curve", "db_min", 0.0);
    c["db_max"] = number_or(curve, "/curve", "db_max", 15.0);
    if (c["db_min"].get<double>() < 0) fail("/curve/db_min", "must be >= 0");
    if (!(c["db_max"].get<double>() > c["db_min"].get<double>()))
      fail("/curve/db_max", "must be > db_min");
    c["points"] = integer_or(curve, "/curve", "points", 301);
    if (c["points"].get<int>() < 2) fail("/curve/points", "must be >= 2");
    out["curve"] = c;
  }
  return out;
}

json load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  json parsed;
  try {
    parsed = json::parse(text);
  } catch (const json::parse_error& e) {
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') { ++line; col = 1; } else { ++col; }
    }
    std::ostringstream msg;
    msg << path.string() << ":" << line << ":" << col << ": " << e.what();
    throw ConfigError(msg.str());
  }
  return parsed;
}

}  // namespace geomsense
