#include "gyre/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <map>

#include "gyre/errors.hpp"
#include "json.hpp"

namespace gyre {

using nlohmann::json;

std::string_view to_string(Experiment e) {
  switch (e) {
    case Experiment::verify_convergence: return "verify-convergence";
    case Experiment::verify_eta: return "verify-eta";
    case Experiment::gyre: return "gyre";
    case Experiment::tracer: return "tracer";
  }
  return "?";
}

Experiment parse_experiment(std::string_view s) {
  for (Experiment e : {Experiment::verify_convergence, Experiment::verify_eta,
                       Experiment::gyre, Experiment::tracer}) {
    if (s == to_string(e)) return e;
  }
  throw ConfigError("experiment: unknown value '" + std::string(s) +
                    "' (expected verify-convergence, verify-eta, gyre or tracer)");
}

double parse_length(std::string_view text) {
  std::size_t a = 0;
  while (a < text.size() && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
  text.remove_prefix(a);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc()) {
    throw ConfigError("length '" + std::string(text) + "' does not start with a number");
  }
  std::string_view unit(ptr, text.data() + text.size() - ptr);
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front()))) unit.remove_prefix(1);
  while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.back()))) unit.remove_suffix(1);
  if (unit.empty() || unit == "m") return value;
  if (unit == "km") return value * 1e3;
  throw ConfigError("length '" + std::string(text) + "' has unit '" +
                    std::string(unit) + "' (expected m or km)");
}

namespace {

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key + ": " + what);
}

double number(const json& v, const std::string& key) {
  if (!v.is_number()) fail(key, "expected a number");
  return v.get<double>();
}

double length(const json& v, const std::string& key) {
  if (v.is_string()) {
    try {
      return parse_length(v.get<std::string>());
    } catch (const ConfigError& e) {
      fail(key, e.what());
    }
  }
  return number(v, key);
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) fail(key, "expected an integer");
  return v.get<int>();
}

bool boolean(const json& v, const std::string& key) {
  if (!v.is_boolean()) fail(key, "expected true or false");
  return v.get<bool>();
}

std::string text(const json& v, const std::string& key) {
  if (!v.is_string()) fail(key, "expected a string");
  return v.get<std::string>();
}

template <class F>
auto parsed(const json& v, const std::string& key, F parse) {
  try {
    return parse(text(v, key));
  } catch (const ConfigError& e) {
    fail(key, e.what());
  }
}

std::vector<double> numbers(const json& v, const std::string& key) {
  if (!v.is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  for (const json& x : v) out.push_back(number(x, key));
  return out;
}

SampleConvention parse_convention(std::string_view s) {
  if (s == "point") return SampleConvention::point;
  if (s == "cell-average") return SampleConvention::cell_average;
  throw ConfigError("unknown convention '" + std::string(s) +
                    "' (expected point or cell-average)");
}

std::string_view convention_name(SampleConvention c) {
  return c == SampleConvention::point ? "point" : "cell-average";
}

TracerDistribution parse_distribution(std::string_view s) {
  if (s == "uniform") return TracerDistribution::uniform;
  if (s == "truncated-gaussian") return TracerDistribution::truncated_gaussian;
  throw ConfigError("unknown distribution '" + std::string(s) +
                    "' (expected uniform or truncated-gaussian)");
}

std::string_view distribution_name(TracerDistribution d) {
  return d == TracerDistribution::uniform ? "uniform" : "truncated-gaussian";
}

using Setter = std::function<void(ExperimentConfig&, const json&, const std::string&)>;

void apply_object(const json& obj, const std::string& prefix,
                  const std::map<std::string, Setter>& table, ExperimentConfig& cfg) {
  if (!obj.is_object()) fail(prefix.empty() ? "config" : prefix, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    const auto it = table.find(key);
    if (it == table.end()) fail(full, "unknown key");
    it->second(cfg, value, full);
  }
}

const std::map<std::string, Setter>& ansatz_table() {
  static const std::map<std::string, Setter> t = {
      {"eta", [](auto& c, const json& v, const auto& k) { c.ansatz.eta = number(v, k); }},
      {"epsilon", [](auto& c, const json& v, const auto& k) { c.ansatz.epsilon = number(v, k); }},
      {"omega", [](auto& c, const json& v, const auto& k) { c.ansatz.omega = number(v, k); }},
      {"froude", [](auto& c, const json& v, const auto& k) { c.ansatz.froude = number(v, k); }},
      {"reynolds", [](auto& c, const json& v, const auto& k) { c.ansatz.reynolds = number(v, k); }},
      {"rossby", [](auto& c, const json& v, const auto& k) { c.ansatz.rossby = number(v, k); }},
  };
  return t;
}

const std::map<std::string, Setter>& gyre_table() {
  static const std::map<std::string, Setter> t = {
      {"f0", [](auto& c, const json& v, const auto& k) { c.gyre.f0 = number(v, k); }},
      {"beta", [](auto& c, const json& v, const auto& k) { c.gyre.beta = number(v, k); }},
      {"tau0", [](auto& c, const json& v, const auto& k) { c.gyre.tau0 = number(v, k); }},
      {"nu", [](auto& c, const json& v, const auto& k) { c.gyre.nu = number(v, k); }},
      {"rho", [](auto& c, const json& v, const auto& k) { c.gyre.rho = number(v, k); }},
      {"g_r", [](auto& c, const json& v, const auto& k) { c.gyre.g_r = number(v, k); }},
      {"h0", [](auto& c, const json& v, const auto& k) { c.gyre.h0 = length(v, k); }},
      {"width", [](auto& c, const json& v, const auto& k) { c.gyre.width = length(v, k); }},
      {"length", [](auto& c, const json& v, const auto& k) { c.gyre.length = length(v, k); }},
      {"beta_origin",
       [](auto& c, const json& v, const auto& k) {
         if (v.is_null()) c.gyre.beta_origin.reset();
         else c.gyre.beta_origin = length(v, k);
       }},
  };
  return t;
}

std::optional<double> optional_number(const json& v, const std::string& key) {
  if (v.is_null()) return std::nullopt;
  return number(v, key);
}

const std::map<std::string, Setter>& top_table() {
  static const std::map<std::string, Setter> t = {
      {"experiment", [](auto&, const json& v, const auto& k) { text(v, k); }},
      {"splitting", [](auto& c, const json& v, const auto& k) { c.splitting = parsed(v, k, parse_splitting); }},
      {"limiter", [](auto& c, const json& v, const auto& k) { c.limiter = parsed(v, k, parse_limiter); }},
      {"entropy_fix", [](auto& c, const json& v, const auto& k) { c.entropy_fix = boolean(v, k); }},
      {"seed",
       [](auto& c, const json& v, const auto& k) {
         if (!v.is_number_unsigned()) fail(k, "expected a non-negative integer");
         c.seed = v.template get<std::uint64_t>();
       }},
      {"workers", [](auto& c, const json& v, const auto& k) { c.workers = integer(v, k); }},
      {"out_dir", [](auto& c, const json& v, const auto& k) { c.out_dir = text(v, k); }},
      {"ansatz", [](auto& c, const json& v, const auto& k) { apply_object(v, k, ansatz_table(), c); }},
      {"levels",
       [](auto& c, const json& v, const auto& k) {
         if (!v.is_array()) fail(k, "expected an array of integers");
         c.levels.clear();
         for (const json& x : v) c.levels.push_back(integer(x, k));
       }},
      {"base_dt", [](auto& c, const json& v, const auto& k) { c.base_dt = number(v, k); }},
      {"verify_t_end", [](auto& c, const json& v, const auto& k) { c.verify_t_end = number(v, k); }},
      {"etas", [](auto& c, const json& v, const auto& k) { c.etas = numbers(v, k); }},
      {"eta_n", [](auto& c, const json& v, const auto& k) { c.eta_n = integer(v, k); }},
      {"eta_omega", [](auto& c, const json& v, const auto& k) { c.eta_omega = number(v, k); }},
      {"eta_t_end", [](auto& c, const json& v, const auto& k) { c.eta_t_end = number(v, k); }},
      {"convention", [](auto& c, const json& v, const auto& k) { c.convention = parsed(v, k, parse_convention); }},
      {"gyre", [](auto& c, const json& v, const auto& k) { apply_object(v, k, gyre_table(), c); }},
      {"dx", [](auto& c, const json& v, const auto& k) { c.dx = length(v, k); }},
      {"dt", [](auto& c, const json& v, const auto& k) { c.dt = optional_number(v, k); }},
      {"cfl", [](auto& c, const json& v, const auto& k) { c.cfl = optional_number(v, k); }},
      {"years", [](auto& c, const json& v, const auto& k) { c.years = number(v, k); }},
      {"snapshot_days", [](auto& c, const json& v, const auto& k) { c.snapshot_days = number(v, k); }},
      {"output_every", [](auto& c, const json& v, const auto& k) { c.output_every = integer(v, k); }},
      {"spinup_state", [](auto& c, const json& v, const auto& k) { c.spinup_state = text(v, k); }},
      {"spinup_years", [](auto& c, const json& v, const auto& k) { c.spinup_years = number(v, k); }},
      {"tracer_dt", [](auto& c, const json& v, const auto& k) { c.tracer_dt = optional_number(v, k); }},
      {"tracer_days", [](auto& c, const json& v, const auto& k) { c.tracer_days = number(v, k); }},
      {"tracer_snapshot_days",
       [](auto& c, const json& v, const auto& k) { c.tracer_snapshot_days = numbers(v, k); }},
      {"circles",
       [](auto& c, const json& v, const auto& k) {
         if (!v.is_array()) fail(k, "expected an array of {xc, yc, r} objects");
         c.circles.clear();
         for (const json& x : v) {
           if (!x.is_object()) fail(k, "expected an array of {xc, yc, r} objects");
           CircleSpec s;
           bool have[3] = {};
           for (const auto& [ck, cv] : x.items()) {
             const std::string full = k + "." + ck;
             if (ck == "xc") { s.xc = length(cv, full); have[0] = true; }
             else if (ck == "yc") { s.yc = length(cv, full); have[1] = true; }
             else if (ck == "r") { s.r = length(cv, full); have[2] = true; }
             else fail(full, "unknown key");
           }
           if (!have[0]) fail(k + ".xc", "missing required key");
           if (!have[1]) fail(k + ".yc", "missing required key");
           if (!have[2]) fail(k + ".r", "missing required key");
           c.circles.push_back(s);
         }
       }},
      {"distribution", [](auto& c, const json& v, const auto& k) { c.distribution = parsed(v, k, parse_distribution); }},
      {"tracer_limiter", [](auto& c, const json& v, const auto& k) { c.tracer_limiter = parsed(v, k, parse_limiter); }},
  };
  return t;
}

json parse_json(std::string_view text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(what + ": " + e.what());
  }
}

void positive(double v, const char* key) {
  if (!(v > 0.0) || !std::isfinite(v)) fail(key, "must be positive");
}

}  // namespace

void ExperimentConfig::validate() const {
  if (workers < 1) fail("workers", "must be at least 1");
  if (dt && cfl) fail("dt", "conflicts with cfl; give one or the other");
  if (dt) positive(*dt, "dt");
  if (cfl && !(*cfl > 0.0 && *cfl <= 1.0)) fail("cfl", "must lie in (0, 1]");
  positive(ansatz.froude, "ansatz.froude");
  positive(ansatz.reynolds, "ansatz.reynolds");
  positive(ansatz.rossby, "ansatz.rossby");
  if (levels.empty()) fail("levels", "must not be empty");
  for (int n : levels) {
    if (n < 1) fail("levels", "every level needs at least one cell");
  }
  positive(base_dt, "base_dt");
  positive(verify_t_end, "verify_t_end");
  if (eta_n < 1) fail("eta_n", "must be at least 1");
  positive(eta_t_end, "eta_t_end");
  positive(gyre.g_r, "gyre.g_r");
  positive(gyre.rho, "gyre.rho");
  positive(gyre.h0, "gyre.h0");
  positive(gyre.width, "gyre.width");
  positive(gyre.length, "gyre.length");
  if (!(gyre.nu >= 0.0)) fail("gyre.nu", "must be non-negative");
  positive(dx, "dx");
  if (dx > gyre.width / 2) fail("dx", "leaves fewer than two cells across the basin");
  positive(years, "years");
  positive(snapshot_days, "snapshot_days");
  if (output_every < 1) fail("output_every", "must be at least 1");
  positive(spinup_years, "spinup_years");
  if (tracer_dt) positive(*tracer_dt, "tracer_dt");
  positive(tracer_days, "tracer_days");
  for (const CircleSpec& c : circles) {
    if (!(c.r > 0.0)) fail("circles", "radius must be positive");
  }
}

ExperimentConfig default_experiment_config(Experiment e) {
  ExperimentConfig cfg;
  cfg.experiment = e;
  cfg.limiter = (e == Experiment::gyre || e == Experiment::tracer) ? Limiter::mc
                                                                   : Limiter::none;
  return cfg;
}

ExperimentConfig parse_config(std::string_view json_text,
                              std::string_view overrides_json,
                              std::optional<Experiment> fallback) {
  const json doc = parse_json(json_text, "config");
  const json over = parse_json(overrides_json, "overrides");
  if (!doc.is_object()) fail("config", "expected an object");
  if (!over.is_object()) fail("overrides", "expected an object");

  std::optional<Experiment> exp = fallback;
  for (const json* src : {&doc, &over}) {
    if (src->contains("experiment")) {
      exp = parsed((*src)["experiment"], "experiment", parse_experiment);
    }
  }
  if (!exp) fail("experiment", "missing required key");

  ExperimentConfig cfg = default_experiment_config(*exp);
  apply_object(doc, "", top_table(), cfg);
  apply_object(over, "", top_table(), cfg);
  cfg.experiment = *exp;
  cfg.validate();
  return cfg;
}

std::string to_json(const ExperimentConfig& c) {
  const auto opt = [](const std::optional<double>& v) {
    return v ? json(*v) : json(nullptr);
  };
  json circles = json::array();
  for (const CircleSpec& s : c.circles) circles.push_back({{"xc", s.xc}, {"yc", s.yc}, {"r", s.r}});
  json j = {
      {"experiment", to_string(c.experiment)},
      {"splitting", to_string(c.splitting)},
      {"limiter", to_string(c.limiter)},
      {"entropy_fix", c.entropy_fix},
      {"seed", c.seed},
      {"workers", c.workers},
      {"out_dir", c.out_dir},
      {"ansatz",
       {{"eta", c.ansatz.eta},
        {"epsilon", c.ansatz.epsilon},
        {"omega", c.ansatz.omega},
        {"froude", c.ansatz.froude},
        {"reynolds", c.ansatz.reynolds},
        {"rossby", c.ansatz.rossby}}},
      {"levels", c.levels},
      {"base_dt", c.base_dt},
      {"verify_t_end", c.verify_t_end},
      {"etas", c.etas},
      {"eta_n", c.eta_n},
      {"eta_omega", c.eta_omega},
      {"eta_t_end", c.eta_t_end},
      {"convention", convention_name(c.convention)},
      {"gyre",
       {{"f0", c.gyre.f0},
        {"beta", c.gyre.beta},
        {"tau0", c.gyre.tau0},
        {"nu", c.gyre.nu},
        {"rho", c.gyre.rho},
        {"g_r", c.gyre.g_r},
        {"h0", c.gyre.h0},
        {"width", c.gyre.width},
        {"length", c.gyre.length},
        {"beta_origin", opt(c.gyre.beta_origin)}}},
      {"dx", c.dx},
      {"dt", opt(c.dt)},
      {"cfl", opt(c.cfl)},
      {"years", c.years},
      {"snapshot_days", c.snapshot_days},
      {"output_every", c.output_every},
      {"spinup_state", c.spinup_state},
      {"spinup_years", c.spinup_years},
      {"tracer_dt", opt(c.tracer_dt)},
      {"tracer_days", c.tracer_days},
      {"tracer_snapshot_days", c.tracer_snapshot_days},
      {"circles", circles},
      {"distribution", distribution_name(c.distribution)},
      {"tracer_limiter", to_string(c.tracer_limiter)},
  };
  return j.dump(2) + "\n";
}

}  // namespace gyre
