#include "icts/config.hpp"

#include <cinttypes>
#include <cmath>
#include <set>

#include "icts/errors.hpp"

namespace icts::cfg {

using nlohmann::json;

namespace {

// Tracks which keys a section consumed and rejects the rest with a full path.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ConfigError(path_ + ": expected an object");
  }

  bool has(const std::string& key) {
    known_.insert(key);
    return obj_.contains(key);
  }

  const json& at(const std::string& key) {
    known_.insert(key);
    return obj_.at(key);
  }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number())
      throw ConfigError(path_ + "." + key + ": expected a number");
    return v.get<double>();
  }

  double number_or(const std::string& key, double fallback) {
    return has(key) ? number(key) : fallback;
  }

  std::int64_t integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_integer())
      throw ConfigError(path_ + "." + key + ": expected an integer");
    return v.get<std::int64_t>();
  }

  std::int64_t integer_or(const std::string& key, std::int64_t fallback) {
    return has(key) ? integer(key) : fallback;
  }

  bool boolean_or(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean())
      throw ConfigError(path_ + "." + key + ": expected a boolean");
    return v.get<bool>();
  }

  std::string text(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string())
      throw ConfigError(path_ + "." + key + ": expected a string");
    return v.get<std::string>();
  }

  std::vector<double> number_array(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array())
      throw ConfigError(path_ + "." + key + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& item : v) {
      if (!item.is_number())
        throw ConfigError(path_ + "." + key + ": expected an array of numbers");
      out.push_back(item.get<double>());
    }
    return out;
  }

  const std::string& path() const { return path_; }

  void finish() const {
    for (const auto& [key, value] : obj_.items()) {
      (void)value;
      if (!known_.count(key))
        throw ConfigError(path_ + "." + key + ": unknown key");
    }
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> known_;
};

spectral::CrystalParams parse_crystal(const json& obj) {
  Section s(obj, "crystal");
  spectral::CrystalParams c;
  c.length_m = s.number("length_m");
  c.sigma_per_m = s.number_or("sigma_per_m", 1.0);
  c.inv_gv_signal_s_per_m = s.number("inv_gv_signal_s_per_m");
  c.inv_gv_idler_s_per_m = s.number("inv_gv_idler_s_per_m");
  c.lambda_pump_m = s.number("lambda_pump_m");
  c.lambda_idler_m = s.number("lambda_idler_m");
  c.lambda_signal_m = s.number_or(
      "lambda_signal_m",
      spectral::CrystalParams::derive_signal_wavelength(c.lambda_pump_m,
                                                        c.lambda_idler_m));
  s.finish();
  try {
    c.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("crystal: ") + e.what());
  }
  return c;
}

spectral::PumpParams parse_pump(const json& obj) {
  Section s(obj, "pump");
  spectral::PumpParams p;
  p.pump_flux_per_s_m2 = s.number("pump_flux_per_s_m2");
  p.chi2_m_per_v = s.number("chi2_m_per_v");
  p.n_signal = s.number("n_signal");
  p.n_idler = s.number("n_idler");
  p.n_pump = s.number("n_pump");
  p.omega_signal_rad_s = s.number("omega_signal_rad_s");
  p.omega_idler_rad_s = s.number("omega_idler_rad_s");
  p.omega_pump_rad_s = s.number("omega_pump_rad_s");
  s.finish();
  try {
    p.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("pump: ") + e.what());
  }
  return p;
}

spectral::GeometryParams parse_geometry(const json& obj) {
  Section s(obj, "geometry");
  spectral::GeometryParams g;
  g.z1_m = s.number_or("z1_m", 0.0);
  g.z2_m = s.number_or("z2_m", 0.0);
  g.z3_m = s.number_or("z3_m", 0.0);
  g.z4_m = s.number_or("z4_m", 0.0);
  s.finish();
  return g;
}

tomo::Sample parse_sample(const json& obj) {
  Section s(obj, "sample");
  tomo::Sample sample;
  sample.path_multiplier = static_cast<int>(s.integer_or("path_multiplier", 2));
  const json& layers = s.at("layers");
  if (!layers.is_array()) throw ConfigError("sample.layers: expected an array");
  int i = 0;
  for (const auto& item : layers) {
    Section layer(item, "sample.layers[" + std::to_string(i) + "]");
    tomo::Layer out;
    out.depth_m = layer.number("depth_m");
    out.tau = std::polar(layer.number("tau_abs"),
                         layer.number_or("tau_phase_rad", 0.0));
    layer.finish();
    sample.layers.push_back(out);
    ++i;
  }
  s.finish();
  try {
    sample.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("sample: ") + e.what());
  }
  return sample;
}

tomo::ScanConfig parse_scan(const json& obj) {
  Section s(obj, "scan");
  tomo::ScanConfig scan;
  scan.delay_start_m = s.number("delay_start_m");
  scan.delay_stop_m = s.number("delay_stop_m");
  scan.coarse_step_m = s.number("coarse_step_m");
  scan.fine_count = static_cast<int>(s.integer_or("fine_count", 16));
  scan.fine_step_m = s.number("fine_step_m");
  s.finish();
  return scan;
}

tomo::DetectionParams parse_detection(const json& obj) {
  Section s(obj, "detection");
  tomo::DetectionParams det;
  det.mean_counts_n0 = s.number("mean_counts_n0");
  det.dark_counts = s.number_or("dark_counts", 0.0);
  det.system_visibility = s.number_or("system_visibility", 1.0);
  s.finish();
  try {
    det.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("detection: ") + e.what());
  }
  return det;
}

spectral::FilterSpec parse_filter(const json& obj) {
  Section s(obj, "filter");
  spectral::FilterSpec f;
  f.center_wavelength_m = s.number("center_wavelength_m");
  f.bandwidth_fwhm_m = s.number("bandwidth_fwhm_m");
  const std::string shape = s.has("shape") ? s.text("shape") : "rectangular";
  if (shape == "rectangular") {
    f.shape = spectral::FilterShape::rectangular;
  } else if (shape == "gaussian") {
    f.shape = spectral::FilterShape::gaussian;
  } else {
    throw ConfigError("filter.shape: expected \"rectangular\" or \"gaussian\"");
  }
  s.finish();
  try {
    f.validate();
  } catch (const Error& e) {
    throw ConfigError(std::string("filter: ") + e.what());
  }
  return f;
}

GridSpec parse_grid(const json& obj) {
  Section s(obj, "grid");
  GridSpec g;
  g.lobes = static_cast<int>(s.integer_or("lobes", 192));
  g.count = static_cast<int>(s.integer_or("count", 8193));
  s.finish();
  if (g.lobes < 1) throw ConfigError("grid.lobes: must be >= 1");
  if (g.count < 1024) throw ConfigError("grid.count: must be >= 1024");
  return g;
}

CoherenceSpec parse_coherence(const json& obj) {
  Section s(obj, "coherence");
  CoherenceSpec c;
  if (s.has("gains")) c.gains = s.number_array("gains");
  if (s.has("mu_values")) c.mu_values = s.number_array("mu_values");
  c.tolerance = s.number_or("tolerance", 1e-5);
  c.oracle_cutoff = static_cast<int>(s.integer_or("oracle_cutoff", 12));
  c.low_gain = s.boolean_or("low_gain", false);
  s.finish();
  for (const double g : c.gains)
    if (!(g > 0.0)) throw ConfigError("coherence.gains: gains must be > 0");
  for (const double mu : c.mu_values)
    if (mu < 0.0 || mu > 1.0)
      throw ConfigError("coherence.mu_values: values must lie in [0, 1]");
  if (!(c.tolerance > 0.0)) throw ConfigError("coherence.tolerance: must be > 0");
  if (c.oracle_cutoff < 2 || c.oracle_cutoff > 20)
    throw ConfigError("coherence.oracle_cutoff: must lie in [2, 20]");
  return c;
}

G1Export parse_g1(const json& obj) {
  Section s(obj, "g1");
  G1Export g;
  g.tau_abs = s.number_or("tau_abs", 1.0);
  g.offset_start = s.number_or("offset_start", -1.5);
  g.offset_stop = s.number_or("offset_stop", 1.5);
  g.count = static_cast<int>(s.integer_or("count", 201));
  s.finish();
  if (g.tau_abs < 0.0 || g.tau_abs > 1.0)
    throw ConfigError("g1.tau_abs: must lie in [0, 1]");
  if (g.count < 2) throw ConfigError("g1.count: must be >= 2");
  if (!(g.offset_stop > g.offset_start))
    throw ConfigError("g1.offset_stop: must exceed g1.offset_start");
  return g;
}

}  // namespace

RunConfig parse_config(const json& doc) {
  Section root(doc, "config");
  RunConfig out;
  if (root.has("crystal")) out.crystal = parse_crystal(root.at("crystal"));
  if (root.has("pump")) out.pump = parse_pump(root.at("pump"));
  if (root.has("geometry")) out.geometry = parse_geometry(root.at("geometry"));
  if (root.has("sample")) out.sample = parse_sample(root.at("sample"));
  if (root.has("scan")) out.scan = parse_scan(root.at("scan"));
  if (root.has("detection")) out.detection = parse_detection(root.at("detection"));
  if (root.has("filter")) out.filter = parse_filter(root.at("filter"));
  if (root.has("grid")) out.grid = parse_grid(root.at("grid"));
  if (root.has("coherence")) out.coherence = parse_coherence(root.at("coherence"));
  if (root.has("g1")) out.g1 = parse_g1(root.at("g1"));
  if (root.has("format")) {
    const std::string fmt = root.text("format");
    if (fmt != "csv" && fmt != "json" && fmt != "both")
      throw ConfigError("config.format: expected \"csv\", \"json\" or \"both\"");
    out.format = fmt;
  }
  if (root.has("seed")) {
    const std::int64_t seed = root.integer("seed");
    if (seed < 0) throw ConfigError("config.seed: must be >= 0");
    out.seed = static_cast<std::uint64_t>(seed);
  }
  root.finish();

  if (out.scan && out.filter) out.scan->filter = out.filter;
  if (out.detection) out.detection->rng_seed = out.seed;
  return out;
}

RunConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  return parse_config(doc);
}

json RunConfig::to_json() const {
  json doc = json::object();
  if (crystal) {
    doc["crystal"] = {{"length_m", crystal->length_m},
                      {"sigma_per_m", crystal->sigma_per_m},
                      {"inv_gv_signal_s_per_m", crystal->inv_gv_signal_s_per_m},
                      {"inv_gv_idler_s_per_m", crystal->inv_gv_idler_s_per_m},
                      {"lambda_pump_m", crystal->lambda_pump_m},
                      {"lambda_signal_m", crystal->lambda_signal_m},
                      {"lambda_idler_m", crystal->lambda_idler_m}};
  }
  if (pump) {
    doc["pump"] = {{"pump_flux_per_s_m2", pump->pump_flux_per_s_m2},
                   {"chi2_m_per_v", pump->chi2_m_per_v},
                   {"n_signal", pump->n_signal},
                   {"n_idler", pump->n_idler},
                   {"n_pump", pump->n_pump},
                   {"omega_signal_rad_s", pump->omega_signal_rad_s},
                   {"omega_idler_rad_s", pump->omega_idler_rad_s},
                   {"omega_pump_rad_s", pump->omega_pump_rad_s}};
  }
  doc["geometry"] = {{"z1_m", geometry.z1_m},
                     {"z2_m", geometry.z2_m},
                     {"z3_m", geometry.z3_m},
                     {"z4_m", geometry.z4_m}};
  if (sample) {
    json layers = json::array();
    for (const auto& layer : sample->layers) {
      layers.push_back({{"depth_m", layer.depth_m},
                        {"tau_abs", std::abs(layer.tau)},
                        {"tau_phase_rad", std::arg(layer.tau)}});
    }
    doc["sample"] = {{"path_multiplier", sample->path_multiplier},
                     {"layers", layers}};
  }
  if (scan) {
    doc["scan"] = {{"delay_start_m", scan->delay_start_m},
                   {"delay_stop_m", scan->delay_stop_m},
                   {"coarse_step_m", scan->coarse_step_m},
                   {"fine_count", scan->fine_count},
                   {"fine_step_m", scan->fine_step_m}};
  }
  if (detection) {
    doc["detection"] = {{"mean_counts_n0", detection->mean_counts_n0},
                        {"dark_counts", detection->dark_counts},
                        {"system_visibility", detection->system_visibility}};
  }
  if (filter) {
    doc["filter"] = {
        {"center_wavelength_m", filter->center_wavelength_m},
        {"bandwidth_fwhm_m", filter->bandwidth_fwhm_m},
        {"shape", filter->shape == spectral::FilterShape::rectangular
                      ? "rectangular"
                      : "gaussian"}};
  }
  if (grid) doc["grid"] = {{"lobes", grid->lobes}, {"count", grid->count}};
  doc["coherence"] = {{"gains", coherence.gains},
                      {"mu_values", coherence.mu_values},
                      {"tolerance", coherence.tolerance},
                      {"oracle_cutoff", coherence.oracle_cutoff},
                      {"low_gain", coherence.low_gain}};
  if (g1) {
    doc["g1"] = {{"tau_abs", g1->tau_abs},
                 {"offset_start", g1->offset_start},
                 {"offset_stop", g1->offset_stop},
                 {"count", g1->count}};
  }
  doc["format"] = format;
  doc["seed"] = seed;
  return doc;
}

std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string RunConfig::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(to_json().dump()));
  return buf;
}

spectral::CrystalParams RunConfig::resolved_crystal() const {
  if (!crystal) throw ConfigError("config: missing required section \"crystal\"");
  spectral::CrystalParams c = *crystal;
  if (pump) c.sigma_per_m = spectral::sigma_from_pump(*pump);
  return c;
}

}  // namespace icts::cfg
