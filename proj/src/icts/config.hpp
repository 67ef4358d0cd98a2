#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "icts/spectral.hpp"
#include "icts/tomography.hpp"

namespace icts::cfg {

struct GridSpec {
  int lobes = 192;
  int count = 8193;
};

struct CoherenceSpec {
  std::vector<double> gains{0.05, 0.1, 0.3};
  std::vector<double> mu_values{0.0, 0.25, 0.5, 0.75, 1.0};
  double tolerance = 1e-5;
  int oracle_cutoff = 12;
  bool low_gain = false;  // compare against the gain->0 law g1 = |mu|
};

// Correlation-vs-delay export, in units of triangle widths around the apex.
struct G1Export {
  double tau_abs = 1.0;
  double offset_start = -1.5;
  double offset_stop = 1.5;
  int count = 201;
};

struct RunConfig {
  std::optional<spectral::CrystalParams> crystal;
  std::optional<spectral::PumpParams> pump;
  spectral::GeometryParams geometry;
  std::optional<tomo::Sample> sample;
  std::optional<tomo::ScanConfig> scan;
  std::optional<tomo::DetectionParams> detection;
  std::optional<spectral::FilterSpec> filter;
  std::optional<GridSpec> grid;
  CoherenceSpec coherence;
  std::optional<G1Export> g1;
  std::string format = "both";  // csv | json | both
  std::uint64_t seed = 0;

  // Canonical value form: defaults materialized, keys sorted. parse(to_json())
  // reproduces the config exactly.
  nlohmann::json to_json() const;

  // FNV-1a 64 over the canonical dump; embedded in every output file.
  std::string hash() const;

  // Crystal with sigma resolved from the pump section (when present) and the
  // signal wavelength derived when omitted. Throws ConfigError if absent.
  spectral::CrystalParams resolved_crystal() const;
};

// Schema-validating parse; unknown keys are rejected with their field path.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig parse_config_text(const std::string& text);

std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace icts::cfg
