#include "icts/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <vector>

#include "icts/coherence.hpp"
#include "icts/constants.hpp"
#include "icts/errors.hpp"
#include "icts/fock.hpp"
#include "icts/io.hpp"
#include "icts/numerics.hpp"
#include "icts/parallel.hpp"
#include "icts/validate.hpp"

namespace icts::runner {

using nlohmann::json;

namespace {

struct OutputContext {
  std::filesystem::path dir;
  std::string format;  // csv | json | both
  std::string config_hash;
  std::uint64_t seed = 0;
  std::vector<std::string> files;

  bool wants_csv() const { return format == "csv" || format == "both"; }
  bool wants_json() const { return format == "json" || format == "both"; }

  void write(const std::string& name, const std::string& content) {
    const auto path = dir / name;
    io::write_text_file(path.string(), content);
    files.push_back(path.string());
  }

  void write_csv(const std::string& name, const io::CsvTable& table) {
    if (wants_csv()) write(name, io::csv_text(table, config_hash, seed));
  }

  void write_json(const std::string& name, json doc) {
    if (!wants_json()) return;
    doc["config_hash"] = config_hash;
    doc["seed"] = seed;
    doc["version"] = kVersion;
    write(name, doc.dump(2) + "\n");
  }
};

OutputContext make_context(const cfg::RunConfig& config,
                           const std::string& out_dir,
                           std::optional<std::uint64_t> seed_override,
                           std::optional<std::string> format_override) {
  OutputContext ctx;
  ctx.dir = out_dir;
  ctx.format = format_override.value_or(config.format);
  if (ctx.format != "csv" && ctx.format != "json" && ctx.format != "both")
    throw ConfigError("format: expected \"csv\", \"json\" or \"both\"");
  ctx.seed = seed_override.value_or(config.seed);
  ctx.config_hash = config.hash();
  std::error_code ec;
  std::filesystem::create_directories(ctx.dir, ec);
  if (ec) throw IoError("cannot create output directory " + out_dir);
  return ctx;
}

RunOutcome run_coherence(const cfg::RunConfig& config, OutputContext& ctx) {
  const auto& spec = config.coherence;

  struct Row {
    double gain, mu, engine, closed, oracle, leakage, delta;
  };
  std::vector<Row> rows(spec.gains.size() * spec.mu_values.size());

  parallel::parallel_for(rows.size(), [&](std::size_t idx) {
    const double r = spec.gains[idx / spec.mu_values.size()];
    const double mu = spec.mu_values[idx % spec.mu_values.size()];
    coherence::SingleModeSetup setup;
    setup.gain = r;
    setup.mu = mu;
    Row row;
    row.gain = r;
    row.mu = mu;
    row.engine = coherence::degree_of_coherence(setup);
    row.closed = spec.low_gain ? coherence::low_gain_coherence(mu)
                               : coherence::coherence_closed_form(r, mu);
    const auto oracle = fock::oracle_induced_coherence(r, mu, spec.oracle_cutoff);
    row.oracle = oracle.g1_abs;
    row.leakage = oracle.leakage;
    row.delta = std::max({std::abs(row.engine - row.closed),
                          std::abs(row.engine - row.oracle),
                          std::abs(row.closed - row.oracle)});
    rows[idx] = row;
  });

  io::CsvTable table;
  table.header = "gain,mu_abs,g1_moment,g1_closed_form,g1_oracle,max_delta";
  json failures = json::array();
  double worst = 0.0;
  for (const auto& row : rows) {
    table.rows.push_back(
        {row.gain, row.mu, row.engine, row.closed, row.oracle, row.delta});
    worst = std::max(worst, row.delta);
    if (row.delta > spec.tolerance) {
      failures.push_back({{"gain", row.gain}, {"mu", row.mu}, {"delta", row.delta}});
    }
  }

  RunOutcome outcome;
  outcome.exit_code = failures.empty() ? 0 : 1;
  outcome.report = {{"command", "coherence"},
                    {"rows", rows.size()},
                    {"max_delta", worst},
                    {"tolerance", spec.tolerance},
                    {"low_gain", spec.low_gain},
                    {"failures", failures},
                    {"pass", failures.empty()}};
  ctx.write_csv("coherence.csv", table);
  ctx.write_json("coherence.json", outcome.report);
  return outcome;
}

RunOutcome run_spectrum(const cfg::RunConfig& config, OutputContext& ctx) {
  const auto crystal = config.resolved_crystal();
  const auto grid =
      config.grid ? spectral::FrequencyGrid::for_source(crystal, config.grid->lobes,
                                                        config.grid->count)
                  : spectral::FrequencyGrid::for_spectrum(crystal);
  const auto spectrum = spectral::idler_spectrum(crystal, grid);

  io::CsvTable table;
  table.header = "wavelength_nm,intensity";
  const double w_i = crystal.omega_idler();
  for (std::size_t k = 0; k < spectrum.omega_detunings.size(); ++k) {
    const double lambda_nm =
        2.0 * constants::pi * constants::speed_of_light /
        (w_i - spectrum.omega_detunings[k]) * 1e9;
    table.rows.push_back({lambda_nm, spectrum.intensity[k]});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });

  json report = {{"command", "spectrum"},
                 {"center_wavelength_nm", spectrum.center_wavelength_m * 1e9},
                 {"fwhm_nm", spectrum.fwhm_nm},
                 {"fwhm_rad_s", spectrum.fwhm_rad_s},
                 {"signal_flux_per_s", spectral::signal_flux(crystal)},
                 {"coherence_length_m",
                  spectral::coherence_length(crystal).meters}};

  ctx.write_csv("spectrum.csv", table);

  if (config.g1) {
    const auto& g1cfg = *config.g1;
    const spectral::FilterSpec* filter =
        config.filter ? &*config.filter : nullptr;
    const auto g1_grid = filter
                             ? spectral::FrequencyGrid::for_filter(crystal, *filter)
                             : spectral::FrequencyGrid::for_source(crystal);

    // delays chosen in units of the (possibly filtered) correlation width
    double width_s = crystal.coherence_time_s();
    if (filter) {
      width_s = spectral::coherence_length(crystal, filter).meters /
                constants::speed_of_light;
    }
    std::vector<double> delays(static_cast<std::size_t>(g1cfg.count));
    const double apex = spectral::delay_for_offset(crystal, config.geometry, 0.0);
    for (int i = 0; i < g1cfg.count; ++i) {
      const double offset = g1cfg.offset_start +
                            (g1cfg.offset_stop - g1cfg.offset_start) * i /
                                double(g1cfg.count - 1);
      delays[static_cast<std::size_t>(i)] = apex + offset * width_s;
    }
    const auto g1 = spectral::g1_delay_scan(crystal, config.geometry,
                                            g1cfg.tau_abs, delays, g1_grid, filter);

    io::CsvTable g1_table;
    g1_table.header = "delay_s,g1_abs,g1_phase_rad";
    std::vector<double> mags(g1.size());
    for (std::size_t i = 0; i < g1.size(); ++i) {
      mags[i] = std::abs(g1[i]);
      g1_table.rows.push_back({delays[i], mags[i], std::arg(g1[i])});
    }
    ctx.write_csv("g1_delay.csv", g1_table);
    report["g1_fwhm_s"] = numerics::measure_fwhm(delays, mags).width;
    report["g1_filtered"] = filter != nullptr;
  }

  ctx.write_json("spectrum.json", report);
  RunOutcome outcome;
  outcome.report = std::move(report);
  return outcome;
}

json profile_json(const tomo::Profile& profile) {
  json layers = json::array();
  for (const auto& layer : profile.layers) {
    layers.push_back({{"depth_m", layer.depth_m},
                      {"tau_abs", layer.tau_abs},
                      {"peak_visibility", layer.peak_visibility},
                      {"uncertainty_m", layer.uncertainty_m}});
  }
  return {{"command", "scan"},
          {"layers", layers},
          {"n_layers", profile.layers.size()},
          {"threshold", profile.threshold},
          {"warnings", profile.warnings}};
}

RunOutcome run_scan(const cfg::RunConfig& config, OutputContext& ctx) {
  const auto crystal = config.resolved_crystal();
  if (!config.sample) throw ConfigError("config: missing required section \"sample\"");
  if (!config.scan) throw ConfigError("config: missing required section \"scan\"");
  if (!config.detection)
    throw ConfigError("config: missing required section \"detection\"");

  tomo::DetectionParams det = *config.detection;
  det.rng_seed = ctx.seed;

  auto result = tomo::simulate_axial_scan(*config.sample, crystal,
                                          config.geometry, *config.scan, det);
  result.config_hash = ctx.config_hash;
  const auto profile = tomo::reconstruct_profile(result, det.system_visibility);

  ctx.write("scan.csv", io::scan_csv(result));  // primary product, any format

  if (ctx.wants_json()) {
    json points = json::array();
    for (const auto& point : result.points) {
      points.push_back({{"delay_m", point.delay_m},
                        {"visibility", point.visibility},
                        {"phase_rad", point.phase_rad},
                        {"stderr", point.stderr_vis},
                        {"fine_counts", point.fine_counts}});
    }
    ctx.write_json("scan.json",
                   {{"command", "scan"},
                    {"points", points},
                    {"coherence_length_m", result.coherence_length_m},
                    {"path_multiplier", result.path_multiplier},
                    {"lambda_signal_m", result.lambda_signal_m},
                    {"warnings", result.warnings}});
  }

  json report = profile_json(profile);
  ctx.write_json("profile.json", report);
  if (ctx.wants_csv()) {
    io::CsvTable table;
    table.header = "depth_m,tau_abs,peak_visibility,uncertainty_m";
    for (const auto& layer : profile.layers) {
      table.rows.push_back({layer.depth_m, layer.tau_abs, layer.peak_visibility,
                            layer.uncertainty_m});
    }
    ctx.write_csv("profile.csv", table);
  }

  RunOutcome outcome;
  report["files"] = ctx.files;
  outcome.report = std::move(report);
  return outcome;
}

RunOutcome run_validate(OutputContext& ctx) {
  const auto checks = validate::run_validation_suite();
  json report = validate::to_json(checks);
  report["command"] = "validate";
  ctx.write_json("validate.json", report);

  RunOutcome outcome;
  outcome.exit_code = report["all_pass"].get<bool>() ? 0 : 1;
  outcome.report = std::move(report);
  return outcome;
}

}  // namespace

RunOutcome run_command(const cfg::RunConfig& config, const std::string& command,
                       const std::string& out_dir,
                       std::optional<std::uint64_t> seed_override,
                       std::optional<std::string> format_override) {
  OutputContext ctx = make_context(config, out_dir, seed_override, format_override);

  RunOutcome outcome;
  if (command == "coherence") {
    outcome = run_coherence(config, ctx);
  } else if (command == "spectrum") {
    outcome = run_spectrum(config, ctx);
  } else if (command == "scan") {
    outcome = run_scan(config, ctx);
  } else if (command == "validate") {
    outcome = run_validate(ctx);
  } else {
    throw ConfigError("unknown command \"" + command + "\"");
  }
  outcome.report["files"] = ctx.files;
  return outcome;
}

}  // namespace icts::runner
