#include "icts/icts.h"

#include <cstring>
#include <new>
#include <string>

#include "icts/coherence.hpp"
#include "icts/config.hpp"
#include "icts/errors.hpp"
#include "icts/fock.hpp"
#include "icts/runner.hpp"

struct icts_sim {
  icts::cfg::RunConfig config;
};

namespace {

thread_local std::string g_last_error;

icts_status status_of(const icts::Error& e) {
  switch (e.code()) {
    case icts::ErrorCode::validation:
      return ICTS_E_VALIDATION;
    case icts::ErrorCode::config:
      return ICTS_E_CONFIG;
    case icts::ErrorCode::io:
      return ICTS_E_IO;
    case icts::ErrorCode::invalid_argument:
      return ICTS_E_INVALID_ARGUMENT;
    case icts::ErrorCode::internal:
      return ICTS_E_INTERNAL;
  }
  return ICTS_E_INTERNAL;
}

template <typename Fn>
icts_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const icts::Error& e) {
    g_last_error = e.what();
    return status_of(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return ICTS_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return ICTS_E_INTERNAL;
  }
}

char* duplicate(const std::string& text) {
  char* out = new (std::nothrow) char[text.size() + 1];
  if (out) std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* icts_version(void) { return icts::runner::kVersion; }

const char* icts_last_error(void) { return g_last_error.c_str(); }

icts_status icts_sim_create(const char* config_json, icts_sim** out_sim) {
  return guarded([&]() -> icts_status {
    if (!config_json || !out_sim) {
      g_last_error = "null argument";
      return ICTS_E_INVALID_ARGUMENT;
    }
    auto sim = new icts_sim{icts::cfg::parse_config_text(config_json)};
    *out_sim = sim;
    return ICTS_OK;
  });
}

void icts_sim_destroy(icts_sim* sim) { delete sim; }

icts_status icts_sim_run(icts_sim* sim, const char* command, const char* out_dir,
                         int64_t seed, const char* format, char** report) {
  return guarded([&]() -> icts_status {
    if (!sim || !command || !out_dir) {
      g_last_error = "null argument";
      return ICTS_E_INVALID_ARGUMENT;
    }
    std::optional<std::uint64_t> seed_override;
    if (seed >= 0) seed_override = static_cast<std::uint64_t>(seed);
    std::optional<std::string> format_override;
    if (format) format_override = format;

    const auto outcome = icts::runner::run_command(sim->config, command, out_dir,
                                                   seed_override, format_override);
    if (report) *report = duplicate(outcome.report.dump(2));
    if (outcome.exit_code != 0) {
      g_last_error = "validation failure";
      return ICTS_E_VALIDATION;
    }
    return ICTS_OK;
  });
}

void icts_string_free(char* text) { delete[] text; }

icts_status icts_degree_of_coherence(double gain, double mu_re, double mu_im,
                                     double* out_g1) {
  return guarded([&]() -> icts_status {
    if (!out_g1) {
      g_last_error = "null output";
      return ICTS_E_INVALID_ARGUMENT;
    }
    icts::coherence::SingleModeSetup setup;
    setup.gain = gain;
    setup.mu = {mu_re, mu_im};
    *out_g1 = icts::coherence::degree_of_coherence(setup);
    return ICTS_OK;
  });
}

icts_status icts_coherence_closed_form(double gain, double mu_abs,
                                       double* out_g1) {
  return guarded([&]() -> icts_status {
    if (!out_g1) {
      g_last_error = "null output";
      return ICTS_E_INVALID_ARGUMENT;
    }
    *out_g1 = icts::coherence::coherence_closed_form(gain, mu_abs);
    return ICTS_OK;
  });
}

icts_status icts_low_gain_coherence(double mu_re, double mu_im, double* out_g1) {
  return guarded([&]() -> icts_status {
    if (!out_g1) {
      g_last_error = "null output";
      return ICTS_E_INVALID_ARGUMENT;
    }
    *out_g1 = icts::coherence::low_gain_coherence({mu_re, mu_im});
    return ICTS_OK;
  });
}

icts_status icts_oracle_coherence(double gain, double mu_abs, int cutoff,
                                  double* out_g1, double* out_leakage) {
  return guarded([&]() -> icts_status {
    if (!out_g1) {
      g_last_error = "null output";
      return ICTS_E_INVALID_ARGUMENT;
    }
    const auto report = icts::fock::oracle_induced_coherence(
        gain, mu_abs, cutoff > 0 ? cutoff : 12);
    *out_g1 = report.g1_abs;
    if (out_leakage) *out_leakage = report.leakage;
    return ICTS_OK;
  });
}

}  // extern "C"
