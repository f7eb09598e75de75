// Copyright 2026 The hetgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hetgame/hetgame.h"

#include <algorithm>
#include <fstream>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

#include "hetgame/baselines.h"
#include "hetgame/dense_eq.h"
#include "hetgame/efficiency.h"
#include "hetgame/harness.h"
#include "hetgame/model.h"
#include "hetgame/oracle.h"

struct hg_instance {
  hetgame::NetworkInstance value;
};

struct hg_result {
  hetgame::EquilibriumResult equilibrium;
  hetgame::Scheme scheme;
  hetgame::Regime regime;
  bool converged;
};

struct hg_config {
  hetgame::ScenarioConfig value;
};

namespace {

thread_local std::string last_error;

hg_status Fail(hg_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

// Maps the C++ exception hierarchy onto status codes.
template <typename Fn>
hg_status Guard(Fn&& fn) {
  try {
    last_error.clear();
    return fn();
  } catch (const hetgame::RootNotFound& e) {
    return Fail(HG_ERR_NO_ROOT, e.what());
  } catch (const std::domain_error& e) {
    return Fail(HG_ERR_DOMAIN, e.what());
  } catch (const std::out_of_range& e) {
    return Fail(HG_ERR_OUT_OF_RANGE, e.what());
  } catch (const std::invalid_argument& e) {
    return Fail(HG_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::ios_base::failure& e) {
    return Fail(HG_ERR_IO, e.what());
  } catch (const std::runtime_error& e) {
    return Fail(HG_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return Fail(HG_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return Fail(HG_ERR_INTERNAL, e.what());
  } catch (...) {
    return Fail(HG_ERR_INTERNAL, "unknown error");
  }
}

hetgame::Regime ToRegime(hg_regime regime) {
  switch (regime) {
    case HG_REGIME_SPARSE:
      return hetgame::Regime::kSparse;
    case HG_REGIME_DENSE:
      return hetgame::Regime::kDense;
  }
  throw std::invalid_argument("unknown regime");
}

hetgame::Scheme ToScheme(hg_scheme scheme) {
  switch (scheme) {
    case HG_SCHEME_STACKELBERG:
      return hetgame::Scheme::kStackelberg;
    case HG_SCHEME_NASH:
      return hetgame::Scheme::kNash;
    case HG_SCHEME_BEST_CHANNEL:
      return hetgame::Scheme::kBestChannel;
  }
  throw std::invalid_argument("unknown scheme");
}

void CheckPlayer(const hg_result* result, int player) {
  if (player < 0 || player >= result->equilibrium.allocation.players()) {
    throw std::out_of_range("player index out of range");
  }
}

}  // namespace

extern "C" {

const char* hg_version(void) { return "0.1.0"; }

const char* hg_last_error(void) { return last_error.c_str(); }

const char* hg_status_string(hg_status status) {
  switch (status) {
    case HG_OK:
      return "ok";
    case HG_ERR_NULL_ARGUMENT:
      return "null argument";
    case HG_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case HG_ERR_DOMAIN:
      return "domain error";
    case HG_ERR_NO_ROOT:
      return "no positive root";
    case HG_ERR_IO:
      return "i/o error";
    case HG_ERR_OUT_OF_RANGE:
      return "index out of range";
    case HG_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

hg_status hg_gamma_star(int m, double tol, double* out) {
  if (!out) return Fail(HG_ERR_NULL_ARGUMENT, "out is null");
  return Guard([&] {
    *out = hetgame::SolveGammaStar(hetgame::EfficiencyModel(m), tol);
    return HG_OK;
  });
}

hg_status hg_gamma_double_star(int m, double a, double tol, double* out,
                               int* admissible) {
  if (!out) return Fail(HG_ERR_NULL_ARGUMENT, "out is null");
  return Guard([&] {
    const auto root =
        hetgame::SolveGammaDoubleStar(hetgame::EfficiencyModel(m), a, tol);
    *out = root.value;
    if (admissible) *admissible = root.admissible ? 1 : 0;
    return HG_OK;
  });
}

hg_status hg_instance_create(int carriers, int followers, const double* gain,
                             const double* cross, double noise,
                             const double* rates, hg_instance** out) {
  if (!gain || !cross || !out) {
    return Fail(HG_ERR_NULL_ARGUMENT, "gain, cross and out are required");
  }
  if (carriers < 1 || followers < 0) {
    return Fail(HG_ERR_INVALID_ARGUMENT, "need carriers >= 1, followers >= 0");
  }
  return Guard([&] {
    const int players = followers + 1;
    std::vector<std::vector<double>> g(players), h(players);
    for (int n = 0; n < players; ++n) {
      g[n].assign(gain + n * carriers, gain + (n + 1) * carriers);
      h[n].assign(cross + n * carriers, cross + (n + 1) * carriers);
    }
    std::vector<double> r;
    if (rates) r.assign(rates, rates + players);
    *out = new hg_instance{
        hetgame::NetworkInstance(std::move(g), std::move(h), noise, std::move(r))};
    return HG_OK;
  });
}

hg_status hg_instance_sample(int carriers, int followers, double mean_signal,
                             double mean_cross, double snr_db, uint64_t seed,
                             hg_instance** out) {
  if (!out) return Fail(HG_ERR_NULL_ARGUMENT, "out is null");
  return Guard([&] {
    hetgame::InstanceDistribution d;
    d.carriers = carriers;
    d.followers = followers;
    d.mean_signal = mean_signal;
    d.mean_cross = mean_cross;
    d.snr_db = snr_db;
    *out = new hg_instance{hetgame::SampleInstance(d, seed)};
    return HG_OK;
  });
}

void hg_instance_destroy(hg_instance* instance) { delete instance; }

int hg_instance_carriers(const hg_instance* instance) {
  return instance ? instance->value.carriers() : 0;
}

int hg_instance_followers(const hg_instance* instance) {
  return instance ? instance->value.followers() : 0;
}

hg_status hg_instance_gain(const hg_instance* instance, int player,
                           int carrier, double* out) {
  if (!instance || !out) return Fail(HG_ERR_NULL_ARGUMENT, "null argument");
  if (player < 0 || player >= instance->value.players() || carrier < 0 ||
      carrier >= instance->value.carriers()) {
    return Fail(HG_ERR_OUT_OF_RANGE, "index out of range");
  }
  *out = instance->value.gain(player, carrier);
  return HG_OK;
}

uint64_t hg_instance_digest(const hg_instance* instance) {
  return instance ? instance->value.Digest() : 0;
}

hg_status hg_solve(const hg_instance* instance, int m, hg_scheme scheme,
                   hg_regime regime, hg_result** out) {
  if (!instance || !out) return Fail(HG_ERR_NULL_ARGUMENT, "null argument");
  return Guard([&] {
    const hetgame::EfficiencyModel model(m);
    const hetgame::Scheme s = ToScheme(scheme);
    const hetgame::Regime r = ToRegime(regime);
    hetgame::SchemeOutcome outcome =
        hetgame::RunScheme(instance->value, model, s, r, {});
    *out = new hg_result{std::move(outcome.equilibrium), s, r, outcome.converged};
    return HG_OK;
  });
}

void hg_result_destroy(hg_result* result) { delete result; }

hg_status hg_result_power(const hg_result* result, int player, int carrier,
                          double* out) {
  if (!result || !out) return Fail(HG_ERR_NULL_ARGUMENT, "null argument");
  return Guard([&] {
    CheckPlayer(result, player);
    if (carrier < 0 || carrier >= result->equilibrium.allocation.carriers()) {
      throw std::out_of_range("carrier index out of range");
    }
    *out = result->equilibrium.allocation.at(player, carrier);
    return HG_OK;
  });
}

hg_status hg_result_allocation(const hg_result* result, double* buffer,
                               size_t len) {
  if (!result || !buffer) return Fail(HG_ERR_NULL_ARGUMENT, "null argument");
  const auto& a = result->equilibrium.allocation;
  const size_t needed = static_cast<size_t>(a.players()) * a.carriers();
  if (len < needed) return Fail(HG_ERR_INVALID_ARGUMENT, "buffer too small");
  for (int n = 0; n < a.players(); ++n) {
    std::copy(a.row(n).begin(), a.row(n).end(),
              buffer + static_cast<size_t>(n) * a.carriers());
  }
  return HG_OK;
}

hg_status hg_result_utility(const hg_result* result, int player, double* out) {
  if (!result || !out) return Fail(HG_ERR_NULL_ARGUMENT, "null argument");
  return Guard([&] {
    CheckPlayer(result, player);
    *out = result->equilibrium.utility[player];
    return HG_OK;
  });
}

hg_status hg_result_active_carrier(const hg_result* result, int player,
                                   int* out) {
  if (!result || !out) return Fail(HG_ERR_NULL_ARGUMENT, "null argument");
  return Guard([&] {
    CheckPlayer(result, player);
    *out = result->equilibrium.active_carrier[player];
    return HG_OK;
  });
}

int hg_result_converged(const hg_result* result) {
  return result && result->converged ? 1 : 0;
}

int hg_result_iterations(const hg_result* result) {
  return result ? result->equilibrium.diagnostics.iterations : 0;
}

hg_status hg_verify(const hg_instance* instance, int m,
                    const hg_result* result, int grid_size, double tolerance,
                    int* passed, double* worst_gain) {
  if (!instance || !result || !passed) {
    return Fail(HG_ERR_NULL_ARGUMENT, "null argument");
  }
  return Guard([&] {
    const hetgame::EfficiencyModel model(m);
    const auto& inst = instance->value;
    const auto& allocation = result->equilibrium.allocation;
    if (allocation.players() != inst.players() ||
        allocation.carriers() != inst.carriers()) {
      throw std::invalid_argument("result does not match the instance shape");
    }
    hetgame::OracleOptions options;
    options.grid_size = grid_size;
    options.tolerance = tolerance;
    std::vector<hetgame::DeviationReport> reports;
    if (result->scheme == hetgame::Scheme::kStackelberg) {
      reports.push_back(hetgame::VerifyLeaderStackelberg(
          inst, model, allocation, result->regime, options));
      for (int f = 1; f < inst.players(); ++f) {
        reports.push_back(
            hetgame::VerifyFollower(inst, model, f, allocation, options));
      }
    } else if (result->scheme == hetgame::Scheme::kNash) {
      reports = hetgame::VerifyNash(inst, model, allocation, result->regime,
                                    options);
    }
    bool all = true;
    double worst = 0.0;
    for (const auto& r : reports) {
      all = all && r.passed;
      worst = std::max(worst, r.relative_gain);
    }
    *passed = all ? 1 : 0;
    if (worst_gain) *worst_gain = worst;
    return HG_OK;
  });
}

hg_status hg_config_create(hg_config** out) {
  if (!out) return Fail(HG_ERR_NULL_ARGUMENT, "out is null");
  return Guard([&] {
    *out = new hg_config{};
    return HG_OK;
  });
}

void hg_config_destroy(hg_config* config) { delete config; }

hg_status hg_config_set(hg_config* config, const char* key,
                        const char* value) {
  if (!config || !key || !value) {
    return Fail(HG_ERR_NULL_ARGUMENT, "null argument");
  }
  return Guard([&] {
    hetgame::ApplyConfigValue(config->value, key, value);
    return HG_OK;
  });
}

hg_status hg_config_load_file(hg_config* config, const char* path) {
  if (!config || !path) return Fail(HG_ERR_NULL_ARGUMENT, "null argument");
  return Guard([&] {
    std::ifstream in(path);
    if (!in) return Fail(HG_ERR_IO, std::string("cannot open ") + path);
    hetgame::ApplyConfigText(config->value, in);
    return HG_OK;
  });
}

hg_status hg_config_validate(const hg_config* config) {
  if (!config) return Fail(HG_ERR_NULL_ARGUMENT, "config is null");
  return Guard([&] {
    config->value.Validate();
    return HG_OK;
  });
}

hg_status hg_sweep_run(const hg_config* config, size_t* records) {
  if (!config) return Fail(HG_ERR_NULL_ARGUMENT, "config is null");
  return Guard([&] {
    const size_t count = hetgame::RunSweepToFiles(config->value);
    if (records) *records = count;
    return HG_OK;
  });
}

hg_status hg_verify_csv(const hg_config* config, const char* csv_path,
                        hg_message_fn on_message, void* user_data,
                        hg_verify_summary* out) {
  if (!config || !csv_path || !out) {
    return Fail(HG_ERR_NULL_ARGUMENT, "null argument");
  }
  return Guard([&] {
    std::ifstream in(csv_path, std::ios::binary);
    if (!in) return Fail(HG_ERR_IO, std::string("cannot open ") + csv_path);
    const auto records = hetgame::ReadCsv(in);
    const hetgame::CsvVerification v = hetgame::VerifyCsv(config->value, records);
    out->trials_checked = v.trials_checked;
    out->mismatches = v.mismatches;
    out->oracle_checked = v.oracle_checked;
    out->oracle_failures = v.oracle_failures;
    if (on_message) {
      for (const std::string& m : v.messages) on_message(m.c_str(), user_data);
    }
    return HG_OK;
  });
}

}  // extern "C"
