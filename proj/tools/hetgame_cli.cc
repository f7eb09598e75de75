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

// hetgame: Monte-Carlo sweeps, CSV re-verification and gamma* lookup. Talks to
// the solvers only through the C interface.

#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "hetgame/hetgame.h"

namespace {

struct ConfigDeleter {
  void operator()(hg_config* config) const { hg_config_destroy(config); }
};
using ConfigPtr = std::unique_ptr<hg_config, ConfigDeleter>;

int Report(hg_status status, const char* what) {
  std::fprintf(stderr, "hetgame: %s: %s (%s)\n", what, hg_last_error(),
               hg_status_string(status));
  return 2;
}

// Scenario flags, forwarded verbatim to hg_config_set.
struct ScenarioFlags {
  std::string config_file;
  std::vector<std::pair<std::string, std::string>> values;

  void Register(CLI::App* app) {
    app->add_option("--config", config_file,
                    "key=value scenario file; flags override it")
        ->check(CLI::ExistingFile);
    static const char* const kKeys[][2] = {
        {"carriers", "carrier count, or a comma list to sweep K"},
        {"followers", "number of small cells F"},
        {"m-exponent", "efficiency exponent M"},
        {"snr-db", "start:stop:step in dB, or a single value"},
        {"trials", "trials per sweep point"},
        {"seed", "base seed"},
        {"schemes", "comma list of stackelberg,nash,best_channel"},
        {"regime", "sparse or dense"},
        {"mean-signal", "mean signal power gain"},
        {"mean-cross", "mean cross power gain"},
        {"rates", "comma list of F+1 rates"},
        {"output", "sweep CSV path"},
        {"summary", "per-point summary CSV path"},
        {"verify-fraction", "fraction of trials certified by the oracle"},
        {"verify-grid", "oracle grid points per carrier"},
        {"threads", "worker threads"},
        {"max-iter", "iteration cap for nash and best_channel"},
        {"tol", "power-change tolerance for nash and best_channel"},
    };
    values.reserve(std::size(kKeys));
    for (const auto& entry : kKeys) {
      values.emplace_back(entry[0], std::string());
      app->add_option(std::string("--") + entry[0], values.back().second,
                      entry[1]);
    }
  }

  int Apply(CLI::App* app, hg_config* config) const {
    if (!config_file.empty()) {
      if (hg_status s = hg_config_load_file(config, config_file.c_str()); s != HG_OK) {
        return Report(s, "config file");
      }
    }
    for (const auto& [key, value] : values) {
      if (app->count("--" + key) == 0) continue;
      if (hg_status s = hg_config_set(config, key.c_str(), value.c_str()); s != HG_OK) {
        return Report(s, ("--" + key).c_str());
      }
    }
    if (hg_status s = hg_config_validate(config); s != HG_OK) {
      return Report(s, "configuration");
    }
    return 0;
  }
};

ConfigPtr NewConfig() {
  hg_config* raw = nullptr;
  if (hg_config_create(&raw) != HG_OK) return nullptr;
  return ConfigPtr(raw);
}

void PrintMessage(const char* message, void*) {
  std::fprintf(stderr, "  %s\n", message);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Energy-efficient power allocation games for two-tier networks"};
  app.require_subcommand(1);

  CLI::App* sweep = app.add_subcommand("sweep", "run a Monte-Carlo sweep");
  ScenarioFlags sweep_flags;
  sweep_flags.Register(sweep);

  CLI::App* verify =
      app.add_subcommand("verify", "re-solve and certify a sweep CSV");
  ScenarioFlags verify_flags;
  std::string input;
  verify->add_option("--input", input, "sweep CSV to verify")
      ->required()
      ->check(CLI::ExistingFile);
  verify_flags.Register(verify);

  CLI::App* gamma = app.add_subcommand("gamma", "print gamma* for M");
  int exponent = 2;
  double tolerance = 1e-12;
  gamma->add_option("--m-exponent", exponent, "efficiency exponent M");
  gamma->add_option("--tol", tolerance, "root tolerance");

  CLI11_PARSE(app, argc, argv);

  if (*gamma) {
    double value = 0.0;
    if (hg_status s = hg_gamma_star(exponent, tolerance, &value); s != HG_OK) {
      return Report(s, "gamma");
    }
    std::printf("%.15g\n", value);
    return 0;
  }

  ConfigPtr config = NewConfig();
  if (!config) return Report(HG_ERR_INTERNAL, "config");

  if (*sweep) {
    if (int rc = sweep_flags.Apply(sweep, config.get()); rc != 0) return rc;
    size_t records = 0;
    if (hg_status s = hg_sweep_run(config.get(), &records); s != HG_OK) {
      return Report(s, "sweep");
    }
    std::printf("wrote %zu records\n", records);
    return 0;
  }

  // Certify every trial unless told otherwise.
  hg_config_set(config.get(), "verify-fraction", "1");
  if (int rc = verify_flags.Apply(verify, config.get()); rc != 0) return rc;
  hg_verify_summary summary{};
  if (hg_status s = hg_verify_csv(config.get(), input.c_str(), PrintMessage,
                                  nullptr, &summary);
      s != HG_OK) {
    return Report(s, "verify");
  }
  std::printf("trials=%d mismatches=%d oracle_checked=%d oracle_failures=%d\n",
              summary.trials_checked, summary.mismatches,
              summary.oracle_checked, summary.oracle_failures);
  return summary.mismatches == 0 && summary.oracle_failures == 0 ? 0 : 1;
}
