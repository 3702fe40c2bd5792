// Copyright 2026 The UNO Push Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: learn, run, sweep and export.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "unopush/config_io.h"
#include "unopush/harness.h"

namespace unopush {
namespace {

namespace fs = std::filesystem;

constexpr int kConfigExit = 2;

void WriteFile(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

LoadedConfig Load(const std::string& path) {
  return path.empty() ? ParseConfig("") : LoadConfigFile(path);
}

int Learn(const std::string& config_path, std::optional<uint64_t> seed,
          const std::string& out, const std::string& shape, int n) {
  const ExperimentConfig cfg = Load(config_path).experiment;
  const std::string name = shape.empty() ? cfg.transfer_shape : shape;
  const int count = n > 0 ? n : cfg.exploration_count;
  const uint64_t s = seed.value_or(cfg.seeds.front());
  const TransitionModels tm = LearnOnShape(cfg, name, count, s);
  if (fs::path(out).has_parent_path()) {
    fs::create_directories(fs::path(out).parent_path());
  }
  SaveModels(tm, out);
  std::printf("learned %zu samples on %s (N=%d, seed %llu) -> %s\n",
              tm.dataset().size(), name.c_str(), count,
              static_cast<unsigned long long>(s), out.c_str());
  return 0;
}

int Run(const std::string& config_path, std::optional<uint64_t> seed,
        const std::string& out, const std::string& model) {
  ExperimentConfig cfg = Load(config_path).experiment;
  if (!model.empty()) cfg.model_file = model;
  if (seed) cfg.seeds = {*seed};
  std::optional<TransitionModels> fixed;
  if (cfg.transfers() && !cfg.model_file.empty()) {
    try {
      fixed = LoadModels(cfg.model_file);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  const std::string shape_tag =
      cfg.shape_file.empty() ? cfg.shape : fs::path(cfg.shape_file).stem().string();
  for (uint64_t s : cfg.seeds) {
    // Without a model file, transferred models are learned for this seed.
    std::optional<TransitionModels> learned;
    const TransitionModels* tm = nullptr;
    if (cfg.transfers()) {
      if (!fixed) {
        learned = LearnOnShape(cfg, cfg.transfer_shape, cfg.exploration_count, s);
      }
      tm = fixed ? &*fixed : &*learned;
    }
    const RunLog log = RunEpisode(cfg, s, tm);
    const std::string stem = "run_" + shape_tag + "_setting" +
                             std::to_string(cfg.setting) + "_seed" +
                             std::to_string(s);
    const fs::path dir(out);
    WriteFile(dir / (stem + ".csv"), RunLogToCsv(log));
    WriteFile(dir / (stem + ".json"), RunLogToJson(log));
    WriteFile(dir / (stem + "_summary.json"), RunLogSummaryJson(log) + "\n");
    std::printf("%s seed %llu: %s after %d pushes, MAE %.3f mm\n",
                shape_tag.c_str(), static_cast<unsigned long long>(s),
                TerminationName(log.termination), log.pushes, log.mae_mm);
  }
  return 0;
}

int Sweep(const std::string& config_path, std::optional<uint64_t> seed,
          const std::string& out) {
  LoadedConfig loaded = Load(config_path);
  if (seed) loaded.experiment.seeds = {*seed};
  const fs::path dir(out);
  fs::create_directories(dir);
  const auto cells =
      RunSweep(loaded.experiment, loaded.sweep, (dir / "models").string());
  const std::string csv = SweepToCsv(cells);
  WriteFile(dir / "sweep.csv", csv);
  std::fputs(csv.c_str(), stdout);
  return 0;
}

int Export(const std::string& log_path, const std::string& out) {
  const RunLog log = RunLogFromJson(ReadFile(log_path));
  const std::string csv = RunLogToCsv(log);
  if (out.empty() || out == "-") {
    std::fputs(csv.c_str(), stdout);
  } else {
    WriteFile(out, csv);
  }
  return 0;
}

int Main(int argc, char** argv) {
  CLI::App app{"Learned-model push manipulation benchmark"};
  app.require_subcommand(1);

  std::string config, out, model, shape, log_path;
  std::optional<uint64_t> seed;
  int n = 0;

  CLI::App* learn = app.add_subcommand("learn", "learn transition models");
  learn->add_option("--config", config, "INI experiment config");
  learn->add_option("--seed", seed, "random seed (default: first config seed)");
  learn->add_option("--out", out, "model file to write")->required();
  learn->add_option("--shape", shape, "object to explore (default: transfer_shape)");
  learn->add_option("--n", n, "number of exploratory pushes (default: N)");

  CLI::App* run = app.add_subcommand("run", "run closed-loop episodes");
  run->add_option("--config", config, "INI experiment config")->required();
  run->add_option("--seed", seed, "run only this seed");
  run->add_option("--out", out, "output directory")->default_val("out");
  run->add_option("--model", model, "transferred model file (settings 1 and 2)");

  CLI::App* sweep = app.add_subcommand("sweep", "run a parameter sweep");
  sweep->add_option("--config", config, "INI experiment config")->required();
  sweep->add_option("--seed", seed, "run only this seed");
  sweep->add_option("--out", out, "output directory")->default_val("sweep_out");

  CLI::App* exp = app.add_subcommand("export", "convert a run log to CSV");
  exp->add_option("--log", log_path, "run log JSON")->required();
  exp->add_option("--out", out, "CSV file to write ('-' for stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*learn) return Learn(config, seed, out, shape, n);
    if (*run) return Run(config, seed, out, model);
    if (*sweep) return Sweep(config, seed, out);
    if (*exp) return Export(log_path, out);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfigExit;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

}  // namespace
}  // namespace unopush

int main(int argc, char** argv) { return unopush::Main(argc, argv); }
