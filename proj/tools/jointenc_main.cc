// Copyright 2026 The jointenc Authors. All Rights Reserved.
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

// Command-line front end: design, evaluate, render, grid, verify.
//
// Exit codes: 0 success, 1 verification mismatch or unexpected error,
// 2 configuration or argument error, 3 numeric failure, 4 I/O error.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fmt/format.h"
#include "jointenc/config.h"
#include "jointenc/errors.h"
#include "jointenc/experiment.h"
#include "jointenc/oracle.h"
#include "spdlog/spdlog.h"

namespace jointenc {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitIo = 4;

struct GlobalOptions {
  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_dir;
  std::vector<double> alphas;
  std::optional<double> snr_db;
  std::optional<int> order;
  std::uint64_t seed = 1;
};

ExperimentConfig ResolveConfig(const GlobalOptions& opts) {
  ExperimentConfig config = opts.config_path.empty() ? ExperimentConfig{}
                                                     : LoadConfig(opts.config_path);
  for (const std::string& o : opts.overrides) ApplyOverride(config, o);
  if (!opts.out_dir.empty()) config.output_dir = opts.out_dir;
  if (!opts.alphas.empty()) config.alphas = opts.alphas;
  if (opts.snr_db) config.snr_db = *opts.snr_db;
  if (opts.order) config.ambisonics_order = *opts.order;
  Validate(config);
  return config;
}

int RunDesign(const ExperimentConfig& config) {
  const ExperimentResult result = RunExperiment(config);
  const auto path = WriteFilterOutputs(config, result, config.output_dir);
  fmt::print("wrote {} ({} frequencies)\n", path.string(), result.frequencies.size());
  return kExitOk;
}

int RunEvaluate(const ExperimentConfig& config) {
  const ExperimentResult result = RunExperiment(config);
  for (const auto& path : WriteEvaluationOutputs(config, result, config.output_dir)) {
    fmt::print("wrote {}\n", path.string());
  }
  fmt::print("{} curves x {} frequencies\n", result.curves.size(), result.frequencies.size());
  return kExitOk;
}

int RunRender(const ExperimentConfig& config, const std::string& input,
              const std::string& mode_name, std::string output) {
  const RenderMode mode = ParseRenderMode(mode_name);
  const WavAudio in = ReadWav(input);
  const FirFilterBank bank = BuildRenderBank(config, mode);
  const WavAudio out = RenderWav(in, bank);
  if (output.empty()) {
    std::filesystem::create_directories(config.output_dir);
    output = (std::filesystem::path(config.output_dir) / ("rendered_" + mode_name + ".wav")).string();
  }
  WriteWav(output, out);
  fmt::print("wrote {} ({} channels, {} frames, latency {} samples)\n", output, out.num_channels(),
             out.num_frames(), bank.delay());
  return kExitOk;
}

double MaxOrthonormalityError(const DirectionSet& dirs, int order) {
  const ShMatrix y = MakeShMatrix(dirs, order);
  const RVector w = Eigen::Map<const RVector>(dirs.weights().data(),
                                              static_cast<Eigen::Index>(dirs.size()));
  const CMatrix gram = y.entries.adjoint() * w.cast<Complex>().asDiagonal() * y.entries;
  return (gram - CMatrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

int RunGrid(const ExperimentConfig& config, const std::string& inspect, int order) {
  DirectionSet dirs = inspect.empty()
                          ? GenerateGrid(config.grid_kind, config.grid_size, config.grid_file)
                          : LoadGridCsv(inspect);
  double weight_sum = 0.0;
  for (double w : dirs.weights()) weight_sum += w;
  fmt::print("directions: {}\nweight sum / 4pi: {:.15f}\n", dirs.size(), weight_sum / kFourPi);
  if (static_cast<int>(dirs.size()) >= NumShChannels(order)) {
    fmt::print("max |Y^H W Y - I| at order {}: {:.3e}\n", order,
               MaxOrthonormalityError(dirs, order));
  }
  if (inspect.empty()) {
    std::filesystem::create_directories(config.output_dir);
    const auto path = std::filesystem::path(config.output_dir) / "grid.csv";
    std::ofstream out(path);
    out << FormatGridCsv(dirs);
    if (!out) throw IoError("cannot write " + path.string());
    fmt::print("wrote {}\n", path.string());
  }
  return kExitOk;
}

int RunVerify(const ExperimentConfig& config, std::uint64_t seed, int count) {
  bool ok = true;
  auto report = [&](bool pass, const std::string& what) {
    fmt::print("{} {}\n", pass ? "PASS" : "FAIL", what);
    ok = ok && pass;
  };

  double worst = 0.0;
  for (int i = 0; i < count; ++i) {
    const auto inst = oracle::MakeTinyInstance(seed + i, 3, 6, i % 2);
    for (const auto& cmp : oracle::CompareWithNumericMinimizer(inst)) {
      worst = std::max(worst, cmp.RelativeDifference());
    }
  }
  report(worst <= 1e-6,
         fmt::format("closed forms vs numeric minimizer on {} instances (max rel diff {:.2e})",
                     count, worst));

  const ExperimentSetup setup = PrepareSetup(config);
  const FrequencyGrid grid = FrequencyGrid::LogSpaced(config.min_hz, config.max_hz,
                                                      config.num_frequencies, config.sound_speed);
  double route_diff = 0.0, flat_diff = 0.0;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (double f : grid.frequencies()) {
    const FrequencyDesign d = DesignAtFrequency(setup, config, f, {});
    for (Ear ear : {Ear::kLeft, Ear::kRight}) {
      const CMatrix pinv = BsmFlatFilter(d.v, d.hrtf, ear, setup.noise, BsmMethod::kPinv).matrix;
      const CMatrix reduced =
          BsmFlatFilter(d.v, d.hrtf, ear, setup.noise, BsmMethod::kReduced).matrix;
      route_diff = std::max(route_diff, (pinv - reduced).cwiseAbs().maxCoeff());
      CMatrix c(pinv.rows(), pinv.cols());
      for (auto& z : c.reshaped()) z = Complex(g(rng), g(rng));
      const CVector& h = d.hrtf.NmTilde(ear);
      const StackedHrtfOperator op(h, static_cast<int>(c.rows()));
      const CMatrix lhs = h.transpose() * c.adjoint();
      const CMatrix rhs = Flatten(c).adjoint() * op.Materialize();
      flat_diff = std::max(flat_diff, (lhs - rhs).cwiseAbs().maxCoeff() /
                                          std::max(1.0, lhs.cwiseAbs().maxCoeff()));
    }
  }
  report(route_diff <= 1e-8,
         fmt::format("pinv vs reduced flattened BSM over {} frequencies (max diff {:.2e})",
                     grid.size(), route_diff));
  report(flat_diff <= 1e-13,
         fmt::format("flattening identity (max rel diff {:.2e})", flat_diff));
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace
}  // namespace jointenc

int main(int argc, char** argv) {
  using namespace jointenc;
  CLI::App app{"Joint ASM/BSM encoder design toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  GlobalOptions opts;
  bool verbose = false;
  app.add_option("--config", opts.config_path, "Experiment config (TOML)");
  app.add_option("--set", opts.overrides, "Override a config value, section.key=value");
  app.add_option("--out", opts.out_dir, "Output directory");
  app.add_option("--alpha", opts.alphas, "Comma-separated alpha values")->delimiter(',');
  app.add_option("--snr-db", opts.snr_db, "Signal-to-noise ratio in dB");
  app.add_option("--na", opts.order, "Ambisonics order");
  app.add_option("--seed", opts.seed, "Seed for the verify suite's random instances");
  app.add_flag("-v,--verbose", verbose, "Debug logging");

  auto* design = app.add_subcommand("design", "Design filters and write filters.json");
  auto* evaluate = app.add_subcommand("evaluate", "Write error curves (CSV, SVG)");
  auto* render = app.add_subcommand("render", "Render a microphone WAV through the FIR bank");
  std::string render_input, render_mode = "binaural", render_output;
  render->add_option("--input", render_input, "Microphone WAV file")->required();
  render->add_option("--mode", render_mode, "foa or binaural");
  render->add_option("--output", render_output, "Output WAV path");
  auto* grid = app.add_subcommand("grid", "Emit or inspect a direction set");
  std::string inspect;
  int grid_order = 1;
  grid->add_option("--inspect", inspect, "Grid CSV to inspect instead of generating one");
  grid->add_option("--order", grid_order, "SH order for the orthonormality check");
  auto* verify = app.add_subcommand("verify", "Run the oracle equivalence suite");
  int verify_count = 50;
  verify->add_option("--count", verify_count, "Number of random tiny instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  if (verbose) spdlog::set_level(spdlog::level::debug);

  try {
    const ExperimentConfig config = ResolveConfig(opts);
    if (design->parsed()) return RunDesign(config);
    if (evaluate->parsed()) return RunEvaluate(config);
    if (render->parsed()) return RunRender(config, render_input, render_mode, render_output);
    if (grid->parsed()) return RunGrid(config, inspect, grid_order);
    if (verify->parsed()) return RunVerify(config, opts.seed, verify_count);
  } catch (const ConfigError& e) {
    spdlog::error("config: {}", e.what());
    return kExitConfig;
  } catch (const ParseError& e) {
    spdlog::error("parse: {}", e.what());
    return kExitConfig;
  } catch (const InvalidArgument& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  } catch (const ShapeError& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  } catch (const DomainError& e) {
    spdlog::error("{}", e.what());
    return kExitConfig;
  } catch (const NumericError& e) {
    spdlog::error("numeric: {}", e.what());
    return kExitNumeric;
  } catch (const IoError& e) {
    spdlog::error("io: {}", e.what());
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    spdlog::error("io: {}", e.what());
    return kExitIo;
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return kExitMismatch;
  }
  return kExitMismatch;
}
