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

// End-to-end pipeline: geometry and grid setup, per-frequency filter design,
// error curves, filter export and time-domain rendering.

#ifndef JOINTENC_EXPERIMENT_H_
#define JOINTENC_EXPERIMENT_H_

#include <filesystem>
#include <string>
#include <vector>

#include "jointenc/acoustics.h"
#include "jointenc/config.h"
#include "jointenc/design.h"
#include "jointenc/evaluation.h"
#include "jointenc/fir.h"
#include "jointenc/sph.h"
#include "jointenc/wav.h"

namespace jointenc {

inline constexpr int kFilterFormatVersion = 1;
inline constexpr const char* kShConventionTag = "complex-orthonormal-condon-shortley-acn";

struct ExperimentSetup {
  ArrayGeometry geometry;
  DirectionSet directions;
  ShMatrix y;
  NoiseModel noise;
  PropagationModel model;
};

// Loads the geometry and grid named by the config. Warns when the PWD
// condition fails for the chosen order.
ExperimentSetup PrepareSetup(const ExperimentConfig& config);

struct EarDesign {
  FilterEar ear;               // kLeft, kRight or kBoth (stacked)
  EncoderFilter bsm;           // flattened BSM
  std::vector<EncoderFilter> joint;  // one per configured alpha
};

struct FrequencyDesign {
  double frequency = 0.0;
  SteeringMatrix v;
  HrtfSet hrtf;
  EncoderFilter asm_filter;
  std::vector<EarDesign> ears;
  std::vector<std::pair<Ear, CVector>> std_bsm;  // one per evaluated ear
};

FrequencyDesign DesignAtFrequency(const ExperimentSetup& setup, const ExperimentConfig& config,
                                  double frequency, const std::vector<double>& alphas);

// Ears the binaural metrics are evaluated on (both in stacked mode).
std::vector<Ear> EvaluatedEars(const ExperimentConfig& config);

struct ExperimentResult {
  std::vector<double> frequencies;
  std::vector<FrequencyDesign> designs;
  std::vector<ErrorCurve> curves;
  std::vector<std::string> warnings;
  std::string geometry_hash;
};

ExperimentResult RunExperiment(const ExperimentConfig& config);

// Header `frequency_hz,metric,ear,alpha,value_db`; rows ordered by curve then
// frequency. Byte-identical for identical inputs.
std::string FormatCurvesCsv(const ExperimentResult& result);
// Log-frequency plot of the binaural and mean ASM curves for one ear label.
std::string FormatCurvesSvg(const ExperimentResult& result, const std::string& ear);

std::string FormatFiltersJson(const ExperimentConfig& config, const ExperimentResult& result);

struct FilterFileEntry {
  double frequency;
  std::vector<EncoderFilter> filters;
};
// Throws ParseError on malformed documents or unsupported versions.
std::vector<FilterFileEntry> ParseFiltersJson(const std::string& text);

// Writes curves.csv (+ SVGs) and filters.json under `dir`; returns paths written.
std::vector<std::filesystem::path> WriteEvaluationOutputs(const ExperimentConfig& config,
                                                          const ExperimentResult& result,
                                                          const std::filesystem::path& dir);
std::filesystem::path WriteFilterOutputs(const ExperimentConfig& config,
                                         const ExperimentResult& result,
                                         const std::filesystem::path& dir);

enum class RenderMode { kFoa, kBinaural };

RenderMode ParseRenderMode(const std::string& name);

// Designs joint filters at render.alpha on the uniform DFT grid of the FIR
// length. The DC bin reuses the first non-zero bin's design and the DC and
// Nyquist bins keep only the real part. FOA outputs use conj(c_nm) per
// microphone; binaural outputs use sum_nm h~_nm conj(c_nm) for each ear.
FirFilterBank BuildRenderBank(const ExperimentConfig& config, RenderMode mode);

// Output has input length + L - 1 frames; latency is L/2 samples.
// InvalidArgument on channel-count or sample-rate mismatch.
WavAudio RenderWav(const WavAudio& input, const FirFilterBank& bank);

}  // namespace jointenc

#endif  // JOINTENC_EXPERIMENT_H_
