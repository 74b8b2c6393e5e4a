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

#include "jointenc/experiment.h"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fmt/format.h"
#include "gtest/gtest.h"
#include "jointenc/errors.h"

namespace jointenc {
namespace {

const ErrorCurve& FindCurve(const ExperimentResult& r, Metric metric, std::optional<Ear> ear,
                            std::optional<double> alpha) {
  for (const ErrorCurve& c : r.curves) {
    if (c.metric == metric && c.ear == ear && c.alpha == alpha) return c;
  }
  throw std::runtime_error("curve not found");
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

TEST(ExperimentTest, DefaultRunWritesEverythingQuickly) {
  const auto dir = std::filesystem::temp_directory_path() / "jointenc_experiment_test";
  std::filesystem::remove_all(dir);
  ExperimentConfig config;
  const auto start = std::chrono::steady_clock::now();
  const ExperimentResult r = RunExperiment(config);
  const auto written = WriteEvaluationOutputs(config, r, dir);
  WriteFilterOutputs(config, r, dir);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_LT(seconds, 60.0);

  ASSERT_EQ(r.frequencies.size(), 64u);
  // Per ear and alpha: 4 channels + mean + design objective; per ear: 2 per
  // alpha plus the standard BSM curve.
  EXPECT_EQ(r.curves.size(), 2u * 3 * 6 + 2u * (3 * 2 + 1));
  for (const char* name : {"curves.csv", "curves_left.svg", "curves_right.svg", "filters.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  }
  const std::string csv = ReadFile(dir / "curves.csv");
  EXPECT_EQ(csv.rfind("frequency_hz,metric,ear,alpha,value_db\n", 0), 0u);
  EXPECT_NE(csv.find(",xi_bsm_std,left,,"), std::string::npos);
  EXPECT_NE(csv.find(",xi_asm_n1_m-1,right,0.5,"), std::string::npos);
  EXPECT_NE(ReadFile(dir / "curves_left.svg").find("<polyline"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(ExperimentTest, Deterministic) {
  ExperimentConfig config;
  config.num_frequencies = 12;
  EXPECT_EQ(FormatCurvesCsv(RunExperiment(config)), FormatCurvesCsv(RunExperiment(config)));
  const ExperimentResult r = RunExperiment(config);
  EXPECT_EQ(FormatFiltersJson(config, r), FormatFiltersJson(config, r));
}

TEST(ExperimentTest, AlphaZeroCurveMatchesStandardBsm) {
  ExperimentConfig config;
  config.alphas = {0.0};
  const ExperimentResult r = RunExperiment(config);
  for (Ear ear : {Ear::kLeft, Ear::kRight}) {
    const auto& joint = FindCurve(r, Metric::kXiBsmJoint, ear, 0.0).values_db;
    const auto& std_bsm = FindCurve(r, Metric::kXiBsmStd, ear, std::nullopt).values_db;
    for (std::size_t i = 0; i < joint.size(); ++i) {
      const double ratio = std::pow(10.0, (joint[i] - std_bsm[i]) / 10.0);
      EXPECT_NEAR(ratio, 1.0, 1e-9) << r.frequencies[i];
    }
  }
}

TEST(ExperimentTest, SecondOrderOnFiveMicsWarns) {
  ExperimentConfig config;
  config.ambisonics_order = 2;
  config.num_frequencies = 4;
  const ExperimentResult r = RunExperiment(config);
  bool found = false;
  for (const auto& w : r.warnings) found = found || w.find("(N_a + 1)^2 <= M fails") == 0;
  EXPECT_TRUE(found);
  EXPECT_EQ(r.designs[0].asm_filter.matrix.cols(), 9);

  config.ambisonics_order = 1;
  for (const auto& w : RunExperiment(config).warnings) {
    EXPECT_EQ(w.find("(N_a + 1)^2"), std::string::npos);
  }
}

TEST(ExperimentTest, StackedMode) {
  ExperimentConfig config;
  config.stacked = true;
  config.num_frequencies = 5;
  const ExperimentResult r = RunExperiment(config);
  ASSERT_EQ(r.designs[0].ears.size(), 1u);
  EXPECT_EQ(r.designs[0].ears[0].ear, FilterEar::kBoth);
  EXPECT_NO_THROW(FindCurve(r, Metric::kXiAsmMean, std::nullopt, 0.5));
  EXPECT_NO_THROW(FindCurve(r, Metric::kXiBsmJoint, Ear::kRight, 0.5));
  EXPECT_NE(FormatCurvesCsv(r).find(",xi_asm_mean,both,0.5,"), std::string::npos);
}

TEST(ExperimentTest, FilterJsonRoundTrip) {
  ExperimentConfig config;
  config.num_frequencies = 3;
  const ExperimentResult r = RunExperiment(config);
  const std::string text = FormatFiltersJson(config, r);
  EXPECT_NE(text.find(r.geometry_hash), std::string::npos);
  EXPECT_NE(text.find(kShConventionTag), std::string::npos);
  const auto parsed = ParseFiltersJson(text);
  ASSERT_EQ(parsed.size(), 3u);
  // asm + per ear (bsm + 3 joint)
  ASSERT_EQ(parsed[1].filters.size(), 1u + 2 * 4);
  EXPECT_EQ(parsed[1].filters[0].matrix, r.designs[1].asm_filter.matrix);
  EXPECT_EQ(parsed[1].filters[0].kind, FilterKind::kAsm);
  const EncoderFilter& joint = parsed[2].filters[3];
  EXPECT_EQ(joint.kind, FilterKind::kJoint);
  EXPECT_EQ(joint.ear, FilterEar::kLeft);
  EXPECT_EQ(*joint.alpha, 0.5);
  EXPECT_EQ(joint.matrix, r.designs[2].ears[0].joint[1].matrix);

  EXPECT_THROW(ParseFiltersJson("{"), ParseError);
  std::string bumped = text;
  bumped.replace(bumped.find("\"version\": 1"), 12, "\"version\": 9");
  EXPECT_THROW(ParseFiltersJson(bumped), ParseError);
}

TEST(ExperimentTest, MissingGeometryFileIsIoError) {
  ExperimentConfig config;
  config.geometry = "/nonexistent/array.csv";
  EXPECT_THROW(RunExperiment(config), IoError);
}

TEST(RenderBankTest, AmbisonicsFirMatchesDesignOnGrid) {
  ExperimentConfig config;
  config.render_alpha = 1.0;
  const FirFilterBank bank = BuildRenderBank(config, RenderMode::kFoa);
  ASSERT_EQ(bank.num_outputs(), 4);
  ASSERT_EQ(bank.num_inputs(), 5);
  EXPECT_EQ(bank.delay(), 512);

  const ExperimentSetup setup = PrepareSetup(config);
  const auto bins = DftBinFrequencies(bank.length(), bank.sample_rate());
  double err = 0.0, ref = 0.0;
  std::vector<std::vector<CVector>> realized(4, std::vector<CVector>(5));
  for (int o = 0; o < 4; ++o) {
    for (int i = 0; i < 5; ++i) realized[o][i] = FirFrequencyResponse(bank.taps(o, i));
  }
  for (std::size_t k = 1; k + 1 < bins.size(); ++k) {
    const CMatrix c = AsmFilter(MakeSteeringMatrix(setup.geometry, setup.directions, bins[k],
                                                   config.reference_order, setup.model),
                                setup.y, setup.noise)
                          .matrix;
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    for (int o = 0; o < 4; ++o) {
      for (int i = 0; i < 5; ++i) {
        err += std::norm(sign * realized[o][i](k) - std::conj(c(i, o)));
        ref += std::norm(c(i, o));
      }
    }
  }
  EXPECT_LT(10 * std::log10(err / ref), -40.0);
}

TEST(RenderTest, SilenceAndShapes) {
  ExperimentConfig config;
  config.fir_length = 256;
  const FirFilterBank bank = BuildRenderBank(config, RenderMode::kBinaural);
  WavAudio in;
  in.sample_rate = 48000;
  in.channels.assign(5, std::vector<float>(1000, 0.0f));
  const WavAudio out = RenderWav(in, bank);
  ASSERT_EQ(out.num_channels(), 2);
  EXPECT_EQ(out.num_frames(), 1000u + 256 - 1);
  for (const auto& ch : out.channels) {
    for (float s : ch) EXPECT_EQ(s, 0.0f);
  }
  in.channels.pop_back();
  EXPECT_THROW(RenderWav(in, bank), InvalidArgument);
  in.channels.assign(5, std::vector<float>(10, 0.0f));
  in.sample_rate = 44100;
  EXPECT_THROW(RenderWav(in, bank), InvalidArgument);
  EXPECT_THROW(ParseRenderMode("stereo"), InvalidArgument);
}

// Renders a steady tone from direction d through the FOA bank and returns
// the measured channel amplitudes next to the frequency-domain prediction.
struct ToneAnalysis {
  std::vector<Complex> measured;
  CVector predicted;
};

ToneAnalysis AnalyzeTone(const ExperimentConfig& config, const Direction& d, int bin) {
  const FirFilterBank bank = BuildRenderBank(config, RenderMode::kFoa);
  const ExperimentSetup setup = PrepareSetup(config);
  // An exact DFT bin keeps the steady-state tone free of leakage.
  const double f = bin * config.sample_rate / config.fir_length;
  const SteeringMatrix v =
      MakeSteeringMatrix(setup.geometry, DirectionSet::Uniform({d}), f, config.reference_order);
  const int mics = static_cast<int>(setup.geometry.num_mics());
  const int frames = 16384;
  WavAudio in;
  in.sample_rate = static_cast<int>(config.sample_rate);
  in.channels.assign(mics, std::vector<float>(frames));
  const double w = 2.0 * std::numbers::pi * f / config.sample_rate;
  for (int i = 0; i < mics; ++i) {
    for (int n = 0; n < frames; ++n) {
      in.channels[i][n] =
          static_cast<float>(0.1 * std::real(v.entries(i, 0) * std::polar(1.0, w * n)));
    }
  }
  const WavAudio out = RenderWav(in, bank);
  ToneAnalysis t;
  t.measured.assign(out.num_channels(), Complex(0.0));
  for (int ch = 0; ch < out.num_channels(); ++ch) {
    for (int n = 4096; n < 12288; ++n) {
      t.measured[ch] += static_cast<double>(out.channels[ch][n]) * std::polar(1.0, -w * n);
    }
  }
  const CMatrix c = AsmFilter(MakeSteeringMatrix(setup.geometry, setup.directions, f,
                                                 config.reference_order),
                              setup.y, setup.noise)
                        .matrix;
  t.predicted = c.adjoint() * v.entries.col(0);
  return t;
}

double RatioDb(Complex a, Complex b) { return 20 * std::log10(std::abs(a / b)); }

TEST(RenderTest, ToneMatchesEncoderPrediction) {
  ExperimentConfig config;
  config.render_alpha = 1.0;
  const Direction d = Direction::FromDegrees(60.0, 25.0);
  const ToneAnalysis t = AnalyzeTone(config, d, 12);  // 562.5 Hz
  const CVector y = ShRow(1, d);
  for (int ch = 1; ch < 4; ++ch) {
    if (std::abs(y(ch)) < 0.3 * std::abs(y(0))) continue;
    EXPECT_NEAR(RatioDb(t.measured[ch], t.measured[0]), RatioDb(t.predicted(ch), t.predicted(0)),
                2.0)
        << "channel " << ch;
  }
}

TEST(RenderTest, ToneOnDenseSphereFollowsShPattern) {
  const auto path = std::filesystem::temp_directory_path() / "jointenc_sphere32.csv";
  {
    std::ofstream out(path);
    out << "colatitude_rad,azimuth_rad\n";
    const DirectionSet mics = FibonacciGrid(32);
    for (const Direction& d : mics.directions()) {
      out << fmt::format("{:.17g},{:.17g}\n", d.colatitude(), d.azimuth());
    }
  }
  ExperimentConfig config;
  config.geometry = path.string();
  config.render_alpha = 1.0;
  const Direction d = Direction::FromDegrees(60.0, 25.0);
  const ToneAnalysis t = AnalyzeTone(config, d, 12);
  std::filesystem::remove(path);
  const CVector y = ShRow(1, d);
  for (int ch = 1; ch < 4; ++ch) {
    if (std::abs(y(ch)) < 0.3 * std::abs(y(0))) continue;
    // conj(Y_nm) has the same magnitude ratios as Y_nm.
    EXPECT_NEAR(RatioDb(t.measured[ch], t.measured[0]), RatioDb(y(ch), y(0)), 2.0)
        << "channel " << ch;
  }
}

}  // namespace
}  // namespace jointenc
