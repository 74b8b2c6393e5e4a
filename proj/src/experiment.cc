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

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>

#include "fmt/format.h"
#include "jointenc/errors.h"
#include "jointenc/parallel.h"
#include "nlohmann/json.hpp"
#include "spdlog/spdlog.h"

namespace jointenc {
namespace {

using nlohmann::json;

std::string ShortestDouble(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, r.ptr);
}

std::string EarLabel(const std::optional<Ear>& ear) { return ear ? ToString(*ear) : "both"; }

std::string AlphaLabel(const std::optional<double>& alpha) {
  return alpha ? ShortestDouble(*alpha) : "";
}

// Curve plus the indices needed to find its filter in a FrequencyDesign.
struct CurvePlan {
  ErrorCurve curve;
  std::size_t entry = 0;
  std::size_t alpha_index = 0;
};

std::vector<CurvePlan> CurvePlans(const ExperimentConfig& config) {
  std::vector<CurvePlan> plans;
  const int channels = NumShChannels(config.ambisonics_order);
  std::vector<std::optional<Ear>> entries;
  if (config.stacked) {
    entries.push_back(std::nullopt);
  } else {
    for (Ear e : config.ears) entries.push_back(e);
  }
  for (std::size_t e = 0; e < entries.size(); ++e) {
    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
      auto add = [&](Metric metric, std::optional<DegreeOrder> channel) {
        CurvePlan plan;
        plan.curve.metric = metric;
        plan.curve.channel = channel;
        plan.curve.ear = entries[e];
        plan.curve.alpha = config.alphas[a];
        plan.entry = e;
        plan.alpha_index = a;
        plans.push_back(plan);
      };
      for (int k = 0; k < channels; ++k) add(Metric::kXiAsmPerChannel, AcnToNm(k));
      add(Metric::kXiAsmMean, std::nullopt);
      add(Metric::kEpsAsmDesign, std::nullopt);
    }
  }
  for (Ear ear : EvaluatedEars(config)) {
    std::size_t entry = 0;
    if (!config.stacked) {
      entry = static_cast<std::size_t>(
          std::find(config.ears.begin(), config.ears.end(), ear) - config.ears.begin());
    }
    for (std::size_t a = 0; a < config.alphas.size(); ++a) {
      for (Metric metric : {Metric::kXiBsmJoint, Metric::kEpsBsmDesign}) {
        CurvePlan plan;
        plan.curve.metric = metric;
        plan.curve.ear = ear;
        plan.curve.alpha = config.alphas[a];
        plan.entry = entry;
        plan.alpha_index = a;
        plans.push_back(plan);
      }
    }
    CurvePlan plan;
    plan.curve.metric = Metric::kXiBsmStd;
    plan.curve.ear = ear;
    plans.push_back(plan);
  }
  return plans;
}

double EvaluatePlan(const CurvePlan& plan, const FrequencyDesign& d, const ExperimentSetup& setup) {
  const ErrorCurve& c = plan.curve;
  if (c.metric == Metric::kXiBsmStd) {
    for (const auto& [ear, vec] : d.std_bsm) {
      if (ear == *c.ear) return XiBsmStd(vec, d.v, d.hrtf, ear);
    }
    throw InvalidArgument("missing standard BSM filter for " + ToString(*c.ear));
  }
  const CMatrix& filter = d.ears.at(plan.entry).joint.at(plan.alpha_index).matrix;
  switch (c.metric) {
    case Metric::kXiAsmPerChannel:
      return XiAsmPerChannel(filter, d.v, setup.y, c.channel->n, c.channel->m);
    case Metric::kXiAsmMean: {
      double sum = 0.0;
      for (int k = 0; k < filter.cols(); ++k) {
        const DegreeOrder nm = AcnToNm(k);
        sum += XiAsmPerChannel(filter, d.v, setup.y, nm.n, nm.m);
      }
      return sum / static_cast<double>(filter.cols());
    }
    case Metric::kEpsAsmDesign:
      return AsmObjective(filter, d.v, setup.y, setup.noise);
    case Metric::kXiBsmJoint:
      return XiBsm(filter, d.v, d.hrtf, *c.ear);
    case Metric::kEpsBsmDesign:
      return BsmObjective(filter, d.v, d.hrtf, *c.ear, setup.noise);
    default:
      break;
  }
  throw InvalidArgument("unhandled metric");
}

json MatrixToJson(const CMatrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) data.push_back({m(i, j).real(), m(i, j).imag()});
  }
  return data;
}

json FilterToJson(const EncoderFilter& f) {
  json out;
  out["kind"] = ToString(f.kind);
  out["ear"] = ToString(f.ear);
  out["alpha"] = f.alpha ? json(*f.alpha) : json(nullptr);
  out["rows"] = f.matrix.rows();
  out["cols"] = f.matrix.cols();
  out["data"] = MatrixToJson(f.matrix);
  return out;
}

FilterKind ParseFilterKind(const std::string& s) {
  if (s == ToString(FilterKind::kAsm)) return FilterKind::kAsm;
  if (s == ToString(FilterKind::kBsmFlat)) return FilterKind::kBsmFlat;
  if (s == ToString(FilterKind::kJoint)) return FilterKind::kJoint;
  throw ParseError("unknown filter kind '" + s + "'", 0);
}

FilterEar ParseFilterEar(const std::string& s) {
  for (FilterEar e : {FilterEar::kNone, FilterEar::kLeft, FilterEar::kRight, FilterEar::kBoth}) {
    if (s == ToString(e)) return e;
  }
  throw ParseError("unknown filter ear '" + s + "'", 0);
}

std::filesystem::path WriteText(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
  return path;
}

void EnsureDirectory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

}  // namespace

ExperimentSetup PrepareSetup(const ExperimentConfig& config) {
  Validate(config);
  ArrayGeometry geometry;
  try {
    geometry = NamedGeometry(config.geometry);
  } catch (const InvalidArgument&) {
    geometry = LoadGeometryCsv(config.geometry, config.radius);
  }
  geometry.radius = config.radius;
  geometry.Validate();
  DirectionSet dirs = GenerateGrid(config.grid_kind, config.grid_size, config.grid_file);
  if (static_cast<int>(dirs.size()) < NumShChannels(config.ambisonics_order)) {
    throw ConfigError("grid.size: fewer directions than SH channels");
  }
  ShMatrix y = MakeShMatrix(dirs, config.ambisonics_order);
  PropagationModel model;
  model.sound_speed = config.sound_speed;
  model.warn_truncation = false;
  return ExperimentSetup{std::move(geometry), std::move(dirs), std::move(y),
                         NoiseModel::FromDb(config.snr_db), model};
}

std::vector<Ear> EvaluatedEars(const ExperimentConfig& config) {
  if (config.stacked) return {Ear::kLeft, Ear::kRight};
  return config.ears;
}

FrequencyDesign DesignAtFrequency(const ExperimentSetup& setup, const ExperimentConfig& config,
                                  double frequency, const std::vector<double>& alphas) {
  FrequencyDesign d;
  d.frequency = frequency;
  d.v = MakeSteeringMatrix(setup.geometry, setup.directions, frequency, config.reference_order,
                           setup.model);
  d.hrtf = SphericalHeadHrtf({}, setup.geometry.radius, setup.directions, frequency,
                             config.reference_order, setup.model);
  AttachShCoefficients(d.hrtf, setup.directions, config.ambisonics_order);
  d.asm_filter = AsmFilter(d.v, setup.y, setup.noise);
  const BsmMethod method =
      config.bsm_route == BsmRoute::kPinv ? BsmMethod::kPinv : BsmMethod::kReduced;
  auto add_entry = [&](EncoderFilter bsm) {
    EarDesign entry{bsm.ear, std::move(bsm), {}};
    for (double alpha : alphas) entry.joint.push_back(JointFilter(d.asm_filter, entry.bsm, alpha));
    d.ears.push_back(std::move(entry));
  };
  if (config.stacked) {
    add_entry(BsmFlatFilterStacked(d.v, d.hrtf, setup.noise));
  } else {
    for (Ear ear : config.ears) add_entry(BsmFlatFilter(d.v, d.hrtf, ear, setup.noise, method));
  }
  for (Ear ear : EvaluatedEars(config)) {
    d.std_bsm.emplace_back(ear, StdBsmFilter(d.v, d.hrtf, ear, setup.noise));
  }
  return d;
}

ExperimentResult RunExperiment(const ExperimentConfig& config) {
  const ExperimentSetup setup = PrepareSetup(config);
  ExperimentResult result;
  result.geometry_hash = GeometryHash(setup.geometry);
  const FrequencyGrid grid =
      FrequencyGrid::LogSpaced(config.min_hz, config.max_hz, config.num_frequencies,
                               config.sound_speed);
  result.frequencies = grid.frequencies();

  auto warn = [&](std::string message) {
    spdlog::warn("{}", message);
    result.warnings.push_back(std::move(message));
  };
  if (!PwdConditionHolds(config.ambisonics_order, setup.geometry.num_mics())) {
    warn(fmt::format("(N_a + 1)^2 <= M fails: order {} needs {} microphones, array has {}",
                     config.ambisonics_order, NumShChannels(config.ambisonics_order),
                     setup.geometry.num_mics()));
  }
  const double ka_max = grid.Wavenumber(grid.size() - 1) * setup.geometry.radius;
  if (!ReferenceOrderAdequate(config.reference_order, ka_max)) {
    warn(fmt::format("reference order {} truncates the scattering series above ka = {:.1f} "
                     "(max ka = {:.1f})",
                     config.reference_order, config.reference_order - 3.0, ka_max));
  }

  std::vector<CurvePlan> plans = CurvePlans(config);
  result.designs.resize(grid.size());
  std::vector<std::vector<double>> values(grid.size());
  ParallelFor(grid.size(), [&](std::size_t i) {
    FrequencyDesign d = DesignAtFrequency(setup, config, grid.frequencies()[i], config.alphas);
    values[i].reserve(plans.size());
    for (const CurvePlan& plan : plans) values[i].push_back(ToDb(EvaluatePlan(plan, d, setup)));
    result.designs[i] = std::move(d);
  });
  for (std::size_t s = 0; s < plans.size(); ++s) {
    ErrorCurve curve = plans[s].curve;
    curve.values_db.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) curve.values_db.push_back(values[i][s]);
    ValidateCurve(curve, grid.size());
    result.curves.push_back(std::move(curve));
  }
  return result;
}

std::string FormatCurvesCsv(const ExperimentResult& result) {
  std::string out = "frequency_hz,metric,ear,alpha,value_db\n";
  for (const ErrorCurve& curve : result.curves) {
    const std::string name = curve.Name();
    const std::string ear = EarLabel(curve.ear);
    const std::string alpha = AlphaLabel(curve.alpha);
    for (std::size_t i = 0; i < result.frequencies.size(); ++i) {
      out += fmt::format("{},{},{},{},{}\n", ShortestDouble(result.frequencies[i]), name, ear,
                         alpha, ShortestDouble(curve.values_db[i]));
    }
  }
  return out;
}

std::string FormatCurvesSvg(const ExperimentResult& result, const std::string& ear) {
  constexpr double kWidth = 800, kHeight = 480, kLeft = 70, kRight = 190, kTop = 30,
                   kBottom = 50;
  const auto& f = result.frequencies;
  std::vector<const ErrorCurve*> shown;
  for (const ErrorCurve& c : result.curves) {
    const bool asm_mean = c.metric == Metric::kXiAsmMean;
    const bool bsm = c.metric == Metric::kXiBsmJoint || c.metric == Metric::kXiBsmStd;
    if ((asm_mean || bsm) && EarLabel(c.ear) == ear) shown.push_back(&c);
  }
  double lo = 0.0, hi = 0.0;
  for (const ErrorCurve* c : shown) {
    for (double v : c->values_db) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  lo = std::floor(lo / 10.0) * 10.0;
  hi = std::max(std::ceil(hi / 10.0) * 10.0, lo + 10.0);
  const double f0 = std::log10(f.front()), f1 = std::log10(std::max(f.back(), f.front() * 1.01));
  auto x = [&](double freq) {
    return kLeft + (std::log10(freq) - f0) / (f1 - f0) * (kWidth - kLeft - kRight);
  };
  auto y = [&](double db) { return kTop + (hi - db) / (hi - lo) * (kHeight - kTop - kBottom); };

  static const char* kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
      kWidth, kHeight);
  out += fmt::format("<text x=\"{}\" y=\"18\" font-size=\"13\">Normalized errors, ear: {}</text>\n",
                     kLeft, ear);
  for (double db = lo; db <= hi + 1e-9; db += 10.0) {
    out += fmt::format(
        "<line x1=\"{:.1f}\" y1=\"{:.1f}\" x2=\"{:.1f}\" y2=\"{:.1f}\" stroke=\"#ddd\"/>"
        "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\">{:g}</text>\n",
        kLeft, y(db), kWidth - kRight, y(db), kLeft - 6, y(db) + 4, db);
  }
  for (double decade = std::pow(10.0, std::floor(f0)); decade <= f.back() * 1.0001; decade *= 10) {
    for (int m = 1; m < 10; ++m) {
      const double freq = decade * m;
      if (freq < f.front() * 0.9999 || freq > f.back() * 1.0001) continue;
      out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" "
                         "stroke=\"{3}\"/>\n",
                         x(freq), kTop, kHeight - kBottom, m == 1 ? "#bbb" : "#eee");
      if (m == 1 || m == 2 || m == 5) {
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{:g}</text>\n",
                           x(freq), kHeight - kBottom + 16, freq);
      }
    }
  }
  out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">frequency [Hz]"
                     "</text>\n<text x=\"16\" y=\"{:.1f}\" transform=\"rotate(-90 16 {:.1f})\" "
                     "text-anchor=\"middle\">error [dB]</text>\n",
                     (kLeft + kWidth - kRight) / 2, kHeight - 12, kHeight / 2, kHeight / 2);
  for (std::size_t c = 0; c < shown.size(); ++c) {
    const char* color = kColors[c % std::size(kColors)];
    std::string points;
    for (std::size_t i = 0; i < f.size(); ++i) {
      points += fmt::format("{:.2f},{:.2f} ", x(f[i]), y(shown[c]->values_db[i]));
    }
    const char* dash = shown[c]->metric == Metric::kXiAsmMean ? " stroke-dasharray=\"6 3\"" : "";
    out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{} "
                       "points=\"{}\"/>\n",
                       color, dash, points);
    std::string label = shown[c]->Name();
    if (shown[c]->alpha) label += " a=" + AlphaLabel(shown[c]->alpha);
    const double ly = kTop + 14.0 * c + 6;
    out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" "
                       "stroke=\"{3}\" stroke-width=\"2\"{4}/><text x=\"{5:.1f}\" y=\"{6:.1f}\">"
                       "{7}</text>\n",
                       kWidth - kRight + 10, ly, kWidth - kRight + 30, color, dash,
                       kWidth - kRight + 34, ly + 4, label);
  }
  out += "</svg>\n";
  return out;
}

std::string FormatFiltersJson(const ExperimentConfig& config, const ExperimentResult& result) {
  json doc;
  doc["format"] = "jointenc-filters";
  doc["version"] = kFilterFormatVersion;
  doc["geometry"] = {{"name", config.geometry},
                     {"radius_m", config.radius},
                     {"hash", result.geometry_hash},
                     {"num_mics", result.designs.empty() ? 0 : result.designs[0].v.entries.rows()}};
  doc["ambisonics_order"] = config.ambisonics_order;
  doc["snr_db"] = config.snr_db;
  doc["sh_convention"] = kShConventionTag;
  doc["time_convention"] = "exp(+i omega t)";
  doc["frequency_grid"] = "log";
  json freqs = json::array();
  for (const FrequencyDesign& d : result.designs) {
    json entry;
    entry["frequency_hz"] = d.frequency;
    json filters = json::array();
    filters.push_back(FilterToJson(d.asm_filter));
    for (const EarDesign& e : d.ears) {
      filters.push_back(FilterToJson(e.bsm));
      for (const EncoderFilter& j : e.joint) filters.push_back(FilterToJson(j));
    }
    entry["filters"] = std::move(filters);
    json std_bsm = json::array();
    for (const auto& [ear, vec] : d.std_bsm) {
      std_bsm.push_back({{"ear", ToString(ear)}, {"data", MatrixToJson(vec)}});
    }
    entry["std_bsm"] = std::move(std_bsm);
    freqs.push_back(std::move(entry));
  }
  doc["frequencies"] = std::move(freqs);
  return doc.dump(1) + "\n";
}

std::vector<FilterFileEntry> ParseFiltersJson(const std::string& text) {
  try {
    const json doc = json::parse(text);
    if (doc.at("format") != "jointenc-filters") throw ParseError("not a filter file", 0);
    const int version = doc.at("version").get<int>();
    if (version != kFilterFormatVersion) {
      throw ParseError(fmt::format("unsupported filter file version {}", version), 0);
    }
    std::vector<FilterFileEntry> out;
    for (const json& entry : doc.at("frequencies")) {
      FilterFileEntry fe{entry.at("frequency_hz").get<double>(), {}};
      for (const json& jf : entry.at("filters")) {
        EncoderFilter f;
        f.frequency = fe.frequency;
        f.kind = ParseFilterKind(jf.at("kind").get<std::string>());
        f.ear = ParseFilterEar(jf.at("ear").get<std::string>());
        if (!jf.at("alpha").is_null()) f.alpha = jf.at("alpha").get<double>();
        const auto rows = jf.at("rows").get<Eigen::Index>();
        const auto cols = jf.at("cols").get<Eigen::Index>();
        const json& data = jf.at("data");
        if (static_cast<Eigen::Index>(data.size()) != rows * cols) {
          throw ParseError("filter data length does not match rows x cols", 0);
        }
        f.matrix.resize(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i) {
          for (Eigen::Index j = 0; j < cols; ++j) {
            const json& z = data[i * cols + j];
            f.matrix(i, j) = Complex(z.at(0).get<double>(), z.at(1).get<double>());
          }
        }
        f.Validate();
        fe.filters.push_back(std::move(f));
      }
      out.push_back(std::move(fe));
    }
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("filter file: ") + e.what(), 0);
  }
}

std::vector<std::filesystem::path> WriteEvaluationOutputs(const ExperimentConfig& config,
                                                          const ExperimentResult& result,
                                                          const std::filesystem::path& dir) {
  EnsureDirectory(dir);
  std::vector<std::filesystem::path> written;
  written.push_back(WriteText(dir / "curves.csv", FormatCurvesCsv(result)));
  if (config.svg) {
    std::vector<std::string> labels;
    for (const ErrorCurve& c : result.curves) {
      const std::string label = EarLabel(c.ear);
      if (std::find(labels.begin(), labels.end(), label) == labels.end()) labels.push_back(label);
    }
    for (const std::string& label : labels) {
      written.push_back(
          WriteText(dir / ("curves_" + label + ".svg"), FormatCurvesSvg(result, label)));
    }
  }
  return written;
}

std::filesystem::path WriteFilterOutputs(const ExperimentConfig& config,
                                         const ExperimentResult& result,
                                         const std::filesystem::path& dir) {
  EnsureDirectory(dir);
  return WriteText(dir / "filters.json", FormatFiltersJson(config, result));
}

RenderMode ParseRenderMode(const std::string& name) {
  if (name == "foa") return RenderMode::kFoa;
  if (name == "binaural") return RenderMode::kBinaural;
  throw InvalidArgument("unknown render mode '" + name + "' (expected foa or binaural)");
}

FirFilterBank BuildRenderBank(const ExperimentConfig& config, RenderMode mode) {
  ExperimentConfig design_config = config;
  if (mode == RenderMode::kBinaural) {
    design_config.ears = {Ear::kLeft, Ear::kRight};
  } else {
    design_config.ears = {config.foa_ear};
  }
  const ExperimentSetup setup = PrepareSetup(design_config);
  const int length = config.fir_length;
  const std::vector<double> bins = DftBinFrequencies(length, config.sample_rate);
  const int num_mics = static_cast<int>(setup.geometry.num_mics());
  const int channels = NumShChannels(config.ambisonics_order);
  const int outputs = mode == RenderMode::kFoa ? channels : 2;

  std::vector<CMatrix> responses(bins.size());
  ParallelFor(bins.size(), [&](std::size_t k) {
    const double f = k == 0 ? bins[1] : bins[k];
    const FrequencyDesign d = DesignAtFrequency(setup, design_config, f, {config.render_alpha});
    CMatrix r(outputs, num_mics);
    if (mode == RenderMode::kFoa) {
      r = d.ears.at(0).joint.at(0).matrix.conjugate().transpose();
    } else {
      for (int o = 0; o < 2; ++o) {
        const Ear ear = o == 0 ? Ear::kLeft : Ear::kRight;
        const std::size_t entry = config.stacked ? 0 : static_cast<std::size_t>(o);
        const CMatrix& c = d.ears.at(entry).joint.at(0).matrix;
        r.row(o) = (c.conjugate() * d.hrtf.NmTilde(ear)).transpose();
      }
    }
    if (k == 0 || k + 1 == bins.size()) r = r.real().cast<Complex>();
    responses[k] = std::move(r);
  });
  return FirFilterBank::FromResponses(responses, length, config.sample_rate);
}

WavAudio RenderWav(const WavAudio& input, const FirFilterBank& bank) {
  if (input.num_channels() != bank.num_inputs()) {
    throw InvalidArgument(fmt::format("input has {} channels, the array has {} microphones",
                                      input.num_channels(), bank.num_inputs()));
  }
  if (std::abs(input.sample_rate - bank.sample_rate()) > 1e-9) {
    throw InvalidArgument(fmt::format("input sample rate {} Hz differs from the filter rate {} Hz",
                                      input.sample_rate, bank.sample_rate()));
  }
  std::vector<std::vector<double>> in(input.channels.size());
  for (std::size_t c = 0; c < in.size(); ++c) {
    in[c].assign(input.channels[c].begin(), input.channels[c].end());
  }
  const auto out = Convolve(bank, in);
  WavAudio result;
  result.sample_rate = input.sample_rate;
  for (const auto& ch : out) result.channels.emplace_back(ch.begin(), ch.end());
  return result;
}

}  // namespace jointenc
