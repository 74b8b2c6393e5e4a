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

#include "jointenc/acoustics.h"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include "jointenc/errors.h"

namespace jointenc {
namespace {

constexpr double kPi = std::numbers::pi;

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double ParseField(std::string_view field, int line) {
  field = Trim(field);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(fmt::format("cannot parse number '{}'", field), line);
  }
  return value;
}

void CheckFrequency(double freq_hz) {
  if (!(freq_hz > 0.0) || !std::isfinite(freq_hz)) {
    throw DomainError(fmt::format("frequency {} Hz must be > 0", freq_hz));
  }
}

}  // namespace

std::string ToString(Ear ear) { return ear == Ear::kLeft ? "left" : "right"; }

Ear ParseEar(const std::string& name) {
  if (name == "left") return Ear::kLeft;
  if (name == "right") return Ear::kRight;
  throw InvalidArgument("unknown ear '" + name + "'");
}

void ArrayGeometry::Validate() const {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw InvalidArgument(fmt::format("array radius {} must be > 0", radius));
  }
  if (mic_directions.empty()) throw InvalidArgument("array has no microphones");
}

ArrayGeometry EasycomGlasses5() {
  return {0.10,
          {Direction::FromDegrees(90.0, -70.0), Direction::FromDegrees(72.0, -35.0),
           Direction::FromDegrees(108.0, 0.0), Direction::FromDegrees(72.0, 35.0),
           Direction::FromDegrees(90.0, 70.0)}};
}

ArrayGeometry NamedGeometry(const std::string& name) {
  if (name == "easycom-glasses-5") return EasycomGlasses5();
  throw InvalidArgument("unknown geometry '" + name + "'");
}

ArrayGeometry ParseGeometryCsv(const std::string& text, double radius) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  ArrayGeometry geometry{radius, {}};
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (!have_header) {
      if (line != "colatitude_rad,azimuth_rad") {
        throw ParseError("expected header 'colatitude_rad,azimuth_rad'", line_no);
      }
      have_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos ||
        line.find(',', comma + 1) != std::string_view::npos) {
      throw ParseError("expected 2 fields", line_no);
    }
    const double theta = ParseField(line.substr(0, comma), line_no);
    const double phi = ParseField(line.substr(comma + 1), line_no);
    try {
      geometry.mic_directions.emplace_back(theta, phi);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  if (!have_header) throw ParseError("empty geometry file", line_no);
  geometry.Validate();
  return geometry;
}

ArrayGeometry LoadGeometryCsv(const std::filesystem::path& path, double radius) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open geometry file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGeometryCsv(buffer.str(), radius);
}

std::string GeometryHash(const ArrayGeometry& geometry) {
  std::string text = fmt::format("{:.17g}", geometry.radius);
  for (const auto& d : geometry.mic_directions) {
    text += fmt::format(";{:.17g},{:.17g}", d.colatitude(), d.azimuth());
  }
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return fmt::format("{:016x}", hash);
}

bool PwdConditionHolds(int ambisonics_order, std::size_t num_mics) {
  return static_cast<std::size_t>(NumShChannels(ambisonics_order)) <= num_mics;
}

bool ReferenceOrderAdequate(int ref_order, double ka) { return ref_order >= ka + 3.0; }

FrequencyGrid::FrequencyGrid(std::vector<double> frequencies, double sound_speed)
    : frequencies_(std::move(frequencies)), sound_speed_(sound_speed) {
  if (frequencies_.empty()) throw InvalidArgument("FrequencyGrid: empty");
  if (!(sound_speed_ > 0.0)) throw InvalidArgument("FrequencyGrid: sound speed must be > 0");
  for (std::size_t i = 0; i < frequencies_.size(); ++i) {
    if (!(frequencies_[i] > 0.0) || !std::isfinite(frequencies_[i])) {
      throw InvalidArgument("FrequencyGrid: frequencies must be > 0");
    }
    if (i > 0 && !(frequencies_[i] > frequencies_[i - 1])) {
      throw InvalidArgument("FrequencyGrid: frequencies must be strictly increasing");
    }
  }
}

FrequencyGrid FrequencyGrid::LogSpaced(double min_hz, double max_hz, int count,
                                       double sound_speed) {
  if (count < 1) throw InvalidArgument("FrequencyGrid: count must be >= 1");
  if (!(min_hz > 0.0) || (count > 1 && !(max_hz > min_hz))) {
    throw InvalidArgument("FrequencyGrid: need 0 < min_hz < max_hz");
  }
  std::vector<double> f(static_cast<std::size_t>(count));
  if (count == 1) {
    f[0] = min_hz;
  } else {
    const double ratio = std::log(max_hz / min_hz);
    for (int i = 0; i < count; ++i) {
      f[i] = min_hz * std::exp(ratio * i / (count - 1));
    }
    f.back() = max_hz;
  }
  return FrequencyGrid(std::move(f), sound_speed);
}

double FrequencyGrid::Wavenumber(std::size_t i) const {
  return 2.0 * kPi * frequencies_.at(i) / sound_speed_;
}

CMatrix RigidSpherePressure(const std::vector<Direction>& points, double radius,
                            const DirectionSet& dirs, double freq_hz,
                            int ref_order, const PropagationModel& model) {
  CheckFrequency(freq_hz);
  if (!(radius > 0.0)) throw DomainError("sphere radius must be > 0");
  if (ref_order < 0) throw InvalidArgument("reference order must be >= 0");
  const double ka = 2.0 * kPi * freq_hz / model.sound_speed * radius;
  if (model.warn_truncation && !ReferenceOrderAdequate(ref_order, ka)) {
    spdlog::warn("reference order {} truncates the sphere response at ka = {:.3f} "
                 "(need >= {:.0f})",
                 ref_order, ka, std::ceil(ka + 3.0));
  }
  const RadialWeights b =
      RadialRigidSphere(ref_order, ka, Scattering::kRigidSphere, model.convention);
  // Addition theorem: sum_m conj(Y_nm(q)) Y_nm(p) = (2n+1)/(4 pi) P_n(cos gamma).
  std::vector<Complex> scaled(b.values.size());
  for (int n = 0; n <= ref_order; ++n) scaled[n] = b.values[n] * (2.0 * n + 1.0) / kFourPi;

  CMatrix out(static_cast<Eigen::Index>(points.size()),
              static_cast<Eigen::Index>(dirs.size()));
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto u = points[i].UnitVector();
    for (std::size_t q = 0; q < dirs.size(); ++q) {
      const auto v = dirs[q].UnitVector();
      const double x = std::clamp(u[0] * v[0] + u[1] * v[1] + u[2] * v[2], -1.0, 1.0);
      double p_prev = 1.0;
      double p_curr = x;
      Complex sum = scaled[0];
      if (ref_order >= 1) sum += scaled[1] * x;
      for (int n = 2; n <= ref_order; ++n) {
        const double p_next = ((2.0 * n - 1.0) * x * p_curr - (n - 1.0) * p_prev) / n;
        p_prev = p_curr;
        p_curr = p_next;
        sum += scaled[n] * p_curr;
      }
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(q)) = sum;
    }
  }
  return out;
}

SteeringMatrix MakeSteeringMatrix(const ArrayGeometry& geometry,
                                  const DirectionSet& dirs, double freq_hz,
                                  int ref_order, const PropagationModel& model) {
  geometry.Validate();
  return {freq_hz, RigidSpherePressure(geometry.mic_directions, geometry.radius,
                                       dirs, freq_hz, ref_order, model)};
}

HrtfSet SphericalHeadHrtf(const EarPositions& ears, double radius,
                          const DirectionSet& dirs, double freq_hz, int ref_order,
                          const PropagationModel& model) {
  const CMatrix p = RigidSpherePressure({ears.left, ears.right}, radius, dirs,
                                        freq_hz, ref_order, model);
  HrtfSet h;
  h.frequency = freq_hz;
  h.left = p.row(0).transpose();
  h.right = p.row(1).transpose();
  return h;
}

CVector ShTransform(const CVector& values, const DirectionSet& dirs,
                    const ShMatrix& y) {
  const auto q = static_cast<Eigen::Index>(dirs.size());
  if (values.size() != q || y.entries.rows() != q) {
    throw ShapeError(fmt::format("ShTransform: {} values for {} directions",
                                 values.size(), q));
  }
  if (q < y.entries.cols()) {
    throw ShapeError(fmt::format(
        "ShTransform: under-determined, {} directions for {} coefficients", q,
        y.entries.cols()));
  }
  RVector sqrt_w(q);
  for (Eigen::Index i = 0; i < q; ++i) sqrt_w(i) = std::sqrt(dirs.weights()[i]);
  const CMatrix a = sqrt_w.asDiagonal() * y.entries;
  const CVector rhs = sqrt_w.asDiagonal() * values;
  return a.completeOrthogonalDecomposition().solve(rhs);
}

CVector ShTransform(const CVector& values, const DirectionSet& dirs, int order) {
  if (static_cast<long>(dirs.size()) < NumShChannels(order)) {
    throw ShapeError(fmt::format(
        "ShTransform: under-determined, {} directions for order {}", dirs.size(),
        order));
  }
  return ShTransform(values, dirs, MakeShMatrix(dirs, order));
}

CVector TildeTransform(const CVector& coeffs) {
  const auto len = coeffs.size();
  const int order = static_cast<int>(std::lround(std::sqrt(static_cast<double>(len)))) - 1;
  if (len == 0 || NumShChannels(order) != len) {
    throw ShapeError(fmt::format(
        "TildeTransform: {} coefficients is not a complete set of orders", len));
  }
  CVector out(len);
  for (int n = 0; n <= order; ++n) {
    for (int m = -n; m <= n; ++m) {
      out(Acn(n, m)) = (m % 2 == 0 ? 1.0 : -1.0) * coeffs(Acn(n, -m));
    }
  }
  return out;
}

void AttachShCoefficients(HrtfSet& hrtf, const DirectionSet& dirs, int order) {
  const ShMatrix y = MakeShMatrix(dirs, order);
  hrtf.sh_order = order;
  hrtf.left_nm = ShTransform(hrtf.left, dirs, y);
  hrtf.right_nm = ShTransform(hrtf.right, dirs, y);
  hrtf.left_nm_tilde = TildeTransform(hrtf.left_nm);
  hrtf.right_nm_tilde = TildeTransform(hrtf.right_nm);
}

CVector ReferenceAmbisonics(const CVector& sources, const ShMatrix& y) {
  if (sources.size() != y.entries.rows()) {
    throw ShapeError(fmt::format("ReferenceAmbisonics: {} sources for {} directions",
                                 sources.size(), y.entries.rows()));
  }
  return y.entries.adjoint() * sources;
}

CVector ReferenceAmbisonics(const CVector& sources, const DirectionSet& dirs,
                            int order) {
  return ReferenceAmbisonics(sources, MakeShMatrix(dirs, order));
}

Complex ReferenceBinaural(const CVector& sources, const HrtfSet& hrtf, Ear ear) {
  const CVector& h = hrtf.Spatial(ear);
  if (sources.size() != h.size()) {
    throw ShapeError(fmt::format("ReferenceBinaural: {} sources for {} HRTF directions",
                                 sources.size(), h.size()));
  }
  return h.transpose() * sources;
}

}  // namespace jointenc
