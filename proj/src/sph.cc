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

#include "jointenc/sph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <fmt/format.h>

#include "jointenc/errors.h"

namespace jointenc {
namespace {

constexpr double kPi = std::numbers::pi;

double WrapAzimuth(double azimuth) {
  double a = std::fmod(azimuth, 2.0 * kPi);
  if (a > kPi) a -= 2.0 * kPi;
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

// Powers of i: i^n for n >= 0.
Complex PowI(int n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double ParseDouble(std::string_view field, int line) {
  field = Trim(field);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(fmt::format("cannot parse number '{}'", field), line);
  }
  return value;
}

}  // namespace

DegreeOrder AcnToNm(int acn) {
  if (acn < 0) throw InvalidArgument("AcnToNm: negative channel index");
  const int n = static_cast<int>(std::floor(std::sqrt(static_cast<double>(acn))));
  // Guard against sqrt rounding at perfect squares.
  int nn = n;
  while ((nn + 1) * (nn + 1) <= acn) ++nn;
  while (nn * nn > acn) --nn;
  return {nn, acn - nn * nn - nn};
}

Direction::Direction(double colatitude, double azimuth) {
  if (!std::isfinite(colatitude) || !std::isfinite(azimuth)) {
    throw DomainError("Direction: non-finite angle");
  }
  if (colatitude < 0.0 || colatitude > kPi) {
    throw DomainError(
        fmt::format("Direction: colatitude {} outside [0, pi]", colatitude));
  }
  colatitude_ = colatitude;
  azimuth_ = WrapAzimuth(azimuth);
}

Direction Direction::FromDegrees(double colatitude_deg, double azimuth_deg) {
  return Direction(colatitude_deg * kPi / 180.0, azimuth_deg * kPi / 180.0);
}

std::array<double, 3> Direction::UnitVector() const {
  const double s = std::sin(colatitude_);
  return {s * std::cos(azimuth_), s * std::sin(azimuth_), std::cos(colatitude_)};
}

double AngularDistance(const Direction& a, const Direction& b) {
  const auto u = a.UnitVector();
  const auto v = b.UnitVector();
  const double dot = std::clamp(u[0] * v[0] + u[1] * v[1] + u[2] * v[2], -1.0, 1.0);
  return std::acos(dot);
}

DirectionSet::DirectionSet(std::vector<Direction> directions,
                           std::vector<double> weights)
    : directions_(std::move(directions)), weights_(std::move(weights)) {
  if (directions_.empty()) throw InvalidArgument("DirectionSet: empty");
  if (directions_.size() != weights_.size()) {
    throw InvalidArgument(fmt::format(
        "DirectionSet: {} directions but {} weights", directions_.size(),
        weights_.size()));
  }
  double sum = 0.0;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("DirectionSet: weights must be finite and >= 0");
    }
    sum += w;
  }
  if (std::abs(sum - kFourPi) > 1e-9 * kFourPi) {
    throw InvalidArgument(
        fmt::format("DirectionSet: weights sum to {:.12g}, expected 4*pi", sum));
  }
}

DirectionSet DirectionSet::Uniform(std::vector<Direction> directions) {
  const double w = kFourPi / static_cast<double>(directions.size());
  std::vector<double> weights(directions.size(), w);
  return DirectionSet(std::move(directions), std::move(weights));
}

CVector ShRow(int order, const Direction& dir) {
  if (order < 0) throw InvalidArgument("ShRow: negative order");
  const double x = std::cos(dir.colatitude());
  const double s = std::sin(dir.colatitude());
  // Normalized associated Legendre values p(n, m) for m >= 0, including the
  // Condon-Shortley phase and the 1/sqrt(4 pi) factor.
  const int stride = order + 1;
  std::vector<double> p(static_cast<std::size_t>(stride * stride), 0.0);
  auto at = [&](int n, int m) -> double& { return p[n * stride + m]; };
  at(0, 0) = 1.0 / std::sqrt(kFourPi);
  for (int m = 1; m <= order; ++m) {
    at(m, m) = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s * at(m - 1, m - 1);
  }
  for (int m = 0; m < order; ++m) {
    at(m + 1, m) = std::sqrt(2.0 * m + 3.0) * x * at(m, m);
  }
  for (int m = 0; m <= order; ++m) {
    for (int n = m + 2; n <= order; ++n) {
      const double a = std::sqrt((4.0 * n * n - 1.0) / (double(n) * n - double(m) * m));
      const double b = std::sqrt(((n - 1.0) * (n - 1.0) - double(m) * m) /
                                 (4.0 * (n - 1.0) * (n - 1.0) - 1.0));
      at(n, m) = a * (x * at(n - 1, m) - b * at(n - 2, m));
    }
  }
  CVector row(NumShChannels(order));
  for (int n = 0; n <= order; ++n) {
    row(Acn(n, 0)) = at(n, 0);
    for (int m = 1; m <= n; ++m) {
      const Complex positive = at(n, m) * std::polar(1.0, m * dir.azimuth());
      row(Acn(n, m)) = positive;
      row(Acn(n, -m)) = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(positive);
    }
  }
  return row;
}

Complex ShValue(int n, int m, const Direction& dir) {
  if (n < 0 || std::abs(m) > n) {
    throw InvalidArgument(fmt::format("ShValue: invalid degree m={} for n={}", m, n));
  }
  return ShRow(n, dir)(Acn(n, m));
}

ShMatrix MakeShMatrix(const DirectionSet& dirs, int order) {
  if (order < 0) throw InvalidArgument("MakeShMatrix: negative order");
  ShMatrix y{order, CMatrix(static_cast<Eigen::Index>(dirs.size()), NumShChannels(order))};
  for (std::size_t q = 0; q < dirs.size(); ++q) {
    y.entries.row(static_cast<Eigen::Index>(q)) = ShRow(order, dirs[q]).transpose();
  }
  return y;
}

SphericalBesselTable SphericalBessel(int order, double x) {
  if (order < 0) throw InvalidArgument("SphericalBessel: negative order");
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(fmt::format("SphericalBessel: argument {} must be > 0", x));
  }
  // One extra order is needed for the derivative of order 0.
  const int top = std::max(order, 1);
  SphericalBesselTable t;
  t.x = x;
  t.j.assign(top + 1, 0.0);
  t.y.assign(top + 1, 0.0);

  const double sx = std::sin(x);
  const double cx = std::cos(x);
  const double j0 = sx / x;
  const double j1 = sx / (x * x) - cx / x;

  if (top <= x) {
    t.j[0] = j0;
    t.j[1] = j1;
    for (int n = 1; n < top; ++n) {
      t.j[n + 1] = (2.0 * n + 1.0) / x * t.j[n] - t.j[n - 1];
    }
  } else {
    // Miller's downward recurrence, normalized against the closed form of
    // whichever of j0, j1 has the larger magnitude.
    const double span = std::max(static_cast<double>(top), x);
    const int start = static_cast<int>(span) + 20 + static_cast<int>(std::sqrt(40.0 * span));
    double above = 0.0;
    double current = 1e-30;
    for (int n = start; n >= 1; --n) {
      const double below = (2.0 * n + 1.0) / x * current - above;
      above = current;
      current = below;
      if (n - 1 <= top) t.j[n - 1] = current;
      if (n <= top) t.j[n] = above;
      if (std::abs(current) > 1e100) {
        current *= 1e-100;
        above *= 1e-100;
        for (int k = n - 1; k <= top; ++k) {
          if (k >= 0) t.j[k] *= 1e-100;
        }
      }
    }
    const double scale = std::abs(j0) >= std::abs(j1) ? j0 / t.j[0] : j1 / t.j[1];
    for (double& v : t.j) v *= scale;
  }

  t.y[0] = -cx / x;
  t.y[1] = -cx / (x * x) - sx / x;
  for (int n = 1; n < top; ++n) {
    t.y[n + 1] = (2.0 * n + 1.0) / x * t.y[n] - t.y[n - 1];
  }

  t.dj.assign(top + 1, 0.0);
  t.dy.assign(top + 1, 0.0);
  t.dj[0] = -t.j[1];
  t.dy[0] = -t.y[1];
  for (int n = 1; n <= top; ++n) {
    t.dj[n] = t.j[n - 1] - (n + 1.0) / x * t.j[n];
    t.dy[n] = t.y[n - 1] - (n + 1.0) / x * t.y[n];
  }
  const auto keep = static_cast<std::size_t>(order + 1);
  t.j.resize(keep);
  t.y.resize(keep);
  t.dj.resize(keep);
  t.dy.resize(keep);
  return t;
}

double SphericalBesselJ(int n, double x) { return SphericalBessel(n, x).j[n]; }
double SphericalBesselY(int n, double x) { return SphericalBessel(n, x).y[n]; }
double SphericalBesselJDerivative(int n, double x) { return SphericalBessel(n, x).dj[n]; }
double SphericalBesselYDerivative(int n, double x) { return SphericalBessel(n, x).dy[n]; }

Complex SphericalHankel2(int n, double x) {
  const auto t = SphericalBessel(n, x);
  return {t.j[n], -t.y[n]};
}

Complex SphericalHankel2Derivative(int n, double x) {
  const auto t = SphericalBessel(n, x);
  return {t.dj[n], -t.dy[n]};
}

RadialWeights RadialRigidSphere(int order, double ka, Scattering scattering,
                                TimeConvention convention) {
  if (!(ka > 0.0) || !std::isfinite(ka)) {
    throw DomainError(fmt::format("RadialRigidSphere: ka = {} must be > 0", ka));
  }
  if (order < 0) throw InvalidArgument("RadialRigidSphere: negative order");
  const auto t = SphericalBessel(order, ka);
  RadialWeights b{order, ka, scattering, {}};
  b.values.resize(static_cast<std::size_t>(order + 1));
  const bool positive = convention == TimeConvention::kPositive;
  for (int n = 0; n <= order; ++n) {
    if (scattering == Scattering::kOpenSphere) {
      b.values[n] = kFourPi * PowI(n) * t.j[n];
    } else {
      // j_n - (j'_n / h'_n) h_n collapses through the Wronskian
      // j y' - j' y = 1/x^2 to -i / (x^2 h'_n) for h = h^(2).
      const Complex dh2(t.dj[n], -t.dy[n]);
      b.values[n] = kFourPi * PowI(n) * Complex(0.0, -1.0) / (ka * ka * dh2);
    }
    if (!positive) b.values[n] = std::conj(b.values[n]);
  }
  return b;
}

DirectionSet FibonacciGrid(int q) {
  if (q < 1) throw InvalidArgument("FibonacciGrid: Q must be >= 1");
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  std::vector<Direction> dirs;
  dirs.reserve(static_cast<std::size_t>(q));
  for (int i = 0; i < q; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / q;
    dirs.emplace_back(std::acos(std::clamp(z, -1.0, 1.0)), i * golden);
  }
  return DirectionSet::Uniform(std::move(dirs));
}

DirectionSet EqualAngleGrid(int n_theta) {
  if (n_theta < 1) throw InvalidArgument("EqualAngleGrid: n_theta must be >= 1");
  const int n_phi = 2 * n_theta;
  std::vector<Direction> dirs;
  std::vector<double> weights;
  dirs.reserve(static_cast<std::size_t>(n_theta * n_phi));
  weights.reserve(dirs.capacity());
  for (int j = 0; j < n_theta; ++j) {
    const double theta = kPi * (j + 0.5) / n_theta;
    // Fejer's first rule on cos(theta) in [-1, 1].
    double sum = 0.0;
    for (int k = 1; k <= n_theta / 2; ++k) {
      sum += std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    }
    const double w_theta = 2.0 / n_theta * (1.0 - 2.0 * sum);
    for (int l = 0; l < n_phi; ++l) {
      dirs.emplace_back(theta, 2.0 * kPi * l / n_phi);
      weights.push_back(w_theta * 2.0 * kPi / n_phi);
    }
  }
  // Fejer weights sum to 2 up to rounding; renormalize the last few ulps.
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (double& w : weights) w *= kFourPi / total;
  return DirectionSet(std::move(dirs), std::move(weights));
}

DirectionSet EqualAngleGridForOrder(int order) {
  if (order < 0) throw InvalidArgument("EqualAngleGridForOrder: negative order");
  return EqualAngleGrid(2 * order + 2);
}

DirectionSet ParseGridCsv(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool have_header = false;
  std::vector<Direction> dirs;
  std::vector<double> weights;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = Trim(raw);
    if (line.empty()) continue;
    if (!have_header) {
      if (line != "colatitude_rad,azimuth_rad,weight") {
        throw ParseError(
            "expected header 'colatitude_rad,azimuth_rad,weight'", line_no);
      }
      have_header = true;
      continue;
    }
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (true) {
      const auto comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma == std::string_view::npos
                                            ? std::string_view::npos
                                            : comma - pos));
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (fields.size() != 3) {
      throw ParseError(fmt::format("expected 3 fields, found {}", fields.size()),
                       line_no);
    }
    const double theta = ParseDouble(fields[0], line_no);
    const double phi = ParseDouble(fields[1], line_no);
    const double w = ParseDouble(fields[2], line_no);
    try {
      dirs.emplace_back(theta, phi);
    } catch (const DomainError& e) {
      throw ParseError(e.what(), line_no);
    }
    weights.push_back(w);
  }
  if (!have_header) throw ParseError("empty grid file", line_no);
  try {
    return DirectionSet(std::move(dirs), std::move(weights));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), line_no);
  }
}

DirectionSet LoadGridCsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grid file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseGridCsv(buffer.str());
}

std::string FormatGridCsv(const DirectionSet& dirs) {
  std::string out = "colatitude_rad,azimuth_rad,weight\n";
  for (std::size_t q = 0; q < dirs.size(); ++q) {
    out += fmt::format("{:.17g},{:.17g},{:.17g}\n", dirs[q].colatitude(),
                       dirs[q].azimuth(), dirs.weights()[q]);
  }
  return out;
}

DirectionSet GenerateGrid(GridKind kind, int q, const std::filesystem::path& path) {
  switch (kind) {
    case GridKind::kFibonacci:
      return FibonacciGrid(q);
    case GridKind::kEqualAngle: {
      if (q < 1) throw InvalidArgument("GenerateGrid: Q must be >= 1");
      const int n = static_cast<int>(std::lround(std::sqrt(q / 2.0)));
      if (2 * n * n != q) {
        throw InvalidArgument(fmt::format(
            "GenerateGrid: equal-angle grid needs Q = 2 n^2, got {}", q));
      }
      return EqualAngleGrid(n);
    }
    case GridKind::kFile:
      return LoadGridCsv(path);
  }
  throw InvalidArgument("GenerateGrid: unknown grid kind");
}

GridKind ParseGridKind(const std::string& name) {
  if (name == "fibonacci") return GridKind::kFibonacci;
  if (name == "equal-angle") return GridKind::kEqualAngle;
  if (name == "file") return GridKind::kFile;
  throw InvalidArgument("unknown grid kind '" + name + "'");
}

std::string ToString(GridKind kind) {
  switch (kind) {
    case GridKind::kFibonacci: return "fibonacci";
    case GridKind::kEqualAngle: return "equal-angle";
    case GridKind::kFile: return "file";
  }
  return "unknown";
}

}  // namespace jointenc
