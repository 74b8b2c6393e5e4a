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

#ifndef JOINTENC_SPH_H_
#define JOINTENC_SPH_H_

// Spherical-harmonic and radial-function kernels.
//
// Conventions used throughout the library:
//  * complex orthonormal spherical harmonics with the Condon-Shortley phase,
//    Y_{n,-m} = (-1)^m conj(Y_{n,m});
//  * ACN channel order, index n^2 + n + m;
//  * colatitude measured from +z, azimuth from +x towards +y;
//  * time dependence exp(+i w t) with outgoing waves in h^(2) by default.

#include <array>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

#include "jointenc/linalg.h"

namespace jointenc {

inline constexpr double kFourPi = 4.0 * std::numbers::pi;

// ACN index of (n, m).
constexpr int Acn(int n, int m) { return n * n + n + m; }
constexpr int NumShChannels(int order) { return (order + 1) * (order + 1); }

// Inverse of Acn.
struct DegreeOrder {
  int n;
  int m;
};
DegreeOrder AcnToNm(int acn);

class Direction {
 public:
  // Throws DomainError when colatitude is outside [0, pi] or either value is
  // not finite. Azimuth is wrapped into (-pi, pi].
  Direction(double colatitude, double azimuth);

  static Direction FromDegrees(double colatitude_deg, double azimuth_deg);

  double colatitude() const { return colatitude_; }
  double azimuth() const { return azimuth_; }
  std::array<double, 3> UnitVector() const;

 private:
  double colatitude_;
  double azimuth_;
};

// Directions with quadrature weights summing to 4 pi.
class DirectionSet {
 public:
  // Throws InvalidArgument when sizes differ, the set is empty, a weight is
  // negative, or the weights do not sum to 4 pi within 1e-9 relative.
  DirectionSet(std::vector<Direction> directions, std::vector<double> weights);

  // Uniform weights 4 pi / Q.
  static DirectionSet Uniform(std::vector<Direction> directions);

  std::size_t size() const { return directions_.size(); }
  const std::vector<Direction>& directions() const { return directions_; }
  const std::vector<double>& weights() const { return weights_; }
  const Direction& operator[](std::size_t i) const { return directions_[i]; }

 private:
  std::vector<Direction> directions_;
  std::vector<double> weights_;
};

// Q x (N+1)^2 matrix; row q holds Y_nm(direction q) in ACN order.
struct ShMatrix {
  int order = 0;
  CMatrix entries;
};

Complex ShValue(int n, int m, const Direction& dir);

// All Y_nm for n <= order at one direction, ACN ordered.
CVector ShRow(int order, const Direction& dir);

ShMatrix MakeShMatrix(const DirectionSet& dirs, int order);

// Spherical Bessel functions and their derivatives for orders 0..order at x.
struct SphericalBesselTable {
  double x = 0.0;
  std::vector<double> j, y, dj, dy;
};

// Throws DomainError unless x > 0 and order >= 0.
SphericalBesselTable SphericalBessel(int order, double x);

double SphericalBesselJ(int n, double x);
double SphericalBesselY(int n, double x);
double SphericalBesselJDerivative(int n, double x);
double SphericalBesselYDerivative(int n, double x);
Complex SphericalHankel2(int n, double x);
Complex SphericalHankel2Derivative(int n, double x);

enum class Scattering { kRigidSphere, kOpenSphere };

// Selects the Hankel kind and the sign of i^n in the plane-wave expansion.
// kPositive is exp(+i w t) with h^(2); kNegative is exp(-i w t) with h^(1)
// and conjugates every radial weight.
enum class TimeConvention { kPositive, kNegative };

struct RadialWeights {
  int order = 0;
  double ka = 0.0;
  Scattering scattering = Scattering::kRigidSphere;
  std::vector<Complex> values;  // b_n for n = 0..order
};

// Rigid: b_n = 4 pi i^n [j_n - j'_n / h'_n h_n]; open: b_n = 4 pi i^n j_n.
RadialWeights RadialRigidSphere(int order, double ka, Scattering scattering,
                                TimeConvention convention =
                                    TimeConvention::kPositive);

enum class GridKind { kFibonacci, kEqualAngle, kFile };

// Spherical Fibonacci spiral with uniform weights.
DirectionSet FibonacciGrid(int q);

// Equal-angle grid: n_theta midpoint colatitudes with Fejer weights times
// 2 n_theta equispaced azimuths. Integrates spherical-harmonic products up to
// combined degree n_theta - 1 exactly.
DirectionSet EqualAngleGrid(int n_theta);

// Smallest equal-angle grid that integrates Y_nm^* Y_n'm' exactly for n, n' <= order.
DirectionSet EqualAngleGridForOrder(int order);

// CSV with header "colatitude_rad,azimuth_rad,weight".
DirectionSet LoadGridCsv(const std::filesystem::path& path);
DirectionSet ParseGridCsv(const std::string& text);
std::string FormatGridCsv(const DirectionSet& dirs);

// kFibonacci takes Q points; kEqualAngle needs Q = 2 n^2; kFile reads `path`.
DirectionSet GenerateGrid(GridKind kind, int q,
                          const std::filesystem::path& path = {});

GridKind ParseGridKind(const std::string& name);
std::string ToString(GridKind kind);

// Angle in radians between two directions.
double AngularDistance(const Direction& a, const Direction& b);

}  // namespace jointenc

#endif  // JOINTENC_SPH_H_
