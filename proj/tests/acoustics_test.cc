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

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"
#include "jointenc/errors.h"

namespace jointenc {
namespace {

constexpr double kPi = std::numbers::pi;

CVector RandomVector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

// Directions paired with their mirror images across the x-z plane:
// index 2k is (theta, phi) and 2k+1 is (theta, -phi).
DirectionSet MirroredDirections(int pairs, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> theta(0.0, kPi), phi(-kPi + 1e-3, kPi - 1e-3);
  std::vector<Direction> dirs;
  for (int k = 0; k < pairs; ++k) {
    const double t = theta(rng), p = phi(rng);
    dirs.emplace_back(t, p);
    dirs.emplace_back(t, -p);
  }
  return DirectionSet::Uniform(std::move(dirs));
}

// Second-order small-ka expansion of the rigid-sphere response.
Complex SmallKaResponse(double x, double cos_gamma) {
  const double p2 = 0.5 * (3.0 * cos_gamma * cos_gamma - 1.0);
  return Complex(1.0 - x * x / 2.0 - 5.0 / 9.0 * x * x * p2, 1.5 * x * cos_gamma);
}

double CosAngle(const Direction& a, const Direction& b) {
  const auto u = a.UnitVector(), v = b.UnitVector();
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

TEST(GeometryTest, EasycomGlasses) {
  const ArrayGeometry g = EasycomGlasses5();
  EXPECT_DOUBLE_EQ(g.radius, 0.10);
  ASSERT_EQ(g.num_mics(), 5u);
  EXPECT_NEAR(g.mic_directions[0].azimuth(), -70.0 * kPi / 180, 1e-15);
  EXPECT_NEAR(g.mic_directions[2].colatitude(), 108.0 * kPi / 180, 1e-15);
  EXPECT_EQ(NamedGeometry("easycom-glasses-5").num_mics(), 5u);
  EXPECT_THROW(NamedGeometry("nope"), InvalidArgument);
}

TEST(GeometryTest, CsvParsing) {
  const ArrayGeometry g = ParseGeometryCsv(
      "colatitude_rad,azimuth_rad\n1.5707963267948966,0.5\n1.0,-0.5\n", 0.08);
  EXPECT_EQ(g.num_mics(), 2u);
  EXPECT_DOUBLE_EQ(g.radius, 0.08);
  try {
    ParseGeometryCsv("colatitude_rad,azimuth_rad\n1.0,0.0\n1.0;0.0\n", 0.1);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
  EXPECT_THROW(ParseGeometryCsv("colatitude_rad,azimuth_rad\n1.0,0.0\n", 0.0),
               InvalidArgument);
}

TEST(GeometryTest, HashIsStableAndSensitive) {
  const ArrayGeometry g = EasycomGlasses5();
  EXPECT_EQ(GeometryHash(g), GeometryHash(EasycomGlasses5()));
  ArrayGeometry h = g;
  h.radius = 0.11;
  EXPECT_NE(GeometryHash(g), GeometryHash(h));
  EXPECT_EQ(GeometryHash(g).size(), 16u);
}

TEST(GeometryTest, PwdCondition) {
  // (1+1)^2 = 4 <= 5 holds; (2+1)^2 = 9 > 5 does not.
  EXPECT_TRUE(PwdConditionHolds(1, 5));
  EXPECT_FALSE(PwdConditionHolds(2, 5));
  EXPECT_TRUE(PwdConditionHolds(0, 1));
}

TEST(FrequencyGridTest, LogSpacedDefault) {
  const auto grid = FrequencyGrid::LogSpaced(50.0, 10000.0, 64);
  ASSERT_EQ(grid.size(), 64u);
  EXPECT_DOUBLE_EQ(grid.frequencies().front(), 50.0);
  EXPECT_DOUBLE_EQ(grid.frequencies().back(), 10000.0);
  EXPECT_NEAR(grid.Wavenumber(0), 2 * kPi * 50.0 / 343.0, 1e-15);
  EXPECT_THROW(FrequencyGrid({100.0, 100.0}), InvalidArgument);
  EXPECT_THROW(FrequencyGrid({0.0, 100.0}), InvalidArgument);
}

TEST(SteeringTest, ShapeOfGlassesArray) {
  const auto v = MakeSteeringMatrix(EasycomGlasses5(), FibonacciGrid(240), 1000.0);
  EXPECT_EQ(v.entries.rows(), 5);
  EXPECT_EQ(v.entries.cols(), 240);
  EXPECT_TRUE(AllFinite(v.entries));
  EXPECT_EQ(v.frequency, 1000.0);
}

TEST(SteeringTest, MatchesExplicitShSum) {
  const ArrayGeometry g = EasycomGlasses5();
  const DirectionSet dirs = FibonacciGrid(30);
  const int order = 12;
  const double f = 2500.0;
  const auto v = MakeSteeringMatrix(g, dirs, f, order);
  const auto b = RadialRigidSphere(order, 2 * kPi * f / 343.0 * g.radius,
                                   Scattering::kRigidSphere);
  const CMatrix y_dirs = MakeShMatrix(dirs, order).entries;
  for (std::size_t i = 0; i < g.num_mics(); ++i) {
    const CVector y_mic = ShRow(order, g.mic_directions[i]);
    for (std::size_t q = 0; q < dirs.size(); ++q) {
      Complex sum = 0;
      for (int n = 0; n <= order; ++n) {
        for (int m = -n; m <= n; ++m) {
          sum += b.values[n] * std::conj(y_dirs(q, Acn(n, m))) * y_mic(Acn(n, m));
        }
      }
      ASSERT_LT(std::abs(v.entries(i, q) - sum), 1e-12);
    }
  }
}

TEST(SteeringTest, MirrorSymmetry) {
  std::mt19937_64 rng(3);
  const DirectionSet dirs = MirroredDirections(60, rng);
  for (double f : {200.0, 1000.0, 4000.0, 10000.0}) {
    const auto v = MakeSteeringMatrix(EasycomGlasses5(), dirs, f);
    for (Eigen::Index k = 0; k < 60; ++k) {
      // Mic 4 at (90, 70) vs mic 0 at (90, -70); mic 3 vs mic 1.
      ASSERT_LT(std::abs(v.entries(4, 2 * k) - v.entries(0, 2 * k + 1)), 1e-10);
      ASSERT_LT(std::abs(v.entries(3, 2 * k) - v.entries(1, 2 * k + 1)), 1e-10);
    }
  }
}

TEST(SteeringTest, SmallKaLimit) {
  const ArrayGeometry g = EasycomGlasses5();
  const DirectionSet dirs = FibonacciGrid(240);
  const auto v_limit = MakeSteeringMatrix(g, dirs, 0.01);
  EXPECT_LT((v_limit.entries.array() - 1.0).abs().maxCoeff(), 1e-4);

  const double f = 10.0;
  const double x = 2 * kPi * f / 343.0 * g.radius;
  const auto v = MakeSteeringMatrix(g, dirs, f);
  for (std::size_t i = 0; i < g.num_mics(); ++i) {
    for (std::size_t q = 0; q < dirs.size(); ++q) {
      const Complex expected = SmallKaResponse(x, CosAngle(g.mic_directions[i], dirs[q]));
      ASSERT_LT(std::abs(v.entries(i, q) - expected), 1e-4);
    }
  }
}

TEST(SteeringTest, BoundedScatteringGain) {
  const DirectionSet dirs = FibonacciGrid(240);
  for (double ka : {0.5, 2.0, 5.0, 10.0}) {
    const double f = ka * 343.0 / (2 * kPi * 0.1);
    const auto v = MakeSteeringMatrix(EasycomGlasses5(), dirs, f, 20);
    EXPECT_LE(v.entries.cwiseAbs().maxCoeff(), 6.0) << ka;
  }
}

TEST(SteeringTest, Errors) {
  EXPECT_THROW(MakeSteeringMatrix(EasycomGlasses5(), FibonacciGrid(10), 0.0), DomainError);
  EXPECT_THROW(MakeSteeringMatrix(EasycomGlasses5(), FibonacciGrid(10), -5.0), DomainError);
  ArrayGeometry empty{0.1, {}};
  EXPECT_THROW(MakeSteeringMatrix(empty, FibonacciGrid(10), 100.0), InvalidArgument);
}

TEST(HrtfTest, EarMirrorAndFrontalSymmetry) {
  std::mt19937_64 rng(5);
  std::vector<Direction> dirs;
  const DirectionSet mirrored = MirroredDirections(50, rng);
  dirs = mirrored.directions();
  dirs.push_back(Direction::FromDegrees(90.0, 0.0));
  const DirectionSet all = DirectionSet::Uniform(dirs);
  for (double f : {300.0, 2000.0, 9000.0}) {
    const HrtfSet h = SphericalHeadHrtf({}, 0.1, all, f);
    for (Eigen::Index k = 0; k < 50; ++k) {
      ASSERT_LT(std::abs(h.left(2 * k) - h.right(2 * k + 1)), 1e-10);
    }
    EXPECT_LT(std::abs(h.left(100) - h.right(100)), 1e-10);
  }
}

TEST(HrtfTest, SmallKaLimit) {
  const DirectionSet dirs = FibonacciGrid(240);
  const HrtfSet limit = SphericalHeadHrtf({}, 0.1, dirs, 0.01);
  EXPECT_LT((limit.left.array() - 1.0).abs().maxCoeff(), 1e-4);
  EXPECT_LT((limit.right.array() - 1.0).abs().maxCoeff(), 1e-4);
  const double x = 2 * kPi * 10.0 / 343.0 * 0.1;
  const HrtfSet h = SphericalHeadHrtf({}, 0.1, dirs, 10.0);
  const EarPositions ears;
  for (std::size_t q = 0; q < dirs.size(); ++q) {
    ASSERT_LT(std::abs(h.left(q) - SmallKaResponse(x, CosAngle(ears.left, dirs[q]))), 1e-4);
    ASSERT_LT(std::abs(h.right(q) - SmallKaResponse(x, CosAngle(ears.right, dirs[q]))), 1e-4);
  }
}

TEST(HrtfTest, LeftEarHearsLeftSourcesLouder) {
  // +90 degrees azimuth is the listener's left.
  const DirectionSet dirs({Direction::FromDegrees(90, 90)}, {4 * kPi});
  const HrtfSet h = SphericalHeadHrtf({}, 0.1, dirs, 3000.0);
  EXPECT_GT(std::abs(h.left(0)), std::abs(h.right(0)));
}

TEST(ShTransformTest, ConstantVector) {
  const DirectionSet dirs = FibonacciGrid(240);
  const Complex c(0.7, -1.3);
  const CVector coeffs = ShTransform(CVector::Constant(240, c), dirs, 3);
  EXPECT_LT(std::abs(coeffs(0) - c * std::sqrt(4 * kPi)), 1e-10);
  EXPECT_LT(coeffs.tail(coeffs.size() - 1).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(ShTransformTest, SynthesisRoundTrip) {
  std::mt19937_64 rng(11);
  const DirectionSet dirs = FibonacciGrid(240);
  const CVector coeffs = RandomVector(25, rng);
  const CVector values = MakeShMatrix(dirs, 4).entries * coeffs;
  EXPECT_LT((ShTransform(values, dirs, 4) - coeffs).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ShTransformTest, TruncationLosesEnergy) {
  const DirectionSet dirs = FibonacciGrid(240);
  const HrtfSet h = SphericalHeadHrtf({}, 0.1, dirs, 1000.0, 20);
  const ShMatrix y = MakeShMatrix(dirs, 1);
  const CVector fit = ShTransform(h.left, dirs, y);
  const double residual = (y.entries * fit - h.left).squaredNorm() / h.left.squaredNorm();
  EXPECT_GT(residual, 0.0);
}

TEST(ShTransformTest, UnderDetermined) {
  EXPECT_THROW(ShTransform(CVector::Zero(10), FibonacciGrid(10), 3), ShapeError);
  EXPECT_THROW(ShTransform(CVector::Zero(9), FibonacciGrid(10), 1), ShapeError);
}

TEST(TildeTest, Properties) {
  std::mt19937_64 rng(2);
  const CVector x = RandomVector(16, rng);
  const CVector t = TildeTransform(x);
  EXPECT_EQ(TildeTransform(t), x);
  for (int n = 0; n <= 3; ++n) EXPECT_EQ(t(Acn(n, 0)), x(Acn(n, 0)));

  CVector one_hot = CVector::Zero(4);
  one_hot(Acn(1, 1)) = 1.0;
  const CVector out = TildeTransform(one_hot);
  for (int k = 0; k < 4; ++k) {
    EXPECT_EQ(out(k), k == Acn(1, -1) ? Complex(-1.0) : Complex(0.0));
  }
  EXPECT_THROW(TildeTransform(CVector::Zero(5)), ShapeError);
  EXPECT_THROW(TildeTransform(CVector()), ShapeError);
}

TEST(ReferenceTest, Ambisonics) {
  const DirectionSet dirs = FibonacciGrid(240);
  CVector s = CVector::Zero(240);
  s(17) = 1.0;
  const CVector a = ReferenceAmbisonics(s, dirs, 2);
  const CVector expected = ShRow(2, dirs[17]).conjugate();
  EXPECT_LT((a - expected).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(ReferenceAmbisonics(CVector::Zero(240), dirs, 2).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(ReferenceAmbisonics(CVector::Zero(10), dirs, 1), ShapeError);
}

TEST(ReferenceTest, AmbisonicsMatchesDirectSum) {
  const DirectionSet dirs = FibonacciGrid(240);
  const CVector s = CVector::Ones(240);
  const CVector a = ReferenceAmbisonics(s, dirs, 1);
  for (int n = 0; n <= 1; ++n) {
    for (int m = -n; m <= n; ++m) {
      Complex sum = 0;
      for (std::size_t q = 0; q < dirs.size(); ++q) sum += std::conj(ShValue(n, m, dirs[q]));
      EXPECT_LT(std::abs(a(Acn(n, m)) - sum), 1e-12);
    }
  }
}

TEST(ReferenceTest, Binaural) {
  std::mt19937_64 rng(4);
  const DirectionSet dirs = FibonacciGrid(240);
  const HrtfSet h = SphericalHeadHrtf({}, 0.1, dirs, 1500.0);
  CVector one_hot = CVector::Zero(240);
  one_hot(33) = 1.0;
  EXPECT_EQ(ReferenceBinaural(one_hot, h, Ear::kLeft), h.left(33));
  EXPECT_EQ(ReferenceBinaural(one_hot, h, Ear::kRight), h.right(33));
  const CVector s1 = RandomVector(240, rng), s2 = RandomVector(240, rng);
  const Complex lhs = ReferenceBinaural(s1 + s2, h, Ear::kLeft);
  const Complex rhs = ReferenceBinaural(s1, h, Ear::kLeft) + ReferenceBinaural(s2, h, Ear::kLeft);
  EXPECT_LT(std::abs(lhs - rhs), 1e-12 * std::abs(lhs));
  EXPECT_THROW(ReferenceBinaural(CVector::Zero(3), h, Ear::kLeft), ShapeError);
}

TEST(ReferenceTest, ShDomainRenderingMatchesSpatial) {
  // h~^T a_nm vs h^T s at matched order 20; h_nm is fitted on a grid dense
  // enough to resolve order 20.
  std::mt19937_64 rng(8);
  const DirectionSet design = FibonacciGrid(240);
  const DirectionSet dense = FibonacciGrid(1000);
  const double f = 1000.0;
  const HrtfSet on_design = SphericalHeadHrtf({}, 0.1, design, f, 20);
  HrtfSet on_dense = SphericalHeadHrtf({}, 0.1, dense, f, 20);
  AttachShCoefficients(on_dense, dense, 20);
  const ShMatrix y = MakeShMatrix(design, 20);
  for (int trial = 0; trial < 5; ++trial) {
    const CVector s = RandomVector(240, rng);
    const CVector a = ReferenceAmbisonics(s, y);
    for (Ear ear : {Ear::kLeft, Ear::kRight}) {
      const Complex sh_domain = on_dense.NmTilde(ear).transpose() * a;
      const Complex spatial = ReferenceBinaural(s, on_design, ear);
      EXPECT_LT(std::abs(sh_domain - spatial), 0.01 * std::abs(spatial));
    }
  }
}

TEST(AttachShTest, FillsBothEars) {
  const DirectionSet dirs = FibonacciGrid(240);
  HrtfSet h = SphericalHeadHrtf({}, 0.1, dirs, 500.0);
  AttachShCoefficients(h, dirs, 1);
  EXPECT_EQ(h.sh_order, 1);
  EXPECT_EQ(h.left_nm.size(), 4);
  EXPECT_EQ(h.right_nm_tilde, TildeTransform(h.right_nm));
}

}  // namespace
}  // namespace jointenc
