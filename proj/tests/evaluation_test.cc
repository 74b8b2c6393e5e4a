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

#include "jointenc/evaluation.h"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "jointenc/errors.h"

namespace jointenc {
namespace {

const NoiseModel kNoise = NoiseModel::FromDb(40.0);

struct Scene {
  SteeringMatrix v;
  ShMatrix y;
  HrtfSet hrtf;
};

Scene GlassesScene(double f, TimeConvention convention = TimeConvention::kPositive) {
  const DirectionSet dirs = FibonacciGrid(240);
  PropagationModel model;
  model.convention = convention;
  Scene s{MakeSteeringMatrix(EasycomGlasses5(), dirs, f, kDefaultReferenceOrder, model),
          MakeShMatrix(dirs, 1),
          SphericalHeadHrtf({}, 0.1, dirs, f, kDefaultReferenceOrder, model)};
  AttachShCoefficients(s.hrtf, dirs, 1);
  return s;
}

CVector RandomVector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  CVector out(n);
  for (auto& z : out) z = Complex(g(rng), g(rng));
  return out;
}

TEST(DbTest, Conversion) {
  EXPECT_EQ(ToDb(1.0), 0.0);
  EXPECT_DOUBLE_EQ(ToDb(0.01), -20.0);
  EXPECT_EQ(ToDb(0.0), kDbFloor);
  EXPECT_EQ(ToDb(1e-30), kDbFloor);
}

TEST(XiTest, ZeroFilterIsZeroDb) {
  const Scene s = GlassesScene(1000.0);
  const CMatrix zero = CMatrix::Zero(5, 4);
  for (int k = 0; k < 4; ++k) {
    const DegreeOrder nm = AcnToNm(k);
    EXPECT_DOUBLE_EQ(XiAsmPerChannel(zero, s.v, s.y, nm.n, nm.m), 1.0);
  }
  EXPECT_DOUBLE_EQ(XiBsm(zero, s.v, s.hrtf, Ear::kLeft), 1.0);
  EXPECT_DOUBLE_EQ(XiBsmStd(CVector::Zero(5), s.v, s.hrtf, Ear::kRight), 1.0);
  EXPECT_THROW(XiAsmPerChannel(zero, s.v, s.y, 2, 0), InvalidArgument);
  EXPECT_THROW(XiAsmPerChannel(zero, s.v, s.y, 1, 2), InvalidArgument);
  EXPECT_THROW(XiBsmStd(CVector::Zero(4), s.v, s.hrtf, Ear::kRight), ShapeError);
}

TEST(XiTest, ExactFitOnDeterminedSystem) {
  std::mt19937_64 rng(3);
  const DirectionSet dirs = FibonacciGrid(4);
  const ShMatrix y = MakeShMatrix(dirs, 0);
  CMatrix v(4, 4);
  for (int j = 0; j < 4; ++j) v.col(j) = RandomVector(4, rng);
  const SteeringMatrix sv{500.0, v};
  const CMatrix c = v.adjoint().colPivHouseholderQr().solve(y.entries);
  EXPECT_LT(XiAsmPerChannel(c, sv, y, 0, 0), 1e-12);

  HrtfSet h;
  h.frequency = 500.0;
  h.left = RandomVector(4, rng);
  h.right = h.left;
  const CVector c_std = StdBsmFilter(sv, h, Ear::kLeft, NoiseModel(1e14));
  EXPECT_LT(XiBsmStd(c_std, sv, h, Ear::kLeft), 1e-10);
}

TEST(XiTest, AlphaZeroMatchesStandardBsm) {
  for (double f : {150.0, 1000.0, 4000.0, 9500.0}) {
    const Scene s = GlassesScene(f);
    for (Ear ear : {Ear::kLeft, Ear::kRight}) {
      const double flat = XiBsm(BsmFlatFilter(s.v, s.hrtf, ear, kNoise).matrix, s.v, s.hrtf, ear);
      const double std_bsm = XiBsmStd(StdBsmFilter(s.v, s.hrtf, ear, kNoise), s.v, s.hrtf, ear);
      EXPECT_NEAR(flat, std_bsm, 1e-9 * std_bsm) << f;
    }
  }
}

TEST(XiTest, AmbisonicsFilterIsPoorBinaurally) {
  const Scene s = GlassesScene(2000.0);
  const EncoderFilter a = AsmFilter(s.v, s.y, kNoise);
  for (Ear ear : {Ear::kLeft, Ear::kRight}) {
    const EncoderFilter b = BsmFlatFilter(s.v, s.hrtf, ear, kNoise);
    EXPECT_GT(XiBsm(a.matrix, s.v, s.hrtf, ear), XiBsm(b.matrix, s.v, s.hrtf, ear));
  }
}

TEST(XiTest, ChannelErrorEqualsDesignErrorWithoutNoise) {
  const Scene s = GlassesScene(200.0);
  const CMatrix c = AsmFilter(s.v, s.y, kNoise).matrix;
  const CVector col = c.col(0);
  const CVector y00 = s.y.entries.col(0);
  const double design = ((s.v.entries.adjoint() * col - y00).squaredNorm() +
                         kNoise.lambda() * col.squaredNorm()) /
                        y00.squaredNorm();
  const double noise_term = kNoise.lambda() * col.squaredNorm() / y00.squaredNorm();
  double residual = 0.0;
  for (Eigen::Index q = 0; q < s.v.entries.cols(); ++q) {
    residual += std::norm(s.v.entries.col(q).dot(col) - y00(q));
  }
  const double xi = XiAsmPerChannel(c, s.v, s.y, 0, 0);
  EXPECT_NEAR(xi, design - noise_term, 1e-12);
  EXPECT_NEAR(xi, residual / y00.squaredNorm(), 1e-12);
}

TEST(XiInvariantsTest, GlobalPhase) {
  const Scene s = GlassesScene(1700.0);
  Scene r = s;
  const Complex phase = std::polar(1.0, 0.7);
  r.v.entries *= phase;
  r.hrtf.left *= phase;
  r.hrtf.right *= phase;
  r.hrtf.left_nm_tilde *= phase;
  r.hrtf.right_nm_tilde *= phase;
  for (double alpha : {0.0, 0.5, 1.0}) {
    const CMatrix c = JointFilter(AsmFilter(s.v, s.y, kNoise),
                                  BsmFlatFilter(s.v, s.hrtf, Ear::kLeft, kNoise), alpha)
                          .matrix;
    const CMatrix cr = JointFilter(AsmFilter(r.v, r.y, kNoise),
                                   BsmFlatFilter(r.v, r.hrtf, Ear::kLeft, kNoise), alpha)
                           .matrix;
    for (int k = 0; k < 4; ++k) {
      const DegreeOrder nm = AcnToNm(k);
      EXPECT_NEAR(XiAsmPerChannel(c, s.v, s.y, nm.n, nm.m),
                  XiAsmPerChannel(cr, r.v, r.y, nm.n, nm.m), 1e-12);
    }
    EXPECT_NEAR(XiBsm(c, s.v, s.hrtf, Ear::kLeft), XiBsm(cr, r.v, r.hrtf, Ear::kLeft), 1e-12);
  }
  const CVector c_std = StdBsmFilter(s.v, s.hrtf, Ear::kLeft, kNoise);
  const CVector cr_std = StdBsmFilter(r.v, r.hrtf, Ear::kLeft, kNoise);
  EXPECT_NEAR(XiBsmStd(c_std, s.v, s.hrtf, Ear::kLeft),
              XiBsmStd(cr_std, r.v, r.hrtf, Ear::kLeft), 1e-12);
}

TEST(XiInvariantsTest, HankelConventionDoesNotMatter) {
  for (double f : {300.0, 2500.0, 8000.0}) {
    const Scene pos = GlassesScene(f, TimeConvention::kPositive);
    const Scene neg = GlassesScene(f, TimeConvention::kNegative);
    for (Ear ear : {Ear::kLeft, Ear::kRight}) {
      const double a = XiBsmStd(StdBsmFilter(pos.v, pos.hrtf, ear, kNoise), pos.v, pos.hrtf, ear);
      const double b = XiBsmStd(StdBsmFilter(neg.v, neg.hrtf, ear, kNoise), neg.v, neg.hrtf, ear);
      EXPECT_NEAR(a, b, 1e-9 * a) << f;
    }
  }
}

TEST(XiInvariantsTest, BinauralErrorGrowsWithAlphaAtHighSnr) {
  const NoiseModel quiet(1e6);
  for (double f : {100.0, 500.0, 1500.0, 4000.0, 9000.0}) {
    const Scene s = GlassesScene(f);
    const EncoderFilter a = AsmFilter(s.v, s.y, quiet);
    for (Ear ear : {Ear::kLeft, Ear::kRight}) {
      const EncoderFilter b = BsmFlatFilter(s.v, s.hrtf, ear, quiet);
      double prev = -INFINITY;
      for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double xi = XiBsm(JointFilter(a, b, alpha).matrix, s.v, s.hrtf, ear);
        EXPECT_GE(xi, prev - 1e-8) << f << " " << alpha;
        prev = xi;
      }
    }
  }
}

TEST(DesignObjectivesTest, SegmentMinimaAtEndpoints) {
  for (double f : {250.0, 3000.0}) {
    const Scene s = GlassesScene(f);
    const EncoderFilter a = AsmFilter(s.v, s.y, kNoise);
    const EncoderFilter b = BsmFlatFilter(s.v, s.hrtf, Ear::kRight, kNoise);
    const DesignObjectives at_asm =
        EvaluateDesignObjectives(a.matrix, s.v, s.y, s.hrtf, Ear::kRight, kNoise);
    const DesignObjectives at_bsm =
        EvaluateDesignObjectives(b.matrix, s.v, s.y, s.hrtf, Ear::kRight, kNoise);
    for (double alpha : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const DesignObjectives o = EvaluateDesignObjectives(JointFilter(a, b, alpha).matrix, s.v,
                                                          s.y, s.hrtf, Ear::kRight, kNoise);
      EXPECT_GE(o.asm_total, 0.0);
      EXPECT_GE(o.bsm, 0.0);
      EXPECT_GE(o.asm_total, at_asm.asm_total - 1e-12);
      EXPECT_GE(o.bsm, at_bsm.bsm - 1e-12);
    }
  }
}

TEST(RenderTest, OneHotLinearityAndEquivalence) {
  std::mt19937_64 rng(5);
  const Scene s = GlassesScene(1200.0);
  const CVector h_tilde = s.hrtf.left_nm_tilde;
  CVector one_hot = CVector::Zero(4);
  one_hot(0) = 1.0;
  EXPECT_EQ(RenderBinauralFromAmbisonics(one_hot, h_tilde), h_tilde(0));

  const CVector a1 = RandomVector(4, rng), a2 = RandomVector(4, rng);
  const Complex lhs = RenderBinauralFromAmbisonics(a1 + 2.0 * a2, h_tilde);
  const Complex rhs = RenderBinauralFromAmbisonics(a1, h_tilde) +
                      2.0 * RenderBinauralFromAmbisonics(a2, h_tilde);
  EXPECT_LT(std::abs(lhs - rhs), 1e-12);

  const CMatrix c = BsmFlatFilter(s.v, s.hrtf, Ear::kLeft, kNoise).matrix;
  const CVector c_std = StdBsmFilter(s.v, s.hrtf, Ear::kLeft, kNoise);
  const CVector x = RandomVector(5, rng);
  const Complex direct = c_std.adjoint() * x;
  EXPECT_LT(std::abs(RenderBinauralFromAmbisonics(c.adjoint() * x, h_tilde) - direct),
            1e-10 * std::abs(direct));
  EXPECT_THROW(RenderBinauralFromAmbisonics(CVector::Zero(3), h_tilde), ShapeError);
}

TEST(ErrorCurveTest, NamesAndValidation) {
  ErrorCurve curve;
  curve.metric = Metric::kXiAsmPerChannel;
  curve.channel = DegreeOrder{1, -1};
  EXPECT_EQ(curve.Name(), "xi_asm_n1_m-1");
  curve.metric = Metric::kXiBsmJoint;
  EXPECT_EQ(curve.Name(), "xi_bsm_joint");
  curve.values_db = {0.0, -3.0};
  EXPECT_NO_THROW(ValidateCurve(curve, 2));
  EXPECT_THROW(ValidateCurve(curve, 3), ShapeError);
  curve.values_db[1] = NAN;
  EXPECT_THROW(ValidateCurve(curve, 2), NumericError);
}

}  // namespace
}  // namespace jointenc
