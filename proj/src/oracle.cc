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

#include "jointenc/oracle.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "jointenc/errors.h"

namespace jointenc::oracle {
namespace {

CVector ToComplex(const RVector& x, Eigen::Index dim) {
  CVector z(dim);
  for (Eigen::Index i = 0; i < dim; ++i) z(i) = Complex(x(i), x(dim + i));
  return z;
}

}  // namespace

QuadraticMinimum MinimizeQuadratic(const std::function<double(const CVector&)>& f,
                                   Eigen::Index dim, double step) {
  if (dim < 1) throw InvalidArgument("MinimizeQuadratic: dim must be >= 1");
  const Eigen::Index n = 2 * dim;
  auto eval = [&](const RVector& x) { return f(ToComplex(x, dim)); };

  const RVector origin = RVector::Zero(n);
  const double f0 = eval(origin);
  RVector plus(n), minus(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    RVector x = origin;
    x(i) = step;
    plus(i) = eval(x);
    x(i) = -step;
    minus(i) = eval(x);
  }
  RVector gradient(n);
  Eigen::MatrixXd hessian(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    gradient(i) = (plus(i) - minus(i)) / (2.0 * step);
    hessian(i, i) = (plus(i) - 2.0 * f0 + minus(i)) / (step * step);
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      RVector x = origin;
      x(i) = step;
      x(j) = step;
      const double both = eval(x);
      hessian(i, j) = hessian(j, i) = (both - plus(i) - plus(j) + f0) / (step * step);
    }
  }
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(hessian);
  cod.setThreshold(1e-10);
  const RVector x_star = cod.solve(-gradient);
  QuadraticMinimum result;
  result.argmin = ToComplex(x_star, dim);
  result.value = f(result.argmin);
  return result;
}

TinyInstance MakeTinyInstance(std::uint64_t seed, int num_mics, int num_dirs,
                              int order, double snr_linear) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  auto random = [&](Eigen::Index rows, Eigen::Index cols) {
    CMatrix out(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j) {
      for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = Complex(g(rng), g(rng));
    }
    return out;
  };
  const double frequency = 1000.0;
  TinyInstance inst;
  inst.v = {frequency, random(num_mics, num_dirs)};
  inst.y = MakeShMatrix(FibonacciGrid(num_dirs), order);
  inst.hrtf.frequency = frequency;
  inst.hrtf.left = random(num_dirs, 1).col(0);
  inst.hrtf.right = inst.hrtf.left;
  inst.hrtf.sh_order = order;
  inst.hrtf.left_nm = random(NumShChannels(order), 1).col(0);
  inst.hrtf.right_nm = inst.hrtf.left_nm;
  inst.hrtf.left_nm_tilde = TildeTransform(inst.hrtf.left_nm);
  inst.hrtf.right_nm_tilde = inst.hrtf.left_nm_tilde;
  inst.noise = NoiseModel(snr_linear);
  return inst;
}

double OracleComparison::RelativeDifference() const {
  return std::abs(closed_form - numeric) / std::max(std::abs(numeric), 1e-300);
}

std::vector<OracleComparison> CompareWithNumericMinimizer(const TinyInstance& inst) {
  const int m = static_cast<int>(inst.v.entries.rows());
  const auto k = inst.y.entries.cols();
  std::vector<OracleComparison> out;

  const auto asm_objective = [&](const CVector& z) {
    return AsmObjective(Unflatten(z, m), inst.v, inst.y, inst.noise);
  };
  const EncoderFilter c_asm = AsmFilter(inst.v, inst.y, inst.noise);
  out.push_back({"asm", AsmObjective(c_asm.matrix, inst.v, inst.y, inst.noise),
                 MinimizeQuadratic(asm_objective, m * k).value});

  const auto std_objective = [&](const CVector& z) {
    return StdBsmObjective(z, inst.v, inst.hrtf, Ear::kLeft, inst.noise);
  };
  const CVector c_std = StdBsmFilter(inst.v, inst.hrtf, Ear::kLeft, inst.noise);
  out.push_back({"std-bsm",
                 StdBsmObjective(c_std, inst.v, inst.hrtf, Ear::kLeft, inst.noise),
                 MinimizeQuadratic(std_objective, m).value});

  const auto flat_objective = [&](const CVector& z) {
    return BsmObjective(Unflatten(z, m), inst.v, inst.hrtf, Ear::kLeft, inst.noise);
  };
  const EncoderFilter c_flat = BsmFlatFilter(inst.v, inst.hrtf, Ear::kLeft, inst.noise);
  out.push_back({"bsm-flat",
                 BsmObjective(c_flat.matrix, inst.v, inst.hrtf, Ear::kLeft, inst.noise),
                 MinimizeQuadratic(flat_objective, m * k).value});
  return out;
}

}  // namespace jointenc::oracle
