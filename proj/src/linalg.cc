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

#include "jointenc/linalg.h"

#include <cmath>

#include "jointenc/errors.h"

namespace jointenc {

CMatrix SolveHermitian(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) {
    throw ShapeError("SolveHermitian: system is " + std::to_string(a.rows()) +
                     "x" + std::to_string(a.cols()) + " but rhs has " +
                     std::to_string(b.rows()) + " rows");
  }
  Eigen::LLT<CMatrix> llt(a);
  if (llt.info() == Eigen::Success) return llt.solve(b);
  Eigen::LDLT<CMatrix> ldlt(a);
  if (ldlt.info() != Eigen::Success) {
    throw NumericError("SolveHermitian: matrix is not positive definite");
  }
  return ldlt.solve(b);
}

CMatrix PinvSolveHermitian(const CMatrix& a, const CMatrix& b,
                           double rel_cutoff) {
  if (a.rows() != a.cols() || a.rows() != b.rows()) {
    throw ShapeError("PinvSolveHermitian: dimension mismatch");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(a);
  if (eig.info() != Eigen::Success) {
    throw NumericError("PinvSolveHermitian: eigendecomposition failed");
  }
  const RVector& values = eig.eigenvalues();
  const double largest = values.cwiseAbs().maxCoeff();
  const double cutoff = rel_cutoff * largest;
  RVector inverse(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    inverse(i) = std::abs(values(i)) > cutoff ? 1.0 / values(i) : 0.0;
  }
  const CMatrix& vectors = eig.eigenvectors();
  return vectors * (inverse.asDiagonal() * (vectors.adjoint() * b));
}

bool AllFinite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
        return false;
      }
    }
  }
  return true;
}

CMatrix RegularizedCovariance(const CMatrix& v, double lambda) {
  CMatrix a = v * v.adjoint();
  a.diagonal().array() += lambda;
  return a;
}

}  // namespace jointenc
