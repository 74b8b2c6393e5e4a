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

#ifndef JOINTENC_LINALG_H_
#define JOINTENC_LINALG_H_

#include <complex>

#include <Eigen/Dense>

namespace jointenc {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Solves A X = B for Hermitian positive-definite A via Cholesky (LDLT fallback).
CMatrix SolveHermitian(const CMatrix& a, const CMatrix& b);

// Moore-Penrose pseudo-inverse solution of A X = B for Hermitian A; eigenvalues
// below rel_cutoff * max|eigenvalue| are treated as zero (minimum-norm result).
CMatrix PinvSolveHermitian(const CMatrix& a, const CMatrix& b,
                           double rel_cutoff = 1e-10);

bool AllFinite(const CMatrix& m);

// V V^H + lambda I, the regularized array covariance shared by every design.
CMatrix RegularizedCovariance(const CMatrix& v, double lambda);

}  // namespace jointenc

#endif  // JOINTENC_LINALG_H_
