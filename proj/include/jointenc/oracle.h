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

#ifndef JOINTENC_ORACLE_H_
#define JOINTENC_ORACLE_H_

// Black-box quadratic minimizer used to check the closed-form designs. It
// knows nothing about the filter formulas: it only evaluates the objective.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "jointenc/acoustics.h"
#include "jointenc/design.h"
#include "jointenc/linalg.h"
#include "jointenc/sph.h"

namespace jointenc::oracle {

struct QuadraticMinimum {
  CVector argmin;
  double value = 0.0;
};

// Minimizes a real-valued quadratic f over C^dim. The gradient and Hessian of
// f in the real parametrization (Re z, Im z) are recovered from function
// values at +-step along every axis pair (exact for quadratics up to
// rounding), then the stationarity system is solved in the minimum-norm sense.
QuadraticMinimum MinimizeQuadratic(const std::function<double(const CVector&)>& f,
                                   Eigen::Index dim, double step = 1.0);

// Small random design problem: complex Gaussian V and spatial HRTF, random
// SH-domain HRTF coefficients, SH matrix of a Fibonacci grid.
struct TinyInstance {
  SteeringMatrix v;
  ShMatrix y;
  HrtfSet hrtf;  // both ears identical; use Ear::kLeft
  NoiseModel noise{100.0};
};

TinyInstance MakeTinyInstance(std::uint64_t seed, int num_mics = 3,
                              int num_dirs = 6, int order = 1,
                              double snr_linear = 100.0);

struct OracleComparison {
  std::string name;
  double closed_form = 0.0;  // objective at the closed-form filter
  double numeric = 0.0;      // objective at the numeric minimizer
  double RelativeDifference() const;
};

// Objective values of the closed-form ASM, standard BSM and flattened BSM
// filters next to the black-box minimum of the same objectives.
std::vector<OracleComparison> CompareWithNumericMinimizer(const TinyInstance& inst);

}  // namespace jointenc::oracle

#endif  // JOINTENC_ORACLE_H_
