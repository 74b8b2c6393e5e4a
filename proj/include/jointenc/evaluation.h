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

#ifndef JOINTENC_EVALUATION_H_
#define JOINTENC_EVALUATION_H_

// Noiseless performance measures of encoder filters and binaural rendering
// from encoded Ambisonics.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jointenc/acoustics.h"
#include "jointenc/design.h"
#include "jointenc/linalg.h"
#include "jointenc/sph.h"

namespace jointenc {

inline constexpr double kDbFloor = -150.0;

// 10 log10(ratio), clamped below at kDbFloor.
double ToDb(double ratio);

// ||V^H c_nm - y_nm||^2 / ||y_nm||^2 for column acn(n, m) of C.
double XiAsmPerChannel(const CMatrix& c, const SteeringMatrix& v, const ShMatrix& y,
                       int n, int m);

// ||h~^T C^H V - h^T||^2 / ||h||^2, with h~ truncated to the filter order.
double XiBsm(const CMatrix& c, const SteeringMatrix& v, const HrtfSet& hrtf, Ear ear);

// ||c^H V - h^T||^2 / ||h||^2 for a direct binaural filter.
double XiBsmStd(const CVector& c, const SteeringMatrix& v, const HrtfSet& hrtf,
                Ear ear);

struct DesignObjectives {
  double asm_total = 0.0;  // sum over channels, noise term included
  double bsm = 0.0;        // flattened binaural design error, noise included
};

DesignObjectives EvaluateDesignObjectives(const CMatrix& c, const SteeringMatrix& v,
                                          const ShMatrix& y, const HrtfSet& hrtf,
                                          Ear ear, const NoiseModel& noise);

// p^ = h~^T a^.
Complex RenderBinauralFromAmbisonics(const CVector& a_hat, const CVector& h_tilde);

enum class Metric {
  kXiAsmPerChannel,
  kXiAsmMean,
  kXiBsmJoint,
  kXiBsmStd,
  kEpsAsmDesign,
  kEpsBsmDesign,
};

struct ErrorCurve {
  Metric metric = Metric::kXiBsmJoint;
  std::optional<DegreeOrder> channel;  // only for kXiAsmPerChannel
  std::optional<Ear> ear;
  std::optional<double> alpha;
  std::vector<double> values_db;  // one per frequency

  // Metric name used in CSV output, e.g. "xi_asm_n1_m-1", "xi_bsm_joint".
  std::string Name() const;
};

// Throws NumericError unless every value is finite and the length matches.
void ValidateCurve(const ErrorCurve& curve, std::size_t num_frequencies);

}  // namespace jointenc

#endif  // JOINTENC_EVALUATION_H_
