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

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "jointenc/errors.h"

namespace jointenc {

double ToDb(double ratio) {
  if (!(ratio > 0.0)) return kDbFloor;
  return std::max(10.0 * std::log10(ratio), kDbFloor);
}

double XiAsmPerChannel(const CMatrix& c, const SteeringMatrix& v, const ShMatrix& y,
                       int n, int m) {
  if (n < 0 || std::abs(m) > n || n > y.order) {
    throw InvalidArgument(fmt::format("XiAsmPerChannel: channel ({}, {}) outside order {}",
                                      n, m, y.order));
  }
  if (c.rows() != v.entries.rows() || c.cols() != y.entries.cols() ||
      v.entries.cols() != y.entries.rows()) {
    throw ShapeError("XiAsmPerChannel: filter, V and Y shapes disagree");
  }
  const int k = Acn(n, m);
  const CVector y_nm = y.entries.col(k);
  return (v.entries.adjoint() * c.col(k) - y_nm).squaredNorm() / y_nm.squaredNorm();
}

double XiBsm(const CMatrix& c, const SteeringMatrix& v, const HrtfSet& hrtf, Ear ear) {
  if (hrtf.sh_order < 0) throw ShapeError("XiBsm: HRTF has no SH coefficients");
  const CVector& h = hrtf.Spatial(ear);
  if (c.rows() != v.entries.rows() || v.entries.cols() != h.size()) {
    throw ShapeError("XiBsm: filter, V and HRTF shapes disagree");
  }
  const CVector& full = hrtf.NmTilde(ear);
  if (c.cols() > full.size()) {
    throw ShapeError("XiBsm: filter order exceeds HRTF order");
  }
  const CVector h_tilde = full.head(c.cols());
  const CVector row = c.conjugate() * h_tilde;  // (h~^T C^H)^T
  return (v.entries.transpose() * row - h).squaredNorm() / h.squaredNorm();
}

double XiBsmStd(const CVector& c, const SteeringMatrix& v, const HrtfSet& hrtf,
                Ear ear) {
  const CVector& h = hrtf.Spatial(ear);
  if (c.size() != v.entries.rows() || v.entries.cols() != h.size()) {
    throw ShapeError("XiBsmStd: filter, V and HRTF shapes disagree");
  }
  return (v.entries.adjoint() * c - h.conjugate()).squaredNorm() / h.squaredNorm();
}

DesignObjectives EvaluateDesignObjectives(const CMatrix& c, const SteeringMatrix& v,
                                          const ShMatrix& y, const HrtfSet& hrtf,
                                          Ear ear, const NoiseModel& noise) {
  return {AsmObjective(c, v, y, noise), BsmObjective(c, v, hrtf, ear, noise)};
}

Complex RenderBinauralFromAmbisonics(const CVector& a_hat, const CVector& h_tilde) {
  if (a_hat.size() != h_tilde.size()) {
    throw ShapeError(fmt::format("RenderBinauralFromAmbisonics: {} vs {} coefficients",
                                 a_hat.size(), h_tilde.size()));
  }
  return h_tilde.transpose() * a_hat;
}

std::string ErrorCurve::Name() const {
  switch (metric) {
    case Metric::kXiAsmPerChannel:
      if (!channel) return "xi_asm";
      return fmt::format("xi_asm_n{}_m{}", channel->n, channel->m);
    case Metric::kXiAsmMean: return "xi_asm_mean";
    case Metric::kXiBsmJoint: return "xi_bsm_joint";
    case Metric::kXiBsmStd: return "xi_bsm_std";
    case Metric::kEpsAsmDesign: return "eps_asm_design";
    case Metric::kEpsBsmDesign: return "eps_bsm_design";
  }
  return "unknown";
}

void ValidateCurve(const ErrorCurve& curve, std::size_t num_frequencies) {
  if (curve.values_db.size() != num_frequencies) {
    throw ShapeError(fmt::format("curve {} has {} values for {} frequencies",
                                   curve.Name(), curve.values_db.size(),
                                   num_frequencies));
  }
  for (double v : curve.values_db) {
    if (!std::isfinite(v)) {
      throw NumericError("curve " + curve.Name() + " contains a non-finite value");
    }
  }
}

}  // namespace jointenc
