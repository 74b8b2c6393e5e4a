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

#include "jointenc/design.h"

#include <cmath>

#include <fmt/format.h>

#include "jointenc/errors.h"

namespace jointenc {
namespace {

constexpr double kPinvCutoff = 1e-10;

void CheckDesignShapes(const SteeringMatrix& v, Eigen::Index num_directions,
                       const char* who) {
  if (v.entries.cols() != num_directions) {
    throw ShapeError(fmt::format("{}: steering matrix has {} directions, expected {}",
                                 who, v.entries.cols(), num_directions));
  }
  if (v.entries.rows() < 1) throw ShapeError(fmt::format("{}: no microphones", who));
}

void CheckHrtf(const SteeringMatrix& v, const HrtfSet& hrtf, Ear ear,
               bool need_sh, const char* who) {
  CheckDesignShapes(v, hrtf.Spatial(ear).size(), who);
  if (need_sh && hrtf.sh_order < 0) {
    throw ShapeError(fmt::format("{}: HRTF has no SH coefficients attached", who));
  }
  if (hrtf.frequency != v.frequency) {
    throw InvalidArgument(fmt::format("{}: HRTF at {} Hz but steering matrix at {} Hz",
                                      who, hrtf.frequency, v.frequency));
  }
}

EncoderFilter Finish(EncoderFilter f) {
  f.Validate();
  return f;
}

}  // namespace

NoiseModel::NoiseModel(double snr_linear) : snr_linear_(snr_linear) {
  if (!(snr_linear > 0.0) || !std::isfinite(snr_linear)) {
    throw InvalidArgument(fmt::format("SNR {} must be positive and finite", snr_linear));
  }
  lambda_ = 1.0 / snr_linear;
}

NoiseModel NoiseModel::FromDb(double snr_db) {
  return NoiseModel(std::pow(10.0, snr_db / 10.0));
}

NoiseModel NoiseModel::FromVariances(double signal_variance, double noise_variance) {
  if (!(signal_variance > 0.0) || !(noise_variance > 0.0)) {
    throw InvalidArgument("signal and noise variances must be > 0");
  }
  return NoiseModel(signal_variance / noise_variance);
}

std::string ToString(FilterKind kind) {
  switch (kind) {
    case FilterKind::kAsm: return "asm";
    case FilterKind::kBsmFlat: return "bsm-flat";
    case FilterKind::kJoint: return "joint";
  }
  return "unknown";
}

std::string ToString(FilterEar ear) {
  switch (ear) {
    case FilterEar::kNone: return "none";
    case FilterEar::kLeft: return "left";
    case FilterEar::kRight: return "right";
    case FilterEar::kBoth: return "both";
  }
  return "unknown";
}

FilterEar ToFilterEar(Ear ear) {
  return ear == Ear::kLeft ? FilterEar::kLeft : FilterEar::kRight;
}

void EncoderFilter::Validate() const {
  if (kind == FilterKind::kAsm && ear != FilterEar::kNone) {
    throw InvalidArgument("ASM filter must not carry an ear");
  }
  if (kind != FilterKind::kAsm && ear == FilterEar::kNone) {
    throw InvalidArgument(ToString(kind) + " filter needs an ear");
  }
  if (alpha && !(*alpha >= 0.0 && *alpha <= 1.0)) {
    throw InvalidArgument(fmt::format("alpha {} outside [0, 1]", *alpha));
  }
  if (!AllFinite(matrix)) {
    throw NumericError(fmt::format("{} filter at {} Hz has non-finite entries",
                                   ToString(kind), frequency));
  }
}

StackedHrtfOperator::StackedHrtfOperator(CVector h_tilde, int num_mics)
    : blocks_(std::move(h_tilde)), num_mics_(num_mics) {
  if (num_mics < 1) throw InvalidArgument("StackedHrtfOperator: M must be >= 1");
  if (blocks_.size() == 0) throw ShapeError("StackedHrtfOperator: no coefficients");
}

CMatrix StackedHrtfOperator::Materialize() const {
  const Eigen::Index m = num_mics_;
  CMatrix h = CMatrix::Zero(m * blocks_.size(), m);
  for (Eigen::Index k = 0; k < blocks_.size(); ++k) {
    h.block(k * m, 0, m, m).diagonal().setConstant(blocks_(k));
  }
  return h;
}

CVector StackedHrtfOperator::Apply(const CVector& x) const {
  if (x.size() != num_mics_) throw ShapeError("StackedHrtfOperator::Apply: size");
  CVector out(num_mics_ * blocks_.size());
  for (Eigen::Index k = 0; k < blocks_.size(); ++k) {
    out.segment(k * num_mics_, num_mics_) = blocks_(k) * x;
  }
  return out;
}

CVector StackedHrtfOperator::ApplyAdjoint(const CVector& c_flat) const {
  if (c_flat.size() != num_mics_ * blocks_.size()) {
    throw ShapeError("StackedHrtfOperator::ApplyAdjoint: size");
  }
  CVector out = CVector::Zero(num_mics_);
  for (Eigen::Index k = 0; k < blocks_.size(); ++k) {
    out += std::conj(blocks_(k)) * c_flat.segment(k * num_mics_, num_mics_);
  }
  return out;
}

CVector Flatten(const CMatrix& c) {
  CVector flat(c.size());
  for (Eigen::Index k = 0; k < c.cols(); ++k) {
    flat.segment(k * c.rows(), c.rows()) = c.col(k);
  }
  return flat;
}

CMatrix Unflatten(const CVector& c_flat, int num_mics) {
  if (num_mics < 1 || c_flat.size() % num_mics != 0) {
    throw ShapeError(fmt::format("Unflatten: length {} is not a multiple of M = {}",
                                 c_flat.size(), num_mics));
  }
  const Eigen::Index cols = c_flat.size() / num_mics;
  CMatrix c(num_mics, cols);
  for (Eigen::Index k = 0; k < cols; ++k) {
    c.col(k) = c_flat.segment(k * num_mics, num_mics);
  }
  return c;
}

EncoderFilter AsmFilter(const SteeringMatrix& v, const ShMatrix& y,
                        const NoiseModel& noise) {
  CheckDesignShapes(v, y.entries.rows(), "AsmFilter");
  // C = (V V^H + lambda I)^{-1} V Y.
  const CMatrix a = RegularizedCovariance(v.entries, noise.lambda());
  return Finish({v.frequency, SolveHermitian(a, v.entries * y.entries),
                 FilterKind::kAsm, std::nullopt, FilterEar::kNone});
}

CVector StdBsmFilter(const SteeringMatrix& v, const HrtfSet& hrtf, Ear ear,
                     const NoiseModel& noise) {
  CheckHrtf(v, hrtf, ear, false, "StdBsmFilter");
  const CMatrix a = RegularizedCovariance(v.entries, noise.lambda());
  const CVector c = SolveHermitian(a, v.entries * hrtf.Spatial(ear).conjugate());
  if (!AllFinite(c)) throw NumericError("StdBsmFilter: non-finite result");
  return c;
}

EncoderFilter BsmFlatFilter(const SteeringMatrix& v, const HrtfSet& hrtf, Ear ear,
                            const NoiseModel& noise, BsmMethod method) {
  CheckHrtf(v, hrtf, ear, true, "BsmFlatFilter");
  const int m = static_cast<int>(v.entries.rows());
  const StackedHrtfOperator h(hrtf.NmTilde(ear), m);
  if (!(h.Gain() > 0.0)) {
    throw NumericError("BsmFlatFilter: degenerate HRTF, sum |h~_nm|^2 = 0");
  }
  CVector c_flat;
  if (method == BsmMethod::kReduced) {
    // Minimum-norm solution lies in range(H): c_flat = H c_std / ||h~||^2.
    c_flat = h.Apply(StdBsmFilter(v, hrtf, ear, noise)) / h.Gain();
  } else {
    const CMatrix big_h = h.Materialize();
    const CMatrix a =
        big_h * RegularizedCovariance(v.entries, noise.lambda()) * big_h.adjoint();
    const CVector rhs = big_h * (v.entries * hrtf.Spatial(ear).conjugate());
    c_flat = PinvSolveHermitian(a, rhs, kPinvCutoff);
  }
  return Finish({v.frequency, Unflatten(c_flat, m), FilterKind::kBsmFlat, std::nullopt,
                 ToFilterEar(ear)});
}

EncoderFilter BsmFlatFilterStacked(const SteeringMatrix& v, const HrtfSet& hrtf,
                                   const NoiseModel& noise) {
  CheckHrtf(v, hrtf, Ear::kLeft, true, "BsmFlatFilterStacked");
  const int m = static_cast<int>(v.entries.rows());
  const CMatrix cov = RegularizedCovariance(v.entries, noise.lambda());
  const Eigen::Index dim = m * hrtf.left_nm_tilde.size();
  CMatrix a = CMatrix::Zero(dim, dim);
  CVector rhs = CVector::Zero(dim);
  for (Ear ear : {Ear::kLeft, Ear::kRight}) {
    const CMatrix big_h = StackedHrtfOperator(hrtf.NmTilde(ear), m).Materialize();
    const double w = 1.0 / hrtf.Spatial(ear).squaredNorm();
    a += w * big_h * cov * big_h.adjoint();
    rhs += w * big_h * (v.entries * hrtf.Spatial(ear).conjugate());
  }
  return Finish({v.frequency, Unflatten(PinvSolveHermitian(a, rhs, kPinvCutoff), m),
                 FilterKind::kBsmFlat, std::nullopt, FilterEar::kBoth});
}

EncoderFilter JointFilter(const EncoderFilter& c_asm, const EncoderFilter& c_bsm,
                          double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument(fmt::format("JointFilter: alpha {} outside [0, 1]", alpha));
  }
  if (c_asm.frequency != c_bsm.frequency) {
    throw InvalidArgument(fmt::format("JointFilter: frequency mismatch {} vs {} Hz",
                                      c_asm.frequency, c_bsm.frequency));
  }
  if (c_asm.matrix.rows() != c_bsm.matrix.rows() ||
      c_asm.matrix.cols() != c_bsm.matrix.cols()) {
    throw ShapeError("JointFilter: filter dimensions differ");
  }
  CMatrix c;
  if (alpha == 1.0) {
    c = c_asm.matrix;
  } else if (alpha == 0.0) {
    c = c_bsm.matrix;
  } else {
    c = alpha * c_asm.matrix + (1.0 - alpha) * c_bsm.matrix;
  }
  return Finish({c_asm.frequency, std::move(c), FilterKind::kJoint, alpha, c_bsm.ear});
}

double AsmObjective(const CMatrix& c, const SteeringMatrix& v, const ShMatrix& y,
                    const NoiseModel& noise) {
  CheckDesignShapes(v, y.entries.rows(), "AsmObjective");
  if (c.rows() != v.entries.rows() || c.cols() != y.entries.cols()) {
    throw ShapeError("AsmObjective: filter shape does not match V and Y");
  }
  const CMatrix residual = v.entries.adjoint() * c - y.entries;
  double total = 0.0;
  for (Eigen::Index k = 0; k < c.cols(); ++k) {
    total += (residual.col(k).squaredNorm() + noise.lambda() * c.col(k).squaredNorm()) /
             y.entries.col(k).squaredNorm();
  }
  return total;
}

double BsmObjective(const CMatrix& c, const SteeringMatrix& v, const HrtfSet& hrtf,
                    Ear ear, const NoiseModel& noise) {
  CheckHrtf(v, hrtf, ear, true, "BsmObjective");
  const CVector& h_tilde = hrtf.NmTilde(ear);
  if (c.rows() != v.entries.rows() || c.cols() != h_tilde.size()) {
    throw ShapeError("BsmObjective: filter shape does not match V and HRTF order");
  }
  // Row vector h~^T C^H, stored as its transpose conj(C) h~.
  const CVector row = c.conjugate() * h_tilde;
  const CVector& h = hrtf.Spatial(ear);
  const double err = (v.entries.transpose() * row - h).squaredNorm();
  return (err + noise.lambda() * row.squaredNorm()) / h.squaredNorm();
}

double StdBsmObjective(const CVector& c, const SteeringMatrix& v,
                       const HrtfSet& hrtf, Ear ear, const NoiseModel& noise) {
  CheckHrtf(v, hrtf, ear, false, "StdBsmObjective");
  if (c.size() != v.entries.rows()) throw ShapeError("StdBsmObjective: filter length");
  const CVector& h = hrtf.Spatial(ear);
  const double err = (v.entries.adjoint() * c - h.conjugate()).squaredNorm();
  return (err + noise.lambda() * c.squaredNorm()) / h.squaredNorm();
}

double JointObjective(const CMatrix& c, const SteeringMatrix& v, const ShMatrix& y,
                      const HrtfSet& hrtf, Ear ear, const NoiseModel& noise,
                      double alpha) {
  return alpha * AsmObjective(c, v, y, noise) +
         (1.0 - alpha) * BsmObjective(c, v, hrtf, ear, noise);
}

JointExactResult JointExactMinimizer(const SteeringMatrix& v, const ShMatrix& y,
                                     const HrtfSet& hrtf, Ear ear,
                                     const NoiseModel& noise, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw InvalidArgument(fmt::format("JointExactMinimizer: alpha {} outside [0, 1]", alpha));
  }
  CheckHrtf(v, hrtf, ear, true, "JointExactMinimizer");
  CheckDesignShapes(v, y.entries.rows(), "JointExactMinimizer");
  const CVector& h_tilde = hrtf.NmTilde(ear);
  if (h_tilde.size() != y.entries.cols()) {
    throw ShapeError("JointExactMinimizer: HRTF order differs from SH matrix order");
  }
  const Eigen::Index m = v.entries.rows();
  const Eigen::Index k_count = y.entries.cols();
  const CMatrix cov = RegularizedCovariance(v.entries, noise.lambda());
  const CVector& h = hrtf.Spatial(ear);
  const double h_norm2 = h.squaredNorm();

  const CMatrix big_h = StackedHrtfOperator(h_tilde, static_cast<int>(m)).Materialize();
  CMatrix a = ((1.0 - alpha) / h_norm2) * big_h * cov * big_h.adjoint();
  CVector rhs = ((1.0 - alpha) / h_norm2) * big_h * (v.entries * h.conjugate());
  const CMatrix vy = v.entries * y.entries;
  for (Eigen::Index k = 0; k < k_count; ++k) {
    const double w = alpha / y.entries.col(k).squaredNorm();
    a.block(k * m, k * m, m, m) += w * cov;
    rhs.segment(k * m, m) += w * vy.col(k);
  }

  JointExactResult result;
  result.filter = Finish({v.frequency,
                          Unflatten(PinvSolveHermitian(a, rhs, kPinvCutoff),
                                    static_cast<int>(m)),
                          FilterKind::kJoint, alpha, ToFilterEar(ear)});
  result.objective_exact =
      JointObjective(result.filter.matrix, v, y, hrtf, ear, noise, alpha);
  const EncoderFilter combined =
      JointFilter(AsmFilter(v, y, noise), BsmFlatFilter(v, hrtf, ear, noise), alpha);
  result.objective_combination =
      JointObjective(combined.matrix, v, y, hrtf, ear, noise, alpha);
  return result;
}

}  // namespace jointenc
