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

#ifndef JOINTENC_DESIGN_H_
#define JOINTENC_DESIGN_H_

// Encoder filter design: Ambisonics signal matching (ASM), binaural signal
// matching (BSM), the flattened BSM-optimal Ambisonics encoder and the
// alpha-weighted joint encoder.
//
// All designs assume a diffuse field (R_s = sigma_s^2 I) and white sensor
// noise, so only lambda = sigma_n^2 / sigma_s^2 enters.

#include <optional>
#include <string>

#include "jointenc/acoustics.h"
#include "jointenc/linalg.h"
#include "jointenc/sph.h"

namespace jointenc {

class NoiseModel {
 public:
  // Throws InvalidArgument unless snr_linear > 0 and finite.
  explicit NoiseModel(double snr_linear);
  static NoiseModel FromDb(double snr_db);
  static NoiseModel FromVariances(double signal_variance, double noise_variance);

  double snr_linear() const { return snr_linear_; }
  double lambda() const { return lambda_; }

 private:
  double snr_linear_;
  double lambda_;
};

enum class FilterKind { kAsm, kBsmFlat, kJoint };

// kBoth marks the stacked two-ear design.
enum class FilterEar { kNone, kLeft, kRight, kBoth };

std::string ToString(FilterKind kind);
std::string ToString(FilterEar ear);
FilterEar ToFilterEar(Ear ear);

struct EncoderFilter {
  double frequency = 0.0;
  CMatrix matrix;  // M x (N_a+1)^2, column acn(n,m) is c_nm
  FilterKind kind = FilterKind::kAsm;
  std::optional<double> alpha;
  FilterEar ear = FilterEar::kNone;

  int num_mics() const { return static_cast<int>(matrix.rows()); }
  int num_channels() const { return static_cast<int>(matrix.cols()); }
  // Throws NumericError on non-finite entries and InvalidArgument when the
  // kind/ear pairing is inconsistent.
  void Validate() const;
};

// H = [h~_00 I; ...; h~_NN I], an M (N+1)^2 x M operator kept as its block
// scalars.
class StackedHrtfOperator {
 public:
  StackedHrtfOperator(CVector h_tilde, int num_mics);

  const CVector& blocks() const { return blocks_; }
  int num_mics() const { return num_mics_; }
  int num_channels() const { return static_cast<int>(blocks_.size()); }
  // sum |h~_nm|^2; H^H H equals this times the identity.
  double Gain() const { return blocks_.squaredNorm(); }

  CMatrix Materialize() const;
  // H x for an M-vector x.
  CVector Apply(const CVector& x) const;
  // H^H c for a flattened filter c.
  CVector ApplyAdjoint(const CVector& c_flat) const;

 private:
  CVector blocks_;
  int num_mics_;
};

// Stacks the columns c_00, c_1-1, ... into one M (N+1)^2 vector.
CVector Flatten(const CMatrix& c);
CMatrix Unflatten(const CVector& c_flat, int num_mics);

// C such that C^H = Y^H V^H (V V^H + lambda I)^{-1}.
EncoderFilter AsmFilter(const SteeringMatrix& v, const ShMatrix& y,
                        const NoiseModel& noise);

// c such that c^H = h^T V^H (V V^H + lambda I)^{-1}.
CVector StdBsmFilter(const SteeringMatrix& v, const HrtfSet& hrtf, Ear ear,
                     const NoiseModel& noise);

enum class BsmMethod { kPinv, kReduced };

// Ambisonics encoder minimizing the binaural error of h~^T C^H x. Both methods
// return the minimum-norm minimizer. Throws NumericError when sum |h~|^2 = 0.
EncoderFilter BsmFlatFilter(const SteeringMatrix& v, const HrtfSet& hrtf, Ear ear,
                            const NoiseModel& noise,
                            BsmMethod method = BsmMethod::kPinv);

// Both ears in a single least-squares problem, each ear's term normalized by
// its ||h||^2.
EncoderFilter BsmFlatFilterStacked(const SteeringMatrix& v, const HrtfSet& hrtf,
                                   const NoiseModel& noise);

// alpha C_asm + (1 - alpha) C_bsm.
EncoderFilter JointFilter(const EncoderFilter& c_asm, const EncoderFilter& c_bsm,
                          double alpha);

// sum over channels of the normalized ASM design error, noise term included.
double AsmObjective(const CMatrix& c, const SteeringMatrix& v, const ShMatrix& y,
                    const NoiseModel& noise);

// Normalized binaural design error of h~^T C^H, noise term included.
double BsmObjective(const CMatrix& c, const SteeringMatrix& v, const HrtfSet& hrtf,
                    Ear ear, const NoiseModel& noise);

// (||c^H V - h^T||^2 + lambda ||c||^2) / ||h||^2 for a direct binaural filter.
double StdBsmObjective(const CVector& c, const SteeringMatrix& v,
                       const HrtfSet& hrtf, Ear ear, const NoiseModel& noise);

double JointObjective(const CMatrix& c, const SteeringMatrix& v, const ShMatrix& y,
                      const HrtfSet& hrtf, Ear ear, const NoiseModel& noise,
                      double alpha);

struct JointExactResult {
  EncoderFilter filter;             // exact minimizer of the joint objective
  double objective_exact = 0.0;     // joint objective at `filter`
  double objective_combination = 0.0;  // joint objective at alpha C_asm + (1-alpha) C_bsm
  double gap() const { return objective_combination - objective_exact; }
};

// Minimizes alpha * AsmObjective + (1 - alpha) * BsmObjective directly through
// the block normal equations (pseudo-inverse), for comparison with JointFilter.
JointExactResult JointExactMinimizer(const SteeringMatrix& v, const ShMatrix& y,
                                     const HrtfSet& hrtf, Ear ear,
                                     const NoiseModel& noise, double alpha);

}  // namespace jointenc

#endif  // JOINTENC_DESIGN_H_
