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

#ifndef JOINTENC_ACOUSTICS_H_
#define JOINTENC_ACOUSTICS_H_

// Free-field plane waves scattered by a rigid sphere: microphone steering
// matrices, spherical-head HRTFs and the reference Ambisonics/binaural signals.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "jointenc/linalg.h"
#include "jointenc/sph.h"

namespace jointenc {

inline constexpr double kDefaultSoundSpeed = 343.0;
inline constexpr int kDefaultReferenceOrder = 20;

enum class Ear { kLeft, kRight };
std::string ToString(Ear ear);
Ear ParseEar(const std::string& name);

struct ArrayGeometry {
  double radius = 0.0;  // meters
  std::vector<Direction> mic_directions;

  std::size_t num_mics() const { return mic_directions.size(); }
  // Throws InvalidArgument unless radius > 0 and there is at least one mic.
  void Validate() const;
};

// The five-microphone glasses layout on a 10 cm sphere.
ArrayGeometry EasycomGlasses5();

// Built-in geometry by name ("easycom-glasses-5").
ArrayGeometry NamedGeometry(const std::string& name);

// CSV "colatitude_rad,azimuth_rad"; the radius comes from the caller.
ArrayGeometry LoadGeometryCsv(const std::filesystem::path& path, double radius);
ArrayGeometry ParseGeometryCsv(const std::string& text, double radius);

// Stable 64-bit FNV-1a digest of radius and microphone angles, hex encoded.
std::string GeometryHash(const ArrayGeometry& geometry);

// True when (N_a + 1)^2 <= M, the plane-wave-decomposition condition.
bool PwdConditionHolds(int ambisonics_order, std::size_t num_mics);

struct PropagationModel {
  double sound_speed = kDefaultSoundSpeed;
  TimeConvention convention = TimeConvention::kPositive;
  // Log a warning when the reference order is too low for ka.
  bool warn_truncation = true;
};

// ref_order >= ka + 3.
bool ReferenceOrderAdequate(int ref_order, double ka);

class FrequencyGrid {
 public:
  // Throws InvalidArgument unless frequencies are > 0 and strictly increasing.
  FrequencyGrid(std::vector<double> frequencies,
                double sound_speed = kDefaultSoundSpeed);

  static FrequencyGrid LogSpaced(double min_hz, double max_hz, int count,
                                 double sound_speed = kDefaultSoundSpeed);

  const std::vector<double>& frequencies() const { return frequencies_; }
  double sound_speed() const { return sound_speed_; }
  std::size_t size() const { return frequencies_.size(); }
  double Wavenumber(std::size_t i) const;

 private:
  std::vector<double> frequencies_;
  double sound_speed_;
};

struct SteeringMatrix {
  double frequency = 0.0;
  CMatrix entries;  // M x Q
};

struct EarPositions {
  Direction left = Direction::FromDegrees(90.0, 90.0);
  Direction right = Direction::FromDegrees(90.0, -90.0);
};

struct HrtfSet {
  double frequency = 0.0;
  CVector left, right;  // over the direction set
  int sh_order = -1;    // -1 until SH coefficients are attached
  CVector left_nm, right_nm;
  CVector left_nm_tilde, right_nm_tilde;

  const CVector& Spatial(Ear ear) const { return ear == Ear::kLeft ? left : right; }
  const CVector& Nm(Ear ear) const { return ear == Ear::kLeft ? left_nm : right_nm; }
  const CVector& NmTilde(Ear ear) const {
    return ear == Ear::kLeft ? left_nm_tilde : right_nm_tilde;
  }
};

// Pressure at `points` (on a rigid sphere of `radius`) due to unit plane waves
// arriving from `dirs`:
//   P[i][q] = sum_n b_n(ka) sum_m conj(Y_nm(dir_q)) Y_nm(point_i).
// Evaluated through the addition theorem; warns when ref_order < ka + 3.
CMatrix RigidSpherePressure(const std::vector<Direction>& points, double radius,
                            const DirectionSet& dirs, double freq_hz,
                            int ref_order, const PropagationModel& model = {});

// V(k), M x Q. Throws DomainError when freq <= 0.
SteeringMatrix MakeSteeringMatrix(const ArrayGeometry& geometry,
                                  const DirectionSet& dirs, double freq_hz,
                                  int ref_order = kDefaultReferenceOrder,
                                  const PropagationModel& model = {});

// Spatial HRTFs of the spherical head at the two ear positions. SH fields are
// left empty; see AttachShCoefficients.
HrtfSet SphericalHeadHrtf(const EarPositions& ears, double radius,
                          const DirectionSet& dirs, double freq_hz,
                          int ref_order = kDefaultReferenceOrder,
                          const PropagationModel& model = {});

// Weighted least-squares SH fit of order N; needs Q >= (N+1)^2.
CVector ShTransform(const CVector& values, const DirectionSet& dirs, int order);

// Same fit reusing a precomputed SH matrix of `dirs`.
CVector ShTransform(const CVector& values, const DirectionSet& dirs,
                    const ShMatrix& y);

// out[acn(n,m)] = (-1)^m in[acn(n,-m)]. Throws ShapeError unless the length is
// a perfect square.
CVector TildeTransform(const CVector& coeffs);

// Fills h_nm and tilde(h_nm) of both ears at the given order.
void AttachShCoefficients(HrtfSet& hrtf, const DirectionSet& dirs, int order);

// a_nm = Y^H s.
CVector ReferenceAmbisonics(const CVector& sources, const ShMatrix& y);
CVector ReferenceAmbisonics(const CVector& sources, const DirectionSet& dirs,
                            int order);

// p = h^T s (no conjugation).
Complex ReferenceBinaural(const CVector& sources, const HrtfSet& hrtf, Ear ear);

}  // namespace jointenc

#endif  // JOINTENC_ACOUSTICS_H_
