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

// Time-domain realization of frequency-domain filters.
//
// Spectra live on the uniform DFT grid of an L-point transform: bin k is
// k * sample_rate / L for k = 0..L/2. Taps are obtained by a real inverse DFT,
// a circular shift by L/2 (so the modeling delay is L/2 samples) and a
// periodic Hann window centered on that delay.

#ifndef JOINTENC_FIR_H_
#define JOINTENC_FIR_H_

#include <vector>

#include "jointenc/linalg.h"

namespace jointenc {

std::vector<double> DftBinFrequencies(int length, double sample_rate);

// `half_spectrum` has L/2+1 bins. The DC and Nyquist bins must be real
// (|imag| <= 1e-12 * max|bin|); otherwise NumericError, since no real filter
// has that response. InvalidArgument unless L is a power of two >= 2.
std::vector<double> FirFromFrequencyResponse(const CVector& half_spectrum, int length);

// DFT of the taps on the same L/2+1 grid.
CVector FirFrequencyResponse(const std::vector<double>& taps);

// Dense MIMO bank: output o = sum over inputs i of taps(o, i) * input i.
class FirFilterBank {
 public:
  FirFilterBank(int num_outputs, int num_inputs, int length, double sample_rate);

  int num_outputs() const { return num_outputs_; }
  int num_inputs() const { return num_inputs_; }
  int length() const { return length_; }
  double sample_rate() const { return sample_rate_; }
  int delay() const { return length_ / 2; }

  std::vector<double>& taps(int output, int input);
  const std::vector<double>& taps(int output, int input) const;

  // Fills every (output, input) pair from per-bin response matrices
  // responses[k] (num_outputs x num_inputs), k = 0..L/2.
  static FirFilterBank FromResponses(const std::vector<CMatrix>& responses, int length,
                                     double sample_rate);

 private:
  int num_outputs_;
  int num_inputs_;
  int length_;
  double sample_rate_;
  std::vector<std::vector<double>> taps_;
};

// Overlap-add block convolution. Each output has input_length + L - 1 samples.
// ShapeError when the channel count differs from the bank's input count or
// the channels have unequal lengths.
std::vector<std::vector<double>> Convolve(const FirFilterBank& bank,
                                          const std::vector<std::vector<double>>& inputs);

}  // namespace jointenc

#endif  // JOINTENC_FIR_H_
