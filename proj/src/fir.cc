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

#include "jointenc/fir.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <unsupported/Eigen/FFT>

#include "fmt/format.h"
#include "jointenc/errors.h"

namespace jointenc {
namespace {

bool IsPowerOfTwo(int v) { return v > 0 && (v & (v - 1)) == 0; }

int NextPowerOfTwo(int v) {
  int p = 1;
  while (p < v) p <<= 1;
  return p;
}

Eigen::FFT<double> HalfSpectrumFft() {
  Eigen::FFT<double> fft;
  fft.SetFlag(Eigen::FFT<double>::HalfSpectrum);
  return fft;
}

}  // namespace

std::vector<double> DftBinFrequencies(int length, double sample_rate) {
  if (!IsPowerOfTwo(length) || length < 2) {
    throw InvalidArgument(fmt::format("FIR length must be a power of two >= 2, got {}", length));
  }
  std::vector<double> out(length / 2 + 1);
  for (int k = 0; k <= length / 2; ++k) out[k] = k * sample_rate / length;
  return out;
}

std::vector<double> FirFromFrequencyResponse(const CVector& half_spectrum, int length) {
  if (!IsPowerOfTwo(length) || length < 2) {
    throw InvalidArgument(fmt::format("FIR length must be a power of two >= 2, got {}", length));
  }
  const int bins = length / 2 + 1;
  if (half_spectrum.size() != bins) {
    throw ShapeError(fmt::format("FIR of length {} needs {} bins, got {}", length, bins,
                                 half_spectrum.size()));
  }
  if (!AllFinite(half_spectrum)) throw NumericError("non-finite frequency response");
  const double scale = std::max(half_spectrum.cwiseAbs().maxCoeff(), 1e-300);
  if (std::abs(half_spectrum(0).imag()) > 1e-12 * scale ||
      std::abs(half_spectrum(bins - 1).imag()) > 1e-12 * scale) {
    throw NumericError("DC and Nyquist bins must be real for a real-valued filter");
  }
  std::vector<std::complex<double>> spectrum(half_spectrum.data(),
                                             half_spectrum.data() + bins);
  std::vector<double> circular;
  HalfSpectrumFft().inv(circular, spectrum, length);
  std::vector<double> taps(length);
  const int half = length / 2;
  for (int n = 0; n < length; ++n) {
    const double window = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / length);
    taps[n] = window * circular[(n + half) % length];
  }
  return taps;
}

CVector FirFrequencyResponse(const std::vector<double>& taps) {
  std::vector<std::complex<double>> spectrum;
  std::vector<double> padded = taps;
  HalfSpectrumFft().fwd(spectrum, padded);
  spectrum.resize(taps.size() / 2 + 1);
  return Eigen::Map<const CVector>(spectrum.data(), static_cast<Eigen::Index>(spectrum.size()));
}

FirFilterBank::FirFilterBank(int num_outputs, int num_inputs, int length, double sample_rate)
    : num_outputs_(num_outputs),
      num_inputs_(num_inputs),
      length_(length),
      sample_rate_(sample_rate) {
  if (num_outputs < 1 || num_inputs < 1) throw InvalidArgument("FIR bank needs channels");
  if (!IsPowerOfTwo(length) || length < 2) {
    throw InvalidArgument(fmt::format("FIR length must be a power of two >= 2, got {}", length));
  }
  if (!(sample_rate > 0.0)) throw InvalidArgument("sample rate must be > 0");
  taps_.assign(static_cast<std::size_t>(num_outputs) * num_inputs,
               std::vector<double>(length, 0.0));
}

std::vector<double>& FirFilterBank::taps(int output, int input) {
  return taps_.at(static_cast<std::size_t>(output) * num_inputs_ + input);
}

const std::vector<double>& FirFilterBank::taps(int output, int input) const {
  return taps_.at(static_cast<std::size_t>(output) * num_inputs_ + input);
}

FirFilterBank FirFilterBank::FromResponses(const std::vector<CMatrix>& responses, int length,
                                           double sample_rate) {
  if (static_cast<int>(responses.size()) != length / 2 + 1) {
    throw ShapeError(fmt::format("FIR of length {} needs {} response bins, got {}", length,
                                 length / 2 + 1, responses.size()));
  }
  const int outs = static_cast<int>(responses[0].rows());
  const int ins = static_cast<int>(responses[0].cols());
  FirFilterBank bank(outs, ins, length, sample_rate);
  CVector column(responses.size());
  for (int o = 0; o < outs; ++o) {
    for (int i = 0; i < ins; ++i) {
      for (std::size_t k = 0; k < responses.size(); ++k) {
        if (responses[k].rows() != outs || responses[k].cols() != ins) {
          throw ShapeError("response matrices differ in shape across bins");
        }
        column(k) = responses[k](o, i);
      }
      bank.taps(o, i) = FirFromFrequencyResponse(column, length);
    }
  }
  return bank;
}

std::vector<std::vector<double>> Convolve(const FirFilterBank& bank,
                                          const std::vector<std::vector<double>>& inputs) {
  if (static_cast<int>(inputs.size()) != bank.num_inputs()) {
    throw ShapeError(fmt::format("bank expects {} input channels, got {}", bank.num_inputs(),
                                 inputs.size()));
  }
  const std::size_t n = inputs[0].size();
  for (const auto& ch : inputs) {
    if (ch.size() != n) throw ShapeError("input channels differ in length");
  }
  const int taps = bank.length();
  const int fft_size = std::max(4096, NextPowerOfTwo(2 * taps));
  const int block = fft_size - taps + 1;
  const int bins = fft_size / 2 + 1;
  auto fft = HalfSpectrumFft();

  std::vector<Eigen::ArrayXcd> filters(static_cast<std::size_t>(bank.num_outputs()) *
                                       bank.num_inputs());
  std::vector<double> padded(fft_size);
  std::vector<std::complex<double>> spectrum;
  for (int o = 0; o < bank.num_outputs(); ++o) {
    for (int i = 0; i < bank.num_inputs(); ++i) {
      std::fill(padded.begin(), padded.end(), 0.0);
      std::copy(bank.taps(o, i).begin(), bank.taps(o, i).end(), padded.begin());
      fft.fwd(spectrum, padded);
      filters[o * bank.num_inputs() + i] = Eigen::Map<Eigen::ArrayXcd>(spectrum.data(), bins);
    }
  }

  const std::size_t out_len = n + taps - 1;
  std::vector<std::vector<double>> outputs(bank.num_outputs(), std::vector<double>(out_len, 0.0));
  std::vector<Eigen::ArrayXcd> in_spec(bank.num_inputs());
  std::vector<double> time;
  for (std::size_t start = 0; start < n; start += block) {
    const std::size_t len = std::min<std::size_t>(block, n - start);
    for (int i = 0; i < bank.num_inputs(); ++i) {
      std::fill(padded.begin(), padded.end(), 0.0);
      std::copy_n(inputs[i].begin() + start, len, padded.begin());
      fft.fwd(spectrum, padded);
      in_spec[i] = Eigen::Map<Eigen::ArrayXcd>(spectrum.data(), bins);
    }
    for (int o = 0; o < bank.num_outputs(); ++o) {
      Eigen::ArrayXcd acc = Eigen::ArrayXcd::Zero(bins);
      for (int i = 0; i < bank.num_inputs(); ++i) acc += filters[o * bank.num_inputs() + i] * in_spec[i];
      spectrum.assign(acc.data(), acc.data() + bins);
      fft.inv(time, spectrum, fft_size);
      const std::size_t count = std::min<std::size_t>(len + taps - 1, out_len - start);
      for (std::size_t t = 0; t < count; ++t) outputs[o][start + t] += time[t];
    }
  }
  return outputs;
}

}  // namespace jointenc
