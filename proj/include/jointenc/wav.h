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

#ifndef JOINTENC_WAV_H_
#define JOINTENC_WAV_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace jointenc {

struct WavAudio {
  int sample_rate = 48000;
  std::vector<std::vector<float>> channels;  // de-interleaved, equal lengths

  int num_channels() const { return static_cast<int>(channels.size()); }
  std::size_t num_frames() const { return channels.empty() ? 0 : channels[0].size(); }
};

// Reads PCM 16/24/32-bit and IEEE float32 data, plain or extensible format.
// Other encodings raise IoError ("unsupported ...").
WavAudio ParseWav(const std::vector<std::uint8_t>& bytes);
WavAudio ReadWav(const std::filesystem::path& path);

// Always writes IEEE float32.
std::vector<std::uint8_t> FormatWav(const WavAudio& audio);
void WriteWav(const std::filesystem::path& path, const WavAudio& audio);

}  // namespace jointenc

#endif  // JOINTENC_WAV_H_
