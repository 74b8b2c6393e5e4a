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

#include "jointenc/wav.h"

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "fmt/format.h"
#include "jointenc/errors.h"

namespace jointenc {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

class Reader {
 public:
  explicit Reader(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  void Seek(std::size_t pos) {
    if (pos > bytes_.size()) throw IoError("WAV: truncated file");
    pos_ = pos;
  }
  void Need(std::size_t n) const {
    if (remaining() < n) throw IoError("WAV: truncated file");
  }
  std::uint32_t U32() {
    Need(4);
    const std::uint32_t v = bytes_[pos_] | (bytes_[pos_ + 1] << 8) | (bytes_[pos_ + 2] << 16) |
                            (static_cast<std::uint32_t>(bytes_[pos_ + 3]) << 24);
    pos_ += 4;
    return v;
  }
  std::uint16_t U16() {
    Need(2);
    const std::uint16_t v = static_cast<std::uint16_t>(bytes_[pos_] | (bytes_[pos_ + 1] << 8));
    pos_ += 2;
    return v;
  }
  std::string Tag() {
    Need(4);
    std::string s(bytes_.begin() + pos_, bytes_.begin() + pos_ + 4);
    pos_ += 4;
    return s;
  }
  const std::uint8_t* Data() const { return bytes_.data() + pos_; }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

float DecodeSample(const std::uint8_t* p, std::uint16_t format, std::uint16_t bits) {
  if (format == kFormatFloat) {
    std::uint32_t u = p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
    return std::bit_cast<float>(u);
  }
  switch (bits) {
    case 16:
      return static_cast<std::int16_t>(p[0] | (p[1] << 8)) / 32768.0f;
    case 24: {
      std::int32_t v = p[0] | (p[1] << 8) | (p[2] << 16);
      if (v & 0x800000) v -= 0x1000000;
      return static_cast<float>(v / 8388608.0);
    }
    default: {
      const std::int32_t v = static_cast<std::int32_t>(
          p[0] | (p[1] << 8) | (p[2] << 16) | (static_cast<std::uint32_t>(p[3]) << 24));
      return static_cast<float>(v / 2147483648.0);
    }
  }
}

void PutU32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void PutU16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void PutTag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

}  // namespace

WavAudio ParseWav(const std::vector<std::uint8_t>& bytes) {
  Reader r(bytes);
  if (r.Tag() != "RIFF") throw IoError("WAV: missing RIFF header");
  r.U32();
  if (r.Tag() != "WAVE") throw IoError("WAV: missing WAVE tag");

  std::uint16_t format = 0, channels = 0, bits = 0, block_align = 0;
  std::uint32_t rate = 0;
  bool have_fmt = false;
  while (r.remaining() >= 8) {
    const std::string tag = r.Tag();
    const std::uint32_t size = r.U32();
    const std::size_t body = r.pos();
    r.Need(tag == "data" ? 0 : size);
    if (tag == "fmt ") {
      if (size < 16) throw IoError("WAV: short fmt chunk");
      format = r.U16();
      channels = r.U16();
      rate = r.U32();
      r.U32();
      block_align = r.U16();
      bits = r.U16();
      if (format == kFormatExtensible) {
        if (size < 40) throw IoError("WAV: short extensible fmt chunk");
        r.U16();  // cbSize
        r.U16();  // valid bits
        r.U32();  // channel mask
        format = r.U16();  // first two bytes of the sub-format GUID
      }
      have_fmt = true;
    } else if (tag == "data") {
      if (!have_fmt) throw IoError("WAV: data chunk before fmt chunk");
      if (format != kFormatPcm && format != kFormatFloat) {
        throw IoError(fmt::format("WAV: unsupported sample format {}", format));
      }
      const bool supported = (format == kFormatPcm && (bits == 16 || bits == 24 || bits == 32)) ||
                             (format == kFormatFloat && bits == 32);
      if (!supported) throw IoError(fmt::format("WAV: unsupported bit depth {}", bits));
      if (channels == 0 || block_align != channels * (bits / 8)) {
        throw IoError("WAV: inconsistent block alignment");
      }
      const std::size_t avail = std::min<std::size_t>(size, r.remaining());
      const std::size_t frames = avail / block_align;
      WavAudio audio;
      audio.sample_rate = static_cast<int>(rate);
      audio.channels.assign(channels, std::vector<float>(frames));
      const std::uint8_t* p = r.Data();
      for (std::size_t f = 0; f < frames; ++f) {
        for (int c = 0; c < channels; ++c) {
          audio.channels[c][f] = DecodeSample(p, format, bits);
          p += bits / 8;
        }
      }
      return audio;
    }
    r.Seek(body + size + (size & 1));
  }
  throw IoError("WAV: no data chunk");
}

WavAudio ReadWav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return ParseWav(bytes);
}

std::vector<std::uint8_t> FormatWav(const WavAudio& audio) {
  if (audio.channels.empty()) throw InvalidArgument("WAV: no channels");
  const std::size_t frames = audio.num_frames();
  for (const auto& ch : audio.channels) {
    if (ch.size() != frames) throw ShapeError("WAV: channels differ in length");
  }
  const auto nch = static_cast<std::uint16_t>(audio.channels.size());
  const std::uint32_t data_size = static_cast<std::uint32_t>(frames * nch * 4);
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_size);
  PutTag(out, "RIFF");
  PutU32(out, 36 + data_size);
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, kFormatFloat);
  PutU16(out, nch);
  PutU32(out, static_cast<std::uint32_t>(audio.sample_rate));
  PutU32(out, static_cast<std::uint32_t>(audio.sample_rate) * nch * 4);
  PutU16(out, static_cast<std::uint16_t>(nch * 4));
  PutU16(out, 32);
  PutTag(out, "data");
  PutU32(out, data_size);
  for (std::size_t f = 0; f < frames; ++f) {
    for (const auto& ch : audio.channels) PutU32(out, std::bit_cast<std::uint32_t>(ch[f]));
  }
  return out;
}

void WriteWav(const std::filesystem::path& path, const WavAudio& audio) {
  const auto bytes = FormatWav(audio);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace jointenc
