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

// Experiment configuration and the TOML subset it is stored in.
//
// Supported syntax: `[section]` headers, `key = value` pairs, `#` comments,
// double-quoted strings with \" \\ \n \t escapes, integers, floats, booleans
// and single-line arrays of those scalars. Nested tables, dotted keys and
// multi-line values are rejected with a ParseError.

#ifndef JOINTENC_CONFIG_H_
#define JOINTENC_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "jointenc/acoustics.h"
#include "jointenc/sph.h"

namespace jointenc {

struct TomlValue;
using TomlArray = std::vector<TomlValue>;

struct TomlValue {
  std::variant<bool, std::int64_t, double, std::string, TomlArray> data;

  bool operator==(const TomlValue& other) const = default;
};

// Section name -> key -> value. Keys before the first header live in "".
using TomlDocument = std::map<std::string, std::map<std::string, TomlValue>>;

TomlDocument ParseToml(const std::string& text);
TomlValue ParseTomlValue(const std::string& text);
std::string FormatTomlValue(const TomlValue& value);
std::string FormatToml(const TomlDocument& doc);

enum class BsmRoute { kPinv, kReduced };

struct ExperimentConfig {
  // [geometry]
  std::string geometry = "easycom-glasses-5";  // built-in name or CSV path
  double radius = 0.10;

  // [grid]
  GridKind grid_kind = GridKind::kFibonacci;
  int grid_size = 240;
  std::string grid_file;  // only for GridKind::kFile

  // [frequencies]
  double min_hz = 50.0;
  double max_hz = 10000.0;
  int num_frequencies = 64;
  double sound_speed = kDefaultSoundSpeed;

  // [design]
  int ambisonics_order = 1;
  int reference_order = kDefaultReferenceOrder;
  double snr_db = 40.0;
  std::vector<double> alphas = {0.0, 0.5, 1.0};
  std::vector<Ear> ears = {Ear::kLeft, Ear::kRight};
  bool stacked = false;
  BsmRoute bsm_route = BsmRoute::kPinv;

  // [render]
  double sample_rate = 48000.0;
  int fir_length = 1024;
  double render_alpha = 0.5;
  Ear foa_ear = Ear::kLeft;  // which ear's joint filter feeds FOA output

  // [output]
  std::string output_dir = "out";
  bool svg = true;

  bool operator==(const ExperimentConfig& other) const = default;
};

std::string ToString(BsmRoute route);

// Throws ConfigError naming the offending field path, e.g. "design.snr_db".
void Validate(const ExperimentConfig& config);

// Unknown sections or keys and type mismatches raise ConfigError. The result
// is validated.
ExperimentConfig ConfigFromToml(const TomlDocument& doc);
ExperimentConfig ParseConfig(const std::string& text);
ExperimentConfig LoadConfig(const std::filesystem::path& path);

TomlDocument ConfigToToml(const ExperimentConfig& config);
std::string FormatConfig(const ExperimentConfig& config);

// Applies `section.key=value`. The value uses TOML syntax; a bare word that
// is not a valid TOML value is taken as a string.
void ApplyOverride(ExperimentConfig& config, const std::string& assignment);

}  // namespace jointenc

#endif  // JOINTENC_CONFIG_H_
