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

#include "jointenc/config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "fmt/format.h"
#include "jointenc/errors.h"

namespace jointenc {
namespace {

class Cursor {
 public:
  Cursor(const std::string& text, int line) : text_(text), line_(line) {}

  bool AtEnd() const { return pos_ >= text_.size(); }
  char Peek() const { return AtEnd() ? '\0' : text_[pos_]; }
  void Advance() { ++pos_; }

  void SkipSpace() {
    while (!AtEnd() && (Peek() == ' ' || Peek() == '\t')) Advance();
  }

  // True when only whitespace or a comment remains.
  bool AtLineEnd() {
    SkipSpace();
    return AtEnd() || Peek() == '#';
  }

  [[noreturn]] void Fail(const std::string& what) const {
    throw ParseError(fmt::format("{} at column {}", what, pos_ + 1), line_);
  }

  TomlValue Value() {
    SkipSpace();
    if (AtEnd()) Fail("missing value");
    const char c = Peek();
    if (c == '"') return TomlValue{String()};
    if (c == '[') return TomlValue{Array()};
    return Scalar();
  }

 private:
  std::string String() {
    Advance();
    std::string out;
    while (true) {
      if (AtEnd()) Fail("unterminated string");
      const char c = Peek();
      Advance();
      if (c == '"') return out;
      if (c != '\\') {
        out.push_back(c);
        continue;
      }
      if (AtEnd()) Fail("unterminated escape");
      const char e = Peek();
      Advance();
      switch (e) {
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        default: Fail(fmt::format("unsupported escape \\{}", e));
      }
    }
  }

  TomlArray Array() {
    Advance();
    TomlArray out;
    SkipSpace();
    if (Peek() == ']') {
      Advance();
      return out;
    }
    while (true) {
      out.push_back(Value());
      SkipSpace();
      if (Peek() == ',') {
        Advance();
        SkipSpace();
        if (Peek() == ']') {  // trailing comma
          Advance();
          return out;
        }
        continue;
      }
      if (Peek() == ']') {
        Advance();
        return out;
      }
      Fail("expected ',' or ']' in array");
    }
  }

  TomlValue Scalar() {
    const std::size_t start = pos_;
    while (!AtEnd() && Peek() != ',' && Peek() != ']' && Peek() != ' ' && Peek() != '\t' &&
           Peek() != '#') {
      Advance();
    }
    const std::string token = text_.substr(start, pos_ - start);
    if (token == "true") return TomlValue{true};
    if (token == "false") return TomlValue{false};
    if (token == "inf" || token == "+inf") return TomlValue{HUGE_VAL};
    if (token == "-inf") return TomlValue{-HUGE_VAL};
    if (token == "nan" || token == "+nan" || token == "-nan") return TomlValue{std::nan("")};
    const char* first = token.data() + (token.starts_with('+') ? 1 : 0);
    const char* last = token.data() + token.size();
    if (first == last) Fail("empty value");
    std::int64_t i = 0;
    auto ri = std::from_chars(first, last, i);
    if (ri.ec == std::errc() && ri.ptr == last) return TomlValue{i};
    double d = 0.0;
    auto rd = std::from_chars(first, last, d);
    if (rd.ec == std::errc() && rd.ptr == last) return TomlValue{d};
    pos_ = start;
    Fail(fmt::format("invalid value '{}'", token));
  }

  const std::string& text_;
  int line_;
  std::size_t pos_ = 0;
};

bool IsBareKeyChar(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
         c == '_' || c == '-';
}

std::string Trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string FormatDouble(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, r.ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

// ---- typed accessors ----

const char* TypeName(const TomlValue& v) {
  switch (v.data.index()) {
    case 0: return "boolean";
    case 1: return "integer";
    case 2: return "float";
    case 3: return "string";
    default: return "array";
  }
}

[[noreturn]] void TypeFail(const std::string& path, const char* expected, const TomlValue& v) {
  throw ConfigError(fmt::format("{}: expected {}, got {}", path, expected, TypeName(v)));
}

double AsDouble(const TomlValue& v, const std::string& path) {
  if (auto* d = std::get_if<double>(&v.data)) return *d;
  if (auto* i = std::get_if<std::int64_t>(&v.data)) return static_cast<double>(*i);
  TypeFail(path, "a number", v);
}

int AsInt(const TomlValue& v, const std::string& path) {
  auto* i = std::get_if<std::int64_t>(&v.data);
  if (i == nullptr) TypeFail(path, "an integer", v);
  if (*i < INT32_MIN || *i > INT32_MAX) {
    throw ConfigError(fmt::format("{}: integer {} out of range", path, *i));
  }
  return static_cast<int>(*i);
}

bool AsBool(const TomlValue& v, const std::string& path) {
  auto* b = std::get_if<bool>(&v.data);
  if (b == nullptr) TypeFail(path, "a boolean", v);
  return *b;
}

std::string AsString(const TomlValue& v, const std::string& path) {
  auto* s = std::get_if<std::string>(&v.data);
  if (s == nullptr) TypeFail(path, "a string", v);
  return *s;
}

const TomlArray& AsArray(const TomlValue& v, const std::string& path) {
  auto* a = std::get_if<TomlArray>(&v.data);
  if (a == nullptr) TypeFail(path, "an array", v);
  return *a;
}

Ear AsEar(const TomlValue& v, const std::string& path) {
  const std::string s = AsString(v, path);
  try {
    return ParseEar(s);
  } catch (const Error&) {
    throw ConfigError(fmt::format("{}: unknown ear '{}'", path, s));
  }
}

TomlValue EarValue(Ear ear) { return TomlValue{ToString(ear)}; }

struct Field {
  const char* section;
  const char* key;
  std::function<TomlValue(const ExperimentConfig&)> get;
  std::function<void(ExperimentConfig&, const TomlValue&, const std::string&)> set;
};

const std::vector<Field>& Fields() {
  using C = ExperimentConfig;
  using V = TomlValue;
  using P = std::string;
  static const std::vector<Field> fields = {
      {"geometry", "name", [](const C& c) { return V{c.geometry}; },
       [](C& c, const V& v, const P& p) { c.geometry = AsString(v, p); }},
      {"geometry", "radius", [](const C& c) { return V{c.radius}; },
       [](C& c, const V& v, const P& p) { c.radius = AsDouble(v, p); }},
      {"grid", "kind", [](const C& c) { return V{ToString(c.grid_kind)}; },
       [](C& c, const V& v, const P& p) {
         const std::string s = AsString(v, p);
         try {
           c.grid_kind = ParseGridKind(s);
         } catch (const Error&) {
           throw ConfigError(fmt::format("{}: unknown grid kind '{}'", p, s));
         }
       }},
      {"grid", "size", [](const C& c) { return V{std::int64_t{c.grid_size}}; },
       [](C& c, const V& v, const P& p) { c.grid_size = AsInt(v, p); }},
      {"grid", "file", [](const C& c) { return V{c.grid_file}; },
       [](C& c, const V& v, const P& p) { c.grid_file = AsString(v, p); }},
      {"frequencies", "min_hz", [](const C& c) { return V{c.min_hz}; },
       [](C& c, const V& v, const P& p) { c.min_hz = AsDouble(v, p); }},
      {"frequencies", "max_hz", [](const C& c) { return V{c.max_hz}; },
       [](C& c, const V& v, const P& p) { c.max_hz = AsDouble(v, p); }},
      {"frequencies", "count", [](const C& c) { return V{std::int64_t{c.num_frequencies}}; },
       [](C& c, const V& v, const P& p) { c.num_frequencies = AsInt(v, p); }},
      {"frequencies", "sound_speed", [](const C& c) { return V{c.sound_speed}; },
       [](C& c, const V& v, const P& p) { c.sound_speed = AsDouble(v, p); }},
      {"design", "ambisonics_order",
       [](const C& c) { return V{std::int64_t{c.ambisonics_order}}; },
       [](C& c, const V& v, const P& p) { c.ambisonics_order = AsInt(v, p); }},
      {"design", "reference_order",
       [](const C& c) { return V{std::int64_t{c.reference_order}}; },
       [](C& c, const V& v, const P& p) { c.reference_order = AsInt(v, p); }},
      {"design", "snr_db", [](const C& c) { return V{c.snr_db}; },
       [](C& c, const V& v, const P& p) { c.snr_db = AsDouble(v, p); }},
      {"design", "alphas",
       [](const C& c) {
         TomlArray a;
         for (double x : c.alphas) a.push_back(V{x});
         return V{a};
       },
       [](C& c, const V& v, const P& p) {
         c.alphas.clear();
         const TomlArray& a = AsArray(v, p);
         for (std::size_t i = 0; i < a.size(); ++i) {
           c.alphas.push_back(AsDouble(a[i], fmt::format("{}[{}]", p, i)));
         }
       }},
      {"design", "ears",
       [](const C& c) {
         TomlArray a;
         for (Ear e : c.ears) a.push_back(EarValue(e));
         return V{a};
       },
       [](C& c, const V& v, const P& p) {
         c.ears.clear();
         const TomlArray& a = AsArray(v, p);
         for (std::size_t i = 0; i < a.size(); ++i) {
           c.ears.push_back(AsEar(a[i], fmt::format("{}[{}]", p, i)));
         }
       }},
      {"design", "stacked", [](const C& c) { return V{c.stacked}; },
       [](C& c, const V& v, const P& p) { c.stacked = AsBool(v, p); }},
      {"design", "bsm_method", [](const C& c) { return V{ToString(c.bsm_route)}; },
       [](C& c, const V& v, const P& p) {
         const std::string s = AsString(v, p);
         if (s == "pinv") {
           c.bsm_route = BsmRoute::kPinv;
         } else if (s == "reduced") {
           c.bsm_route = BsmRoute::kReduced;
         } else {
           throw ConfigError(fmt::format("{}: unknown method '{}'", p, s));
         }
       }},
      {"render", "sample_rate", [](const C& c) { return V{c.sample_rate}; },
       [](C& c, const V& v, const P& p) { c.sample_rate = AsDouble(v, p); }},
      {"render", "fir_length", [](const C& c) { return V{std::int64_t{c.fir_length}}; },
       [](C& c, const V& v, const P& p) { c.fir_length = AsInt(v, p); }},
      {"render", "alpha", [](const C& c) { return V{c.render_alpha}; },
       [](C& c, const V& v, const P& p) { c.render_alpha = AsDouble(v, p); }},
      {"render", "foa_ear", [](const C& c) { return EarValue(c.foa_ear); },
       [](C& c, const V& v, const P& p) { c.foa_ear = AsEar(v, p); }},
      {"output", "directory", [](const C& c) { return V{c.output_dir}; },
       [](C& c, const V& v, const P& p) { c.output_dir = AsString(v, p); }},
      {"output", "svg", [](const C& c) { return V{c.svg}; },
       [](C& c, const V& v, const P& p) { c.svg = AsBool(v, p); }},
  };
  return fields;
}

const Field* FindField(const std::string& section, const std::string& key) {
  for (const Field& f : Fields()) {
    if (section == f.section && key == f.key) return &f;
  }
  return nullptr;
}

bool HasSection(const std::string& section) {
  for (const Field& f : Fields()) {
    if (section == f.section) return true;
  }
  return false;
}

[[noreturn]] void Invalid(const std::string& path, const std::string& what) {
  throw ConfigError(path + ": " + what);
}

bool IsPowerOfTwo(int v) { return v > 0 && (v & (v - 1)) == 0; }

}  // namespace

TomlDocument ParseToml(const std::string& text) {
  TomlDocument doc;
  std::string section;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    Cursor cur(raw, line);
    if (cur.AtLineEnd()) continue;
    if (cur.Peek() == '[') {
      const auto close = raw.find(']');
      if (close == std::string::npos) throw ParseError("unterminated section header", line);
      section = Trim(raw.substr(raw.find('[') + 1, close - raw.find('[') - 1));
      if (section.empty() || !std::all_of(section.begin(), section.end(), IsBareKeyChar)) {
        throw ParseError(fmt::format("invalid section name '{}'", section), line);
      }
      if (doc.contains(section)) {
        throw ParseError(fmt::format("duplicate section [{}]", section), line);
      }
      doc[section];
      Cursor rest(raw.substr(close + 1), line);
      if (!rest.AtLineEnd()) throw ParseError("trailing characters after section header", line);
      continue;
    }
    const auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line);
    const std::string key = Trim(raw.substr(0, eq));
    if (key.empty() || !std::all_of(key.begin(), key.end(), IsBareKeyChar)) {
      throw ParseError(fmt::format("invalid key '{}'", key), line);
    }
    const std::string value_text = raw.substr(eq + 1);
    Cursor vc(value_text, line);
    TomlValue value = vc.Value();
    if (!vc.AtLineEnd()) vc.Fail("trailing characters after value");
    auto& table = doc[section];
    if (table.contains(key)) throw ParseError(fmt::format("duplicate key '{}'", key), line);
    table.emplace(key, std::move(value));
  }
  return doc;
}

TomlValue ParseTomlValue(const std::string& text) {
  Cursor cur(text, 0);
  TomlValue v = cur.Value();
  if (!cur.AtLineEnd()) cur.Fail("trailing characters after value");
  return v;
}

std::string FormatTomlValue(const TomlValue& value) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return FormatDouble(v);
        } else if constexpr (std::is_same_v<T, std::string>) {
          std::string out = "\"";
          for (char c : v) {
            switch (c) {
              case '"': out += "\\\""; break;
              case '\\': out += "\\\\"; break;
              case '\n': out += "\\n"; break;
              case '\t': out += "\\t"; break;
              default: out.push_back(c);
            }
          }
          return out + "\"";
        } else {
          std::string out = "[";
          for (std::size_t i = 0; i < v.size(); ++i) {
            if (i > 0) out += ", ";
            out += FormatTomlValue(v[i]);
          }
          return out + "]";
        }
      },
      value.data);
}

std::string FormatToml(const TomlDocument& doc) {
  std::string out;
  if (auto it = doc.find(""); it != doc.end()) {
    for (const auto& [k, v] : it->second) out += k + " = " + FormatTomlValue(v) + "\n";
  }
  for (const auto& [section, table] : doc) {
    if (section.empty()) continue;
    if (!out.empty()) out += "\n";
    out += "[" + section + "]\n";
    for (const auto& [k, v] : table) out += k + " = " + FormatTomlValue(v) + "\n";
  }
  return out;
}

std::string ToString(BsmRoute route) { return route == BsmRoute::kPinv ? "pinv" : "reduced"; }

void Validate(const ExperimentConfig& c) {
  if (c.geometry.empty()) Invalid("geometry.name", "must not be empty");
  if (!(c.radius > 0.0) || !std::isfinite(c.radius)) Invalid("geometry.radius", "must be > 0");
  if (c.grid_size < 1) Invalid("grid.size", "must be >= 1");
  if (c.grid_kind == GridKind::kEqualAngle) {
    const int n = static_cast<int>(std::lround(std::sqrt(c.grid_size / 2.0)));
    if (2 * n * n != c.grid_size) Invalid("grid.size", "equal-angle grids need size 2n^2");
  }
  if (c.grid_kind == GridKind::kFile && c.grid_file.empty()) {
    Invalid("grid.file", "required when grid.kind = \"file\"");
  }
  if (c.grid_kind != GridKind::kFile &&
      c.grid_size < (c.ambisonics_order + 1) * (c.ambisonics_order + 1)) {
    Invalid("grid.size", "fewer directions than SH channels");
  }
  if (!(c.min_hz > 0.0) || !std::isfinite(c.min_hz)) Invalid("frequencies.min_hz", "must be > 0");
  if (!std::isfinite(c.max_hz) || c.max_hz < c.min_hz) {
    Invalid("frequencies.max_hz", "must be >= frequencies.min_hz");
  }
  if (c.num_frequencies < 1) Invalid("frequencies.count", "must be >= 1");
  if (c.num_frequencies > 1 && c.max_hz == c.min_hz) {
    Invalid("frequencies.max_hz", "must exceed min_hz when count > 1");
  }
  if (!(c.sound_speed > 0.0) || !std::isfinite(c.sound_speed)) {
    Invalid("frequencies.sound_speed", "must be > 0");
  }
  if (c.ambisonics_order < 0 || c.ambisonics_order > 10) {
    Invalid("design.ambisonics_order", "must be in [0, 10]");
  }
  if (c.reference_order < 0 || c.reference_order > 60) {
    Invalid("design.reference_order", "must be in [0, 60]");
  }
  if (!std::isfinite(c.snr_db)) Invalid("design.snr_db", "must be finite");
  if (c.alphas.empty()) Invalid("design.alphas", "must not be empty");
  for (std::size_t i = 0; i < c.alphas.size(); ++i) {
    if (!(c.alphas[i] >= 0.0 && c.alphas[i] <= 1.0)) {
      Invalid(fmt::format("design.alphas[{}]", i), "must be in [0, 1]");
    }
  }
  if (c.ears.empty()) Invalid("design.ears", "must not be empty");
  if (c.ears.size() == 2 && c.ears[0] == c.ears[1]) Invalid("design.ears", "duplicate ear");
  if (c.ears.size() > 2) Invalid("design.ears", "at most two ears");
  if (!(c.sample_rate > 0.0) || !std::isfinite(c.sample_rate)) {
    Invalid("render.sample_rate", "must be > 0");
  }
  if (!IsPowerOfTwo(c.fir_length) || c.fir_length < 16) {
    Invalid("render.fir_length", "must be a power of two >= 16");
  }
  if (!(c.render_alpha >= 0.0 && c.render_alpha <= 1.0)) Invalid("render.alpha", "must be in [0, 1]");
  if (c.output_dir.empty()) Invalid("output.directory", "must not be empty");
}

ExperimentConfig ConfigFromToml(const TomlDocument& doc) {
  ExperimentConfig config;
  for (const auto& [section, table] : doc) {
    if (!HasSection(section)) {
      throw ConfigError(fmt::format("{}: unknown section", section.empty() ? "<root>" : section));
    }
    for (const auto& [key, value] : table) {
      const std::string path = section + "." + key;
      const Field* field = FindField(section, key);
      if (field == nullptr) throw ConfigError(path + ": unknown key");
      field->set(config, value, path);
    }
  }
  Validate(config);
  return config;
}

ExperimentConfig ParseConfig(const std::string& text) { return ConfigFromToml(ParseToml(text)); }

ExperimentConfig LoadConfig(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseConfig(buf.str());
}

TomlDocument ConfigToToml(const ExperimentConfig& config) {
  TomlDocument doc;
  for (const Field& f : Fields()) doc[f.section][f.key] = f.get(config);
  return doc;
}

std::string FormatConfig(const ExperimentConfig& config) {
  return FormatToml(ConfigToToml(config));
}

void ApplyOverride(ExperimentConfig& config, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) {
    throw ConfigError(fmt::format("--set: expected section.key=value, got '{}'", assignment));
  }
  const std::string path = Trim(assignment.substr(0, eq));
  const auto dot = path.find('.');
  if (dot == std::string::npos) throw ConfigError(path + ": expected section.key");
  const Field* field = FindField(path.substr(0, dot), path.substr(dot + 1));
  if (field == nullptr) throw ConfigError(path + ": unknown key");
  const std::string text = Trim(assignment.substr(eq + 1));
  TomlValue value;
  try {
    value = ParseTomlValue(text);
  } catch (const ParseError&) {
    value = TomlValue{text};
  }
  ExperimentConfig updated = config;
  field->set(updated, value, path);
  Validate(updated);
  config = std::move(updated);
}

}  // namespace jointenc
