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

#ifndef JOINTENC_ERRORS_H_
#define JOINTENC_ERRORS_H_

#include <stdexcept>
#include <string>

namespace jointenc {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of a function (x <= 0, f <= 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Scalar argument is out of its permitted range (|m| > n, alpha > 1, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Vector/matrix dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line)
      : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Experiment configuration failed validation; message starts with the field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A computation produced a non-finite value or a degenerate system.
class NumericError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace jointenc

#endif  // JOINTENC_ERRORS_H_
