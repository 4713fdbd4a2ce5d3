// Copyright 2026 The HaloGraph Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace halograph {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed bundle syntax or shape. Carries the 1-based input line.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A reference inside a bundle (entity id, token position) does not resolve.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Caller broke a documented precondition (position out of range, empty span).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

// Input that would make a score infinite or NaN, e.g. an all-zero top-k list.
class DegenerateInputError : public Error {
 public:
  using Error::Error;
};

// Scoring data missing from an otherwise valid bundle (an NLI ordered pair).
class DataError : public Error {
 public:
  using Error::Error;
};

// Metric has no defined value for the input (single-class AUC, constant series).
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace halograph
