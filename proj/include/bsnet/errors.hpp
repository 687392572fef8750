// Copyright 2026 The bsnet Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BSNET_ERRORS_HPP
#define BSNET_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bsnet {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A dimension or size limit would be exceeded.
class CapacityError : public Error {
 public:
  CapacityError(const std::string& what, double requested, double limit)
      : Error(what + " (requested " + std::to_string(requested) +
              ", limit " + std::to_string(limit) + ")"),
        requested_(requested),
        limit_(limit) {}

  double requested() const noexcept { return requested_; }
  double limit() const noexcept { return limit_; }

 private:
  double requested_;
  double limit_;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Matrix or vector fails the density-operator / state invariants.
class InvalidStateError : public Error {
 public:
  using Error::Error;
};

// A probability table does not sum to one.
class NormalizationError : public Error {
 public:
  NormalizationError(const std::string& what, double deficit)
      : Error(what + " (deficit " + std::to_string(deficit) + ")"),
        deficit_(deficit) {}

  double deficit() const noexcept { return deficit_; }

 private:
  double deficit_;
};

// (|a>^N + |b>^N) has (numerically) zero norm.
class DegenerateSuperpositionError : public Error {
 public:
  using Error::Error;
};

// No parameter reproduces the requested value; carries the achievable band.
class InversionError : public Error {
 public:
  InversionError(const std::string& what, double lo, double hi)
      : Error(what + " (achievable interval [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "])"),
        lo_(lo),
        hi_(hi) {}

  double achievable_low() const noexcept { return lo_; }
  double achievable_high() const noexcept { return hi_; }

 private:
  double lo_;
  double hi_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& field,
             const std::string& message)
      : Error("line " + std::to_string(line) +
              (field.empty() ? std::string() : ", field '" + field + "'") +
              ": " + message),
        line_(line),
        field_(field) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& field() const noexcept { return field_; }

 private:
  std::size_t line_;
  std::string field_;
};

}  // namespace bsnet

#endif  // BSNET_ERRORS_HPP
