// Copyright 2026 The Sentinel Authors
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

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sentinel {

/// Parameter outside its admissible range (bad probability, nonpositive
/// rate, malformed scaling factor, ...).
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A truncated distribution left too much probability mass unaccounted for
/// a total-variation comparison.
class SupportMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A sample-size search ran past its hard cap without qualifying.
class SearchExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A control-limit calibration could not reach the requested run length
/// within its search cap.
class UnreachableTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The run-length chain approximation did not stabilise under refinement.
class DiscretizationTooCoarse : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exact (convolution-based) computation was requested for an input too
/// large to evaluate exactly.
class TooLargeForExact : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A verification routine was invoked on a scenario that fails one of its
/// stated hypotheses. The message lists the failed clauses.
class PreconditionsUnmet : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data; carries the 1-based row where parsing failed
/// (0 when not row-specific).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::int64_t row = 0)
      : std::runtime_error(what), row_(row) {}
  std::int64_t row() const { return row_; }

 private:
  std::int64_t row_ = 0;
};

/// Structurally valid input that violates a data invariant (duplicate keys,
/// out-of-order dates, calendar gaps).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace sentinel
