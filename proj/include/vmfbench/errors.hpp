// Copyright 2026 The vmfbench Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace vmfbench {

// Raised when a numerical routine cannot meet its accuracy contract
// (quadrature that does not converge, a radicand that should be
// non-negative but is not). Signals a regime or implementation bug rather
// than bad user input; the CLI maps it to exit status 3.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, double achieved_error = 0.0)
      : std::runtime_error(what), achieved_error_(achieved_error) {}

  double achieved_error() const noexcept { return achieved_error_; }

 private:
  double achieved_error_;
};

// The nested-sum evaluation refuses parameter regimes where its
// alternating terms cancel beyond what the accumulators can carry.
class StabilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace vmfbench
