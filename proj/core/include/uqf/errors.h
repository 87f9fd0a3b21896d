// Copyright 2026 The UQF Authors.
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


#ifndef UQF_ERRORS_H_
#define UQF_ERRORS_H_

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace uqf {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidModelError : public Error {
 public:
  using Error::Error;
};

class SymbolOutOfRangeError : public Error {
 public:
  using Error::Error;
};

// Raised by the brute-force oracles when the number of enumerated hidden
// paths would exceed their budget.
class EnumerationLimitError : public Error {
 public:
  using Error::Error;
};

class SpectralRadiusTooLargeError : public Error {
 public:
  SpectralRadiusTooLargeError(double rho, double gamma)
      : Error("spectral radius of gamma * sum(B_sigma) is " +
              std::to_string(rho) + " (gamma = " + std::to_string(gamma) +
              "), must be < 1"),
        rho_(rho) {}
  double rho() const { return rho_; }

 private:
  double rho_;
};

class SingularSystemError : public Error {
 public:
  using Error::Error;
};

// The truncated factorization has fewer usable singular values than the
// requested rank.  The full spectrum is attached so callers can pick a
// smaller rank.
class RankDeficientError : public Error {
 public:
  RankDeficientError(int requested, int effective,
                     std::vector<double> singular_values)
      : Error("requested rank " + std::to_string(requested) +
              " but effective rank is " + std::to_string(effective)),
        requested_(requested),
        effective_(effective),
        singular_values_(std::move(singular_values)) {}
  int requested() const { return requested_; }
  int effective() const { return effective_; }
  const std::vector<double>& singular_values() const {
    return singular_values_;
  }

 private:
  int requested_;
  int effective_;
  std::vector<double> singular_values_;
};

class ZeroSamplingProbabilityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace uqf

#endif  // UQF_ERRORS_H_
