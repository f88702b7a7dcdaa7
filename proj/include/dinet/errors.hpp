// Copyright 2026 The dinet Authors.
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

namespace dinet {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shapes or sizes of the inputs do not fit together.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A scalar or matrix parameter is outside its admissible range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A model identifiability condition such as (I1), (I2) or (II1) failed.
class IdentifiabilityError : public ParameterError {
 public:
  IdentifiabilityError(std::string condition, const std::string& what);

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// An iterative method failed to converge or a matrix is numerically singular.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// The corner matrix picked by vertex hunting is (close to) singular.
class DegenerateCornerError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Successive projection ran out of residual before collecting every corner.
class RankDeficiencyError : public NumericalError {
 public:
  RankDeficiencyError(std::size_t found, std::size_t requested);

  std::size_t found() const noexcept { return found_; }
  std::size_t requested() const noexcept { return requested_; }

 private:
  std::size_t found_;
  std::size_t requested_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace dinet
