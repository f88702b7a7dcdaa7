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

#include "dinet/errors.hpp"

#include <utility>

namespace dinet {

IdentifiabilityError::IdentifiabilityError(std::string condition,
                                           const std::string& what)
    : ParameterError(condition + " violated: " + what),
      condition_(std::move(condition)) {}

RankDeficiencyError::RankDeficiencyError(std::size_t found,
                                         std::size_t requested)
    : NumericalError("residual vanished after " + std::to_string(found) +
                     " of " + std::to_string(requested) +
                     " corners; input rank is too low"),
      found_(found),
      requested_(requested) {}

}  // namespace dinet
