// Copyright 2026 The chsh-stochastic Authors
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

namespace chsh {

/// A value violates a documented invariant (non-unitary matrix, column that
/// does not sum to one, |E| > 1, ...). The CLI maps this to exit code 3.
class InvariantError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// Operand shapes are incompatible.
class DimensionError : public InvariantError {
   public:
    using InvariantError::InvariantError;
};

}  // namespace chsh
