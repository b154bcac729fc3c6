// Copyright 2025 The condsqueeze Authors
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

#include <stdexcept>
#include <string>

namespace condsq {

// Operands that live in different Hilbert spaces.
struct SpaceMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Fock cutoff too small for the requested state or operator; carries the
// measured norm deficiency (1 - |psi|^2 of the truncated expansion).
struct TruncationError : std::runtime_error {
    TruncationError(const std::string& what, double deficiency_)
        : std::runtime_error(what), deficiency(deficiency_) {}
    double deficiency;
};

// Requested state is undefined for the given parameters (e.g. the
// antisymmetric logical state at zero squeezing).
struct DegenerateStateError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Time integration failed (step underflow, invariant blow-up, divergence).
struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid experiment configuration (bad file, unknown key, bad value).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace condsq
