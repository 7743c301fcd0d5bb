// Copyright 2026 The qmon Authors
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

#ifndef QMON_ERRORS_H
#define QMON_ERRORS_H

#include <stdexcept>
#include <string>

namespace qmon {

/// A caller broke a documented precondition (size mismatch, bad probabilities, ...).
struct ContractViolation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A constructor parameter is out of its supported range.
struct InvalidParameter : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// The request is well formed but the operation cannot serve it
/// (too many qubits for exhaustive enumeration, information already destroyed, ...).
struct UnsupportedOperation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A quantity is mathematically undefined for the given input.
struct UndefinedInput : std::domain_error {
    using std::domain_error::domain_error;
};

}  // namespace qmon

#endif
