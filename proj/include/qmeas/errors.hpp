// Copyright 2026 The qmeas authors
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

namespace qmeas {

/// Base class for all qmeas errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller violated a documented precondition (bad argument, mismatched
/// grids, out-of-range values). Maps to CLI exit code 2.
struct PreconditionError : Error {
    using Error::Error;
};

/// An internal invariant failed (non-positive effect, broken normalization).
/// Maps to CLI exit code 3.
struct InvariantError : Error {
    using Error::Error;
};

/// A configuration file could not be parsed or is missing a field.
/// `field` names the offending entry. Maps to CLI exit code 2.
struct ConfigError : Error {
    std::string field;
    ConfigError(const std::string& field_, const std::string& what_)
        : Error("config field '" + field_ + "': " + what_), field(field_) {}
};

/// Requested marginal variances violate the joint-measurability bound
/// var_q * var_p >= 1/4. `deficit` is 1/4 - var_q*var_p.
struct NotJointlyMeasurable : Error {
    double deficit;
    explicit NotJointlyMeasurable(double deficit_)
        : Error("margin variances are not jointly measurable (deficit " +
                std::to_string(deficit_) + ")"),
          deficit(deficit_) {}
};

}  // namespace qmeas
