// Copyright 2026 The spectral-qpe Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Exception types thrown by the library.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace spectral_qpe {

/// Base class for every error raised by spectral_qpe.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A caller supplied an argument that violates an operation's precondition.
class InvalidArgument : public Error {
  public:
    using Error::Error;
};

/**
 * @brief An internal invariant failed at run time.
 *
 * Raised for norm drift, a flag qubit left set after uncomputation, or a
 * computed operator that is no longer unitary. These indicate a bug or a
 * numerically broken input, never a recoverable condition.
 */
class ContractViolation : public Error {
  public:
    using Error::Error;
};

namespace detail {

[[noreturn]] inline void fail(const std::string &where, const std::string &what) {
    throw InvalidArgument(where + ": " + what);
}

inline void require(bool condition, const std::string &where,
                    const std::string &what) {
    if (!condition) {
        fail(where, what);
    }
}

} // namespace detail
} // namespace spectral_qpe
