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
 * Named single-qubit gates.
 */
#pragma once

#include "statevector.hpp"

#include <cmath>
#include <numbers>

namespace spectral_qpe::gates {

inline GateMatrix hadamard() {
    const double s = 1.0 / std::numbers::sqrt2;
    return GateMatrix::from_rows({{s, s}, {s, -s}});
}

inline GateMatrix pauli_x() { return GateMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }

inline GateMatrix pauli_y() {
    return GateMatrix::from_rows({{0.0, -imag_unit}, {imag_unit, 0.0}});
}

inline GateMatrix pauli_z() { return GateMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

/// diag(1, e^{i theta}).
inline GateMatrix phase(double theta) {
    return GateMatrix::from_rows({{1.0, 0.0}, {0.0, std::polar(1.0, theta)}});
}

} // namespace spectral_qpe::gates
