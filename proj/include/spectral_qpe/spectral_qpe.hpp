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
 * Umbrella header for the spectral_qpe library.
 */
#pragma once

#include "error.hpp"
#include "gates.hpp"
#include "grid_particle.hpp"
#include "hamiltonian.hpp"
#include "hamiltonian_terms.hpp"
#include "linalg.hpp"
#include "oracle.hpp"
#include "phase_estimation.hpp"
#include "problems.hpp"
#include "qft.hpp"
#include "rng.hpp"
#include "statevector.hpp"
