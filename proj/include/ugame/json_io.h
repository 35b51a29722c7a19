// Copyright 2026 The ugame Authors
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

#ifndef UGAME_JSON_IO_H
#define UGAME_JSON_IO_H

#include <optional>
#include <string>

#include "json.hpp"
#include "ugame/core_math.h"
#include "ugame/game.h"
#include "ugame/noise.h"

namespace ugame {

/// Complex matrices are row-major arrays of rows of [re, im] pairs.
nlohmann::json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const nlohmann::json &j);

/// Vectors are arrays of [re, im] pairs; a bare number is a real entry.
StateVector vector_from_json(const nlohmann::json &j);

/// Either a 2x2 matrix or {"pauli": [x, y, z]}.
DensityMatrix register_state_from_json(const nlohmann::json &j);

/// {"v": .., "layer_v": .., "per_interferometer": {"C01a", "T12", "C01b"},
///  "rho_R_exp": <register state>}; every key optional.
NoiseModel noise_from_json(const nlohmann::json &j);

struct SimulationConfig {
    int d = 2;
    NoiseModel noise;
    DensityMatrix rho_b = DensityMatrix::maximally_mixed(2);
    std::optional<Measurement> measurement;
};

/// {"d", "noise", "state": amplitudes | "rho_B": matrix,
///  "measurement": [matrices] | {"waveplates": {"q": deg, "h": deg}}}.
/// Explicit measurement matrices are accepted at a 1e-3 tolerance so
/// values rounded to four decimals load unchanged.
SimulationConfig simulation_config_from_json(const nlohmann::json &j);

nlohmann::json read_json_file(const std::string &path);

}  // namespace ugame

#endif
