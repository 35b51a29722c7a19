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

#include "ugame/json_io.h"

#include <cmath>
#include <fstream>

#include "ugame/mesh.h"
#include "ugame/pipeline.h"

namespace ugame {

namespace {

constexpr double kRoundedTolerance = 1e-3;

Complex entry_from_json(const nlohmann::json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw ValidationError("expected a number or an [re, im] pair, got " + j.dump());
}

double number_at(const nlohmann::json &j, const char *key) {
    const auto &v = j.at(key);
    if (!v.is_number()) {
        throw ValidationError(std::string("field '") + key + "' must be a number");
    }
    return v.get<double>();
}

}  // namespace

nlohmann::json matrix_to_json(const ComplexMatrix &m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back({m(r, c).real(), m(r, c).imag()});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ComplexMatrix matrix_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError("matrix must be a non-empty array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (!j[0].is_array() || j[0].empty()) {
        throw ValidationError("matrix rows must be non-empty arrays");
    }
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    ComplexMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; r++) {
        const auto &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw ValidationError("matrix rows must all have the same length");
        }
        for (Eigen::Index c = 0; c < cols; c++) {
            m(r, c) = entry_from_json(row[static_cast<std::size_t>(c)]);
        }
    }
    return m;
}

StateVector vector_from_json(const nlohmann::json &j) {
    if (!j.is_array() || j.empty()) {
        throw ValidationError("state vector must be a non-empty array");
    }
    StateVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t k = 0; k < j.size(); k++) {
        v(static_cast<Eigen::Index>(k)) = entry_from_json(j[k]);
    }
    return v;
}

DensityMatrix register_state_from_json(const nlohmann::json &j) {
    if (j.is_object() && j.contains("pauli")) {
        const auto &p = j.at("pauli");
        if (!p.is_array() || p.size() != 3) {
            throw ValidationError("'pauli' must be [x, y, z]");
        }
        return reconstruct_from_pauli({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
    }
    ComplexMatrix m = matrix_from_json(j);
    if (m.rows() != 2 || m.cols() != 2) {
        throw ValidationError("register state must be 2x2");
    }
    return validate_density(m);
}

NoiseModel noise_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ValidationError("noise must be an object");
    }
    NoiseModel noise;
    if (j.contains("v")) {
        noise.visibility_v = number_at(j, "v");
    }
    if (j.contains("layer_v")) {
        noise.layer_visibility = number_at(j, "layer_v");
    }
    if (j.contains("per_interferometer")) {
        const auto &p = j.at("per_interferometer");
        InterferometerVisibilities vis = InterferometerVisibilities::uniform(noise.visibility_v);
        if (p.contains("C01a")) {
            vis.c01a = number_at(p, "C01a");
        }
        if (p.contains("T12")) {
            vis.t12 = number_at(p, "T12");
        }
        if (p.contains("C01b")) {
            vis.c01b = number_at(p, "C01b");
        }
        noise.per_interferometer = vis;
    }
    if (j.contains("rho_R_exp")) {
        noise.register_state = register_state_from_json(j.at("rho_R_exp"));
    }
    noise.validate();
    return noise;
}

SimulationConfig simulation_config_from_json(const nlohmann::json &j) {
    if (!j.is_object()) {
        throw ValidationError("simulation config must be an object");
    }
    SimulationConfig cfg;
    cfg.d = j.value("d", 2);
    if (cfg.d != 2 && cfg.d != 3) {
        throw ValidationError("simulation supports d = 2 or d = 3");
    }
    if (j.contains("noise")) {
        cfg.noise = noise_from_json(j.at("noise"));
    }
    if (j.contains("rho_B")) {
        cfg.rho_b = validate_density(matrix_from_json(j.at("rho_B")));
    } else if (j.contains("state")) {
        StateVector psi = vector_from_json(j.at("state"));
        double n = psi.norm();
        if (!(n > 0.0) || !std::isfinite(n)) {
            throw ValidationError("state vector must be non-zero");
        }
        cfg.rho_b = DensityMatrix::from_pure(psi / n);
    } else {
        throw ValidationError("simulation config needs 'state' or 'rho_B'");
    }
    if (cfg.rho_b.dim() != cfg.d) {
        throw ValidationError("system state dimension does not match d");
    }
    if (j.contains("measurement")) {
        const auto &m = j.at("measurement");
        if (m.is_object() && m.contains("waveplates")) {
            const auto &w = m.at("waveplates");
            Measurement two = waveplates_to_measurement(number_at(w, "q"), number_at(w, "h"));
            cfg.measurement = cfg.d == 2 ? two : two.with_zero_outcome(1);
        } else if (m.is_array()) {
            std::vector<ComplexMatrix> elements;
            for (const auto &e : m) {
                elements.push_back(matrix_from_json(e));
            }
            cfg.measurement = Measurement(std::move(elements), kRoundedTolerance);
        } else {
            throw ValidationError("measurement must be a list of matrices or {\"waveplates\": ...}");
        }
    }
    return cfg;
}

nlohmann::json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception &e) {
        throw ValidationError("invalid JSON in " + path + ": " + e.what());
    }
}

}  // namespace ugame
