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

#include "ugame/mesh.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>

#include "json.hpp"

namespace ugame {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double phi) {
    double w = std::fmod(phi, 2.0 * kPi);
    if (w < 0.0) {
        w += 2.0 * kPi;
    }
    if (w >= 2.0 * kPi) {
        w = 0.0;
    }
    return w;
}

double radians(double deg) {
    return deg * kPi / 180.0;
}

void require_angle_deg(double deg, const char *what) {
    if (!(deg > -90.0 && deg <= 90.0)) {
        throw ValidationError(std::string(what) + ": angle " + std::to_string(deg) + " deg outside (-90, 90]");
    }
}

double round_significant(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
    return std::strtod(buf, nullptr);
}

void validate_layer(const BeamSplitterOp &op, int d) {
    if (op.mode_m < 0 || op.mode_n >= d || op.mode_n != op.mode_m + 1) {
        throw ValidationError("mesh layer on modes (" + std::to_string(op.mode_m) + ", " + std::to_string(op.mode_n) +
                              ") is not an adjacent pair inside d = " + std::to_string(d));
    }
    if (!std::isfinite(op.theta) || !std::isfinite(op.phi)) {
        throw ValidationError("mesh layer has non-finite angles");
    }
}

}  // namespace

ComplexMatrix beam_splitter_matrix(int d, int m, int n, double theta, double phi) {
    validate_layer({m, n, theta, phi, LayerOrientation::kT}, d);
    ComplexMatrix t = ComplexMatrix::Identity(d, d);
    Complex e = std::polar(1.0, phi);
    t(m, m) = e * std::cos(theta);
    t(m, n) = -std::sin(theta);
    t(n, m) = e * std::sin(theta);
    t(n, n) = std::cos(theta);
    return t;
}

ComplexMatrix BeamSplitterOp::embedded(int d) const {
    return beam_splitter_matrix(d, mode_m, mode_n, theta, phi);
}

MeshPlan clements_decompose(const ComplexMatrix &u) {
    require_square(u, "clements_decompose");
    const int n = static_cast<int>(u.rows());
    if (n > 8) {
        throw ValidationError("clements_decompose: dimension " + std::to_string(n) + " exceeds 8");
    }
    if (!is_unitary(u, tol::kStructural)) {
        throw ValidationError("clements_decompose: matrix is not unitary");
    }
    ComplexMatrix work = u;
    std::vector<BeamSplitterOp> right;  // split off as work * T^dag
    std::vector<BeamSplitterOp> left;   // applied as T * work
    for (int i = 1; i < n; i++) {
        if (i % 2 == 1) {
            for (int j = 0; j < i; j++) {
                int row = n - 1 - j, m = i - 1 - j, k = i - j;
                Complex a = work(row, m), b = work(row, k);
                double theta = std::atan2(std::abs(a), std::abs(b));
                double phi = wrap_phase(std::arg(a) - std::arg(b));
                work = work * beam_splitter_matrix(n, m, k, theta, phi).adjoint();
                work(row, m) = 0.0;
                right.push_back({m, k, theta, phi, LayerOrientation::kT});
            }
        } else {
            for (int j = 1; j <= i; j++) {
                int row = n + j - i - 1, col = j - 1, m = row - 1;
                Complex a = work(m, col), b = work(row, col);
                double theta = std::atan2(std::abs(b), std::abs(a));
                double phi = wrap_phase(kPi + std::arg(b) - std::arg(a));
                work = beam_splitter_matrix(n, m, row, theta, phi) * work;
                work(row, col) = 0.0;
                left.push_back({m, row, theta, phi, LayerOrientation::kA});
            }
        }
    }
    // work is now diagonal: left_k ... left_1 U right_1^dag ... right_j^dag = D.
    std::vector<double> phases(static_cast<std::size_t>(n));
    for (int k = 0; k < n; k++) {
        phases[static_cast<std::size_t>(k)] = std::arg(work(k, k));
    }
    // T^dag(theta, phi) D = D' A(theta, phi') on modes (m, n):
    //   phi' = alpha - beta + pi, D'_m = beta - phi + pi, D'_n = beta.
    std::vector<BeamSplitterOp> a_forms(left.size());
    for (std::size_t idx = left.size(); idx-- > 0;) {
        const BeamSplitterOp &t = left[idx];
        double alpha = phases[static_cast<std::size_t>(t.mode_m)];
        double beta = phases[static_cast<std::size_t>(t.mode_n)];
        a_forms[idx] = {t.mode_m, t.mode_n, t.theta, wrap_phase(alpha - beta + kPi), LayerOrientation::kA};
        phases[static_cast<std::size_t>(t.mode_m)] = beta - t.phi + kPi;
    }
    MeshPlan plan;
    plan.d = n;
    plan.layers = std::move(a_forms);
    for (auto it = right.rbegin(); it != right.rend(); ++it) {
        plan.layers.push_back(*it);
    }
    for (double p : phases) {
        plan.output_phases.push_back(wrap_phase(p));
    }
    return plan;
}

ComplexMatrix mesh_reconstruct(const MeshPlan &plan) {
    if (plan.d <= 0 || plan.output_phases.size() != static_cast<std::size_t>(plan.d)) {
        throw ValidationError("mesh_reconstruct: plan needs d > 0 and exactly d output phases");
    }
    ComplexMatrix u = ComplexMatrix::Identity(plan.d, plan.d);
    for (int k = 0; k < plan.d; k++) {
        u(k, k) = std::polar(1.0, plan.output_phases[static_cast<std::size_t>(k)]);
    }
    for (const BeamSplitterOp &op : plan.layers) {
        u = u * op.embedded(plan.d);
    }
    return u;
}

MeshPlan fourier3_reference_plan() {
    const double mix12 = std::acos(1.0 / std::sqrt(3.0));
    MeshPlan plan;
    plan.d = 3;
    plan.layers = {
        {0, 1, kPi / 4.0, wrap_phase(-5.0 * kPi / 6.0), LayerOrientation::kA},
        {1, 2, mix12, 2.0 * kPi / 3.0, LayerOrientation::kA},
        {0, 1, kPi / 4.0, 2.0 * kPi / 3.0, LayerOrientation::kT},
    };
    plan.output_phases = {0.0, kPi / 3.0, 2.0 * kPi / 3.0};
    return plan;
}

double hwp_angle_for(double theta_rad) {
    if (!(theta_rad >= 0.0 && theta_rad <= kPi / 2.0)) {
        throw ValidationError("hwp_angle_for: theta must lie in [0, pi/2]");
    }
    return 45.0 - theta_rad * 90.0 / kPi;
}

std::vector<WaveplateSetting> waveplates_for(const MeshPlan &plan, std::span<const std::string> labels) {
    if (!labels.empty() && labels.size() != plan.layers.size()) {
        throw ValidationError("waveplates_for: need one label per layer");
    }
    std::vector<WaveplateSetting> out;
    std::size_t k = 0;
    for (auto it = plan.layers.rbegin(); it != plan.layers.rend(); ++it, ++k) {
        std::string label = labels.empty() ? "HWP" + std::to_string(k) : labels[k];
        out.push_back({std::move(label), hwp_angle_for(it->theta)});
    }
    return out;
}

StateVector prep_state_d2(double theta1_deg) {
    require_angle_deg(theta1_deg, "prep_state_d2");
    double t = 2.0 * radians(theta1_deg);
    StateVector psi(2);
    psi << std::cos(t), -std::sin(t);
    return psi;
}

StateVector prep_state_d3(double theta1_deg, double theta2_deg, const PrepPhases &phases) {
    require_angle_deg(theta1_deg, "prep_state_d3");
    require_angle_deg(theta2_deg, "prep_state_d3");
    double t1 = 2.0 * radians(theta1_deg), t2 = 2.0 * radians(theta2_deg);
    StateVector psi(3);
    psi << std::polar(std::cos(t1) * std::cos(t2), phases.mode0),
        -std::polar(std::cos(t1) * std::sin(t2), phases.mode1), std::sin(t1);
    return psi;
}

Measurement waveplates_to_measurement(double theta_q_deg, double theta_h_deg) {
    require_angle_deg(theta_q_deg, "waveplates_to_measurement");
    require_angle_deg(theta_h_deg, "waveplates_to_measurement");
    const Complex i(0.0, 1.0);
    double a = radians(theta_q_deg);
    double b = radians(theta_q_deg - 2.0 * theta_h_deg);
    double sa = std::sin(a), ca = std::cos(a), sb = std::sin(b), cb = std::cos(b);
    StateVector m0(2), m1(2);
    m0 << sa * cb + i * ca * sb, ca * cb - i * sa * sb;
    m1 << i * ca * cb - sa * sb, -(ca * sb + i * sa * cb);
    return Measurement({projector(m0), projector(m1)});
}

StateVector fourier_probe_state(int j, int d) {
    if (d <= 0 || j < 0 || j >= d) {
        throw ValidationError("fourier_probe_state: need 0 <= j < d");
    }
    StateVector w(d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int k = 0; k < d; k++) {
        w[k] = std::polar(norm, -2.0 * kPi * static_cast<double>((j * k) % d) / d);
    }
    return w;
}

std::string plan_to_json(const MeshPlan &plan, const std::vector<WaveplateSetting> &waveplates) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["d"] = plan.d;
    doc["convention"] =
        "U = diag(exp(i*output_phases_rad)) * layers[0] * ... * layers[k-1]; "
        "layer on (m,n) = [[exp(i*phi)*cos(theta), -sin(theta)], [exp(i*phi)*sin(theta), cos(theta)]]";
    ordered_json layers = ordered_json::array();
    for (const BeamSplitterOp &op : plan.layers) {
        layers.push_back({{"m", op.mode_m},
                          {"n", op.mode_n},
                          {"theta_rad", round_significant(op.theta, 12)},
                          {"phi_rad", round_significant(op.phi, 12)},
                          {"orientation", op.orientation == LayerOrientation::kT ? "T" : "A"}});
    }
    doc["layers"] = std::move(layers);
    ordered_json phases = ordered_json::array();
    for (double p : plan.output_phases) {
        phases.push_back(round_significant(p, 12));
    }
    doc["output_phases_rad"] = std::move(phases);
    ordered_json plates = ordered_json::array();
    for (const WaveplateSetting &w : waveplates) {
        plates.push_back({{"label", w.label}, {"deg", round_significant(w.deg, 12)}});
    }
    doc["waveplates"] = std::move(plates);
    return doc.dump(2);
}

}  // namespace ugame
