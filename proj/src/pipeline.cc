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

#include "ugame/pipeline.h"

#include <cmath>
#include <string>

namespace ugame {

namespace {

DetectionTable tabulate(const std::vector<ComplexMatrix> &states, const Measurement &m) {
    if (m.size() != states.size()) {
        throw ValidationError("measurement has " + std::to_string(m.size()) + " elements for " +
                              std::to_string(states.size()) + " outcomes");
    }
    if (m.dim() != 2) {
        throw ValidationError("measurement must act on the 2-dimensional register");
    }
    const auto n = static_cast<Eigen::Index>(states.size());
    DetectionTable table{RealMatrix::Zero(n, n), 0.0};
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            double p = (m[static_cast<std::size_t>(i)] * states[static_cast<std::size_t>(j)]).trace().real();
            table.probs(i, j) = std::abs(p) <= tol::kClamp ? 0.0 : p;
        }
    }
    table.p_guess = table.probs.trace();
    return table;
}

void require_mesh_visibilities(const MeshPlan &plan, std::span<const double> visibilities) {
    if (visibilities.size() != plan.layers.size()) {
        throw ValidationError("need one visibility per mesh layer");
    }
}

}  // namespace

std::array<double, 3> light_order_visibilities(const InterferometerVisibilities &v) {
    return {v.c01a, v.t12, v.c01b};
}

ComplexMatrix noisy_mesh_coherence_operator(const MeshPlan &plan, std::span<const double> visibilities) {
    require_mesh_visibilities(plan, visibilities);
    ComplexMatrix op = mesh_reconstruct(MeshPlan{plan.d, {}, plan.output_phases});
    const std::size_t k = plan.layers.size();
    for (std::size_t idx = 0; idx < k; idx++) {
        const BeamSplitterOp &layer = plan.layers[idx];
        double v = visibilities[k - 1 - idx];
        KrausChannel leak = visibility_channel(layer.mode_m, layer.mode_n, v, plan.d);
        op = op * layer.embedded(plan.d) * leak.operators()[0];
    }
    return op;
}

ComplexMatrix noisy_mesh_channel(const MeshPlan &plan, std::span<const double> visibilities, const ComplexMatrix &rho) {
    require_mesh_visibilities(plan, visibilities);
    ComplexMatrix out = rho;
    const std::size_t k = plan.layers.size();
    for (std::size_t step = 0; step < k; step++) {
        const BeamSplitterOp &layer = plan.layers[k - 1 - step];
        out = visibility_channel(layer.mode_m, layer.mode_n, visibilities[step], plan.d).apply(out);
        ComplexMatrix u = layer.embedded(plan.d);
        out = u * out * u.adjoint();
    }
    ComplexMatrix phases = mesh_reconstruct(MeshPlan{plan.d, {}, plan.output_phases});
    return phases * out * phases.adjoint();
}

DetectionTable simulate_d2(const NoiseModel &noise, const DensityMatrix &rho_b, const Measurement &m) {
    noise.validate();
    if (rho_b.dim() != 2) {
        throw ValidationError("simulate_d2: rho_B must be 2-dimensional");
    }
    ComplexMatrix h = fourier_matrix(2);
    std::vector<ComplexMatrix> states = conditional_register_blocks(
        rho_b.matrix(), noise.register_state.matrix(), h, h * rho_b.matrix() * h.adjoint());
    for (ComplexMatrix &s : states) {
        s = layer_dephasing(s, noise.effective_layer_visibility());
    }
    return tabulate(states, m);
}

DetectionTable simulate_d3(const NoiseModel &noise, const DensityMatrix &rho_b, const Measurement &m,
                           const MeshPlan &plan) {
    noise.validate();
    if (rho_b.dim() != 3 || plan.d != 3) {
        throw ValidationError("simulate_d3: rho_B and the mesh must be 3-dimensional");
    }
    if (plan.layers.size() != 3) {
        throw ValidationError("simulate_d3: the Fourier mesh must have 3 layers");
    }
    std::array<double, 3> vis = light_order_visibilities(noise.effective_interferometers());
    ComplexMatrix coherence = noisy_mesh_coherence_operator(plan, vis);
    ComplexMatrix lower = noisy_mesh_channel(plan, vis, rho_b.matrix());
    std::vector<ComplexMatrix> states =
        conditional_register_blocks(rho_b.matrix(), noise.register_state.matrix(), coherence, lower);
    for (ComplexMatrix &s : states) {
        s = layer_dephasing(s, noise.effective_layer_visibility());
    }
    return tabulate(states, m);
}

RealMatrix simulate_fourier_test(double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError("simulate_fourier_test: visibility must lie in [0, 1]");
    }
    return simulate_fourier_test(InterferometerVisibilities::uniform(v));
}

RealMatrix simulate_fourier_test(const InterferometerVisibilities &v, const MeshPlan &plan) {
    std::array<double, 3> vis = light_order_visibilities(v);
    for (double x : vis) {
        if (!(x >= 0.0 && x <= 1.0)) {
            throw ValidationError("simulate_fourier_test: visibility must lie in [0, 1]");
        }
    }
    RealMatrix p(plan.d, plan.d);
    for (int j = 0; j < plan.d; j++) {
        StateVector probe = fourier_probe_state(j, plan.d);
        ComplexMatrix out = noisy_mesh_channel(plan, vis, projector(probe));
        for (int i = 0; i < plan.d; i++) {
            p(i, j) = out(i, i).real();
        }
    }
    return p;
}

GammaEstimate estimate_gamma(const DensityMatrix &rho_exp, double step) {
    if (rho_exp.dim() != 2) {
        throw ValidationError("estimate_gamma: expected a 2x2 register state");
    }
    if (!(step > 0.0 && step <= 1.0)) {
        throw ValidationError("estimate_gamma: step must lie in (0, 1]");
    }
    const long count = std::lround(1.0 / step);
    GammaEstimate best{0.0, -1.0};
    for (long k = 0; k <= count; k++) {
        double gamma = std::min(1.0, static_cast<double>(k) * step);
        double f = fidelity(rho_exp, register_state(gamma));
        if (f > best.fidelity) {
            best = {gamma, f};
        }
    }
    return best;
}

DensityMatrix reconstruct_from_pauli(const PauliExpectations &p) {
    double norm = std::sqrt(p.x * p.x + p.y * p.y + p.z * p.z);
    if (!std::isfinite(norm) || norm > 1.0 + tol::kRoundTrip) {
        throw ValidationError("reconstruct_from_pauli: Bloch vector norm " + std::to_string(norm) + " exceeds 1");
    }
    double scale = norm > 1.0 ? 1.0 / norm : 1.0;
    ComplexMatrix m = ComplexMatrix::Identity(2, 2);
    m += scale * (p.x * pauli_x() + p.y * pauli_y() + p.z * pauli_z());
    return validate_density(0.5 * m);
}

}  // namespace ugame
