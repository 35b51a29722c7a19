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

#ifndef UGAME_PIPELINE_H
#define UGAME_PIPELINE_H

#include <array>
#include <span>

#include "ugame/core_math.h"
#include "ugame/game.h"
#include "ugame/mesh.h"
#include "ugame/noise.h"

namespace ugame {

/// Detection probabilities P(i, j): Bob guesses i while Alice obtained j.
struct DetectionTable {
    RealMatrix probs;
    /// Sum of the diagonal (rows with a zero measurement element contribute 0).
    double p_guess = 0.0;
};

struct PauliExpectations {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct GammaEstimate {
    double gamma;
    double fidelity;
};

/// Per-layer visibilities of a three-layer mesh, in light-propagation order.
std::array<double, 3> light_order_visibilities(const InterferometerVisibilities &v);

/// D' * prod_layers (layer * K0(layer modes)): the operator carried by the
/// register coherence when each crossing is preceded by leakage noise.
/// `visibilities` lists one value per layer in light-propagation order.
ComplexMatrix noisy_mesh_coherence_operator(const MeshPlan &plan, std::span<const double> visibilities);

/// Full channel: each crossing's leakage channel followed by the crossing,
/// then the output phases.
ComplexMatrix noisy_mesh_channel(const MeshPlan &plan, std::span<const double> visibilities, const ComplexMatrix &rho);

/// Two-mode game with the Hadamard branch: conditional register states from
/// noise.register_state, then layer dephasing at noise.effective_layer_visibility().
DetectionTable simulate_d2(const NoiseModel &noise, const DensityMatrix &rho_b, const Measurement &m);

/// Three-mode game whose Fourier branch runs through `plan` with leakage noise
/// before every crossing, followed by layer dephasing.
DetectionTable simulate_d3(const NoiseModel &noise, const DensityMatrix &rho_b, const Measurement &m,
                           const MeshPlan &plan = fourier3_reference_plan());

/// Column j: output-mode distribution for probe |w_j> through the noisy mesh.
RealMatrix simulate_fourier_test(double v);
RealMatrix simulate_fourier_test(const InterferometerVisibilities &v, const MeshPlan &plan = fourier3_reference_plan());

/// Grid search for the register coherence whose ideal state is closest in
/// fidelity; ties resolve to the smaller gamma.
GammaEstimate estimate_gamma(const DensityMatrix &rho_exp, double step = 1e-4);

/// (I + x X + y Y + z Z) / 2. Bloch vectors longer than 1 by at most 1e-9 are
/// scaled back onto the sphere; longer ones are rejected.
DensityMatrix reconstruct_from_pauli(const PauliExpectations &p);

}  // namespace ugame

#endif
