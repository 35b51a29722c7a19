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

#ifndef UGAME_MESH_H
#define UGAME_MESH_H

#include <span>
#include <string>
#include <vector>

#include "ugame/core_math.h"
#include "ugame/game.h"

namespace ugame {

/// Where a layer came from during decomposition. Both forms share the same
/// matrix shape; the tag records whether the layer was split off on the right
/// of the target (T) or obtained by commuting a left-applied inverse through
/// the output phases (A).
enum class LayerOrientation { kT, kA };

/// Variable beam splitter on adjacent modes m < n. Restricted to the two modes
/// it is
///
///   [ e^{i phi} cos(theta)   -sin(theta) ]
///   [ e^{i phi} sin(theta)    cos(theta) ]
///
/// with theta in [0, pi/2] and phi in [0, 2 pi).
struct BeamSplitterOp {
    int mode_m = 0;
    int mode_n = 1;
    double theta = 0.0;
    double phi = 0.0;
    LayerOrientation orientation = LayerOrientation::kT;

    ComplexMatrix embedded(int d) const;
};

/// Compiled circuit. The realized unitary is
///
///   diag(exp(i output_phases)) * layers[0] * layers[1] * ... * layers[k-1],
///
/// so light traverses the layers from the back of the list to the front.
struct MeshPlan {
    int d = 0;
    std::vector<BeamSplitterOp> layers;
    std::vector<double> output_phases;
};

struct WaveplateSetting {
    std::string label;
    double deg;
};

ComplexMatrix beam_splitter_matrix(int d, int m, int n, double theta, double phi);

/// Rectangular nulling decomposition into d(d-1)/2 beam splitters followed by
/// output phases.
MeshPlan clements_decompose(const ComplexMatrix &u);

ComplexMatrix mesh_reconstruct(const MeshPlan &plan);

/// Reference three-mode Fourier circuit D' A01 A12 T01. The 1-2 mixing
/// angle is acos(1/sqrt(3)) (54.7356 degrees).
MeshPlan fourier3_reference_plan();

/// Half-wave-plate orientation realizing mixing angle theta: 45 - theta * 90 / pi.
double hwp_angle_for(double theta_rad);

/// One half-wave-plate setting per layer, in light-propagation order. Labels
/// default to "HWP0", "HWP1", ...
std::vector<WaveplateSetting> waveplates_for(const MeshPlan &plan, std::span<const std::string> labels = {});

/// Calibrated path phases (radians) of the three-mode probe-state preparation.
struct PrepPhases {
    double mode0 = 1.41;
    double mode1 = 1.66;
};

/// cos(2 theta1) |0> - sin(2 theta1) |1>, angle in degrees.
StateVector prep_state_d2(double theta1_deg);

/// e^{i p0} cos2t1 cos2t2 |0> - e^{i p1} cos2t1 sin2t2 |1> + sin2t1 |2>.
StateVector prep_state_d3(double theta1_deg, double theta2_deg, const PrepPhases &phases = {});

/// Projective register measurement set by a quarter-wave plate at theta_q and
/// a half-wave plate at theta_h (degrees).
Measurement waveplates_to_measurement(double theta_q_deg, double theta_h_deg);

/// |w_j> = sum_k w^{-jk} |k> / sqrt(d), so fourier_matrix(d) |w_j> = |j>.
StateVector fourier_probe_state(int j, int d);

/// JSON export of a plan; angles carry 12 significant digits.
std::string plan_to_json(const MeshPlan &plan, const std::vector<WaveplateSetting> &waveplates);

}  // namespace ugame

#endif
