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

#ifndef UGAME_NOISE_H
#define UGAME_NOISE_H

#include <optional>
#include <vector>

#include "ugame/core_math.h"

namespace ugame {

/// Trace-preserving channel in Kraus form.
class KrausChannel {
   public:
    /// Requires sum_i K_i^dag K_i == I within 1e-10.
    explicit KrausChannel(std::vector<ComplexMatrix> operators);

    Eigen::Index dim() const {
        return operators_.front().rows();
    }
    const std::vector<ComplexMatrix> &operators() const {
        return operators_;
    }
    /// max |sum_i K_i^dag K_i - I|.
    double completeness_error() const;

    /// sum_i K_i rho K_i^dag on any square matrix of the right size,
    /// including sub-normalized or non-Hermitian inputs.
    ComplexMatrix apply(const ComplexMatrix &rho) const;

   private:
    std::vector<ComplexMatrix> operators_;
};

KrausChannel unitary_channel(const ComplexMatrix &u);

DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &channel);

/// ((1+v)/2) rho + ((1-v)/2) Z rho Z on a 2x2 matrix: off-diagonals scale by v.
ComplexMatrix layer_dephasing(const ComplexMatrix &rho, double v);

/// Kraus form {sqrt((1+v)/2) I, sqrt((1-v)/2) Z} of layer_dephasing.
KrausChannel layer_dephasing_channel(double v);

/// Imperfect interference between adjacent or non-adjacent modes m < n of a
/// d-mode system, modelled by a fictitious leakage mode:
///   K0 = sqrt(v)(|m><m| + |n><n|) + sum_{k != m,n} |k><k|
///   K1 = sqrt(1-v)|m><m|,  K2 = sqrt(1-v)|n><n|.
/// Coherence between m and n scales by v and coherence with any other mode by
/// sqrt(v).
KrausChannel visibility_channel(int m, int n, double v, int d);

/// The same leakage acting only on the register-1 branch of the joint space
/// R (x) B, ordered with the register index slow:
///   N0 = |0><0| (x) I + |1><1| (x) K0,  N1 = |1><1| (x) K1,  N2 = |1><1| (x) K2.
KrausChannel controlled_visibility_channel(int m, int n, double v, int d);

/// Visibilities of the three interferometers of the three-mode Fourier mesh in
/// light-propagation order: the 0-1 crossing before T01, the 1-2 crossing and
/// the second 0-1 crossing.
struct InterferometerVisibilities {
    double c01a = 1.0;
    double t12 = 1.0;
    double c01b = 1.0;

    static InterferometerVisibilities uniform(double v) {
        return {v, v, v};
    }
};

/// Noise parameters for the end-to-end experiment models.
struct NoiseModel {
    /// Interferometer visibility used for every mesh crossing.
    double visibility_v = 1.0;
    /// Dephasing between the register layers; follows visibility_v when unset.
    std::optional<double> layer_visibility;
    /// Per-crossing overrides of visibility_v.
    std::optional<InterferometerVisibilities> per_interferometer;
    /// Register state actually prepared.
    DensityMatrix register_state = DensityMatrix::maximally_mixed(2);

    double effective_layer_visibility() const {
        return layer_visibility.value_or(visibility_v);
    }
    InterferometerVisibilities effective_interferometers() const {
        return per_interferometer.value_or(InterferometerVisibilities::uniform(visibility_v));
    }
    void validate() const;
};

}  // namespace ugame

#endif
