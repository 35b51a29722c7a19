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

#include "ugame/noise.h"

#include <cmath>
#include <string>

namespace ugame {

namespace {

void require_visibility(double v, const char *what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw ValidationError(std::string(what) + ": visibility must lie in [0, 1], got " + std::to_string(v));
    }
}

void require_modes(int m, int n, int d, const char *what) {
    if (!(0 <= m && m < n && n < d)) {
        throw ValidationError(std::string(what) + ": need 0 <= m < n < d, got m=" + std::to_string(m) +
                              " n=" + std::to_string(n) + " d=" + std::to_string(d));
    }
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators) : operators_(std::move(operators)) {
    if (operators_.empty()) {
        throw ValidationError("Kraus channel needs at least one operator");
    }
    const Eigen::Index d = operators_.front().rows();
    for (const ComplexMatrix &k : operators_) {
        require_square(k, "Kraus operator");
        if (k.rows() != d) {
            throw ValidationError("Kraus operators have mismatched dimensions");
        }
    }
    if (completeness_error() > tol::kStructural) {
        throw ValidationError("Kraus operators are not trace preserving (error " +
                              std::to_string(completeness_error()) + ")");
    }
}

double KrausChannel::completeness_error() const {
    const Eigen::Index d = dim();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (const ComplexMatrix &k : operators_) {
        sum += k.adjoint() * k;
    }
    return max_abs_diff(sum, ComplexMatrix::Identity(d, d));
}

ComplexMatrix KrausChannel::apply(const ComplexMatrix &rho) const {
    if (rho.rows() != dim() || rho.cols() != dim()) {
        throw ValidationError("Kraus channel of dimension " + std::to_string(dim()) + " applied to a " +
                              std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()) + " matrix");
    }
    ComplexMatrix out = ComplexMatrix::Zero(dim(), dim());
    for (const ComplexMatrix &k : operators_) {
        out += k * rho * k.adjoint();
    }
    return out;
}

KrausChannel unitary_channel(const ComplexMatrix &u) {
    if (!is_unitary(u, tol::kStructural)) {
        throw ValidationError("unitary_channel: matrix is not unitary");
    }
    return KrausChannel({u});
}

DensityMatrix apply_channel(const DensityMatrix &rho, const KrausChannel &channel) {
    if (rho.dim() != channel.dim()) {
        throw ValidationError("apply_channel: dimension mismatch");
    }
    return validate_density(channel.apply(rho.matrix()));
}

ComplexMatrix layer_dephasing(const ComplexMatrix &rho, double v) {
    require_visibility(v, "layer_dephasing");
    if (rho.rows() != 2 || rho.cols() != 2) {
        throw ValidationError("layer_dephasing: expected a 2x2 matrix");
    }
    ComplexMatrix out = rho;
    out(0, 1) *= v;
    out(1, 0) *= v;
    return out;
}

KrausChannel layer_dephasing_channel(double v) {
    require_visibility(v, "layer_dephasing_channel");
    return KrausChannel({std::sqrt((1.0 + v) / 2.0) * ComplexMatrix::Identity(2, 2),
                         std::sqrt((1.0 - v) / 2.0) * pauli_z()});
}

KrausChannel visibility_channel(int m, int n, double v, int d) {
    require_modes(m, n, d, "visibility_channel");
    require_visibility(v, "visibility_channel");
    ComplexMatrix k0 = ComplexMatrix::Identity(d, d);
    k0(m, m) = std::sqrt(v);
    k0(n, n) = std::sqrt(v);
    ComplexMatrix k1 = ComplexMatrix::Zero(d, d);
    k1(m, m) = std::sqrt(1.0 - v);
    ComplexMatrix k2 = ComplexMatrix::Zero(d, d);
    k2(n, n) = std::sqrt(1.0 - v);
    return KrausChannel({k0, k1, k2});
}

KrausChannel controlled_visibility_channel(int m, int n, double v, int d) {
    KrausChannel local = visibility_channel(m, n, v, d);
    const auto &k = local.operators();
    ComplexMatrix upper = ComplexMatrix::Zero(2, 2);
    upper(0, 0) = 1.0;
    ComplexMatrix lower = ComplexMatrix::Zero(2, 2);
    lower(1, 1) = 1.0;
    auto kron = [](const ComplexMatrix &a, const ComplexMatrix &b) {
        ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
        for (Eigen::Index i = 0; i < a.rows(); i++) {
            for (Eigen::Index j = 0; j < a.cols(); j++) {
                out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
            }
        }
        return out;
    };
    ComplexMatrix n0 = kron(upper, ComplexMatrix::Identity(d, d)) + kron(lower, k[0]);
    return KrausChannel({n0, kron(lower, k[1]), kron(lower, k[2])});
}

void NoiseModel::validate() const {
    require_visibility(visibility_v, "noise model v");
    require_visibility(effective_layer_visibility(), "noise model layer_v");
    InterferometerVisibilities iv = effective_interferometers();
    require_visibility(iv.c01a, "noise model C01a");
    require_visibility(iv.t12, "noise model T12");
    require_visibility(iv.c01b, "noise model C01b");
    if (register_state.dim() != 2) {
        throw ValidationError("noise model register state must be 2x2");
    }
}

}  // namespace ugame
