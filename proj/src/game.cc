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

#include "ugame/game.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ugame {

void GameConfig::validate() const {
    if (d < 2) {
        throw ValidationError("game dimension d must be >= 2, got " + std::to_string(d));
    }
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ValidationError("gamma must lie in [0, 1], got " + std::to_string(gamma));
    }
}

Measurement::Measurement(std::vector<ComplexMatrix> elements) : Measurement(std::move(elements), tol::kStructural) {
}

Measurement::Measurement(std::vector<ComplexMatrix> elements, double tolerance) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw ValidationError("measurement has no elements");
    }
    const Eigen::Index n = elements_.front().rows();
    ComplexMatrix sum = ComplexMatrix::Zero(n, n);
    bool projective = true;
    double completeness_tol = std::max(tolerance, tol::kRoundTrip);
    for (std::size_t x = 0; x < elements_.size(); x++) {
        const ComplexMatrix &e = elements_[x];
        require_square(e, "measurement element");
        if (e.rows() != n) {
            throw ValidationError("measurement elements have mismatched dimensions");
        }
        EigenSystem es = hermitian_eigensystem(0.5 * (e + e.adjoint()));
        if (!is_hermitian(e, tolerance) || es.values[0] < -tolerance) {
            throw ValidationError("measurement element " + std::to_string(x) + " is not PSD");
        }
        if (max_abs_diff(e * e, e) > completeness_tol) {
            projective = false;
        }
        sum += e;
    }
    if (max_abs_diff(sum, ComplexMatrix::Identity(n, n)) > completeness_tol) {
        throw ValidationError("measurement elements do not sum to the identity");
    }
    kind_ = projective ? MeasurementKind::kProjective : MeasurementKind::kGeneral;
}

Measurement Measurement::with_zero_outcome(std::size_t position) const {
    if (position > elements_.size()) {
        throw ValidationError("with_zero_outcome: position out of range");
    }
    std::vector<ComplexMatrix> out = elements_;
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(position), ComplexMatrix::Zero(dim(), dim()));
    Measurement m = *this;
    m.elements_ = std::move(out);
    return m;
}

PostMeasurementEnsemble::PostMeasurementEnsemble(std::vector<ComplexMatrix> states) : states_(std::move(states)) {
    if (states_.empty()) {
        throw ValidationError("ensemble has no states");
    }
    double total = 0.0;
    for (std::size_t x = 0; x < states_.size(); x++) {
        const ComplexMatrix &s = states_[x];
        if (s.rows() != 2 || s.cols() != 2 || !all_finite(s)) {
            throw ValidationError("ensemble state " + std::to_string(x) + " is not a finite 2x2 matrix");
        }
        if (!is_hermitian(s, tol::kStructural)) {
            throw ValidationError("ensemble state " + std::to_string(x) + " is not Hermitian");
        }
        if (hermitian_eigensystem(s).values[0] < -tol::kStructural) {
            throw ValidationError("ensemble state " + std::to_string(x) + " is not PSD");
        }
        double p = s.trace().real();
        if (p < -tol::kClamp || p > 1.0 + tol::kClamp) {
            throw ValidationError("ensemble outcome probability out of range");
        }
        probs_.push_back(std::clamp(p, 0.0, 1.0));
        total += p;
    }
    if (std::abs(total - 1.0) > tol::kRoundTrip) {
        throw ValidationError("ensemble outcome probabilities sum to " + std::to_string(total));
    }
}

ComplexMatrix PostMeasurementEnsemble::normalized(std::size_t x) const {
    if (x >= states_.size()) {
        throw ValidationError("normalized: outcome index out of range");
    }
    if (probs_[x] <= 0.0) {
        throw ValidationError("normalized: outcome " + std::to_string(x) + " has zero probability");
    }
    return states_[x] / probs_[x];
}

ComplexMatrix fourier_matrix(int d) {
    if (d <= 0) {
        throw ValidationError("fourier_matrix: dimension must be positive");
    }
    ComplexMatrix u(d, d);
    const double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; j++) {
        for (int k = 0; k < d; k++) {
            // Reduce jk mod d first so large exponents keep full accuracy.
            double angle = 2.0 * std::numbers::pi * static_cast<double>((j * k) % d) / d;
            u(j, k) = std::polar(norm, angle);
        }
    }
    return u;
}

DensityMatrix register_state(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ValidationError("register_state: gamma must lie in [0, 1], got " + std::to_string(gamma));
    }
    ComplexMatrix m(2, 2);
    m << 0.5, 0.5 * gamma, 0.5 * gamma, 0.5;
    return validate_density(m);
}

std::vector<ComplexMatrix> conditional_register_blocks(
    const ComplexMatrix &rho_b, const ComplexMatrix &reg, const ComplexMatrix &coherence_op,
    const ComplexMatrix &lower_output) {
    const Eigen::Index d = rho_b.rows();
    ComplexMatrix upper_right = rho_b * coherence_op.adjoint();
    ComplexMatrix lower_left = coherence_op * rho_b;
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index x = 0; x < d; x++) {
        ComplexMatrix s(2, 2);
        s(0, 0) = reg(0, 0) * rho_b(x, x);
        s(0, 1) = reg(0, 1) * upper_right(x, x);
        s(1, 0) = reg(1, 0) * lower_left(x, x);
        s(1, 1) = reg(1, 1) * lower_output(x, x);
        out.push_back(std::move(s));
    }
    return out;
}

PostMeasurementEnsemble post_measurement_ensemble(const DensityMatrix &rho_b, const DensityMatrix &reg) {
    if (reg.dim() != 2) {
        throw ValidationError("post_measurement_ensemble: register must be 2-dimensional");
    }
    const int d = static_cast<int>(rho_b.dim());
    ComplexMatrix f = fourier_matrix(d);
    ComplexMatrix lower = f * rho_b.matrix() * f.adjoint();
    return PostMeasurementEnsemble(conditional_register_blocks(rho_b.matrix(), reg.matrix(), f, lower));
}

PostMeasurementEnsemble post_measurement_ensemble(const GameConfig &config, const DensityMatrix &rho_b,
                                                  const DensityMatrix &reg) {
    config.validate();
    if (rho_b.dim() != config.d) {
        throw ValidationError("post_measurement_ensemble: rho_B has dimension " + std::to_string(rho_b.dim()) +
                              " but the game has d = " + std::to_string(config.d));
    }
    return post_measurement_ensemble(rho_b, reg);
}

PostMeasurementEnsemble post_measurement_ensemble(const GameConfig &config, const DensityMatrix &rho_b) {
    config.validate();
    return post_measurement_ensemble(config, rho_b, register_state(config.gamma));
}

double guessing_probability(const PostMeasurementEnsemble &ensemble, const Measurement &m) {
    if (m.size() != ensemble.size()) {
        throw ValidationError("guessing_probability: measurement has " + std::to_string(m.size()) +
                              " elements for " + std::to_string(ensemble.size()) + " outcomes");
    }
    if (m.dim() != 2) {
        throw ValidationError("guessing_probability: measurement must act on the 2-dimensional register");
    }
    double p = 0.0;
    for (std::size_t x = 0; x < m.size(); x++) {
        p += (m[x] * ensemble.states()[x]).trace().real();
    }
    return p;
}

double pguess_max_d2(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw ValidationError("pguess_max_d2: gamma must lie in [0, 1], got " + std::to_string(gamma));
    }
    return 0.5 * (1.0 + std::sqrt(2.0 + 2.0 * gamma * gamma) / 2.0);
}

double maassen_uffink_bound(const ComplexMatrix &basis_s, const ComplexMatrix &basis_t) {
    if (!is_unitary(basis_s, tol::kStructural) || !is_unitary(basis_t, tol::kStructural)) {
        throw ValidationError("maassen_uffink_bound: bases must be unitary");
    }
    if (basis_s.rows() != basis_t.rows()) {
        throw ValidationError("maassen_uffink_bound: basis dimensions differ");
    }
    double c = (basis_s.adjoint() * basis_t).cwiseAbs2().maxCoeff();
    return std::max(0.0, -std::log2(c));
}

namespace {

ProbabilityDistribution born_distribution(const DensityMatrix &rho, const ComplexMatrix &basis) {
    std::vector<double> probs;
    probs.reserve(static_cast<std::size_t>(basis.cols()));
    for (Eigen::Index i = 0; i < basis.cols(); i++) {
        probs.push_back(basis.col(i).dot(rho.matrix() * basis.col(i)).real());
    }
    return ProbabilityDistribution(std::move(probs));
}

}  // namespace

double entropic_sum(const DensityMatrix &rho_b, const ComplexMatrix &basis_s, const ComplexMatrix &basis_t) {
    if (!is_unitary(basis_s, tol::kStructural) || !is_unitary(basis_t, tol::kStructural)) {
        throw ValidationError("entropic_sum: bases must be unitary");
    }
    if (basis_s.rows() != rho_b.dim() || basis_t.rows() != rho_b.dim()) {
        throw ValidationError("entropic_sum: basis and state dimensions differ");
    }
    return shannon_entropy(born_distribution(rho_b, basis_s)) + shannon_entropy(born_distribution(rho_b, basis_t));
}

GapRatio gap_ratio(double p_best_known, double p_exp) {
    if (!(p_exp >= 0.0 && p_exp <= p_best_known && p_best_known <= 1.0 && p_exp < 1.0)) {
        throw ValidationError("gap_ratio: need 0 <= p_exp <= p_best_known <= 1 and p_exp < 1");
    }
    double gap = p_best_known - p_exp;
    return {gap, gap / (1.0 - p_exp)};
}

}  // namespace ugame
