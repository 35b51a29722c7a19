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

#include "ugame/core_math.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace ugame {

namespace {

constexpr double kDegeneracyGap = 1e-9;

std::string describe(double x) {
    std::ostringstream out;
    out.precision(12);
    out << x;
    return out.str();
}

void require_dim_cap(const ComplexMatrix &m, std::string_view what) {
    if (m.rows() > kMaxDim) {
        throw ValidationError(std::string(what) + ": dimension " + std::to_string(m.rows()) +
                              " exceeds the dense cap of " + std::to_string(kMaxDim));
    }
}

// Replaces the columns of `vectors[:, first..first+count)` by an orthonormal
// basis of the same subspace obtained from the projected canonical vectors.
void canonicalize_cluster(ComplexMatrix &vectors, Eigen::Index first, Eigen::Index count) {
    const Eigen::Index n = vectors.rows();
    ComplexMatrix basis = vectors.middleCols(first, count);
    ComplexMatrix proj = basis * basis.adjoint();
    ComplexMatrix chosen(n, count);
    Eigen::Index found = 0;
    for (Eigen::Index k = 0; k < n && found < count; k++) {
        StateVector v = proj.col(k);
        for (Eigen::Index j = 0; j < found; j++) {
            v -= chosen.col(j).dot(v) * chosen.col(j);
        }
        double norm = v.norm();
        if (norm < 1e-6) {
            continue;
        }
        chosen.col(found++) = v / norm;
    }
    if (found == count) {
        vectors.middleCols(first, count) = chosen;
    }
}

}  // namespace

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ValidationError("max_abs_diff: shape mismatch");
    }
    if (a.size() == 0) {
        return 0.0;
    }
    return (a - b).cwiseAbs().maxCoeff();
}

bool all_finite(const ComplexMatrix &m) {
    for (Eigen::Index i = 0; i < m.size(); i++) {
        if (!std::isfinite(m.data()[i].real()) || !std::isfinite(m.data()[i].imag())) {
            return false;
        }
    }
    return true;
}

bool is_hermitian(const ComplexMatrix &m, double tolerance) {
    return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tolerance;
}

bool is_unitary(const ComplexMatrix &m, double tolerance) {
    if (m.rows() != m.cols() || !all_finite(m)) {
        return false;
    }
    ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
    return max_abs_diff(m.adjoint() * m, id) <= tolerance;
}

void require_square(const ComplexMatrix &m, std::string_view what) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw ValidationError(std::string(what) + ": expected a non-empty square matrix, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    if (!all_finite(m)) {
        throw ValidationError(std::string(what) + ": matrix has non-finite entries");
    }
}

ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}

ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, Complex(0, -1), Complex(0, 1), 0;
    return m;
}

ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}

ComplexMatrix ket_bra(Eigen::Index row, Eigen::Index col, Eigen::Index dim) {
    ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
    m(row, col) = 1.0;
    return m;
}

ComplexMatrix projector(const StateVector &psi) {
    return psi * psi.adjoint();
}

EigenSystem hermitian_eigensystem(const ComplexMatrix &m) {
    require_square(m, "hermitian_eigensystem");
    require_dim_cap(m, "hermitian_eigensystem");
    if (!is_hermitian(m, tol::kStructural)) {
        throw ValidationError("hermitian_eigensystem: matrix is not Hermitian (max |m - m^dag| = " +
                              describe(max_abs_diff(m, m.adjoint())) + ")");
    }
    ComplexMatrix sym = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigensystem: eigensolver did not converge");
    }
    EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
    const Eigen::Index n = out.values.size();
    double scale = std::max(1.0, out.values.cwiseAbs().maxCoeff());
    Eigen::Index start = 0;
    for (Eigen::Index k = 1; k <= n; k++) {
        if (k == n || out.values[k] - out.values[k - 1] > kDegeneracyGap * scale) {
            if (k - start > 1) {
                canonicalize_cluster(out.vectors, start, k - start);
            }
            start = k;
        }
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &m) {
    EigenSystem es = hermitian_eigensystem(m);
    double scale = es.values.size() ? es.values.cwiseAbs().maxCoeff() : 0.0;
    double floor = 16.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
    Eigen::VectorXd roots = es.values.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
    return es.vectors * roots.cast<Complex>().asDiagonal() * es.vectors.adjoint();
}

double trace_norm(const ComplexMatrix &m) {
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues().sum();
}

DensityMatrix DensityMatrix::from_pure(const StateVector &psi) {
    if (psi.size() == 0) {
        throw ValidationError("from_pure: empty state vector");
    }
    double norm = psi.norm();
    if (!std::isfinite(norm) || std::abs(norm - 1.0) > tol::kRoundTrip) {
        throw ValidationError("from_pure: state vector norm " + describe(norm) + " is not 1");
    }
    StateVector unit = psi / norm;
    return validate_density(projector(unit));
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
    if (dim <= 0) {
        throw ValidationError("maximally_mixed: dimension must be positive");
    }
    return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix validate_density(const ComplexMatrix &m, double tolerance) {
    require_square(m, "validate_density");
    double herm = max_abs_diff(m, m.adjoint());
    if (herm > tolerance) {
        throw ValidationError("validate_density: not Hermitian (deviation " + describe(herm) + ")");
    }
    Complex tr = m.trace();
    if (std::abs(tr - 1.0) > tolerance) {
        throw ValidationError("validate_density: trace " + describe(tr.real()) + " is not 1");
    }
    EigenSystem es = hermitian_eigensystem(0.5 * (m + m.adjoint()));
    if (es.values[0] < -tolerance) {
        throw ValidationError("validate_density: negative eigenvalue " + describe(es.values[0]));
    }
    if (es.values[0] >= 0.0 && tr == Complex(1.0)) {
        return DensityMatrix(0.5 * (m + m.adjoint()));
    }
    Eigen::VectorXd clamped = es.values.cwiseMax(0.0);
    ComplexMatrix fixed = es.vectors * clamped.cast<Complex>().asDiagonal() * es.vectors.adjoint();
    fixed /= fixed.trace().real();
    return DensityMatrix(0.5 * (fixed + fixed.adjoint()));
}

double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw ValidationError("fidelity: dimension mismatch (" + std::to_string(rho.dim()) + " vs " +
                              std::to_string(sigma.dim()) + ")");
    }
    return trace_norm(psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix()));
}

ProbabilityDistribution::ProbabilityDistribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) {
        throw ValidationError("probability distribution is empty");
    }
    double sum = 0.0;
    for (double &p : probs_) {
        if (!std::isfinite(p) || p < -tol::kClamp || p > 1.0 + tol::kClamp) {
            throw ValidationError("probability " + describe(p) + " outside [0, 1]");
        }
        p = std::clamp(p, 0.0, 1.0);
        sum += p;
    }
    if (std::abs(sum - 1.0) > tol::kRoundTrip) {
        throw ValidationError("probabilities sum to " + describe(sum) + ", not 1");
    }
}

double shannon_entropy(const ProbabilityDistribution &p) {
    double h = 0.0;
    for (double x : p.probs()) {
        if (x > 0.0) {
            h -= x * std::log2(x);
        }
    }
    return std::max(h, 0.0);
}

}  // namespace ugame
