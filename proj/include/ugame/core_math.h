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

#ifndef UGAME_CORE_MATH_H
#define UGAME_CORE_MATH_H

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace ugame {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

/// Raised when an input violates a documented precondition or invariant.
/// The command-line tool maps this to exit code 2.
class ValidationError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

namespace tol {
inline constexpr double kStructural = 1e-10;
inline constexpr double kRoundTrip = 1e-9;
inline constexpr double kClamp = 1e-12;
}  // namespace tol

/// Largest dimension handled by the dense routines.
inline constexpr Eigen::Index kMaxDim = 16;

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
bool all_finite(const ComplexMatrix &m);
bool is_hermitian(const ComplexMatrix &m, double tolerance);
bool is_unitary(const ComplexMatrix &m, double tolerance);
void require_square(const ComplexMatrix &m, std::string_view what);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix ket_bra(Eigen::Index row, Eigen::Index col, Eigen::Index dim);
ComplexMatrix projector(const StateVector &psi);

struct EigenSystem {
    Eigen::VectorXd values;  // ascending
    ComplexMatrix vectors;   // column k pairs with values[k]
};

/// Eigen-decomposition of a Hermitian matrix.
///
/// Eigenvalues closer than 1e-9 are treated as one degenerate cluster, and the
/// basis of each cluster is rebuilt by Gram-Schmidt over the canonical basis
/// vectors projected into it, so degenerate spectra give reproducible vectors.
EigenSystem hermitian_eigensystem(const ComplexMatrix &m);

/// Principal square root of a Hermitian PSD matrix (negative dust clamped).
ComplexMatrix psd_sqrt(const ComplexMatrix &m);

/// Sum of singular values.
double trace_norm(const ComplexMatrix &m);

/// Unit-trace Hermitian PSD matrix. Only constructible through validation.
class DensityMatrix {
   public:
    static DensityMatrix from_pure(const StateVector &psi);
    static DensityMatrix maximally_mixed(Eigen::Index dim);

    const ComplexMatrix &matrix() const {
        return m_;
    }
    Eigen::Index dim() const {
        return m_.rows();
    }
    Complex operator()(Eigen::Index r, Eigen::Index c) const {
        return m_(r, c);
    }

   private:
    explicit DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    }
    friend DensityMatrix validate_density(const ComplexMatrix &m, double tolerance);

    ComplexMatrix m_;
};

/// Checks hermiticity, unit trace and positivity at `tolerance`. Eigenvalues in
/// [-tolerance, 0) are clamped to zero and a trace drift up to `tolerance` is
/// renormalized away. Violations throw ValidationError naming the invariant.
DensityMatrix validate_density(const ComplexMatrix &m, double tolerance = tol::kStructural);

/// F = Tr sqrt(sqrt(rho) sigma sqrt(rho)), evaluated as the trace norm of
/// sqrt(rho) sqrt(sigma) so both argument orders give the same value.
double fidelity(const DensityMatrix &rho, const DensityMatrix &sigma);

class ProbabilityDistribution {
   public:
    /// Clamps entries within 1e-12 of [0, 1] and requires sum == 1 within 1e-9.
    explicit ProbabilityDistribution(std::vector<double> probs);

    const std::vector<double> &probs() const {
        return probs_;
    }
    std::size_t size() const {
        return probs_.size();
    }
    double operator[](std::size_t i) const {
        return probs_[i];
    }

   private:
    std::vector<double> probs_;
};

/// Entropy in bits with 0 log 0 = 0.
double shannon_entropy(const ProbabilityDistribution &p);

}  // namespace ugame

#endif
