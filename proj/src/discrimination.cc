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

#include "ugame/discrimination.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ugame/parallel.h"

namespace ugame {

namespace {

struct PairOptimum {
    double p;
    ComplexMatrix positive_projector;
};

PairOptimum helstrom_pair(const ComplexMatrix &a, const ComplexMatrix &b) {
    EigenSystem es = hermitian_eigensystem(a - b);
    ComplexMatrix proj = ComplexMatrix::Zero(2, 2);
    double abs_sum = 0.0;
    for (Eigen::Index k = 0; k < es.values.size(); k++) {
        abs_sum += std::abs(es.values[k]);
        if (es.values[k] >= -tol::kClamp) {
            proj += projector(es.vectors.col(k));
        }
    }
    double p = 0.5 * (a.trace().real() + b.trace().real()) + 0.5 * abs_sum;
    return {p, proj};
}

}  // namespace

DiscriminationProblem::DiscriminationProblem(std::vector<ComplexMatrix> states) : states_(std::move(states)) {
    if (states_.size() < 2) {
        throw ValidationError("discrimination problem needs at least two states");
    }
    double total = 0.0;
    for (std::size_t x = 0; x < states_.size(); x++) {
        const ComplexMatrix &s = states_[x];
        if (s.rows() != 2 || s.cols() != 2) {
            throw ValidationError("discrimination states must live on a 2-dimensional register");
        }
        require_square(s, "discrimination state");
        if (!is_hermitian(s, tol::kStructural) || hermitian_eigensystem(s).values[0] < -tol::kStructural) {
            throw ValidationError("discrimination state " + std::to_string(x) + " is not Hermitian PSD");
        }
        priors_.push_back(std::max(0.0, s.trace().real()));
        total += s.trace().real();
    }
    if (std::abs(total - 1.0) > tol::kRoundTrip) {
        throw ValidationError("discrimination priors sum to " + std::to_string(total) + ", not 1");
    }
}

DiscriminationProblem::DiscriminationProblem(const PostMeasurementEnsemble &ensemble)
    : DiscriminationProblem(ensemble.states()) {
}

DiscriminationResult helstrom(const DiscriminationProblem &problem) {
    if (problem.size() != 2) {
        throw ValidationError("helstrom: expected exactly 2 states, got " + std::to_string(problem.size()));
    }
    PairOptimum opt = helstrom_pair(problem.states()[0], problem.states()[1]);
    ComplexMatrix complement = ComplexMatrix::Identity(2, 2) - opt.positive_projector;
    return {opt.p, Measurement({opt.positive_projector, complement})};
}

DiscriminationResult best_projective_two_bucket(const DiscriminationProblem &problem, std::size_t zero_outcome) {
    if (problem.size() != 3) {
        throw ValidationError("best_projective_two_bucket: expected 3 states, got " + std::to_string(problem.size()));
    }
    if (zero_outcome >= 3) {
        throw ValidationError("best_projective_two_bucket: zero outcome must be 0, 1 or 2");
    }
    std::size_t first = zero_outcome == 0 ? 1 : 0;
    std::size_t second = zero_outcome == 2 ? 1 : 2;
    PairOptimum opt = helstrom_pair(problem.states()[first], problem.states()[second]);
    std::vector<ComplexMatrix> elements(3, ComplexMatrix::Zero(2, 2));
    elements[first] = opt.positive_projector;
    elements[second] = ComplexMatrix::Identity(2, 2) - opt.positive_projector;
    return {opt.p, Measurement(std::move(elements))};
}

DiscriminationResult best_projective_two_bucket(const DiscriminationProblem &problem) {
    DiscriminationResult best = best_projective_two_bucket(problem, 0);
    for (std::size_t z = 1; z < 3; z++) {
        DiscriminationResult candidate = best_projective_two_bucket(problem, z);
        if (candidate.p_success > best.p_success) {
            best = std::move(candidate);
        }
    }
    return best;
}

double brute_force_projective(const DiscriminationProblem &problem, int grid_steps, int workers) {
    if (grid_steps < 2) {
        throw ValidationError("brute_force_projective: grid_steps must be >= 2");
    }
    const auto &states = problem.states();
    // Bloch vectors (tr, x, y, z) of each state: Tr(P_n s) = (tr + n.r) / 2.
    struct Bloch {
        double tr, x, y, z;
    };
    std::vector<Bloch> bloch;
    for (const ComplexMatrix &s : states) {
        bloch.push_back({s.trace().real(), 2.0 * s(0, 1).real(), -2.0 * s(0, 1).imag(),
                         (s(0, 0) - s(1, 1)).real()});
    }
    const int theta_count = grid_steps;
    const int phi_count = 2 * (grid_steps - 1);
    const double step = std::numbers::pi / (grid_steps - 1);

    auto scan_rows = [&](int row_begin, int row_end) {
        double best = 0.0;
        for (int i = row_begin; i < row_end; i++) {
            double theta = step * i;
            double st = std::sin(theta), ct = std::cos(theta);
            for (int j = 0; j < phi_count; j++) {
                double phi = step * j;
                double nx = st * std::cos(phi), ny = st * std::sin(phi), nz = ct;
                double plus = 0.0, minus = 0.0;
                for (const Bloch &b : bloch) {
                    double dot = nx * b.x + ny * b.y + nz * b.z;
                    plus = std::max(plus, 0.5 * (b.tr + dot));
                    minus = std::max(minus, 0.5 * (b.tr - dot));
                }
                best = std::max(best, plus + minus);
            }
        }
        return best;
    };
    std::vector<double> partial = parallel_map_ranges(theta_count, workers, scan_rows);
    return *std::max_element(partial.begin(), partial.end());
}

}  // namespace ugame
