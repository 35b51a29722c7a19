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

#ifndef UGAME_DISCRIMINATION_H
#define UGAME_DISCRIMINATION_H

#include <cstddef>
#include <vector>

#include "ugame/core_math.h"
#include "ugame/game.h"

namespace ugame {

/// Minimal-error discrimination of sub-normalized qubit states; the trace of
/// each state is its prior.
class DiscriminationProblem {
   public:
    explicit DiscriminationProblem(std::vector<ComplexMatrix> states);
    explicit DiscriminationProblem(const PostMeasurementEnsemble &ensemble);

    const std::vector<ComplexMatrix> &states() const {
        return states_;
    }
    const std::vector<double> &priors() const {
        return priors_;
    }
    std::size_t size() const {
        return states_.size();
    }

   private:
    std::vector<ComplexMatrix> states_;
    std::vector<double> priors_;
};

struct DiscriminationResult {
    double p_success;
    Measurement measurement;
};

/// Two-state optimum: 1/2 (tr a + tr b) + 1/2 ||a - b||_1, measured by the
/// projector onto the non-negative eigenspace of a - b (zero eigenvalues go to
/// outcome 0) and its complement.
DiscriminationResult helstrom(const DiscriminationProblem &problem);

/// Three-state strategies whose element for `zero_outcome` vanishes: the two
/// remaining outcomes are separated by a Helstrom measurement.
DiscriminationResult best_projective_two_bucket(const DiscriminationProblem &problem, std::size_t zero_outcome);

/// Best of the three choices of vanishing outcome. Ties keep the lowest index.
DiscriminationResult best_projective_two_bucket(const DiscriminationProblem &problem);

/// Exhaustive scan of rank-one projective measurements {P_n, I - P_n} with
/// Bloch direction n(theta, phi): theta takes `grid_steps` values on [0, pi],
/// phi takes 2 (grid_steps - 1) values on [0, 2 pi). Each outcome is assigned
/// to the state it identifies best. Rows are split across up to `workers`
/// threads; the result does not depend on the split.
double brute_force_projective(const DiscriminationProblem &problem, int grid_steps, int workers = 1);

}  // namespace ugame

#endif
