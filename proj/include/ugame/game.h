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

#ifndef UGAME_GAME_H
#define UGAME_GAME_H

#include <cstddef>
#include <vector>

#include "ugame/core_math.h"

namespace ugame {

/// One member of the game family: Alice's observables live in dimension `d`,
/// and the basis-choice register carries coherence `gamma`.
struct GameConfig {
    int d = 2;
    double gamma = 0.0;

    void validate() const;
};

enum class MeasurementKind { kProjective, kGeneral };

/// Ordered POVM. Element x is the operator associated with guessing outcome x.
class Measurement {
   public:
    /// Requires every element PSD within 1e-10 and the sum to be the identity
    /// within 1e-9. The kind is projective when every element satisfies M^2 == M.
    explicit Measurement(std::vector<ComplexMatrix> elements);

    /// Same checks at a caller-chosen tolerance, for operators transcribed from
    /// rounded tables. The elements are stored as given.
    Measurement(std::vector<ComplexMatrix> elements, double tolerance);

    const std::vector<ComplexMatrix> &elements() const {
        return elements_;
    }
    const ComplexMatrix &operator[](std::size_t x) const {
        return elements_[x];
    }
    std::size_t size() const {
        return elements_.size();
    }
    Eigen::Index dim() const {
        return elements_.front().rows();
    }
    MeasurementKind kind() const {
        return kind_;
    }

    /// Copy of this measurement with a zero element inserted at `position`.
    Measurement with_zero_outcome(std::size_t position) const;

   private:
    std::vector<ComplexMatrix> elements_;
    MeasurementKind kind_;
};

/// Sub-normalized conditional register states, one per outcome of Alice.
class PostMeasurementEnsemble {
   public:
    /// Each state must be 2x2 Hermitian PSD within 1e-10 and the traces must
    /// sum to 1 within 1e-9. Probabilities are clamped into [0, 1].
    explicit PostMeasurementEnsemble(std::vector<ComplexMatrix> states);

    const std::vector<ComplexMatrix> &states() const {
        return states_;
    }
    const std::vector<double> &outcome_probs() const {
        return probs_;
    }
    std::size_t size() const {
        return states_.size();
    }
    /// rho_R^x = state x divided by its probability; throws when p_x == 0.
    ComplexMatrix normalized(std::size_t x) const;

   private:
    std::vector<ComplexMatrix> states_;
    std::vector<double> probs_;
};

/// U_jk = exp(2 pi i jk / d) / sqrt(d).
ComplexMatrix fourier_matrix(int d);

/// (|0><0| + |1><1| + gamma (|0><1| + |1><0|)) / 2.
DensityMatrix register_state(double gamma);

/// Conditional register blocks for a controlled operation that leaves the
/// system untouched on register value 0 and acts on register value 1 with
/// coherence operator `coherence_op` and channel output `lower_output`:
///
///   [ r00 <x|rho|x>            r01 <x|rho L^dag|x> ]
///   [ r10 <x|L rho|x>          r11 <x|lower|x>     ]
///
/// Inputs are not validated and may be arbitrary (non-Hermitian) matrices, so
/// the map can be probed linearly.
std::vector<ComplexMatrix> conditional_register_blocks(
    const ComplexMatrix &rho_b, const ComplexMatrix &reg, const ComplexMatrix &coherence_op,
    const ComplexMatrix &lower_output);

/// Ideal game: the register-1 branch applies fourier_matrix(d).
PostMeasurementEnsemble post_measurement_ensemble(const DensityMatrix &rho_b, const DensityMatrix &reg);
PostMeasurementEnsemble post_measurement_ensemble(const GameConfig &config, const DensityMatrix &rho_b,
                                                  const DensityMatrix &reg);
PostMeasurementEnsemble post_measurement_ensemble(const GameConfig &config, const DensityMatrix &rho_b);

/// sum_x Tr(M_x rho~_x).
double guessing_probability(const PostMeasurementEnsemble &ensemble, const Measurement &m);

/// Closed-form optimum of the d = 2 game.
double pguess_max_d2(double gamma);

/// log2(1/c) with c the largest squared overlap between the columns of the
/// two bases.
double maassen_uffink_bound(const ComplexMatrix &basis_s, const ComplexMatrix &basis_t);

/// H(S) + H(T) for Born-rule outcome distributions in the column bases.
double entropic_sum(const DensityMatrix &rho_b, const ComplexMatrix &basis_s, const ComplexMatrix &basis_t);

struct GapRatio {
    double p_gap;
    double ratio;
};

/// Splits the observed shortfall 1 - p_exp into the part explained by the gap
/// to the best-known strategy.
GapRatio gap_ratio(double p_best_known, double p_exp);

}  // namespace ugame

#endif
