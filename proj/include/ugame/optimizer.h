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

#ifndef UGAME_OPTIMIZER_H
#define UGAME_OPTIMIZER_H

#include <cstdint>
#include <span>
#include <vector>

#include "ugame/core_math.h"
#include "ugame/discrimination.h"
#include "ugame/game.h"

namespace ugame {

struct OptimizationResult {
    StateVector best_state;  // unit norm, d amplitudes
    Measurement best_measurement;
    double p_guess;
    int restarts_used;
    std::uint64_t seed;
    /// Index of the restart that produced the result (0 for closed forms).
    int best_restart = 0;
    /// p_guess after every see-saw iteration, one trace per restart.
    std::vector<std::vector<double>> histories;
};

struct SeeSawOptions {
    int max_iterations = 500;
    double tolerance = 1e-10;
    /// Worker threads for independent restarts; <= 0 picks automatically.
    int workers = 0;
    /// Nelder-Mead refinement of the state once the alternation stalls.
    bool polish = true;
    int max_polish_rounds = 3;
};

/// Best measurement on the register for a fixed ensemble: Helstrom for two
/// outcomes, the best two-bucket projective measurement for three.
DiscriminationResult best_response_measurement(const PostMeasurementEnsemble &ensemble);

/// Pure state from 2d - 2 parameters: d - 1 hyperspherical polar angles
/// followed by d - 1 phases relative to amplitude 0.
StateVector state_from_parameters(std::span<const double> params, int d);
std::vector<double> parameters_from_state(const StateVector &psi);

/// The state proportional to |0> + |->, which is optimal for every gamma, with
/// its Helstrom measurement.
OptimizationResult optimize_d2(double gamma);

/// Multistart see-saw over pure probe states and register measurements.
/// Restart r draws its initial parameters uniformly from the parameter box
/// using a generator seeded with (seed, r), so the result depends only on
/// (config, restarts, seed, options) and not on the worker count.
OptimizationResult optimize_numeric(const GameConfig &config, int restarts, std::uint64_t seed,
                                    const SeeSawOptions &options = {});

double evaluate_strategy(const GameConfig &config, const DensityMatrix &rho_b, const Measurement &m);

}  // namespace ugame

#endif
