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

#include "ugame/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>

#include "ugame/nelder_mead.h"
#include "ugame/parallel.h"

namespace ugame {

namespace {

struct RestartOutcome {
    StateVector state;
    std::optional<Measurement> measurement;
    double p = -1.0;
    std::vector<double> history;
};

// Ideal-game ensemble for an arbitrary (possibly non-Hermitian) system matrix.
std::vector<ComplexMatrix> raw_blocks(const ComplexMatrix &rho_b, const ComplexMatrix &reg, const ComplexMatrix &f) {
    return conditional_register_blocks(rho_b, reg, f, f * rho_b * f.adjoint());
}

PostMeasurementEnsemble ensemble_for(const StateVector &psi, const ComplexMatrix &reg, const ComplexMatrix &f) {
    return PostMeasurementEnsemble(raw_blocks(projector(psi), reg, f));
}

// W with P(rho) = Tr(rho W) for the fixed measurement; P is linear in rho so W
// is read off by probing with matrix units.
ComplexMatrix effective_operator(const Measurement &m, const ComplexMatrix &reg, const ComplexMatrix &f) {
    const Eigen::Index d = f.rows();
    ComplexMatrix w(d, d);
    for (Eigen::Index a = 0; a < d; a++) {
        for (Eigen::Index b = 0; b < d; b++) {
            std::vector<ComplexMatrix> blocks = raw_blocks(ket_bra(a, b, d), reg, f);
            Complex value = 0.0;
            for (std::size_t x = 0; x < blocks.size(); x++) {
                value += (m[x] * blocks[x]).trace();
            }
            w(b, a) = value;
        }
    }
    return 0.5 * (w + w.adjoint());
}

double objective(const StateVector &psi, const ComplexMatrix &reg, const ComplexMatrix &f) {
    return best_response_measurement(ensemble_for(psi, reg, f)).p_success;
}

RestartOutcome run_restart(const GameConfig &config, const ComplexMatrix &reg, const ComplexMatrix &f,
                           std::uint64_t seed, int restart, const SeeSawOptions &options) {
    const int d = config.d;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(restart)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> polar(0.0, std::numbers::pi / 2.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    std::vector<double> params;
    for (int k = 0; k < d - 1; k++) {
        params.push_back(polar(rng));
    }
    for (int k = 0; k < d - 1; k++) {
        params.push_back(phase(rng));
    }

    RestartOutcome out;
    StateVector psi = state_from_parameters(params, d);
    double previous = -std::numeric_limits<double>::infinity();
    int polish_rounds = 0;
    for (int it = 0; it < options.max_iterations; it++) {
        DiscriminationResult response = best_response_measurement(ensemble_for(psi, reg, f));
        out.history.push_back(response.p_success);
        out.state = psi;
        out.measurement = response.measurement;
        out.p = response.p_success;
        if (response.p_success - previous < options.tolerance) {
            if (!options.polish || polish_rounds >= options.max_polish_rounds) {
                break;
            }
            polish_rounds++;
            auto negated = [&](const std::vector<double> &x) { return -objective(state_from_parameters(x, d), reg, f); };
            NelderMeadOptions nm;
            nm.initial_step = 0.02;
            nm.max_evaluations = 400 * d;
            NelderMeadResult polished = nelder_mead_minimize(negated, parameters_from_state(psi), nm);
            if (-polished.value - response.p_success < options.tolerance) {
                break;
            }
            previous = response.p_success;
            psi = state_from_parameters(polished.x, d);
            continue;
        }
        previous = response.p_success;
        EigenSystem es = hermitian_eigensystem(effective_operator(response.measurement, reg, f));
        psi = es.vectors.col(es.vectors.cols() - 1);
    }
    return out;
}

}  // namespace

DiscriminationResult best_response_measurement(const PostMeasurementEnsemble &ensemble) {
    DiscriminationProblem problem(ensemble);
    switch (problem.size()) {
        case 2:
            return helstrom(problem);
        case 3:
            return best_projective_two_bucket(problem);
        default:
            throw ValidationError("best_response_measurement: only 2 or 3 outcomes are supported, got " +
                                  std::to_string(problem.size()));
    }
}

StateVector state_from_parameters(std::span<const double> params, int d) {
    if (d < 1 || params.size() != static_cast<std::size_t>(2 * d - 2)) {
        throw ValidationError("state_from_parameters: expected " + std::to_string(2 * d - 2) + " parameters");
    }
    StateVector psi(d);
    double tail = 1.0;
    for (int k = 0; k < d - 1; k++) {
        psi[k] = tail * std::cos(params[static_cast<std::size_t>(k)]);
        tail *= std::sin(params[static_cast<std::size_t>(k)]);
    }
    psi[d - 1] = tail;
    for (int k = 1; k < d; k++) {
        psi[k] *= std::polar(1.0, params[static_cast<std::size_t>(d - 2 + k)]);
    }
    return psi;
}

std::vector<double> parameters_from_state(const StateVector &psi) {
    const Eigen::Index d = psi.size();
    if (d < 1) {
        throw ValidationError("parameters_from_state: empty state");
    }
    double ref_phase = std::abs(psi[0]) > 0.0 ? std::arg(psi[0]) : 0.0;
    std::vector<double> params;
    for (Eigen::Index k = 0; k + 1 < d; k++) {
        double rest = psi.tail(d - k - 1).norm();
        params.push_back(std::atan2(rest, std::abs(psi[k])));
    }
    for (Eigen::Index k = 1; k < d; k++) {
        params.push_back(std::arg(psi[k]) - ref_phase);
    }
    return params;
}

OptimizationResult optimize_d2(double gamma) {
    GameConfig config{2, gamma};
    config.validate();
    StateVector psi(2);
    psi << 1.0 + 1.0 / std::numbers::sqrt2, -1.0 / std::numbers::sqrt2;
    psi.normalize();
    PostMeasurementEnsemble ensemble = post_measurement_ensemble(config, DensityMatrix::from_pure(psi));
    DiscriminationResult response = helstrom(DiscriminationProblem(ensemble));
    double p = guessing_probability(ensemble, response.measurement);
    return {psi, response.measurement, p, 0, 0, 0, {{p}}};
}

OptimizationResult optimize_numeric(const GameConfig &config, int restarts, std::uint64_t seed,
                                    const SeeSawOptions &options) {
    config.validate();
    if (config.d != 2 && config.d != 3) {
        throw ValidationError("optimize_numeric: only d = 2 and d = 3 are supported, got " + std::to_string(config.d));
    }
    if (restarts < 1) {
        throw ValidationError("optimize_numeric: restarts must be >= 1");
    }
    const ComplexMatrix reg = register_state(config.gamma).matrix();
    const ComplexMatrix f = fourier_matrix(config.d);
    auto chunks = parallel_map_ranges(restarts, options.workers, [&](int begin, int end) {
        std::vector<RestartOutcome> part;
        for (int r = begin; r < end; r++) {
            part.push_back(run_restart(config, reg, f, seed, r, options));
        }
        return part;
    });
    std::vector<RestartOutcome> all;
    for (auto &chunk : chunks) {
        for (auto &outcome : chunk) {
            all.push_back(std::move(outcome));
        }
    }
    std::size_t best = 0;
    for (std::size_t r = 1; r < all.size(); r++) {
        if (all[r].p > all[best].p) {
            best = r;
        }
    }
    OptimizationResult result{all[best].state, *all[best].measurement, all[best].p, restarts, seed,
                              static_cast<int>(best), {}};
    for (auto &outcome : all) {
        result.histories.push_back(std::move(outcome.history));
    }
    return result;
}

double evaluate_strategy(const GameConfig &config, const DensityMatrix &rho_b, const Measurement &m) {
    return guessing_probability(post_measurement_ensemble(config, rho_b), m);
}

}  // namespace ugame
