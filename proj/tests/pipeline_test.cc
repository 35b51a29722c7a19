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

#include "ugame/pipeline.h"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.h"
#include "ugame/optimizer.h"

namespace ugame {
namespace {

DensityMatrix experimental_register() {
    ComplexMatrix m(2, 2);
    m << 0.5124, Complex(0.4955, -0.0157), Complex(0.4955, 0.0157), 0.4876;
    return validate_density(m);
}

StateVector best_known_d3_state() {
    StateVector a(3);
    a << Complex(0.0938, 0.5786), Complex(0.0109, -0.1218), 0.8009;
    return a / a.norm();
}

Measurement reference_d2_measurement() {
    ComplexMatrix m0(2, 2), m1(2, 2);
    m0 << 0.8550, 0.3521, 0.3521, 0.1450;
    m1 << 0.1450, -0.3521, -0.3521, 0.8550;
    return Measurement({m0, m1});
}

Measurement reference_d3_measurement() {
    ComplexMatrix m0(2, 2), m2(2, 2);
    m0 << 0.5003, Complex(0.2027, 0.4571), Complex(0.2027, -0.4571), 0.4997;
    m2 << 0.4997, Complex(-0.2027, -0.4571), Complex(-0.2027, 0.4571), 0.5003;
    return Measurement({m0, ComplexMatrix::Zero(2, 2), m2}, 1e-3);
}

NoiseModel noise_with(double v, const DensityMatrix &reg) {
    NoiseModel n;
    n.visibility_v = v;
    n.register_state = reg;
    return n;
}

void expect_valid_table(const DetectionTable &t) {
    EXPECT_GE(t.probs.minCoeff(), -1e-12);
    EXPECT_NEAR(t.probs.sum(), 1.0, 1e-9);
    EXPECT_NEAR(t.p_guess, t.probs.trace(), 1e-15);
}

TEST(SimulateD2, ExperimentalPrediction) {
    OptimizationResult opt = optimize_d2(0.9918);
    DetectionTable t = simulate_d2(noise_with(0.99, experimental_register()), DensityMatrix::from_pure(opt.best_state),
                                   reference_d2_measurement());
    EXPECT_NEAR(t.probs(0, 0), 0.5064, 1e-3);
    EXPECT_NEAR(t.probs(0, 1), 0.0024, 1e-3);
    EXPECT_NEAR(t.probs(1, 0), 0.0023, 1e-3);
    EXPECT_NEAR(t.probs(1, 1), 0.4889, 1e-3);
    EXPECT_NEAR(t.p_guess, 0.9953, 5e-4);
    expect_valid_table(t);
}

TEST(SimulateD2, IdealLimits) {
    OptimizationResult one = optimize_d2(1.0);
    EXPECT_NEAR(simulate_d2(noise_with(1.0, register_state(1.0)), DensityMatrix::from_pure(one.best_state),
                            one.best_measurement)
                    .p_guess,
                1.0, 1e-9);
    OptimizationResult zero = optimize_d2(0.0);
    EXPECT_NEAR(simulate_d2(noise_with(1.0, register_state(0.0)), DensityMatrix::from_pure(zero.best_state),
                            zero.best_measurement)
                    .p_guess,
                0.853553, 1e-6);
}

TEST(SimulateD2, NoiselessReproducesFormula) {
    for (int k = 0; k <= 20; k++) {
        double gamma = k * 0.05;
        OptimizationResult opt = optimize_d2(gamma);
        DetectionTable t = simulate_d2(noise_with(1.0, register_state(gamma)), DensityMatrix::from_pure(opt.best_state),
                                       opt.best_measurement);
        EXPECT_NEAR(t.p_guess, pguess_max_d2(gamma), 1e-9);
        expect_valid_table(t);
    }
}

TEST(SimulateD2, GlobalPhaseInvariance) {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 50; trial++) {
        StateVector psi = testing::haar_state(2, rng);
        Complex phase = std::polar(1.0, 0.37 * trial);
        NoiseModel n = noise_with(0.9, experimental_register());
        DetectionTable a = simulate_d2(n, DensityMatrix::from_pure(psi), reference_d2_measurement());
        DetectionTable b = simulate_d2(n, DensityMatrix::from_pure(phase * psi), reference_d2_measurement());
        EXPECT_LE((a.probs - b.probs).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(SimulateD2, Errors) {
    EXPECT_THROW(simulate_d2(NoiseModel{}, DensityMatrix::maximally_mixed(3), reference_d2_measurement()),
                 ValidationError);
    EXPECT_THROW(simulate_d2(NoiseModel{}, DensityMatrix::maximally_mixed(2), reference_d3_measurement()),
                 ValidationError);
    NoiseModel bad;
    bad.visibility_v = 2.0;
    EXPECT_THROW(simulate_d2(bad, DensityMatrix::maximally_mixed(2), reference_d2_measurement()), ValidationError);
}

TEST(SimulateD3, ExperimentalPrediction) {
    DetectionTable t = simulate_d3(noise_with(0.98, experimental_register()),
                                   DensityMatrix::from_pure(best_known_d3_state()), reference_d3_measurement());
    EXPECT_NEAR(t.p_guess, 0.9554, 1e-3);
    EXPECT_EQ(t.probs.row(1).cwiseAbs().maxCoeff(), 0.0);
    EXPECT_GE(t.probs.minCoeff(), -1e-12);
}

TEST(SimulateD3, NoiselessBestKnownStrategy) {
    DetectionTable t = simulate_d3(noise_with(1.0, register_state(0.9918)),
                                   DensityMatrix::from_pure(best_known_d3_state()), reference_d3_measurement());
    EXPECT_NEAR(t.p_guess, 0.9753, 5e-4);
}

TEST(SimulateD3, NoiselessAgreesWithIdealGame) {
    std::mt19937_64 rng(62);
    for (int trial = 0; trial < 30; trial++) {
        double gamma = trial / 29.0;
        DensityMatrix rho = testing::random_density(3, rng);
        ComplexMatrix u = testing::haar_unitary(2, rng);
        Measurement m = Measurement({projector(u.col(0)), projector(u.col(1))}).with_zero_outcome(trial % 3);
        DetectionTable t = simulate_d3(noise_with(1.0, register_state(gamma)), rho, m);
        EXPECT_NEAR(t.p_guess, evaluate_strategy(GameConfig{3, gamma}, rho, m), 1e-12);
        expect_valid_table(t);
    }
}

TEST(SimulateD3, SeeSawOptimum) {
    OptimizationResult r = optimize_numeric(GameConfig{3, 1.0}, 64, 7);
    DetectionTable t =
        simulate_d3(noise_with(1.0, register_state(1.0)), DensityMatrix::from_pure(r.best_state), r.best_measurement);
    EXPECT_GE(t.p_guess, 0.9788);
}

TEST(SimulateD3, MonotoneInVisibility) {
    DensityMatrix rho = DensityMatrix::from_pure(best_known_d3_state());
    double prev = -1.0;
    for (double v : {0.9, 0.95, 0.98, 1.0}) {
        double p = simulate_d3(noise_with(v, experimental_register()), rho, reference_d3_measurement()).p_guess;
        EXPECT_GE(p, prev);
        prev = p;
    }
}

TEST(SimulateD3, PerInterferometerOverride) {
    DensityMatrix rho = DensityMatrix::from_pure(best_known_d3_state());
    NoiseModel uniform = noise_with(0.98, experimental_register());
    NoiseModel split = uniform;
    split.per_interferometer = InterferometerVisibilities::uniform(0.98);
    EXPECT_NEAR(simulate_d3(uniform, rho, reference_d3_measurement()).p_guess,
                simulate_d3(split, rho, reference_d3_measurement()).p_guess, 1e-15);
    split.per_interferometer->t12 = 1.0;
    EXPECT_GT(simulate_d3(split, rho, reference_d3_measurement()).p_guess,
              simulate_d3(uniform, rho, reference_d3_measurement()).p_guess);
}

TEST(SimulateD3, Errors) {
    EXPECT_THROW(simulate_d3(NoiseModel{}, DensityMatrix::maximally_mixed(2), reference_d3_measurement()),
                 ValidationError);
    EXPECT_THROW(simulate_d3(NoiseModel{}, DensityMatrix::maximally_mixed(3), reference_d2_measurement()),
                 ValidationError);
}

TEST(NoisyMesh, UnitVisibilityGivesPlanUnitary) {
    std::array<double, 3> ones = {1.0, 1.0, 1.0};
    MeshPlan plan = fourier3_reference_plan();
    EXPECT_LT(max_abs_diff(noisy_mesh_coherence_operator(plan, ones), fourier_matrix(3)), 1e-12);
    std::array<double, 2> two = {1.0, 1.0};
    EXPECT_THROW(noisy_mesh_coherence_operator(plan, two), ValidationError);
}

TEST(NoisyMesh, ChannelMatchesSequentialApplication) {
    std::mt19937_64 rng(63);
    MeshPlan plan = fourier3_reference_plan();
    std::array<double, 3> vis = {0.97, 0.95, 0.99};
    DensityMatrix rho = testing::random_density(3, rng);
    DensityMatrix expected = apply_channel(rho, visibility_channel(0, 1, vis[0], 3));
    expected = apply_channel(expected, unitary_channel(plan.layers[2].embedded(3)));
    expected = apply_channel(expected, visibility_channel(1, 2, vis[1], 3));
    expected = apply_channel(expected, unitary_channel(plan.layers[1].embedded(3)));
    expected = apply_channel(expected, visibility_channel(0, 1, vis[2], 3));
    expected = apply_channel(expected, unitary_channel(plan.layers[0].embedded(3)));
    ComplexMatrix phases = mesh_reconstruct(MeshPlan{3, {}, plan.output_phases});
    expected = apply_channel(expected, unitary_channel(phases));
    EXPECT_LT(max_abs_diff(noisy_mesh_channel(plan, vis, rho.matrix()), expected.matrix()), 1e-14);
}

TEST(FourierTest, IdealIsIdentity) {
    RealMatrix p = simulate_fourier_test(1.0);
    EXPECT_LT((p - RealMatrix::Identity(3, 3)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(FourierTest, ReferenceVisibility) {
    RealMatrix p = simulate_fourier_test(0.98);
    RealMatrix expected(3, 3);
    expected << 0.9742, 0.0170, 0.0089, 0.0170, 0.9742, 0.0089, 0.0089, 0.0089, 0.9823;
    EXPECT_LT((p - expected).cwiseAbs().maxCoeff(), 1e-4);
    EXPECT_NEAR(p.trace() / 3.0, 0.9769, 1e-4);
}

TEST(FourierTest, ColumnsAreDistributions) {
    for (int k = 0; k <= 20; k++) {
        RealMatrix p = simulate_fourier_test(k / 20.0);
        EXPECT_GE(p.minCoeff(), -1e-12);
        for (int j = 0; j < 3; j++) {
            EXPECT_NEAR(p.col(j).sum(), 1.0, 1e-9);
        }
    }
    EXPECT_THROW(simulate_fourier_test(1.01), ValidationError);
    EXPECT_THROW(simulate_fourier_test(-0.5), ValidationError);
}

TEST(EstimateGamma, Examples) {
    GammaEstimate half = estimate_gamma(register_state(0.5));
    EXPECT_NEAR(half.gamma, 0.5, 1e-12);
    EXPECT_NEAR(half.fidelity, 1.0, 1e-9);
    GammaEstimate mixed = estimate_gamma(DensityMatrix::maximally_mixed(2));
    EXPECT_EQ(mixed.gamma, 0.0);
    EXPECT_NEAR(mixed.fidelity, 1.0, 1e-9);
    GammaEstimate exp = estimate_gamma(experimental_register());
    EXPECT_NEAR(exp.gamma, 0.9918, 2e-4);
    EXPECT_GE(exp.fidelity, 0.9995);
}

TEST(EstimateGamma, RecoversGridValues) {
    for (int k = 0; k <= 100; k++) {
        double gamma = k / 100.0;
        EXPECT_NEAR(estimate_gamma(register_state(gamma)).gamma, gamma, 5e-5);
    }
}

TEST(EstimateGamma, Errors) {
    EXPECT_THROW(estimate_gamma(DensityMatrix::maximally_mixed(3)), ValidationError);
    EXPECT_THROW(estimate_gamma(DensityMatrix::maximally_mixed(2), 0.0), ValidationError);
    EXPECT_NEAR(estimate_gamma(register_state(0.3), 0.1).gamma, 0.3, 1e-12);
}

TEST(ReconstructFromPauli, Examples) {
    EXPECT_LT(max_abs_diff(reconstruct_from_pauli({0, 0, 0}).matrix(), ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
    EXPECT_LT(max_abs_diff(reconstruct_from_pauli({1, 0, 0}).matrix(), ComplexMatrix::Constant(2, 2, 0.5)), 1e-15);
    DensityMatrix d6 = reconstruct_from_pauli({0.9910, 0.0314, 0.0248});
    EXPECT_LT(max_abs_diff(d6.matrix(), experimental_register().matrix()), 1e-3);
}

TEST(ReconstructFromPauli, InverseMapOracle) {
    std::mt19937_64 rng(64);
    for (int trial = 0; trial < 100; trial++) {
        DensityMatrix rho = testing::random_density(2, rng);
        PauliExpectations p{(rho.matrix() * pauli_x()).trace().real(), (rho.matrix() * pauli_y()).trace().real(),
                            (rho.matrix() * pauli_z()).trace().real()};
        EXPECT_LT(max_abs_diff(reconstruct_from_pauli(p).matrix(), rho.matrix()), 1e-12);
    }
}

TEST(ReconstructFromPauli, ClipsOnlyWithinSlack) {
    DensityMatrix edge = reconstruct_from_pauli({1.0 + 5e-10, 0.0, 0.0});
    EXPECT_NEAR(edge(0, 1).real(), 0.5, 1e-15);
    EXPECT_THROW(reconstruct_from_pauli({1.0, 0.1, 0.0}), ValidationError);
    EXPECT_THROW(reconstruct_from_pauli({std::nan(""), 0.0, 0.0}), ValidationError);
}

}  // namespace
}  // namespace ugame
