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

#include "ugame/mesh.h"

#include <gtest/gtest.h>

#include <cmath>

#include "json.hpp"
#include "test_util.h"

namespace ugame {
namespace {

constexpr double kDeg = M_PI / 180.0;

ComplexMatrix product_oracle(const MeshPlan &plan) {
    ComplexMatrix u = ComplexMatrix::Zero(plan.d, plan.d);
    for (int k = 0; k < plan.d; k++) {
        u(k, k) = std::polar(1.0, plan.output_phases[static_cast<std::size_t>(k)]);
    }
    for (const BeamSplitterOp &op : plan.layers) {
        u = u * beam_splitter_matrix(plan.d, op.mode_m, op.mode_n, op.theta, op.phi);
    }
    return u;
}

void expect_valid_angles(const MeshPlan &plan) {
    for (const BeamSplitterOp &op : plan.layers) {
        EXPECT_GE(op.theta, 0.0);
        EXPECT_LE(op.theta, M_PI / 2.0);
        EXPECT_GE(op.phi, 0.0);
        EXPECT_LT(op.phi, 2.0 * M_PI);
        EXPECT_EQ(op.mode_n, op.mode_m + 1);
    }
}

TEST(BeamSplitter, MatrixForm) {
    ComplexMatrix t = beam_splitter_matrix(2, 0, 1, M_PI / 4.0, 0.0);
    ComplexMatrix expected(2, 2);
    expected << 1, -1, 1, 1;
    expected /= std::sqrt(2.0);
    EXPECT_LT(max_abs_diff(t, expected), 1e-15);
    EXPECT_TRUE(is_unitary(beam_splitter_matrix(4, 2, 3, 0.3, 5.0), 1e-12));
    EXPECT_THROW(beam_splitter_matrix(3, 0, 2, 0.1, 0.1), ValidationError);
    EXPECT_THROW(beam_splitter_matrix(3, 2, 3, 0.1, 0.1), ValidationError);
}

TEST(ClementsDecompose, Identity) {
    MeshPlan plan = clements_decompose(ComplexMatrix::Identity(3, 3));
    EXPECT_EQ(plan.layers.size(), 3u);
    EXPECT_LT(max_abs_diff(mesh_reconstruct(plan), ComplexMatrix::Identity(3, 3)), 1e-12);
    expect_valid_angles(plan);
}

TEST(ClementsDecompose, Hadamard) {
    MeshPlan plan = clements_decompose(fourier_matrix(2));
    EXPECT_EQ(plan.layers.size(), 1u);
    EXPECT_LT(max_abs_diff(mesh_reconstruct(plan), fourier_matrix(2)), 1e-10);
    EXPECT_LT(max_abs_diff(product_oracle(plan), fourier_matrix(2)), 1e-10);
}

TEST(ClementsDecompose, FourierThree) {
    MeshPlan plan = clements_decompose(fourier_matrix(3));
    ASSERT_EQ(plan.layers.size(), 3u);
    EXPECT_LT(max_abs_diff(mesh_reconstruct(plan), fourier_matrix(3)), 1e-9);
    bool found = false;
    for (const BeamSplitterOp &op : plan.layers) {
        found = found || std::abs(op.theta / kDeg - 54.74) < 0.01;
    }
    EXPECT_TRUE(found);
}

TEST(ClementsDecompose, HaarRoundTrip) {
    std::mt19937_64 rng(41);
    for (int d = 2; d <= 8; d++) {
        int trials = d <= 4 ? 200 : 20;
        for (int t = 0; t < trials; t++) {
            ComplexMatrix u = testing::haar_unitary(d, rng);
            MeshPlan plan = clements_decompose(u);
            EXPECT_EQ(plan.layers.size(), static_cast<std::size_t>(d * (d - 1) / 2));
            EXPECT_LE(max_abs_diff(mesh_reconstruct(plan), u), 1e-9);
            EXPECT_LE(max_abs_diff(product_oracle(plan), u), 1e-9);
            expect_valid_angles(plan);
        }
    }
}

TEST(ClementsDecompose, Errors) {
    ComplexMatrix bad = ComplexMatrix::Identity(3, 3);
    bad(0, 0) = 1.1;
    EXPECT_THROW(clements_decompose(bad), ValidationError);
    EXPECT_THROW(clements_decompose(ComplexMatrix::Identity(9, 9)), ValidationError);
    EXPECT_THROW(clements_decompose(ComplexMatrix::Zero(2, 3)), ValidationError);
}

TEST(MeshReconstruct, EmptyPlanIsIdentity) {
    MeshPlan plan{3, {}, {0.0, 0.0, 0.0}};
    EXPECT_LT(max_abs_diff(mesh_reconstruct(plan), ComplexMatrix::Identity(3, 3)), 1e-15);
}

TEST(MeshReconstruct, SingleLayer) {
    MeshPlan plan{2, {{0, 1, M_PI / 4.0, 0.0, LayerOrientation::kT}}, {0.0, 0.0}};
    ComplexMatrix expected(2, 2);
    expected << 1, -1, 1, 1;
    expected /= std::sqrt(2.0);
    EXPECT_LT(max_abs_diff(mesh_reconstruct(plan), expected), 1e-15);
}

TEST(MeshReconstruct, ReferenceFourierPlan) {
    MeshPlan plan = fourier3_reference_plan();
    EXPECT_LT(max_abs_diff(mesh_reconstruct(plan), fourier_matrix(3)), 1e-12);
    EXPECT_LT(max_abs_diff(product_oracle(plan), fourier_matrix(3)), 1e-12);
    MeshPlan rounded = plan;
    rounded.layers[1].theta = 54.74 * kDeg;
    EXPECT_LT(max_abs_diff(mesh_reconstruct(rounded), fourier_matrix(3)), 1e-4);
}

TEST(MeshReconstruct, ReferencePlanRoutesProbes) {
    ComplexMatrix u = mesh_reconstruct(fourier3_reference_plan());
    for (int j = 0; j < 3; j++) {
        StateVector out = u * fourier_probe_state(j, 3);
        for (int i = 0; i < 3; i++) {
            EXPECT_NEAR(std::norm(out(i)), i == j ? 1.0 : 0.0, 1e-9);
        }
    }
}

TEST(MeshReconstruct, MalformedPlans) {
    EXPECT_THROW(mesh_reconstruct(MeshPlan{3, {}, {0.0, 0.0}}), ValidationError);
    EXPECT_THROW(mesh_reconstruct(MeshPlan{3, {{1, 3, 0.1, 0.1, LayerOrientation::kT}}, {0.0, 0.0, 0.0}}),
                 ValidationError);
}

TEST(HwpAngle, Examples) {
    EXPECT_NEAR(hwp_angle_for(M_PI / 4.0), 22.5, 1e-12);
    EXPECT_NEAR(hwp_angle_for(54.74 * kDeg), 17.63, 0.005);
    EXPECT_NEAR(hwp_angle_for(M_PI / 2.0), 0.0, 1e-12);
    EXPECT_THROW(hwp_angle_for(-0.1), ValidationError);
    EXPECT_THROW(hwp_angle_for(2.0), ValidationError);
}

TEST(Waveplates, ReferencePlanInLightOrder) {
    std::vector<std::string> labels = {"H7", "H9", "H10"};
    std::vector<WaveplateSetting> w = waveplates_for(fourier3_reference_plan(), labels);
    ASSERT_EQ(w.size(), 3u);
    EXPECT_EQ(w[0].label, "H7");
    EXPECT_EQ(w[2].label, "H10");
    EXPECT_NEAR(w[0].deg, 22.5, 0.05);
    EXPECT_NEAR(w[1].deg, 17.6, 0.05);
    EXPECT_NEAR(w[2].deg, 22.5, 0.05);
    std::vector<WaveplateSetting> def = waveplates_for(fourier3_reference_plan());
    EXPECT_EQ(def[0].label, "HWP0");
    std::vector<std::string> short_labels = {"H7"};
    EXPECT_THROW(waveplates_for(fourier3_reference_plan(), short_labels), ValidationError);
}

TEST(PrepStateD2, Examples) {
    StateVector zero = prep_state_d2(0.0);
    EXPECT_NEAR(std::abs(zero(0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(zero(1)), 0.0, 1e-15);
    StateVector opt = prep_state_d2(11.3);
    EXPECT_NEAR(opt(0).real(), 0.92321, 1e-5);
    EXPECT_NEAR(opt(1).real(), -0.38430, 1e-5);
    StateVector ideal(2);
    ideal << 1.0 + 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    ideal /= ideal.norm();
    EXPECT_GE(std::norm(ideal.dot(opt)), 1.0 - 1e-5);
    EXPECT_LT((opt - ideal).cwiseAbs().maxCoeff(), 2e-3);
    StateVector one = prep_state_d2(45.0);
    EXPECT_NEAR(std::abs(one(0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(one(1) + 1.0), 0.0, 1e-15);
    EXPECT_THROW(prep_state_d2(-95.0), ValidationError);
}

TEST(PrepStateD3, Examples) {
    StateVector two = prep_state_d3(45.0, 13.0);
    EXPECT_NEAR(std::abs(two(2) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(two.head(2).norm(), 0.0, 1e-15);
    StateVector best = prep_state_d3(26.6, 5.9);
    EXPECT_NEAR(std::abs(best(0) - Complex(0.0938, 0.5786)), 0.0, 1e-3);
    EXPECT_NEAR(std::abs(best(1) - Complex(0.0109, -0.1218)), 0.0, 1e-3);
    EXPECT_NEAR(std::abs(best(2) - 0.8009), 0.0, 1e-3);
    StateVector origin = prep_state_d3(0.0, 0.0);
    EXPECT_NEAR(std::abs(origin(0) - std::polar(1.0, 1.41)), 0.0, 1e-15);
    StateVector custom = prep_state_d3(0.0, 0.0, PrepPhases{0.0, 0.0});
    EXPECT_NEAR(std::abs(custom(0) - 1.0), 0.0, 1e-15);
}

TEST(PrepStateD3, UnitNorm) {
    for (double t1 = -89.0; t1 <= 90.0; t1 += 7.3) {
        for (double t2 = -89.0; t2 <= 90.0; t2 += 11.1) {
            EXPECT_NEAR(prep_state_d3(t1, t2).norm(), 1.0, 1e-12);
        }
    }
}

TEST(WaveplatesToMeasurement, StandardBasis) {
    Measurement m = waveplates_to_measurement(0.0, 0.0);
    for (const ComplexMatrix &e : m.elements()) {
        EXPECT_LT(std::abs(e(0, 1)), 1e-15);
    }
    EXPECT_EQ(m.kind(), MeasurementKind::kProjective);
}

TEST(WaveplatesToMeasurement, ReferenceQubitSetting) {
    Measurement m = waveplates_to_measurement(-22.4, 33.8);
    ComplexMatrix m0(2, 2);
    m0 << 0.8550, 0.3521, 0.3521, 0.1450;
    EXPECT_LT(max_abs_diff(m[0], m0), 0.02);
}

TEST(WaveplatesToMeasurement, XBasis) {
    Measurement m = waveplates_to_measurement(45.0, 22.5);
    for (const ComplexMatrix &e : m.elements()) {
        EXPECT_NEAR(e(0, 0).real(), 0.5, 1e-12);
        EXPECT_NEAR(std::abs(e(0, 1)), 0.5, 1e-12);
        EXPECT_NEAR(std::abs(e(0, 1).imag()), 0.0, 1e-12);
    }
}

TEST(WaveplatesToMeasurement, OrthonormalProjectors) {
    for (double q = -80.0; q <= 90.0; q += 13.7) {
        for (double h = -80.0; h <= 90.0; h += 17.9) {
            Measurement m = waveplates_to_measurement(q, h);
            EXPECT_LT(max_abs_diff(m[0] * m[1], ComplexMatrix::Zero(2, 2)), 1e-10);
            EXPECT_LT(max_abs_diff(m[0] + m[1], ComplexMatrix::Identity(2, 2)), 1e-10);
        }
    }
}

TEST(FourierProbe, Examples) {
    StateVector w0 = fourier_probe_state(0, 3);
    for (int k = 0; k < 3; k++) {
        EXPECT_NEAR(std::abs(w0(k) - 1.0 / std::sqrt(3.0)), 0.0, 1e-15);
    }
    StateVector routed = fourier_matrix(3) * fourier_probe_state(1, 3);
    EXPECT_NEAR(std::abs(routed(1) - 1.0), 0.0, 1e-12);
    StateVector w1 = fourier_probe_state(1, 2);
    EXPECT_NEAR(std::abs(w1(0) - 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(w1(1) + 1.0 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_THROW(fourier_probe_state(3, 3), ValidationError);
    for (int d = 1; d <= 6; d++) {
        for (int j = 0; j < d; j++) {
            StateVector e = fourier_matrix(d) * fourier_probe_state(j, d);
            EXPECT_NEAR(std::abs(e(j) - 1.0), 0.0, 1e-12);
        }
    }
}

TEST(PlanJson, Schema) {
    MeshPlan plan = fourier3_reference_plan();
    std::vector<std::string> labels = {"H7", "H9", "H10"};
    nlohmann::json j = nlohmann::json::parse(plan_to_json(plan, waveplates_for(plan, labels)));
    EXPECT_EQ(j.at("d"), 3);
    ASSERT_EQ(j.at("layers").size(), 3u);
    EXPECT_EQ(j.at("layers")[2].at("orientation"), "T");
    EXPECT_EQ(j.at("layers")[0].at("orientation"), "A");
    EXPECT_NEAR(j.at("layers")[1].at("theta_rad").get<double>(), std::acos(1.0 / std::sqrt(3.0)), 1e-11);
    EXPECT_EQ(j.at("output_phases_rad").size(), 3u);
    EXPECT_EQ(j.at("waveplates")[1].at("label"), "H9");
    EXPECT_TRUE(j.contains("convention"));
}

}  // namespace
}  // namespace ugame
