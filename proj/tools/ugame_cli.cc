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

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "ugame/game.h"
#include "ugame/json_io.h"
#include "ugame/mesh.h"
#include "ugame/optimizer.h"
#include "ugame/pipeline.h"

namespace {

using ugame::ComplexMatrix;
using ugame::DensityMatrix;
using ugame::ValidationError;
using Json = nlohmann::ordered_json;

struct ReferencePointD2 {
    double gamma;
    double p_exp;
};

constexpr ReferencePointD2 kReferenceQubitPoints[] = {
    {0.9918, 0.9953}, {0.9221, 0.9776}, {0.8493, 0.9550}, {0.7509, 0.9301}, {0.6458, 0.9079}, {0.5466, 0.8891},
    {0.4396, 0.8844}, {0.3369, 0.8702}, {0.2138, 0.8618}, {0.1662, 0.8610}, {0.0686, 0.8531},
};

struct ReferenceSettingD3 {
    double h1, h2, q, h, p_theory, p_exp, p_exp_err;
};

constexpr ReferenceSettingD3 kReferenceQutritSettings[] = {
    {22.6, 5.9, 55.0, 12.0, 0.9669, 0.9521, 0.0011},  {24.6, 5.9, 50.4, 9.0, 0.9731, 0.9466, 0.0011},
    {26.6, 5.9, 45.0, 6.0, 0.9753, 0.9611, 0.0010},   {28.6, 5.9, -50.6, 36.3, 0.9731, 0.9628, 0.0009},
    {30.6, 5.9, -56.0, 33.4, 0.9664, 0.9455, 0.0011}, {26.6, 1.9, -47.0, 38.0, 0.9701, 0.9419, 0.0012},
    {26.6, 9.9, 46.2, 6.5, 0.9702, 0.9282, 0.0012},   {26.6, 17.9, 46.1, 6.5, 0.9326, 0.9281, 0.0013},
};

constexpr double kExperimentGammaD3 = 0.9918;

double round6(double x) {
    double r = std::round(x * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;
}

using Cell = std::variant<std::monostate, double, long long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string cell_text(const Cell &c) {
    struct {
        std::string operator()(std::monostate) const {
            return "";
        }
        std::string operator()(double x) const {
            return fmt::format("{:.6f}", round6(x));
        }
        std::string operator()(long long x) const {
            return std::to_string(x);
        }
        std::string operator()(const std::string &s) const {
            return s;
        }
    } visitor;
    return std::visit(visitor, c);
}

Json cell_json(const Cell &c) {
    struct {
        Json operator()(std::monostate) const {
            return nullptr;
        }
        Json operator()(double x) const {
            return round6(x);
        }
        Json operator()(long long x) const {
            return x;
        }
        Json operator()(const std::string &s) const {
            return s;
        }
    } visitor;
    return std::visit(visitor, c);
}

std::string table_csv(const Table &t) {
    std::ostringstream out;
    for (std::size_t k = 0; k < t.columns.size(); k++) {
        out << (k ? "," : "") << t.columns[k];
    }
    out << '\n';
    for (const auto &row : t.rows) {
        for (std::size_t k = 0; k < row.size(); k++) {
            out << (k ? "," : "") << cell_text(row[k]);
        }
        out << '\n';
    }
    return out.str();
}

Json table_json(const Table &t) {
    Json rows = Json::array();
    for (const auto &row : t.rows) {
        Json obj = Json::object();
        for (std::size_t k = 0; k < row.size(); k++) {
            obj[t.columns[k]] = cell_json(row[k]);
        }
        rows.push_back(std::move(obj));
    }
    return rows;
}

Json matrix_json6(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); r++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); c++) {
            row.push_back({round6(m(r, c).real()), round6(m(r, c).imag())});
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json vector_json6(const ugame::StateVector &v) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < v.size(); k++) {
        out.push_back({round6(v(k).real()), round6(v(k).imag())});
    }
    return out;
}

struct OutputOptions {
    std::string format = "csv";
    std::string path;
};

void emit(const OutputOptions &opts, const std::string &text) {
    if (opts.path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.path, std::ios::binary);
    if (!out) {
        throw ValidationError("cannot write " + opts.path);
    }
    out << text;
}

void emit(const OutputOptions &opts, const Table &table, const std::optional<Json> &json = std::nullopt) {
    if (opts.format == "json") {
        emit(opts, (json ? *json : table_json(table)).dump(2) + "\n");
    } else {
        emit(opts, table_csv(table));
    }
}

Cell reference_d2_value(double gamma) {
    for (const auto &p : kReferenceQubitPoints) {
        if (std::abs(p.gamma - gamma) < 1e-9) {
            return p.p_exp;
        }
    }
    return std::monostate{};
}

void cmd_curve_d2(const OutputOptions &out, std::vector<double> gammas, bool paper_points, double v) {
    if (paper_points) {
        std::vector<double> all;
        for (const auto &p : kReferenceQubitPoints) {
            all.push_back(p.gamma);
        }
        all.insert(all.end(), gammas.begin(), gammas.end());
        gammas = std::move(all);
    }
    if (gammas.empty()) {
        throw ValidationError("curve-d2: no gamma values given (use --gamma or --paper-points)");
    }
    Table t{{"gamma", "p_max_analytic", "p_guess_model", "p_guess_paper"}, {}};
    for (double gamma : gammas) {
        ugame::OptimizationResult opt = ugame::optimize_d2(gamma);
        ugame::NoiseModel noise;
        noise.visibility_v = v;
        noise.register_state = ugame::register_state(gamma);
        ugame::DetectionTable sim =
            ugame::simulate_d2(noise, DensityMatrix::from_pure(opt.best_state), opt.best_measurement);
        t.rows.push_back({gamma, ugame::pguess_max_d2(gamma), sim.p_guess, reference_d2_value(gamma)});
    }
    emit(out, t);
}

void cmd_table2(const OutputOptions &out) {
    Table t{{"state", "h1_deg", "h2_deg", "q_deg", "h_deg", "a0_re", "a0_im", "a1_re", "a1_im", "a2_re", "a2_im",
             "p_guess_theory", "p_guess_paper", "p_guess_paper_exp", "p_guess_paper_exp_err"},
            {}};
    const ugame::GameConfig config{3, kExperimentGammaD3};
    long long index = 1;
    for (const auto &s : kReferenceQutritSettings) {
        ugame::StateVector psi = ugame::prep_state_d3(s.h1, s.h2);
        ugame::Measurement m = ugame::waveplates_to_measurement(s.q, s.h).with_zero_outcome(1);
        double p = ugame::evaluate_strategy(config, DensityMatrix::from_pure(psi), m);
        std::vector<Cell> row{index++, s.h1, s.h2, s.q, s.h};
        for (Eigen::Index k = 0; k < 3; k++) {
            row.emplace_back(psi(k).real());
            row.emplace_back(psi(k).imag());
        }
        row.insert(row.end(), {p, s.p_theory, s.p_exp, s.p_exp_err});
        t.rows.push_back(std::move(row));
    }
    emit(out, t);
}

void cmd_fourier(const OutputOptions &out, double v) {
    ugame::RealMatrix p = ugame::simulate_fourier_test(v);
    Table t{{"output_mode", "w0", "w1", "w2"}, {}};
    for (Eigen::Index i = 0; i < p.rows(); i++) {
        t.rows.push_back({static_cast<long long>(i), p(i, 0), p(i, 1), p(i, 2)});
    }
    emit(out, t);
}

void cmd_decompose(const OutputOptions &out, const std::string &path) {
    ComplexMatrix u = ugame::matrix_from_json(ugame::read_json_file(path));
    ugame::MeshPlan plan = ugame::clements_decompose(u);
    std::vector<ugame::WaveplateSetting> plates = ugame::waveplates_for(plan);
    if (out.format == "json") {
        emit(out, ugame::plan_to_json(plan, plates) + "\n");
        return;
    }
    Table t{{"kind", "index", "mode_m", "mode_n", "theta", "phi", "orientation", "waveplate", "waveplate_deg"}, {}};
    const std::size_t k = plan.layers.size();
    for (std::size_t idx = 0; idx < k; idx++) {
        const ugame::BeamSplitterOp &op = plan.layers[idx];
        const ugame::WaveplateSetting &w = plates[k - 1 - idx];
        t.rows.push_back({std::string("layer"), static_cast<long long>(idx), static_cast<long long>(op.mode_m),
                          static_cast<long long>(op.mode_n), op.theta, op.phi,
                          std::string(op.orientation == ugame::LayerOrientation::kT ? "T" : "A"), w.label, w.deg});
    }
    for (std::size_t m = 0; m < plan.output_phases.size(); m++) {
        t.rows.push_back({std::string("phase"), static_cast<long long>(m), std::monostate{}, std::monostate{},
                          std::monostate{}, plan.output_phases[m], std::monostate{}, std::monostate{},
                          std::monostate{}});
    }
    emit(out, t);
}

void cmd_optimize(const OutputOptions &out, int d, double gamma, int restarts, std::uint64_t seed) {
    ugame::GameConfig config{d, gamma};
    config.validate();
    ugame::OptimizationResult r = ugame::optimize_numeric(config, restarts, seed);
    Table t{{"d", "gamma", "p_guess", "seed", "restarts", "best_restart"}, {}};
    std::vector<Cell> row{static_cast<long long>(d), gamma, r.p_guess, static_cast<long long>(seed),
                          static_cast<long long>(r.restarts_used), static_cast<long long>(r.best_restart)};
    for (Eigen::Index k = 0; k < r.best_state.size(); k++) {
        t.columns.push_back(fmt::format("psi{}_re", k));
        t.columns.push_back(fmt::format("psi{}_im", k));
        row.emplace_back(r.best_state(k).real());
        row.emplace_back(r.best_state(k).imag());
    }
    t.rows.push_back(std::move(row));
    Json j = Json::object();
    j["d"] = d;
    j["gamma"] = round6(gamma);
    j["p_guess"] = round6(r.p_guess);
    j["seed"] = seed;
    j["restarts"] = r.restarts_used;
    j["best_restart"] = r.best_restart;
    j["state"] = vector_json6(r.best_state);
    Json elems = Json::array();
    for (const ComplexMatrix &e : r.best_measurement.elements()) {
        elems.push_back(matrix_json6(e));
    }
    j["measurement"] = std::move(elems);
    emit(out, t, j);
}

void cmd_simulate(const OutputOptions &out, const std::string &path) {
    ugame::SimulationConfig cfg = ugame::simulation_config_from_json(ugame::read_json_file(path));
    if (!cfg.measurement) {
        throw ValidationError("simulate: config needs a 'measurement'");
    }
    ugame::DetectionTable dt = cfg.d == 2 ? ugame::simulate_d2(cfg.noise, cfg.rho_b, *cfg.measurement)
                                          : ugame::simulate_d3(cfg.noise, cfg.rho_b, *cfg.measurement);
    Table t{{"quantity", "value"}, {}};
    for (Eigen::Index i = 0; i < dt.probs.rows(); i++) {
        for (Eigen::Index j = 0; j < dt.probs.cols(); j++) {
            t.rows.push_back({fmt::format("P{}{}", i, j), dt.probs(i, j)});
        }
    }
    t.rows.push_back({std::string("p_guess"), dt.p_guess});
    Json j = Json::object();
    Json probs = Json::array();
    for (Eigen::Index i = 0; i < dt.probs.rows(); i++) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < dt.probs.cols(); c++) {
            row.push_back(round6(dt.probs(i, c)));
        }
        probs.push_back(std::move(row));
    }
    j["d"] = cfg.d;
    j["probs"] = std::move(probs);
    j["p_guess"] = round6(dt.p_guess);
    emit(out, t, j);
}

void cmd_estimate_gamma(const OutputOptions &out, const std::string &path, double step) {
    DensityMatrix rho = ugame::register_state_from_json(ugame::read_json_file(path));
    ugame::GammaEstimate e = ugame::estimate_gamma(rho, step);
    Table t{{"gamma", "fidelity"}, {{e.gamma, e.fidelity}}};
    Json j = Json::object();
    j["gamma"] = round6(e.gamma);
    j["fidelity"] = round6(e.fidelity);
    emit(out, t, j);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Uncertainty guessing game: models, optimizers and experiment reproductions"};
    app.require_subcommand(1);
    app.fallthrough();

    OutputOptions out;
    app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out.path, "Write output to PATH instead of stdout");

    std::vector<double> gammas;
    bool paper_points = false;
    double v_d2 = 0.99;
    auto *curve = app.add_subcommand("curve-d2", "Guessing probability versus register coherence for d = 2");
    curve->add_option("--gamma", gammas, "Register coherence (repeatable)");
    curve->add_flag("--paper-points", paper_points, "Include the 11 reference gamma values with measured results");
    curve->add_option("--v", v_d2, "Layer visibility for the noisy model")->capture_default_str();

    auto *table2 = app.add_subcommand("table2", "Theory values for the eight d = 3 settings");

    double v_fourier = 0.98;
    auto *fourier = app.add_subcommand("fourier", "Fourier-basis detection probabilities through the noisy mesh");
    fourier->add_option("--v", v_fourier, "Interferometer visibility")->capture_default_str();
    fourier->add_option("visibility", v_fourier, "Interferometer visibility (positional form)");

    std::string matrix_path;
    auto *decompose = app.add_subcommand("decompose", "Compile a unitary into a beam-splitter mesh");
    decompose->add_option("matrix", matrix_path, "JSON file with the unitary")->required();

    int d = 3;
    double gamma = 1.0;
    int restarts = 64;
    std::uint64_t seed = 0;
    auto *optimize = app.add_subcommand("optimize", "Search for the best probe state and measurement");
    optimize->add_option("d", d, "Dimension")->required();
    optimize->add_option("coherence", gamma, "Register coherence")->capture_default_str();
    optimize->add_option("--gamma", gamma, "Register coherence (option form)");
    optimize->add_option("--restarts", restarts, "Number of random restarts")->capture_default_str();
    optimize->add_option("--seed", seed, "Random seed")->capture_default_str();

    std::string config_path;
    auto *simulate = app.add_subcommand("simulate", "Noisy detection table from a JSON configuration");
    simulate->add_option("config", config_path, "JSON configuration file")->required();

    std::string state_path;
    double step = 1e-4;
    auto *estimate = app.add_subcommand("estimate-gamma", "Closest ideal register coherence by fidelity");
    estimate->add_option("state", state_path, "JSON file with a 2x2 matrix or {\"pauli\": [x, y, z]}")->required();
    estimate->add_option("--step", step, "Grid step")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*curve) {
            cmd_curve_d2(out, gammas, paper_points, v_d2);
        } else if (*table2) {
            cmd_table2(out);
        } else if (*fourier) {
            cmd_fourier(out, v_fourier);
        } else if (*decompose) {
            cmd_decompose(out, matrix_path);
        } else if (*optimize) {
            cmd_optimize(out, d, gamma, restarts, seed);
        } else if (*simulate) {
            cmd_simulate(out, config_path);
        } else if (*estimate) {
            cmd_estimate_gamma(out, state_path, step);
        }
    } catch (const ValidationError &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
