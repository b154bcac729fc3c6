// Copyright 2025 The condsqueeze Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "condsq/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "condsq/detail/parallel.hpp"

namespace condsq {

double xi_unity_g_time() { return 0.5 / bessel_j(2, kFirstJ0Root); }

namespace {

constexpr int kOpenCurveSamples = 61;

// Cap adaptive steps at a twentieth of the fastest retained period.
SolverOptions with_auto_cap(SolverOptions opts, Model model, const SystemParams& params) {
    if (opts.max_step == 0.0) {
        const double w_fast = fastest_frequency(model, params);
        if (w_fast > 0.0) opts.max_step = 2.0 * M_PI / (20.0 * w_fast);
    }
    return opts;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value '" + value + "' for key '" + key + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int parsed = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value '" + value + "' for key '" + key + "'");
    }
}

}  // namespace

Model parse_model(const std::string& name) {
    if (name == "lab") return Model::Lab;
    if (name == "interaction") return Model::Interaction;
    if (name == "rotating") return Model::Rotating;
    if (name == "rwa") return Model::Rwa;
    if (name == "cs") return Model::Cs;
    throw ConfigError("config: unknown hamiltonian_model '" + name + "'");
}

std::string model_name(Model model) {
    switch (model) {
        case Model::Lab: return "lab";
        case Model::Interaction: return "interaction";
        case Model::Rotating: return "rotating";
        case Model::Rwa: return "rwa";
        case Model::Cs: return "cs";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    system.validate();
    noise.validate();
    if (fock_cutoff < 1) throw ConfigError("config: fock_cutoff must be >= 1");
    solver.validate();
    if (t_end_in_g_units < 0.0) throw ConfigError("config: t_end_in_g_units must be >= 0");
}

ExperimentConfig ExperimentConfig::protocol_defaults(bool paper_scale) {
    ExperimentConfig config;
    config.system.g = paper_scale ? 1e-4 : 1e-3;
    config.hamiltonian_model = Model::Cs;
    config.fock_cutoff = 120;
    config.t_end_in_g_units = xi_unity_g_time();
    config.solver.rel_tol = 1e-9;
    config.solver.abs_tol = 1e-12;
    return config;
}

ExperimentConfig ExperimentConfig::fig2_defaults(bool paper_scale) {
    ExperimentConfig config;
    config.system.g = paper_scale ? 1e-4 : 1e-3;
    config.hamiltonian_model = Model::Rotating;
    config.fock_cutoff = 60;
    config.t_end_in_g_units = xi_unity_g_time();
    config.solver.rel_tol = 1e-8;
    config.solver.abs_tol = 1e-12;
    return config;
}

ExperimentConfig ExperimentConfig::fig4_defaults(bool paper_scale) {
    ExperimentConfig config;
    config.system.g = paper_scale ? 1e-4 : 1e-2;
    config.hamiltonian_model = Model::Interaction;
    config.fock_cutoff = 60;
    config.t_end_in_g_units = kOpenRunGTime;
    config.solver.rel_tol = 1e-7;
    config.solver.abs_tol = 1e-11;
    config.noise.gamma_m = 0.01 * config.system.g;
    config.noise.n_m_th = 1.0;
    return config;
}

ExperimentConfig ExperimentConfig::wigner_defaults(bool paper_scale) {
    ExperimentConfig config = protocol_defaults(paper_scale);
    config.fock_cutoff = 120;
    return config;
}

void ExperimentConfig::apply_line(const std::string& raw) {
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') return;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("config: expected 'key = value' in '" + line + "'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "system.omega_q") system.omega_q = parse_double(key, value);
    else if (key == "system.omega_m") system.omega_m = parse_double(key, value);
    else if (key == "system.omega_d") system.omega_d = parse_double(key, value);
    else if (key == "system.amplitude_A") system.amplitude_A = parse_double(key, value);
    else if (key == "system.g") system.g = parse_double(key, value);
    else if (key == "noise.gamma_1") noise.gamma_1 = parse_double(key, value);
    else if (key == "noise.gamma_phi") noise.gamma_phi = parse_double(key, value);
    else if (key == "noise.gamma_m") noise.gamma_m = parse_double(key, value);
    else if (key == "noise.n_m_th") noise.n_m_th = parse_double(key, value);
    else if (key == "fock_cutoff") fock_cutoff = parse_int(key, value);
    else if (key == "solver.method") {
        if (value == "adaptive_embedded") solver.method = SolverMethod::AdaptiveEmbedded;
        else if (value == "fixed_rk4") solver.method = SolverMethod::FixedRk4;
        else throw ConfigError("config: unknown solver.method '" + value + "'");
    } else if (key == "solver.rel_tol") solver.rel_tol = parse_double(key, value);
    else if (key == "solver.abs_tol") solver.abs_tol = parse_double(key, value);
    else if (key == "solver.max_step") solver.max_step = parse_double(key, value);
    else if (key == "solver.fixed_step") solver.fixed_step = parse_double(key, value);
    else if (key == "solver.store_every") solver.store_every = parse_int(key, value);
    else if (key == "hamiltonian_model") hamiltonian_model = parse_model(value);
    else if (key == "t_end_in_g_units") t_end_in_g_units = parse_double(key, value);
    else if (key == "output_path") output_path = value;
    else throw ConfigError("config: unknown key '" + key + "'");
}

void ExperimentConfig::apply_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::string line;
    while (std::getline(in, line)) apply_line(line);
}

// ---------------------------------------------------------------------------
// Protocol

namespace {

struct BranchStates {
    StateVector zero_l;
    std::optional<StateVector> one_l;
};

// Analytic code words at xi = 2i g_cs t (r = 2 g_cs t, phi = pi/2).
BranchStates analytic_branches(double r_end, const HilbertSpace& osc) {
    if (r_end > 0.0) {
        const SqueezeParam xi(r_end, M_PI / 2.0);
        return {logical_state(LogicalLabel::ZeroL, xi, osc),
                logical_state(LogicalLabel::OneL, xi, osc)};
    }
    return {StateVector::fock(osc, 0), std::nullopt};
}

StateVector closed_final_state(const ExperimentConfig& config, const HilbertSpace& space,
                               double t_end) {
    const StateVector psi0 = StateVector::plus_x_fock(space, 0);
    if (t_end <= 0.0) return psi0;
    const auto terms = hamiltonian_terms(config.hamiltonian_model, config.system, space);
    const SolverOptions opts =
        with_auto_cap(config.solver, config.hamiltonian_model, config.system);
    return evolve_state(terms, psi0, 0.0, t_end, opts).states.back();
}

}  // namespace

ProtocolResult run_protocol(const ExperimentConfig& config) {
    config.validate();
    const HilbertSpace space(config.fock_cutoff, true);
    const HilbertSpace osc = space.oscillator_only();
    const double t_end = config.t_end_in_g_units / config.system.g;
    const double r_end = 2.0 * config.system.g_cs() * t_end;
    const BranchStates analytic = analytic_branches(r_end, osc);

    ProtocolResult result;
    result.open = config.noise.any_nonzero();

    if (!result.open) {
        const auto measured = measure_qubit_x(closed_final_state(config, space, t_end));
        result.plus_probability = measured.plus.probability;
        result.minus_probability = measured.minus.probability;
        result.plus_state = measured.plus.state;
        result.minus_state = measured.minus.state;
        result.minus_branch_degenerate = measured.minus.degenerate;
        result.fidelity_plus_vs_analytic = fidelity(analytic.zero_l, measured.plus.state);
        result.fidelity_minus_vs_analytic =
            (analytic.one_l && !measured.minus.degenerate)
                ? fidelity(*analytic.one_l, measured.minus.state)
                : std::numeric_limits<double>::quiet_NaN();
        return result;
    }

    if (config.hamiltonian_model != Model::Interaction) {
        throw ConfigError("run_protocol: open runs evolve in the interaction frame; set "
                          "hamiltonian_model = interaction");
    }
    const auto terms = hamiltonian_terms(Model::Interaction, config.system, space);
    const SolverOptions opts = with_auto_cap(config.solver, Model::Interaction, config.system);
    const DensityMatrix rho0 = DensityMatrix::from_pure(StateVector::plus_x_fock(space, 0));
    const auto traj = evolve_density(terms, config.noise, rho0, 0.0, std::max(t_end, 1e-12), opts);
    const auto measured = measure_qubit_x(traj.states.back());
    result.plus_probability = measured.plus.probability;
    result.minus_probability = measured.minus.probability;
    result.plus_state_open = measured.plus.state;
    result.minus_state_open = measured.minus.state;
    result.minus_branch_degenerate = measured.minus.degenerate;
    result.fidelity_plus_vs_analytic = fidelity(analytic.zero_l, measured.plus.state);
    result.fidelity_minus_vs_analytic =
        (analytic.one_l && !measured.minus.degenerate)
            ? fidelity(*analytic.one_l, measured.minus.state)
            : std::numeric_limits<double>::quiet_NaN();
    return result;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

// Symmetric branch of the state evolved under `model` to t_end.
StateVector evolved_plus_branch(Model model, const SystemParams& params,
                                const HilbertSpace& space, double t_end,
                                const SolverOptions& opts) {
    const auto terms = hamiltonian_terms(model, params, space);
    const StateVector psi0 = StateVector::plus_x_fock(space, 0);
    const auto traj = evolve_state(terms, psi0, 0.0, t_end, with_auto_cap(opts, model, params));
    return measure_qubit_x(traj.states.back()).plus.state;
}

}  // namespace

std::vector<SweepRow> sweep_amplitude(const ExperimentConfig& config,
                                      std::span<const double> a_bar_grid) {
    config.validate();
    const HilbertSpace space(config.fock_cutoff, true);
    const double t_end = config.t_end_in_g_units / config.system.g;
    std::vector<SweepRow> rows(a_bar_grid.size());
    detail::parallel_for(static_cast<int>(a_bar_grid.size()), [&](int i) {
        SystemParams params = config.system;
        params.amplitude_A = 0.5 * a_bar_grid[i] * params.omega_d;
        const StateVector rotating =
            evolved_plus_branch(Model::Rotating, params, space, t_end, config.solver);
        const StateVector reference =
            evolved_plus_branch(Model::Cs, params, space, t_end, config.solver);
        rows[i] = {a_bar_grid[i], fidelity(rotating, reference)};
    });
    return rows;
}

std::vector<SweepRow> sweep_coupling(const ExperimentConfig& config,
                                     std::span<const double> g_over_omega_m_grid) {
    config.validate();
    const HilbertSpace space(config.fock_cutoff, true);
    std::vector<SweepRow> rows(g_over_omega_m_grid.size());
    detail::parallel_for(static_cast<int>(g_over_omega_m_grid.size()), [&](int i) {
        SystemParams params = config.system;
        params.g = g_over_omega_m_grid[i] * params.omega_m;
        const double t_end = config.t_end_in_g_units / params.g;
        const StateVector rotating =
            evolved_plus_branch(Model::Rotating, params, space, t_end, config.solver);
        const StateVector reference =
            evolved_plus_branch(Model::Cs, params, space, t_end, config.solver);
        rows[i] = {g_over_omega_m_grid[i], fidelity(rotating, reference)};
    });
    return rows;
}

std::vector<MomentRow> moment_ratio_curves(std::span<const double> r_grid,
                                           std::span<const int> p_set) {
    std::vector<MomentRow> rows;
    rows.reserve(r_grid.size() * p_set.size());
    for (double r : r_grid) {
        for (int p : p_set) rows.push_back({r, p, moment_ratio(r, p).ratio});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Open-system curves

std::vector<RateCombo> default_rate_combos() {
    return {{0.1, 0.1}, {1.0, 0.1}, {0.1, 1.0}, {1.0, 1.0}};
}

std::vector<OpenCurveRow> open_fidelity_curves(const ExperimentConfig& config,
                                               std::span<const RateCombo> combos) {
    config.validate();
    if (config.hamiltonian_model != Model::Interaction) {
        throw ConfigError("open_fidelity_curves: hamiltonian_model must be interaction");
    }
    const HilbertSpace space(config.fock_cutoff, true);
    const SystemParams& params = config.system;
    const double t_end = config.t_end_in_g_units / params.g;

    std::vector<double> sample_times(kOpenCurveSamples);
    for (int k = 0; k < kOpenCurveSamples; ++k) {
        sample_times[k] = t_end * static_cast<double>(k) / (kOpenCurveSamples - 1);
    }

    const auto terms = hamiltonian_terms(Model::Interaction, params, space);
    const StateVector psi0 = StateVector::plus_x_fock(space, 0);

    // Closed-system reference branches at the sample times, integrated at a
    // tighter tolerance than the open runs.
    SolverOptions closed_opts = config.solver;
    closed_opts.rel_tol = std::min(config.solver.rel_tol, 1e-9);
    closed_opts.abs_tol = std::min(config.solver.abs_tol, 1e-12);
    closed_opts = with_auto_cap(closed_opts, Model::Interaction, params);
    const auto closed = evolve_state(terms, psi0, 0.0, t_end, closed_opts, sample_times);
    std::vector<StateVector> closed_plus;
    closed_plus.reserve(closed.states.size());
    for (const auto& state : closed.states) {
        closed_plus.push_back(measure_qubit_x(state).plus.state);
    }

    const SolverOptions open_opts = with_auto_cap(config.solver, Model::Interaction, params);
    const DensityMatrix rho0 = DensityMatrix::from_pure(psi0);
    std::vector<OpenCurveRow> rows(combos.size() * kOpenCurveSamples);
    detail::parallel_for(static_cast<int>(combos.size()), [&](int c) {
        NoiseParams noise = config.noise;
        noise.gamma_1 = combos[c].gamma1_over_g * params.g;
        noise.gamma_phi = combos[c].gamma_phi_over_g * params.g;
        const auto traj = evolve_density(terms, noise, rho0, 0.0, t_end, open_opts, sample_times);
        for (int k = 0; k < kOpenCurveSamples; ++k) {
            const auto branch = measure_qubit_x(traj.states[k]).plus;
            rows[c * kOpenCurveSamples + k] = {combos[c], params.g * sample_times[k],
                                               fidelity(closed_plus[k], branch.state)};
        }
    });
    return rows;
}

// ---------------------------------------------------------------------------
// Wigner snapshots

WignerSnapshotResult wigner_snapshot(const ExperimentConfig& config, SnapshotKind which) {
    config.validate();
    const std::vector<double> axis = symmetric_axis(3.5, 141);
    WignerSnapshotResult snapshot;
    snapshot.cutoff = config.fock_cutoff;

    if (which == SnapshotKind::Fig1Sym || which == SnapshotKind::Fig1Antisym) {
        const HilbertSpace osc(config.fock_cutoff, false);
        const double r_end = 2.0 * config.system.g_cs() * config.t_end_in_g_units /
                             config.system.g;
        const SqueezeParam xi(r_end, M_PI / 2.0);
        snapshot.xi_r = xi.r();
        snapshot.xi_phi = xi.phi();
        const LogicalLabel label =
            which == SnapshotKind::Fig1Sym ? LogicalLabel::ZeroL : LogicalLabel::OneL;
        snapshot.label = which == SnapshotKind::Fig1Sym ? "fig1_sym" : "fig1_antisym";
        snapshot.grid = wigner(logical_state(label, xi, osc), axis, axis);
        return snapshot;
    }

    // Oscillator state of the symmetric branch at the end of the open run.
    ExperimentConfig open_config = config;
    open_config.hamiltonian_model = Model::Interaction;
    const ProtocolResult protocol = run_protocol(open_config);
    snapshot.label = "open_endstate";
    const double r_end =
        2.0 * config.system.g_cs() * config.t_end_in_g_units / config.system.g;
    snapshot.xi_r = r_end;
    snapshot.xi_phi = M_PI / 2.0;
    if (protocol.plus_state_open) {
        snapshot.grid = wigner(*protocol.plus_state_open, axis, axis);
    } else {
        snapshot.grid = wigner(*protocol.plus_state, axis, axis);
    }
    return snapshot;
}

// ---------------------------------------------------------------------------
// Serialization

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string sweep_table_csv(const std::string& x_column, std::span<const SweepRow> rows) {
    std::string out = x_column + ",fidelity\n";
    for (const auto& row : rows) {
        out += format_double(row.x) + "," + format_double(row.fidelity) + "\n";
    }
    return out;
}

std::string moment_table_csv(std::span<const MomentRow> rows) {
    std::string out = "r,p,ratio\n";
    for (const auto& row : rows) {
        out += format_double(row.r) + "," + std::to_string(row.p) + "," +
               format_double(row.ratio) + "\n";
    }
    return out;
}

std::string combo_label(const RateCombo& combo) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%g_%g", combo.gamma1_over_g, combo.gamma_phi_over_g);
    return buffer;
}

std::string open_table_csv(std::span<const OpenCurveRow> rows) {
    std::string out = "combo,g_t,fidelity\n";
    for (const auto& row : rows) {
        out += combo_label(row.combo) + "," + format_double(row.g_t) + "," +
               format_double(row.fidelity) + "\n";
    }
    return out;
}

std::string wigner_grid_csv(const PhaseSpaceGrid& grid) {
    std::string out;
    for (double x : grid.re_axis) out += "," + format_double(x);
    out += "\n";
    for (std::size_t i = 0; i < grid.im_axis.size(); ++i) {
        out += format_double(grid.im_axis[i]);
        for (std::size_t j = 0; j < grid.re_axis.size(); ++j) {
            out += "," + format_double(grid.values(static_cast<Eigen::Index>(i),
                                                   static_cast<Eigen::Index>(j)));
        }
        out += "\n";
    }
    return out;
}

std::string wigner_sidecar_json(const WignerSnapshotResult& snapshot) {
    nlohmann::json meta;
    meta["state"] = snapshot.label;
    meta["xi"] = {{"r", snapshot.xi_r}, {"phi", snapshot.xi_phi}};
    meta["cutoff"] = snapshot.cutoff;
    meta["convention"] = "2/pi displaced parity";
    return meta.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    out << contents;
    if (!out) throw ConfigError("failed writing output file '" + path + "'");
}

bool ValidationReport::all_pass() const {
    for (const auto& check : checks) {
        if (!check.pass) return false;
    }
    return true;
}

std::string ValidationReport::to_json() const {
    nlohmann::json doc;
    doc["checks"] = nlohmann::json::array();
    int failed = 0;
    for (const auto& check : checks) {
        doc["checks"].push_back({{"name", check.name},
                                 {"tolerance", check.tolerance},
                                 {"measured", check.measured},
                                 {"pass", check.pass}});
        if (!check.pass) ++failed;
    }
    doc["total"] = checks.size();
    doc["failed"] = failed;
    doc["all_pass"] = failed == 0;
    return doc.dump(2) + "\n";
}

}  // namespace condsq
