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

#pragma once

#include <optional>
#include <string>

#include "condsq/dynamics.hpp"
#include "condsq/wigner.hpp"

namespace condsq {

// End-time conventions, in units of g*t: the protocol end time putting the
// squeezing parameter magnitude at 1 (2 g_cs t = 1 at the J0-root amplitude),
// and the open-system end time.
double xi_unity_g_time();
inline constexpr double kOpenRunGTime = 1.2;

struct ExperimentConfig {
    SystemParams system;
    NoiseParams noise;
    int fock_cutoff = 120;
    SolverOptions solver;
    Model hamiltonian_model = Model::Cs;
    double t_end_in_g_units = 0.0;  // filled by the default factories
    std::string output_path;

    void validate() const;

    // Baseline configurations per pipeline; paper_scale selects the paper's
    // g/omega_m = 1e-4 instead of the fast desk-scale ratios.
    static ExperimentConfig protocol_defaults(bool paper_scale = false);
    static ExperimentConfig fig2_defaults(bool paper_scale = false);
    static ExperimentConfig fig4_defaults(bool paper_scale = false);
    static ExperimentConfig wigner_defaults(bool paper_scale = false);

    // Applies `key = value` overrides from a flat config file; unknown keys
    // are a hard error.
    void apply_file(const std::string& path);
    void apply_line(const std::string& line);
};

struct ProtocolResult {
    double plus_probability = 0.0;
    double minus_probability = 0.0;
    bool open = false;
    std::optional<StateVector> plus_state;
    std::optional<StateVector> minus_state;
    std::optional<DensityMatrix> plus_state_open;
    std::optional<DensityMatrix> minus_state_open;
    double fidelity_plus_vs_analytic = 0.0;
    double fidelity_minus_vs_analytic = 0.0;
    bool minus_branch_degenerate = false;
};

// Evolves |0> (x) (|e>+|g>)/sqrt(2) under the configured model to
// t = t_end_in_g_units / g, measures the qubit along x, and scores both
// branches against the analytic code words at xi = 2i g_cs t. Any nonzero
// noise rate switches to the master equation (interaction frame required).
ProtocolResult run_protocol(const ExperimentConfig& config);

struct SweepRow {
    double x;
    double fidelity;
};

// Drive-amplitude sensitivity: fidelity between the post-measurement
// symmetric branches of the rotating-frame evolution and of the conditional
// squeezing evolution, per a_bar grid point, at fixed end time.
std::vector<SweepRow> sweep_amplitude(const ExperimentConfig& config,
                                      std::span<const double> a_bar_grid);

// Coupling-strength sensitivity at the J0-root amplitude; the end time is
// rescaled per point so 2 g_cs t_end = 2 J2(a_bar) * t_end_in_g_units stays
// fixed.
std::vector<SweepRow> sweep_coupling(const ExperimentConfig& config,
                                     std::span<const double> g_over_omega_m_grid);

struct MomentRow {
    double r;
    int p;
    double ratio;
};
std::vector<MomentRow> moment_ratio_curves(std::span<const double> r_grid,
                                           std::span<const int> p_set);

struct RateCombo {
    double gamma1_over_g;
    double gamma_phi_over_g;
};
struct OpenCurveRow {
    RateCombo combo;
    double g_t;
    double fidelity;
};

// Open-system preparation fidelity: for each rate combo, the master-equation
// plus branch scored against the closed-system plus branch at matching times
// up to g*t = 1.2.
std::vector<OpenCurveRow> open_fidelity_curves(const ExperimentConfig& config,
                                               std::span<const RateCombo> combos);
std::vector<RateCombo> default_rate_combos();

enum class SnapshotKind { Fig1Sym, Fig1Antisym, OpenEndstate };

struct WignerSnapshotResult {
    PhaseSpaceGrid grid;
    std::string label;
    double xi_r = 0.0;
    double xi_phi = 0.0;
    int cutoff = 0;
};
WignerSnapshotResult wigner_snapshot(const ExperimentConfig& config, SnapshotKind which);

struct ValidationCheck {
    std::string name;
    double tolerance;
    double measured;
    bool pass;
};
struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const;
    std::string to_json() const;
};

// Runs the cross-module invariant suite; failures are report content.
ValidationReport validate();

// Serialization: UTF-8 CSV, '.' decimal separator, LF line endings, floats
// with 17 significant digits.
std::string format_double(double value);
std::string sweep_table_csv(const std::string& x_column, std::span<const SweepRow> rows);
std::string moment_table_csv(std::span<const MomentRow> rows);
std::string open_table_csv(std::span<const OpenCurveRow> rows);
std::string combo_label(const RateCombo& combo);
std::string wigner_grid_csv(const PhaseSpaceGrid& grid);
std::string wigner_sidecar_json(const WignerSnapshotResult& snapshot);
void write_text_file(const std::string& path, const std::string& contents);

// Model name <-> config string mapping shared by config files and the CLI.
Model parse_model(const std::string& name);
std::string model_name(Model model);

}  // namespace condsq
