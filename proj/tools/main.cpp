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

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "condsq/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitNumericalFailure = 3;

struct CommonArgs {
    std::string config_path;
    std::string out_path;
    bool paper_scale = false;
    int cutoff = 0;
};

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "Configuration file (key = value lines)");
    cmd->add_option("--out", args.out_path, "Output file path");
    cmd->add_flag("--paper-scale", args.paper_scale,
                  "Run at the full paper parameters (g/omega_m = 1e-4) instead of desk scale");
    cmd->add_option("--cutoff", args.cutoff, "Fock cutoff override");
}

condsq::ExperimentConfig finalize(condsq::ExperimentConfig config, const CommonArgs& args) {
    if (!args.config_path.empty()) config.apply_file(args.config_path);
    if (args.cutoff > 0) config.fock_cutoff = args.cutoff;
    if (!args.out_path.empty()) config.output_path = args.out_path;
    config.validate();
    return config;
}

std::vector<double> amplitude_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 80; ++i) grid.push_back(0.5 + 0.05 * i);
    return grid;
}

std::vector<double> coupling_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 8; ++k) grid.push_back(std::pow(10.0, -3.0 + 0.25 * k));
    return grid;
}

std::vector<double> r_grid() {
    std::vector<double> grid;
    for (int i = 1; i <= 30; ++i) grid.push_back(0.1 * i);
    return grid;
}

std::string sidecar_path(const std::string& csv_path) {
    if (csv_path.size() > 4 && csv_path.substr(csv_path.size() - 4) == ".csv") {
        return csv_path.substr(0, csv_path.size() - 4) + ".json";
    }
    return csv_path + ".json";
}

int run(int argc, char** argv) {
    CLI::App app{"conditional-squeezing simulator for qubit-oscillator systems"};
    app.require_subcommand(1);

    CommonArgs protocol_args, fig2a_args, fig2b_args, fig3_args, fig4_args, wigner_args,
        validate_args;
    std::string wigner_which = "fig1_sym";

    auto* protocol_cmd =
        app.add_subcommand("protocol", "Run the state-preparation protocol once");
    add_common_flags(protocol_cmd, protocol_args);
    auto* fig2a_cmd =
        app.add_subcommand("fig2a", "Drive-amplitude sensitivity sweep (a_bar grid)");
    add_common_flags(fig2a_cmd, fig2a_args);
    auto* fig2b_cmd =
        app.add_subcommand("fig2b", "Coupling-strength sensitivity sweep (g/omega_m grid)");
    add_common_flags(fig2b_cmd, fig2b_args);
    auto* fig3_cmd = app.add_subcommand("fig3", "Logical-state moment ratio curves");
    add_common_flags(fig3_cmd, fig3_args);
    auto* fig4_cmd = app.add_subcommand("fig4", "Open-system preparation fidelity curves");
    add_common_flags(fig4_cmd, fig4_args);
    auto* wigner_cmd = app.add_subcommand("wigner", "Wigner-function snapshot grids");
    add_common_flags(wigner_cmd, wigner_args);
    wigner_cmd->add_option("--which", wigner_which, "fig1_sym | fig1_antisym | open_endstate");
    auto* validate_cmd = app.add_subcommand("validate", "Run the cross-module invariant suite");
    add_common_flags(validate_cmd, validate_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    if (protocol_cmd->parsed()) {
        const auto config = finalize(
            condsq::ExperimentConfig::protocol_defaults(protocol_args.paper_scale), protocol_args);
        const auto result = condsq::run_protocol(config);
        std::string summary;
        summary += "plus_probability=" + condsq::format_double(result.plus_probability) + "\n";
        summary += "minus_probability=" + condsq::format_double(result.minus_probability) + "\n";
        summary += "fidelity_plus_vs_analytic=" +
                   condsq::format_double(result.fidelity_plus_vs_analytic) + "\n";
        summary += "fidelity_minus_vs_analytic=" +
                   condsq::format_double(result.fidelity_minus_vs_analytic) + "\n";
        summary += std::string("open=") + (result.open ? "true" : "false") + "\n";
        std::cout << summary;
        if (!config.output_path.empty()) condsq::write_text_file(config.output_path, summary);
        return kExitOk;
    }
    if (fig2a_cmd->parsed()) {
        auto config =
            finalize(condsq::ExperimentConfig::fig2_defaults(fig2a_args.paper_scale), fig2a_args);
        if (config.output_path.empty()) config.output_path = "fig2a.csv";
        const auto rows = condsq::sweep_amplitude(config, amplitude_grid());
        condsq::write_text_file(config.output_path, condsq::sweep_table_csv("a_bar", rows));
        std::cout << "wrote " << config.output_path << " (" << rows.size() << " rows)\n";
        return kExitOk;
    }
    if (fig2b_cmd->parsed()) {
        auto config =
            finalize(condsq::ExperimentConfig::fig2_defaults(fig2b_args.paper_scale), fig2b_args);
        if (config.output_path.empty()) config.output_path = "fig2b.csv";
        const auto rows = condsq::sweep_coupling(config, coupling_grid());
        condsq::write_text_file(config.output_path,
                                condsq::sweep_table_csv("g_over_omega_m", rows));
        std::cout << "wrote " << config.output_path << " (" << rows.size() << " rows)\n";
        return kExitOk;
    }
    if (fig3_cmd->parsed()) {
        auto config =
            finalize(condsq::ExperimentConfig::protocol_defaults(fig3_args.paper_scale), fig3_args);
        if (config.output_path.empty()) config.output_path = "fig3.csv";
        const std::vector<int> p_set = {1, 2, 3, 4};
        const auto rows = condsq::moment_ratio_curves(r_grid(), p_set);
        condsq::write_text_file(config.output_path, condsq::moment_table_csv(rows));
        std::cout << "wrote " << config.output_path << " (" << rows.size() << " rows)\n";
        return kExitOk;
    }
    if (fig4_cmd->parsed()) {
        auto config =
            finalize(condsq::ExperimentConfig::fig4_defaults(fig4_args.paper_scale), fig4_args);
        if (config.output_path.empty()) config.output_path = "fig4.csv";
        const auto combos = condsq::default_rate_combos();
        const auto rows = condsq::open_fidelity_curves(config, combos);
        condsq::write_text_file(config.output_path, condsq::open_table_csv(rows));
        std::cout << "wrote " << config.output_path << " (" << rows.size() << " rows)\n";
        return kExitOk;
    }
    if (wigner_cmd->parsed()) {
        condsq::SnapshotKind kind;
        condsq::ExperimentConfig base;
        if (wigner_which == "fig1_sym") {
            kind = condsq::SnapshotKind::Fig1Sym;
            base = condsq::ExperimentConfig::wigner_defaults(wigner_args.paper_scale);
        } else if (wigner_which == "fig1_antisym") {
            kind = condsq::SnapshotKind::Fig1Antisym;
            base = condsq::ExperimentConfig::wigner_defaults(wigner_args.paper_scale);
        } else if (wigner_which == "open_endstate") {
            kind = condsq::SnapshotKind::OpenEndstate;
            base = condsq::ExperimentConfig::fig4_defaults(wigner_args.paper_scale);
            base.noise.gamma_1 = base.system.g;
            base.noise.gamma_phi = base.system.g;
        } else {
            std::cerr << "wigner: unknown --which '" << wigner_which << "'\n";
            return kExitConfigError;
        }
        auto config = finalize(base, wigner_args);
        if (config.output_path.empty()) config.output_path = "wigner_" + wigner_which + ".csv";
        const auto snapshot = condsq::wigner_snapshot(config, kind);
        condsq::write_text_file(config.output_path, condsq::wigner_grid_csv(snapshot.grid));
        condsq::write_text_file(sidecar_path(config.output_path),
                                condsq::wigner_sidecar_json(snapshot));
        std::cout << "wrote " << config.output_path << " and " << sidecar_path(config.output_path)
                  << "\n";
        return kExitOk;
    }
    if (validate_cmd->parsed()) {
        const auto report = condsq::validate();
        const std::string json = report.to_json();
        std::cout << json;
        if (!validate_args.out_path.empty()) {
            condsq::write_text_file(validate_args.out_path, json);
        }
        return report.all_pass() ? kExitOk : kExitValidationFailure;
    }
    return kExitConfigError;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const condsq::ConfigError& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return kExitConfigError;
    } catch (const condsq::TruncationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    } catch (const condsq::SolverError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumericalFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumericalFailure;
    }
}
