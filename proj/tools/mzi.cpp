// Copyright 2026 The mzi-phase Authors
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

// mzi: outcome probabilities, Fisher information, fidelity and posteriors
// for a lossy Mach-Zehnder interferometer.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mzi/cli/commands.hpp"

namespace {

struct Options {
    std::vector<std::string> states;
    std::string prep;
    std::string rx_grid;
    std::string ry_grid;
    std::string phi_grid;
    std::string format = "csv";
};

void add_common(CLI::App* sub, mzi::cli::RunConfig& cfg, Options& opt, bool with_state) {
    if (with_state) {
        sub->add_option("--state", opt.states, "input state: vac, fock:N[:M], noon:N, mix:name=p:state,...");
        sub->add_option("--prep", opt.prep, "preparation mixture (same grammar as --state)");
        sub->add_option("--detect", cfg.detect, "ideal, inconclusive, flip:px=P, or a JSON file");
        sub->add_option("--prior", cfg.prior, "uniform or a CSV file of phi,weight");
        sub->add_option("--tol", cfg.tol, "fidelity quadrature tolerance");
    }
    sub->add_option("--rx", cfg.r_x, "loss amplitude in the upper arm");
    sub->add_option("--ry", cfg.r_y, "loss amplitude in the lower arm");
    sub->add_option("--rx-grid", opt.rx_grid, "r_x sweep start:stop:count");
    sub->add_option("--ry-grid", opt.ry_grid, "r_y sweep start:stop:count");
    sub->add_flag("--equal-loss", cfg.equal_loss, "set r_y = r_x for every swept point");
    sub->add_option("--phi-grid", opt.phi_grid, "phase grid start:stop:count (radians; pi allowed)");
    sub->add_option("--transfer", cfg.transfer, "lossy, lossless-2x2 or sin2");
    sub->add_option("--out", cfg.out, "output file (default: standard output)");
    sub->add_option("--format", opt.format, "csv or json");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase estimation metrics for a lossy Mach-Zehnder interferometer"};
    app.require_subcommand(1);

    mzi::cli::RunConfig cfg;
    Options opt;

    auto* probs = app.add_subcommand("probs", "outcome probabilities on a phase grid");
    auto* fisher = app.add_subcommand("fisher", "classical Fisher information and Cramer-Rao bound");
    auto* fid = app.add_subcommand("fidelity", "mutual information between outcome and phase, in bits");
    auto* post = app.add_subcommand("posterior", "Bayesian phase posterior for one outcome");
    auto* sweep = app.add_subcommand("sweep", "metric over states and loss grids");
    auto* smatrix = app.add_subcommand("smatrix", "scattering-matrix entries and unitarity defect");

    for (auto* sub : {probs, fisher, fid, post, sweep}) add_common(sub, cfg, opt, true);
    add_common(smatrix, cfg, opt, false);
    post->add_option("--outcome", cfg.outcome, "n,m or inconclusive")->required();
    post->add_option("--grid-size", cfg.grid_size, "posterior grid points (>= 16)");
    sweep->add_option("--metric", cfg.metric, "fidelity, fisher or probs");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : mzi::cli::kExitConfig;
    }

    std::string command;
    for (auto* sub : app.get_subcommands()) command = sub->get_name();

    try {
        cfg.states = opt.states;
        if (!opt.prep.empty()) cfg.prep = opt.prep;
        if (!opt.rx_grid.empty()) cfg.rx_grid = mzi::cli::parse_grid(opt.rx_grid);
        if (!opt.ry_grid.empty()) cfg.ry_grid = mzi::cli::parse_grid(opt.ry_grid);
        if (!opt.phi_grid.empty()) cfg.phi_grid = mzi::cli::parse_grid(opt.phi_grid);
        cfg.format = mzi::cli::parse_format(opt.format);
    } catch (const mzi::cli::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return mzi::cli::kExitConfig;
    }
    return mzi::cli::run_command(command, cfg, std::cout, std::cerr);
}
