// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "CLI11.hpp"

#include "twpad/cli.hpp"

int main(int argc, char** argv) {
    twpad::RunConfig cfg;
    CLI::App app{"twpad: padded decompositions and covers from tree-ordered nets"};
    app.fallthrough();
    app.require_subcommand(1, 1);

    app.add_option("--graph", cfg.graph_path, "edge list (p ge n m / e u v w)");
    app.add_option("--td", cfg.td_path, "tree decomposition in .td format");
    app.add_option("--delta", cfg.delta, "scale Delta");
    app.add_option("--alpha", cfg.alpha, "net packing radius multiplier")->capture_default_str();
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--trials", cfg.trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--samples", cfg.samples, "decompose: number of partitions")->capture_default_str();
    app.add_option("--seeds", cfg.seeds, "verify: partitions in the seed sweep")->capture_default_str();
    app.add_option("--gamma", cfg.gammas, "padding radius fractions (repeatable)");
    app.add_option("--oracle-cap", cfg.oracle_cap, "largest vertex set for Floyd-Warshall")->capture_default_str();
    app.add_option("--out", cfg.out, "output file (default: stdout)");

    app.add_subcommand("convert", "tree decomposition to tree partition, with isometry check");
    app.add_subcommand("net", "tree-ordered net and packing profile");
    app.add_subcommand("decompose", "sample padded decompositions");
    app.add_subcommand("cover", "sparse cover");
    app.add_subcommand("partition-cover", "padded partition cover");
    app.add_subcommand("verify", "full invariant report");
    app.add_subcommand("padding-estimate", "Monte Carlo padding rates over a gamma grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : twpad::kExitInput;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    return twpad::run(cfg, std::cout, std::cerr);
}
