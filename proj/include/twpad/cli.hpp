// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// The command pipeline behind tools/twpad: load, convert, build the net,
// run one stage, write JSON. Exit codes: 0 ok, 1 invariant failure,
// 2 bad input or arguments.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "twpad/covers.hpp"
#include "twpad/errors.hpp"
#include "twpad/export.hpp"
#include "twpad/graph_io.hpp"
#include "twpad/net.hpp"
#include "twpad/oracle.hpp"
#include "twpad/padded.hpp"
#include "twpad/pipeline.hpp"
#include "twpad/tree.hpp"
#include "twpad/verify.hpp"

namespace twpad {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariant = 1;
inline constexpr int kExitInput = 2;

struct RunConfig {
    std::string command;
    std::string graph_path;
    std::string td_path; // empty: exact decomposition for small graphs
    Weight delta = 0.0;
    double alpha = 3.0;
    std::uint64_t seed = 0;
    std::size_t trials = 10000;
    std::size_t samples = 1;   // decompose
    std::size_t seeds = 100;   // verify sweep
    std::vector<double> gammas; // empty: {δ/4, δ/2, δ}
    std::size_t oracle_cap = kDefaultOracleCap;
    std::string out; // empty: standard output
};

inline const std::vector<std::string>& known_commands() {
    static const std::vector<std::string> names{"convert",         "net",    "decompose",       "cover",
                                                "partition-cover", "verify", "padding-estimate"};
    return names;
}

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgumentError("cannot read " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Attaches the file name to parse and validation errors.
template <class F>
auto with_file(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), 0);
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what(), "");
    }
}

inline void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw ArgumentError("cannot write " + path);
    }
    f << text;
}

inline std::string fmt(double x) {
    if (!std::isfinite(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::ostringstream ss;
    ss << std::setprecision(6) << x;
    return ss.str();
}

} // namespace detail

inline void print_table(const VerificationReport& r, std::ostream& os) {
    std::size_t w = 5;
    for (const Check& c : r.checks) {
        w = std::max(w, c.name.size());
    }
    os << std::left << std::setw(static_cast<int>(w)) << "check"
       << "  status  " << std::setw(12) << "measured" << std::setw(12) << "bound"
       << "witness\n";
    for (const Check& c : r.checks) {
        os << std::left << std::setw(static_cast<int>(w)) << c.name << "  " << std::setw(6) << status_name(c.status)
           << "  " << std::setw(12) << detail::fmt(c.measured) << std::setw(12) << detail::fmt(c.bound) << c.witness
           << "\n";
    }
    os << r.count(Status::pass) << " passed, " << r.count(Status::warn) << " warned, " << r.count(Status::fail)
       << " failed\n";
}

inline void check_config(const RunConfig& cfg) {
    bool known = false;
    for (const auto& c : known_commands()) {
        known = known || c == cfg.command;
    }
    detail::require(known, "unknown command '" + cfg.command + "'");
    detail::require(!cfg.graph_path.empty(), "--graph is required");
    detail::require(cfg.command == "convert" || cfg.delta > 0.0, "--delta must be positive");
    detail::require(cfg.alpha > 1.0, "--alpha must exceed 1");
    detail::require(cfg.command != "partition-cover" || cfg.alpha > 2.0, "partition-cover needs --alpha > 2");
    detail::require(cfg.trials >= 1, "--trials must be at least 1");
    detail::require(cfg.samples >= 1, "--samples must be at least 1");
}

inline WeightedGraph load_graph(const RunConfig& cfg) {
    const std::string text = detail::read_file(cfg.graph_path);
    return detail::with_file(cfg.graph_path, [&] { return parse_edge_list(text); });
}

inline TreeDecomposition load_decomposition(const RunConfig& cfg, const WeightedGraph& g) {
    if (cfg.td_path.empty()) {
        if (g.vertex_count() > kExactTreewidthLimit) {
            throw ArgumentError("--td is required for graphs with more than " + std::to_string(kExactTreewidthLimit) +
                                " vertices");
        }
        return exact_tree_decomposition(g);
    }
    const std::string text = detail::read_file(cfg.td_path);
    return detail::with_file(cfg.td_path, [&] { return parse_tree_decomposition(text, g); });
}

/// Runs one command; JSON goes to cfg.out or `out`, diagnostics to `err`.
inline int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        check_config(cfg);
        WeightedGraph g = load_graph(cfg);
        const TreeDecomposition td = load_decomposition(cfg, g);

        if (cfg.command == "convert") {
            const IsometricEmbedding emb = td_to_tree_partition(g, td);
            const std::vector<Check> checks = verify_embedding(g, emb, OracleMetric(g, cfg.oracle_cap));
            detail::write_output(cfg.out, convert_json(g, emb, checks).dump(2) + "\n", out);
            for (const Check& c : checks) {
                if (c.status == Status::fail) {
                    err << "error: " << c.name << " failed: " << c.witness << "\n";
                    return kExitInvariant;
                }
            }
            return kExitOk;
        }

        const Pipeline pl = pipeline_from_tree_decomposition(std::move(g), td, cfg.delta, cfg.alpha);
        const WeightedGraph& h = pl.host();
        const TreeOrderedNet& net = pl.net.net;

        if (cfg.command == "net") {
            const PackingProfile prof = packing_profile(h, net.order, net.net, cfg.delta, {2.0, 3.0, cfg.alpha});
            detail::write_output(cfg.out, net_json(pl, prof).dump(2) + "\n", out);
        } else if (cfg.command == "decompose") {
            const PaddedDecompositionSampler sampler(h, net, cfg.delta);
            std::vector<PaddedPartition> samples;
            for (std::size_t i = 0; i < cfg.samples; ++i) {
                samples.push_back(sampler.sample(trial_seed(cfg.seed, i)));
            }
            detail::write_output(cfg.out, decompose_json(pl, samples, cfg.seed).dump(2) + "\n", out);
        } else if (cfg.command == "cover") {
            detail::write_output(cfg.out, cover_json(pl, build_sparse_cover(h, net, cfg.delta)).dump(2) + "\n", out);
        } else if (cfg.command == "partition-cover") {
            const PartitionCover pc = build_partition_cover(h, net, cfg.delta);
            if (pc.count_warning) {
                err << "warning: " << pc.partitions.size() << " partitions exceed tau = " << pc.tau << "\n";
            }
            detail::write_output(cfg.out, partition_cover_json(pl, pc).dump(2) + "\n", out);
        } else if (cfg.command == "padding-estimate") {
            const std::vector<double> gammas = cfg.gammas.empty() ? default_gamma_grid(cfg.alpha) : cfg.gammas;
            const auto forward = pl.forward();
            const auto est = padding_probability_estimates(h, net, cfg.delta, gammas, cfg.trials, cfg.seed, &pl.graph,
                                                           &forward);
            detail::write_output(cfg.out, padding_json(pl, est, cfg.seed).dump(2) + "\n", out);
        } else if (cfg.command == "verify") {
            VerifyOptions opt;
            opt.oracle_cap = cfg.oracle_cap;
            opt.seeds = cfg.seeds;
            opt.trials = cfg.trials;
            opt.seed = cfg.seed;
            opt.gammas = cfg.gammas;
            const VerificationReport rep = verify_pipeline(pl, opt);
            const std::string doc = verify_json(pl, rep).dump(2) + "\n";
            if (cfg.out.empty()) {
                print_table(rep, err);
                out << doc;
            } else {
                print_table(rep, out);
                detail::write_output(cfg.out, doc, out);
            }
            return rep.passed() ? kExitOk : kExitInvariant;
        }
        return kExitOk;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInput;
    }
}

} // namespace twpad
