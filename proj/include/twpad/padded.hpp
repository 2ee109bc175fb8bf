// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Weak padded decompositions sampled from a tree-ordered net: centers are
// visited root-to-leaf, each draws a radius in [Δ, βΔ] from a truncated
// exponential and claims every still-unclustered vertex of its
// descendant-induced ball.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "twpad/errors.hpp"
#include "twpad/graph.hpp"
#include "twpad/net.hpp"
#include "twpad/random.hpp"
#include "twpad/texp.hpp"

namespace twpad {

struct PaddedParams {
    double alpha = 3.0;
    Weight delta = 1.0;        // net scale Δ
    std::size_t tau = 1;       // packing value fed into lambda
    double beta_internal = 2.0; // (α+1)/2, radii live in [Δ, βΔ]
    double lambda = 0.0;        // 4/(α-1)·ln(2τ)
    double padding_parameter = 0.0; // 16·(α+1)/(α-1)·ln(2τ)
    double delta_param = 0.0;       // largest valid γ: (α-1)/(8(α+1))
    Weight diameter_bound = 0.0;    // (α+1)Δ
};

inline PaddedParams padded_params(double alpha, Weight delta, std::size_t tau) {
    detail::require(alpha > 1.0, "padded decomposition needs alpha > 1");
    detail::require(delta > 0.0, "delta must be positive");
    detail::require(tau >= 1, "tau must be at least 1");
    PaddedParams p;
    p.alpha = alpha;
    p.delta = delta;
    p.tau = tau;
    p.beta_internal = (alpha + 1.0) / 2.0;
    p.lambda = 4.0 / (alpha - 1.0) * std::log(2.0 * static_cast<double>(tau));
    p.padding_parameter = 16.0 * (alpha + 1.0) / (alpha - 1.0) * std::log(2.0 * static_cast<double>(tau));
    p.delta_param = (alpha - 1.0) / (8.0 * (alpha + 1.0));
    p.diameter_bound = (alpha + 1.0) * delta;
    return p;
}

struct PaddedCluster {
    Vertex center;
    Weight radius;
    VertexSet members;
};

struct CenterDraw {
    Vertex center;
    Weight radius;
    bool empty; // absorbed entirely by earlier clusters
};

struct PaddedPartition {
    std::vector<PaddedCluster> clusters;
    std::vector<std::int32_t> assignment; // vertex -> cluster index
    std::vector<CenterDraw> trace;        // every center in processing order
    std::uint64_t seed = 0;
    PaddedParams params;
};

/// Reusable sampler: the descendant-induced distances of every center are
/// computed once, so each sample only replays the carving.
class PaddedDecompositionSampler {
  public:
    PaddedDecompositionSampler(const WeightedGraph& g, const TreeOrderedNet& net, Weight delta)
        : params_(padded_params(net.params.alpha, delta, net.params.tau_emp)),
          dist_(1.0, params_.beta_internal, params_.lambda),
          n_(g.vertex_count()),
          table_(net_distance_table(g, net.order, net.net, params_.beta_internal * delta)) {}

    const PaddedParams& params() const noexcept { return params_; }
    const std::vector<Vertex>& centers() const noexcept { return table_.centers; }

    /// Radius multiplier δ_i in [1, β] for center index i under `seed`.
    double draw(std::uint64_t seed, std::size_t i) const {
        Stream s(seed, static_cast<std::uint64_t>(table_.centers[i]), 0x70616464ULL);
        return dist_.sample(s.uniform());
    }

    /// Cluster index per vertex (indices into the center list).
    void assign(std::uint64_t seed, std::vector<std::int32_t>& owner) const {
        owner.assign(n_, -1);
        for (std::size_t i = 0; i < table_.centers.size(); ++i) {
            const Weight r = draw(seed, i) * params_.delta;
            for (const auto& e : table_.within[i]) {
                if (e.dist > r) {
                    break;
                }
                auto& o = owner[static_cast<std::size_t>(e.v)];
                if (o < 0) {
                    o = static_cast<std::int32_t>(i);
                }
            }
        }
    }

    PaddedPartition sample(std::uint64_t seed) const {
        std::vector<std::int32_t> owner;
        assign(seed, owner);
        PaddedPartition out;
        out.seed = seed;
        out.params = params_;
        std::vector<std::int32_t> remap(table_.centers.size(), -1);
        for (std::size_t i = 0; i < table_.centers.size(); ++i) {
            out.trace.push_back(CenterDraw{table_.centers[i], draw(seed, i) * params_.delta, true});
        }
        for (std::size_t v = 0; v < n_; ++v) {
            const auto i = owner[v];
            if (i < 0) {
                throw std::logic_error("vertex left unclustered; net covering property violated");
            }
            out.trace[static_cast<std::size_t>(i)].empty = false;
        }
        for (std::size_t i = 0; i < table_.centers.size(); ++i) {
            if (!out.trace[i].empty) {
                remap[i] = static_cast<std::int32_t>(out.clusters.size());
                out.clusters.push_back(PaddedCluster{out.trace[i].center, out.trace[i].radius, VertexSet(n_)});
            }
        }
        out.assignment.assign(n_, -1);
        for (std::size_t v = 0; v < n_; ++v) {
            const auto c = remap[static_cast<std::size_t>(owner[v])];
            out.assignment[v] = c;
            out.clusters[static_cast<std::size_t>(c)].members.insert(static_cast<Vertex>(v));
        }
        return out;
    }

  private:
    PaddedParams params_;
    TruncatedExp dist_;
    std::size_t n_;
    NetDistanceTable table_;
};

inline PaddedPartition sample_padded_decomposition(const WeightedGraph& g, const TreeOrderedNet& net, Weight delta,
                                                   std::uint64_t seed) {
    return PaddedDecompositionSampler(g, net, delta).sample(seed);
}

/// Seed of trial t in a Monte Carlo run started from `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) { return mix64(seed ^ mix64(trial + 1)); }

/// Lower end of the Wilson score interval for k successes out of n at
/// normal quantile z.
inline double wilson_lower_bound(std::size_t successes, std::size_t trials, double z) {
    detail::require(trials > 0, "Wilson bound needs at least one trial");
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double centre = p + z2 / (2.0 * n);
    const double spread = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return std::max(0.0, (centre - spread) / (1.0 + z2 / n));
}

/// Two-sided 99% normal quantile.
inline constexpr double kWilsonZ99 = 2.5758293035489004;

struct PaddingEstimate {
    double gamma = 0.0;
    Weight ball_radius = 0.0;      // γ·(α+1)Δ
    double empirical_rate = 1.0;   // worst vertex
    double lower_confidence_bound = 1.0;
    Vertex worst_vertex = 0;
    double required = 1.0;         // e^{-padding_parameter·γ}
    std::size_t trials = 0;
};

/// Monte Carlo padding rates for several γ at once; per vertex z it counts
/// samples with B_G(z, γ(α+1)Δ) inside z's cluster.
/// With `original` and `forward` set, the partition is sampled on `g` (a
/// host graph) and judged on `original`, vertex v standing for forward[v].
inline std::vector<PaddingEstimate> padding_probability_estimates(const WeightedGraph& g, const TreeOrderedNet& net,
                                                                  Weight delta, const std::vector<double>& gammas,
                                                                  std::size_t trials, std::uint64_t seed,
                                                                  const WeightedGraph* original = nullptr,
                                                                  const std::vector<Vertex>* forward = nullptr) {
    detail::require(trials >= 1, "trials must be at least 1");
    detail::require((original == nullptr) == (forward == nullptr), "original graph and forward map go together");
    const PaddedDecompositionSampler sampler(g, net, delta);
    const PaddedParams& p = sampler.params();
    const WeightedGraph& eval = original ? *original : g;
    const std::size_t n = eval.vertex_count();
    std::vector<Vertex> to_host(n);
    for (std::size_t v = 0; v < n; ++v) {
        to_host[v] = forward ? (*forward)[v] : static_cast<Vertex>(v);
        detail::require(to_host[v] >= 0 && static_cast<std::size_t>(to_host[v]) < g.vertex_count(),
                        "forward map leaves the host graph");
    }
    const VertexSet all = VertexSet::full(n);

    double largest = 0.0;
    for (double gamma : gammas) {
        detail::require(gamma >= 0.0 && gamma <= p.delta_param + 1e-15,
                        "gamma must lie in [0, " + std::to_string(p.delta_param) + "]");
        largest = std::max(largest, gamma);
    }
    // balls[z] sorted by distance so every γ is a prefix
    std::vector<std::vector<std::pair<Weight, Vertex>>> balls(n);
    for (std::size_t z = 0; z < n; ++z) {
        const DistanceMap d = shortest_paths(eval, all, static_cast<Vertex>(z));
        for (std::size_t u = 0; u < n; ++u) {
            if (d[u] <= largest * p.diameter_bound) {
                balls[z].emplace_back(d[u], static_cast<Vertex>(u));
            }
        }
        std::sort(balls[z].begin(), balls[z].end());
    }

    std::vector<std::vector<std::size_t>> padded(gammas.size(), std::vector<std::size_t>(n, 0));
    std::vector<std::int32_t> owner;
    for (std::size_t t = 0; t < trials; ++t) {
        sampler.assign(trial_seed(seed, t), owner);
        for (std::size_t z = 0; z < n; ++z) {
            // first distance at which the ball leaves z's cluster
            Weight cut_at = kInfinity;
            const auto mine = owner[static_cast<std::size_t>(to_host[z])];
            for (const auto& [dist, u] : balls[z]) {
                if (owner[static_cast<std::size_t>(to_host[static_cast<std::size_t>(u)])] != mine) {
                    cut_at = dist;
                    break;
                }
            }
            for (std::size_t k = 0; k < gammas.size(); ++k) {
                if (cut_at > gammas[k] * p.diameter_bound) {
                    ++padded[k][z];
                }
            }
        }
    }

    std::vector<PaddingEstimate> out;
    for (std::size_t k = 0; k < gammas.size(); ++k) {
        auto it = std::min_element(padded[k].begin(), padded[k].end());
        PaddingEstimate e;
        e.gamma = gammas[k];
        e.ball_radius = gammas[k] * p.diameter_bound;
        e.worst_vertex = static_cast<Vertex>(it - padded[k].begin());
        e.empirical_rate = static_cast<double>(*it) / static_cast<double>(trials);
        e.lower_confidence_bound = wilson_lower_bound(*it, trials, kWilsonZ99);
        e.required = std::exp(-p.padding_parameter * gammas[k]);
        e.trials = trials;
        out.push_back(e);
    }
    return out;
}

inline PaddingEstimate padding_probability_estimate(const WeightedGraph& g, const TreeOrderedNet& net, Weight delta,
                                                    double gamma, std::size_t trials, std::uint64_t seed) {
    return padding_probability_estimates(g, net, delta, {gamma}, trials, seed).front();
}

/// The default γ grid {δ/4, δ/2, δ}.
inline std::vector<double> default_gamma_grid(double alpha) {
    const double d = (alpha - 1.0) / (8.0 * (alpha + 1.0));
    return {d / 4.0, d / 2.0, d};
}

} // namespace twpad
