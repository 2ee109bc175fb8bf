// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Reference distance computations for verification. Neither routine touches
// the Dijkstra search in graph.hpp: Floyd-Warshall reads the raw edge list,
// Bellman-Ford keeps its own filtered adjacency.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "twpad/errors.hpp"
#include "twpad/graph.hpp"

namespace twpad {

inline constexpr std::size_t kDefaultOracleCap = 60;

/// Floyd-Warshall matrix over the members of a restricting set.
class AllPairs {
  public:
    AllPairs(const WeightedGraph& g, const VertexSet& restrict)
        : members_(restrict.members()), slot_(g.vertex_count(), -1) {
        const std::size_t k = members_.size();
        for (std::size_t i = 0; i < k; ++i) {
            slot_[static_cast<std::size_t>(members_[i])] = static_cast<std::int32_t>(i);
        }
        d_.assign(k * k, kInfinity);
        for (std::size_t i = 0; i < k; ++i) {
            d_[i * k + i] = 0.0;
        }
        for (const Edge& e : g.edges()) {
            const auto a = slot_[static_cast<std::size_t>(e.u)];
            const auto b = slot_[static_cast<std::size_t>(e.v)];
            if (a < 0 || b < 0) {
                continue;
            }
            auto& ab = d_[static_cast<std::size_t>(a) * k + static_cast<std::size_t>(b)];
            ab = std::min(ab, e.w);
            d_[static_cast<std::size_t>(b) * k + static_cast<std::size_t>(a)] = ab;
        }
        for (std::size_t m = 0; m < k; ++m) {
            for (std::size_t i = 0; i < k; ++i) {
                const Weight im = d_[i * k + m];
                if (im == kInfinity) {
                    continue;
                }
                for (std::size_t j = 0; j < k; ++j) {
                    const Weight cand = im + d_[m * k + j];
                    if (cand < d_[i * k + j]) {
                        d_[i * k + j] = cand;
                    }
                }
            }
        }
    }

    /// +inf when either end lies outside the restricting set.
    Weight operator()(Vertex a, Vertex b) const {
        const auto i = slot_[static_cast<std::size_t>(a)];
        const auto j = slot_[static_cast<std::size_t>(b)];
        if (i < 0 || j < 0) {
            return kInfinity;
        }
        return d_[static_cast<std::size_t>(i) * members_.size() + static_cast<std::size_t>(j)];
    }

    const std::vector<Vertex>& members() const noexcept { return members_; }

  private:
    std::vector<Vertex> members_;
    std::vector<std::int32_t> slot_;
    std::vector<Weight> d_;
};

/// Floyd-Warshall on G[restrict]; refuses sets larger than `cap`.
inline AllPairs oracle_all_pairs(const WeightedGraph& g, const VertexSet& restrict, std::size_t cap = kDefaultOracleCap) {
    detail::require(restrict.universe() == g.vertex_count(), "vertex set universe does not match graph");
    if (restrict.count() > cap) {
        throw ArgumentError("oracle refused: " + std::to_string(restrict.count()) + " vertices exceed the cap of " +
                            std::to_string(cap) + " (raise it with --oracle-cap)");
    }
    return AllPairs(g, restrict);
}

/// Queue-based Bellman-Ford over G[restrict].
class BellmanFord {
  public:
    BellmanFord(const WeightedGraph& g, const VertexSet& restrict) : n_(g.vertex_count()), adj_(g.vertex_count()) {
        detail::require(restrict.universe() == n_, "vertex set universe does not match graph");
        for (const Edge& e : g.edges()) {
            if (restrict.contains(e.u) && restrict.contains(e.v)) {
                adj_[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.w);
                adj_[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.w);
            }
        }
        inside_ = restrict;
    }

    DistanceMap run(const std::vector<Vertex>& sources) const {
        DistanceMap d(n_, kInfinity);
        std::vector<char> queued(n_, 0);
        std::deque<Vertex> q;
        for (Vertex s : sources) {
            detail::require(inside_.contains(s), "source outside the restricting set");
            d[static_cast<std::size_t>(s)] = 0.0;
            if (!queued[static_cast<std::size_t>(s)]) {
                queued[static_cast<std::size_t>(s)] = 1;
                q.push_back(s);
            }
        }
        while (!q.empty()) {
            const Vertex u = q.front();
            q.pop_front();
            queued[static_cast<std::size_t>(u)] = 0;
            for (const auto& [v, w] : adj_[static_cast<std::size_t>(u)]) {
                const Weight cand = d[static_cast<std::size_t>(u)] + w;
                if (cand < d[static_cast<std::size_t>(v)]) {
                    d[static_cast<std::size_t>(v)] = cand;
                    if (!queued[static_cast<std::size_t>(v)]) {
                        queued[static_cast<std::size_t>(v)] = 1;
                        q.push_back(v);
                    }
                }
            }
        }
        return d;
    }

    DistanceMap run(Vertex source) const { return run(std::vector<Vertex>{source}); }

  private:
    std::size_t n_;
    std::vector<std::vector<std::pair<Vertex, Weight>>> adj_;
    VertexSet inside_;
};

inline DistanceMap oracle_single_source(const WeightedGraph& g, const VertexSet& restrict, Vertex source) {
    return BellmanFord(g, restrict).run(source);
}

/// Full metric of G from the oracles: Floyd-Warshall up to the cap,
/// Bellman-Ford from every vertex beyond it.
class OracleMetric {
  public:
    OracleMetric(const WeightedGraph& g, std::size_t cap) : n_(g.vertex_count()), d_(n_ * n_, kInfinity) {
        const VertexSet all = VertexSet::full(n_);
        if (n_ <= cap) {
            const AllPairs ap(g, all);
            for (std::size_t a = 0; a < n_; ++a) {
                for (std::size_t b = 0; b < n_; ++b) {
                    d_[a * n_ + b] = ap(static_cast<Vertex>(a), static_cast<Vertex>(b));
                }
            }
            method_ = "floyd-warshall";
        } else {
            const BellmanFord bf(g, all);
            for (std::size_t a = 0; a < n_; ++a) {
                const DistanceMap row = bf.run(static_cast<Vertex>(a));
                std::copy(row.begin(), row.end(), d_.begin() + static_cast<std::ptrdiff_t>(a * n_));
            }
            method_ = "bellman-ford";
        }
    }

    Weight operator()(Vertex a, Vertex b) const {
        return d_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
    }
    std::size_t size() const noexcept { return n_; }
    const std::string& method() const noexcept { return method_; }

    Weight weak_diameter(const std::vector<Vertex>& cluster) const {
        Weight best = 0.0;
        for (Vertex a : cluster) {
            for (Vertex b : cluster) {
                best = std::max(best, (*this)(a, b));
            }
        }
        return best;
    }

  private:
    std::size_t n_;
    std::vector<Weight> d_;
    std::string method_;
};

/// Diameter of G[cluster] by the oracles (Floyd-Warshall when small enough).
inline Weight oracle_strong_diameter(const WeightedGraph& g, const VertexSet& cluster, std::size_t cap) {
    const auto members = cluster.members();
    Weight best = 0.0;
    if (members.size() <= cap) {
        const AllPairs ap(g, cluster);
        for (Vertex a : members) {
            for (Vertex b : members) {
                best = std::max(best, ap(a, b));
            }
        }
        return best;
    }
    const BellmanFord bf(g, cluster);
    for (Vertex a : members) {
        const DistanceMap d = bf.run(a);
        for (Vertex b : members) {
            best = std::max(best, d[static_cast<std::size_t>(b)]);
        }
    }
    return best;
}

} // namespace twpad
