// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Immutable weighted graphs, vertex sets, and the shortest-path / ball
// primitives everything else is built on.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <span>
#include <tuple>
#include <string>
#include <utility>
#include <vector>

#include "twpad/errors.hpp"

namespace twpad {

using Vertex = std::int32_t;
using Weight = double;

inline constexpr Weight kInfinity = std::numeric_limits<Weight>::infinity();

/// Absolute tolerance for all distance comparisons in invariant checks.
inline constexpr Weight kDistanceTolerance = 1e-9;

/// Membership bitmap over the dense vertex ids 0..universe-1.
class VertexSet {
  public:
    VertexSet() = default;
    explicit VertexSet(std::size_t universe) : bits_(universe, 0) {}

    static VertexSet full(std::size_t universe) {
        VertexSet s(universe);
        std::fill(s.bits_.begin(), s.bits_.end(), 1);
        s.count_ = universe;
        return s;
    }

    static VertexSet of(std::size_t universe, std::span<const Vertex> members) {
        VertexSet s(universe);
        for (Vertex v : members) {
            s.insert(v);
        }
        return s;
    }

    static VertexSet of(std::size_t universe, std::initializer_list<Vertex> members) {
        return of(universe, std::span<const Vertex>(members.begin(), members.size()));
    }

    std::size_t universe() const noexcept { return bits_.size(); }
    std::size_t count() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    bool contains(Vertex v) const noexcept {
        return v >= 0 && static_cast<std::size_t>(v) < bits_.size() && bits_[static_cast<std::size_t>(v)] != 0;
    }

    void insert(Vertex v) {
        check_range(v);
        auto& b = bits_[static_cast<std::size_t>(v)];
        if (b == 0) {
            b = 1;
            ++count_;
        }
    }

    void erase(Vertex v) {
        check_range(v);
        auto& b = bits_[static_cast<std::size_t>(v)];
        if (b != 0) {
            b = 0;
            --count_;
        }
    }

    /// Members in ascending id order.
    std::vector<Vertex> members() const {
        std::vector<Vertex> out;
        out.reserve(count_);
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i] != 0) {
                out.push_back(static_cast<Vertex>(i));
            }
        }
        return out;
    }

    bool is_subset_of(const VertexSet& other) const {
        for (std::size_t i = 0; i < bits_.size(); ++i) {
            if (bits_[i] != 0 && !other.contains(static_cast<Vertex>(i))) {
                return false;
            }
        }
        return true;
    }

    bool intersects(const VertexSet& other) const {
        const std::size_t n = std::min(bits_.size(), other.bits_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (bits_[i] != 0 && other.bits_[i] != 0) {
                return true;
            }
        }
        return false;
    }

    VertexSet& operator|=(const VertexSet& other) {
        for (std::size_t i = 0; i < other.bits_.size(); ++i) {
            if (other.bits_[i] != 0) {
                insert(static_cast<Vertex>(i));
            }
        }
        return *this;
    }

    VertexSet& operator-=(const VertexSet& other) {
        const std::size_t n = std::min(bits_.size(), other.bits_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (bits_[i] != 0 && other.bits_[i] != 0) {
                bits_[i] = 0;
                --count_;
            }
        }
        return *this;
    }

    friend VertexSet operator|(VertexSet a, const VertexSet& b) { return a |= b; }
    friend VertexSet operator-(VertexSet a, const VertexSet& b) { return a -= b; }

    friend VertexSet operator&(const VertexSet& a, const VertexSet& b) {
        VertexSet out(a.universe());
        const std::size_t n = std::min(a.bits_.size(), b.bits_.size());
        for (std::size_t i = 0; i < n; ++i) {
            if (a.bits_[i] != 0 && b.bits_[i] != 0) {
                out.insert(static_cast<Vertex>(i));
            }
        }
        return out;
    }

    friend bool operator==(const VertexSet& a, const VertexSet& b) { return a.bits_ == b.bits_; }

  private:
    void check_range(Vertex v) const {
        if (v < 0 || static_cast<std::size_t>(v) >= bits_.size()) {
            throw ArgumentError("vertex " + std::to_string(v) + " outside universe of size " +
                                std::to_string(bits_.size()));
        }
    }

    std::vector<std::uint8_t> bits_;
    std::size_t count_ = 0;
};

struct Edge {
    Vertex u;
    Vertex v;
    Weight w;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct Arc {
    Vertex to;
    Weight w;
};

/// Connected undirected graph with nonnegative edge weights. Edges are kept
/// canonical (u < v, sorted, parallel edges collapsed to the minimum weight).
class WeightedGraph {
  public:
    WeightedGraph(std::size_t vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
        if (vertex_count == 0) {
            throw ValidationError("graph must have at least one vertex", "");
        }
        for (auto& e : edges) {
            if (e.u < 0 || e.v < 0 || static_cast<std::size_t>(e.u) >= n_ || static_cast<std::size_t>(e.v) >= n_) {
                throw ValidationError("edge endpoint out of range", edge_label(e));
            }
            if (e.u == e.v) {
                throw ValidationError("self-loop", edge_label(e));
            }
            if (!(e.w >= 0.0) || !std::isfinite(e.w)) {
                throw ValidationError("edge weight must be finite and nonnegative", edge_label(e));
            }
            if (e.u > e.v) {
                std::swap(e.u, e.v);
            }
        }
        std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
            return std::tie(a.u, a.v, a.w) < std::tie(b.u, b.v, b.w);
        });
        for (const auto& e : edges) {
            if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
                continue; // sorted by weight: first copy is the minimum
            }
            edges_.push_back(e);
        }

        offsets_.assign(n_ + 1, 0);
        for (const auto& e : edges_) {
            ++offsets_[static_cast<std::size_t>(e.u) + 1];
            ++offsets_[static_cast<std::size_t>(e.v) + 1];
        }
        std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
        arcs_.resize(edges_.size() * 2);
        std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
        for (const auto& e : edges_) {
            arcs_[fill[static_cast<std::size_t>(e.u)]++] = Arc{e.v, e.w};
            arcs_[fill[static_cast<std::size_t>(e.v)]++] = Arc{e.u, e.w};
        }

        if (!connected()) {
            throw ValidationError("graph is not connected", "");
        }
    }

    std::size_t vertex_count() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const Arc> neighbors(Vertex v) const {
        const auto i = static_cast<std::size_t>(v);
        return {arcs_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }

    friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
        return a.n_ == b.n_ && a.edges_ == b.edges_;
    }

  private:
    static std::string edge_label(const Edge& e) {
        return "edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1);
    }

    bool connected() const {
        std::vector<char> seen(n_, 0);
        std::vector<Vertex> stack{0};
        seen[0] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (const Arc& a : neighbors(v)) {
                if (!seen[static_cast<std::size_t>(a.to)]) {
                    seen[static_cast<std::size_t>(a.to)] = 1;
                    ++reached;
                    stack.push_back(a.to);
                }
            }
        }
        return reached == n_;
    }

    std::size_t n_;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_;
    std::vector<Arc> arcs_;
};

/// Distances from a source set; +inf for vertices outside the restricting set
/// or unreachable inside it.
using DistanceMap = std::vector<Weight>;

/// Multi-source Dijkstra inside G[restrict]. Exact for zero-weight edges.
inline DistanceMap shortest_paths(const WeightedGraph& g, const VertexSet& restrict, const VertexSet& sources) {
    detail::require(restrict.universe() == g.vertex_count() && sources.universe() == g.vertex_count(),
                    "vertex set universe does not match graph");
    detail::require(!restrict.empty(), "restricting set is empty");
    detail::require(sources.is_subset_of(restrict), "sources are not contained in the restricting set");

    DistanceMap dist(g.vertex_count(), kInfinity);
    using Item = std::pair<Weight, Vertex>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (Vertex s : sources.members()) {
        dist[static_cast<std::size_t>(s)] = 0.0;
        heap.emplace(0.0, s);
    }
    while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (d > dist[static_cast<std::size_t>(v)]) {
            continue;
        }
        for (const Arc& a : g.neighbors(v)) {
            if (!restrict.contains(a.to)) {
                continue;
            }
            const Weight nd = d + a.w;
            if (nd < dist[static_cast<std::size_t>(a.to)]) {
                dist[static_cast<std::size_t>(a.to)] = nd;
                heap.emplace(nd, a.to);
            }
        }
    }
    return dist;
}

inline DistanceMap shortest_paths(const WeightedGraph& g, const VertexSet& restrict, Vertex source) {
    return shortest_paths(g, restrict, VertexSet::of(g.vertex_count(), {source}));
}

inline DistanceMap shortest_paths(const WeightedGraph& g, Vertex source) {
    return shortest_paths(g, VertexSet::full(g.vertex_count()), source);
}

struct Ball {
    VertexSet center_set;
    Weight radius = 0.0;
    VertexSet members;
    DistanceMap distances; // +inf for non-members
};

/// Vertices of `restrict` within `radius` of `centers` inside G[restrict].
inline Ball ball(const WeightedGraph& g, const VertexSet& restrict, const VertexSet& centers, Weight radius) {
    detail::require(radius >= 0.0, "ball radius must be nonnegative");
    DistanceMap dist = shortest_paths(g, restrict, centers);
    Ball b{centers, radius, VertexSet(g.vertex_count()), std::move(dist)};
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
        if (b.distances[v] <= radius) {
            b.members.insert(static_cast<Vertex>(v));
        } else {
            b.distances[v] = kInfinity;
        }
    }
    return b;
}

/// Dense all-pairs matrix from repeated Dijkstra on the whole graph.
class DistanceMatrix {
  public:
    explicit DistanceMatrix(const WeightedGraph& g) : n_(g.vertex_count()), d_(n_ * n_) {
        const VertexSet all = VertexSet::full(n_);
        for (std::size_t s = 0; s < n_; ++s) {
            DistanceMap row = shortest_paths(g, all, static_cast<Vertex>(s));
            std::copy(row.begin(), row.end(), d_.begin() + static_cast<std::ptrdiff_t>(s * n_));
        }
    }

    Weight operator()(Vertex a, Vertex b) const {
        return d_[static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b)];
    }
    std::size_t size() const noexcept { return n_; }

  private:
    std::size_t n_;
    std::vector<Weight> d_;
};

/// Max pairwise d_G over the cluster.
inline Weight weak_diameter(const WeightedGraph& g, const VertexSet& cluster) {
    detail::require(!cluster.empty(), "weak diameter of an empty cluster");
    const VertexSet all = VertexSet::full(g.vertex_count());
    const auto members = cluster.members();
    Weight best = 0.0;
    for (Vertex s : members) {
        DistanceMap d = shortest_paths(g, all, s);
        for (Vertex t : members) {
            best = std::max(best, d[static_cast<std::size_t>(t)]);
        }
    }
    return best;
}

inline Weight weak_diameter(const DistanceMatrix& dm, const VertexSet& cluster) {
    detail::require(!cluster.empty(), "weak diameter of an empty cluster");
    const auto members = cluster.members();
    Weight best = 0.0;
    for (Vertex s : members) {
        for (Vertex t : members) {
            best = std::max(best, dm(s, t));
        }
    }
    return best;
}

/// Diameter of G[cluster]; +inf when the induced subgraph is disconnected.
inline Weight strong_diameter(const WeightedGraph& g, const VertexSet& cluster) {
    detail::require(!cluster.empty(), "strong diameter of an empty cluster");
    const auto members = cluster.members();
    Weight best = 0.0;
    for (Vertex s : members) {
        DistanceMap d = shortest_paths(g, cluster, s);
        for (Vertex t : members) {
            best = std::max(best, d[static_cast<std::size_t>(t)]);
        }
    }
    return best;
}

} // namespace twpad
