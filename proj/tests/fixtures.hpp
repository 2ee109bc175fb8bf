// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Test graphs with matching tree decompositions or tree partitions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "twpad/graph.hpp"
#include "twpad/pipeline.hpp"
#include "twpad/random.hpp"
#include "twpad/tree.hpp"

namespace twpad::fixtures {

struct Fixture {
    std::string name;
    WeightedGraph graph;
    std::optional<TreeDecomposition> td;
    std::optional<TreePartition> tp;
    Weight delta = 1.0;

    Pipeline pipeline(double alpha = 3.0) const {
        if (td) {
            return pipeline_from_tree_decomposition(graph, *td, delta, alpha);
        }
        return pipeline_from_tree_partition(graph, *tp, delta, alpha);
    }
};

inline Vertex at(std::size_t k, std::size_t r, std::size_t c) { return static_cast<Vertex>(r * k + c); }

inline WeightedGraph path_graph(std::size_t n, Weight w = 1.0) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        e.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1), w});
    }
    return WeightedGraph(n, e);
}

/// Bags {i, i+1} along a path.
inline TreeDecomposition path_td(std::size_t n) {
    TreeDecomposition td;
    std::vector<NodeId> parent;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        td.bags.push_back({static_cast<Vertex>(i), static_cast<Vertex>(i + 1)});
        parent.push_back(i == 0 ? kNoNode : static_cast<NodeId>(i - 1));
    }
    if (n == 1) {
        td.bags.push_back({0});
        parent.push_back(kNoNode);
    }
    td.tree = RootedTree(parent);
    return td;
}

/// One singleton bag per vertex, chained along the path.
inline TreePartition path_tp(std::size_t n) {
    std::vector<std::vector<Vertex>> bags;
    std::vector<NodeId> parent;
    for (std::size_t i = 0; i < n; ++i) {
        bags.push_back({static_cast<Vertex>(i)});
        parent.push_back(i == 0 ? kNoNode : static_cast<NodeId>(i - 1));
    }
    return make_tree_partition(n, bags, RootedTree(parent));
}

inline WeightedGraph star_graph(std::size_t leaves, Weight w = 1.0) {
    std::vector<Edge> e;
    for (std::size_t i = 1; i <= leaves; ++i) {
        e.push_back({0, static_cast<Vertex>(i), w});
    }
    return WeightedGraph(leaves + 1, e);
}

inline TreeDecomposition star_td(std::size_t leaves) {
    TreeDecomposition td;
    std::vector<NodeId> parent;
    for (std::size_t i = 1; i <= leaves; ++i) {
        td.bags.push_back({0, static_cast<Vertex>(i)});
        parent.push_back(i == 1 ? kNoNode : 0);
    }
    td.tree = RootedTree(parent);
    return td;
}

/// Center bag at the root, one leaf bag per leaf.
inline TreePartition star_tp(std::size_t leaves) {
    std::vector<std::vector<Vertex>> bags{{0}};
    std::vector<NodeId> parent{kNoNode};
    for (std::size_t i = 1; i <= leaves; ++i) {
        bags.push_back({static_cast<Vertex>(i)});
        parent.push_back(0);
    }
    return make_tree_partition(leaves + 1, bags, RootedTree(parent));
}

inline WeightedGraph grid_graph(std::size_t k, Weight w = 1.0) {
    std::vector<Edge> e;
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            if (c + 1 < k) {
                e.push_back({at(k, r, c), at(k, r, c + 1), w});
            }
            if (r + 1 < k) {
                e.push_back({at(k, r, c), at(k, r + 1, c), w});
            }
        }
    }
    return WeightedGraph(k * k, e);
}

/// Row-major sliding window of k+1 vertices: a path decomposition of width k.
inline TreeDecomposition grid_td(std::size_t k) {
    TreeDecomposition td;
    std::vector<NodeId> parent;
    const std::size_t n = k * k;
    if (n <= k + 1) {
        std::vector<Vertex> all;
        for (std::size_t v = 0; v < n; ++v) {
            all.push_back(static_cast<Vertex>(v));
        }
        td.bags.push_back(all);
        td.tree = RootedTree({kNoNode});
        return td;
    }
    for (std::size_t s = 0; s + k < n; ++s) {
        std::vector<Vertex> bag;
        for (std::size_t v = s; v <= s + k; ++v) {
            bag.push_back(static_cast<Vertex>(v));
        }
        td.bags.push_back(bag);
        parent.push_back(s == 0 ? kNoNode : static_cast<NodeId>(s - 1));
    }
    td.tree = RootedTree(parent);
    return td;
}

/// Rows as bags along a path.
inline TreePartition grid_tp(std::size_t k) {
    std::vector<std::vector<Vertex>> bags(k);
    std::vector<NodeId> parent;
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) {
            bags[r].push_back(at(k, r, c));
        }
        parent.push_back(r == 0 ? kNoNode : static_cast<NodeId>(r - 1));
    }
    return make_tree_partition(k * k, bags, RootedTree(parent));
}

/// Greedy min-degree elimination; ties by smaller id.
inline std::vector<Vertex> min_degree_order(const WeightedGraph& g) {
    const std::size_t n = g.vertex_count();
    std::vector<std::set<Vertex>> adj(n);
    for (const Edge& e : g.edges()) {
        adj[static_cast<std::size_t>(e.u)].insert(e.v);
        adj[static_cast<std::size_t>(e.v)].insert(e.u);
    }
    std::vector<char> gone(n, 0);
    std::vector<Vertex> order;
    for (std::size_t step = 0; step < n; ++step) {
        Vertex best = -1;
        for (std::size_t v = 0; v < n; ++v) {
            if (!gone[v] && (best < 0 || adj[v].size() < adj[static_cast<std::size_t>(best)].size())) {
                best = static_cast<Vertex>(v);
            }
        }
        const auto b = static_cast<std::size_t>(best);
        std::vector<Vertex> nb(adj[b].begin(), adj[b].end());
        for (Vertex x : nb) {
            adj[static_cast<std::size_t>(x)].erase(best);
            for (Vertex y : nb) {
                if (x != y) {
                    adj[static_cast<std::size_t>(x)].insert(y);
                }
            }
        }
        adj[b].clear();
        gone[b] = 1;
        order.push_back(best);
    }
    return order;
}

inline TreeDecomposition heuristic_td(const WeightedGraph& g) { return td_from_elimination_order(g, min_degree_order(g)); }

/// Connected random graph: random spanning tree plus `extra` edges, integer
/// weights in [1, max_w].
inline WeightedGraph random_graph(std::size_t n, std::size_t extra, int max_w, std::uint64_t seed) {
    Stream rng(seed, 0x72616e64ULL);
    std::vector<Edge> e;
    std::set<std::pair<Vertex, Vertex>> used;
    const auto weight = [&] { return static_cast<Weight>(1 + static_cast<int>(rng.next() % static_cast<std::uint64_t>(max_w))); };
    for (std::size_t v = 1; v < n; ++v) {
        const auto u = static_cast<Vertex>(rng.next() % v);
        e.push_back({u, static_cast<Vertex>(v), weight()});
        used.insert({u, static_cast<Vertex>(v)});
    }
    for (std::size_t tries = 0; used.size() < n - 1 + extra && tries < 100 * (extra + 1); ++tries) {
        auto a = static_cast<Vertex>(rng.next() % n);
        auto b = static_cast<Vertex>(rng.next() % n);
        if (a == b) {
            continue;
        }
        if (a > b) {
            std::swap(a, b);
        }
        if (used.insert({a, b}).second) {
            e.push_back({a, b, weight()});
        }
    }
    return WeightedGraph(n, e);
}

/// Random partial k-tree: start from a (k+1)-clique, attach each new vertex
/// to a random k-clique, keep each non-tree edge with probability keep.
/// The construction order reversed is a perfect elimination order.
inline std::pair<WeightedGraph, TreeDecomposition> partial_k_tree(std::size_t n, std::size_t k, double keep,
                                                                  std::uint64_t seed) {
    Stream rng(seed, 0x6b747265ULL);
    std::vector<std::vector<Vertex>> cliques;
    std::vector<Edge> e;
    std::vector<Vertex> base;
    for (std::size_t v = 0; v <= k; ++v) {
        base.push_back(static_cast<Vertex>(v));
        for (std::size_t u = 0; u < v; ++u) {
            e.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), 1.0});
        }
    }
    for (std::size_t i = 0; i <= k; ++i) {
        std::vector<Vertex> c = base;
        c.erase(c.begin() + static_cast<std::ptrdiff_t>(i));
        cliques.push_back(c);
    }
    for (std::size_t v = k + 1; v < n; ++v) {
        const auto c = cliques[static_cast<std::size_t>(rng.next() % cliques.size())];
        // first neighbour always kept so the graph stays connected
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (i == 0 || rng.uniform() < keep) {
                e.push_back({c[i], static_cast<Vertex>(v), static_cast<Weight>(1 + rng.next() % 3)});
            }
        }
        for (std::size_t i = 0; i < c.size(); ++i) {
            std::vector<Vertex> nc = c;
            nc[i] = static_cast<Vertex>(v);
            cliques.push_back(nc);
        }
    }
    WeightedGraph g(n, e);
    std::vector<Vertex> order;
    for (std::size_t v = n; v-- > 0;) {
        order.push_back(static_cast<Vertex>(v));
    }
    TreeDecomposition td = td_from_elimination_order(g, order);
    return {std::move(g), std::move(td)};
}

/// Random two-terminal series-parallel graph grown by series and parallel
/// edge replacements.
inline WeightedGraph series_parallel(std::size_t target_edges, std::uint64_t seed) {
    Stream rng(seed, 0x73706172ULL);
    std::vector<Edge> e{{0, 1, 1.0}};
    std::size_t n = 2;
    while (e.size() < target_edges) {
        const std::size_t i = static_cast<std::size_t>(rng.next() % e.size());
        const Edge old = e[i];
        const auto w = static_cast<Weight>(1 + rng.next() % 4);
        const auto mid = static_cast<Vertex>(n++);
        if (rng.uniform() < 0.6) {
            e[i] = {old.u, mid, old.w};
            e.push_back({mid, old.v, w});
        } else {
            // parallel: route through a fresh vertex to avoid multi-edges
            e.push_back({old.u, mid, w});
            e.push_back({mid, old.v, w});
        }
    }
    return WeightedGraph(n, e);
}

/// The corpus used by the acceptance run: every entry has a tree
/// decomposition or a native tree partition.
inline std::vector<Fixture> corpus() {
    std::vector<Fixture> out;
    const auto add_td = [&](std::string name, WeightedGraph g, TreeDecomposition td, Weight delta) {
        out.push_back(Fixture{std::move(name), std::move(g), std::move(td), std::nullopt, delta});
    };
    add_td("path-3", path_graph(3), path_td(3), 1.0);
    add_td("path-12", path_graph(12), path_td(12), 2.0);
    add_td("path-40-w3", path_graph(40, 3.0), path_td(40), 4.0);
    add_td("star-6", star_graph(6), star_td(6), 1.0);
    add_td("star-20", star_graph(20, 2.0), star_td(20), 1.0);
    for (std::size_t k : {2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
        add_td("grid-" + std::to_string(k), grid_graph(k), grid_td(k), k >= 6 ? 2.0 : 1.0);
    }
    for (std::uint64_t s = 1; s <= 3; ++s) {
        WeightedGraph g = series_parallel(30 + 10 * s, s);
        TreeDecomposition td = heuristic_td(g);
        add_td("series-parallel-" + std::to_string(s), std::move(g), std::move(td), 3.0);
    }
    for (std::uint64_t s = 1; s <= 3; ++s) {
        auto [g, td] = partial_k_tree(30 + 10 * s, 2 + s % 2, 0.6, s);
        add_td("partial-k-tree-" + std::to_string(s), std::move(g), std::move(td), 2.0);
    }
    const std::size_t sizes[] = {20, 50, 80, 100};
    for (std::size_t i = 0; i < 4; ++i) {
        WeightedGraph g = random_graph(sizes[i], sizes[i] / 10, 5, 100 + i);
        TreeDecomposition td = heuristic_td(g);
        add_td("random-" + std::to_string(sizes[i]), std::move(g), std::move(td), 3.0);
    }
    out.push_back(Fixture{"path-5-w10", path_graph(5, 10.0), std::nullopt, path_tp(5), 1.0});
    out.push_back(Fixture{"star-4-native", star_graph(4), std::nullopt, star_tp(4), 1.0});
    out.push_back(Fixture{"grid-6-rows", grid_graph(6), std::nullopt, grid_tp(6), 2.0});
    out.push_back(Fixture{"grid-8-rows", grid_graph(8), std::nullopt, grid_tp(8), 2.0});
    return out;
}

} // namespace twpad::fixtures
