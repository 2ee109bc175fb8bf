// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Tree orders, semi-tree-ordered nets built from carved cores, and the
// path-expansion that turns a semi-tree order into an injective one.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "twpad/cores.hpp"
#include "twpad/errors.hpp"
#include "twpad/graph.hpp"
#include "twpad/tree.hpp"

namespace twpad {

/// A rooted tree plus a map from vertices to its nodes. u precedes v
/// (u ⪯ v) iff the node of v is an ancestor of (or equal to) the node of u.
/// Several vertices may share a node (semi-tree order).
struct TreeOrder {
    RootedTree tree;
    std::vector<NodeId> assign; // vertex -> node

    std::size_t vertex_count() const noexcept { return assign.size(); }
    NodeId node(Vertex v) const { return assign[static_cast<std::size_t>(v)]; }

    bool precedes(Vertex u, Vertex v) const { return tree.is_ancestor_or_self(node(v), node(u)); }
    bool comparable(Vertex u, Vertex v) const { return precedes(u, v) || precedes(v, u); }

    /// V_{⪯x}: every vertex whose node lies in the subtree of x's node.
    VertexSet descendants_of(Vertex x) const {
        VertexSet out(assign.size());
        const NodeId top = node(x);
        for (std::size_t v = 0; v < assign.size(); ++v) {
            if (tree.is_ancestor_or_self(top, assign[v])) {
                out.insert(static_cast<Vertex>(v));
            }
        }
        return out;
    }

    bool injective() const {
        std::vector<char> used(tree.size(), 0);
        for (NodeId x : assign) {
            if (used[static_cast<std::size_t>(x)]) {
                return false;
            }
            used[static_cast<std::size_t>(x)] = 1;
        }
        return true;
    }

    /// Hop depth of a vertex's node; the processing key for centers.
    std::int32_t depth_of(Vertex v) const { return tree.depth(node(v)); }
};

/// Vertices sorted root-to-leaf by node depth, ties by vertex id.
inline std::vector<Vertex> root_to_leaf_order(const TreeOrder& order, const std::vector<Vertex>& vertices) {
    std::vector<Vertex> out = vertices;
    std::sort(out.begin(), out.end(), [&](Vertex a, Vertex b) {
        return std::make_pair(order.depth_of(a), a) < std::make_pair(order.depth_of(b), b);
    });
    return out;
}

struct SemiTreeOrderedNet {
    TreeOrder order; // tree isomorphic to the tree partition; node = bag id
    VertexSet net;
};

/// Each vertex goes to the center bag of the core that first covered it; the
/// net is the union of all core centers.
inline SemiTreeOrderedNet build_semi_tree_order(const CoreConstruction& cc, const TreePartition& tp) {
    const std::size_t n = tp.bag_of.size();
    SemiTreeOrderedNet out{TreeOrder{tp.tree, std::vector<NodeId>(n, kNoNode)}, VertexSet(n)};
    for (std::size_t v = 0; v < n; ++v) {
        const auto c = cc.first_core[v];
        if (c < 0) {
            throw ArgumentError("vertex " + std::to_string(v + 1) + " is not covered by any core");
        }
        out.order.assign[v] = cc.cores[static_cast<std::size_t>(c)].center_bag;
    }
    for (const Core& core : cc.cores) {
        out.net |= core.centers;
    }
    return out;
}

struct NetParams {
    double alpha = 3.0;
    Weight delta = 1.0;
    std::size_t tau_emp = 0;   // measured max_v |N_{v⪯}^{αΔ}|
    std::uint64_t tau_bound = 0; // tp^4 + tp^2
    std::size_t tp_width = 0;
};

struct TreeOrderedNet {
    VertexSet net;
    TreeOrder order;                // injective
    std::vector<Vertex> node_vertex; // node -> vertex, -1 for placeholders
    NetParams params;
};

/// Replaces every node of the semi order by a path: net vertices first, then
/// the rest (each group by ascending id); empty nodes become placeholders.
/// Child paths hang off the leaf of their parent's path.
inline TreeOrderedNet semi_to_tree_order(const TreeOrder& semi, const VertexSet& net) {
    const std::size_t n = semi.assign.size();
    detail::require(net.universe() == n, "net universe does not match the order");
    std::vector<std::vector<Vertex>> preimage(semi.tree.size());
    for (std::size_t v = 0; v < n; ++v) {
        preimage[static_cast<std::size_t>(semi.assign[v])].push_back(static_cast<Vertex>(v));
    }

    std::vector<NodeId> parent;
    std::vector<Vertex> node_vertex;
    std::vector<NodeId> assign(n, kNoNode);
    std::vector<NodeId> path_leaf(semi.tree.size(), kNoNode);
    for (NodeId x : semi.tree.preorder()) {
        const NodeId px = semi.tree.parent(x);
        NodeId attach = (px == kNoNode) ? kNoNode : path_leaf[static_cast<std::size_t>(px)];
        std::vector<Vertex> path;
        for (Vertex v : preimage[static_cast<std::size_t>(x)]) {
            if (net.contains(v)) {
                path.push_back(v);
            }
        }
        for (Vertex v : preimage[static_cast<std::size_t>(x)]) {
            if (!net.contains(v)) {
                path.push_back(v);
            }
        }
        if (path.empty()) {
            path.push_back(-1);
        }
        for (Vertex v : path) {
            const auto id = static_cast<NodeId>(parent.size());
            parent.push_back(attach);
            node_vertex.push_back(v);
            if (v >= 0) {
                assign[static_cast<std::size_t>(v)] = id;
            }
            attach = id;
        }
        path_leaf[static_cast<std::size_t>(x)] = attach;
    }
    TreeOrderedNet out;
    out.net = net;
    out.order = TreeOrder{RootedTree(std::move(parent)), std::move(assign)};
    out.node_vertex = std::move(node_vertex);
    return out;
}

/// For every net point x: the vertices of V_{⪯x} reachable from x inside
/// G[V_{⪯x}] within `max_radius`, sorted by distance (ties by id).
struct NetDistanceTable {
    struct Entry {
        Weight dist;
        Vertex v;
    };
    std::vector<Vertex> centers;            // net points, root-to-leaf order
    std::vector<std::vector<Entry>> within; // parallel to centers
    Weight max_radius = 0.0;
};

inline NetDistanceTable net_distance_table(const WeightedGraph& g, const TreeOrder& order, const VertexSet& net,
                                           Weight max_radius) {
    detail::require(max_radius >= 0.0, "radius must be nonnegative");
    NetDistanceTable table;
    table.max_radius = max_radius;
    table.centers = root_to_leaf_order(order, net.members());
    table.within.reserve(table.centers.size());
    for (Vertex x : table.centers) {
        const VertexSet below = order.descendants_of(x);
        const DistanceMap d = shortest_paths(g, below, x);
        std::vector<NetDistanceTable::Entry> row;
        for (std::size_t v = 0; v < d.size(); ++v) {
            if (d[v] <= max_radius) {
                row.push_back({d[v], static_cast<Vertex>(v)});
            }
        }
        std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) {
            return std::make_pair(a.dist, a.v) < std::make_pair(b.dist, b.v);
        });
        table.within.push_back(std::move(row));
    }
    return table;
}

struct PackingProfile {
    std::vector<double> multipliers;
    std::vector<std::size_t> max_count;                   // per multiplier
    std::vector<std::vector<std::size_t>> per_vertex;     // [multiplier][vertex]
    std::vector<Vertex> argmax;                           // a vertex attaining the max
};

/// Exact max_v |{x in N ∩ V_{v⪯} : d_{G[V_{⪯x}]}(v, x) <= m·Δ}| for each m.
inline PackingProfile packing_profile(const WeightedGraph& g, const TreeOrder& order, const VertexSet& net,
                                      Weight delta, const std::vector<double>& multipliers) {
    detail::require(delta > 0.0, "delta must be positive");
    double top = 0.0;
    for (double m : multipliers) {
        detail::require(m >= 0.0, "radius multipliers must be nonnegative");
        top = std::max(top, m);
    }
    const std::size_t n = g.vertex_count();
    PackingProfile p;
    p.multipliers = multipliers;
    p.per_vertex.assign(multipliers.size(), std::vector<std::size_t>(n, 0));
    const NetDistanceTable table = net_distance_table(g, order, net, top * delta);
    for (const auto& row : table.within) {
        for (const auto& e : row) {
            for (std::size_t k = 0; k < multipliers.size(); ++k) {
                if (e.dist <= multipliers[k] * delta) {
                    ++p.per_vertex[k][static_cast<std::size_t>(e.v)];
                }
            }
        }
    }
    for (const auto& counts : p.per_vertex) {
        auto it = std::max_element(counts.begin(), counts.end());
        p.max_count.push_back(*it);
        p.argmax.push_back(static_cast<Vertex>(it - counts.begin()));
    }
    return p;
}

inline std::uint64_t packing_bound(std::size_t tp_width) {
    const auto t = static_cast<std::uint64_t>(tp_width);
    return t * t * t * t + t * t;
}

/// Everything produced on the way from a tree partition to a net, kept for
/// verification and export.
struct NetConstruction {
    CoreConstruction cores;
    SemiTreeOrderedNet semi;
    TreeOrderedNet net;
};

inline NetConstruction build_tree_ordered_net(const WeightedGraph& g, const TreePartition& tp, Weight delta,
                                              double alpha = 3.0) {
    detail::require(alpha > 0.0, "alpha must be positive");
    NetConstruction out;
    out.cores = construct_cores(g, tp, delta);
    out.semi = build_semi_tree_order(out.cores, tp);
    out.net = semi_to_tree_order(out.semi.order, out.semi.net);
    const PackingProfile prof = packing_profile(g, out.net.order, out.net.net, delta, {alpha});
    out.net.params = NetParams{alpha, delta, std::max<std::size_t>(prof.max_count[0], 1), packing_bound(tp.width()),
                               tp.width()};
    return out;
}

} // namespace twpad
