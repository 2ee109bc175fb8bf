// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Deterministic covers from a tree-ordered net: one αΔ-ball per net point
// (sparse cover), and greedy disjoint families of αΔ/2-balls completed with
// singletons (partition cover).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "twpad/errors.hpp"
#include "twpad/graph.hpp"
#include "twpad/net.hpp"

namespace twpad {

struct CoverCluster {
    Vertex center;
    VertexSet members;
};

struct SparseCover {
    std::vector<CoverCluster> clusters; // root-to-leaf center order
    double alpha = 3.0;
    Weight delta = 1.0;
    double padding_ratio = 0.0;   // 4α/(α-1)
    Weight diameter_bound = 0.0;  // 2αΔ
    Weight padding_radius = 0.0;  // (α-1)Δ/2
    std::vector<std::size_t> membership; // per vertex
    std::size_t sparsity = 0;            // max membership
    std::size_t tau = 0;
};

inline SparseCover build_sparse_cover(const WeightedGraph& g, const TreeOrderedNet& net, Weight delta) {
    const double alpha = net.params.alpha;
    detail::require(alpha > 1.0, "sparse cover needs alpha > 1");
    detail::require(delta > 0.0, "delta must be positive");
    const std::size_t n = g.vertex_count();
    SparseCover out;
    out.alpha = alpha;
    out.delta = delta;
    out.padding_ratio = 4.0 * alpha / (alpha - 1.0);
    out.diameter_bound = 2.0 * alpha * delta;
    out.padding_radius = (alpha - 1.0) * delta / 2.0;
    out.tau = net.params.tau_emp;
    out.membership.assign(n, 0);
    const NetDistanceTable table = net_distance_table(g, net.order, net.net, alpha * delta);
    for (std::size_t i = 0; i < table.centers.size(); ++i) {
        CoverCluster c{table.centers[i], VertexSet(n)};
        for (const auto& e : table.within[i]) {
            c.members.insert(e.v);
            ++out.membership[static_cast<std::size_t>(e.v)];
        }
        out.clusters.push_back(std::move(c));
    }
    out.sparsity = *std::max_element(out.membership.begin(), out.membership.end());
    return out;
}

struct PartitionCluster {
    Vertex center;    // net point, or the vertex itself for a singleton
    bool singleton;
    VertexSet members;
};

struct PartitionCover {
    std::vector<std::vector<PartitionCluster>> partitions;
    double alpha = 3.0;
    Weight delta = 1.0;
    Weight cluster_radius = 0.0;  // αΔ/2
    double padding_ratio = 0.0;   // 4α/(α-2)
    Weight diameter_bound = 0.0;  // αΔ
    Weight padding_radius = 0.0;  // (α-2)Δ/4
    std::size_t tau = 0;
    bool count_warning = false;   // τ < count <= τ+1
};

/// Greedy partial partitions: each round repeatedly takes, among remaining
/// centers whose ball misses the partition so far, a maximal one (smallest id
/// among maximal ones). Every partition is then completed with singletons.
inline PartitionCover build_partition_cover(const WeightedGraph& g, const TreeOrderedNet& net, Weight delta) {
    const double alpha = net.params.alpha;
    detail::require(alpha > 2.0, "partition cover needs alpha > 2");
    detail::require(delta > 0.0, "delta must be positive");
    const std::size_t n = g.vertex_count();
    PartitionCover out;
    out.alpha = alpha;
    out.delta = delta;
    out.cluster_radius = alpha * delta / 2.0;
    out.padding_ratio = 4.0 * alpha / (alpha - 2.0);
    out.diameter_bound = alpha * delta;
    out.padding_radius = (alpha - 2.0) * delta / 4.0;
    out.tau = net.params.tau_emp;

    const NetDistanceTable table = net_distance_table(g, net.order, net.net, out.cluster_radius);
    const std::size_t k = table.centers.size();
    std::vector<VertexSet> ball_of(k, VertexSet(n));
    std::vector<std::int32_t> index_of(n, -1);
    for (std::size_t i = 0; i < k; ++i) {
        for (const auto& e : table.within[i]) {
            ball_of[i].insert(e.v);
        }
        index_of[static_cast<std::size_t>(table.centers[i])] = static_cast<std::int32_t>(i);
    }

    std::vector<char> remaining(k, 1);
    std::size_t left = k;
    while (left > 0) {
        std::vector<PartitionCluster> part;
        VertexSet used(n);
        for (;;) {
            std::vector<char> candidate(k, 0);
            bool any = false;
            for (std::size_t i = 0; i < k; ++i) {
                if (remaining[i] && !ball_of[i].intersects(used)) {
                    candidate[i] = 1;
                    any = true;
                }
            }
            if (!any) {
                break;
            }
            // maximal: no candidate sits on a proper ancestor node
            std::int32_t pick = -1;
            for (std::size_t i = 0; i < k; ++i) {
                if (!candidate[i]) {
                    continue;
                }
                bool maximal = true;
                for (NodeId a = net.order.tree.parent(net.order.node(table.centers[i])); a != kNoNode;
                     a = net.order.tree.parent(a)) {
                    const Vertex w = net.node_vertex[static_cast<std::size_t>(a)];
                    if (w >= 0 && index_of[static_cast<std::size_t>(w)] >= 0 &&
                        candidate[static_cast<std::size_t>(index_of[static_cast<std::size_t>(w)])]) {
                        maximal = false;
                        break;
                    }
                }
                if (maximal && (pick < 0 || table.centers[i] < table.centers[static_cast<std::size_t>(pick)])) {
                    pick = static_cast<std::int32_t>(i);
                }
            }
            const auto pi = static_cast<std::size_t>(pick);
            remaining[pi] = 0;
            --left;
            used |= ball_of[pi];
            part.push_back(PartitionCluster{table.centers[pi], false, ball_of[pi]});
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (!used.contains(static_cast<Vertex>(v))) {
                part.push_back(PartitionCluster{static_cast<Vertex>(v), true, VertexSet::of(n, {static_cast<Vertex>(v)})});
            }
        }
        out.partitions.push_back(std::move(part));
    }
    out.count_warning = out.partitions.size() > out.tau;
    return out;
}

} // namespace twpad
