// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Input graph -> tree partition (native or converted from a tree
// decomposition) -> tree-ordered net. Everything downstream runs on the host
// graph; results are read back on the input graph through `forward`.

#include <optional>
#include <utility>
#include <vector>

#include "twpad/errors.hpp"
#include "twpad/graph.hpp"
#include "twpad/net.hpp"
#include "twpad/tree.hpp"

namespace twpad {

struct Pipeline {
    WeightedGraph graph;
    std::optional<IsometricEmbedding> embedding; // set when built from a tree decomposition
    std::optional<TreePartition> native;         // set when a tree partition was given directly
    NetConstruction net;
    Weight delta = 1.0;
    double alpha = 3.0;

    const WeightedGraph& host() const { return embedding ? embedding->host : graph; }
    const TreePartition& partition() const { return embedding ? embedding->tree_partition : *native; }

    /// Input vertex -> host vertex.
    std::vector<Vertex> forward() const {
        if (embedding) {
            return embedding->forward;
        }
        std::vector<Vertex> id(graph.vertex_count());
        for (std::size_t v = 0; v < id.size(); ++v) {
            id[v] = static_cast<Vertex>(v);
        }
        return id;
    }
};

inline Pipeline pipeline_from_tree_decomposition(WeightedGraph g, const TreeDecomposition& td, Weight delta,
                                                 double alpha) {
    IsometricEmbedding emb = td_to_tree_partition(g, td);
    NetConstruction net = build_tree_ordered_net(emb.host, emb.tree_partition, delta, alpha);
    return Pipeline{std::move(g), std::move(emb), std::nullopt, std::move(net), delta, alpha};
}

inline Pipeline pipeline_from_tree_partition(WeightedGraph g, TreePartition tp, Weight delta, double alpha) {
    validate_tree_partition(g, tp);
    NetConstruction net = build_tree_ordered_net(g, tp, delta, alpha);
    return Pipeline{std::move(g), std::nullopt, std::move(tp), std::move(net), delta, alpha};
}

} // namespace twpad
