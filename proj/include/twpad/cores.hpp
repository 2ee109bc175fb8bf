// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Round-based core carving over a tree partition. Each round splits the
// still-uncovered bags into connected components; inside a component the
// root-most unvisited bag grows a Delta-ball around its uncovered vertices,
// within the uncovered part of its subtree plus the attachments collected
// from cores of earlier rounds.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "twpad/errors.hpp"
#include "twpad/graph.hpp"
#include "twpad/tree.hpp"

namespace twpad {

struct Core {
    std::int32_t id = 0;
    VertexSet members;
    BagId center_bag = kNoNode;
    VertexSet centers; // uncovered vertices of the center bag at creation
    std::int32_t rank = 0;
    VertexSet support_restrict; // vertex set of the support graph H
    VertexSet newly_covered;    // members that were uncovered before this core
    VertexSet attached;         // attachment part of the support graph
    std::int32_t component = 0; // index into CoreConstruction::components
};

/// A connected component of uncovered bags as seen at the start of a round,
/// with its cluster Uncov(V[T']) + A[T'].
struct ComponentRecord {
    std::int32_t round = 0;
    BagId root_bag = kNoNode;
    std::vector<BagId> bags; // ascending
    VertexSet cluster;
};

/// Non-empty attachments right after one core was added.
struct AttachmentSnapshot {
    std::int32_t after_core = 0;
    std::vector<std::pair<BagId, std::vector<Vertex>>> attachments;
};

struct CoreConstruction {
    std::vector<Core> cores;
    std::vector<ComponentRecord> components;
    std::vector<AttachmentSnapshot> attachment_trace;
    std::vector<std::int32_t> first_core; // vertex -> core that covered it first
    std::int32_t rounds = 0;
    Weight delta = 0.0;

    std::int32_t vertex_rank(Vertex v) const {
        return cores[static_cast<std::size_t>(first_core[static_cast<std::size_t>(v)])].rank;
    }
};

inline CoreConstruction construct_cores(const WeightedGraph& g, const TreePartition& tp, Weight delta) {
    detail::require(delta > 0.0, "delta must be positive");
    validate_tree_partition(g, tp);

    const std::size_t n = g.vertex_count();
    const std::size_t bag_count = tp.bags.size();
    const RootedTree& tree = tp.tree;

    CoreConstruction out;
    out.delta = delta;
    out.first_core.assign(n, -1);

    std::vector<char> uncovered(n, 1);
    std::vector<std::size_t> uncovered_in_bag(bag_count);
    for (std::size_t b = 0; b < bag_count; ++b) {
        uncovered_in_bag[b] = tp.bags[b].size();
    }
    std::size_t remaining = n;
    std::vector<VertexSet> attachment(bag_count, VertexSet(n));

    const auto by_level = [&](BagId a, BagId b) {
        return std::make_pair(tree.depth(a), a) < std::make_pair(tree.depth(b), b);
    };

    std::int32_t round = 1;
    while (remaining > 0) {
        // component roots: uncovered bags whose parent is covered or absent
        std::vector<BagId> roots;
        for (std::size_t b = 0; b < bag_count; ++b) {
            if (uncovered_in_bag[b] == 0) {
                continue;
            }
            const BagId p = tree.parent(static_cast<BagId>(b));
            if (p == kNoNode || uncovered_in_bag[static_cast<std::size_t>(p)] == 0) {
                roots.push_back(static_cast<BagId>(b));
            }
        }

        std::vector<char> in_component(bag_count, 0);
        std::vector<char> visited(bag_count, 0);
        for (BagId comp_root : roots) {
            std::vector<BagId> comp;
            std::vector<BagId> stack{comp_root};
            while (!stack.empty()) {
                BagId b = stack.back();
                stack.pop_back();
                comp.push_back(b);
                for (BagId c : tree.children(b)) {
                    if (uncovered_in_bag[static_cast<std::size_t>(c)] > 0) {
                        stack.push_back(c);
                    }
                }
            }
            std::sort(comp.begin(), comp.end());
            for (BagId b : comp) {
                in_component[static_cast<std::size_t>(b)] = 1;
            }

            ComponentRecord record{round, comp_root, comp, VertexSet(n)};
            for (BagId b : comp) {
                for (Vertex v : tp.bags[static_cast<std::size_t>(b)]) {
                    if (uncovered[static_cast<std::size_t>(v)]) {
                        record.cluster.insert(v);
                    }
                }
                record.cluster |= attachment[static_cast<std::size_t>(b)];
            }
            const auto component_index = static_cast<std::int32_t>(out.components.size());
            out.components.push_back(std::move(record));

            std::vector<BagId> schedule = comp;
            std::sort(schedule.begin(), schedule.end(), by_level);
            for (BagId center : schedule) {
                if (visited[static_cast<std::size_t>(center)]) {
                    continue;
                }
                std::vector<BagId> subtree;
                for (BagId b : comp) {
                    if (tree.is_ancestor_or_self(center, b)) {
                        subtree.push_back(b);
                    }
                }
                VertexSet support(n);
                VertexSet attached(n);
                for (BagId b : subtree) {
                    for (Vertex v : tp.bags[static_cast<std::size_t>(b)]) {
                        if (uncovered[static_cast<std::size_t>(v)]) {
                            support.insert(v);
                        }
                    }
                    attached |= attachment[static_cast<std::size_t>(b)];
                }
                support |= attached;

                VertexSet centers(n);
                for (Vertex v : tp.bags[static_cast<std::size_t>(center)]) {
                    if (uncovered[static_cast<std::size_t>(v)]) {
                        centers.insert(v);
                    }
                }
                if (centers.empty()) {
                    throw std::logic_error("unvisited bag without uncovered vertices");
                }

                Core core;
                core.id = static_cast<std::int32_t>(out.cores.size());
                core.members = ball(g, support, centers, delta).members;
                core.center_bag = center;
                core.centers = centers;
                core.rank = round;
                core.support_restrict = support;
                core.newly_covered = VertexSet(n);
                core.attached = std::move(attached);
                core.component = component_index;

                for (Vertex v : core.members.members()) {
                    const auto vi = static_cast<std::size_t>(v);
                    if (uncovered[vi]) {
                        uncovered[vi] = 0;
                        --uncovered_in_bag[static_cast<std::size_t>(tp.bag_of[vi])];
                        --remaining;
                        core.newly_covered.insert(v);
                        out.first_core[vi] = core.id;
                    }
                    const BagId b = tp.bag_of[vi];
                    if (in_component[static_cast<std::size_t>(b)]) {
                        visited[static_cast<std::size_t>(b)] = 1;
                    }
                }
                for (BagId b : subtree) {
                    auto& att = attachment[static_cast<std::size_t>(b)];
                    if (att.intersects(core.members)) {
                        att -= core.members;
                    }
                }
                if (center != comp_root) {
                    attachment[static_cast<std::size_t>(tree.parent(center))] |= core.members;
                }

                AttachmentSnapshot snap{core.id, {}};
                for (std::size_t b = 0; b < bag_count; ++b) {
                    if (!attachment[b].empty()) {
                        snap.attachments.emplace_back(static_cast<BagId>(b), attachment[b].members());
                    }
                }
                out.attachment_trace.push_back(std::move(snap));
                out.cores.push_back(std::move(core));
            }
            for (BagId b : comp) {
                in_component[static_cast<std::size_t>(b)] = 0;
            }
        }
        out.rounds = round;
        ++round;
    }
    return out;
}

} // namespace twpad
