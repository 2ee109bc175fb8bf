// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Rooted trees, tree decompositions, tree partitions, and the isometric
// copy-per-bag conversion from the former to the latter.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "twpad/errors.hpp"
#include "twpad/graph.hpp"
#include "twpad/graph_io.hpp"

namespace twpad {

using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

/// Rooted tree over nodes 0..size-1 given by parent pointers.
/// Ancestor queries are O(1) via DFS entry/exit times.
class RootedTree {
  public:
    RootedTree() = default;

    explicit RootedTree(std::vector<NodeId> parent) : parent_(std::move(parent)) {
        const std::size_t n = parent_.size();
        if (n == 0) {
            throw ValidationError("tree has no nodes", "");
        }
        children_.assign(n, {});
        for (std::size_t i = 0; i < n; ++i) {
            const NodeId p = parent_[i];
            if (p == kNoNode) {
                if (root_ != kNoNode) {
                    throw ValidationError("tree has more than one root", "node " + std::to_string(i));
                }
                root_ = static_cast<NodeId>(i);
            } else {
                if (p < 0 || static_cast<std::size_t>(p) >= n || p == static_cast<NodeId>(i)) {
                    throw ValidationError("invalid parent pointer", "node " + std::to_string(i));
                }
                children_[static_cast<std::size_t>(p)].push_back(static_cast<NodeId>(i));
            }
        }
        if (root_ == kNoNode) {
            throw ValidationError("tree has no root", "");
        }
        depth_.assign(n, -1);
        tin_.assign(n, 0);
        tout_.assign(n, 0);
        // iterative DFS; children in ascending id order
        std::int32_t clock = 0;
        std::vector<std::pair<NodeId, std::size_t>> stack{{root_, 0}};
        depth_[static_cast<std::size_t>(root_)] = 0;
        tin_[static_cast<std::size_t>(root_)] = clock++;
        preorder_.push_back(root_);
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            const auto& kids = children_[static_cast<std::size_t>(node)];
            if (next < kids.size()) {
                const NodeId c = kids[next++];
                depth_[static_cast<std::size_t>(c)] = depth_[static_cast<std::size_t>(node)] + 1;
                tin_[static_cast<std::size_t>(c)] = clock++;
                preorder_.push_back(c);
                stack.emplace_back(c, 0);
            } else {
                tout_[static_cast<std::size_t>(node)] = clock;
                stack.pop_back();
            }
        }
        if (preorder_.size() != n) {
            throw ValidationError("parent pointers contain a cycle", "");
        }
    }

    /// Roots an undirected tree given by its edge list at `root`.
    static RootedTree from_edges(std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges, NodeId root) {
        if (edges.size() + 1 != n) {
            throw ValidationError("tree on " + std::to_string(n) + " nodes needs " + std::to_string(n - 1) + " edges",
                                  "found " + std::to_string(edges.size()));
        }
        std::vector<std::vector<NodeId>> adj(n);
        for (auto [a, b] : edges) {
            if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= n || static_cast<std::size_t>(b) >= n || a == b) {
                throw ValidationError("invalid tree edge", std::to_string(a + 1) + " " + std::to_string(b + 1));
            }
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
        std::vector<NodeId> parent(n, kNoNode);
        std::vector<char> seen(n, 0);
        std::deque<NodeId> queue{root};
        seen[static_cast<std::size_t>(root)] = 1;
        while (!queue.empty()) {
            NodeId x = queue.front();
            queue.pop_front();
            auto& nb = adj[static_cast<std::size_t>(x)];
            std::sort(nb.begin(), nb.end());
            for (NodeId y : nb) {
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    parent[static_cast<std::size_t>(y)] = x;
                    queue.push_back(y);
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (!seen[i]) {
                throw ValidationError("tree is disconnected", "node " + std::to_string(i + 1));
            }
        }
        return RootedTree(std::move(parent));
    }

    std::size_t size() const noexcept { return parent_.size(); }
    NodeId root() const noexcept { return root_; }
    NodeId parent(NodeId x) const { return parent_[static_cast<std::size_t>(x)]; }
    const std::vector<NodeId>& parents() const noexcept { return parent_; }
    const std::vector<NodeId>& children(NodeId x) const { return children_[static_cast<std::size_t>(x)]; }
    std::int32_t depth(NodeId x) const { return depth_[static_cast<std::size_t>(x)]; }
    /// Nodes in DFS preorder (root first, children ascending).
    const std::vector<NodeId>& preorder() const noexcept { return preorder_; }

    /// True when `a` is an ancestor of `d` or equal to it.
    bool is_ancestor_or_self(NodeId a, NodeId d) const {
        const auto ai = static_cast<std::size_t>(a);
        const auto di = static_cast<std::size_t>(d);
        return tin_[ai] <= tin_[di] && tout_[di] <= tout_[ai];
    }

    friend bool operator==(const RootedTree& a, const RootedTree& b) { return a.parent_ == b.parent_; }

  private:
    std::vector<NodeId> parent_;
    std::vector<std::vector<NodeId>> children_;
    std::vector<std::int32_t> depth_;
    std::vector<std::int32_t> tin_;
    std::vector<std::int32_t> tout_;
    std::vector<NodeId> preorder_;
    NodeId root_ = kNoNode;
};

using BagId = NodeId;

struct TreeDecomposition {
    std::vector<std::vector<Vertex>> bags; // sorted, duplicate-free
    RootedTree tree;

    std::size_t max_bag_size() const {
        std::size_t m = 0;
        for (const auto& b : bags) {
            m = std::max(m, b.size());
        }
        return m;
    }
    /// Treewidth convention: max bag size - 1.
    std::int64_t width() const { return static_cast<std::int64_t>(max_bag_size()) - 1; }
};

/// Checks the three decomposition axioms against g; throws ValidationError
/// naming the first offending vertex, edge, or bag.
inline void validate_tree_decomposition(const WeightedGraph& g, const TreeDecomposition& td) {
    const std::size_t n = g.vertex_count();
    if (td.bags.size() != td.tree.size()) {
        throw ValidationError("bag count does not match tree size", "");
    }
    std::vector<std::vector<BagId>> holders(n);
    for (std::size_t b = 0; b < td.bags.size(); ++b) {
        for (Vertex v : td.bags[b]) {
            if (v < 0 || static_cast<std::size_t>(v) >= n) {
                throw ValidationError("bag references unknown vertex",
                                      "bag " + std::to_string(b + 1) + " vertex " + std::to_string(v + 1));
            }
            holders[static_cast<std::size_t>(v)].push_back(static_cast<BagId>(b));
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (holders[v].empty()) {
            throw ValidationError("vertex not covered by any bag", "vertex " + std::to_string(v + 1));
        }
        // The holders form a connected subtree iff exactly one of them has a
        // parent outside the set.
        std::size_t tops = 0;
        for (BagId b : holders[v]) {
            const BagId p = td.tree.parent(b);
            if (p == kNoNode || !std::binary_search(td.bags[static_cast<std::size_t>(p)].begin(),
                                                    td.bags[static_cast<std::size_t>(p)].end(), static_cast<Vertex>(v))) {
                ++tops;
            }
        }
        if (tops != 1) {
            throw ValidationError("bags containing vertex do not form a connected subtree",
                                  "vertex " + std::to_string(v + 1));
        }
    }
    for (const Edge& e : g.edges()) {
        bool covered = false;
        for (BagId b : holders[static_cast<std::size_t>(e.u)]) {
            const auto& bag = td.bags[static_cast<std::size_t>(b)];
            if (std::binary_search(bag.begin(), bag.end(), e.v)) {
                covered = true;
                break;
            }
        }
        if (!covered) {
            throw ValidationError("edge not contained in any bag",
                                  "edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1));
        }
    }
}

/// PACE-2017 `.td` text. Bags are 1-indexed in the file; the tree is rooted
/// at bag 1.
inline TreeDecomposition parse_tree_decomposition(std::string_view text, const WeightedGraph& g) {
    bool have_header = false;
    std::size_t bag_count = 0;
    std::size_t declared_max = 0;
    std::vector<std::vector<Vertex>> bags;
    std::vector<char> seen_bag;
    std::vector<std::pair<NodeId, NodeId>> edges;
    detail::for_each_line(text, "c", [&](const std::vector<std::string_view>& tok, std::size_t line) {
        if (tok[0] == "s") {
            if (have_header || tok.size() != 5 || tok[1] != "td") {
                throw ParseError("expected single header 's td <bags> <max-bag-size> <n>'", line);
            }
            bag_count = detail::parse_number<std::size_t>(tok[2], line, "bag count");
            declared_max = detail::parse_number<std::size_t>(tok[3], line, "max bag size");
            const auto n = detail::parse_number<std::size_t>(tok[4], line, "vertex count");
            if (n != g.vertex_count()) {
                throw ParseError("decomposition is for " + std::to_string(n) + " vertices, graph has " +
                                     std::to_string(g.vertex_count()),
                                 line);
            }
            if (bag_count == 0) {
                throw ParseError("decomposition has no bags", line);
            }
            bags.assign(bag_count, {});
            seen_bag.assign(bag_count, 0);
            have_header = true;
            return;
        }
        if (!have_header) {
            throw ParseError("content before 's td' header", line);
        }
        if (tok[0] == "b") {
            if (tok.size() < 2) {
                throw ParseError("bag line without id", line);
            }
            const auto id = detail::parse_number<std::size_t>(tok[1], line, "bag id");
            if (id < 1 || id > bag_count) {
                throw ParseError("bag id out of range", line);
            }
            if (seen_bag[id - 1]) {
                throw ParseError("duplicate bag " + std::to_string(id), line);
            }
            seen_bag[id - 1] = 1;
            auto& bag = bags[id - 1];
            for (std::size_t i = 2; i < tok.size(); ++i) {
                const auto v = detail::parse_number<long long>(tok[i], line, "vertex");
                if (v < 1 || static_cast<std::size_t>(v) > g.vertex_count()) {
                    throw ValidationError("bag references unknown vertex",
                                          "bag " + std::to_string(id) + " vertex " + std::to_string(v));
                }
                bag.push_back(static_cast<Vertex>(v - 1));
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
        } else {
            if (tok.size() != 2) {
                throw ParseError("expected tree edge '<id> <id>'", line);
            }
            const auto a = detail::parse_number<std::size_t>(tok[0], line, "bag id");
            const auto b = detail::parse_number<std::size_t>(tok[1], line, "bag id");
            if (a < 1 || b < 1 || a > bag_count || b > bag_count) {
                throw ParseError("tree edge references unknown bag", line);
            }
            edges.emplace_back(static_cast<NodeId>(a - 1), static_cast<NodeId>(b - 1));
        }
    });
    if (!have_header) {
        throw ParseError("missing 's td' header", 0);
    }
    for (std::size_t b = 0; b < bag_count; ++b) {
        if (!seen_bag[b]) {
            throw ParseError("bag " + std::to_string(b + 1) + " declared but not listed", 0);
        }
    }
    TreeDecomposition td{std::move(bags), RootedTree::from_edges(bag_count, edges, 0)};
    if (td.max_bag_size() != declared_max) {
        throw ParseError("header declares max bag size " + std::to_string(declared_max) + ", actual " +
                             std::to_string(td.max_bag_size()),
                         0);
    }
    validate_tree_decomposition(g, td);
    return td;
}

inline std::string write_tree_decomposition(const TreeDecomposition& td, std::size_t vertex_count) {
    std::string out = "s td " + std::to_string(td.bags.size()) + " " + std::to_string(td.max_bag_size()) + " " +
                      std::to_string(vertex_count) + "\n";
    for (std::size_t b = 0; b < td.bags.size(); ++b) {
        out += "b " + std::to_string(b + 1);
        for (Vertex v : td.bags[b]) {
            out += " " + std::to_string(v + 1);
        }
        out += "\n";
    }
    for (std::size_t b = 0; b < td.bags.size(); ++b) {
        const NodeId p = td.tree.parent(static_cast<NodeId>(b));
        if (p != kNoNode) {
            out += std::to_string(p + 1) + " " + std::to_string(b + 1) + "\n";
        }
    }
    return out;
}

/// Tree of pairwise-disjoint bags; every edge stays inside a bag or crosses a
/// parent-child bag pair.
struct TreePartition {
    std::vector<std::vector<Vertex>> bags;
    RootedTree tree;
    std::vector<BagId> bag_of; // vertex -> bag

    std::size_t width() const {
        std::size_t m = 0;
        for (const auto& b : bags) {
            m = std::max(m, b.size());
        }
        return m;
    }
    std::int32_t level(BagId b) const { return tree.depth(b); }
};

inline TreePartition make_tree_partition(std::size_t vertex_count, std::vector<std::vector<Vertex>> bags,
                                         RootedTree tree) {
    if (bags.size() != tree.size()) {
        throw ValidationError("bag count does not match tree size", "");
    }
    std::vector<BagId> bag_of(vertex_count, kNoNode);
    for (std::size_t b = 0; b < bags.size(); ++b) {
        std::sort(bags[b].begin(), bags[b].end());
        for (Vertex v : bags[b]) {
            if (v < 0 || static_cast<std::size_t>(v) >= vertex_count) {
                throw ValidationError("bag references unknown vertex", "bag " + std::to_string(b + 1));
            }
            if (bag_of[static_cast<std::size_t>(v)] != kNoNode) {
                throw ValidationError("tree partition bags overlap", "vertex " + std::to_string(v + 1));
            }
            bag_of[static_cast<std::size_t>(v)] = static_cast<BagId>(b);
        }
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
        if (bag_of[v] == kNoNode) {
            throw ValidationError("tree partition misses a vertex", "vertex " + std::to_string(v + 1));
        }
    }
    return TreePartition{std::move(bags), std::move(tree), std::move(bag_of)};
}

/// Edge validity: endpoints in one bag or in a parent-child bag pair.
inline void validate_tree_partition(const WeightedGraph& g, const TreePartition& tp) {
    if (tp.bag_of.size() != g.vertex_count()) {
        throw ValidationError("tree partition vertex count does not match graph", "");
    }
    for (const Edge& e : g.edges()) {
        const BagId a = tp.bag_of[static_cast<std::size_t>(e.u)];
        const BagId b = tp.bag_of[static_cast<std::size_t>(e.v)];
        if (a != b && tp.tree.parent(a) != b && tp.tree.parent(b) != a) {
            throw ValidationError("edge crosses non-adjacent bags",
                                  "edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1));
        }
    }
}

struct IsometricEmbedding {
    WeightedGraph host;
    TreePartition tree_partition;
    std::vector<Vertex> forward;             // original vertex -> designated copy
    std::vector<std::vector<Vertex>> copies; // original vertex -> all copies
    std::vector<Vertex> source;              // host vertex -> original vertex
    std::size_t source_td_max_bag = 0;
};

/// One copy of each vertex per bag holding it, zero-weight edges between
/// copies in adjacent bags, and each original edge placed once in the common
/// bag nearest the root.
inline IsometricEmbedding td_to_tree_partition(const WeightedGraph& g, const TreeDecomposition& td) {
    const std::size_t n = g.vertex_count();
    const std::size_t bag_count = td.bags.size();

    std::vector<Vertex> source;
    std::vector<std::vector<Vertex>> host_bags(bag_count);
    std::vector<std::map<BagId, Vertex>> copy_in(n);
    for (std::size_t b = 0; b < bag_count; ++b) {
        for (Vertex v : td.bags[b]) {
            const auto copy = static_cast<Vertex>(source.size());
            source.push_back(v);
            host_bags[b].push_back(copy);
            copy_in[static_cast<std::size_t>(v)][static_cast<BagId>(b)] = copy;
        }
    }

    const auto nearer_root = [&](BagId a, BagId b) {
        return std::make_pair(td.tree.depth(a), a) < std::make_pair(td.tree.depth(b), b);
    };

    std::vector<Edge> host_edges;
    for (std::size_t v = 0; v < n; ++v) {
        for (auto [b, copy] : copy_in[v]) {
            const BagId p = td.tree.parent(b);
            if (p == kNoNode) {
                continue;
            }
            auto it = copy_in[v].find(p);
            if (it != copy_in[v].end()) {
                host_edges.push_back(Edge{it->second, copy, 0.0});
            }
        }
    }
    for (const Edge& e : g.edges()) {
        BagId best = kNoNode;
        for (auto [b, copy] : copy_in[static_cast<std::size_t>(e.u)]) {
            if (copy_in[static_cast<std::size_t>(e.v)].count(b) && (best == kNoNode || nearer_root(b, best))) {
                best = b;
            }
        }
        if (best == kNoNode) {
            throw ValidationError("edge not contained in any bag",
                                  "edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1));
        }
        host_edges.push_back(Edge{copy_in[static_cast<std::size_t>(e.u)][best],
                                  copy_in[static_cast<std::size_t>(e.v)][best], e.w});
    }

    std::vector<Vertex> forward(n);
    std::vector<std::vector<Vertex>> copies(n);
    for (std::size_t v = 0; v < n; ++v) {
        BagId best = kNoNode;
        for (auto [b, copy] : copy_in[v]) {
            copies[v].push_back(copy);
            if (best == kNoNode || nearer_root(b, best)) {
                best = b;
            }
        }
        forward[v] = copy_in[v].at(best);
    }

    const std::size_t host_n = source.size();
    WeightedGraph host(host_n, std::move(host_edges));
    TreePartition tp = make_tree_partition(host_n, std::move(host_bags), td.tree);
    return IsometricEmbedding{std::move(host), std::move(tp), std::move(forward), std::move(copies),
                              std::move(source), td.max_bag_size()};
}

/// Tree decomposition induced by eliminating vertices in `order` (first
/// entry eliminated first). Bag 0 is the root and belongs to the last vertex.
inline TreeDecomposition td_from_elimination_order(const WeightedGraph& g, const std::vector<Vertex>& order) {
    const std::size_t n = g.vertex_count();
    if (order.size() != n) {
        throw ArgumentError("elimination order must list every vertex once");
    }
    std::vector<std::size_t> pos(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<std::size_t>(order[i]);
        if (v >= n || pos[v] != n) {
            throw ArgumentError("elimination order must list every vertex once");
        }
        pos[v] = i;
    }
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const Edge& e : g.edges()) {
        adj[static_cast<std::size_t>(e.u)][static_cast<std::size_t>(e.v)] = 1;
        adj[static_cast<std::size_t>(e.v)][static_cast<std::size_t>(e.u)] = 1;
    }
    // bag index = n-1-pos so the last eliminated vertex owns bag 0
    std::vector<std::vector<Vertex>> bags(n);
    std::vector<NodeId> parent(n, kNoNode);
    for (std::size_t i = 0; i < n; ++i) {
        const auto v = static_cast<std::size_t>(order[i]);
        std::vector<std::size_t> later;
        for (std::size_t u = 0; u < n; ++u) {
            if (adj[v][u] && pos[u] > i) {
                later.push_back(u);
            }
        }
        for (std::size_t a : later) {
            for (std::size_t b : later) {
                if (a != b) {
                    adj[a][b] = 1;
                }
            }
        }
        auto& bag = bags[n - 1 - i];
        bag.push_back(static_cast<Vertex>(v));
        std::size_t first = n;
        for (std::size_t u : later) {
            bag.push_back(static_cast<Vertex>(u));
            first = std::min(first, pos[u]);
        }
        std::sort(bag.begin(), bag.end());
        if (first != n) {
            parent[n - 1 - i] = static_cast<NodeId>(n - 1 - first);
        } else if (i + 1 != n) {
            // disconnected remainder cannot happen for connected g, but keep a tree
            parent[n - 1 - i] = 0;
        }
    }
    TreeDecomposition td{std::move(bags), RootedTree(std::move(parent))};
    validate_tree_decomposition(g, td);
    return td;
}

inline constexpr std::size_t kExactTreewidthLimit = 12;

/// Exact minimum-width decomposition by dynamic programming over vertex
/// subsets; only for tiny graphs (n <= 12).
inline TreeDecomposition exact_tree_decomposition(const WeightedGraph& g) {
    const std::size_t n = g.vertex_count();
    if (n > kExactTreewidthLimit) {
        throw ArgumentError("exact tree decomposition is limited to " + std::to_string(kExactTreewidthLimit) +
                            " vertices");
    }
    std::vector<std::uint32_t> nbr(n, 0);
    for (const Edge& e : g.edges()) {
        nbr[static_cast<std::size_t>(e.u)] |= 1u << e.v;
        nbr[static_cast<std::size_t>(e.v)] |= 1u << e.u;
    }
    // q(S, v): vertices outside S+v reachable from v through S
    const auto q = [&](std::uint32_t s, std::size_t v) {
        std::uint32_t seen = 1u << v;
        std::uint32_t frontier = 1u << v;
        std::uint32_t outside = 0;
        while (frontier) {
            std::uint32_t next = 0;
            for (std::size_t x = 0; x < n; ++x) {
                if (frontier & (1u << x)) {
                    next |= nbr[x];
                }
            }
            next &= ~seen;
            seen |= next;
            outside |= next & ~s;
            frontier = next & s;
        }
        return static_cast<int>(__builtin_popcount(outside));
    };
    const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
    std::vector<int> tw(static_cast<std::size_t>(full) + 1, std::numeric_limits<int>::max());
    std::vector<std::int8_t> choice(static_cast<std::size_t>(full) + 1, -1);
    tw[0] = -1;
    for (std::uint32_t s = 1; s <= full; ++s) {
        for (std::size_t v = 0; v < n; ++v) {
            if (!(s & (1u << v))) {
                continue;
            }
            const std::uint32_t rest = s & ~(1u << v);
            const int cand = std::max(tw[rest], q(rest, v));
            if (cand < tw[s]) {
                tw[s] = cand;
                choice[s] = static_cast<std::int8_t>(v);
            }
        }
    }
    std::vector<Vertex> order(n);
    std::uint32_t s = full;
    for (std::size_t i = n; i-- > 0;) {
        const auto v = choice[s];
        order[i] = v;
        s &= ~(1u << v);
    }
    return td_from_elimination_order(g, order);
}

} // namespace twpad
