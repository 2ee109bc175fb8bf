// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Invariant checks. Distances here come from oracle.hpp only; the structures
// under test come from the Dijkstra-based constructions.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "twpad/cores.hpp"
#include "twpad/covers.hpp"
#include "twpad/graph.hpp"
#include "twpad/net.hpp"
#include "twpad/oracle.hpp"
#include "twpad/padded.hpp"
#include "twpad/pipeline.hpp"
#include "twpad/random.hpp"
#include "twpad/texp.hpp"
#include "twpad/tree.hpp"

namespace twpad {

enum class Status { pass, warn, fail };

inline const char* status_name(Status s) {
    switch (s) {
    case Status::pass:
        return "pass";
    case Status::warn:
        return "warn";
    case Status::fail:
        return "fail";
    }
    return "fail";
}

struct Check {
    std::string name;
    Status status = Status::pass;
    double measured = 0.0;
    double bound = 0.0;
    std::string witness; // first offending item, empty on pass
};

struct VerificationReport {
    std::vector<Check> checks;

    void add(Check c) { checks.push_back(std::move(c)); }
    void add(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }

    std::size_t count(Status s) const {
        return static_cast<std::size_t>(
            std::count_if(checks.begin(), checks.end(), [&](const Check& c) { return c.status == s; }));
    }
    bool passed() const { return count(Status::fail) == 0; }

    const Check* find(const std::string& name) const {
        for (const Check& c : checks) {
            if (c.name == name) {
                return &c;
            }
        }
        return nullptr;
    }
};

namespace detail {

inline std::string vlabel(Vertex v) { return "vertex " + std::to_string(v + 1); }

inline bool close(Weight a, Weight b) {
    if (a == kInfinity || b == kInfinity) {
        return a == b;
    }
    return std::fabs(a - b) <= kDistanceTolerance;
}

/// Check whose measured value is a violation count (bound 0).
struct Tally {
    explicit Tally(std::string n) : name(std::move(n)) {}

    std::string name;
    std::size_t violations = 0;
    std::string witness;

    void flag(const std::string& what) {
        if (violations++ == 0) {
            witness = what;
        }
    }
    Check done() const {
        return Check{name, violations == 0 ? Status::pass : Status::fail, static_cast<double>(violations), 0.0,
                     witness};
    }
};

inline Check at_most(std::string name, double measured, double bound, std::string witness) {
    const bool ok = measured <= bound + kDistanceTolerance;
    return Check{std::move(name), ok ? Status::pass : Status::fail, measured, bound, ok ? "" : std::move(witness)};
}

} // namespace detail

/// Worst-case merge of checks with equal names (used for seed sweeps).
inline std::vector<Check> merge_checks(const std::vector<std::vector<Check>>& runs) {
    std::vector<Check> out;
    for (const auto& run : runs) {
        for (const Check& c : run) {
            auto it = std::find_if(out.begin(), out.end(), [&](const Check& o) { return o.name == c.name; });
            if (it == out.end()) {
                out.push_back(c);
                continue;
            }
            if (static_cast<int>(c.status) > static_cast<int>(it->status)) {
                it->status = c.status;
                it->witness = c.witness;
            }
            if (c.measured > it->measured) {
                it->measured = c.measured;
                it->bound = c.bound;
            }
        }
    }
    return out;
}

// ---- graph-core ---------------------------------------------------------

/// The graph-core searches under test; replaceable so the checks can be
/// exercised against broken implementations.
struct GraphPrimitives {
    std::function<DistanceMap(const WeightedGraph&, const VertexSet&, Vertex)> search =
        [](const WeightedGraph& g, const VertexSet& r, Vertex s) { return shortest_paths(g, r, s); };
    std::function<Ball(const WeightedGraph&, const VertexSet&, const VertexSet&, Weight)> ball =
        [](const WeightedGraph& g, const VertexSet& r, const VertexSet& c, Weight rad) { return twpad::ball(g, r, c, rad); };
    std::function<Weight(const WeightedGraph&, const VertexSet&)> strong = [](const WeightedGraph& g,
                                                                              const VertexSet& c) {
        return strong_diameter(g, c);
    };
    std::function<Weight(const WeightedGraph&, const VertexSet&)> weak = [](const WeightedGraph& g,
                                                                            const VertexSet& c) {
        return weak_diameter(g, c);
    };
};

/// Dijkstra-based primitives against Floyd-Warshall on random induced
/// subgraphs of at most `cap` vertices.
inline std::vector<Check> verify_graph(const WeightedGraph& g, std::size_t cap, std::size_t samples,
                                       std::uint64_t seed, const GraphPrimitives& prim = {}) {
    const std::size_t n = g.vertex_count();
    const VertexSet all = VertexSet::full(n);
    detail::Tally distances{"graph.oracle_equivalence"};
    detail::Tally monotone{"graph.restriction_monotone"};
    detail::Tally balls{"graph.ball_oracle"};
    detail::Tally nested{"graph.ball_nested"};
    detail::Tally diam{"graph.diameter_order"};

    for (std::size_t i = 0; i < samples; ++i) {
        Stream rng(seed, 0x67726170ULL, i);
        const std::size_t target = 1 + static_cast<std::size_t>(rng.next() % std::min(cap, n));
        // grow a BFS region, then thin it so some samples disconnect
        std::vector<char> seen(n, 0);
        std::vector<Vertex> region;
        std::vector<Vertex> frontier{static_cast<Vertex>(rng.next() % n)};
        seen[static_cast<std::size_t>(frontier[0])] = 1;
        for (std::size_t head = 0; head < frontier.size() && region.size() < target; ++head) {
            const Vertex v = frontier[head];
            region.push_back(v);
            for (const Arc& a : g.neighbors(v)) {
                if (!seen[static_cast<std::size_t>(a.to)]) {
                    seen[static_cast<std::size_t>(a.to)] = 1;
                    frontier.push_back(a.to);
                }
            }
        }
        VertexSet restrict(n);
        for (Vertex v : region) {
            if (restrict.empty() || rng.uniform() >= 0.2) {
                restrict.insert(v);
            }
        }
        const AllPairs fw(g, restrict);
        const auto members = restrict.members();
        for (Vertex s : members) {
            const DistanceMap d = prim.search(g, restrict, s);
            const DistanceMap full = prim.search(g, all, s);
            for (std::size_t v = 0; v < n; ++v) {
                if (!detail::close(d[v], fw(s, static_cast<Vertex>(v)))) {
                    distances.flag("sample " + std::to_string(i) + ", " + detail::vlabel(s) + " to " +
                                   detail::vlabel(static_cast<Vertex>(v)));
                }
                if (full[v] > d[v] + kDistanceTolerance) {
                    monotone.flag(detail::vlabel(s) + " to " + detail::vlabel(static_cast<Vertex>(v)));
                }
            }
        }
        const Vertex s = members[static_cast<std::size_t>(rng.next() % members.size())];
        Weight reach = 0.0;
        for (Vertex v : members) {
            if (fw(s, v) != kInfinity) {
                reach = std::max(reach, fw(s, v));
            }
        }
        const Weight r = reach * rng.uniform();
        const Ball b = prim.ball(g, restrict, VertexSet::of(n, {s}), r);
        const Ball half = prim.ball(g, restrict, VertexSet::of(n, {s}), r / 2.0);
        for (std::size_t v = 0; v < n; ++v) {
            const Weight fd = fw(s, static_cast<Vertex>(v));
            if (std::fabs(fd - r) > kDistanceTolerance && b.members.contains(static_cast<Vertex>(v)) != (fd <= r)) {
                balls.flag("sample " + std::to_string(i) + ", " + detail::vlabel(static_cast<Vertex>(v)));
            }
        }
        if (!half.members.is_subset_of(b.members)) {
            nested.flag("sample " + std::to_string(i));
        }
        Weight fw_strong = 0.0;
        for (Vertex a : members) {
            for (Vertex c : members) {
                fw_strong = std::max(fw_strong, fw(a, c));
            }
        }
        const Weight strong = prim.strong(g, restrict);
        const Weight weak = prim.weak(g, restrict);
        if (!detail::close(strong, fw_strong)) {
            distances.flag("sample " + std::to_string(i) + ", strong diameter");
        }
        if (weak > strong + kDistanceTolerance) {
            diam.flag("sample " + std::to_string(i));
        }
    }
    return {distances.done(), monotone.done(), balls.done(), nested.done(), diam.done()};
}

// ---- tree-structures ----------------------------------------------------

inline std::vector<Check> verify_embedding(const WeightedGraph& g, const IsometricEmbedding& emb,
                                           const OracleMetric& metric_g) {
    const WeightedGraph& h = emb.host;
    const TreePartition& tp = emb.tree_partition;
    const std::size_t hn = h.vertex_count();

    detail::Tally part{"convert.partition"};
    std::vector<int> seen(hn, 0);
    for (std::size_t b = 0; b < tp.bags.size(); ++b) {
        for (Vertex v : tp.bags[b]) {
            if (v < 0 || static_cast<std::size_t>(v) >= hn) {
                part.flag("bag " + std::to_string(b + 1) + " names an unknown vertex");
                continue;
            }
            if (seen[static_cast<std::size_t>(v)]++ > 0) {
                part.flag("host " + detail::vlabel(v) + " in two bags");
            }
        }
    }
    for (std::size_t v = 0; v < hn; ++v) {
        if (seen[v] == 0) {
            part.flag("host " + detail::vlabel(static_cast<Vertex>(v)) + " in no bag");
        }
    }

    detail::Tally valid{"convert.validity"};
    std::vector<BagId> bag_of(hn, kNoNode);
    for (std::size_t b = 0; b < tp.bags.size(); ++b) {
        for (Vertex v : tp.bags[b]) {
            if (v >= 0 && static_cast<std::size_t>(v) < hn) {
                bag_of[static_cast<std::size_t>(v)] = static_cast<BagId>(b);
            }
        }
    }
    for (const Edge& e : h.edges()) {
        const BagId a = bag_of[static_cast<std::size_t>(e.u)];
        const BagId b = bag_of[static_cast<std::size_t>(e.v)];
        if (a == kNoNode || b == kNoNode || (a != b && tp.tree.parent(a) != b && tp.tree.parent(b) != a)) {
            valid.flag("host edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1));
        }
    }

    detail::Tally iso{"convert.isometry"};
    detail::Tally copies{"convert.copy_equivalence"};
    const BellmanFord bf(h, VertexSet::full(hn));
    for (std::size_t x = 0; x < g.vertex_count(); ++x) {
        const DistanceMap d = bf.run(emb.forward[x]);
        for (std::size_t y = 0; y < g.vertex_count(); ++y) {
            if (!detail::close(d[static_cast<std::size_t>(emb.forward[y])],
                               metric_g(static_cast<Vertex>(x), static_cast<Vertex>(y)))) {
                iso.flag(detail::vlabel(static_cast<Vertex>(x)) + " to " + detail::vlabel(static_cast<Vertex>(y)));
            }
        }
        for (Vertex c : emb.copies[x]) {
            if (!detail::close(d[static_cast<std::size_t>(c)], 0.0)) {
                copies.flag(detail::vlabel(static_cast<Vertex>(x)) + ", host copy " + std::to_string(c + 1));
            }
        }
    }

    Check width = detail::at_most("convert.width", static_cast<double>(tp.width()),
                                  static_cast<double>(emb.source_td_max_bag), "host bag larger than source bag");
    if (tp.width() != emb.source_td_max_bag) {
        width.status = Status::fail;
        width.witness = "host max bag " + std::to_string(tp.width()) + " vs source " +
                        std::to_string(emb.source_td_max_bag);
    }
    return {part.done(), valid.done(), iso.done(), copies.done(), width};
}

// ---- ordered-net: cores -------------------------------------------------

inline std::vector<Check> verify_cores(const WeightedGraph& g, const TreePartition& tp, const CoreConstruction& cc) {
    const std::size_t n = g.vertex_count();
    const std::size_t tpw = tp.width();
    const RootedTree& tree = tp.tree;
    const auto in_subtree = [&](BagId top, Vertex v) {
        return tree.is_ancestor_or_self(top, tp.bag_of[static_cast<std::size_t>(v)]);
    };

    detail::Tally cover{"cores.cover"};
    VertexSet covered(n);
    for (const Core& c : cc.cores) {
        covered |= c.members;
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!covered.contains(static_cast<Vertex>(v))) {
            cover.flag(detail::vlabel(static_cast<Vertex>(v)));
        }
    }

    detail::Tally disjoint{"cores.same_rank_disjoint"};
    for (std::size_t a = 0; a < cc.cores.size(); ++a) {
        for (std::size_t b = a + 1; b < cc.cores.size(); ++b) {
            if (cc.cores[a].rank == cc.cores[b].rank && cc.cores[a].members.intersects(cc.cores[b].members)) {
                disjoint.flag("cores " + std::to_string(a) + " and " + std::to_string(b));
            }
        }
    }

    std::int32_t max_rank = 0;
    for (const Core& c : cc.cores) {
        max_rank = std::max(max_rank, c.rank);
    }
    Check rounds = detail::at_most("cores.round_bound", max_rank, static_cast<double>(tpw),
                                   "rank " + std::to_string(max_rank));

    std::vector<std::size_t> per_vertex(n, 0);
    for (const Core& c : cc.cores) {
        for (Vertex v : c.members.members()) {
            ++per_vertex[static_cast<std::size_t>(v)];
        }
    }
    const auto worst_v = std::max_element(per_vertex.begin(), per_vertex.end());
    Check vmult = detail::at_most("cores.vertex_multiplicity", static_cast<double>(*worst_v), static_cast<double>(tpw),
                                  detail::vlabel(static_cast<Vertex>(worst_v - per_vertex.begin())));

    std::size_t worst_bag = 0;
    BagId worst_bag_id = 0;
    for (std::size_t b = 0; b < tp.bags.size(); ++b) {
        const VertexSet bag = VertexSet::of(n, tp.bags[b]);
        std::size_t k = 0;
        for (const Core& c : cc.cores) {
            k += c.members.intersects(bag) ? 1 : 0;
        }
        if (k > worst_bag) {
            worst_bag = k;
            worst_bag_id = static_cast<BagId>(b);
        }
    }
    Check bmult = detail::at_most("cores.bag_multiplicity", static_cast<double>(worst_bag),
                                  static_cast<double>(tpw * tpw), "bag " + std::to_string(worst_bag_id + 1));

    detail::Tally region{"cores.region"};
    for (const Core& c : cc.cores) {
        const std::string tag = "core " + std::to_string(c.id);
        const VertexSet bag = VertexSet::of(n, tp.bags[static_cast<std::size_t>(c.center_bag)]);
        if (c.centers.empty() || !c.centers.is_subset_of(bag & c.members)) {
            region.flag(tag + ": centers outside center bag or core");
        }
        if (!c.members.is_subset_of(c.support_restrict)) {
            region.flag(tag + ": member outside support graph");
        }
        if (!c.centers.is_subset_of(c.support_restrict)) {
            region.flag(tag + ": center outside support graph");
            continue;
        }
        const DistanceMap d = BellmanFord(g, c.support_restrict).run(c.centers.members());
        for (std::size_t v = 0; v < n; ++v) {
            const bool inside = d[v] <= cc.delta + kDistanceTolerance;
            const bool strictly = d[v] <= cc.delta - kDistanceTolerance;
            const bool member = c.members.contains(static_cast<Vertex>(v));
            if ((member && !inside) || (!member && strictly)) {
                region.flag(tag + ": ball mismatch at " + detail::vlabel(static_cast<Vertex>(v)));
            }
        }
        for (Vertex v : c.members.members()) {
            if (!in_subtree(c.center_bag, v)) {
                region.flag(tag + ": " + detail::vlabel(v) + " above the center bag");
            }
        }
        if (!(c.members - c.newly_covered).is_subset_of(c.attached)) {
            region.flag(tag + ": previously covered member not reached through an attachment");
        }
    }

    detail::Tally drop{"cores.non_center_rank_drop"};
    for (const Core& c : cc.cores) {
        for (Vertex v : tp.bags[static_cast<std::size_t>(c.center_bag)]) {
            if (c.centers.contains(v)) {
                continue;
            }
            if (cc.first_core[static_cast<std::size_t>(v)] < 0 || cc.vertex_rank(v) >= c.rank) {
                drop.flag("core " + std::to_string(c.id) + ", " + detail::vlabel(v));
            }
        }
    }

    detail::Tally attach{"cores.attachment_descendants"};
    for (const AttachmentSnapshot& snap : cc.attachment_trace) {
        for (const auto& [bag, verts] : snap.attachments) {
            for (Vertex v : verts) {
                const BagId vb = tp.bag_of[static_cast<std::size_t>(v)];
                if (vb == bag || !tree.is_ancestor_or_self(bag, vb)) {
                    attach.flag("after core " + std::to_string(snap.after_core) + ", A(bag " +
                                std::to_string(bag + 1) + ") holds " + detail::vlabel(v));
                }
            }
        }
    }

    detail::Tally hier{"cores.hierarchy"};
    const auto& comps = cc.components;
    for (std::size_t a = 0; a < comps.size(); ++a) {
        for (std::size_t b = a + 1; b < comps.size(); ++b) {
            if (comps[a].round == comps[b].round && comps[a].cluster.intersects(comps[b].cluster)) {
                hier.flag("round " + std::to_string(comps[a].round) + " components rooted at bags " +
                          std::to_string(comps[a].root_bag + 1) + " and " + std::to_string(comps[b].root_bag + 1));
            }
        }
    }
    for (const ComponentRecord& child : comps) {
        if (child.round == 1) {
            continue;
        }
        const ComponentRecord* parent = nullptr;
        for (const ComponentRecord& p : comps) {
            if (p.round + 1 == child.round &&
                std::includes(p.bags.begin(), p.bags.end(), child.bags.begin(), child.bags.end())) {
                parent = &p;
            }
        }
        if (parent == nullptr) {
            hier.flag("round " + std::to_string(child.round) + " component at bag " +
                      std::to_string(child.root_bag + 1) + " has no enclosing component");
        } else if (!child.cluster.is_subset_of(parent->cluster)) {
            hier.flag("round " + std::to_string(child.round) + " component at bag " +
                      std::to_string(child.root_bag + 1) + " leaves its parent cluster");
        }
    }

    return {cover.done(), disjoint.done(), rounds,      vmult,         bmult,
            region.done(), drop.done(),    attach.done(), hier.done()};
}

// ---- ordered-net: orders and nets ---------------------------------------

/// Oracle distances from every net point x inside G[V_{⪯x}].
struct DescendantRows {
    std::vector<Vertex> centers; // root-to-leaf
    std::vector<DistanceMap> dist;
};

inline DescendantRows descendant_rows(const WeightedGraph& g, const TreeOrder& order, const VertexSet& net) {
    DescendantRows rows;
    rows.centers = root_to_leaf_order(order, net.members());
    for (Vertex x : rows.centers) {
        rows.dist.push_back(BellmanFord(g, order.descendants_of(x)).run(x));
    }
    return rows;
}

/// Per vertex, the number of net points x with v ⪯ x and d ≤ m·Δ in G[V_{⪯x}].
inline std::vector<std::size_t> oracle_packing(const DescendantRows& rows, std::size_t n, Weight radius) {
    std::vector<std::size_t> count(n, 0);
    for (const DistanceMap& d : rows.dist) {
        for (std::size_t v = 0; v < n; ++v) {
            if (d[v] <= radius + kDistanceTolerance) {
                ++count[v];
            }
        }
    }
    return count;
}

inline Check covering_check(std::string name, const DescendantRows& rows, std::size_t n, Weight delta) {
    detail::Tally t{std::move(name)};
    std::vector<char> ok(n, 0);
    for (const DistanceMap& d : rows.dist) {
        for (std::size_t v = 0; v < n; ++v) {
            if (d[v] <= delta + kDistanceTolerance) {
                ok[v] = 1;
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (!ok[v]) {
            t.flag(detail::vlabel(static_cast<Vertex>(v)) + " has no ancestral net point within delta");
        }
    }
    return t.done();
}

inline Check order_validity_check(std::string name, const WeightedGraph& g, const TreeOrder& order, bool injective) {
    detail::Tally t{std::move(name)};
    if (order.assign.size() != g.vertex_count()) {
        t.flag("order covers " + std::to_string(order.assign.size()) + " vertices");
        return t.done();
    }
    for (std::size_t v = 0; v < order.assign.size(); ++v) {
        if (order.assign[v] < 0 || static_cast<std::size_t>(order.assign[v]) >= order.tree.size()) {
            t.flag(detail::vlabel(static_cast<Vertex>(v)) + " unassigned");
            return t.done();
        }
    }
    if (injective && !order.injective()) {
        t.flag("two vertices share a node");
    }
    for (const Edge& e : g.edges()) {
        if (!order.comparable(e.u, e.v)) {
            t.flag("edge " + std::to_string(e.u + 1) + "-" + std::to_string(e.v + 1) + " is not comparable");
        }
    }
    return t.done();
}

struct NetCheckOptions {
    std::size_t maximal_samples = 100;
    std::uint64_t seed = 0;
};

inline std::vector<Check> verify_net(const WeightedGraph& g, const TreePartition& tp, const SemiTreeOrderedNet& semi,
                                     const TreeOrderedNet& net, const DescendantRows& rows, Weight delta,
                                     const NetCheckOptions& opt = {}) {
    const std::size_t n = g.vertex_count();
    const double bound = static_cast<double>(packing_bound(tp.width()));
    std::vector<Check> out;

    out.push_back(order_validity_check("net.semi_validity", g, semi.order, false));
    const DescendantRows semi_rows = descendant_rows(g, semi.order, semi.net);
    out.push_back(covering_check("net.semi_covering", semi_rows, n, delta));
    {
        const auto c = oracle_packing(semi_rows, n, 2.0 * delta);
        const auto it = std::max_element(c.begin(), c.end());
        out.push_back(detail::at_most("net.semi_packing_2delta", static_cast<double>(*it), bound,
                                      detail::vlabel(static_cast<Vertex>(it - c.begin()))));
    }

    out.push_back(order_validity_check("net.order_validity", g, net.order, true));

    detail::Tally refine{"net.order_refines"};
    if (net.order.assign.size() == n) {
        for (std::size_t u = 0; u < n && refine.violations < 16; ++u) {
            for (std::size_t v = 0; v < n; ++v) {
                // strict semi precedence only; vertices sharing a node are unordered there
                if (semi.order.node(static_cast<Vertex>(u)) != semi.order.node(static_cast<Vertex>(v)) &&
                    semi.order.precedes(static_cast<Vertex>(u), static_cast<Vertex>(v)) &&
                    !net.order.precedes(static_cast<Vertex>(u), static_cast<Vertex>(v))) {
                    refine.flag(detail::vlabel(static_cast<Vertex>(u)) + " below " +
                                detail::vlabel(static_cast<Vertex>(v)) + " only in the semi order");
                }
            }
        }
    }
    out.push_back(refine.done());

    // connected sets have a single maximum: oracle balls around random vertices
    detail::Tally maxima{"net.unique_maximum"};
    const BellmanFord whole(g, VertexSet::full(n));
    for (std::size_t i = 0; i < opt.maximal_samples; ++i) {
        Stream rng(opt.seed, 0x6d617869ULL, i);
        const auto c = static_cast<Vertex>(rng.next() % n);
        const Weight r = 3.0 * delta * rng.uniform();
        const DistanceMap d = whole.run(c);
        std::vector<Vertex> members;
        for (std::size_t v = 0; v < n; ++v) {
            if (d[v] <= r) {
                members.push_back(static_cast<Vertex>(v));
            }
        }
        std::size_t tops = 0;
        for (Vertex a : members) {
            bool maximal = true;
            for (Vertex b : members) {
                if (a != b && net.order.precedes(a, b) && !net.order.precedes(b, a)) {
                    maximal = false;
                    break;
                }
            }
            tops += maximal ? 1 : 0;
        }
        if (tops != 1) {
            maxima.flag("ball around " + detail::vlabel(c) + " has " + std::to_string(tops) + " maximal elements");
        }
    }
    out.push_back(maxima.done());

    out.push_back(covering_check("net.covering", rows, n, delta));

    const double alpha = net.params.alpha;
    const auto c2 = oracle_packing(rows, n, 2.0 * delta);
    const auto c3 = oracle_packing(rows, n, 3.0 * delta);
    const auto ca = oracle_packing(rows, n, alpha * delta);
    const auto worst = [](const std::vector<std::size_t>& c) { return std::max_element(c.begin(), c.end()); };
    {
        const auto it = worst(c2);
        out.push_back(detail::at_most("net.packing_2delta", static_cast<double>(*it), bound,
                                      detail::vlabel(static_cast<Vertex>(it - c2.begin()))));
    }
    {
        const auto it = worst(c3);
        Check c = detail::at_most("net.packing_3delta", static_cast<double>(*it), bound,
                                  detail::vlabel(static_cast<Vertex>(it - c3.begin())));
        if (c.status == Status::fail) {
            c.status = Status::warn; // no proven bound at 3Δ; reported, not enforced
        }
        out.push_back(c);
    }
    {
        const auto it = worst(ca);
        const double measured = static_cast<double>(std::max<std::size_t>(*it, 1));
        Check c{"net.packing_alpha", Status::pass, measured, static_cast<double>(net.params.tau_emp), ""};
        if (measured != static_cast<double>(net.params.tau_emp)) {
            c.status = Status::fail;
            c.witness = "recorded tau " + std::to_string(net.params.tau_emp) + " differs from oracle " +
                        std::to_string(static_cast<std::size_t>(measured));
        } else if (measured > bound) {
            c.status = Status::warn;
            c.witness = detail::vlabel(static_cast<Vertex>(it - ca.begin()));
        }
        out.push_back(c);
    }

    detail::Tally agree{"net.profile_agreement"};
    const PackingProfile prof = packing_profile(g, net.order, net.net, delta, {2.0, 3.0, alpha});
    const std::vector<std::size_t>* oracle[] = {&c2, &c3, &ca};
    for (std::size_t k = 0; k < 3; ++k) {
        for (std::size_t v = 0; v < n; ++v) {
            if (prof.per_vertex[k][v] != (*oracle[k])[v]) {
                agree.flag(detail::vlabel(static_cast<Vertex>(v)) + " at multiplier " +
                           std::to_string(prof.multipliers[k]));
            }
        }
    }
    out.push_back(agree.done());
    return out;
}

// ---- decomposition ------------------------------------------------------

/// Partition, diameter, radius range and replay of one padded decomposition.
inline std::vector<Check> verify_partition(const WeightedGraph& g, const PaddedPartition& p, const DescendantRows& rows,
                                           const OracleMetric& metric) {
    const std::size_t n = g.vertex_count();
    const PaddedParams& prm = p.params;

    detail::Tally part{"padded.partition"};
    std::vector<int> hits(n, 0);
    for (std::size_t c = 0; c < p.clusters.size(); ++c) {
        if (p.clusters[c].members.empty()) {
            part.flag("cluster " + std::to_string(c) + " is empty");
        }
        for (Vertex v : p.clusters[c].members.members()) {
            if (hits[static_cast<std::size_t>(v)]++ > 0) {
                part.flag(detail::vlabel(v) + " in two clusters");
            }
            if (p.assignment.size() != n || p.assignment[static_cast<std::size_t>(v)] != static_cast<std::int32_t>(c)) {
                part.flag(detail::vlabel(v) + " assignment disagrees with cluster " + std::to_string(c));
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        if (hits[v] == 0) {
            part.flag(detail::vlabel(static_cast<Vertex>(v)) + " unclustered");
        }
    }

    Weight worst = 0.0;
    std::string worst_at;
    for (std::size_t c = 0; c < p.clusters.size(); ++c) {
        if (p.clusters[c].members.empty()) {
            continue;
        }
        const Weight d = metric.weak_diameter(p.clusters[c].members.members());
        if (d > worst) {
            worst = d;
            worst_at = "cluster centered at " + detail::vlabel(p.clusters[c].center);
        }
    }
    Check diam = detail::at_most("padded.diameter", worst, prm.diameter_bound, worst_at);

    detail::Tally radius{"padded.radius_range"};
    for (const CenterDraw& t : p.trace) {
        if (t.radius < prm.delta - kDistanceTolerance || t.radius > prm.beta_internal * prm.delta + kDistanceTolerance) {
            radius.flag("center " + detail::vlabel(t.center) + " radius " + std::to_string(t.radius));
        }
    }

    // replay the trace with oracle distances and compare owners' centers
    detail::Tally replay{"padded.replay"};
    std::map<Vertex, std::size_t> row_of;
    for (std::size_t i = 0; i < rows.centers.size(); ++i) {
        row_of[rows.centers[i]] = i;
    }
    std::vector<Vertex> owner(n, -1);
    for (const CenterDraw& t : p.trace) {
        auto it = row_of.find(t.center);
        if (it == row_of.end()) {
            replay.flag("trace center " + detail::vlabel(t.center) + " is not a net point");
            continue;
        }
        const DistanceMap& d = rows.dist[it->second];
        for (std::size_t v = 0; v < n; ++v) {
            if (owner[v] < 0 && d[v] <= t.radius) {
                owner[v] = t.center;
            }
        }
    }
    for (std::size_t v = 0; v < n; ++v) {
        const auto c = v < p.assignment.size() ? p.assignment[v] : -1;
        const Vertex got = (c >= 0 && static_cast<std::size_t>(c) < p.clusters.size())
                               ? p.clusters[static_cast<std::size_t>(c)].center
                               : -1;
        if (got != owner[v]) {
            replay.flag(detail::vlabel(static_cast<Vertex>(v)));
        }
    }
    return {part.done(), diam, radius.done(), replay.done()};
}

inline bool same_partition(const PaddedPartition& a, const PaddedPartition& b) {
    if (a.assignment != b.assignment || a.trace.size() != b.trace.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        if (a.trace[i].center != b.trace[i].center || a.trace[i].radius != b.trace[i].radius) {
            return false;
        }
    }
    return true;
}

/// `inverse` defaults to the library's inverse CDF.
inline Check sampler_ks_check(const PaddedParams& p, std::size_t draws, std::uint64_t seed,
                              std::function<double(double)> inverse = {}) {
    const TruncatedExp dist(1.0, p.beta_internal, p.lambda);
    if (!inverse) {
        inverse = [&dist](double u) { return dist.sample(u); };
    }
    std::vector<double> xs;
    xs.reserve(draws);
    Stream rng(seed, 0x6b73ULL, 0);
    for (std::size_t i = 0; i < draws; ++i) {
        xs.push_back(inverse(rng.uniform()));
    }
    const double d = ks_statistic(xs, dist);
    Check c = detail::at_most("padded.sampler_ks", d, ks_critical_value_1pct(draws), "KS statistic above 1% critical value");
    if (inverse(0.0) != 1.0 || inverse(1.0) != p.beta_internal) {
        c.status = Status::fail;
        c.witness = "inverse CDF misses an endpoint";
    }
    return c;
}

inline std::string gamma_tag(double gamma, double delta_param) {
    if (std::fabs(gamma - delta_param / 4.0) < 1e-15) {
        return "delta/4";
    }
    if (std::fabs(gamma - delta_param / 2.0) < 1e-15) {
        return "delta/2";
    }
    if (std::fabs(gamma - delta_param) < 1e-15) {
        return "delta";
    }
    return std::to_string(gamma);
}

inline std::vector<Check> padding_checks(const std::vector<PaddingEstimate>& est, double delta_param) {
    std::vector<Check> out;
    for (const PaddingEstimate& e : est) {
        const bool ok = e.lower_confidence_bound >= e.required;
        out.push_back(Check{"padded.padding[" + gamma_tag(e.gamma, delta_param) + "]",
                            ok ? Status::pass : Status::fail, e.lower_confidence_bound, e.required,
                            ok ? "" : detail::vlabel(e.worst_vertex)});
    }
    return out;
}

// ---- covers -------------------------------------------------------------

inline Check containment_check(std::string name, const WeightedGraph& g, const OracleMetric& metric,
                               const std::vector<const VertexSet*>& clusters, Weight radius) {
    detail::Tally t{std::move(name)};
    const std::size_t n = g.vertex_count();
    for (std::size_t v = 0; v < n; ++v) {
        std::vector<Vertex> b;
        for (std::size_t u = 0; u < n; ++u) {
            if (metric(static_cast<Vertex>(v), static_cast<Vertex>(u)) <= radius + kDistanceTolerance) {
                b.push_back(static_cast<Vertex>(u));
            }
        }
        bool found = false;
        for (const VertexSet* c : clusters) {
            if (!c->contains(static_cast<Vertex>(v))) {
                continue;
            }
            if (std::all_of(b.begin(), b.end(), [&](Vertex u) { return c->contains(u); })) {
                found = true;
                break;
            }
        }
        if (!found) {
            t.flag("ball around " + detail::vlabel(static_cast<Vertex>(v)));
        }
    }
    return t.done();
}

inline std::vector<Check> verify_cover(const WeightedGraph& g, const SparseCover& cover, const DescendantRows& rows,
                                       const OracleMetric& metric, std::size_t cap) {
    const std::size_t n = g.vertex_count();
    std::vector<std::size_t> count(n, 0);
    std::vector<const VertexSet*> sets;
    for (const CoverCluster& c : cover.clusters) {
        sets.push_back(&c.members);
        for (Vertex v : c.members.members()) {
            ++count[static_cast<std::size_t>(v)];
        }
    }

    detail::Tally covering{"cover.covering"};
    for (std::size_t v = 0; v < n; ++v) {
        if (count[v] == 0) {
            covering.flag(detail::vlabel(static_cast<Vertex>(v)));
        }
    }

    Weight worst = 0.0;
    std::string worst_at;
    for (const CoverCluster& c : cover.clusters) {
        if (c.members.empty()) {
            worst = kInfinity;
            worst_at = "empty cluster at " + detail::vlabel(c.center);
            break;
        }
        const Weight d = oracle_strong_diameter(g, c.members, cap);
        if (d > worst) {
            worst = d;
            worst_at = "cluster centered at " + detail::vlabel(c.center);
        }
    }
    Check strong = detail::at_most("cover.strong_diameter", worst, cover.diameter_bound, worst_at);

    const auto packing = oracle_packing(rows, n, cover.alpha * cover.delta);
    detail::Tally sparse{"cover.sparsity"};
    for (std::size_t v = 0; v < n; ++v) {
        if (count[v] > packing[v]) {
            sparse.flag(detail::vlabel(static_cast<Vertex>(v)) + " in " + std::to_string(count[v]) + " clusters, " +
                        std::to_string(packing[v]) + " ancestral net points within alpha*delta");
        }
    }
    Check sparsity = sparse.done();
    sparsity.measured = static_cast<double>(*std::max_element(count.begin(), count.end()));
    sparsity.bound = static_cast<double>(*std::max_element(packing.begin(), packing.end()));

    return {covering.done(), strong, sparsity,
            containment_check("cover.ball_containment", g, metric, sets, cover.padding_radius)};
}

inline std::vector<Check> verify_partition_cover(const WeightedGraph& g, const PartitionCover& pc,
                                                 const TreeOrderedNet& net, const OracleMetric& metric,
                                                 std::size_t cap) {
    const std::size_t n = g.vertex_count();
    detail::Tally parts{"pcover.partitions"};
    std::vector<const VertexSet*> sets;
    std::map<Vertex, int> net_clusters;
    for (std::size_t i = 0; i < pc.partitions.size(); ++i) {
        std::vector<int> hits(n, 0);
        for (const PartitionCluster& c : pc.partitions[i]) {
            sets.push_back(&c.members);
            if (!c.singleton) {
                ++net_clusters[c.center];
            }
            for (Vertex v : c.members.members()) {
                ++hits[static_cast<std::size_t>(v)];
            }
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (hits[v] != 1) {
                parts.flag("partition " + std::to_string(i + 1) + ": " + detail::vlabel(static_cast<Vertex>(v)) +
                           " in " + std::to_string(hits[v]) + " clusters");
            }
        }
    }
    for (Vertex x : net.net.members()) {
        if (net_clusters[x] != 1) {
            parts.flag("net point " + detail::vlabel(x) + " clustered " + std::to_string(net_clusters[x]) + " times");
        }
    }

    const double count = static_cast<double>(pc.partitions.size());
    const double tau = static_cast<double>(pc.tau);
    Check cnt{"pcover.count", Status::pass, count, tau, ""};
    if (count > tau + 1.0) {
        cnt.status = Status::fail;
        cnt.witness = "more than tau+1 partitions";
    } else if (count > tau) {
        cnt.status = Status::warn;
        cnt.witness = "count in (tau, tau+1]";
    }

    Weight worst = 0.0;
    std::string worst_at;
    for (const auto& part : pc.partitions) {
        for (const PartitionCluster& c : part) {
            Weight d = metric.weak_diameter(c.members.members());
            if (!c.singleton) {
                d = std::max(d, oracle_strong_diameter(g, c.members, cap));
            }
            if (d > worst) {
                worst = d;
                worst_at = "cluster centered at " + detail::vlabel(c.center);
            }
        }
    }
    Check diam = detail::at_most("pcover.diameter", worst, pc.diameter_bound, worst_at);

    return {parts.done(), cnt, diam, containment_check("pcover.ball_containment", g, metric, sets, pc.padding_radius)};
}

// ---- results read back on the input graph -------------------------------

inline VertexSet project_to_input(const VertexSet& host_set, const std::vector<Vertex>& forward) {
    VertexSet out(forward.size());
    for (std::size_t v = 0; v < forward.size(); ++v) {
        if (host_set.contains(forward[v])) {
            out.insert(static_cast<Vertex>(v));
        }
    }
    return out;
}

inline std::vector<Check> verify_projection(const WeightedGraph& g, const std::vector<Vertex>& forward,
                                            const std::vector<PaddedPartition>& samples, const SparseCover& cover,
                                            const PartitionCover& pc, const OracleMetric& metric_g) {
    Weight worst = 0.0;
    Weight bound = 0.0;
    std::string worst_at;
    for (const PaddedPartition& p : samples) {
        bound = p.params.diameter_bound;
        for (const PaddedCluster& c : p.clusters) {
            const VertexSet proj = project_to_input(c.members, forward);
            if (proj.empty()) {
                continue;
            }
            const Weight d = metric_g.weak_diameter(proj.members());
            if (d > worst) {
                worst = d;
                worst_at = "seed " + std::to_string(p.seed);
            }
        }
    }
    Check diam = detail::at_most("project.padded_diameter", worst, bound, worst_at);

    std::vector<VertexSet> cover_sets;
    for (const CoverCluster& c : cover.clusters) {
        cover_sets.push_back(project_to_input(c.members, forward));
    }
    std::vector<const VertexSet*> cptr;
    for (const auto& s : cover_sets) {
        cptr.push_back(&s);
    }
    std::vector<VertexSet> pc_sets;
    for (const auto& part : pc.partitions) {
        for (const PartitionCluster& c : part) {
            pc_sets.push_back(project_to_input(c.members, forward));
        }
    }
    std::vector<const VertexSet*> pptr;
    for (const auto& s : pc_sets) {
        pptr.push_back(&s);
    }
    return {diam, containment_check("project.cover_containment", g, metric_g, cptr, cover.padding_radius),
            containment_check("project.pcover_containment", g, metric_g, pptr, pc.padding_radius)};
}

// ---- consolidated -------------------------------------------------------

struct VerifyOptions {
    std::size_t oracle_cap = kDefaultOracleCap;
    std::size_t graph_samples = 200;
    std::size_t maximal_samples = 100;
    std::size_t seeds = 100;
    std::size_t trials = 10000;
    std::size_t ks_draws = 100000;
    std::uint64_t seed = 0;
    std::vector<double> gammas; // empty: {δ/4, δ/2, δ}
};

inline bool same_net(const NetConstruction& a, const NetConstruction& b) {
    if (a.cores.cores.size() != b.cores.cores.size() || a.cores.rounds != b.cores.rounds) {
        return false;
    }
    for (std::size_t i = 0; i < a.cores.cores.size(); ++i) {
        const Core& x = a.cores.cores[i];
        const Core& y = b.cores.cores[i];
        if (!(x.members == y.members) || x.center_bag != y.center_bag || x.rank != y.rank ||
            !(x.centers == y.centers)) {
            return false;
        }
    }
    return a.net.net == b.net.net && a.net.order.tree == b.net.order.tree && a.net.order.assign == b.net.order.assign &&
           a.net.node_vertex == b.net.node_vertex && a.net.params.tau_emp == b.net.params.tau_emp;
}

inline Check not_applicable(std::string name, std::string why) {
    return Check{std::move(name), Status::pass, 0.0, 0.0, "not applicable: " + std::move(why)};
}

/// Every check once, in a fixed order.
inline VerificationReport verify_pipeline(const Pipeline& pl, const VerifyOptions& opt) {
    VerificationReport rep;
    const WeightedGraph& h = pl.host();
    const TreePartition& tp = pl.partition();
    const TreeOrderedNet& net = pl.net.net;

    const OracleMetric metric_h(h, opt.oracle_cap);
    rep.add(verify_graph(h, opt.oracle_cap, opt.graph_samples, opt.seed));

    std::optional<OracleMetric> metric_g;
    if (pl.embedding) {
        metric_g.emplace(pl.graph, opt.oracle_cap);
        rep.add(verify_embedding(pl.graph, *pl.embedding, *metric_g));
    } else {
        for (const char* name : {"convert.partition", "convert.validity", "convert.isometry",
                                 "convert.copy_equivalence", "convert.width"}) {
            rep.add(not_applicable(name, "tree partition given directly"));
        }
    }

    rep.add(verify_cores(h, tp, pl.net.cores));
    const DescendantRows rows = descendant_rows(h, net.order, net.net);
    rep.add(verify_net(h, tp, pl.net.semi, net, rows, pl.delta, NetCheckOptions{opt.maximal_samples, opt.seed}));
    {
        const NetConstruction again = build_tree_ordered_net(h, tp, pl.delta, pl.alpha);
        rep.add(Check{"net.determinism", same_net(pl.net, again) ? Status::pass : Status::fail, 0.0, 0.0,
                      same_net(pl.net, again) ? "" : "rebuilt net differs"});
    }

    const PaddedDecompositionSampler sampler(h, net, pl.delta);
    std::vector<std::vector<Check>> sweep;
    std::vector<PaddedPartition> samples;
    for (std::size_t s = 0; s < opt.seeds; ++s) {
        samples.push_back(sampler.sample(trial_seed(opt.seed, s)));
        sweep.push_back(verify_partition(h, samples.back(), rows, metric_h));
    }
    rep.add(merge_checks(sweep));
    {
        const bool same = opt.seeds == 0 || same_partition(samples.front(), sampler.sample(trial_seed(opt.seed, 0)));
        rep.add(Check{"padded.determinism", same ? Status::pass : Status::fail, 0.0, 0.0,
                      same ? "" : "resampling with the same seed differs"});
    }
    rep.add(sampler_ks_check(sampler.params(), opt.ks_draws, opt.seed));
    {
        const std::vector<double> gammas = opt.gammas.empty() ? default_gamma_grid(pl.alpha) : opt.gammas;
        const auto forward = pl.forward();
        const auto est = pl.embedding ? padding_probability_estimates(h, net, pl.delta, gammas, opt.trials, opt.seed,
                                                                      &pl.graph, &forward)
                                      : padding_probability_estimates(h, net, pl.delta, gammas, opt.trials, opt.seed);
        rep.add(padding_checks(est, sampler.params().delta_param));
    }

    const SparseCover cover = build_sparse_cover(h, net, pl.delta);
    rep.add(verify_cover(h, cover, rows, metric_h, opt.oracle_cap));
    if (pl.alpha > 2.0) {
        const PartitionCover pc = build_partition_cover(h, net, pl.delta);
        rep.add(verify_partition_cover(h, pc, net, metric_h, opt.oracle_cap));
        if (pl.embedding) {
            rep.add(verify_projection(pl.graph, pl.embedding->forward, samples, cover, pc, *metric_g));
        }
    } else {
        for (const char* name : {"pcover.partitions", "pcover.count", "pcover.diameter", "pcover.ball_containment"}) {
            rep.add(not_applicable(name, "partition cover needs alpha > 2"));
        }
    }
    if (!pl.embedding || pl.alpha <= 2.0) {
        for (const char* name : {"project.padded_diameter", "project.cover_containment", "project.pcover_containment"}) {
            rep.add(not_applicable(name, pl.embedding ? "partition cover needs alpha > 2" : "host is the input graph"));
        }
    }
    return rep;
}

} // namespace twpad
