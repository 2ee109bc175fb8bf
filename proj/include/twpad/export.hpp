// Copyright (c) twpad contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// JSON documents for every pipeline stage. Vertex, bag and node ids are
// 1-based; a parent of 0 marks the root. Object keys are emitted sorted, so
// equal inputs give byte-equal output.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "twpad/covers.hpp"
#include "twpad/graph.hpp"
#include "twpad/net.hpp"
#include "twpad/padded.hpp"
#include "twpad/pipeline.hpp"
#include "twpad/tree.hpp"
#include "twpad/verify.hpp"

namespace twpad {

using Json = nlohmann::json;

inline constexpr const char* kFormatVersion = "1";

namespace detail {

inline Json ids(const std::vector<Vertex>& vs) {
    Json out = Json::array();
    for (Vertex v : vs) {
        out.push_back(v + 1);
    }
    return out;
}

inline Json ids(const VertexSet& s) { return ids(s.members()); }

inline Json parents(const RootedTree& t) {
    Json out = Json::array();
    for (NodeId p : t.parents()) {
        out.push_back(p + 1);
    }
    return out;
}

inline Json number(double x) {
    // JSON has no infinity; emit null
    return std::isfinite(x) ? Json(x) : Json(nullptr);
}

} // namespace detail

inline Json graph_summary(const WeightedGraph& g) {
    return Json{{"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
}

inline Json to_json(const Check& c) {
    return Json{{"name", c.name},
                {"status", status_name(c.status)},
                {"measured", detail::number(c.measured)},
                {"bound", detail::number(c.bound)},
                {"witness", c.witness}};
}

inline Json to_json(const VerificationReport& r) {
    Json checks = Json::array();
    for (const Check& c : r.checks) {
        checks.push_back(to_json(c));
    }
    return Json{{"checks", checks},
                {"passed", r.count(Status::pass)},
                {"warned", r.count(Status::warn)},
                {"failed", r.count(Status::fail)},
                {"ok", r.passed()}};
}

inline Json to_json(const TreePartition& tp) {
    Json bags = Json::array();
    for (const auto& b : tp.bags) {
        bags.push_back(detail::ids(b));
    }
    Json level = Json::array();
    for (std::size_t b = 0; b < tp.bags.size(); ++b) {
        level.push_back(tp.level(static_cast<BagId>(b)));
    }
    return Json{{"bags", bags},
                {"parent", detail::parents(tp.tree)},
                {"level", level},
                {"width_max_bag", tp.width()},
                {"width_minus_one", static_cast<std::int64_t>(tp.width()) - 1}};
}

inline Json convert_json(const WeightedGraph& g, const IsometricEmbedding& emb, const std::vector<Check>& checks) {
    Json host_edges = Json::array();
    for (const Edge& e : emb.host.edges()) {
        host_edges.push_back(Json::array({e.u + 1, e.v + 1, e.w}));
    }
    Json copies = Json::array();
    for (const auto& c : emb.copies) {
        copies.push_back(detail::ids(c));
    }
    Json cj = Json::array();
    std::string iso = "pass";
    for (const Check& c : checks) {
        cj.push_back(to_json(c));
        if (c.name == "convert.isometry" && c.status != Status::pass) {
            iso = "fail";
        }
    }
    return Json{{"command", "convert"},
                {"format_version", kFormatVersion},
                {"input", graph_summary(g)},
                {"td_max_bag", emb.source_td_max_bag},
                {"td_width", static_cast<std::int64_t>(emb.source_td_max_bag) - 1},
                {"host", Json{{"vertices", emb.host.vertex_count()}, {"edges", host_edges}}},
                {"tree_partition", to_json(emb.tree_partition)},
                {"forward", detail::ids(emb.forward)},
                {"copies", copies},
                {"isometry", iso},
                {"checks", cj}};
}

inline Json to_json(const PackingProfile& p) {
    Json rows = Json::array();
    for (std::size_t k = 0; k < p.multipliers.size(); ++k) {
        rows.push_back(Json{{"multiplier", p.multipliers[k]},
                            {"max_count", p.max_count[k]},
                            {"argmax", p.argmax[k] + 1}});
    }
    return rows;
}

inline Json net_json(const Pipeline& pl, const PackingProfile& prof) {
    const TreeOrderedNet& net = pl.net.net;
    Json cores = Json::array();
    for (const Core& c : pl.net.cores.cores) {
        cores.push_back(Json{{"id", c.id + 1},
                             {"rank", c.rank},
                             {"center_bag", c.center_bag + 1},
                             {"centers", detail::ids(c.centers)},
                             {"members", detail::ids(c.members)}});
    }
    Json node_vertex = Json::array();
    for (Vertex v : net.node_vertex) {
        node_vertex.push_back(v < 0 ? Json(nullptr) : Json(v + 1));
    }
    Json assign = Json::array();
    Json flags = Json::array();
    for (std::size_t v = 0; v < net.order.assign.size(); ++v) {
        assign.push_back(net.order.assign[v] + 1);
        flags.push_back(net.net.contains(static_cast<Vertex>(v)));
    }
    Json semi = Json::array();
    for (NodeId x : pl.net.semi.order.assign) {
        semi.push_back(x + 1);
    }
    return Json{{"command", "net"},
                {"format_version", kFormatVersion},
                {"input", graph_summary(pl.graph)},
                {"host", graph_summary(pl.host())},
                {"params", Json{{"alpha", net.params.alpha},
                                {"delta", net.params.delta},
                                {"tau_emp", net.params.tau_emp},
                                {"tau_bound", net.params.tau_bound},
                                {"tp_width", net.params.tp_width},
                                {"tp_width_minus_one", static_cast<std::int64_t>(net.params.tp_width) - 1}}},
                {"rounds", pl.net.cores.rounds},
                {"cores", cores},
                {"semi_assign", semi},
                {"order", Json{{"parent", detail::parents(net.order.tree)}, {"node_vertex", node_vertex}}},
                {"assign", assign},
                {"net", flags},
                {"net_size", net.net.count()},
                {"packing_profile", to_json(prof)}};
}

inline Json params_json(const PaddedParams& p) {
    return Json{{"alpha", p.alpha},
                {"delta", p.delta},
                {"tau", p.tau},
                {"beta_internal", p.beta_internal},
                {"lambda", p.lambda},
                {"padding_parameter", p.padding_parameter},
                {"delta_param", p.delta_param},
                {"diameter_bound", p.diameter_bound}};
}

/// `forward` maps input vertices to host vertices; the projected assignment
/// gives each input vertex the cluster of its designated copy.
inline Json to_json(const PaddedPartition& p, const std::vector<Vertex>& forward) {
    Json clusters = Json::array();
    for (const PaddedCluster& c : p.clusters) {
        clusters.push_back(
            Json{{"center", c.center + 1}, {"radius", c.radius}, {"members", detail::ids(c.members)}});
    }
    Json assignment = Json::array();
    for (auto c : p.assignment) {
        assignment.push_back(c + 1);
    }
    Json projected = Json::array();
    for (Vertex h : forward) {
        projected.push_back(p.assignment[static_cast<std::size_t>(h)] + 1);
    }
    Json trace = Json::array();
    for (const CenterDraw& t : p.trace) {
        trace.push_back(Json{{"center", t.center + 1}, {"radius", t.radius}, {"empty", t.empty}});
    }
    return Json{{"seed", p.seed},
                {"clusters", clusters},
                {"assignment", assignment},
                {"input_assignment", projected},
                {"trace", trace}};
}

inline Json decompose_json(const Pipeline& pl, const std::vector<PaddedPartition>& samples, std::uint64_t seed) {
    Json out = Json::array();
    const auto forward = pl.forward();
    for (const PaddedPartition& p : samples) {
        out.push_back(to_json(p, forward));
    }
    const PaddedParams prm = padded_params(pl.alpha, pl.delta, pl.net.net.params.tau_emp);
    return Json{{"command", "decompose"},
                {"format_version", kFormatVersion},
                {"input", graph_summary(pl.graph)},
                {"host", graph_summary(pl.host())},
                {"seed", seed},
                {"params", params_json(prm)},
                {"samples", out}};
}

inline Json cover_json(const Pipeline& pl, const SparseCover& c) {
    Json clusters = Json::array();
    for (const CoverCluster& k : c.clusters) {
        clusters.push_back(Json{{"center", k.center + 1}, {"members", detail::ids(k.members)}});
    }
    return Json{{"command", "cover"},
                {"format_version", kFormatVersion},
                {"input", graph_summary(pl.graph)},
                {"host", graph_summary(pl.host())},
                {"params", Json{{"alpha", c.alpha}, {"delta", c.delta}, {"tau", c.tau}}},
                {"guarantees", Json{{"padding_ratio", c.padding_ratio},
                                    {"diameter_bound", c.diameter_bound},
                                    {"padding_radius", c.padding_radius},
                                    {"sparsity", c.sparsity}}},
                {"clusters", clusters}};
}

inline Json partition_cover_json(const Pipeline& pl, const PartitionCover& pc) {
    Json parts = Json::array();
    for (const auto& part : pc.partitions) {
        Json cl = Json::array();
        for (const PartitionCluster& k : part) {
            cl.push_back(Json{{"center", k.center + 1},
                              {"kind", k.singleton ? "singleton" : "net"},
                              {"members", detail::ids(k.members)}});
        }
        parts.push_back(cl);
    }
    return Json{{"command", "partition-cover"},
                {"format_version", kFormatVersion},
                {"input", graph_summary(pl.graph)},
                {"host", graph_summary(pl.host())},
                {"params", Json{{"alpha", pc.alpha}, {"delta", pc.delta}, {"tau", pc.tau}}},
                {"guarantees", Json{{"padding_ratio", pc.padding_ratio},
                                    {"diameter_bound", pc.diameter_bound},
                                    {"padding_radius", pc.padding_radius},
                                    {"cluster_radius", pc.cluster_radius},
                                    {"partition_count", pc.partitions.size()},
                                    {"count_warning", pc.count_warning}}},
                {"partitions", parts}};
}

inline Json padding_json(const Pipeline& pl, const std::vector<PaddingEstimate>& est, std::uint64_t seed) {
    const PaddedParams prm = padded_params(pl.alpha, pl.delta, pl.net.net.params.tau_emp);
    Json rows = Json::array();
    for (const PaddingEstimate& e : est) {
        rows.push_back(Json{{"gamma", e.gamma},
                            {"ball_radius", e.ball_radius},
                            {"empirical_rate", e.empirical_rate},
                            {"lower_confidence_bound", e.lower_confidence_bound},
                            {"required", e.required},
                            {"worst_vertex", e.worst_vertex + 1},
                            {"trials", e.trials},
                            {"ok", e.lower_confidence_bound >= e.required}});
    }
    return Json{{"command", "padding-estimate"},
                {"format_version", kFormatVersion},
                {"input", graph_summary(pl.graph)},
                {"host", graph_summary(pl.host())},
                {"seed", seed},
                {"confidence", 0.99},
                {"params", params_json(prm)},
                {"rows", rows}};
}

inline Json verify_json(const Pipeline& pl, const VerificationReport& r) {
    Json out = to_json(r);
    out["command"] = "verify";
    out["format_version"] = kFormatVersion;
    out["input"] = graph_summary(pl.graph);
    out["host"] = graph_summary(pl.host());
    return out;
}

} // namespace twpad
