#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <utility>

#include "txgraph/core.hpp"

namespace txgraph {

enum class GraphKind { MTG, ACG, CIG };

std::string to_string(GraphKind k);
GraphKind parse_graph_kind(const std::string& s);
TraceKind trace_kind_for(GraphKind k);

struct NodeInfo {
    NodeClass node_class = NodeClass::Regular;
    std::optional<DAppLabel> label;
};

struct AggregatedEdge {
    Decimal weight_sum;
    std::uint64_t trace_count = 0;
};

/// Directed graph for one (chain, kind, month). Edges are aggregated per
/// ordered (source, target) pair; sorted maps keep every traversal and
/// dump order deterministic.
struct MonthlyGraph {
    Chain chain = Chain::Bitcoin;
    GraphKind kind = GraphKind::MTG;
    MonthKey month;
    std::map<std::string, NodeInfo> nodes;
    std::map<std::pair<std::string, std::string>, AggregatedEdge> edges;

    std::size_t node_count() const { return nodes.size(); }
    std::size_t edge_count() const { return edges.size(); }
    std::uint64_t trace_count() const;

    // Distinct-edge degrees per node id.
    std::map<std::string, std::uint64_t> indegrees() const;
    std::map<std::string, std::uint64_t> outdegrees() const;

    // Removes a node and every incident edge. No-op for unknown ids.
    void remove_node(const std::string& id);
};

// Aggregates one month of kind-compatible traces. Throws DataError on a
// trace from the wrong month or kind, and on an ACG indegree violation.
MonthlyGraph build_graph(std::span<const Trace> traces, GraphKind kind, MonthKey month);

// Edges with at least one labeled endpoint (restricted to `category` when
// given) plus their endpoints.
MonthlyGraph extract_dapp_subgraph(const MonthlyGraph& graph,
                                   std::optional<DAppCategory> category = std::nullopt);

/// Trace-count shares per DApp category for one graph. An edge whose two
/// endpoints carry different categories counts toward both, so category
/// shares may sum above the DApp-related share.
struct DAppShareReport {
    std::map<DAppCategory, double> category_shares;
    double non_dapp_share = 1.0;
    std::uint64_t total_traces = 0;
};

// Absent (nullopt) for a zero-trace graph.
std::optional<DAppShareReport> dapp_share_report(const MonthlyGraph& graph);

// CSV dumps: edge list `source,target,weight_sum,trace_count` and node
// list `id,class,dapp_name,dapp_category`.
void write_edge_csv(const MonthlyGraph& graph, std::ostream& os);
void write_node_csv(const MonthlyGraph& graph, std::ostream& os);

}  // namespace txgraph
