#include "txgraph/graph.hpp"

#include <set>

namespace txgraph {

std::string to_string(GraphKind k) {
    switch (k) {
        case GraphKind::MTG: return "MTG";
        case GraphKind::ACG: return "ACG";
        case GraphKind::CIG: return "CIG";
    }
    return "?";
}

GraphKind parse_graph_kind(const std::string& s) {
    if (s == "MTG") return GraphKind::MTG;
    if (s == "ACG") return GraphKind::ACG;
    if (s == "CIG") return GraphKind::CIG;
    throw ParseError("unknown graph kind: " + s);
}

TraceKind trace_kind_for(GraphKind k) {
    switch (k) {
        case GraphKind::MTG: return TraceKind::MoneyTransfer;
        case GraphKind::ACG: return TraceKind::AccountCreation;
        case GraphKind::CIG: return TraceKind::ContractInvocation;
    }
    throw DataError("bad graph kind");
}

std::uint64_t MonthlyGraph::trace_count() const {
    std::uint64_t n = 0;
    for (const auto& [key, e] : edges) n += e.trace_count;
    return n;
}

std::map<std::string, std::uint64_t> MonthlyGraph::indegrees() const {
    std::map<std::string, std::uint64_t> deg;
    for (const auto& [id, info] : nodes) deg[id] = 0;
    for (const auto& [key, e] : edges) ++deg[key.second];
    return deg;
}

std::map<std::string, std::uint64_t> MonthlyGraph::outdegrees() const {
    std::map<std::string, std::uint64_t> deg;
    for (const auto& [id, info] : nodes) deg[id] = 0;
    for (const auto& [key, e] : edges) ++deg[key.first];
    return deg;
}

void MonthlyGraph::remove_node(const std::string& id) {
    if (nodes.erase(id) == 0) return;
    for (auto it = edges.begin(); it != edges.end();) {
        if (it->first.first == id || it->first.second == id)
            it = edges.erase(it);
        else
            ++it;
    }
}

MonthlyGraph build_graph(std::span<const Trace> traces, GraphKind kind, MonthKey month) {
    MonthlyGraph g;
    g.kind = kind;
    g.month = month;
    const TraceKind want = trace_kind_for(kind);
    bool chain_set = false;
    for (const Trace& t : traces) {
        if (t.kind != want)
            throw DataError("trace kind does not match graph kind");
        if (month_of(t.timestamp) != month)
            throw DataError("trace outside graph month");
        if (!chain_set) {
            g.chain = t.chain;
            chain_set = true;
        } else if (t.chain != g.chain) {
            throw DataError("mixed chains in one graph");
        }
        auto& src = g.nodes[t.source.identifier];
        src.node_class = t.source.node_class;
        if (t.source_label) src.label = t.source_label;
        auto& dst = g.nodes[t.target.identifier];
        dst.node_class = t.target.node_class;
        if (t.target_label) dst.label = t.target_label;

        auto& e = g.edges[{t.source.identifier, t.target.identifier}];
        e.weight_sum += t.weight;
        ++e.trace_count;
    }
    if (kind == GraphKind::ACG) {
        std::set<std::string> created;
        for (const auto& [key, e] : g.edges)
            if (!created.insert(key.second).second)
                throw DataError("ACG indegree > 1 for " + key.second);
    }
    return g;
}

namespace {

bool edge_matches(const MonthlyGraph& g, const std::pair<std::string, std::string>& key,
                  const std::optional<DAppCategory>& category) {
    const auto& src = g.nodes.at(key.first).label;
    const auto& dst = g.nodes.at(key.second).label;
    if (!category) return src.has_value() || dst.has_value();
    return (src && src->category == *category) || (dst && dst->category == *category);
}

}  // namespace

MonthlyGraph extract_dapp_subgraph(const MonthlyGraph& graph,
                                   std::optional<DAppCategory> category) {
    MonthlyGraph sub;
    sub.chain = graph.chain;
    sub.kind = graph.kind;
    sub.month = graph.month;
    for (const auto& [key, e] : graph.edges) {
        if (!edge_matches(graph, key, category)) continue;
        sub.edges[key] = e;
        sub.nodes[key.first] = graph.nodes.at(key.first);
        sub.nodes[key.second] = graph.nodes.at(key.second);
    }
    return sub;
}

std::optional<DAppShareReport> dapp_share_report(const MonthlyGraph& graph) {
    std::uint64_t total = graph.trace_count();
    if (total == 0) return std::nullopt;

    DAppShareReport rep;
    rep.total_traces = total;
    std::map<DAppCategory, std::uint64_t> per_category;
    std::uint64_t dapp_related = 0;
    for (const auto& [key, e] : graph.edges) {
        const auto& src = graph.nodes.at(key.first).label;
        const auto& dst = graph.nodes.at(key.second).label;
        if (!src && !dst) continue;
        dapp_related += e.trace_count;
        std::set<DAppCategory> cats;
        if (src) cats.insert(src->category);
        if (dst) cats.insert(dst->category);
        for (DAppCategory c : cats) per_category[c] += e.trace_count;
    }
    for (const auto& [c, n] : per_category)
        rep.category_shares[c] = static_cast<double>(n) / static_cast<double>(total);
    rep.non_dapp_share =
        1.0 - static_cast<double>(dapp_related) / static_cast<double>(total);
    return rep;
}

void write_edge_csv(const MonthlyGraph& graph, std::ostream& os) {
    os << "source,target,weight_sum,trace_count\n";
    for (const auto& [key, e] : graph.edges)
        os << key.first << ',' << key.second << ',' << e.weight_sum.to_string()
           << ',' << e.trace_count << '\n';
}

void write_node_csv(const MonthlyGraph& graph, std::ostream& os) {
    os << "id,class,dapp_name,dapp_category\n";
    for (const auto& [id, info] : graph.nodes) {
        os << id << ',' << to_string(info.node_class) << ',';
        if (info.label)
            os << info.label->name << ',' << to_string(info.label->category);
        else
            os << ',';
        os << '\n';
    }
}

}  // namespace txgraph
