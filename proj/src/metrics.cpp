#include "txgraph/metrics.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <unordered_map>

namespace txgraph {

TraceStats trace_stats(std::span<const Trace> traces) {
    TraceStats s;
    std::map<TraceKind, std::map<InitiatorRole, std::uint64_t>> roles;
    for (const Trace& t : traces) {
        ++s.counts[t.kind];
        ++roles[t.kind][t.initiator_role];
        ++s.total;
    }
    for (const auto& [kind, n] : s.counts) {
        s.ratios[kind] = static_cast<double>(n) / static_cast<double>(s.total);
        for (const auto& [role, rn] : roles[kind])
            s.role_split[kind][role] = static_cast<double>(rn) / static_cast<double>(n);
    }
    return s;
}

std::string to_string(DegreeMode m) {
    switch (m) {
        case DegreeMode::In: return "in";
        case DegreeMode::Out: return "out";
        case DegreeMode::Total: return "total";
    }
    return "?";
}

DegreeHistogram degree_histogram(const MonthlyGraph& graph, DegreeMode mode) {
    DegreeHistogram h;
    h.mode = mode;
    h.node_count = graph.node_count();
    if (h.node_count == 0) return h;

    std::map<std::string, std::uint64_t> deg;
    auto in = graph.indegrees();
    auto out = graph.outdegrees();
    for (const auto& [id, info] : graph.nodes) {
        switch (mode) {
            case DegreeMode::In: deg[id] = in[id]; break;
            case DegreeMode::Out: deg[id] = out[id]; break;
            case DegreeMode::Total: deg[id] = in[id] + out[id]; break;
        }
    }
    std::map<std::uint64_t, std::uint64_t> counts;
    for (const auto& [id, d] : deg)
        if (d > 0) ++counts[d];
    for (const auto& [d, n] : counts)
        h.points.emplace_back(d, static_cast<double>(n) / static_cast<double>(h.node_count));
    return h;
}

AlphaFit fit_alpha(const DegreeHistogram& hist) {
    if (hist.points.size() < 2)
        throw InsufficientPointsError("degree distribution has fewer than 2 points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(hist.points.size());
    for (const auto& [d, p] : hist.points) {
        double x = std::log10(static_cast<double>(d));
        double y = std::log10(p);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    AlphaFit fit;
    fit.point_count = hist.points.size();
    double denom = n * sxx - sx * sx;
    fit.alpha = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.alpha * sx) / n;
    return fit;
}

std::optional<PearsonResult> pearson_r(const MonthlyGraph& graph) {
    if (graph.node_count() < 2) return std::nullopt;
    auto in = graph.indegrees();
    auto out = graph.outdegrees();
    const double n = static_cast<double>(graph.node_count());
    double mi = 0, mo = 0;
    for (const auto& [id, d] : in) mi += static_cast<double>(d);
    for (const auto& [id, d] : out) mo += static_cast<double>(d);
    mi /= n;
    mo /= n;
    double cov = 0, vi = 0, vo = 0;
    for (const auto& [id, info] : graph.nodes) {
        double di = static_cast<double>(in[id]) - mi;
        double dl = static_cast<double>(out[id]) - mo;
        cov += di * dl;
        vi += di * di;
        vo += dl * dl;
    }
    if (vi == 0.0 || vo == 0.0) return std::nullopt;
    return PearsonResult{cov / std::sqrt(vi * vo), graph.node_count()};
}

namespace {

// Union-find over node indices.
struct Dsu {
    std::vector<std::size_t> parent;
    explicit Dsu(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

struct IndexedGraph {
    std::unordered_map<std::string, std::size_t> index;
    std::vector<std::vector<std::size_t>> adj;  // out-neighbors

    explicit IndexedGraph(const MonthlyGraph& g) {
        index.reserve(g.node_count());
        for (const auto& [id, info] : g.nodes)
            index.emplace(id, index.size());
        adj.resize(index.size());
        for (const auto& [key, e] : g.edges)
            adj[index.at(key.first)].push_back(index.at(key.second));
    }
};

}  // namespace

std::size_t count_wcc(const MonthlyGraph& graph) {
    if (graph.node_count() == 0) return 0;
    IndexedGraph ig(graph);
    Dsu dsu(ig.adj.size());
    for (std::size_t u = 0; u < ig.adj.size(); ++u)
        for (std::size_t v : ig.adj[u]) dsu.unite(u, v);
    std::set<std::size_t> roots;
    for (std::size_t i = 0; i < ig.adj.size(); ++i) roots.insert(dsu.find(i));
    return roots.size();
}

std::size_t count_scc(const MonthlyGraph& graph) {
    if (graph.chain == Chain::Bitcoin && graph.kind == GraphKind::MTG)
        throw NotApplicableError("SCC is not defined for a Bitcoin MTG");
    if (graph.node_count() == 0) return 0;

    // Iterative Tarjan.
    IndexedGraph ig(graph);
    const std::size_t n = ig.adj.size();
    const std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> dfn(n, unset), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::size_t> stk;
    std::size_t counter = 0, components = 0;

    struct Frame {
        std::size_t node;
        std::size_t edge_pos;
    };
    std::vector<Frame> call;
    for (std::size_t start = 0; start < n; ++start) {
        if (dfn[start] != unset) continue;
        call.push_back({start, 0});
        while (!call.empty()) {
            auto& [u, pos] = call.back();
            if (pos == 0) {
                dfn[u] = low[u] = counter++;
                stk.push_back(u);
                on_stack[u] = true;
            }
            if (pos < ig.adj[u].size()) {
                std::size_t v = ig.adj[u][pos++];
                if (dfn[v] == unset)
                    call.push_back({v, 0});
                else if (on_stack[v])
                    low[u] = std::min(low[u], dfn[v]);
            } else {
                if (low[u] == dfn[u]) {
                    ++components;
                    std::size_t w;
                    do {
                        w = stk.back();
                        stk.pop_back();
                        on_stack[w] = false;
                    } while (w != u);
                }
                std::size_t done = u;
                call.pop_back();
                if (!call.empty())
                    low[call.back().node] = std::min(low[call.back().node], low[done]);
            }
        }
    }
    return components;
}

MetricSeries assemble_series(Chain chain, GraphKind kind, std::string metric,
                             const std::map<MonthKey, std::optional<double>>& by_month,
                             MonthKey first, MonthKey last) {
    MetricSeries s;
    s.chain = chain;
    s.kind = kind;
    s.metric = std::move(metric);
    for (const auto& [m, v] : by_month)
        if (m < first || m > last)
            throw DataError("series month outside range: " + m.str());
    for (MonthKey m : month_range(first, last)) {
        auto it = by_month.find(m);
        s.values.emplace_back(m, it == by_month.end() ? std::nullopt : it->second);
    }
    return s;
}

}  // namespace txgraph
