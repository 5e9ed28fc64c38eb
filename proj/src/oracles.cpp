#include "txgraph/oracles.hpp"

#include <cmath>

namespace txgraph {

namespace {

constexpr std::size_t kOracleLimit = 1000;

struct FlatGraph {
    std::vector<std::string> ids;
    std::vector<std::vector<bool>> adj;  // directed adjacency matrix

    explicit FlatGraph(const MonthlyGraph& g) {
        if (g.node_count() > kOracleLimit)
            throw DataError("oracle refuses instances above 1000 nodes");
        std::map<std::string, std::size_t> index;
        for (const auto& [id, info] : g.nodes) {
            index[id] = ids.size();
            ids.push_back(id);
        }
        adj.assign(ids.size(), std::vector<bool>(ids.size(), false));
        for (const auto& [key, e] : g.edges)
            adj[index.at(key.first)][index.at(key.second)] = true;
    }
};

}  // namespace

std::size_t brute_wcc(const MonthlyGraph& graph) {
    FlatGraph fg(graph);
    const std::size_t n = fg.ids.size();
    std::vector<bool> seen(n, false);
    std::size_t components = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        ++components;
        std::vector<std::size_t> stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (seen[v] || (!fg.adj[u][v] && !fg.adj[v][u])) continue;
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return components;
}

std::size_t brute_scc(const MonthlyGraph& graph) {
    FlatGraph fg(graph);
    const std::size_t n = fg.ids.size();

    // Reachability by flood fill from every node.
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t s = 0; s < n; ++s) {
        std::vector<std::size_t> stack{s};
        reach[s][s] = true;
        while (!stack.empty()) {
            std::size_t u = stack.back();
            stack.pop_back();
            for (std::size_t v = 0; v < n; ++v) {
                if (!fg.adj[u][v] || reach[s][v]) continue;
                reach[s][v] = true;
                stack.push_back(v);
            }
        }
    }
    std::vector<bool> assigned(n, false);
    std::size_t classes = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (assigned[i]) continue;
        ++classes;
        for (std::size_t j = i; j < n; ++j)
            if (reach[i][j] && reach[j][i]) assigned[j] = true;
    }
    return classes;
}

double brute_pearson(std::span<const std::pair<double, double>> pairs) {
    const std::size_t n = pairs.size();
    if (n < 2) return std::nan("");
    double sx = 0, sy = 0;
    for (const auto& [x, y] : pairs) {
        sx += x;
        sy += y;
    }
    const double mx = sx / static_cast<double>(n);
    const double my = sy / static_cast<double>(n);
    double cov = 0, vx = 0, vy = 0;
    for (const auto& [x, y] : pairs) {
        cov += (x - mx) * (y - my);
        vx += (x - mx) * (x - mx);
        vy += (y - my) * (y - my);
    }
    if (vx == 0.0 || vy == 0.0) return std::nan("");
    return cov / std::sqrt(vx * vy);
}

SpamRuleCheck brute_spam_check(std::span<const Trace> traces, const std::string& account,
                               const SpamParams& params) {
    SpamRuleCheck check;

    std::set<std::string> recipients;
    double total = 0.0;
    std::map<std::string, std::uint64_t> per_recipient;
    std::map<std::string, std::set<std::string>> memo_groups;
    for (const Trace& t : traces) {
        if (t.kind != TraceKind::MoneyTransfer || t.source.identifier != account) continue;
        recipients.insert(t.target.identifier);
        total += t.weight.to_double();
        ++per_recipient[t.target.identifier];
        if (t.memo) memo_groups[*t.memo].insert(t.target.identifier);
    }
    if (recipients.empty()) return check;

    check.r1 = total / static_cast<double>(recipients.size()) <=
               params.x.to_double() + 1e-15;
    check.r2 = true;
    for (const auto& [r, c] : per_recipient)
        if (c > params.y) check.r2 = false;

    std::uint64_t silent = 0;
    for (const auto& r : recipients) {
        bool replied = false;
        for (const Trace& t : traces) {
            if (t.source.identifier == r && t.target.identifier == account &&
                (t.kind == TraceKind::MoneyTransfer ||
                 t.kind == TraceKind::ContractInvocation)) {
                replied = true;
                break;
            }
        }
        if (!replied) ++silent;
    }
    check.r3 = silent > params.z;

    for (const auto& [memo, group] : memo_groups)
        if (group.size() >= params.z) check.r4 = true;
    return check;
}

}  // namespace txgraph
