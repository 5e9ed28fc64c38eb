#pragma once

#include <span>
#include <utility>
#include <vector>

#include "txgraph/graph.hpp"
#include "txgraph/spam.hpp"

namespace txgraph {

// Brute-force reference implementations, deliberately sharing no code
// with the production algorithms they check. All refuse instances above
// 1000 nodes (quadratic/cubic cost).

std::size_t brute_wcc(const MonthlyGraph& graph);

// Pairwise-reachability equivalence classes via per-node flood fill.
std::size_t brute_scc(const MonthlyGraph& graph);

// Direct population Pearson formula over (indegree, outdegree) pairs.
// NaN when fewer than 2 pairs or either variance is zero.
double brute_pearson(std::span<const std::pair<double, double>> pairs);

struct SpamRuleCheck {
    bool r1 = false;
    bool r2 = false;
    bool r3 = false;
    bool r4 = false;
    bool all(bool require_memo) const { return r1 && r2 && r3 && (r4 || !require_memo); }
};

// Exhaustive rule evaluation for one candidate account over raw traces.
SpamRuleCheck brute_spam_check(std::span<const Trace> traces, const std::string& account,
                               const SpamParams& params);

}  // namespace txgraph
