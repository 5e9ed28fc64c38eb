#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "txgraph/graph.hpp"

namespace txgraph {

/// Four-rule spam-advertisement thresholds. Defaults follow the detector
/// the accompanying study ran with; they are deliberately conservative,
/// so verdicts carry full evidence for manual review.
struct SpamParams {
    Decimal x = Decimal::parse("0.001");  // max avg transfer per recipient
    std::uint64_t y = 30;                 // max T_m per recipient per month
    std::uint64_t z = 500;                // min non-replying recipients
    bool require_memo = true;             // rule 4: identical memo content
};

struct SpamVerdict {
    NodeId account;
    MonthKey month;
    std::uint64_t recipients = 0;
    std::uint64_t non_repliers = 0;
    Decimal avg_amount;  // total transferred / distinct recipients
    std::uint64_t max_tm_per_recipient = 0;
    std::vector<std::pair<std::string, std::uint64_t>> memo_groups;  // (memo, recipients)
    std::set<std::string> rules_passed;  // subset of {R1,R2,R3,R4}
};

// Flags every account whose month of money transfers satisfies all four
// rules (R4 only when require_memo). Throws DataError when the graphs
// disagree on chain or month.
std::vector<SpamVerdict> scan_spammers(const MonthlyGraph& mtg, const MonthlyGraph& cig,
                                       std::span<const Trace> traces,
                                       const SpamParams& params);

struct FamilyTreeNode {
    std::string id;
    std::optional<std::string> parent;
    std::vector<std::string> children;
    bool flagged = false;
    std::uint64_t subtree_size = 0;     // node itself included
    std::uint64_t subtree_flagged = 0;
    double spammer_proportion = 0.0;    // subtree_flagged / subtree_size
};

struct FamilyTree {
    std::map<std::string, FamilyTreeNode> nodes;
    std::vector<std::string> roots;  // creator-less nodes, sorted
};

// Forest over the full-history ACG union. Throws DataError on indegree > 1.
FamilyTree build_family_tree(const MonthlyGraph& acg_union,
                             const std::set<std::string>& flagged);

// Each account counted once, at its earliest flagged month.
std::map<MonthKey, std::uint64_t> spam_timeline(std::span<const SpamVerdict> verdicts);

}  // namespace txgraph
