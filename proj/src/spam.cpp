#include "txgraph/spam.hpp"

#include <algorithm>

namespace txgraph {

std::vector<SpamVerdict> scan_spammers(const MonthlyGraph& mtg, const MonthlyGraph& cig,
                                       std::span<const Trace> traces,
                                       const SpamParams& params) {
    if (mtg.chain != cig.chain || mtg.month != cig.month)
        throw DataError("spam scan: MTG and CIG must share chain and month");
    if (mtg.kind != GraphKind::MTG || cig.kind != GraphKind::CIG)
        throw DataError("spam scan: wrong graph kinds");

    struct SenderView {
        std::map<std::string, std::uint64_t> tm_per_recipient;
        std::map<std::string, Decimal> amount_per_recipient;
        // memo -> distinct recipients carrying it
        std::map<std::string, std::set<std::string>> memo_recipients;
        Decimal total;
        NodeId node;
    };
    std::map<std::string, SenderView> senders;
    // recipient account -> accounts it sent a T_m or T_c to this month
    std::map<std::string, std::set<std::string>> replied_to;

    for (const Trace& t : traces) {
        if (month_of(t.timestamp) != mtg.month || t.chain != mtg.chain)
            throw DataError("spam scan: trace outside scan month/chain");
        if (t.kind == TraceKind::MoneyTransfer) {
            auto& s = senders[t.source.identifier];
            s.node = t.source;
            ++s.tm_per_recipient[t.target.identifier];
            s.amount_per_recipient[t.target.identifier] += t.weight;
            s.total += t.weight;
            if (t.memo) s.memo_recipients[*t.memo].insert(t.target.identifier);
        }
        if (t.kind == TraceKind::MoneyTransfer || t.kind == TraceKind::ContractInvocation)
            replied_to[t.source.identifier].insert(t.target.identifier);
    }

    std::vector<SpamVerdict> verdicts;
    for (const auto& [id, s] : senders) {
        SpamVerdict v;
        v.account = s.node;
        v.month = mtg.month;
        v.recipients = s.tm_per_recipient.size();

        v.max_tm_per_recipient = 0;
        for (const auto& [r, n] : s.tm_per_recipient)
            v.max_tm_per_recipient = std::max(v.max_tm_per_recipient, n);

        std::uint64_t non_repliers = 0;
        for (const auto& [r, n] : s.tm_per_recipient) {
            auto it = replied_to.find(r);
            if (it == replied_to.end() || !it->second.count(id)) ++non_repliers;
        }
        v.non_repliers = non_repliers;
        v.avg_amount = s.total.div(Decimal(static_cast<std::int64_t>(v.recipients)), 12);

        std::uint64_t best_memo_group = 0;
        for (const auto& [memo, recips] : s.memo_recipients) {
            v.memo_groups.emplace_back(memo, recips.size());
            best_memo_group = std::max<std::uint64_t>(best_memo_group, recips.size());
        }

        // R1 compared exactly: total <= x * recipients.
        if (s.total <= params.x * Decimal(static_cast<std::int64_t>(v.recipients)))
            v.rules_passed.insert("R1");
        if (v.max_tm_per_recipient <= params.y) v.rules_passed.insert("R2");
        if (v.non_repliers > params.z) v.rules_passed.insert("R3");
        if (best_memo_group >= params.z) v.rules_passed.insert("R4");

        bool flagged = v.rules_passed.count("R1") && v.rules_passed.count("R2") &&
                       v.rules_passed.count("R3") &&
                       (!params.require_memo || v.rules_passed.count("R4"));
        if (flagged) verdicts.push_back(std::move(v));
    }
    return verdicts;
}

FamilyTree build_family_tree(const MonthlyGraph& acg_union,
                             const std::set<std::string>& flagged) {
    FamilyTree tree;
    for (const auto& [id, info] : acg_union.nodes) {
        FamilyTreeNode n;
        n.id = id;
        n.flagged = flagged.count(id) > 0;
        tree.nodes.emplace(id, std::move(n));
    }
    for (const auto& [key, e] : acg_union.edges) {
        auto& child = tree.nodes.at(key.second);
        if (child.parent) throw DataError("family tree: indegree > 1 for " + key.second);
        child.parent = key.first;
        tree.nodes.at(key.first).children.push_back(key.second);
    }
    for (const auto& [id, n] : tree.nodes)
        if (!n.parent) tree.roots.push_back(id);

    // Post-order accumulation of subtree counts.
    std::size_t visited = 0;
    for (const auto& root : tree.roots) {
        std::vector<std::pair<std::string, bool>> stack{{root, false}};
        while (!stack.empty()) {
            auto [id, expanded] = stack.back();
            stack.pop_back();
            FamilyTreeNode& n = tree.nodes.at(id);
            if (!expanded) {
                stack.emplace_back(id, true);
                for (const auto& c : n.children) stack.emplace_back(c, false);
            } else {
                n.subtree_size = 1;
                n.subtree_flagged = n.flagged ? 1 : 0;
                for (const auto& c : n.children) {
                    n.subtree_size += tree.nodes.at(c).subtree_size;
                    n.subtree_flagged += tree.nodes.at(c).subtree_flagged;
                }
                n.spammer_proportion = static_cast<double>(n.subtree_flagged) /
                                       static_cast<double>(n.subtree_size);
                ++visited;
            }
        }
    }
    if (visited != tree.nodes.size())
        throw DataError("family tree: creation cycle detected");
    return tree;
}

std::map<MonthKey, std::uint64_t> spam_timeline(std::span<const SpamVerdict> verdicts) {
    std::map<std::string, MonthKey> earliest;
    for (const SpamVerdict& v : verdicts) {
        auto it = earliest.find(v.account.identifier);
        if (it == earliest.end() || v.month < it->second)
            earliest[v.account.identifier] = v.month;
    }
    std::map<MonthKey, std::uint64_t> timeline;
    for (const auto& [id, m] : earliest) ++timeline[m];
    return timeline;
}

}  // namespace txgraph
