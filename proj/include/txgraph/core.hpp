#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "txgraph/decimal.hpp"

namespace txgraph {

enum class Chain { Bitcoin, Ethereum, Eosio };

enum class TraceKind { MoneyTransfer, AccountCreation, ContractInvocation };

enum class NodeClass { Regular, Contract, TxidSurrogate };

enum class InitiatorRole { User, Contract, Unknown };

enum class DAppCategory {
    DeFi, Exchange, Finance, Gambling, Game, HighRisk,
    Platform, Social, Token, Tool, Eidos,
};

std::string to_string(Chain c);
std::string to_string(TraceKind k);
std::string to_string(NodeClass c);
std::string to_string(InitiatorRole r);
std::string to_string(DAppCategory c);

// Accepts both long names and the short registry codes (btc/eth/eos).
Chain parse_chain(const std::string& s);
TraceKind parse_trace_kind(const std::string& s);
NodeClass parse_node_class(const std::string& s);
InitiatorRole parse_initiator_role(const std::string& s);
// Throws ParseError on anything outside the closed category set.
DAppCategory parse_dapp_category(const std::string& s);

struct DAppLabel {
    std::string name;
    DAppCategory category;
    bool operator==(const DAppLabel&) const = default;
};

struct NodeId {
    Chain chain;
    std::string identifier;
    NodeClass node_class = NodeClass::Regular;
    bool operator==(const NodeId&) const = default;
};

/// Calendar month in UTC, rendered "yyyy-MM".
struct MonthKey {
    int year = 1970;
    int month = 1;  // 1..12

    auto operator<=>(const MonthKey&) const = default;

    std::string str() const;
    static MonthKey parse(const std::string& s);

    // Linear index for arithmetic across year boundaries.
    int index() const { return year * 12 + (month - 1); }
    static MonthKey from_index(int idx) { return {idx / 12, idx % 12 + 1}; }
};

struct Trace {
    Chain chain = Chain::Bitcoin;
    TraceKind kind = TraceKind::MoneyTransfer;
    NodeId source;
    NodeId target;
    Decimal weight;
    std::int64_t timestamp = 0;  // unix seconds, UTC
    std::optional<std::string> memo;
    InitiatorRole initiator_role = InitiatorRole::Unknown;
    std::string tx_id;
    std::uint64_t ordinal = 0;
    std::optional<DAppLabel> source_label;
    std::optional<DAppLabel> target_label;

    bool dapp_related() const { return source_label || target_label; }
};

// UTC calendar month containing the timestamp.
MonthKey month_of(std::int64_t timestamp);

// Inclusive, gap-free, ascending. Throws DataError when first > last.
std::vector<MonthKey> month_range(MonthKey first, MonthKey last);

}  // namespace txgraph
