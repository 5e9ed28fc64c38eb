#include "txgraph/core.hpp"

#include <cstdio>

namespace txgraph {

std::string to_string(Chain c) {
    switch (c) {
        case Chain::Bitcoin: return "bitcoin";
        case Chain::Ethereum: return "ethereum";
        case Chain::Eosio: return "eosio";
    }
    return "?";
}

std::string to_string(TraceKind k) {
    switch (k) {
        case TraceKind::MoneyTransfer: return "money_transfer";
        case TraceKind::AccountCreation: return "account_creation";
        case TraceKind::ContractInvocation: return "contract_invocation";
    }
    return "?";
}

std::string to_string(NodeClass c) {
    switch (c) {
        case NodeClass::Regular: return "regular";
        case NodeClass::Contract: return "contract";
        case NodeClass::TxidSurrogate: return "txid-surrogate";
    }
    return "?";
}

std::string to_string(InitiatorRole r) {
    switch (r) {
        case InitiatorRole::User: return "user";
        case InitiatorRole::Contract: return "contract";
        case InitiatorRole::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(DAppCategory c) {
    switch (c) {
        case DAppCategory::DeFi: return "DeFi";
        case DAppCategory::Exchange: return "Exchange";
        case DAppCategory::Finance: return "Finance";
        case DAppCategory::Gambling: return "Gambling";
        case DAppCategory::Game: return "Game";
        case DAppCategory::HighRisk: return "High-Risk";
        case DAppCategory::Platform: return "Platform";
        case DAppCategory::Social: return "Social";
        case DAppCategory::Token: return "Token";
        case DAppCategory::Tool: return "Tool";
        case DAppCategory::Eidos: return "EIDOS";
    }
    return "?";
}

Chain parse_chain(const std::string& s) {
    if (s == "bitcoin" || s == "btc") return Chain::Bitcoin;
    if (s == "ethereum" || s == "eth") return Chain::Ethereum;
    if (s == "eosio" || s == "eos") return Chain::Eosio;
    throw ParseError("unknown chain: " + s);
}

TraceKind parse_trace_kind(const std::string& s) {
    if (s == "money_transfer") return TraceKind::MoneyTransfer;
    if (s == "account_creation") return TraceKind::AccountCreation;
    if (s == "contract_invocation") return TraceKind::ContractInvocation;
    throw ParseError("unknown trace kind: " + s);
}

NodeClass parse_node_class(const std::string& s) {
    if (s == "regular") return NodeClass::Regular;
    if (s == "contract") return NodeClass::Contract;
    if (s == "txid-surrogate") return NodeClass::TxidSurrogate;
    throw ParseError("unknown node class: " + s);
}

InitiatorRole parse_initiator_role(const std::string& s) {
    if (s == "user") return InitiatorRole::User;
    if (s == "contract") return InitiatorRole::Contract;
    if (s == "unknown") return InitiatorRole::Unknown;
    throw ParseError("unknown initiator role: " + s);
}

DAppCategory parse_dapp_category(const std::string& s) {
    if (s == "DeFi") return DAppCategory::DeFi;
    if (s == "Exchange") return DAppCategory::Exchange;
    if (s == "Finance") return DAppCategory::Finance;
    if (s == "Gambling") return DAppCategory::Gambling;
    if (s == "Game") return DAppCategory::Game;
    if (s == "High-Risk") return DAppCategory::HighRisk;
    if (s == "Platform") return DAppCategory::Platform;
    if (s == "Social") return DAppCategory::Social;
    if (s == "Token") return DAppCategory::Token;
    if (s == "Tool") return DAppCategory::Tool;
    if (s == "EIDOS") return DAppCategory::Eidos;
    throw ParseError("unknown DApp category: " + s);
}

std::string MonthKey::str() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", year, month);
    return buf;
}

MonthKey MonthKey::parse(const std::string& s) {
    int y = 0, m = 0;
    char extra;
    if (std::sscanf(s.c_str(), "%d-%d%c", &y, &m, &extra) != 2 || m < 1 || m > 12)
        throw ParseError("invalid month key: " + s);
    return {y, m};
}

MonthKey month_of(std::int64_t timestamp) {
    if (timestamp < 0) throw DataError("negative timestamp");
    // Civil-from-days conversion (proleptic Gregorian, UTC).
    std::int64_t z = timestamp / 86400 + 719468;
    std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    std::int64_t doe = z - era * 146097;
    std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    std::int64_t y = yoe + era * 400;
    std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    std::int64_t mp = (5 * doy + 2) / 153;
    std::int64_t m = mp < 10 ? mp + 3 : mp - 9;
    if (m <= 2) ++y;
    return {static_cast<int>(y), static_cast<int>(m)};
}

std::vector<MonthKey> month_range(MonthKey first, MonthKey last) {
    if (first > last) throw DataError("month range: first > last");
    std::vector<MonthKey> out;
    for (int i = first.index(); i <= last.index(); ++i)
        out.push_back(MonthKey::from_index(i));
    return out;
}

}  // namespace txgraph
