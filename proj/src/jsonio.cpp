#include "txgraph/jsonio.hpp"

#include <fstream>
#include <iostream>

namespace txgraph {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json to_json(const Trace& t) {
    ordered_json j;
    j["chain"] = to_string(t.chain);
    j["kind"] = to_string(t.kind);
    j["source"] = {{"identifier", t.source.identifier},
                   {"node_class", to_string(t.source.node_class)}};
    j["target"] = {{"identifier", t.target.identifier},
                   {"node_class", to_string(t.target.node_class)}};
    j["weight"] = t.weight.to_string();
    j["timestamp"] = t.timestamp;
    if (t.memo) j["memo"] = *t.memo;
    j["initiator_role"] = to_string(t.initiator_role);
    j["tx_id"] = t.tx_id;
    j["ordinal"] = t.ordinal;
    return j;
}

namespace {

NodeId node_from_json(Chain chain, const json& j) {
    NodeId n;
    n.chain = chain;
    n.identifier = j.at("identifier").get<std::string>();
    n.node_class = parse_node_class(j.at("node_class").get<std::string>());
    if (n.identifier.empty()) throw ParseError("empty node identifier");
    if (n.node_class == NodeClass::TxidSurrogate && chain != Chain::Bitcoin)
        throw ParseError("txid surrogate outside a Bitcoin stream");
    return n;
}

}  // namespace

Trace trace_from_json(const json& j) {
    Trace t;
    t.chain = parse_chain(j.at("chain").get<std::string>());
    t.kind = parse_trace_kind(j.at("kind").get<std::string>());
    t.source = node_from_json(t.chain, j.at("source"));
    t.target = node_from_json(t.chain, j.at("target"));
    t.weight = Decimal::parse(j.at("weight").get<std::string>());
    if (t.weight.negative()) throw ParseError("negative trace weight");
    if (t.kind == TraceKind::AccountCreation && t.weight != Decimal(1))
        throw ParseError("account creation weight must be 1");
    t.timestamp = j.at("timestamp").get<std::int64_t>();
    if (t.timestamp < 0) throw ParseError("negative timestamp");
    if (j.contains("memo")) t.memo = j.at("memo").get<std::string>();
    t.initiator_role = parse_initiator_role(j.at("initiator_role").get<std::string>());
    t.tx_id = j.at("tx_id").get<std::string>();
    t.ordinal = j.at("ordinal").get<std::uint64_t>();
    return t;
}

RawBitcoinTx bitcoin_tx_from_json(const json& j) {
    RawBitcoinTx raw;
    raw.tx_id = j.at("tx_id").get<std::string>();
    raw.timestamp = j.at("timestamp").get<std::int64_t>();
    for (const auto& e : j.at("inputs"))
        raw.inputs.emplace_back(e.at("pubkey").get<std::string>(),
                                Decimal::parse(e.at("amount").get<std::string>()));
    for (const auto& e : j.at("outputs"))
        raw.outputs.emplace_back(e.at("pubkey").get<std::string>(),
                                 Decimal::parse(e.at("amount").get<std::string>()));
    return raw;
}

ordered_json to_json(const RawBitcoinTx& raw) {
    ordered_json j;
    j["tx_id"] = raw.tx_id;
    j["timestamp"] = raw.timestamp;
    j["inputs"] = ordered_json::array();
    for (const auto& [pk, amount] : raw.inputs)
        j["inputs"].push_back({{"pubkey", pk}, {"amount", amount.to_string()}});
    j["outputs"] = ordered_json::array();
    for (const auto& [pk, amount] : raw.outputs)
        j["outputs"].push_back({{"pubkey", pk}, {"amount", amount.to_string()}});
    return j;
}

namespace {

EthTraceType eth_trace_type_from(const std::string& s) {
    if (s == "external") return EthTraceType::External;
    if (s == "internal-call") return EthTraceType::InternalCall;
    if (s == "internal-create") return EthTraceType::InternalCreate;
    throw ParseError("unknown trace_type: " + s);
}

std::string to_string(EthTraceType t) {
    switch (t) {
        case EthTraceType::External: return "external";
        case EthTraceType::InternalCall: return "internal-call";
        case EthTraceType::InternalCreate: return "internal-create";
    }
    return "?";
}

}  // namespace

RawEthereumTrace ethereum_trace_from_json(const json& j) {
    RawEthereumTrace raw;
    raw.tx_id = j.at("tx_id").get<std::string>();
    raw.ordinal = j.at("ordinal").get<std::uint64_t>();
    raw.timestamp = j.at("timestamp").get<std::int64_t>();
    raw.from = j.at("from").get<std::string>();
    if (j.contains("to") && !j.at("to").is_null())
        raw.to = j.at("to").get<std::string>();
    raw.value = Decimal::parse(j.at("value").get<std::string>());
    raw.input_data = j.at("input_data").get<std::uint64_t>();
    raw.trace_type = eth_trace_type_from(j.at("trace_type").get<std::string>());
    if (j.contains("to_is_contract") && !j.at("to_is_contract").is_null())
        raw.to_is_contract = j.at("to_is_contract").get<bool>();
    return raw;
}

ordered_json to_json(const RawEthereumTrace& raw) {
    ordered_json j;
    j["tx_id"] = raw.tx_id;
    j["ordinal"] = raw.ordinal;
    j["timestamp"] = raw.timestamp;
    j["from"] = raw.from;
    if (raw.to) j["to"] = *raw.to;
    j["value"] = raw.value.to_string();
    j["input_data"] = raw.input_data;
    j["trace_type"] = to_string(raw.trace_type);
    if (raw.to_is_contract) j["to_is_contract"] = *raw.to_is_contract;
    return j;
}

RawEosioAction eosio_action_from_json(const json& j) {
    RawEosioAction raw;
    raw.tx_id = j.at("tx_id").get<std::string>();
    raw.ordinal = j.at("ordinal").get<std::uint64_t>();
    raw.timestamp = j.at("timestamp").get<std::int64_t>();
    raw.contract = j.at("contract").get<std::string>();
    raw.action_name = j.at("action_name").get<std::string>();
    raw.receiver = j.at("receiver").get<std::string>();
    if (j.contains("payer") && !j.at("payer").is_null())
        raw.payer = j.at("payer").get<std::string>();
    if (j.contains("payee") && !j.at("payee").is_null())
        raw.payee = j.at("payee").get<std::string>();
    if (j.contains("quantity") && !j.at("quantity").is_null())
        raw.quantity = Decimal::parse(j.at("quantity").get<std::string>());
    if (j.contains("memo") && !j.at("memo").is_null())
        raw.memo = j.at("memo").get<std::string>();
    raw.initiator = j.at("initiator").get<std::string>();
    if (j.contains("initiator_is_contract") && !j.at("initiator_is_contract").is_null())
        raw.initiator_is_contract = j.at("initiator_is_contract").get<bool>();
    return raw;
}

ordered_json to_json(const RawEosioAction& raw) {
    ordered_json j;
    j["tx_id"] = raw.tx_id;
    j["ordinal"] = raw.ordinal;
    j["timestamp"] = raw.timestamp;
    j["contract"] = raw.contract;
    j["action_name"] = raw.action_name;
    j["receiver"] = raw.receiver;
    if (raw.payer) j["payer"] = *raw.payer;
    if (raw.payee) j["payee"] = *raw.payee;
    if (raw.quantity) j["quantity"] = raw.quantity->to_string();
    if (raw.memo) j["memo"] = *raw.memo;
    j["initiator"] = raw.initiator;
    if (raw.initiator_is_contract) j["initiator_is_contract"] = *raw.initiator_is_contract;
    return j;
}

JsonlSummary for_each_jsonl(const std::string& path, bool lenient,
                            const std::function<void(const json&)>& fn) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open input file: " + path);
    JsonlSummary summary;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ++summary.lines_read;
        try {
            fn(json::parse(line));
        } catch (const std::exception& e) {
            if (!lenient)
                throw ParseError(path + ":" + std::to_string(lineno) + ": " + e.what());
            std::cerr << "warning: " << path << ":" << lineno << ": skipped ("
                      << e.what() << ")\n";
            ++summary.lines_skipped;
        }
    }
    return summary;
}

std::vector<Trace> read_traces_jsonl(const std::string& path, bool lenient) {
    std::vector<Trace> traces;
    for_each_jsonl(path, lenient, [&](const json& j) { traces.push_back(trace_from_json(j)); });
    return traces;
}

void write_traces_jsonl(const std::vector<Trace>& traces, std::ostream& os) {
    for (const Trace& t : traces) os << to_json(t).dump() << '\n';
}

}  // namespace txgraph
