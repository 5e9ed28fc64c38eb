#include "txgraph/ingest.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

namespace txgraph {

std::vector<Trace> parse_bitcoin_tx(const RawBitcoinTx& raw) {
    for (const auto& [pk, amount] : raw.inputs)
        if (amount.negative()) throw ParseError("negative input amount in " + raw.tx_id);
    for (const auto& [pk, amount] : raw.outputs)
        if (amount.negative()) throw ParseError("negative output amount in " + raw.tx_id);

    NodeId surrogate{Chain::Bitcoin, raw.tx_id, NodeClass::TxidSurrogate};
    std::vector<Trace> out;
    out.reserve(raw.inputs.size() + raw.outputs.size());
    std::uint64_t ordinal = 0;
    for (const auto& [pk, amount] : raw.inputs) {
        Trace t;
        t.chain = Chain::Bitcoin;
        t.kind = TraceKind::MoneyTransfer;
        t.source = {Chain::Bitcoin, pk, NodeClass::Regular};
        t.target = surrogate;
        t.weight = amount;
        t.timestamp = raw.timestamp;
        t.initiator_role = InitiatorRole::User;
        t.tx_id = raw.tx_id;
        t.ordinal = ordinal++;
        out.push_back(std::move(t));
    }
    for (const auto& [pk, amount] : raw.outputs) {
        Trace t;
        t.chain = Chain::Bitcoin;
        t.kind = TraceKind::MoneyTransfer;
        t.source = surrogate;
        t.target = {Chain::Bitcoin, pk, NodeClass::Regular};
        t.weight = amount;
        t.timestamp = raw.timestamp;
        t.initiator_role = InitiatorRole::User;
        t.tx_id = raw.tx_id;
        t.ordinal = ordinal++;
        out.push_back(std::move(t));
    }
    return out;
}

std::optional<Trace> EthereumClassifier::parse(const RawEthereumTrace& raw) {
    if (raw.value.negative()) throw ParseError("negative value in " + raw.tx_id);

    Trace t;
    t.chain = Chain::Ethereum;
    t.timestamp = raw.timestamp;
    t.tx_id = raw.tx_id;
    t.ordinal = raw.ordinal;
    t.initiator_role = raw.trace_type == EthTraceType::External ? InitiatorRole::User
                                                                : InitiatorRole::Contract;

    if (raw.trace_type == EthTraceType::InternalCreate) {
        if (!raw.to) throw ParseError("create trace without created address in " + raw.tx_id);
        contracts_.insert(*raw.to);
        t.kind = TraceKind::AccountCreation;
        t.source = {Chain::Ethereum, raw.from,
                    contracts_.count(raw.from) ? NodeClass::Contract : NodeClass::Regular};
        t.target = {Chain::Ethereum, *raw.to, NodeClass::Contract};
        t.weight = Decimal(1);
        return t;
    }

    if (!raw.to) throw ParseError("missing `to` on non-create trace in " + raw.tx_id);
    const bool target_is_contract =
        raw.to_is_contract ? *raw.to_is_contract : contracts_.count(*raw.to) > 0;

    t.source = {Chain::Ethereum, raw.from,
                contracts_.count(raw.from) ? NodeClass::Contract : NodeClass::Regular};
    t.target = {Chain::Ethereum, *raw.to,
                target_is_contract ? NodeClass::Contract : NodeClass::Regular};

    if (!raw.value.is_zero() && raw.input_data == 0 && !target_is_contract) {
        t.kind = TraceKind::MoneyTransfer;
        t.weight = raw.value;
        return t;
    }
    if (target_is_contract || raw.input_data > 0) {
        t.kind = TraceKind::ContractInvocation;
        t.weight = Decimal(1);
        return t;
    }
    // Zero value, no data, non-contract target: carries nothing.
    return std::nullopt;
}

std::optional<Trace> parse_eosio_action(const RawEosioAction& raw,
                                        const EosioSystemAccounts& sys) {
    if (raw.action_name.empty()) throw ParseError("empty action name in " + raw.tx_id);

    // Every action is also delivered as notification receipts; keep only
    // the receipt executed on the code owner itself.
    if (raw.receiver != raw.contract) return std::nullopt;

    Trace t;
    t.chain = Chain::Eosio;
    t.timestamp = raw.timestamp;
    t.tx_id = raw.tx_id;
    t.ordinal = raw.ordinal;
    t.initiator_role = raw.initiator_is_contract
                           ? (*raw.initiator_is_contract ? InitiatorRole::Contract
                                                         : InitiatorRole::User)
                           : InitiatorRole::Unknown;

    if (raw.contract == sys.token_contract && raw.action_name == "transfer") {
        if (!raw.payer || !raw.payee || !raw.quantity)
            throw ParseError("transfer without payer/payee/quantity in " + raw.tx_id);
        t.kind = TraceKind::MoneyTransfer;
        t.source = {Chain::Eosio, *raw.payer, NodeClass::Regular};
        t.target = {Chain::Eosio, *raw.payee, NodeClass::Regular};
        t.weight = *raw.quantity;
        t.memo = raw.memo;
        return t;
    }
    if (raw.contract == sys.system_account && raw.action_name == "newaccount") {
        if (!raw.payer || !raw.payee)
            throw ParseError("newaccount without creator/created in " + raw.tx_id);
        t.kind = TraceKind::AccountCreation;
        t.source = {Chain::Eosio, *raw.payer, NodeClass::Regular};
        t.target = {Chain::Eosio, *raw.payee, NodeClass::Regular};
        t.weight = Decimal(1);
        return t;
    }
    t.kind = TraceKind::ContractInvocation;
    t.source = {Chain::Eosio, raw.initiator, NodeClass::Regular};
    t.target = {Chain::Eosio, raw.contract, NodeClass::Contract};
    t.weight = Decimal(1);
    t.memo = raw.memo;
    return t;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

}  // namespace

DAppRegistry load_dapp_registry(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open registry file: " + path);
    DAppRegistry reg;
    std::string line;
    bool first = true;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv_line(line);
        if (first) {
            first = false;
            if (fields.size() >= 1 && fields[0] == "name") continue;  // header
        }
        if (fields.size() != 4)
            throw ParseError("registry line " + std::to_string(lineno) +
                             ": expected 4 columns");
        const std::string& name = fields[0];
        DAppCategory category = parse_dapp_category(fields[1]);
        Chain chain = parse_chain(fields[2]);
        const std::string& identifier = fields[3];
        if (reg.lookup(chain, identifier))
            std::cerr << "warning: duplicate registry entry for " << identifier
                      << " (line " << lineno << "), last row wins\n";
        reg.add(chain, identifier, DAppLabel{name, category});
    }
    return reg;
}

void label_traces(std::span<Trace> traces, const DAppRegistry& registry) {
    for (Trace& t : traces) {
        t.source_label = registry.lookup(t.chain, t.source.identifier);
        t.target_label = registry.lookup(t.chain, t.target.identifier);
    }
}

}  // namespace txgraph
