#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "txgraph/core.hpp"

namespace txgraph {

struct RawBitcoinTx {
    std::string tx_id;
    std::int64_t timestamp = 0;
    std::vector<std::pair<std::string, Decimal>> inputs;   // (pubkey, amount)
    std::vector<std::pair<std::string, Decimal>> outputs;  // (pubkey, amount)
};

enum class EthTraceType { External, InternalCall, InternalCreate };

struct RawEthereumTrace {
    std::string tx_id;
    std::uint64_t ordinal = 0;
    std::int64_t timestamp = 0;
    std::string from;
    std::optional<std::string> to;
    Decimal value;                       // wei
    std::uint64_t input_data = 0;        // byte length of the input field
    EthTraceType trace_type = EthTraceType::External;
    std::optional<bool> to_is_contract;
};

struct RawEosioAction {
    std::string tx_id;
    std::uint64_t ordinal = 0;
    std::int64_t timestamp = 0;
    std::string contract;  // code owner
    std::string action_name;
    std::string receiver;  // notification receiver
    std::optional<std::string> payer;
    std::optional<std::string> payee;
    std::optional<Decimal> quantity;
    std::optional<std::string> memo;
    std::string initiator;
    std::optional<bool> initiator_is_contract;
};

struct EosioSystemAccounts {
    std::string token_contract = "eosio.token";
    std::string system_account = "eosio";
};

// One money-transfer trace per input (pubkey -> txid surrogate) and per
// output (surrogate -> pubkey); ordinals positional, inputs first.
std::vector<Trace> parse_bitcoin_tx(const RawBitcoinTx& raw);

/// Stateful Ethereum classifier. Contract identity comes from
/// `to_is_contract` when the record carries it, otherwise from a running
/// set seeded with observed creations; records must arrive in timestamp
/// order for the running set to be meaningful.
class EthereumClassifier {
public:
    explicit EthereumClassifier(std::set<std::string> seed_contracts = {})
        : contracts_(std::move(seed_contracts)) {}

    std::optional<Trace> parse(const RawEthereumTrace& raw);

    const std::set<std::string>& known_contracts() const { return contracts_; }

private:
    std::set<std::string> contracts_;
};

std::optional<Trace> parse_eosio_action(const RawEosioAction& raw,
                                        const EosioSystemAccounts& sys = {});

class DAppRegistry {
public:
    void add(Chain chain, const std::string& identifier, DAppLabel label) {
        entries_[{chain, identifier}] = std::move(label);
    }
    std::optional<DAppLabel> lookup(Chain chain, const std::string& identifier) const {
        auto it = entries_.find({chain, identifier});
        if (it == entries_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t size() const { return entries_.size(); }

private:
    std::map<std::pair<Chain, std::string>, DAppLabel> entries_;
};

// CSV with header `name,category,chain,identifier`. Duplicate keys: last
// row wins (warning on stderr). Unknown category -> ParseError.
DAppRegistry load_dapp_registry(const std::string& path);

// Attaches the registry label to each endpoint that has one.
void label_traces(std::span<Trace> traces, const DAppRegistry& registry);

}  // namespace txgraph
