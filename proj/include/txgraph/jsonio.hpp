#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "txgraph/core.hpp"
#include "txgraph/ingest.hpp"

namespace txgraph {

nlohmann::ordered_json to_json(const Trace& t);
Trace trace_from_json(const nlohmann::json& j);

RawBitcoinTx bitcoin_tx_from_json(const nlohmann::json& j);
RawEthereumTrace ethereum_trace_from_json(const nlohmann::json& j);
RawEosioAction eosio_action_from_json(const nlohmann::json& j);

nlohmann::ordered_json to_json(const RawBitcoinTx& raw);
nlohmann::ordered_json to_json(const RawEthereumTrace& raw);
nlohmann::ordered_json to_json(const RawEosioAction& raw);

struct JsonlSummary {
    std::size_t lines_read = 0;
    std::size_t lines_skipped = 0;
};

/// Streams a JSONL file line by line. Malformed lines throw ParseError
/// with the line number in strict mode; in lenient mode they are reported
/// to stderr and skipped.
JsonlSummary for_each_jsonl(const std::string& path, bool lenient,
                            const std::function<void(const nlohmann::json&)>& fn);

std::vector<Trace> read_traces_jsonl(const std::string& path, bool lenient = false);
void write_traces_jsonl(const std::vector<Trace>& traces, std::ostream& os);

}  // namespace txgraph
