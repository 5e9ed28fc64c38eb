#pragma once

#include <atomic>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "txgraph/graph.hpp"

namespace testutil {

using namespace txgraph;

// 2019-06-01T00:00:00Z
constexpr std::int64_t kTs = 1559347200;
inline MonthKey test_month() { return {2019, 6}; }

inline Trace tm(std::string src, std::string dst, const std::string& amount,
                Chain chain = Chain::Eosio, std::int64_t ts = kTs) {
    Trace t;
    t.chain = chain;
    t.kind = TraceKind::MoneyTransfer;
    t.source = {chain, std::move(src), NodeClass::Regular};
    t.target = {chain, std::move(dst), NodeClass::Regular};
    t.weight = Decimal::parse(amount);
    t.timestamp = ts;
    t.initiator_role = InitiatorRole::User;
    t.tx_id = "tx";
    return t;
}

inline Trace tc(std::string src, std::string dst, Chain chain = Chain::Eosio,
                std::int64_t ts = kTs) {
    Trace t = tm(std::move(src), std::move(dst), "1", chain, ts);
    t.kind = TraceKind::ContractInvocation;
    t.target.node_class = NodeClass::Contract;
    t.initiator_role = InitiatorRole::Contract;
    return t;
}

inline Trace ta(std::string creator, std::string created, Chain chain = Chain::Eosio,
                std::int64_t ts = kTs) {
    Trace t = tm(std::move(creator), std::move(created), "1", chain, ts);
    t.kind = TraceKind::AccountCreation;
    return t;
}

// Directed graph straight from an edge list, no trace plumbing.
inline MonthlyGraph graph_of(const std::vector<std::pair<std::string, std::string>>& edges,
                             Chain chain = Chain::Eosio, GraphKind kind = GraphKind::MTG) {
    MonthlyGraph g;
    g.chain = chain;
    g.kind = kind;
    g.month = test_month();
    for (const auto& [a, b] : edges) {
        g.nodes[a];
        g.nodes[b];
        auto& e = g.edges[{a, b}];
        e.weight_sum += Decimal(1);
        ++e.trace_count;
    }
    return g;
}

inline MonthlyGraph random_digraph(std::mt19937_64& rng, std::size_t max_nodes,
                                   double edge_prob) {
    std::size_t n = 2 + rng() % max_nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    const double scale = 0x1.0p-64;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (static_cast<double>(rng()) * scale < edge_prob)
                edges.emplace_back("n" + std::to_string(i), "n" + std::to_string(j));
        }
    }
    MonthlyGraph g = graph_of(edges);
    for (std::size_t i = 0; i < n; ++i) g.nodes["n" + std::to_string(i)];
    return g;
}

class TempDir {
public:
    TempDir() {
        static std::atomic<unsigned> counter{0};
        path_ = std::filesystem::temp_directory_path() /
                ("txgraph_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter++));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    std::filesystem::path path() const { return path_; }
    std::string file(const std::string& name, const std::string& content) const {
        auto p = path_ / name;
        std::ofstream os(p, std::ios::binary);
        os << content;
        return p.string();
    }

private:
    std::filesystem::path path_;
};

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testutil
