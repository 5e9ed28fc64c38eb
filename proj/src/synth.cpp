#include "txgraph/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <set>

namespace txgraph {

namespace {

// 2019-06-01T00:00:00Z; all generators stamp into this month.
constexpr std::int64_t kSynthEpoch = 1559347200;

std::string padded(const char* prefix, std::size_t i, int width = 6) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s%0*zu", prefix, width, i);
    return buf;
}

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    // Rejection keeps the draw unbiased and the stream deterministic.
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t v;
    do {
        v = rng();
    } while (v >= limit);
    return v % bound;
}

Trace make_transfer(Chain chain, std::string src, std::string dst, Decimal weight,
                    std::int64_t ts, std::string tx_id, std::uint64_t ordinal) {
    Trace t;
    t.chain = chain;
    t.kind = TraceKind::MoneyTransfer;
    t.source = {chain, std::move(src), NodeClass::Regular};
    t.target = {chain, std::move(dst), NodeClass::Regular};
    t.weight = std::move(weight);
    t.timestamp = ts;
    t.initiator_role = InitiatorRole::User;
    t.tx_id = std::move(tx_id);
    t.ordinal = ordinal;
    return t;
}

}  // namespace

MonthKey synth_month() { return month_of(kSynthEpoch); }

std::vector<Trace> gen_power_law_graph(std::size_t n, double alpha_target,
                                       std::uint64_t seed) {
    if (n < 100) throw DataError("power-law generator requires n >= 100");
    if (alpha_target >= -1.0)
        throw DataError("power-law exponent must be < -1 (non-normalizable otherwise)");

    // Normalize over 1..n-1, then truncate the support where the expected
    // node count per degree falls below one.
    const std::size_t hard_max = n - 1;
    double z = 0.0;
    for (std::size_t k = 1; k <= hard_max; ++k)
        z += std::pow(static_cast<double>(k), alpha_target);
    std::size_t kmax = 1;
    for (std::size_t k = 1; k <= hard_max; ++k) {
        double expected = static_cast<double>(n) *
                          std::pow(static_cast<double>(k), alpha_target) / z;
        if (expected >= 1.0) kmax = k;
    }

    std::vector<double> cdf(kmax);
    double acc = 0.0;
    for (std::size_t k = 1; k <= kmax; ++k) {
        acc += std::pow(static_cast<double>(k), alpha_target);
        cdf[k - 1] = acc;
    }
    for (double& c : cdf) c /= acc;

    std::mt19937_64 rng(seed);
    std::vector<Trace> traces;
    for (std::size_t i = 0; i < n; ++i) {
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        std::size_t degree =
            1 + (std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());

        // Distinct uniform targets, excluding self, so the realized
        // distinct-edge out-degree equals the sampled degree.
        std::set<std::size_t> targets;
        while (targets.size() < degree) {
            std::size_t t = bounded(rng, n);
            if (t != i) targets.insert(t);
        }
        for (std::size_t t : targets) {
            traces.push_back(make_transfer(
                Chain::Ethereum, padded("acct", i), padded("acct", t), Decimal(1),
                kSynthEpoch + static_cast<std::int64_t>(traces.size() % 86400),
                padded("plaw", traces.size(), 8), 0));
        }
    }
    return traces;
}

std::vector<Trace> gen_eidos_loop(std::size_t users, std::size_t rounds,
                                  std::uint64_t seed) {
    if (users < 1 || rounds < 1) throw DataError("eidos loop requires users, rounds >= 1");
    (void)seed;  // counts are closed forms; nothing random to draw
    const std::string contract = "eidosonecoin";
    const std::string token = "eidostoken11";
    const Decimal min_transfer = Decimal::parse("0.0001");

    std::vector<Trace> traces;
    traces.reserve(users * rounds * 3);
    std::uint64_t seq = 0;
    for (std::size_t r = 0; r < rounds; ++r) {
        for (std::size_t u = 0; u < users; ++u) {
            std::int64_t ts = kSynthEpoch + static_cast<std::int64_t>(seq % 2000000);
            std::string tx = padded("eidos", seq, 8);
            Trace deposit = make_transfer(Chain::Eosio, padded("user", u, 4), contract,
                                          min_transfer, ts, tx, 0);
            Trace refund = make_transfer(Chain::Eosio, contract, padded("user", u, 4),
                                         min_transfer, ts, tx, 1);
            refund.initiator_role = InitiatorRole::Contract;
            Trace mint;
            mint.chain = Chain::Eosio;
            mint.kind = TraceKind::ContractInvocation;
            mint.source = {Chain::Eosio, contract, NodeClass::Contract};
            mint.target = {Chain::Eosio, token, NodeClass::Contract};
            mint.weight = Decimal(1);
            mint.timestamp = ts;
            mint.initiator_role = InitiatorRole::Contract;
            mint.tx_id = tx;
            mint.ordinal = 2;
            traces.push_back(std::move(deposit));
            traces.push_back(std::move(refund));
            traces.push_back(std::move(mint));
            ++seq;
        }
    }
    return traces;
}

std::vector<Trace> gen_spam_campaign(std::size_t spammers, std::size_t recipients_per,
                                     const Decimal& amount, const std::string& memo,
                                     std::uint64_t seed) {
    if (recipients_per < 1) throw DataError("spam campaign requires recipients_per >= 1");
    (void)seed;
    std::vector<Trace> traces;
    traces.reserve(spammers * recipients_per);
    std::uint64_t seq = 0;
    for (std::size_t s = 0; s < spammers; ++s) {
        for (std::size_t r = 0; r < recipients_per; ++r) {
            std::string victim = padded(("victim" + std::to_string(s) + "x").c_str(), r);
            Trace t = make_transfer(Chain::Eosio, padded("spammer", s, 3), victim, amount,
                                    kSynthEpoch + static_cast<std::int64_t>(seq % 86400),
                                    padded("spam", seq, 8), 0);
            t.memo = memo;
            traces.push_back(std::move(t));
            ++seq;
        }
    }
    return traces;
}

MetricSeries gen_metric_spike(double baseline, std::size_t length,
                              std::size_t spike_index, double magnitude,
                              std::uint64_t seed) {
    if (spike_index < 3 || spike_index + 4 > length)
        throw DataError("spike index must sit in a full 7-value window");
    (void)seed;
    MetricSeries s;
    s.chain = Chain::Eosio;
    s.kind = GraphKind::MTG;
    s.metric = "trace_count";
    MonthKey first = synth_month();
    for (std::size_t i = 0; i < length; ++i) {
        double v = baseline + (i == spike_index ? magnitude : 0.0);
        s.values.emplace_back(MonthKey::from_index(first.index() + static_cast<int>(i)), v);
    }
    return s;
}

}  // namespace txgraph
