#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "txgraph/metrics.hpp"

namespace txgraph {

// Synthetic corpora with planted ground truth. Every generator is a pure
// function of its arguments (seed included).

/// Ethereum-style money-transfer corpus whose out-degree sequence is
/// drawn from a discrete power law with exponent `alpha_target` via
/// inverse-CDF sampling; targets uniform. The support is truncated where
/// the expected occupancy drops below one node, so the realized log-log
/// histogram stays on the planted line instead of flattening into a
/// singleton tail. Requires n >= 100 and alpha_target < -1.
std::vector<Trace> gen_power_law_graph(std::size_t n, double alpha_target,
                                       std::uint64_t seed);

/// Deposit/refund/token-mint loop: per user per round, two money
/// transfers (user->contract, contract->user) and one contract
/// invocation (contract->token contract). Trace counts are exact closed
/// forms: 2*users*rounds T_m and users*rounds T_c.
std::vector<Trace> gen_eidos_loop(std::size_t users, std::size_t rounds,
                                  std::uint64_t seed);

/// Each spammer sends one money transfer of `amount` carrying `memo` to
/// `recipients_per` distinct fresh accounts; no replies are generated.
std::vector<Trace> gen_spam_campaign(std::size_t spammers, std::size_t recipients_per,
                                     const Decimal& amount, const std::string& memo,
                                     std::uint64_t seed);

/// Constant-baseline series with a single spiked value. Requires
/// 3 <= spike_index <= length-4 so the spike sits in a full window.
MetricSeries gen_metric_spike(double baseline, std::size_t length,
                              std::size_t spike_index, double magnitude,
                              std::uint64_t seed);

// Month each generator stamps its traces into.
MonthKey synth_month();

}  // namespace txgraph
