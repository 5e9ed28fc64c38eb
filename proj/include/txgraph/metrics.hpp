#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "txgraph/graph.hpp"

namespace txgraph {

struct NotApplicableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientPointsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TraceStats {
    std::map<TraceKind, std::uint64_t> counts;
    std::map<TraceKind, double> ratios;  // over present kinds, sum to 1
    std::map<TraceKind, std::map<InitiatorRole, double>> role_split;
    std::uint64_t total = 0;
};

TraceStats trace_stats(std::span<const Trace> traces);

enum class DegreeMode { In, Out, Total };

std::string to_string(DegreeMode m);

/// Degree distribution over distinct aggregated edges. Zero-degree nodes
/// count toward node_count but emit no point.
struct DegreeHistogram {
    DegreeMode mode = DegreeMode::Total;
    std::vector<std::pair<std::uint64_t, double>> points;  // (degree, proportion), ascending
    std::size_t node_count = 0;
};

DegreeHistogram degree_histogram(const MonthlyGraph& graph, DegreeMode mode);

struct AlphaFit {
    double alpha = 0.0;      // signed log-log slope
    double intercept = 0.0;  // log10 of the scale factor
    std::size_t point_count = 0;
};

// Least-squares line through (log10 degree, log10 proportion).
// Throws InsufficientPointsError below 2 distinct degrees.
AlphaFit fit_alpha(const DegreeHistogram& hist);

struct PearsonResult {
    double r = 0.0;
    std::size_t n = 0;
};

// Population Pearson correlation over per-node (indegree, outdegree)
// pairs, all nodes included. nullopt below 2 nodes or at zero variance.
std::optional<PearsonResult> pearson_r(const MonthlyGraph& graph);

std::size_t count_wcc(const MonthlyGraph& graph);

// Throws NotApplicableError for a Bitcoin MTG: the txid surrogate makes
// bi-directional edges impossible there.
std::size_t count_scc(const MonthlyGraph& graph);

struct MetricSeries {
    Chain chain = Chain::Bitcoin;
    GraphKind kind = GraphKind::MTG;
    std::string metric;
    std::vector<std::pair<MonthKey, std::optional<double>>> values;  // gap-free, ascending
};

// Gap-free series over [first, last]; missing months carry nullopt.
// Throws DataError on a duplicate month or a month outside the range.
MetricSeries assemble_series(Chain chain, GraphKind kind, std::string metric,
                             const std::map<MonthKey, std::optional<double>>& by_month,
                             MonthKey first, MonthKey last);

}  // namespace txgraph
