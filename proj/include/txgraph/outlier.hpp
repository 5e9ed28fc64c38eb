#pragma once

#include <optional>
#include <string>
#include <vector>

#include "txgraph/metrics.hpp"

namespace txgraph {

struct ZScorePoint {
    MonthKey month;
    double value = 0.0;
    double mean = 0.0;
    double std = 0.0;
    double z = 0.0;
};

enum class Direction { Peak, Trough };

std::string to_string(Direction d);

/// Metric families the attribution strategy table covers.
enum class MetricKind {
    TraceCount,
    AlphaDegree,
    AlphaIn,
    AlphaOut,
    Pearson,
    Wcc,
    Scc,
};

std::string to_string(MetricKind k);
std::optional<MetricKind> metric_kind_from(const std::string& name);

struct OutlierCategory {
    std::string category;     // "KillerDApp" | "Misbehavior"
    std::string subcategory;  // per-category closed set
};

struct OutlierRecord {
    Chain chain = Chain::Bitcoin;
    GraphKind kind = GraphKind::MTG;
    std::string metric;
    MonthKey month;
    double z = 0.0;
    Direction direction = Direction::Peak;
    std::vector<std::string> responsible_nodes;  // removal order
    int iterations = 0;
    bool resolved = false;
    std::optional<OutlierCategory> category;
};

// Seven-value window centered at `index`; population standard deviation;
// zero deviation maps to z = 0. nullopt when the window is incomplete or
// any window value is absent.
std::optional<ZScorePoint> zscore(const MetricSeries& series, std::size_t index);

struct Detection {
    std::size_t index = 0;
    MonthKey month;
    double z = 0.0;
    Direction direction = Direction::Peak;
};

std::vector<Detection> detect(const MetricSeries& series, double threshold);

// Recomputes one metric value on a (possibly edited) graph; nullopt when
// the metric is undefined on it.
std::optional<double> metric_value(const MonthlyGraph& graph, MetricKind metric);

/// Iterative supernode removal. The flagged month's graph is edited on a
/// private copy; the other six window values stay fixed while its z is
/// recomputed. Throws DataError when (metric, index) is not actually
/// flagged at `threshold` or the graph is empty.
OutlierRecord attribute(const MonthlyGraph& graph, MetricKind metric,
                        const MetricSeries& series, std::size_t index,
                        double threshold, int max_iter = 50);

/// NodeId -> category labels, the stand-in for manual outlier review.
/// CSV columns `chain,identifier,category,subcategory`.
class OutlierLabels {
public:
    static OutlierLabels load(const std::string& path);
    void add(Chain chain, const std::string& identifier, OutlierCategory cat);
    std::optional<OutlierCategory> lookup(Chain chain, const std::string& identifier) const;

private:
    std::map<std::pair<Chain, std::string>, OutlierCategory> entries_;
};

// Category of the first responsible node present in the labels file.
OutlierRecord classify(OutlierRecord record, const OutlierLabels& labels);

}  // namespace txgraph
