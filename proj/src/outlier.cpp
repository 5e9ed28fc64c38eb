#include "txgraph/outlier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace txgraph {

std::string to_string(Direction d) {
    return d == Direction::Peak ? "peak" : "trough";
}

std::string to_string(MetricKind k) {
    switch (k) {
        case MetricKind::TraceCount: return "trace_count";
        case MetricKind::AlphaDegree: return "alpha_degree";
        case MetricKind::AlphaIn: return "alpha_in";
        case MetricKind::AlphaOut: return "alpha_out";
        case MetricKind::Pearson: return "pearson_r";
        case MetricKind::Wcc: return "wcc";
        case MetricKind::Scc: return "scc";
    }
    return "?";
}

std::optional<MetricKind> metric_kind_from(const std::string& name) {
    for (MetricKind k : {MetricKind::TraceCount, MetricKind::AlphaDegree,
                         MetricKind::AlphaIn, MetricKind::AlphaOut, MetricKind::Pearson,
                         MetricKind::Wcc, MetricKind::Scc})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

namespace {

constexpr int kHalfWindow = 3;

struct WindowStats {
    double mean = 0.0;
    double std = 0.0;
};

WindowStats window_stats(const std::vector<double>& values) {
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(values.size());
    return {mean, std::sqrt(var)};
}

// The seven window values around `index`, or nullopt when any is absent
// or the window runs off either end.
std::optional<std::vector<double>> window_values(const MetricSeries& series,
                                                 std::size_t index) {
    if (index < kHalfWindow || index + kHalfWindow >= series.values.size())
        return std::nullopt;
    std::vector<double> w;
    w.reserve(2 * kHalfWindow + 1);
    for (std::size_t i = index - kHalfWindow; i <= index + kHalfWindow; ++i) {
        if (!series.values[i].second) return std::nullopt;
        w.push_back(*series.values[i].second);
    }
    return w;
}

double z_of(const std::vector<double>& window, double center) {
    auto [mean, sd] = window_stats(window);
    return sd > 0.0 ? (center - mean) / sd : 0.0;
}

}  // namespace

std::optional<ZScorePoint> zscore(const MetricSeries& series, std::size_t index) {
    auto w = window_values(series, index);
    if (!w) return std::nullopt;
    auto [mean, sd] = window_stats(*w);
    double value = *series.values[index].second;
    ZScorePoint p;
    p.month = series.values[index].first;
    p.value = value;
    p.mean = mean;
    p.std = sd;
    p.z = sd > 0.0 ? (value - mean) / sd : 0.0;
    return p;
}

std::vector<Detection> detect(const MetricSeries& series, double threshold) {
    if (threshold <= 0.0) throw DataError("detection threshold must be positive");
    std::vector<Detection> out;
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        auto p = zscore(series, i);
        if (!p || std::abs(p->z) < threshold) continue;
        out.push_back({i, p->month, p->z, p->z > 0 ? Direction::Peak : Direction::Trough});
    }
    return out;
}

std::optional<double> metric_value(const MonthlyGraph& graph, MetricKind metric) {
    try {
        switch (metric) {
            case MetricKind::TraceCount:
                return static_cast<double>(graph.trace_count());
            case MetricKind::AlphaDegree:
                return fit_alpha(degree_histogram(graph, DegreeMode::Total)).alpha;
            case MetricKind::AlphaIn:
                return fit_alpha(degree_histogram(graph, DegreeMode::In)).alpha;
            case MetricKind::AlphaOut:
                return fit_alpha(degree_histogram(graph, DegreeMode::Out)).alpha;
            case MetricKind::Pearson: {
                auto r = pearson_r(graph);
                if (!r) return std::nullopt;
                return r->r;
            }
            case MetricKind::Wcc:
                return static_cast<double>(count_wcc(graph));
            case MetricKind::Scc:
                return static_cast<double>(count_scc(graph));
        }
    } catch (const InsufficientPointsError&) {
        return std::nullopt;
    } catch (const NotApplicableError&) {
        return std::nullopt;
    }
    return std::nullopt;
}

namespace {

// Smallest id among those with the maximal score; nullopt when the graph
// has no nodes or every score is zero-eligible but the graph is empty.
std::optional<std::string> argmax_node(const std::map<std::string, std::uint64_t>& scores) {
    std::optional<std::string> best;
    std::uint64_t best_score = 0;
    for (const auto& [id, score] : scores) {
        if (!best || score > best_score) {
            best = id;
            best_score = score;
        }
    }
    return best;
}

std::map<std::string, std::uint64_t> weighted_degrees(const MonthlyGraph& g) {
    std::map<std::string, std::uint64_t> s;
    for (const auto& [id, info] : g.nodes) s[id] = 0;
    for (const auto& [key, e] : g.edges) {
        s[key.first] += e.trace_count;
        s[key.second] += e.trace_count;
    }
    return s;
}

std::map<std::string, std::uint64_t> degree_one_neighbor_counts(const MonthlyGraph& g) {
    auto in = g.indegrees();
    auto out = g.outdegrees();
    std::map<std::string, std::set<std::string>> neighbors;
    for (const auto& [id, info] : g.nodes) neighbors[id];
    for (const auto& [key, e] : g.edges) {
        neighbors[key.first].insert(key.second);
        neighbors[key.second].insert(key.first);
    }
    std::map<std::string, std::uint64_t> s;
    for (const auto& [id, nbrs] : neighbors) {
        std::uint64_t c = 0;
        for (const auto& nb : nbrs)
            if (in[nb] + out[nb] == 1) ++c;
        s[id] = c;
    }
    return s;
}

// Adjacent node pairs connected in exactly one direction (one_way) or in
// both directions (two_way).
std::map<std::string, std::uint64_t> directional_pair_counts(const MonthlyGraph& g,
                                                             bool two_way) {
    std::set<std::pair<std::string, std::string>> has;
    for (const auto& [key, e] : g.edges) has.insert(key);
    std::map<std::string, std::uint64_t> s;
    for (const auto& [id, info] : g.nodes) s[id] = 0;
    for (const auto& key : has) {
        if (key.first == key.second) continue;
        bool reciprocal = has.count({key.second, key.first}) > 0;
        if (two_way) {
            if (reciprocal && key.first < key.second) {
                ++s[key.first];
                ++s[key.second];
            }
        } else if (!reciprocal) {
            ++s[key.first];
            ++s[key.second];
        }
    }
    return s;
}

std::optional<std::string> select_candidate(const MonthlyGraph& g, MetricKind metric,
                                            Direction direction) {
    if (g.nodes.empty()) return std::nullopt;
    switch (metric) {
        case MetricKind::TraceCount:
            return argmax_node(weighted_degrees(g));
        case MetricKind::AlphaDegree:
        case MetricKind::AlphaIn:
        case MetricKind::AlphaOut: {
            if (direction == Direction::Trough)
                return argmax_node(degree_one_neighbor_counts(g));
            auto in = g.indegrees();
            auto out = g.outdegrees();
            std::map<std::string, std::uint64_t> s;
            for (const auto& [id, info] : g.nodes) {
                switch (metric) {
                    case MetricKind::AlphaIn: s[id] = in[id]; break;
                    case MetricKind::AlphaOut: s[id] = out[id]; break;
                    default: s[id] = in[id] + out[id]; break;
                }
            }
            return argmax_node(s);
        }
        case MetricKind::Pearson: {
            auto in = g.indegrees();
            auto out = g.outdegrees();
            std::map<std::string, std::uint64_t> s;
            for (const auto& [id, info] : g.nodes) s[id] = in[id] * out[id];
            return argmax_node(s);
        }
        case MetricKind::Wcc:
            return argmax_node(directional_pair_counts(g, /*two_way=*/false));
        case MetricKind::Scc:
            return argmax_node(directional_pair_counts(g, /*two_way=*/true));
    }
    return std::nullopt;
}

}  // namespace

OutlierRecord attribute(const MonthlyGraph& graph, MetricKind metric,
                        const MetricSeries& series, std::size_t index,
                        double threshold, int max_iter) {
    if (graph.nodes.empty()) throw DataError("attribution on an empty graph");
    auto flagged = zscore(series, index);
    if (!flagged || std::abs(flagged->z) < threshold)
        throw DataError("attribution requires a flagged (metric, month)");

    OutlierRecord rec;
    rec.chain = graph.chain;
    rec.kind = graph.kind;
    rec.metric = to_string(metric);
    rec.month = flagged->month;
    rec.z = flagged->z;
    rec.direction = flagged->z > 0 ? Direction::Peak : Direction::Trough;

    auto window = *window_values(series, index);
    MonthlyGraph work = graph;
    for (int iter = 0; iter < max_iter; ++iter) {
        auto candidate = select_candidate(work, metric, rec.direction);
        if (!candidate) break;  // nothing left to remove
        work.remove_node(*candidate);
        rec.responsible_nodes.push_back(*candidate);
        rec.iterations = iter + 1;

        auto value = metric_value(work, metric);
        if (!value) {
            // Metric no longer defined on the edited graph: the signal is gone.
            rec.resolved = true;
            return rec;
        }
        window[kHalfWindow] = *value;
        if (std::abs(z_of(window, *value)) < threshold) {
            rec.resolved = true;
            return rec;
        }
    }
    rec.resolved = false;
    return rec;
}

namespace {

const std::set<std::string> kKillerSubcats = {"DeFi", "Exchange", "Gambling", "Game",
                                              "Platform", "Token", "Tool"};
const std::set<std::string> kMisbehaviorSubcats = {"Attack", "ResourceManipulation", "Spam"};

std::vector<std::string> split_csv(const std::string& line) {
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

OutlierLabels OutlierLabels::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open labels file: " + path);
    OutlierLabels labels;
    std::string line;
    std::size_t lineno = 0;
    bool first = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        auto fields = split_csv(line);
        if (first) {
            first = false;
            if (fields.size() >= 1 && fields[0] == "chain") continue;
        }
        if (fields.size() != 4)
            throw ParseError("labels line " + std::to_string(lineno) + ": expected 4 columns");
        labels.add(parse_chain(fields[0]), fields[1], {fields[2], fields[3]});
    }
    return labels;
}

void OutlierLabels::add(Chain chain, const std::string& identifier, OutlierCategory cat) {
    const auto& allowed = cat.category == "KillerDApp"     ? kKillerSubcats
                          : cat.category == "Misbehavior" ? kMisbehaviorSubcats
                                                          : throw ParseError(
                                                                "unknown outlier category: " +
                                                                cat.category);
    if (!allowed.count(cat.subcategory))
        throw ParseError("unknown outlier subcategory: " + cat.subcategory);
    entries_[{chain, identifier}] = std::move(cat);
}

std::optional<OutlierCategory> OutlierLabels::lookup(Chain chain,
                                                     const std::string& identifier) const {
    auto it = entries_.find({chain, identifier});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

OutlierRecord classify(OutlierRecord record, const OutlierLabels& labels) {
    for (const auto& id : record.responsible_nodes) {
        if (auto cat = labels.lookup(record.chain, id)) {
            record.category = cat;
            break;
        }
    }
    return record;
}

}  // namespace txgraph
