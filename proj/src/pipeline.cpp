#include "txgraph/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "txgraph/ingest.hpp"
#include "txgraph/jsonio.hpp"

namespace txgraph {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_out(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    fs::path p = fs::path(dir) / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw DataError("cannot open output file: " + p.string());
    return os;
}

bool trace_order(const Trace& a, const Trace& b) {
    return std::tie(a.timestamp, a.tx_id, a.ordinal) <
           std::tie(b.timestamp, b.tx_id, b.ordinal);
}

}  // namespace

IngestSummary run_ingest(const PipelineConfig& config) {
    IngestSummary summary;
    std::vector<Trace> traces;

    auto collect = [&](std::vector<Trace> batch) {
        for (Trace& t : batch) {
            ++summary.traces_per_kind[t.kind];
            traces.push_back(std::move(t));
        }
    };

    if (config.chain == Chain::Bitcoin) {
        JsonlSummary js = for_each_jsonl(config.input_path, config.lenient, [&](const json& j) {
            collect(parse_bitcoin_tx(bitcoin_tx_from_json(j)));
        });
        summary.records_read = js.lines_read;
        summary.records_skipped = js.lines_skipped;
    } else if (config.chain == Chain::Ethereum) {
        // The classifier's running contract set only makes sense in
        // timestamp order, so read everything first.
        std::vector<RawEthereumTrace> raws;
        JsonlSummary js = for_each_jsonl(config.input_path, config.lenient, [&](const json& j) {
            raws.push_back(ethereum_trace_from_json(j));
        });
        summary.records_read = js.lines_read;
        summary.records_skipped = js.lines_skipped;
        std::stable_sort(raws.begin(), raws.end(),
                         [](const RawEthereumTrace& a, const RawEthereumTrace& b) {
                             return std::tie(a.timestamp, a.tx_id, a.ordinal) <
                                    std::tie(b.timestamp, b.tx_id, b.ordinal);
                         });
        EthereumClassifier classifier;
        for (const RawEthereumTrace& raw : raws) {
            try {
                if (auto t = classifier.parse(raw)) collect({std::move(*t)});
            } catch (const std::exception& e) {
                if (!config.lenient) throw;
                std::cerr << "warning: skipped trace " << raw.tx_id << "/" << raw.ordinal
                          << " (" << e.what() << ")\n";
                ++summary.records_skipped;
            }
        }
    } else {
        JsonlSummary js = for_each_jsonl(config.input_path, config.lenient, [&](const json& j) {
            if (auto t = parse_eosio_action(eosio_action_from_json(j)))
                collect({std::move(*t)});
        });
        summary.records_read = js.lines_read;
        summary.records_skipped = js.lines_skipped;
    }

    std::stable_sort(traces.begin(), traces.end(), trace_order);
    summary.traces_total = traces.size();

    {
        auto os = open_out(config.out_dir, "traces.jsonl");
        write_traces_jsonl(traces, os);
    }
    {
        ordered_json j;
        j["chain"] = to_string(config.chain);
        j["records_read"] = summary.records_read;
        j["records_skipped"] = summary.records_skipped;
        j["traces_total"] = summary.traces_total;
        ordered_json per_kind = ordered_json::object();
        for (const auto& [kind, count] : summary.traces_per_kind)
            per_kind[to_string(kind)] = count;
        j["traces_per_kind"] = per_kind;
        auto os = open_out(config.out_dir, "ingest_summary.json");
        os << j.dump(2) << '\n';
    }
    return summary;
}

namespace {

std::vector<GraphKind> kinds_for(Chain chain) {
    if (chain == Chain::Bitcoin) return {GraphKind::MTG};
    return {GraphKind::MTG, GraphKind::ACG, GraphKind::CIG};
}

std::vector<MetricKind> detectable_metrics(Chain chain, GraphKind kind) {
    std::vector<MetricKind> out{MetricKind::TraceCount, MetricKind::AlphaDegree,
                                MetricKind::AlphaOut, MetricKind::Pearson, MetricKind::Wcc};
    // Created accounts all share indegree 1, so an indegree fit says nothing.
    if (kind != GraphKind::ACG) out.insert(out.begin() + 2, MetricKind::AlphaIn);
    // The txid surrogate keeps a Bitcoin transfer graph acyclic by design.
    if (!(chain == Chain::Bitcoin && kind == GraphKind::MTG)) out.push_back(MetricKind::Scc);
    return out;
}

void write_metrics_csv(const std::vector<MetricRow>& rows, std::ostream& os) {
    os << "chain,graph_kind,metric,month,value\n";
    for (const MetricRow& r : rows) {
        os << to_string(r.chain) << ',' << to_string(r.kind) << ',' << r.metric << ','
           << r.month.str() << ',' << (r.value ? format_double(*r.value) : "") << '\n';
    }
}

ordered_json outlier_to_json(const OutlierRecord& r) {
    ordered_json j;
    j["chain"] = to_string(r.chain);
    j["graph_kind"] = to_string(r.kind);
    j["metric"] = r.metric;
    j["month"] = r.month.str();
    j["z"] = format_double(r.z);
    j["direction"] = to_string(r.direction);
    j["responsible_nodes"] = r.responsible_nodes;
    j["iterations"] = r.iterations;
    j["resolved"] = r.resolved;
    if (r.category) {
        j["category"] = {{"category", r.category->category},
                         {"subcategory", r.category->subcategory}};
    } else {
        j["category"] = nullptr;
    }
    return j;
}

ordered_json verdict_to_json(const SpamVerdict& v) {
    ordered_json j;
    j["account"] = v.account.identifier;
    j["chain"] = to_string(v.account.chain);
    j["month"] = v.month.str();
    j["recipients"] = v.recipients;
    j["non_repliers"] = v.non_repliers;
    j["avg_amount"] = v.avg_amount.to_string();
    j["max_tm_per_recipient"] = v.max_tm_per_recipient;
    ordered_json memos = ordered_json::array();
    for (const auto& [memo, count] : v.memo_groups)
        memos.push_back({{"memo", memo}, {"recipients", count}});
    j["memo_groups"] = memos;
    j["rules_passed"] = v.rules_passed;
    return j;
}

}  // namespace

AnalyzeResult run_analyze(const PipelineConfig& config) {
    AnalyzeResult result;

    std::vector<Trace> traces = read_traces_jsonl(config.input_path, config.lenient);
    for (const Trace& t : traces)
        if (t.chain != config.chain)
            throw DataError("trace chain does not match --chain " + to_string(config.chain));
    if (config.registry_path) {
        DAppRegistry registry = load_dapp_registry(*config.registry_path);
        label_traces(traces, registry);
    }
    const bool has_registry = config.registry_path.has_value();

    std::map<MonthKey, std::vector<Trace>> by_month;
    for (Trace& t : traces) by_month[month_of(t.timestamp)].push_back(std::move(t));
    traces.clear();
    if (by_month.empty() && (!config.from || !config.to))
        throw DataError("no traces and no explicit month range");

    MonthKey first = config.from ? *config.from : by_month.begin()->first;
    MonthKey last = config.to ? *config.to : by_month.rbegin()->first;
    const std::vector<GraphKind> kinds = kinds_for(config.chain);

    std::map<std::pair<GraphKind, MonthKey>, MonthlyGraph> graphs;
    std::map<std::pair<GraphKind, std::string>, std::map<MonthKey, std::optional<double>>>
        series_values;
    std::vector<MetricRow> rows;
    auto add_row = [&](GraphKind kind, const std::string& metric, MonthKey month,
                       std::optional<double> value) {
        rows.push_back({config.chain, kind, metric, month, value});
        series_values[{kind, metric}][month] = value;
    };

    std::vector<SpamVerdict> verdicts;
    for (MonthKey month : month_range(first, last)) {
        auto it = by_month.find(month);
        if (it == by_month.end()) {
            std::cerr << "warning: no traces observed in " << month.str() << "\n";
            for (GraphKind kind : kinds)
                for (MetricKind m : detectable_metrics(config.chain, kind))
                    add_row(kind, to_string(m), month, std::nullopt);
            continue;
        }
        const std::vector<Trace>& month_traces = it->second;
        TraceStats stats = trace_stats(month_traces);

        for (GraphKind kind : kinds) {
            TraceKind tk = trace_kind_for(kind);
            std::vector<Trace> of_kind;
            for (const Trace& t : month_traces)
                if (t.kind == tk) of_kind.push_back(t);
            MonthlyGraph g = build_graph(of_kind, kind, month);
            g.chain = config.chain;

            for (MetricKind m : detectable_metrics(config.chain, kind))
                add_row(kind, to_string(m), month, metric_value(g, m));

            auto ratio = stats.ratios.find(tk);
            add_row(kind, "kind_ratio", month,
                    ratio != stats.ratios.end() ? std::optional(ratio->second)
                                                : std::nullopt);
            auto roles = stats.role_split.find(tk);
            for (InitiatorRole role :
                 {InitiatorRole::User, InitiatorRole::Contract, InitiatorRole::Unknown}) {
                std::optional<double> share;
                if (roles != stats.role_split.end()) {
                    auto rit = roles->second.find(role);
                    share = rit != roles->second.end() ? rit->second : 0.0;
                }
                add_row(kind, "role_" + to_string(role), month, share);
            }

            if (has_registry && kind != GraphKind::ACG) {
                if (auto shares = dapp_share_report(g)) {
                    for (const auto& [cat, share] : shares->category_shares)
                        add_row(kind, "dapp_share_" + to_string(cat), month, share);
                    add_row(kind, "non_dapp_share", month, shares->non_dapp_share);
                }
            }
            graphs.emplace(std::pair{kind, month}, std::move(g));
        }

        const MonthlyGraph& mtg = graphs.at({GraphKind::MTG, month});
        MonthlyGraph empty_cig;
        empty_cig.chain = config.chain;
        empty_cig.kind = GraphKind::CIG;
        empty_cig.month = month;
        const MonthlyGraph& cig = config.chain == Chain::Bitcoin
                                      ? empty_cig
                                      : graphs.at({GraphKind::CIG, month});
        for (SpamVerdict& v : scan_spammers(mtg, cig, month_traces, config.spam))
            verdicts.push_back(std::move(v));
    }

    std::optional<OutlierLabels> labels;
    if (config.labels_path) labels = OutlierLabels::load(*config.labels_path);
    for (GraphKind kind : kinds) {
        for (MetricKind metric : detectable_metrics(config.chain, kind)) {
            MetricSeries series = assemble_series(config.chain, kind, to_string(metric),
                                                  series_values.at({kind, to_string(metric)}),
                                                  first, last);
            for (const Detection& d : detect(series, config.z_threshold)) {
                auto git = graphs.find({kind, d.month});
                if (git == graphs.end()) continue;
                OutlierRecord rec = attribute(git->second, metric, series, d.index,
                                              config.z_threshold, config.max_iter);
                if (labels) rec = classify(std::move(rec), *labels);
                result.outliers.push_back(std::move(rec));
            }
        }
    }

    result.metrics = std::move(rows);
    result.spam_verdicts = std::move(verdicts);

    {
        auto os = open_out(config.out_dir, "metrics.csv");
        write_metrics_csv(result.metrics, os);
    }
    {
        ordered_json arr = ordered_json::array();
        for (const OutlierRecord& r : result.outliers) arr.push_back(outlier_to_json(r));
        auto os = open_out(config.out_dir, "outliers.json");
        os << arr.dump(2) << '\n';
    }
    {
        ordered_json j;
        ordered_json arr = ordered_json::array();
        for (const SpamVerdict& v : result.spam_verdicts) arr.push_back(verdict_to_json(v));
        j["verdicts"] = arr;
        ordered_json timeline = ordered_json::object();
        for (const auto& [month, count] : spam_timeline(result.spam_verdicts))
            timeline[month.str()] = count;
        j["timeline"] = timeline;
        auto os = open_out(config.out_dir, "spam.json");
        os << j.dump(2) << '\n';
    }
    {
        auto os = open_out(config.out_dir, "family_tree.csv");
        os << "parent,child,flagged\n";
        if (config.chain != Chain::Bitcoin) {
            MonthlyGraph acg_union;
            acg_union.chain = config.chain;
            acg_union.kind = GraphKind::ACG;
            acg_union.month = first;
            for (const auto& [key, g] : graphs) {
                if (key.first != GraphKind::ACG) continue;
                for (const auto& [id, info] : g.nodes) acg_union.nodes.emplace(id, info);
                for (const auto& [edge, agg] : g.edges) {
                    auto& slot = acg_union.edges[edge];
                    slot.weight_sum = slot.weight_sum + agg.weight_sum;
                    slot.trace_count += agg.trace_count;
                }
            }
            std::set<std::string> flagged;
            for (const SpamVerdict& v : result.spam_verdicts)
                flagged.insert(v.account.identifier);
            FamilyTree tree = build_family_tree(acg_union, flagged);
            for (const auto& [id, node] : tree.nodes) {
                os << (node.parent ? *node.parent : "") << ',' << id << ','
                   << (node.flagged ? "1" : "0") << '\n';
            }
        }
    }
    return result;
}

}  // namespace txgraph
