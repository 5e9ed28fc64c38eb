#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <tuple>

#include "txgraph/pipeline.hpp"

namespace txgraph {

namespace fs = std::filesystem;

std::vector<MetricRow> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open metrics file: " + path);
    std::vector<MetricRow> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || lineno == 1) continue;
        std::istringstream ls(line);
        std::string chain, kind, metric, month, value;
        if (!std::getline(ls, chain, ',') || !std::getline(ls, kind, ',') ||
            !std::getline(ls, metric, ',') || !std::getline(ls, month, ','))
            throw ParseError(path + ":" + std::to_string(lineno) + ": short row");
        std::getline(ls, value, ',');
        MetricRow r;
        r.chain = parse_chain(chain);
        r.kind = parse_graph_kind(kind);
        r.metric = metric;
        r.month = MonthKey::parse(month);
        if (!value.empty()) r.value = std::stod(value);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {

std::ofstream open_report(const std::string& dir, const std::string& name) {
    fs::create_directories(dir);
    fs::path p = fs::path(dir) / name;
    std::ofstream os(p, std::ios::binary);
    if (!os) throw DataError("cannot open output file: " + p.string());
    return os;
}

std::string series_name(const MetricRow& r) {
    return to_string(r.chain) + ":" + to_string(r.kind) + ":" + r.metric;
}

void write_family(const std::vector<MetricRow>& rows, std::ostream& os,
                  const std::function<bool(const std::string&)>& select) {
    os << "series,month,value\n";
    for (const MetricRow& r : rows) {
        if (!select(r.metric)) continue;
        os << series_name(r) << ',' << r.month.str() << ','
           << (r.value ? format_double(*r.value) : "") << '\n';
    }
}

bool starts_with(const std::string& s, const std::string& prefix) {
    return s.rfind(prefix, 0) == 0;
}

}  // namespace

void run_report(const PipelineConfig& config) {
    fs::path metrics_path = fs::path(config.out_dir) / "metrics.csv";
    std::vector<MetricRow> rows = read_metrics_csv(metrics_path.string());

    struct Family {
        const char* file;
        std::function<bool(const std::string&)> select;
    };
    const std::vector<Family> families{
        {"report_traces.csv", [](const std::string& m) { return m == "trace_count"; }},
        {"report_ratios.csv", [](const std::string& m) { return m == "kind_ratio"; }},
        {"report_roles.csv", [](const std::string& m) { return starts_with(m, "role_"); }},
        {"report_alpha.csv", [](const std::string& m) { return starts_with(m, "alpha_"); }},
        {"report_pearson.csv", [](const std::string& m) { return m == "pearson_r"; }},
        {"report_components.csv",
         [](const std::string& m) { return m == "wcc" || m == "scc"; }},
    };
    for (const Family& f : families) {
        auto os = open_report(config.out_dir, f.file);
        write_family(rows, os, f.select);
    }

    auto os = open_report(config.out_dir, "report_dapp_shares.csv");
    write_family(rows, os, [](const std::string& m) {
        return starts_with(m, "dapp_share_") || m == "non_dapp_share";
    });
    // Accounting footer: category shares overlap on mixed edges, so the
    // per-month sum including the non-DApp share must come out >= 1.
    std::map<std::tuple<Chain, GraphKind, MonthKey>, double> sums;
    for (const MetricRow& r : rows) {
        if (!r.value) continue;
        if (starts_with(r.metric, "dapp_share_") || r.metric == "non_dapp_share")
            sums[{r.chain, r.kind, r.month}] += *r.value;
    }
    for (const auto& [key, sum] : sums) {
        const auto& [chain, kind, month] = key;
        os << "check:" << to_string(chain) << ':' << to_string(kind) << ":share_sum,"
           << month.str() << ',' << format_double(sum) << '\n';
    }
}

}  // namespace txgraph
