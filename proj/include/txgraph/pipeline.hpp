#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "txgraph/outlier.hpp"
#include "txgraph/spam.hpp"

namespace txgraph {

struct PipelineConfig {
    Chain chain = Chain::Ethereum;
    std::string input_path;                    // raw jsonl (ingest) or traces jsonl (analyze)
    std::optional<std::string> registry_path;  // DApp registry CSV
    std::optional<std::string> labels_path;    // outlier category labels CSV
    std::string out_dir = ".";
    std::optional<MonthKey> from;
    std::optional<MonthKey> to;
    double z_threshold = 2.5;
    SpamParams spam;
    bool lenient = false;
    int max_iter = 50;
    std::uint64_t seed = 0;
};

struct IngestSummary {
    std::size_t records_read = 0;
    std::size_t records_skipped = 0;
    std::map<TraceKind, std::size_t> traces_per_kind;
    std::size_t traces_total = 0;
};

// Parses the chain's raw jsonl into <out_dir>/traces.jsonl plus
// <out_dir>/ingest_summary.json.
IngestSummary run_ingest(const PipelineConfig& config);

struct MetricRow {
    Chain chain = Chain::Bitcoin;
    GraphKind kind = GraphKind::MTG;
    std::string metric;
    MonthKey month;
    std::optional<double> value;
};

struct AnalyzeResult {
    std::vector<MetricRow> metrics;
    std::vector<OutlierRecord> outliers;
    std::vector<SpamVerdict> spam_verdicts;
};

// Full month-by-month pass: build graphs, compute every metric row, run
// detection + attribution, run the spam scan. Writes metrics.csv,
// outliers.json, spam.json and family_tree.csv under out_dir; outputs
// are byte-stable for identical inputs.
AnalyzeResult run_analyze(const PipelineConfig& config);

// Plot-ready long-format CSVs (one per figure family) derived from a
// previous analyze run in the same out_dir.
void run_report(const PipelineConfig& config);

// Deterministic shortest-ish decimal rendering shared by every writer.
std::string format_double(double v);

std::vector<MetricRow> read_metrics_csv(const std::string& path);

}  // namespace txgraph
