#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "txgraph/jsonio.hpp"
#include "txgraph/pipeline.hpp"
#include "txgraph/synth.hpp"

namespace fs = std::filesystem;
using namespace txgraph;

namespace {

// 0 ok, 1 analysis error, 2 input/usage error.
constexpr int kAnalysisError = 1;
constexpr int kInputError = 2;

struct CommonOpts {
    std::string chain = "ethereum";
    std::string input;
    std::string out_dir = ".";
    std::string registry;
    std::string labels;
    std::string from;
    std::string to;
    double z_threshold = 2.5;
    std::string spam_x = "0.001";
    std::uint64_t spam_y = 30;
    std::uint64_t spam_z = 500;
    bool no_memo_rule = false;
    bool lenient = false;
    bool strict = false;
    std::uint64_t seed = 0;
};

// Expands `--config FILE` into individual option tokens. The file is
// flat `key=value` lines ('#' comments); a key already given as a flag
// on the command line is skipped, so flags always win.
std::vector<std::string> apply_config(std::vector<std::string> args) {
    std::string config_path;
    for (auto it = args.begin(); it != args.end();) {
        if (*it == "--config") {
            if (std::next(it) == args.end())
                throw ParseError("--config requires a file path");
            config_path = *std::next(it);
            it = args.erase(it, std::next(it, 2));
        } else if (it->rfind("--config=", 0) == 0) {
            config_path = it->substr(9);
            it = args.erase(it);
        } else {
            ++it;
        }
    }
    if (config_path.empty()) return args;

    std::ifstream in(config_path);
    if (!in) throw ParseError("cannot open config file: " + config_path);
    auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    const std::set<std::string> flag_keys{"no-memo-rule", "lenient", "strict"};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(config_path + ":" + std::to_string(lineno) +
                             ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ParseError(config_path + ":" + std::to_string(lineno) + ": empty key");
        std::string flag = "--" + key;
        bool given = false;
        for (const std::string& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0) given = true;
        if (given) continue;
        if (flag_keys.count(key)) {
            if (value == "true" || value == "1" || value == "yes") args.push_back(flag);
        } else {
            args.push_back(flag);
            args.push_back(value);
        }
    }
    return args;
}

void add_common(CLI::App* cmd, CommonOpts& o, bool needs_input) {
    cmd->add_option("--chain", o.chain, "bitcoin|ethereum|eosio (or btc/eth/eos)");
    auto* in = cmd->add_option("--in", o.input, "input file");
    if (needs_input) in->required();
    cmd->add_option("--out", o.out_dir, "output directory")->capture_default_str();
    cmd->add_option("--registry", o.registry, "DApp registry CSV");
    cmd->add_option("--labels", o.labels, "outlier category labels CSV");
    cmd->add_option("--from", o.from, "first month, yyyy-MM");
    cmd->add_option("--to", o.to, "last month, yyyy-MM");
    cmd->add_option("--z-threshold", o.z_threshold, "outlier z-score threshold")
        ->capture_default_str();
    cmd->add_option("--spam-x", o.spam_x, "max avg transfer per recipient")
        ->capture_default_str();
    cmd->add_option("--spam-y", o.spam_y, "max transfers per recipient per month")
        ->capture_default_str();
    cmd->add_option("--spam-z", o.spam_z, "min non-replying recipients")
        ->capture_default_str();
    cmd->add_flag("--no-memo-rule", o.no_memo_rule, "drop the identical-memo rule");
    auto* lenient = cmd->add_flag("--lenient", o.lenient, "skip malformed input lines");
    cmd->add_flag("--strict", o.strict, "fail on the first malformed line (default)")
        ->excludes(lenient);
    cmd->add_option("--seed", o.seed, "generator seed")->capture_default_str();
}

PipelineConfig to_config(const CommonOpts& o) {
    PipelineConfig c;
    c.chain = parse_chain(o.chain);
    c.input_path = o.input;
    c.out_dir = o.out_dir;
    if (!o.registry.empty()) c.registry_path = o.registry;
    if (!o.labels.empty()) c.labels_path = o.labels;
    if (!o.from.empty()) c.from = MonthKey::parse(o.from);
    if (!o.to.empty()) c.to = MonthKey::parse(o.to);
    c.z_threshold = o.z_threshold;
    c.spam.x = Decimal::parse(o.spam_x);
    c.spam.y = o.spam_y;
    c.spam.z = o.spam_z;
    c.spam.require_memo = !o.no_memo_rule;
    c.lenient = o.lenient;
    c.seed = o.seed;
    return c;
}

void write_synth_traces(const std::vector<Trace>& traces, const std::string& out_dir) {
    fs::create_directories(out_dir);
    std::ofstream os(fs::path(out_dir) / "traces.jsonl", std::ios::binary);
    if (!os) throw DataError("cannot open traces.jsonl under " + out_dir);
    write_traces_jsonl(traces, os);
    std::cout << "wrote " << traces.size() << " traces\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"blockchain transaction graph toolkit"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* ingest = app.add_subcommand("ingest", "parse a raw chain dump into traces");
    add_common(ingest, o, true);

    auto* analyze = app.add_subcommand(
        "analyze", "build monthly graphs, compute metrics, flag outliers and spammers");
    add_common(analyze, o, true);

    auto* report = app.add_subcommand("report", "derive plot-ready CSVs from metrics.csv");
    add_common(report, o, false);

    auto* spam_scan = app.add_subcommand("spam-scan", "run only the spam detector");
    add_common(spam_scan, o, true);

    auto* outliers = app.add_subcommand("outliers", "run only outlier detection");
    add_common(outliers, o, true);

    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    add_common(synth, o, false);
    std::string archetype;
    std::size_t n = 10000, users = 100, rounds = 10, spammers = 5, recipients = 600;
    std::size_t length = 24, spike_index = 12;
    double alpha = -2.2, baseline = 1000.0, magnitude = 9000.0;
    std::string amount = "0.0001", memo = "visit example.example for free tokens";
    synth->add_option("--archetype", archetype, "power-law|eidos|spam|spike")->required();
    synth->add_option("--n", n, "power-law: node count")->capture_default_str();
    synth->add_option("--alpha", alpha, "power-law: target exponent")->capture_default_str();
    synth->add_option("--users", users, "eidos: participant count")->capture_default_str();
    synth->add_option("--rounds", rounds, "eidos: rounds per user")->capture_default_str();
    synth->add_option("--spammers", spammers, "spam: sender count")->capture_default_str();
    synth->add_option("--recipients", recipients, "spam: recipients per sender")
        ->capture_default_str();
    synth->add_option("--amount", amount, "spam: transfer amount")->capture_default_str();
    synth->add_option("--memo", memo, "spam: memo text")->capture_default_str();
    synth->add_option("--baseline", baseline, "spike: series baseline")->capture_default_str();
    synth->add_option("--length", length, "spike: series length in months")
        ->capture_default_str();
    synth->add_option("--spike-index", spike_index, "spike: spiked position")
        ->capture_default_str();
    synth->add_option("--magnitude", magnitude, "spike: added value")->capture_default_str();

    app.footer(
        "Any subcommand accepts --config FILE, a flat key=value file naming the same\n"
        "options without the leading dashes (e.g. `chain=eosio`); explicit flags win.");

    try {
        std::vector<std::string> args =
            apply_config(std::vector<std::string>(argv + 1, argv + argc));
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }

    try {
        PipelineConfig config = to_config(o);
        if (*ingest) {
            IngestSummary s = run_ingest(config);
            std::cout << "read " << s.records_read << " records (" << s.records_skipped
                      << " skipped), emitted " << s.traces_total << " traces\n";
        } else if (*analyze) {
            AnalyzeResult r = run_analyze(config);
            std::cout << r.metrics.size() << " metric rows, " << r.outliers.size()
                      << " outliers, " << r.spam_verdicts.size() << " spam verdicts\n";
        } else if (*report) {
            run_report(config);
            std::cout << "report CSVs written to " << config.out_dir << "\n";
        } else if (*spam_scan) {
            AnalyzeResult r = run_analyze(config);
            std::cout << r.spam_verdicts.size() << " spam verdicts (spam.json)\n";
        } else if (*outliers) {
            AnalyzeResult r = run_analyze(config);
            std::cout << r.outliers.size() << " outliers (outliers.json)\n";
        } else if (*synth) {
            if (archetype == "power-law") {
                write_synth_traces(gen_power_law_graph(n, alpha, o.seed), o.out_dir);
            } else if (archetype == "eidos") {
                write_synth_traces(gen_eidos_loop(users, rounds, o.seed), o.out_dir);
            } else if (archetype == "spam") {
                write_synth_traces(
                    gen_spam_campaign(spammers, recipients, Decimal::parse(amount), memo,
                                      o.seed),
                    o.out_dir);
            } else if (archetype == "spike") {
                MetricSeries s =
                    gen_metric_spike(baseline, length, spike_index, magnitude, o.seed);
                fs::create_directories(o.out_dir);
                std::ofstream os(fs::path(o.out_dir) / "series.csv", std::ios::binary);
                os << "chain,graph_kind,metric,month,value\n";
                for (const auto& [month, value] : s.values)
                    os << to_string(s.chain) << ',' << to_string(s.kind) << ',' << s.metric
                       << ',' << month.str() << ','
                       << (value ? format_double(*value) : "") << '\n';
                std::cout << "wrote " << s.values.size() << " series rows\n";
            } else {
                std::cerr << "error: unknown archetype: " << archetype << "\n";
                return kInputError;
            }
        }
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kAnalysisError;
    }
    return 0;
}
