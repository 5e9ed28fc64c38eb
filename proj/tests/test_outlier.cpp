#include <doctest.h>

#include <cmath>
#include <random>

#include "txgraph/outlier.hpp"
#include "util.hpp"

using namespace txgraph;
using testutil::graph_of;

namespace {

MetricSeries series_of(const std::vector<std::optional<double>>& values) {
    MetricSeries s;
    s.chain = Chain::Eosio;
    s.kind = GraphKind::MTG;
    s.metric = "trace_count";
    MonthKey first = testutil::test_month();
    for (std::size_t i = 0; i < values.size(); ++i)
        s.values.emplace_back(MonthKey::from_index(first.index() + static_cast<int>(i)),
                              values[i]);
    return s;
}

}  // namespace

TEST_CASE("z-score of a single spike in a flat window is sqrt(6)") {
    // mean 2, population variance (6*1 + 36)/7 = 6, z = 6/sqrt(6).
    MetricSeries s = series_of({1, 1, 1, 8, 1, 1, 1});
    auto p = zscore(s, 3);
    REQUIRE(p);
    CHECK(p->mean == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(p->std == doctest::Approx(std::sqrt(6.0)).epsilon(1e-12));
    CHECK(p->z == doctest::Approx(6.0 / std::sqrt(6.0)).epsilon(1e-12));
}

TEST_CASE("incomplete or gapped windows yield no score") {
    MetricSeries s = series_of({1, 2, 3, 4, 5, 6, 7, 8});
    CHECK_FALSE(zscore(s, 0));
    CHECK_FALSE(zscore(s, 2));
    CHECK(zscore(s, 3));
    CHECK(zscore(s, 4));
    CHECK_FALSE(zscore(s, 5));
    CHECK_FALSE(zscore(s, 100));

    MetricSeries gap = series_of({1, 2, std::nullopt, 4, 5, 6, 7});
    CHECK_FALSE(zscore(gap, 3));
}

TEST_CASE("constant windows score zero instead of dividing by zero") {
    MetricSeries s = series_of({5, 5, 5, 5, 5, 5, 5});
    auto p = zscore(s, 3);
    REQUIRE(p);
    CHECK(p->std == 0.0);
    CHECK(p->z == 0.0);
}

TEST_CASE("z-scores are invariant under positive affine rescaling") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::optional<double>> base;
        for (int i = 0; i < 9; ++i)
            base.push_back(static_cast<double>(rng() % 1000));
        double a = 0.5 + static_cast<double>(rng() % 100);
        double b = static_cast<double>(rng() % 10000) - 5000.0;
        std::vector<std::optional<double>> scaled;
        for (const auto& v : base) scaled.push_back(a * *v + b);
        for (std::size_t i = 3; i + 3 < base.size(); ++i) {
            auto p = zscore(series_of(base), i);
            auto q = zscore(series_of(scaled), i);
            REQUIRE(p);
            REQUIRE(q);
            CHECK(q->z == doctest::Approx(p->z).epsilon(1e-9));
        }
    }
}

TEST_CASE("detect flags strictly beyond the threshold, both directions") {
    MetricSeries peak = series_of({1, 1, 1, 8, 1, 1, 1});
    auto hits = detect(peak, 2.0);
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].index == 3);
    CHECK(hits[0].direction == Direction::Peak);
    CHECK(detect(peak, 2.5).empty());  // sqrt(6) ~ 2.449 sits under 2.5

    MetricSeries trough = series_of({10, 10, 10, 3, 10, 10, 10});
    auto lows = detect(trough, 2.0);
    REQUIRE(lows.size() == 1);
    CHECK(lows[0].direction == Direction::Trough);
    CHECK(lows[0].z == doctest::Approx(-std::sqrt(6.0)).epsilon(1e-12));

    CHECK_THROWS_AS(detect(peak, 0.0), DataError);
    CHECK_THROWS_AS(detect(peak, -1.0), DataError);
}

TEST_CASE("metric kind names round trip") {
    for (MetricKind k : {MetricKind::TraceCount, MetricKind::AlphaDegree, MetricKind::AlphaIn,
                         MetricKind::AlphaOut, MetricKind::Pearson, MetricKind::Wcc,
                         MetricKind::Scc})
        CHECK(metric_kind_from(to_string(k)) == k);
    CHECK_FALSE(metric_kind_from("nonsense"));
}

TEST_CASE("metric_value degrades to absent instead of throwing") {
    MonthlyGraph btc = graph_of({{"a", "tx"}, {"tx", "b"}}, Chain::Bitcoin);
    CHECK_FALSE(metric_value(btc, MetricKind::Scc));
    MonthlyGraph two = graph_of({{"a", "b"}});
    CHECK_FALSE(metric_value(two, MetricKind::AlphaDegree));  // single degree point
    CHECK(metric_value(two, MetricKind::TraceCount) == 1.0);
}

namespace {

// Baseline of 10 disjoint transfer edges; trace count 10.
MonthlyGraph baseline_graph() {
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 10; ++i)
        edges.emplace_back("s" + std::to_string(i), "t" + std::to_string(i));
    return graph_of(edges);
}

void add_star(MonthlyGraph& g, const std::string& hub, int leaves) {
    g.nodes[hub];
    for (int i = 0; i < leaves; ++i) {
        std::string leaf = hub + "_leaf" + std::to_string(i);
        g.nodes[leaf];
        auto& e = g.edges[{hub, leaf}];
        e.weight_sum += Decimal(1);
        ++e.trace_count;
    }
}

}  // namespace

TEST_CASE("attribution finds a single supernode in one iteration") {
    MonthlyGraph g = baseline_graph();
    add_star(g, "whale", 90);  // trace count jumps to 100

    MetricSeries s = series_of({10, 10, 10, 100, 10, 10, 10});
    OutlierRecord rec = attribute(g, MetricKind::TraceCount, s, 3, 2.0);
    CHECK(rec.resolved);
    CHECK(rec.iterations == 1);
    REQUIRE(rec.responsible_nodes.size() == 1);
    CHECK(rec.responsible_nodes[0] == "whale");
    CHECK(rec.direction == Direction::Peak);
    CHECK(rec.month == MonthKey::from_index(testutil::test_month().index() + 3));
}

TEST_CASE("attribution peels two supernodes in two iterations") {
    MonthlyGraph g = baseline_graph();
    add_star(g, "whale1", 90);
    add_star(g, "whale2", 90);  // 190 traces in the flagged month

    MetricSeries s = series_of({10, 10, 10, 190, 10, 10, 10});
    OutlierRecord rec = attribute(g, MetricKind::TraceCount, s, 3, 2.0);
    CHECK(rec.resolved);
    CHECK(rec.iterations == 2);
    REQUIRE(rec.responsible_nodes.size() == 2);
    // Equal scores: deterministic lexicographic tie-break.
    CHECK(rec.responsible_nodes[0] == "whale1");
    CHECK(rec.responsible_nodes[1] == "whale2");
}

TEST_CASE("attribution demands an actually flagged month") {
    MonthlyGraph g = baseline_graph();
    MetricSeries flat = series_of({10, 10, 10, 10, 10, 10, 10});
    CHECK_THROWS_AS(attribute(g, MetricKind::TraceCount, flat, 3, 2.0), DataError);
    MetricSeries s = series_of({10, 10, 10, 100, 10, 10, 10});
    CHECK_THROWS_AS(attribute(MonthlyGraph{}, MetricKind::TraceCount, s, 3, 2.0), DataError);
}

TEST_CASE("attribution gives up unresolved at the iteration cap") {
    // Spike carried evenly by many small nodes: removing any one changes little.
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 100; ++i)
        edges.emplace_back("a" + std::to_string(i), "b" + std::to_string(i));
    MonthlyGraph g = graph_of(edges);
    MetricSeries s = series_of({10, 10, 10, 100, 10, 10, 10});
    OutlierRecord rec = attribute(g, MetricKind::TraceCount, s, 3, 2.0, 5);
    CHECK_FALSE(rec.resolved);
    CHECK(rec.iterations == 5);
}

TEST_CASE("pearson attribution removes the highest in*out product node") {
    // "bridge" is the only node with both high in- and out-degree.
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 8; ++i) edges.emplace_back("in" + std::to_string(i), "bridge");
    for (int i = 0; i < 8; ++i) edges.emplace_back("bridge", "out" + std::to_string(i));
    for (int i = 0; i < 4; ++i)
        edges.emplace_back("p" + std::to_string(i), "q" + std::to_string(i));
    MonthlyGraph g = graph_of(edges);

    auto r0 = metric_value(g, MetricKind::Pearson);
    REQUIRE(r0);
    MetricSeries s = series_of({0.01, 0.01, 0.01, *r0, 0.01, 0.01, 0.01});
    if (auto p = zscore(s, 3); p && std::abs(p->z) >= 2.0) {
        OutlierRecord rec = attribute(g, MetricKind::Pearson, s, 3, 2.0);
        REQUIRE_FALSE(rec.responsible_nodes.empty());
        CHECK(rec.responsible_nodes[0] == "bridge");
    }
}

TEST_CASE("alpha trough attribution picks the importer of one-shot accounts") {
    // "airdrop" touches 50 degree-one nodes; "popular" has high degree but
    // its neighbors are reused.
    std::vector<std::pair<std::string, std::string>> edges;
    for (int i = 0; i < 50; ++i) edges.emplace_back("airdrop", "fresh" + std::to_string(i));
    for (int i = 0; i < 60; ++i)
        edges.emplace_back("u" + std::to_string(i % 12), "popular");
    MonthlyGraph g = graph_of(edges);

    auto v = metric_value(g, MetricKind::AlphaDegree);
    REQUIRE(v);
    MetricSeries s = series_of({*v + 3, *v + 3, *v + 3, *v, *v + 3, *v + 3, *v + 3});
    OutlierRecord rec = attribute(g, MetricKind::AlphaDegree, s, 3, 2.0);
    REQUIRE_FALSE(rec.responsible_nodes.empty());
    CHECK(rec.responsible_nodes[0] == "airdrop");
    CHECK(rec.direction == Direction::Trough);
}

TEST_CASE("wcc and scc attribution count directional edge pairs") {
    MonthlyGraph g = graph_of({{"a", "b"}, {"b", "a"}, {"b", "c"}, {"c", "b"},
                               {"x", "y"}, {"y", "z"}});
    // two-way pairs: b has 2 (with a and c); one-way: y has 2 (with x and z)
    MetricSeries s = series_of({1, 1, 1, 2, 1, 1, 1});
    OutlierRecord wcc = attribute(g, MetricKind::Wcc, s, 3, 2.0);
    REQUIRE_FALSE(wcc.responsible_nodes.empty());
    CHECK(wcc.responsible_nodes[0] == "y");
    OutlierRecord scc = attribute(g, MetricKind::Scc, s, 3, 2.0);
    REQUIRE_FALSE(scc.responsible_nodes.empty());
    CHECK(scc.responsible_nodes[0] == "b");
}

TEST_CASE("labels validate their closed category sets") {
    testutil::TempDir dir;
    std::string good = dir.file("labels.csv",
                                "chain,identifier,category,subcategory\n"
                                "eosio,whale,Misbehavior,Spam\n"
                                "eosio,bigdapp,KillerDApp,Gambling\n");
    OutlierLabels labels = OutlierLabels::load(good);
    auto cat = labels.lookup(Chain::Eosio, "whale");
    REQUIRE(cat);
    CHECK(cat->category == "Misbehavior");
    CHECK(cat->subcategory == "Spam");
    CHECK_FALSE(labels.lookup(Chain::Eosio, "nobody"));

    CHECK_THROWS_AS(
        OutlierLabels::load(dir.file("bad1.csv", "eosio,x,KillerDApp,Spam\n")), ParseError);
    CHECK_THROWS_AS(
        OutlierLabels::load(dir.file("bad2.csv", "eosio,x,SomethingElse,Spam\n")),
        ParseError);
}

TEST_CASE("classification uses the first labeled responsible node") {
    OutlierLabels labels;
    labels.add(Chain::Eosio, "whale2", {"Misbehavior", "Spam"});
    OutlierRecord rec;
    rec.chain = Chain::Eosio;
    rec.responsible_nodes = {"whale1", "whale2"};
    rec = classify(std::move(rec), labels);
    REQUIRE(rec.category);
    CHECK(rec.category->subcategory == "Spam");

    OutlierRecord none;
    none.chain = Chain::Eosio;
    none.responsible_nodes = {"stranger"};
    none = classify(std::move(none), labels);
    CHECK_FALSE(none.category);
}
