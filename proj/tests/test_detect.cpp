#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tdos/detect.hpp"
#include "tdos/errors.hpp"

using namespace tdos;

namespace {

StateSummary make_summary(std::vector<double> na, std::vector<double> nt,
                          std::vector<double> nc, std::vector<double> td,
                          bool td_sum = false) {
    StateSummary s;
    s.na_dist = std::move(na);
    s.nt_dist = std::move(nt);
    s.nc_dist = std::move(nc);
    s.td_dist = std::move(td);
    s.window_count = static_cast<int>(s.na_dist.size());
    for (double v : s.na_dist) s.na_total += v;
    for (double v : s.nt_dist) s.nt_total += v;
    for (double v : s.nc_dist) s.nc_total += v;
    s.td_total = td_sum ? 0.0 : s.td_dist.front();
    for (double v : s.td_dist)
        if (td_sum)
            s.td_total += v;
        else
            s.td_total = std::max(s.td_total, v);
    return s;
}

const std::vector<double> flat10{10, 10, 10, 10, 10};
const std::vector<double> flat1{1, 1, 1, 1, 1};
const std::vector<double> flat20{20, 20, 20, 20, 20};
const std::vector<double> flat2{2, 2, 2, 2, 2};

StateSummary reference_state() { return make_summary(flat10, flat1, flat20, flat2); }

} // namespace

TEST_CASE("scalar similarity is a relative deviation with a unit floor") {
    auto r = scalar_similar(100, 130, 0.25);
    CHECK(r.similar);
    CHECK(r.score == doctest::Approx(30.0 / 130.0));

    r = scalar_similar(100, 140, 0.25);
    CHECK_FALSE(r.similar);
    CHECK(r.score == doctest::Approx(40.0 / 140.0));

    // tiny magnitudes use the floor of 1, not their own scale
    r = scalar_similar(0.1, 0.4, 0.25);
    CHECK_FALSE(r.similar);
    CHECK(r.score == doctest::Approx(0.3));

    r = scalar_similar(0.0, 0.0, 0.25);
    CHECK(r.similar);
    CHECK(r.score == 0.0);

    CHECK(scalar_similar(130, 100, 0.25).similar); // symmetric
}

TEST_CASE("distribution similarity is L1 after unit-sum normalization") {
    auto r = dist_similar({1, 1, 1, 1}, {2, 2, 2, 2}, 0.30);
    CHECK(r.similar); // same shape, different mass
    CHECK(r.score == doctest::Approx(0.0));

    r = dist_similar({4, 0, 0, 0}, {1, 1, 1, 1}, 0.30);
    CHECK_FALSE(r.similar);
    CHECK(r.score == doctest::Approx(1.5));

    // all-zero normalizes to uniform
    r = dist_similar({0, 0}, {3, 3}, 0.30);
    CHECK(r.similar);
    CHECK(r.score == doctest::Approx(0.0));

    CHECK_THROWS_AS(dist_similar({1, 2}, {1, 2, 3}, 0.30), LengthMismatch);
}

TEST_CASE("dominance needs both the ratio and the absolute floor") {
    auto d = dominates(100, 200, 2.0, 10.0);
    CHECK(d.dominates);
    CHECK(d.ratio == doctest::Approx(2.0));
    CHECK(d.difference == doctest::Approx(100.0));

    CHECK_FALSE(dominates(100, 199, 2.0, 10.0).dominates);
    CHECK_FALSE(dominates(1, 2, 2.0, 10.0).dominates);   // ratio ok, floor not
    CHECK_FALSE(dominates(0, 5, 2.0, 10.0).dominates);   // floor blocks zero-base blowup
    CHECK(dominates(0, 20, 2.0, 10.0).dominates);
    CHECK(std::isinf(dominates(0, 20, 2.0, 10.0).ratio));
    CHECK(dominates(0, 0, 2.0, 10.0).ratio == 0.0);
}

TEST_CASE("verdict truth table over demand equivalence x cost x deployment") {
    DetectorConfig cfg;
    const StateSummary a = reference_state();

    // same state -> Normal
    CHECK(classify(a, reference_state(), cfg).cls == VerdictClass::Normal);

    // cost grows 3x with a skewed tail -> upkeep verdict
    StateSummary b = make_summary(flat10, flat1, {10, 10, 10, 135, 135}, flat2);
    auto v = classify(a, b, cfg);
    CHECK(v.cls == VerdictClass::UTdos);
    CHECK(v.tps.holds);
    CHECK(v.cost.dominance.dominates);
    CHECK_FALSE(v.cost.distribution.similar);
    CHECK_FALSE(v.deploy.satisfied);

    // supplier spread 3x -> deployment verdict
    b = make_summary(flat10, flat1, flat20, {2, 2, 2, 6, 6});
    v = classify(a, b, cfg);
    CHECK(v.cls == VerdictClass::DTdos);
    CHECK(v.deploy.dominance.ratio == doctest::Approx(3.0));

    // both -> joint verdict
    b = make_summary(flat10, flat1, {10, 10, 10, 135, 135}, {2, 2, 2, 6, 6});
    CHECK(classify(a, b, cfg).cls == VerdictClass::UDTdos);

    // demand itself shifted -> never a TDoS verdict, whatever the rest says
    for (const auto& nc : {flat20, std::vector<double>{10, 10, 10, 135, 135}}) {
        for (const auto& td : {flat2, std::vector<double>{2, 2, 2, 6, 6}}) {
            b = make_summary(flat20, flat1, nc, td); // nA doubled
            v = classify(a, b, cfg);
            CHECK(v.cls == VerdictClass::NotTdosDemandShift);
            CHECK_FALSE(v.tps.holds);
        }
    }
}

TEST_CASE("cost condition needs dominance AND a reshaped spend profile") {
    DetectorConfig cfg;
    const StateSummary a = reference_state();
    // 3x cost but uniformly scaled: same shape, so not "unexpected"
    StateSummary b = make_summary(flat10, flat1, {60, 60, 60, 60, 60}, flat2);
    auto v = classify(a, b, cfg);
    CHECK(v.cost.dominance.dominates);
    CHECK(v.cost.distribution.similar);
    CHECK_FALSE(v.cost.satisfied);
    CHECK(v.cls == VerdictClass::Normal);

    cfg.or_conditions = true; // relaxed mode accepts either signal
    CHECK(classify(a, b, cfg).cls == VerdictClass::UTdos);
}

TEST_CASE("tps breaks on the dependency side too") {
    DetectorConfig cfg;
    const StateSummary a = reference_state();
    StateSummary b = make_summary(flat10, {3, 3, 3, 3, 3}, flat20, flat2);
    auto v = classify(a, b, cfg);
    CHECK_FALSE(v.tps.nt_scalar.similar);
    CHECK(v.cls == VerdictClass::NotTdosDemandShift);
}

TEST_CASE("summarize extracts totals and per-window series from the trace") {
    SimTrace trace;
    trace.window_count = 6;
    for (int w = 0; w < 6; ++w) {
        CrownWindow cw;
        cw.window_index = w;
        cw.capability = "cap";
        cw.actions = 10 + w;
        cw.dependents = 2;
        cw.cost = 5.0 * (w + 1);
        cw.supplier_nodes = w < 3 ? 2 : 4;
        trace.windows.push_back(cw);
    }

    DetectorConfig cfg;
    auto s = summarize(trace, "cap", 0, 6, cfg);
    CHECK(s.na_total == doctest::Approx(10 + 11 + 12 + 13 + 14 + 15));
    CHECK(s.nt_total == doctest::Approx(12));
    CHECK(s.nc_total == doctest::Approx(5 + 10 + 15 + 20 + 25 + 30));
    CHECK(s.td_total == doctest::Approx(4)); // peak by default
    CHECK(s.na_dist.size() == 6);
    CHECK(s.nc_dist[2] == doctest::Approx(15.0));

    cfg.td_total_is_sum = true;
    CHECK(summarize(trace, "cap", 0, 6, cfg).td_total == doctest::Approx(2 * 3 + 4 * 3));

    cfg.td_total_is_sum = false;
    CHECK_THROWS_AS(summarize(trace, "cap", 0, 7, cfg), IntervalOutOfRange);
    CHECK_THROWS_AS(summarize(trace, "cap", -1, 5, cfg), IntervalOutOfRange);
    CHECK_THROWS_AS(summarize(trace, "cap", 0, 3, cfg), IntervalOutOfRange); // below min_windows
    CHECK_THROWS_AS(summarize(trace, "ghost", 0, 5, cfg), IntervalOutOfRange);
}

TEST_CASE("find_window is exact on the (index, capability) key") {
    SimTrace trace;
    for (int w = 0; w < 3; ++w)
        for (const char* c : {"a", "b"}) {
            CrownWindow cw;
            cw.window_index = w;
            cw.capability = c;
            cw.actions = w * 10;
            trace.windows.push_back(cw);
        }
    REQUIRE(trace.find_window(2, "b"));
    CHECK(trace.find_window(2, "b")->actions == 20);
    CHECK(trace.find_window(3, "a") == nullptr);
    CHECK(trace.find_window(0, "z") == nullptr);
}

TEST_CASE("productivity clustering separates lazy instances from busy ones") {
    auto r = cluster_productivity({100, 98, 102, 0.5, 0.3});
    CHECK(r.flagged == std::vector<std::size_t>{3, 4});
    CHECK(r.separation > 1.0);
    CHECK(r.split_value == doctest::Approx(98.0));

    // evenly spaced values: the best split is not a meaningful gap
    r = cluster_productivity({10.0, 10.2, 10.4, 10.6});
    CHECK(r.flagged.empty());

    // zero variance: nothing to flag
    r = cluster_productivity({5, 5, 5});
    CHECK(r.flagged.empty());
    CHECK(r.separation == 0.0);

    // two points far apart: lower one is the lazy group
    r = cluster_productivity({1, 9});
    CHECK(r.flagged == std::vector<std::size_t>{0});

    CHECK_THROWS_AS(cluster_productivity({1.0}), TooFewInstances);
    CHECK_THROWS_AS(cluster_productivity({}), TooFewInstances);
}

TEST_CASE("productivity_of guards the zero-load division") {
    CHECK(productivity_of(50, 0.5) == doctest::Approx(100.0));
    CHECK(productivity_of(0, 0.0) == 0.0);
    CHECK(productivity_of(1, 0.0) == doctest::Approx(1e9));
}

TEST_CASE("verdict names round-trip") {
    for (auto v : {VerdictClass::Normal, VerdictClass::NotTdosDemandShift, VerdictClass::UTdos,
                   VerdictClass::DTdos, VerdictClass::UDTdos})
        CHECK(verdict_from_string(to_string(v)) == v);
    CHECK_THROWS_AS(verdict_from_string("Weird"), ValidationError);
}
