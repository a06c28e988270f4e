#include "birat3/depth.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace birat3;

namespace {

const std::vector<std::string> V4 = {"x", "y", "z", "u"};
const std::vector<std::string> V3 = {"x", "y", "z"};

SingularityModel gor(const std::string& f) { return make_model(QuotientAction::trivial_action(4), V4, {f}, "cA/r"); }
SingularityModel quot(std::int64_t r, std::vector<std::int64_t> a) { return make_model(QuotientAction(r, a), V3, {}, "quotient"); }
SingularityModel ca(std::int64_t r, std::int64_t beta, const std::string& f) {
    return make_model(QuotientAction(r, {beta, r - beta, 1, 0}), V4, {f}, "cA/r");
}

// Kawamata blow-up of 1/r(a, -a, 1) has weight 1/r(a, r - a, 1) and leaves points of
// index a and r - a; the recursion below never looks at charts.
std::vector<std::int64_t> expected_indices(const QuotientAction& g) {
    WeightVector w = kawamata_weight(g);
    std::vector<std::int64_t> b = w.b;
    std::sort(b.begin(), b.end());
    std::vector<std::int64_t> out;
    for (std::size_t i = 1; i < b.size(); ++i)
        if (b[i] > 1) out.push_back(b[i]);
    return out;
}

std::int64_t quotient_oracle(std::int64_t r) {
    if (r == 1) return 0;
    std::int64_t s = 1;
    for (auto i : expected_indices(QuotientAction(r, {1, r - 1, 1}))) s += quotient_oracle(i);
    return s;
}

}  // namespace

TEST_CASE("small depths") {
    DepthEngine eng;
    CHECK(eng.gdep(make_model(QuotientAction::trivial_action(3), V3, {}, "smooth")).value() == 0);
    auto half = quot(2, {1, 1, 1});
    CHECK(eng.gdep(half).value() == 1);
    CHECK(eng.dep(half).value() == 1);
    CHECK(eng.gdep(quot(3, {1, 2, 1})).value() == 2);
    CHECK(eng.dep(quot(3, {1, 2, 1})).value() == 2);
    auto r = depth_report(gor("x*y + z^2 + u^7"));
    CHECK(r.gdep.value() == 3);
    CHECK(r.dep.value() == 0);
    CHECK(r.dep_gor.value() == 3);
    auto h = depth_report(half);
    CHECK(h.dep_gor.value() == 0);
    CHECK(eng.gdep(gor("x*y + z^2 + u^2")).value() == 1);
    CHECK(eng.gdep(gor("x*y + z^2 + u^3")).value() == 1);
}

TEST_CASE("chain of ordinary blow-ups") {
    for (int n = 2; n <= 5; ++n) {
        auto m = gor("x*y + z^2 + u^" + std::to_string(2 * n + 1));
        DepthEngine eng;
        CHECK(eng.gdep(m).value() == n);
        ResolutionTree t = feasible_resolution(m, eng);
        REQUIRE(t.edges.size() == static_cast<std::size_t>(n));
        for (int i = 1; i <= n; ++i) {
            const auto& e = t.edges[i - 1];
            CHECK(e.discrepancy == 1);
            CHECK(e.strict);
            REQUIRE(e.valuations.size() == 4);
            for (int k = 0; k < 3; ++k) CHECK(e.valuations[k] == std::optional<Rat>(i));
            CHECK(e.valuations[3] == std::optional<Rat>(1));
        }
        CHECK(t.picard_gain == n);
        CHECK(t.nodes.back().points.empty());
    }
}

TEST_CASE("quotient points: gdep = r - 1") {
    for (std::int64_t r = 2; r <= 12; ++r) {
        for (std::int64_t b = 1; b < r; ++b) {
            if (std::gcd(b, r) != 1) continue;
            auto m = quot(r, {1, r - 1, b});
            DepthEngine eng;
            std::int64_t g = eng.gdep(m).value();
            CAPTURE(r);
            CAPTURE(b);
            CHECK(g == r - 1);
            CHECK(g == quotient_oracle(r));
            std::vector<std::int64_t> got;
            for (const auto& p : chart_singularities(weighted_blowup(m, kawamata_weight(m.ambient))))
                if (p.point.model.ambient.reduced().r > 1) got.push_back(p.point.model.ambient.reduced().r);
            std::sort(got.begin(), got.end());
            CHECK(got == expected_indices(m.ambient));
            CHECK(eng.dep(m).value() == r - 1);
        }
    }
}

TEST_CASE("feasible resolution of 1/3(1,2,1)") {
    DepthEngine eng;
    ResolutionTree t = feasible_resolution(quot(3, {1, 2, 1}), eng);
    REQUIRE(t.edges.size() == 2);
    CHECK(t.edges[0].discrepancy == make_rat(1, 3));
    CHECK(t.edges[1].discrepancy == make_rat(1, 2));
    auto rep = check_depth_inequalities(t, eng);
    CHECK(rep.ok);
    CHECK(rep.rho == 2);
    CHECK(rep.delta_gdep == 2);
}

TEST_CASE("strictness over cA/3") {
    auto m = ca(3, 1, "x*y + z^6 + u^2");
    DepthEngine eng;
    auto g = eng.gdep(m);
    CHECK(g.exact());
    const Expansion& ex = eng.expand(m);
    REQUIRE(ex.contractions.size() == 2);
    for (const auto& c : ex.contractions) CHECK(is_strict(c, eng));
    CHECK(is_strict(weighted_blowup(quot(2, {1, 1, 1}), WeightVector(2, {1, 1, 1})), eng));
    CHECK(is_strict(weighted_blowup(gor("x*y + z^2 + u^7"), WeightVector(1, {1, 1, 1, 1})), eng));
}

TEST_CASE("memoized search agrees with plain BFS") {
    std::vector<SingularityModel> corpus = {quot(2, {1, 1, 1}),        quot(3, {1, 2, 1}),       quot(5, {1, 4, 2}),
                                            quot(7, {2, 5, 3}),        gor("x*y + z^2 + u^5"),   gor("x*y + z^3 + u^3"),
                                            gor("x*y + z^2 + u^2"),    ca(2, 1, "x*y + z^2 + u^3"), ca(3, 1, "x*y + z^6 + u^2"),
                                            ca(3, 1, "x*y + z^3 + u^2")};
    for (const auto& m : corpus) {
        DepthEngine eng;
        CAPTURE(m.str());
        CHECK(eng.gdep(m) == bfs_gdep(m));
    }
}

TEST_CASE("thread count does not change results") {
    auto m = ca(3, 1, "x*y + z^6 + u^2");
    DepthEngine one({kDefaultBudget, 1}), many({kDefaultBudget, 4});
    CHECK(one.gdep(m) == many.gdep(m));
    CHECK(one.dep(m) == many.dep(m));
}

TEST_CASE("budget exhaustion is an error") {
    DepthEngine eng({1, 1});
    CHECK_THROWS_AS(eng.gdep(gor("x*y + z^2 + u^9")), BudgetExceeded);
}

TEST_CASE("depth inequalities on random chains") {
    std::mt19937 rng(11);
    std::vector<SingularityModel> corpus = {ca(3, 1, "x*y + z^6 + u^2"), ca(2, 1, "x*y + z^4 + u^3"), gor("x*y + z^4 + u^4"),
                                            gor("x*y + z^3 + u^5"), quot(5, {1, 4, 2})};
    for (const auto& m : corpus) {
        DepthEngine eng;
        for (int trial = 0; trial < 5; ++trial) {
            auto pick = [&](const SingularityModel&, const Expansion& ex) {
                return std::uniform_int_distribution<std::size_t>(0, ex.contractions.size() - 1)(rng);
            };
            ResolutionTree t = build_chain(m, eng, pick);
            auto rep = check_depth_inequalities(t, eng);
            CAPTURE(m.str());
            for (const auto& v : rep.violations) MESSAGE(v);
            CHECK(rep.ok);
            CHECK(rep.rho >= rep.delta_gdep);
            CHECK(t.nodes.back().points.empty());
        }
    }
}
