#include "birat3/links.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>

using namespace birat3;

namespace {

const std::vector<std::string> V4 = {"x", "y", "z", "u"};

SingularityModel ca(std::int64_t r, std::int64_t beta, const std::string& f) {
    return make_model(QuotientAction(r, {beta % r, (r - beta) % r, 1 % r, 0}), V4, {f}, "cA/r");
}

std::string eq(std::int64_t r, std::int64_t k, std::int64_t q) {
    return "x*y + z^" + std::to_string(r * k) + " + u^" + std::to_string(q);
}

LinkData toy(std::vector<std::int64_t> a, std::vector<std::int64_t> a2, std::vector<std::size_t> delta) {
    LinkData d;
    d.a = WeightVector(1, a);
    d.a2 = WeightVector(1, a2);
    for (auto dj : delta) d.eta.push_back(EtaData{std::nullopt, dj, Rat(1), Rat(1)});
    return d;
}

struct SweepCase {
    SingularityModel m;
    std::int64_t r, beta, k, q, b;
};

std::vector<SweepCase> sweep() {
    std::vector<SweepCase> out;
    for (std::int64_t r = 1; r <= 7; ++r)
        for (std::int64_t beta = 0; beta < r || (r == 1 && beta == 0); ++beta) {
            if (std::gcd(beta, r) != 1) continue;
            for (std::int64_t k = 1; k <= 4; ++k)
                for (std::int64_t q = k; q <= k + 1; ++q)
                    for (std::int64_t b = r + 1; b < r * k; ++b) {
                        if ((b - beta) % r != 0) continue;
                        out.push_back({ca(r, beta, eq(r, k, q)), r, beta, k, q, b});
                    }
        }
    return out;
}

}  // namespace

TEST_CASE("ca_link on xy + z^6 + u^2 and xy + z^6 + u^5") {
    auto m = ca(3, 1, "x*y + z^6 + u^2");
    LinkResult l = ca_link(m, weighted_blowup(m, WeightVector(3, {4, 2, 1, 3})));
    CHECK(l.linked.weight == WeightVector(3, {1, 5, 1, 3}));
    CHECK(l.eta4.str() == "y + u^2");
    CHECK_FALSE(l.flop);
    CHECK(xi_prime(l.data));
    XiResult xi = xi_condition(l.data);
    CHECK(xi.holds);
    CHECK(xi.strict);
    CHECK(theta_index(l.data, 2));
    CHECK(kng_intersection(l.data) < 0);
    CHECK(l.data.a2 == WeightVector(4, {1, 6, 1, 3}));
    CHECK(l.data.m == 1);

    auto m5 = ca(3, 1, "x*y + z^6 + u^5");
    LinkResult f = ca_link(m5, weighted_blowup(m5, WeightVector(3, {4, 2, 1, 3})));
    CHECK(f.linked.weight == WeightVector(3, {1, 5, 1, 3}));
    CHECK(f.eta4.str() == "y");
    CHECK(f.flop);
    XiResult xf = xi_condition(f.data);
    CHECK(xf.holds);
    CHECK_FALSE(xf.strict);
    CHECK(kng_intersection(f.data) == 0);
}

TEST_CASE("ca_link preconditions") {
    auto m = ca(3, 1, "x*y + z^6 + u^2");
    // b = r forces r = 1 once b = beta mod r
    auto g = ca(1, 0, "x*y + z^3 + u^2");
    CHECK_THROWS_AS(ca_link(g, weighted_blowup(g, WeightVector(1, {1, 2, 1, 1}))), std::invalid_argument);
    CHECK_THROWS_AS(ca_link(m, weighted_blowup(m, WeightVector(3, {2, 4, 2, 3}))), std::invalid_argument);
}

TEST_CASE("discrepancies of the two divisors") {
    auto a = dcp_discrepancies(1, 3, 1, 4);
    CHECK(a.aEX == make_rat(1, 3));
    CHECK(a.aFX == make_rat(1, 3));
    auto g = dcp_discrepancies(1, 1, 0, 1);
    CHECK(g.aEX == 1);
    CHECK(g.aFX == 1);
    auto h = dcp_discrepancies(2, 4, 3, 8);
    CHECK(h.aEX == make_rat(1, 2));
    CHECK(h.aFX == make_rat(5, 16));
}

TEST_CASE("intersection formula on toy data") {
    LinkData d = toy({1, 1, 1, 1}, {1, 1, 1, 1}, {4});
    CHECK(kng_intersection(d) == 0);
    d.eta[0].vE.reset();
    CHECK_THROWS_AS(kng_intersection(d), LinkDataError);
}

TEST_CASE("Xi and its strict form") {
    // a'_j = a_j / a_3 everywhere: equality, so no strict drop
    LinkData d = toy({1, 1, 1, 1}, {1, 1, 1, 1}, {4});
    auto x = xi_condition(d);
    CHECK(x.holds);
    CHECK_FALSE(x.strict);

    LinkData dup = toy({2, 1, 1, 1, 1}, {1, 1, 1, 1, 1}, {4, 4});
    CHECK_FALSE(xi_condition(dup).holds);

    LinkData miss = toy({1, 1, 1, 1}, {1, 1, 1, 1}, {4});
    miss.eta[0].delta.reset();
    CHECK_THROWS_AS(xi_condition(miss), LinkDataError);
}

TEST_CASE("Theta conditions") {
    LinkData d = toy({2, 3, 1, 1}, {2, 3, 1, 1}, {4});
    for (std::size_t j = 2; j <= 4; ++j) CHECK_FALSE(theta_index(d, j));
    CHECK_THROWS_AS(theta_index(d, 1), LinkDataError);

    // x_1(x_1 + p) + g with a = (3, 2, 1, 1), p = x_2, g of weight 5; a'_5 = r v_E(g) > r v_E(p) = a_5
    LinkData y;
    y.a = WeightVector(1, {3, 2, 1, 1, 2});
    y.a2 = WeightVector(3, {2, 2, 1, 1, 5});
    y.eta = {EtaData{std::nullopt, 4, Rat(1), Rat(1)}, EtaData{std::nullopt, 5, Rat(2), make_rat(2, 3)}};
    CHECK(theta_index(y, 5));
    CHECK(xi_condition(y).strict);
}

TEST_CASE("disef check") {
    DisefInput a{3, 1, 1, Rat(1), Rat(1)};
    auto p = dcp_discrepancies(3, 1, 1, 4);
    a.aFX = p.aFX;
    CHECK(disef_check(a) == std::optional<bool>(true));
    DisefInput b{1, make_rat(1, 2), 1, Rat(1), Rat(1)};
    CHECK_FALSE(disef_check(b).has_value());
    DisefInput c{2, make_rat(1, 2), 2, make_rat(1, 2), Rat(1)};
    CHECK(disef_check(c) == std::optional<bool>(true));
    DisefInput bad{2, 1, 2, std::nullopt, Rat(1)};
    CHECK_THROWS_AS(disef_check(bad), LinkDataError);
}

TEST_CASE("sweep over cA/r links") {
    auto cases = sweep();
    REQUIRE(cases.size() > 50);
    int flops = 0;
    for (const auto& s : cases) {
        CAPTURE(s.m.str());
        CAPTURE(s.b);
        const std::int64_t c = s.r * s.k - s.b;
        Contraction y = weighted_blowup(s.m, WeightVector(s.r, {s.b, c, 1, s.r}));
        LinkResult l = ca_link(s.m, y);
        const LinkData& d = l.data;

        CHECK(l.linked.weight == WeightVector(s.r, {s.b - s.r, c + s.r, 1, s.r}));
        CHECK(l.linked.discrepancy == make_rat(1, s.r));
        auto p = dcp_discrepancies(d);
        CHECK(p.aEX == make_rat(1, s.r));
        CHECK(p.aFX == make_rat(1, s.r));

        // u^q survives the restriction to x = 0 only when q = k
        CHECK(l.flop == (s.q != s.k));
        if (l.flop) ++flops;

        XiResult xi = xi_condition(d);
        Rat kng = kng_intersection(d);
        CHECK(xi.holds);
        if (xi.holds) CHECK(kng <= 0);
        if (xi.strict) CHECK(kng < 0);
        CHECK(xi.strict == !l.flop);
        CHECK(theta_index(d, 2));

        for (std::size_t j = 2; j <= 4; ++j) {
            if (j != d.duval_index) CHECK(((d.a.b[2] * d.a2.b[j - 1] - d.a.b[j - 1]) % d.r2()) == 0);
            if (theta_index(d, j)) CHECK(theta_function(d, Poly::variable(V4, j - 1)));
        }

        // the chart origin of U_x is a 1/b quotient point whose Kawamata weight is the second weight
        bool seen = false;
        for (const auto& cp : chart_singularities(y)) {
            if (cp.chart != 1 || cp.line_var) continue;
            REQUIRE(cp.point.status == PointStatus::Quotient);
            WeightVector kw = kawamata_weight(cp.point.model.ambient);
            std::vector<std::int64_t> got = kw.b, want = {s.b - s.r, 1, s.r};
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            CHECK(kw.r == d.r2());
            CHECK(got == want);
            seen = true;
        }
        CHECK(seen);

        // with x and y swapped the link returns to Y
        auto swapped = ca(s.r, (s.r - s.beta) % s.r == 0 ? 0 : s.r - s.beta, eq(s.r, s.k, s.q));
        LinkResult back = ca_link(swapped, weighted_blowup(swapped, WeightVector(s.r, {c + s.r, s.b - s.r, 1, s.r})));
        CHECK(back.linked.weight == WeightVector(s.r, {c, s.b, 1, s.r}));
    }
    CHECK(flops > 0);
}
