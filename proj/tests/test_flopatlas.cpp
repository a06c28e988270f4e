#include "birat3/flopatlas.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace birat3;

namespace {

const std::vector<std::string> V4 = {"x", "y", "z", "u"};

Poly P(const std::string& s) { return parse_poly(s, V4); }

std::string zu(std::int64_t ez, std::int64_t eu) {
    return "z^" + std::to_string(ez) + " + u^" + std::to_string(eu);
}

void check_atlas(const FlopModel& fm, const VPrimeReport& rep, const WeightVector& w) {
    for (const auto& c : fm.z1) CHECK(check_chart(fm, c).empty());
    for (const auto& c : fm.z2) CHECK(check_chart(fm, c).empty());
    for (const auto& c : rep.atlas.v_side) CHECK(check_chart(fm, c).empty());
    for (const auto& c : rep.atlas.z_side) CHECK(check_chart(fm, c).empty());

    // U'_j and U''_j agree away from the flipping curves
    const auto& v = rep.atlas.v_side;
    const auto& z = rep.atlas.z_side;
    CHECK(normalize_chart(z[1]) == normalize_chart(v[1]));
    CHECK(normalize_chart(z[2]) == normalize_chart(v[2]));
    if (fm.m < fm.k) {
        REQUIRE(v.size() == 5);
        CHECK(normalize_chart(z[4]) == normalize_chart(v[4]));
    } else {
        CHECK(v.size() == 4);
    }

    // the V-side actions on the x, y, u charts come from the weighted blow-up
    const std::size_t idx[] = {1, 2, 4};
    for (std::size_t j = 0; j < 3; ++j) {
        QuotientAction g = chart_decomposition(fm.action, w, idx[j]).action;
        CHECK(g.reduced().normalized() == v[j].action.reduced().normalized());
    }
}

}  // namespace

TEST_CASE("flop model from a cA/3 link") {
    auto x = make_model(QuotientAction(3, {1, 2, 1, 0}), V4, {"x*y + z^6 + u^5"}, "cA/r");
    LinkResult l = ca_link(x, weighted_blowup(x, WeightVector(3, {4, 2, 1, 3})));
    REQUIRE(l.flop);
    FlopModel fm = build_flop(x, l);
    CHECK(fm.f == P("z^6 + u^3"));
    CHECK(fm.v_equation == P("x*y + z^6*u + u^4"));
    CHECK(fm.action == QuotientAction(3, {1, 2, 1, 0}));
    CHECK(fm.k == 2);
    CHECK(fm.m == 2);
    CHECK(recover_source_f(fm) == P("z^6 + u^5"));

    auto neg = make_model(QuotientAction(3, {1, 2, 1, 0}), V4, {"x*y + z^6 + u^2"}, "cA/r");
    LinkResult ln = ca_link(neg, weighted_blowup(neg, WeightVector(3, {4, 2, 1, 3})));
    CHECK_THROWS_AS(build_flop(neg, ln), std::invalid_argument);
}

TEST_CASE("flop model charts") {
    FlopModel t = make_flop_model(1, 0, P("z^2 + u^3"));
    CHECK(t.z1[1].equation == P("x*y + z^2 + u^3"));
    CHECK(t.z1[0].equation == P("y + z^2*u + x^3*u^4"));
    for (const auto& c : t.z1) CHECK(check_chart(t, c).empty());
    for (const auto& c : t.z2) CHECK(check_chart(t, c).empty());

    CHECK_THROWS_AS(make_flop_model(3, 1, P("z^3 + u^2")), std::invalid_argument);  // k = 1
    CHECK_THROWS_AS(make_flop_model(1, 0, P("z^2")), std::invalid_argument);         // reducible
    CHECK_THROWS_AS(make_flop_model(3, 1, P("z^4 + u^2")), std::invalid_argument);
    CHECK_THROWS_AS(make_flop_model(3, 1, P("x*z^6 + u^2")), std::invalid_argument);
    CHECK_THROWS_AS(make_flop_model(4, 2, P("z^8 + u^2")), std::invalid_argument);
    CHECK_THROWS_AS(make_flop_model(3, 1, P("u^2")), std::invalid_argument);
}

TEST_CASE("V' with m = k") {
    FlopModel fm = make_flop_model(3, 1, P("z^6 + u^3"));
    WeightVector w = strict_weight(fm);
    CHECK(w == WeightVector(3, {4, 5, 1, 3}));
    VPrimeReport rep = v_prime(fm, w);
    CHECK(rep.uz_smooth);
    CHECK(rep.f_second == P("1 + z*u^3"));
    CHECK(rep.q_factorial == "yes");
    check_atlas(fm, rep, w);
    CHECK_THROWS_AS(v_prime(fm, WeightVector(3, {5, 4, 1, 3})), std::invalid_argument);
    CHECK_THROWS_AS(v_prime(fm, WeightVector(3, {4, 2, 1, 3})), std::invalid_argument);
}

TEST_CASE("V' with m < k") {
    FlopModel fm = make_flop_model(3, 1, P("z^6 + u"));
    CHECK(fm.m == 1);
    CHECK(fm.k == 2);
    WeightVector w = strict_weight(fm);
    CHECK(w == WeightVector(3, {4, 2, 1, 3}));
    VPrimeReport rep = v_prime(fm, w);
    CHECK(rep.f_second == P("z + u"));
    CHECK(rep.w_f_second == make_rat(1, 3));
    CHECK(rep.w_f_second < fm.m);
    check_atlas(fm, rep, w);
}

TEST_CASE("m = 1 coordinate change") {
    FlopModel fm = make_flop_model(3, 1, P("2*u + z^6"));
    FlopModel n = normalize_m1(fm);
    Poly sub = (P("u") - P("z^6")) * make_rat(1, 2);
    CHECK(fm.v_equation.compose({P("x"), P("y"), P("z"), sub}) == n.v_equation);
    CHECK(n.m == 1);
    CHECK(n.k == 2);
    CHECK_THROWS_AS(normalize_m1(make_flop_model(3, 1, P("z^6 + u^3"))), std::invalid_argument);
    CHECK_THROWS_AS(normalize_m1(make_flop_model(3, 1, P("u + z^6 + z^3*u^2"))), std::invalid_argument);
}

TEST_CASE("irreducibility in z^r and u") {
    auto a = invariant_irreducibility(P("z^6 + u^3"), 3);
    CHECK(a.outcome == Factorization::IrreducibleOverQ);
    CHECK(a.absolute);

    auto b = invariant_irreducibility(P("z^6 - u^2"), 3);
    REQUIRE(b.outcome == Factorization::Reducible);
    CHECK(b.factors.size() == 2);
    CHECK(b.factors[0] * b.factors[1] == P("z^6 - u^2"));

    auto c = invariant_irreducibility(P("z^6 + u^2"), 3);
    CHECK(c.outcome == Factorization::IrreducibleOverQ);
    CHECK_FALSE(c.absolute);

    auto d = invariant_irreducibility(P("z^3*u + z^6"), 3);
    REQUIRE(d.outcome == Factorization::Reducible);
    CHECK(d.factors[0] * d.factors[1] == P("z^3*u + z^6"));

    CHECK(invariant_irreducibility(P("u"), 3).absolute);
    CHECK(invariant_irreducibility(P("u^2"), 3).outcome == Factorization::Reducible);
    CHECK(invariant_irreducibility(P("z^3*u + u^2 + 1"), 3).absolute);
    CHECK_THROWS_AS(invariant_irreducibility(P("z^2 + u"), 3), std::invalid_argument);
    CHECK(to_string(Factorization::Undecided) == "undecided");
}

TEST_CASE("products are never reported irreducible") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> co(-3, 3), ex(0, 2);
    auto random_factor = [&]() {
        Poly p(V4);
        while (p.total_degree() < 1) {
            p = Poly(V4);
            for (int t = 0; t < 3; ++t) p.add_term({0, 0, 2 * ex(rng), ex(rng)}, Rat(co(rng)));
        }
        return p;
    };
    for (int it = 0; it < 200; ++it) {
        Poly f = random_factor() * random_factor();
        CAPTURE(f.str());
        auto res = invariant_irreducibility(f, 2);
        CHECK(res.outcome != Factorization::IrreducibleOverQ);
        if (res.outcome == Factorization::Reducible) {
            REQUIRE(res.factors.size() == 2);
            CHECK(res.factors[0] * res.factors[1] == f);
        }
    }
}

TEST_CASE("flip bookkeeping") {
    DepthEngine eng;
    FlopModel a = make_flop_model(3, 1, P("u + z^6"));
    FlipReport ra = flip_bookkeeping(a, WeightVector(3, {4, 2, 1, 3}), eng);
    CHECK(ra.v_indices == std::vector<std::int64_t>{4});
    CHECK(ra.z_indices == std::vector<std::int64_t>{1, 3});
    CHECK(ra.delta == 1);
    CHECK(ra.delta_gdep == 1);

    FlopModel b = make_flop_model(2, 1, P("z^6 + u^2"));
    FlipReport rb = flip_bookkeeping(b, WeightVector(2, {5, 1, 1, 2}), eng);
    CHECK(rb.z_indices == std::vector<std::int64_t>{3, 2});
    CHECK(rb.delta_gdep == 1);

    FlopModel c = make_flop_model(3, 1, P("z^9 + u^2"));
    CHECK_THROWS_AS(flip_bookkeeping(c, WeightVector(3, {1, 8, 1, 3}), eng), std::invalid_argument);
}

TEST_CASE("sweep over flop models") {
    DepthEngine eng;
    int cases = 0;
    for (std::int64_t r = 1; r <= 5; ++r)
        for (std::int64_t beta = 0; beta < std::max<std::int64_t>(r, 1); ++beta) {
            if (std::gcd(beta, r) != 1) continue;
            for (std::int64_t m = 1; m <= 3; ++m)
                for (int shape = 0; shape < 2; ++shape) {
                    // m < k, and m = k
                    std::string f = shape == 0 ? zu(r * (m + 1), m) : zu(r * m, m + 1);
                    if (shape == 1 && m < 2) continue;
                    FlopModel fm = make_flop_model(r, beta, P(f));
                    REQUIRE(fm.m == m);
                    for (std::int64_t b = r + 1; b < r * (m + 1) && b <= 12; ++b) {
                        if ((b - beta) % r != 0) continue;
                        CAPTURE(f);
                        CAPTURE(r);
                        CAPTURE(b);
                        WeightVector w(r, {b, r * (m + 1) - b, 1, r});
                        VPrimeReport rep = v_prime(fm, w);
                        check_atlas(fm, rep, w);
                        if (m == fm.k) CHECK(rep.uz_smooth);
                        else CHECK(rep.w_f_second < m);
                        FlipReport fr = flip_bookkeeping(fm, w, eng);
                        CHECK(fr.delta == 1);
                        CHECK(fr.delta_gdep == 1);
                        ++cases;
                    }
                }
        }
    CHECK(cases > 20);
}

TEST_CASE("Omega labels") {
    using S = DiagramStep;
    CHECK(omega_label({S::BlowUp, S::Flop, S::BlowDown}) == 1);
    CHECK(omega_label({S::BlowUp, S::BlowUp, S::Flop, S::BlowDown, S::BlowDown}) == 2);
    CHECK(omega_label({S::BlowUp, S::Flop, S::BlowUp, S::BlowDown, S::Flop, S::BlowDown}) == 2);
    CHECK(omega_label({S::Flop, S::Flop}) == 0);
    CHECK(omega_label({}) == 0);
    CHECK(omega_factorization({S::BlowUp, S::BlowDown, S::Flop, S::BlowUp, S::BlowUp, S::BlowDown, S::BlowDown}) ==
          std::vector<int>{1, 0, 2});
    CHECK_THROWS_AS(omega_label({S::BlowUp, S::BlowDown, S::BlowUp, S::BlowDown}), MalformedDiagram);
    CHECK_THROWS_AS(omega_label({S::BlowDown}), MalformedDiagram);
    CHECK_THROWS_AS(omega_label({S::BlowUp, S::Flop}), MalformedDiagram);
}
