#include "birat3/blowup.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace birat3;

namespace {

const std::vector<std::string> V4 = {"x", "y", "z", "u"};
const std::vector<std::string> V3 = {"x", "y", "z"};

SingularityModel gor(const std::string& f) { return make_model(QuotientAction::trivial_action(4), V4, {f}, "cA/r"); }
SingularityModel quot(std::int64_t r, std::vector<std::int64_t> a) { return make_model(QuotientAction(r, a), V3, {}, "quotient"); }
SingularityModel ca3(const std::string& f = "x*y + z^6 + u^2") {
    return make_model(QuotientAction(3, {1, 2, 1, 0}), V4, {f}, "cA/r");
}

// Jacobian of the monomial chart map blows up by y_i^{sum b/r - 1}; the strict
// transform removes y_i^{w(f)}, so the relative canonical divisor has this coefficient.
Rat jacobian_discrepancy(const Poly& f, const WeightVector& w, std::size_t i) {
    MonomialMap phi = chart_map(w, i);
    // log-derivative of det(d x / d y) along y_i: sum of exponents of y_i in the
    // images, minus one for the y_i column
    Rat jac = 0;
    for (std::size_t k = 0; k < w.n(); ++k) jac += phi.image[k][i - 1];
    jac -= 1;
    RPoly img = phi.apply(f);
    return jac - img.min_exponent(i - 1);
}

}  // namespace

TEST_CASE("discrepancy examples") {
    CHECK(weighted_blowup(gor("x*y + z^2 + u^7"), WeightVector(1, {1, 1, 1, 1})).discrepancy == 1);
    CHECK(weighted_blowup(quot(2, {1, 1, 1}), WeightVector(2, {1, 1, 1})).discrepancy == make_rat(1, 2));
    CHECK(weighted_blowup(ca3(), WeightVector(3, {4, 2, 1, 3})).discrepancy == make_rat(1, 3));
    CHECK(discrepancy_formula(WeightVector(1, {1, 1, 1}), {}) == 2);
    auto a2 = gor("x^2 - y^2 + z^3 + x*u^2 + y^3 + u^6");
    Contraction c2 = weighted_blowup(a2, WeightVector(1, {4, 3, 2, 1}));
    CHECK(c2.discrepancy == 3);
    CHECK_FALSE(is_w_morphism(c2));
    CHECK_THROWS_AS(weighted_blowup(ca3(), WeightVector(3, {2, 2, 1, 3})), CompatibilityError);
}

TEST_CASE("chart data of the ordinary blow-up") {
    Contraction c = weighted_blowup(gor("x*y + z^2 + u^7"), WeightVector(1, {1, 1, 1, 1}));
    REQUIRE(c.charts.size() == 4);
    CHECK(c.charts[3].label == "U_u");
    CHECK(c.charts[3].equations[0].str() == parse_poly("x*y + z^2 + u^5", V4).str());
    CHECK(is_w_morphism(c));
    auto pts = chart_singularities(c);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].chart_label == "U_u");
    CHECK(pts[0].locus == "origin");
    CHECK(pts[0].point.status == PointStatus::CA);
    CHECK(pts[0].point.model.key() == gor("x*y + z^2 + u^5").key());
}

TEST_CASE("Kawamata blow-ups of quotient points") {
    Contraction c = weighted_blowup(quot(2, {1, 1, 1}), WeightVector(2, {1, 1, 1}));
    CHECK(is_w_morphism(c));
    CHECK(chart_singularities(c).empty());

    Contraction c3 = weighted_blowup(quot(3, {1, 2, 1}), kawamata_weight(QuotientAction(3, {1, 2, 1})));
    auto pts = chart_singularities(c3);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].point.status == PointStatus::Quotient);
    CHECK(pts[0].point.model.ambient == QuotientAction(2, {1, 1, 1}));

    auto w1 = enumerate_w_morphisms(quot(2, {1, 1, 1}));
    CHECK(w1.complete);
    REQUIRE(w1.contractions.size() == 1);
    CHECK(w1.contractions[0].weight == WeightVector(2, {1, 1, 1}));
}

TEST_CASE("smooth point blow-up has no singular points") {
    auto m = make_model(QuotientAction::trivial_action(3), V3, {}, "smooth");
    auto c = weighted_blowup(m, WeightVector(1, {1, 1, 1}));
    CHECK(c.discrepancy == 2);
    CHECK(chart_singularities(c).empty());
    CHECK(enumerate_w_morphisms(m).contractions.empty());
}

TEST_CASE("w-morphisms over cA points") {
    auto w = enumerate_w_morphisms(ca3());
    CHECK(w.complete);
    REQUIRE(w.contractions.size() == 2);
    CHECK(w.contractions[0].weight == WeightVector(3, {1, 5, 1, 3}));
    CHECK(w.contractions[1].weight == WeightVector(3, {4, 2, 1, 3}));
    for (const auto& c : w.contractions) {
        CHECK(is_w_morphism(c));
        // v_E(z) = a/r with a = 1, v_E(u) = 1
        CHECK(c.weight.value(2) == make_rat(1, 3));
        CHECK(c.weight.value(3) == 1);
    }

    auto g = enumerate_w_morphisms(gor("x*y + z^2 + u^3"));
    REQUIRE(g.contractions.size() == 1);
    CHECK(g.contractions[0].weight == WeightVector(1, {1, 1, 1, 1}));
}

TEST_CASE("cA enumeration agrees with a brute-force search") {
    // every (b, c, a) with b + c = r k a, b = a beta mod r, weight of g at least k a,
    // discrepancy 1/r
    for (std::int64_t r : {1, 2, 3, 4, 5}) {
        for (std::int64_t beta = 1; beta < std::max<std::int64_t>(r, 2); ++beta) {
            if (std::gcd(beta, r) != 1) continue;
            for (int k = 1; k <= 3; ++k) {
                std::string f = "x*y + z^" + std::to_string(r * k) + " + u^" + std::to_string(k + 1);
                QuotientAction g = r == 1 ? QuotientAction::trivial_action(4) : QuotientAction(r, {beta, r - beta, 1, 0});
                auto m = make_model(g, V4, {f}, "cA/r");
                if (!validate_normal_form(m).valid) continue;
                std::set<WeightVector> oracle;
                for (std::int64_t a = 1; a <= 3; ++a)
                    for (std::int64_t b = 1; b < r * k * a; ++b) {
                        std::int64_t c = r * k * a - b;
                        if (r > 1 && (b - a * beta) % r != 0) continue;
                        if (std::gcd(a, r) != 1) continue;
                        WeightVector w(r, {b, c, a, r});
                        if (!compatibility(g, w)) continue;
                        if (weight_of(parse_poly(f, V4) - parse_poly("x*y", V4), w) < k * a) continue;
                        if (discrepancy_formula(w, m.equations) != make_rat(1, r)) continue;
                        oracle.insert(w);
                    }
                std::set<WeightVector> got;
                for (const auto& c : enumerate_w_morphisms(m).contractions) got.insert(c.weight);
                CAPTURE(f);
                CAPTURE(r);
                CHECK(got == oracle);
            }
        }
    }
}

TEST_CASE("formula discrepancy equals the Jacobian computation") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> wd(1, 5), ed(0, 6);
    int tried = 0;
    while (tried < 40) {
        WeightVector w(1, {wd(rng), wd(rng), wd(rng), wd(rng)});
        Poly f(V4);
        for (int t = 0; t < 4; ++t) {
            Exps e = {ed(rng), ed(rng), ed(rng), ed(rng)};
            if (std::accumulate(e.begin(), e.end(), 0) < 2) continue;
            f.add_term(e, Rat(t + 1));
        }
        if (f.is_zero()) continue;
        ++tried;
        auto m = make_model(QuotientAction::trivial_action(4), V4, {}, "cDV-other");
        m.equations = {f};
        Contraction c = weighted_blowup(m, w);
        for (std::size_t i = 1; i <= 4; ++i) CHECK(jacobian_discrepancy(f, w, i) == c.discrepancy);
    }
}

TEST_CASE("local recognition") {
    auto lp = classify_local(QuotientAction::trivial_action(4), V4, {parse_poly("x*y + x*z^2 + y*u + z^3 + u^4", V4)});
    REQUIRE(lp.status == PointStatus::CA);
    // (x + u)(y + z^2) - u z^2 + z^3 + u^4
    CHECK(validate_normal_form(lp.model).valid);
    // smooth after eliminating y
    auto s = classify_local(QuotientAction::trivial_action(4), V4, {parse_poly("y + z^2 + u^7*x^5", V4)});
    CHECK(s.status == PointStatus::Smooth);
    CHECK(classify_local(QuotientAction::trivial_action(4), V4, {parse_poly("1 + x*y", V4)}).status == PointStatus::Absent);
    // reflections are absorbed
    CHECK(classify_local(QuotientAction(2, {1, 0, 0}), V3, {}).status == PointStatus::Smooth);
    auto q = classify_local(QuotientAction(5, {2, 3, 1}), V3, {});
    CHECK(q.status == PointStatus::Quotient);
    CHECK(q.model.ambient == QuotientAction(5, {1, 2, 3}).normalized());
    CHECK(canonical_quotient(QuotientAction(5, {3, 2, 4})).key() == canonical_quotient(QuotientAction(5, {1, 4, 2})).key());
}

TEST_CASE("table-guided enumeration") {
    auto e = make_model(QuotientAction(2, {1, 0, 1, 1}), V4, {"x^2 + y^3 + y*z^4 + z^6 + u^6"}, "cE/2");
    auto w = enumerate_w_morphisms(e);
    for (const auto& c : w.contractions) CHECK(is_w_morphism(c));
    auto d = make_model(QuotientAction::trivial_action(4), V4, {"x^2 + y^3 + z^3 + u^3"}, "cD");
    auto wd = enumerate_w_morphisms(d);
    CHECK_FALSE(wd.complete);
    for (const auto& c : wd.contractions) CHECK(is_w_morphism(c));
}
