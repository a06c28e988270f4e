#include "birat3/expr.hpp"

#include <doctest.h>

using namespace birat3;

namespace {

Rat ev(const std::string& s, const std::map<std::string, Rat>& p = {}) {
    std::map<std::string, Poly> none;
    ExprEnv env{&p, &none, {"x", "y", "z", "u"}};
    return eval_expr(s, env);
}

}  // namespace

TEST_CASE("arithmetic and precedence") {
    CHECK(ev("1 + 2*3") == 7);
    CHECK(ev("(1 + 2)*3") == 9);
    CHECK(ev("2^3^2") == 512);
    CHECK(ev("-2^2") == -4);
    CHECK(ev("7/2") == make_rat(7, 2));
    CHECK(ev("r*k*a - b", {{"r", 3}, {"k", 2}, {"a", 1}, {"b", 4}}) == 2);
}

TEST_CASE("builtins") {
    CHECK(ev("mod(-1, 3)") == 2);
    CHECK(ev("gcd(4, 6)") == 2);
    CHECK(ev("max(2, 5)") == 5);
    CHECK(ev("if(1 == 2, 7, 8)") == 8);
    CHECK(ev("3 >= 3 && 2 < 1 || 1 != 0") == 1);
    CHECK(ev("!(2 == 2)") == 0);
}

TEST_CASE("unbound names are reported") {
    CHECK_THROWS_AS(ev("beta + 1"), UnboundParameter);
    try {
        ev("q*2");
    } catch (const UnboundParameter& e) {
        CHECK(e.name == "q");
    }
}

TEST_CASE("slot functions") {
    std::vector<std::string> v = {"x", "y", "z", "u"};
    std::map<std::string, Rat> p;
    std::map<std::string, Poly> s = {{"g", parse_poly("z^3 + y*u^2", v)}, {"h", Poly(v)}};
    ExprEnv env{&p, &s, v};
    CHECK(Expr::parse("has(g, \"z^3\")").truth(env));
    CHECK_FALSE(Expr::parse("has(g, \"z*u\")").truth(env));
    CHECK(eval_expr("deg(g, \"u\")", env) == 2);
    CHECK(eval_expr("order(g)", env) == 3);
    CHECK(Expr::parse("iszero(h)").truth(env));
}

TEST_CASE("interpolation of templates") {
    std::map<std::string, Rat> p = {{"r", 3}, {"k", 2}};
    std::map<std::string, Poly> none;
    ExprEnv env{&p, &none, {}};
    CHECK(interpolate("x*y + z^{r*k}", env) == "x*y + z^6");
    CHECK(interpolate("{k/2}*x", env) == "1*x");
    CHECK(Expr::parse("a + b*c").parameters() == std::set<std::string>{"a", "b", "c"});
    CHECK(Expr::parse(" beta ").is_identifier());
    CHECK_FALSE(Expr::parse("beta + 1").is_identifier());
}
