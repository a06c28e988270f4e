// Rows of the divisorial contraction tables.
//
// Templates use {expr} for parameter arithmetic.  Slots are added to the
// equation they belong to as multiplier*slot; a slot with an empty multiplier
// is spliced into the text at [name].  Slot weights are valuations, so g >= m
// means every term has w-weight at least m.

#include "birat3/models.hpp"

#include <sstream>

namespace birat3 {
namespace {

std::vector<std::string> split(const std::string& s, char sep = ',') {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

const std::string V4 = "x,y,z,u";
const std::string V5 = "x,y,z,u,t";

SlotSpec geq(const std::string& name, std::size_t eq, const std::string& w, const std::string& vars,
             const std::string& mult = "1", const std::string& sample = "") {
    return SlotSpec{name, eq, "geq", w, split(vars), mult, sample};
}

SlotSpec homog(const std::string& name, std::size_t eq, const std::string& w, const std::string& vars,
               const std::string& mult = "1", const std::string& sample = "") {
    return SlotSpec{name, eq, "homog", w, split(vars), mult, sample};
}

ParamSpec range(const std::string& n, const std::string& lo, const std::string& hi) { return ParamSpec{n, lo, hi, ""}; }
ParamSpec derived(const std::string& n, const std::string& v) { return ParamSpec{n, "", "", v}; }

struct Row {
    TableEntry e;

    Row(const std::string& id, int table, const std::string& type, const std::string& vars) {
        e.id = id;
        e.table = table;
        e.type = type;
        e.vars = split(vars);
        e.action_a.assign(e.vars.size(), "0");
    }
    Row& action(const std::string& r, const std::string& a) {
        e.action_r = r;
        e.action_a = split(a);
        return *this;
    }
    Row& weight(const std::string& r, const std::string& b) {
        e.weight_r = r;
        e.weight_b = split(b);
        return *this;
    }
    Row& disc(const std::string& d) {
        e.discrepancy = d;
        return *this;
    }
    Row& eqs(std::vector<std::string> q) {
        e.equations = std::move(q);
        return *this;
    }
    Row& slots(std::vector<SlotSpec> s) {
        e.slots = std::move(s);
        return *this;
    }
    Row& cond(std::vector<std::string> c) {
        e.conditions = std::move(c);
        return *this;
    }
    Row& domain(std::vector<std::string> d) {
        e.domain = std::move(d);
        return *this;
    }
    Row& sweep(std::vector<ParamSpec> p) {
        e.sweep = std::move(p);
        return *this;
    }
    operator TableEntry() const { return e; }
};

std::vector<TableEntry> build() {
    std::vector<TableEntry> t;

    // cA/r
    t.push_back(Row("A1", 2, "cA/r", V4)
                    .action("r", "beta,-beta,1,r")
                    .weight("r", "b,c,a,r")
                    .disc("a/r")
                    .eqs({"x*y + z^{r*k}"})
                    .slots({geq("g", 0, "k*a", "z,u")})
                    .cond({"mod(b - a*beta, r) == 0", "b + c == r*k*a"})
                    .domain({"gcd(beta, r) == 1", "b >= 1", "c >= 1"})
                    .sweep({range("r", "1", "4"), range("beta", "if(r == 1, 0, 1)", "max(r - 1, 0)"),
                            range("k", "1", "3"), range("a", "1", "2"), range("b", "1", "r*k*a - 1"),
                            derived("c", "r*k*a - b")}));
    t.push_back(Row("A2", 2, "cA_2", V4)
                    .weight("1", "4,3,2,1")
                    .disc("3")
                    .eqs({"x^2 - y^2 + z^3 + x*u^2"})
                    .slots({geq("g", 0, "6", "x,y,z,u", "1", "y^3 + u^6")})
                    .cond({"!has(g, \"x*z\")"}));

    // cAx/r; the two alternatives of each row are selected by alt
    t.push_back(Row("Ax1", 3, "cAx/4", V4)
                    .action("4", "1,3,1,2")
                    .weight("4", "b,c,1,2")
                    .disc("1/4")
                    .eqs({"x^2 + y^2"})
                    .slots({geq("g", 0, "(2*k + 1)/2", "z,u")})
                    .cond({"b == 2*k + 1 && c == 2*k + 3 || b == 2*k + 3 && c == 2*k + 1"})
                    .domain({"alt == mod(k, 2)"})
                    .sweep({range("k", "0", "3"), range("alt", "0", "1"), derived("b", "if(alt == 0, 2*k + 1, 2*k + 3)"),
                            derived("c", "if(alt == 0, 2*k + 3, 2*k + 1)")}));
    t.push_back(Row("Ax2", 3, "cAx/4", V4)
                    .action("4", "1,3,1,2")
                    .weight("4", "b,c,1,2")
                    .disc("1/4")
                    .eqs({"x^2 + y^2"})
                    .slots({homog("p", 0, "(2*k + 1)/4", "z,u", "{lambda}*x + {mu}*y"),
                            geq("g", 0, "(2*k + 3)/2", "z,u")})
                    .cond({"b == 2*k + 5 && c == 2*k + 3 && lambda == 1 && mu == 0 || "
                           "b == 2*k + 3 && c == 2*k + 5 && lambda == 0 && mu == 1"})
                    .domain({"alt == mod(k, 2)"})
                    .sweep({range("k", "0", "3"), range("alt", "0", "1"), derived("b", "if(alt == 0, 2*k + 5, 2*k + 3)"),
                            derived("c", "if(alt == 0, 2*k + 3, 2*k + 5)"), derived("lambda", "if(alt == 0, 1, 0)"),
                            derived("mu", "1 - lambda")}));
    t.push_back(Row("Ax3", 3, "cAx/2", V4)
                    .action("2", "0,1,1,1")
                    .weight("2", "b,c,1,1")
                    .disc("1/2")
                    .eqs({"x^2 + y^2"})
                    .slots({geq("g", 0, "k", "z,u")})
                    .cond({"b == k && c == k + 1 || b == k + 1 && c == k"})
                    .domain({"alt == mod(k, 2)"})
                    .sweep({range("k", "1", "5"), range("alt", "0", "1"), derived("b", "if(alt == 0, k, k + 1)"),
                            derived("c", "if(alt == 0, k + 1, k)")}));
    t.push_back(Row("Ax4", 3, "cAx/2", V4)
                    .action("2", "0,1,1,1")
                    .weight("2", "b,c,1,1")
                    .disc("1/2")
                    .eqs({"x^2 + y^2"})
                    .slots({homog("p", 0, "k/2", "z,u", "{lambda}*x + {mu}*y"), geq("g", 0, "k + 1", "z,u")})
                    .cond({"b == k + 2 && c == k + 1 && lambda == 1 && mu == 0 || "
                           "b == k + 1 && c == k + 2 && lambda == 0 && mu == 1"})
                    .domain({"alt == mod(k, 2)"})
                    .sweep({range("k", "1", "5"), range("alt", "0", "1"), derived("b", "if(alt == 0, k + 2, k + 1)"),
                            derived("c", "if(alt == 0, k + 1, k + 2)"), derived("lambda", "if(alt == 0, 1, 0)"),
                            derived("mu", "1 - lambda")}));

    // cD, discrepancy one
    t.push_back(Row("D1", 4, "cD", V4)
                    .weight("1", "b,b - 1,1,2")
                    .disc("1")
                    .eqs({"x^2 + y^2*u + {lambda}*y*z^{k}"})
                    .slots({geq("g", 0, "l", "z,u")})
                    .cond({"b == min(k - 1, floor(l/2))"})
                    .domain({"b >= 2"})
                    .sweep({range("k", "2", "5"), range("l", "2", "6"), range("lambda", "0", "1"),
                            derived("b", "min(k - 1, floor(l/2))")}));
    t.push_back(Row("D2", 4, "cD", V4)
                    .weight("1", "b,b,1,1")
                    .disc("1")
                    .eqs({"x^2 + y^2*u + {lambda}*y*z^{k}"})
                    .slots({geq("g", 0, "2*l", "z,u")})
                    .cond({"b == min(k, l)"})
                    .sweep({range("k", "1", "4"), range("l", "1", "4"), range("lambda", "0", "1"),
                            derived("b", "min(k, l)")}));
    t.push_back(Row("D3", 4, "cD", V5)
                    .weight("1", "b + 1,b,1,1,2*b + 1")
                    .disc("1")
                    .eqs({"x^2 + u*t + {lambda}*y*z^{k}", "y^2 + t"})
                    .slots({geq("g", 0, "2*b + 2", "z,u"), homog("p", 1, "2*b", "x,z,u")})
                    .cond({"k >= b + 2"})
                    .sweep({range("b", "1", "3"), range("k", "b + 2", "b + 3"), range("lambda", "0", "1")}));
    t.push_back(Row("D4", 4, "cD", V4)
                    .weight("1", "b + 1,b,1,1")
                    .disc("1")
                    .eqs({"x^2 + y^2*u"})
                    .slots({geq("h", 0, "k", "z,u", "y"), geq("g", 0, "2*b + 1", "x,z,u")})
                    .cond({"k >= b + 1"})
                    .sweep({range("b", "1", "3"), range("k", "b + 1", "b + 2")}));
    t.push_back(Row("D5", 4, "cD", V5)
                    .weight("1", "b,b - 1,1,1,b + 1")
                    .disc("1")
                    .eqs({"x^2 + y*t", "y*u + t"})
                    .slots({geq("g", 0, "2*b", "z,u"), homog("p", 1, "b", "z,u", "1", "z^{b} + u^{b}")})
                    .cond({"has(p, \"z^{b}\")"})
                    .sweep({range("b", "2", "4")}));

    // cD, discrepancy greater than one
    t.push_back(Row("D6", 5, "cD", V4)
                    .weight("1", "b + 1,b,a,1")
                    .disc("a")
                    .eqs({"x^2 + y^2*u + z^{k}"})
                    .slots({geq("g", 0, "2*b + 1", "x,y,z,u")})
                    .cond({"a*k == 2*b + 1"})
                    .domain({"isint((2*b + 1)/a)"})
                    .sweep({range("b", "1", "4"), range("a", "1", "3"), derived("k", "(2*b + 1)/a")}));
    t.push_back(Row("D7", 5, "cD", V5)
                    .weight("1", "b + 1,b,a,1,b + 2")
                    .disc("a")
                    .eqs({"x^2 + y*t", "y*u + z^{k} + t"})
                    .slots({geq("g", 0, "2*b + 2", "y,z,u"), homog("p", 1, "b + 1", "z,u")})
                    .cond({"a*k == b + 1"})
                    .domain({"isint((b + 1)/a)"})
                    .sweep({range("b", "1", "4"), range("a", "1", "3"), derived("k", "(b + 1)/a")}));
    t.push_back(Row("D8", 5, "cD", V5)
                    .weight("1", "(b + 1)/2,(b - 1)/2,4,1,b")
                    .disc("4")
                    .eqs({"x^2 + u*t + {lambda}*z^{if(lambda == 1, (b + 1)/4, 0)}",
                          "y^2 + {mu}*z^{if(mu == 1, (b - 1)/4, 0)} + t"})
                    .slots({geq("g", 0, "b + 1", "y,z,u"), homog("p", 1, "b - 1", "x,z,u")})
                    .cond({"isint((b + 1)/4) && lambda == 1 && mu == 0 || isint((b - 1)/4) && mu == 1 && lambda == 0"})
                    .domain({"odd(b)", "lambda == 1 && isint((b + 1)/4) || lambda == 0 && isint((b - 1)/4)"})
                    .sweep({range("b", "3", "13"), range("lambda", "0", "1"), derived("mu", "1 - lambda")}));
    t.push_back(Row("D9", 5, "cD", V5)
                    .weight("1", "(b + 1)/2,(b - 1)/2,2,1,b")
                    .disc("2")
                    .eqs({"x^2 + u*t + z^{(b + 1)/2}", "y^2 + t"})
                    .slots({geq("g", 0, "b + 1", "y,z,u"), homog("p", 1, "b - 1", "x,z,u")})
                    .domain({"odd(b)"})
                    .sweep({range("b", "3", "9")}));
    t.push_back(Row("D10", 5, "cD", V4)
                    .weight("1", "b,b,2,1")
                    .disc("2")
                    .eqs({"x^2 + y^2*u + z^{b}"})
                    .slots({geq("g", 0, "2*b", "y,z,u")})
                    .sweep({range("b", "1", "5")}));
    t.push_back(Row("D11", 5, "cD_4", V4)
                    .weight("1", "3,3,1,2")
                    .disc("2")
                    .eqs({"x^2 + y^2*u + u^3"})
                    .slots({homog("p", 0, "3", "z,u", "y", "z^3"), geq("g", 0, "6", "z,u")})
                    .cond({"has(p, \"z^3\")"}));
    t.push_back(Row("D12", 5, "cD_4", V4)
                    .weight("1", "3,4,2,1")
                    .disc("3")
                    .eqs({"x^2 + y^2*u + z^3 + y*u^2"})
                    .slots({geq("g", 0, "6", "y,z,u")}));

    // cD/r, discrepancy 1/r
    t.push_back(Row("D13", 6, "cD/3", V4)
                    .action("3", "0,2,1,1")
                    .weight("3", "3,2,4,1")
                    .disc("1/3")
                    .eqs({"x^2 + y^3"})
                    .slots({geq("g", 0, "k", "y,z,u", "1", "z^{if(k == 2, 1, 2)}*u^{if(k == 2, 2, 1)}")})
                    .cond({"k == 2 && (has(g, \"z*u^2\") || has(g, \"z^3\")) || k == 3 && has(g, \"z^2*u\")"})
                    .sweep({range("k", "2", "3")}));
    t.push_back(Row("D14", 6, "cD/3", V4)
                    .action("3", "0,2,1,1")
                    .weight("3", "6,5,4,1")
                    .disc("1/3")
                    .eqs({"x^2 + y^3 + z^3"})
                    .slots({geq("g", 0, "4", "y,z,u")}));
    t.push_back(Row("D15", 6, "cD/2", V4)
                    .action("2", "1,1,1,0")
                    .weight("2", "3,1,1,2")
                    .disc("1/2")
                    .eqs({"x^2 + y*z*u"})
                    .slots({geq("g", 0, "2", "y,z,u")}));
    t.push_back(Row("D16", 6, "cD/2", V4)
                    .action("2", "1,1,1,0")
                    .weight("2", "3,b,c,d")
                    .disc("1/2")
                    .eqs({"x^2 + y*z*u"})
                    .slots({geq("g", 0, "3", "y,z,u")})
                    .cond({"b == 3 && c == 1 && d == 2 || b == 1 && c == 1 && d == 4"})
                    .sweep({range("alt", "0", "1"), derived("b", "if(alt == 0, 3, 1)"), derived("c", "1"),
                            derived("d", "if(alt == 0, 2, 4)")}));
    t.push_back(Row("D17", 6, "cD/2", V5)
                    .action("2", "1,1,1,0,1")
                    .weight("2", "3,1,1,2,5")
                    .disc("1/2")
                    .eqs({"x^2 + y*t", "z*u + y^3 + t"})
                    .slots({geq("g", 0, "3", "z,u")}));
    t.push_back(Row("D18", 6, "cD/2", V4)
                    .action("2", "1,1,1,0")
                    .weight("2", "b,b - 2,1,4")
                    .disc("1/2")
                    .eqs({"x^2 + y^2*u + {lambda}*y*z^{k}"})
                    .slots({geq("g", 0, "l", "z,u")})
                    .cond({"b == min(k - 2, ceil(l/2) - 1)"})
                    .domain({"odd(b)", "b >= 3", "lambda == 0 || odd(k)"})
                    .sweep({range("k", "3", "7"), range("l", "2", "8"), range("lambda", "0", "1"),
                            derived("b", "min(k - 2, ceil(l/2) - 1)")}));
    t.push_back(Row("D19", 6, "cD/2", V4)
                    .action("2", "1,1,1,0")
                    .weight("2", "b,b,1,2")
                    .disc("1/2")
                    .eqs({"x^2 + y^2*u + {lambda}*y*z^{k}"})
                    .slots({geq("g", 0, "l", "z,u")})
                    .cond({"b == min(k, l)"})
                    .domain({"odd(b)", "lambda == 0 || odd(k)"})
                    .sweep({range("k", "1", "5"), range("l", "1", "5"), range("lambda", "0", "1"),
                            derived("b", "min(k, l)")}));
    t.push_back(Row("D20", 6, "cD/2", V5)
                    .action("2", "1,1,1,0,0")
                    .weight("2", "b + 2,b,1,2,2*b + 2")
                    .disc("1/2")
                    .eqs({"x^2 + u*t + {lambda}*y*z^{k}", "y^2 + t"})
                    .slots({geq("g", 0, "b + 2", "z,u"), homog("p", 1, "b", "x,z,u")})
                    .cond({"k >= b + 4"})
                    .domain({"odd(b)", "lambda == 0 || odd(k)"})
                    .sweep({range("b", "1", "5"), range("k", "b + 4", "b + 5"), range("lambda", "0", "1")}));
    t.push_back(Row("D21", 6, "cD/2", V4)
                    .action("2", "1,1,1,0")
                    .weight("2", "b + 2,b,1,2")
                    .disc("1/2")
                    .eqs({"x^2 + y^2*u"})
                    .slots({geq("h", 0, "k", "z,u", "y"), geq("g", 0, "b + 1", "x,z,u")})
                    .cond({"k >= b + 2"})
                    .domain({"odd(b)"})
                    .sweep({range("b", "1", "5"), range("k", "b + 2", "b + 3")}));
    t.push_back(Row("D22", 6, "cD/2", V5)
                    .action("2", "1,1,1,0,1")
                    .weight("2", "b,b - 2,1,2,b + 2")
                    .disc("1/2")
                    .eqs({"x^2 + y*t", "y*u + z^{b} + t"})
                    .slots({geq("g", 0, "2*b", "z,u")})
                    .domain({"odd(b)", "b >= 3"})
                    .sweep({range("b", "3", "9")}));

    // cD/2, larger discrepancies
    t.push_back(Row("D23", 7, "cD/2", V4)
                    .action("2", "1,1,1,0")
                    .weight("2", "b + 2,b,a,2")
                    .disc("a/2")
                    .eqs({"x^2 + y^2*u + z^{m}"})
                    .slots({geq("g", 0, "b + 1", "x,y,z,u")})
                    .cond({"m*a == 2*b + 2", "odd(a) && odd(b)"})
                    .domain({"odd(a)", "odd(b)", "isint((2*b + 2)/a)"})
                    .sweep({range("b", "1", "7"), range("a", "1", "5"), derived("m", "(2*b + 2)/a")}));
    t.push_back(Row("D24", 7, "cD/2", V5)
                    .action("2", "1,1,1,0,1")
                    .weight("2", "b + 2,b,a,2,b + 4")
                    .disc("a/2")
                    .eqs({"x^2 + y*t", "y*u + z^{m} + t"})
                    .slots({geq("g", 0, "b + 2", "z,u"), homog("p", 1, "b/2 + 1", "z,u")})
                    .cond({"m*a == b + 2", "mod(a - b, 2) == 0"})
                    .domain({"odd(a)", "odd(b)", "isint((b + 2)/a)"})
                    .sweep({range("b", "1", "7"), range("a", "1", "5"), derived("m", "(b + 2)/a")}));
    t.push_back(Row("D25", 7, "cD/2", V4)
                    .action("2", "1,1,1,0")
                    .weight("1", "2*b,2*b,1,1")
                    .disc("1")
                    .eqs({"x^2 + y^2*u + z^{4*b}"})
                    .slots({geq("g", 0, "4*b", "y,z,u")})
                    .sweep({range("b", "1", "3")}));
    t.push_back(Row("D26", 7, "cD/2", V4)
                    .action("2", "1,1,1,0")
                    .weight("1", "2,1,2,1")
                    .disc("1")
                    .eqs({"x^2 + y*z*u + y^4 + z^{b} + u^{c}"})
                    .cond({"b >= 4 && c >= 4", "even(b)"})
                    .sweep({range("b", "4", "6"), range("c", "4", "6")}));
    t.push_back(Row("D27", 7, "cD/2", V5)
                    .action("2", "1,1,1,0,0")
                    .weight("1", "2,1,1,1,3")
                    .disc("1")
                    .eqs({"x^2 + u*t + y^4 + z^4", "y*z + u^2 + t"}));
    t.push_back(Row("D28", 7, "cD/2", V5)
                    .action("2", "1,1,1,0,0")
                    .weight("1", "b + 1,b,1,1,2*b + 1")
                    .disc("1")
                    .eqs({"x^2 + u*t", "y^2 + t"})
                    .slots({geq("g", 0, "2*b + 2", "y,z,u"), homog("p", 1, "2*b", "x,z,u", "1", "z^{2*b}")})
                    .cond({"odd(b) || has(p, \"x*z^{b - 1}\") || has(p, \"z^{2*b}\")"})
                    .sweep({range("b", "1", "4")}));
    t.push_back(Row("D29", 7, "cD/2", V5)
                    .action("2", "1,1,1,0,0")
                    .weight("1", "b + 1,b,2,1,2*b + 1")
                    .disc("2")
                    .eqs({"x^2 + u*t", "y^2 + t"})
                    .slots({geq("g", 0, "2*b + 2", "y,z,u"),
                            homog("p", 1, "2*b", "x,z,u", "1",
                                  "x^{if(even(b), 0, 1)}*z^{if(even(b), b, (b - 1)/2)}")})
                    .cond({"has(p, \"x*z^{if(odd(b), (b - 1)/2, 0)}\") || has(p, \"z^{b}\")"})
                    .domain({"even(b) || mod(b, 4) == 3"})
                    .sweep({range("b", "2", "7")}));

    // cE, discrepancy one
    struct E {
        const char* id;
        int table;
        const char* type;
        const char* weight;
        const char* gmin;
        const char* gvars;
        const char* pmult;  // nullptr when the row has no p slot
        const char* pw;
        const char* pvars;
    };
    const E erows[] = {
        {"E2", 8, "cE_6,7", "3,2,1,1", "5", "y,z,u", "x", "2", "z,u"},
        {"E3", 8, "cE", "3,2,2,1", "6", "y,z,u", nullptr, "", ""},
        {"E4", 8, "cE", "4,3,2,1", "8", "y,z,u", "y^2", "2", "z,u"},
        {"E5", 8, "cE", "5,3,2,1", "9", "y,z,u", "x", "4", "y,z,u"},
        {"E6", 8, "cE_7,8", "5,4,2,1", "10", "y,z,u", "y^2", "3", "z,u"},
        {"E7", 8, "cE", "6,4,3,1", "12", "y,z,u", nullptr, "", ""},
        {"E8", 8, "cE_7,8", "7,5,3,1", "14", "y,z,u", "y^2", "4", "z,u"},
        {"E9", 8, "cE_7,8", "8,5,3,1", "15", "y,z,u", "x", "7", "y,z,u"},
        {"E10", 8, "cE_7,8", "9,6,4,1", "18", "y,z,u", nullptr, "", ""},
        {"E11", 8, "cE_8", "10,7,4,1", "20", "y,z,u", "y^2", "6", "z,u"},
        {"E12", 8, "cE_8", "12,8,5,1", "24", "y,z,u", nullptr, "", ""},
        {"E13", 8, "cE_8", "15,10,6,1", "30", "y,z,u", nullptr, "", ""},
    };
    t.push_back(Row("E1", 8, "cE_6", V4)
                    .weight("1", "2,2,1,1")
                    .disc("1")
                    .eqs({"x^2 + y^3"})
                    .slots({geq("g", 0, "4", "y,z,u", "1", "z^4 + y*u^2")})
                    .cond({"deg(g, \"y\") <= 1"}));
    for (const E& r : erows) {
        std::vector<SlotSpec> s;
        if (r.pmult) s.push_back(homog("p", 0, r.pw, r.pvars, r.pmult));
        s.push_back(geq("g", 0, r.gmin, r.gvars));
        t.push_back(Row(r.id, r.table, r.type, V4).weight("1", r.weight).disc("1").eqs({"x^2 + y^3"}).slots(s));
    }
    t.push_back(Row("E14", 9, "cE_6,7", V5)
                    .weight("1", "3,2,1,1,5")
                    .disc("1")
                    .eqs({"x^2 + y^3 + t*z", "t"})
                    .slots({geq("g", 0, "6", "y,z,u"), homog("p", 1, "4", "x,y,z,u", "1", "y^2 + z^3*u + u^4")})
                    .cond({"attest: p is irreducible"}));
    t.push_back(Row("E15", 9, "cE_6", V4)
                    .weight("1", "4,2,1,1")
                    .disc("1")
                    .eqs({"x^2 + y^3"})
                    .slots({homog("p", 0, "2", "z,u", "x"), geq("g", 0, "6", "x,y,z,u")}));
    t.push_back(Row("E16", 9, "cE_7", V5)
                    .weight("1", "3,2,1,1,4")
                    .disc("1")
                    .eqs({"x^2 + y^3", "t"})
                    .slots({homog("p", 0, "2", "z,u", "t"), geq("g", 0, "6", "y,z,u"),
                            homog("q", 1, "3", "y,z,u", "1", "y*u + z^3")})
                    .cond({"attest: q is irreducible"}));
    t.push_back(Row("E17", 9, "cE_7", V4)
                    .weight("1", "3,3,1,1")
                    .disc("1")
                    .eqs({"x^2 + y^3 + y*z^3"})
                    .slots({geq("g", 0, "6", "y,z,u", "1", "y^2*u^2")})
                    .cond({"has(g, \"y^2*u^2\")"}));
    t.push_back(Row("E18", 9, "cE_7,8", V5)
                    .weight("1", "5,3,2,1,7")
                    .disc("1")
                    .eqs({"x^2 + y*t", "y^2 + t"})
                    .slots({geq("g", 0, "10", "y,z,u"), homog("p", 1, "6", "y,z,u")})
                    .cond({"attest: y^2 + p is irreducible"}));

    // cE, larger discrepancies
    t.push_back(Row("E19", 10, "cE_6", V4)
                    .weight("1", "3,3,2,1")
                    .disc("2")
                    .eqs({"x^2 + (y + [p])^3 + y*u^3"})
                    .slots({homog("p", 0, "2", "z,u", "", "z"), geq("g", 0, "6", "z,u")})
                    .cond({"has(p, \"z\")"}));
    t.push_back(Row("E20", 10, "cE_7", V5)
                    .weight("1", "5,3,2,2,7")
                    .disc("2")
                    .eqs({"x^2 + y*t", "y^2 + t"})
                    .slots({geq("g", 0, "10", "y,z,u"), homog("p", 1, "6", "z,u")})
                    .cond({"attest: gcd(p, g_10) = 1"}));
    t.push_back(Row("E21", 10, "cE_7,8", V4)
                    .weight("1", "7,5,3,2")
                    .disc("2")
                    .eqs({"x^2 + y^3 + u^7"})
                    .slots({geq("g", 0, "14", "z,u", "1", "z^5")})
                    .cond({"has(g, \"y*z^3\") || has(g, \"z^5\") || has(g, \"z^4*u\")"}));

    // cE/2
    const char* e2[][4] = {{"E22", "3,2,3,1", "3", ""},
                           {"E23", "5,4,3,1", "5", ""},
                           {"E24", "7,4,3,1", "6", "5/2"},
                           {"E25", "9,6,5,1", "9", ""}};
    for (const auto& r : e2) {
        std::vector<SlotSpec> s;
        if (*r[3]) s.push_back(homog("p", 0, r[3], "y,z,u", "x"));
        s.push_back(geq("g", 0, r[2], "y,z,u"));
        t.push_back(
            Row(r[0], 11, "cE/2", V4).action("2", "1,0,1,1").weight("2", r[1]).disc("1/2").eqs({"x^2 + y^3"}).slots(s));
    }
    t.push_back(Row("E26", 11, "cE/2", V4)
                    .action("2", "1,0,1,1")
                    .weight("1", "4,3,2,1")
                    .disc("1")
                    .eqs({"x^2 + y^3 + z^4 + u^8"})
                    .slots({geq("g", 0, "8", "y,z,u")}));
    return t;
}

}  // namespace

const std::vector<TableEntry>& table_registry() {
    static const std::vector<TableEntry> rows = build();
    return rows;
}

}  // namespace birat3
