#include "birat3/models.hpp"

#include "birat3/blowup.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace birat3 {

// ---------------------------------------------------------------------------
// SingularityModel

std::string SingularityModel::key() const {
    std::string s = ambient.str() + "[";
    for (std::size_t i = 0; i < vars.size(); ++i) s += (i ? "," : "") + vars[i];
    s += "]";
    for (const auto& f : equations) s += "{" + f.str() + "}";
    return s;
}

std::string SingularityModel::str() const {
    if (equations.empty()) return ambient.str();
    std::string s;
    for (std::size_t i = 0; i < equations.size(); ++i) s += (i ? ", " : "") + equations[i].str();
    return s + " in " + ambient.str();
}

SingularityModel make_model(const QuotientAction& g, std::vector<std::string> vars, const std::vector<std::string>& eqs,
                            std::string cls, std::map<std::string, Rat> params) {
    if (g.n() != vars.size()) throw std::invalid_argument("action and variable list differ in length");
    SingularityModel m;
    m.ambient = g;
    m.vars = std::move(vars);
    for (const auto& e : eqs) m.equations.push_back(parse_poly(e, m.vars));
    m.declared_class = std::move(cls);
    m.params = std::move(params);
    return m;
}

std::int64_t cartier_index(const SingularityModel& m) {
    QuotientAction g = m.ambient.reduced();
    if (g.r == 1) return 1;
    std::int64_t c = std::accumulate(g.a.begin(), g.a.end(), std::int64_t{0});
    for (const auto& f : m.equations) {
        auto ch = try_character(f, g);
        if (!ch) throw std::invalid_argument("equation is not semi-invariant: " + f.str());
        c -= *ch;
    }
    return g.r / gcd64(mod64(c, g.r), g.r);
}

nlohmann::json rat_json(const Rat& v) {
    if (is_integer(v) && boost::multiprecision::abs(num(v)) < Int(1) << 52) return to_i64(v);
    return to_string(v);
}

namespace {

Rat json_rat(const nlohmann::json& j, const std::string& ptr) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const std::exception& e) {
            throw SchemaError(ptr, e.what());
        }
    }
    throw SchemaError(ptr, "expected an integer or a \"p/q\" string");
}

void only_keys(const nlohmann::json& j, const std::string& ptr, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw SchemaError(ptr.empty() ? "/" : ptr, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; });
        if (!ok) throw SchemaError(ptr + "/" + it.key(), "unknown field");
    }
}

const nlohmann::json& need(const nlohmann::json& j, const std::string& ptr, const char* k) {
    if (!j.contains(k)) throw SchemaError(ptr + "/" + k, "missing field");
    return j.at(k);
}

}  // namespace

nlohmann::json model_to_json(const SingularityModel& m) {
    nlohmann::json j;
    j["ambient"] = {{"dim", m.vars.size()}, {"vars", m.vars}, {"index", m.ambient.r}, {"action", m.ambient.a}};
    j["equations"] = nlohmann::json::array();
    for (const auto& f : m.equations) j["equations"].push_back(f.str());
    j["declared_class"] = m.declared_class;
    j["params"] = nlohmann::json::object();
    for (const auto& [k, v] : m.params) j["params"][k] = rat_json(v);
    return j;
}

SingularityModel model_from_json(const nlohmann::json& j, const std::string& ptr) {
    only_keys(j, ptr, {"ambient", "equations", "declared_class", "params"});
    const auto& amb = need(j, ptr, "ambient");
    const std::string ap = ptr + "/ambient";
    only_keys(amb, ap, {"dim", "vars", "index", "action"});
    const auto& vars = need(amb, ap, "vars");
    if (!vars.is_array() || vars.empty()) throw SchemaError(ap + "/vars", "expected a nonempty array of names");
    std::vector<std::string> names;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (!vars[i].is_string()) throw SchemaError(ap + "/vars/" + std::to_string(i), "expected a string");
        names.push_back(vars[i].get<std::string>());
    }
    if (names.size() < 2 || names.size() > 5) throw SchemaError(ap + "/vars", "between 2 and 5 variables");
    if (amb.contains("dim")) {
        if (!amb["dim"].is_number_integer() || amb["dim"].get<std::int64_t>() != static_cast<std::int64_t>(names.size()))
            throw SchemaError(ap + "/dim", "must equal the number of variables");
    }
    std::int64_t r = 1;
    if (amb.contains("index")) {
        if (!amb["index"].is_number_integer() || amb["index"].get<std::int64_t>() < 1)
            throw SchemaError(ap + "/index", "expected a positive integer");
        r = amb["index"].get<std::int64_t>();
    }
    std::vector<std::int64_t> a(names.size(), 0);
    if (amb.contains("action")) {
        const auto& act = amb["action"];
        if (!act.is_array() || act.size() != names.size())
            throw SchemaError(ap + "/action", "expected one integer per variable");
        for (std::size_t i = 0; i < act.size(); ++i) {
            if (!act[i].is_number_integer()) throw SchemaError(ap + "/action/" + std::to_string(i), "expected an integer");
            a[i] = act[i].get<std::int64_t>();
        }
    }
    SingularityModel m;
    m.ambient = QuotientAction(r, a);
    m.vars = names;
    if (j.contains("equations")) {
        const auto& eqs = j["equations"];
        if (!eqs.is_array() || eqs.size() > 2) throw SchemaError(ptr + "/equations", "expected at most two strings");
        for (std::size_t i = 0; i < eqs.size(); ++i) {
            const std::string ep = ptr + "/equations/" + std::to_string(i);
            if (!eqs[i].is_string()) throw SchemaError(ep, "expected a string");
            try {
                m.equations.push_back(parse_poly(eqs[i].get<std::string>(), names));
            } catch (const PolyParseError& e) {
                throw SchemaError(ep, e.what());
            }
        }
    }
    const auto& cls = need(j, ptr, "declared_class");
    if (!cls.is_string()) throw SchemaError(ptr + "/declared_class", "expected a string");
    m.declared_class = cls.get<std::string>();
    if (std::find(kKnownClasses.begin(), kKnownClasses.end(), m.declared_class) == kKnownClasses.end())
        throw SchemaError(ptr + "/declared_class", "unknown class '" + m.declared_class + "'");
    if (j.contains("params")) {
        const auto& ps = j["params"];
        if (!ps.is_object()) throw SchemaError(ptr + "/params", "expected an object");
        for (auto it = ps.begin(); it != ps.end(); ++it) m.params[it.key()] = json_rat(it.value(), ptr + "/params/" + it.key());
    }
    return m;
}

// ---------------------------------------------------------------------------
// Table 1 validator

namespace {

bool uses_only(const Poly& f, std::initializer_list<std::size_t> idx) {
    for (const auto& [e, c] : f.terms())
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] && std::find(idx.begin(), idx.end(), i) == idx.end()) return false;
    return true;
}

Exps mono(std::size_t n, std::initializer_list<std::pair<std::size_t, int>> p) {
    Exps e(n, 0);
    for (auto [i, k] : p) e[i] += k;
    return e;
}

// f minus the listed monomials; false when one of them is absent
bool strip(const Poly& f, const std::vector<Exps>& fixed, Poly& rest) {
    rest = f;
    for (const auto& e : fixed) {
        Rat c = f.coeff(e);
        if (c == 0) return false;
        rest.add_term(e, -c);
    }
    return true;
}

bool in_m(const Poly& g, int k) { return g.is_zero() || g.order() >= k; }

std::string ordinal_m(int k) { return "m^" + std::to_string(k); }

// a cubic form is the cube of a linear form iff its partial derivatives are proportional
bool is_linear_cube(const Poly& c) {
    std::vector<Poly> d;
    for (std::size_t i = 0; i < c.nvars(); ++i) {
        Poly p = c.derivative(i);
        if (!p.is_zero()) d.push_back(p);
    }
    if (d.empty()) return false;
    const auto& [e0, a0] = *d[0].terms().begin();
    for (std::size_t k = 1; k < d.size(); ++k) {
        Rat b0 = d[k].coeff(e0);
        if (d[k] * a0 != d[0] * b0) return false;
    }
    return true;
}

void check_gorenstein_cdv(const SingularityModel& m, ValidationReport& rep) {
    const Poly& f = m.equations[0];
    if (f.order() != 2) {
        rep.fail("order of f at the origin is " + std::to_string(f.order()) + ", expected 2");
        return;
    }
    if (m.declared_class == "cDV-other") return;
    Poly q = f.homogeneous_part(2);
    if (q.size() != 1) {
        rep.fail("quadratic part " + q.str() + " is not the square of a coordinate");
        return;
    }
    const Exps& e = q.terms().begin()->first;
    auto it = std::find(e.begin(), e.end(), 2);
    if (it == e.end()) {
        rep.fail("quadratic part " + q.str() + " is not the square of a coordinate");
        return;
    }
    std::size_t j = static_cast<std::size_t>(it - e.begin());
    Poly c = f.substitute_constant(j, 0).homogeneous_part(3);
    if (c.is_zero()) {
        rep.fail("cubic part vanishes on the hyperplane " + m.vars[j] + " = 0");
        return;
    }
    bool cube = is_linear_cube(c);
    if (m.declared_class == "cE" && !cube) rep.fail("cubic part " + c.str() + " is not a cube of a linear form");
    if (m.declared_class == "cD" && cube) rep.fail("cubic part " + c.str() + " is a cube of a linear form (type cE)");
}

}  // namespace

ValidationReport validate_normal_form(const SingularityModel& m) {
    const std::string& cls = m.declared_class;
    if (std::find(kKnownClasses.begin(), kKnownClasses.end(), cls) == kKnownClasses.end())
        throw UnknownClass("unknown class '" + cls + "'");
    ValidationReport rep;
    if (m.ambient.n() != m.n()) {
        rep.fail("action has " + std::to_string(m.ambient.n()) + " entries for " + std::to_string(m.n()) + " variables");
        return rep;
    }
    for (const auto& f : m.equations) {
        if (!try_character(f, m.ambient)) rep.fail("equation " + f.str() + " is not semi-invariant");
        if (f.is_zero()) rep.fail("zero equation");
    }
    if (!rep.valid) return rep;

    const std::size_t n = m.n();
    const QuotientAction g = m.ambient;
    auto need_hypersurface = [&]() {
        if (m.equations.size() != 1 || n != 4) {
            rep.fail("class " + cls + " needs one equation in four variables");
            return false;
        }
        return true;
    };
    auto need_action = [&](std::int64_t r, std::vector<std::int64_t> a) {
        if (!(g == QuotientAction(r, a))) {
            rep.fail("action " + g.str() + " differs from " + QuotientAction(r, a).str());
            return false;
        }
        return true;
    };

    if (cls == "smooth") {
        if (!g.reduced().is_trivial()) rep.fail("nontrivial group action");
        if (m.equations.size() > 1) rep.fail("smooth models use at most one equation");
        if (m.equations.size() == 1) {
            int o = m.equations[0].order();
            if (o == 0) rep.fail("origin does not lie on the hypersurface");
            if (o >= 2) rep.fail("equation is singular at the origin");
        }
        return rep;
    }
    if (cls == "quotient") {
        if (!m.equations.empty() || n != 3) {
            rep.fail("quotient points have no equations and three variables");
            return rep;
        }
        if (!terminal_quotient_check(g)) rep.fail(g.str() + " is not a terminal quotient singularity");
        return rep;
    }
    if (!need_hypersurface()) return rep;
    const Poly& f = m.equations[0];
    Poly rest;

    if (cls == "cA/r") {
        std::int64_t r = g.r;
        if (r > 1) {
            if (g.a[2] != 1 || g.a[3] != 0 || mod64(g.a[0] + g.a[1], r) != 0)
                rep.fail("action " + g.str() + " is not of the form 1/r(alpha,-alpha,1,0)");
            else if (gcd64(g.a[0], r) != 1)
                rep.fail("alpha = " + std::to_string(g.a[0]) + " and r = " + std::to_string(r) + " are not coprime");
            for (const char* p : {"alpha", "beta"})
                if (m.params.count(p) && mod64(to_i64(m.params.at(p)), r) != g.a[0])
                    rep.fail(std::string(p) + " parameter disagrees with the action");
        }
        if (m.params.count("r") && m.params.at("r") != Rat(r)) rep.fail("r parameter disagrees with the action");
        if (!strip(f, {mono(n, {{0, 1}, {1, 1}})}, rest)) {
            rep.fail("missing the xy term");
            return rep;
        }
        if (!uses_only(rest, {2, 3})) {
            rep.fail("g = " + rest.str() + " involves x or y");
            return rep;
        }
        if (rest.is_zero()) rep.fail("g = 0, the singularity is not isolated");
        else if (!in_m(rest, 2)) rep.fail("g = " + rest.str() + " is not in m^2");
        for (const auto& [e, c] : rest.terms())
            if (e[2] % r != 0) {
                rep.fail("g is not a function of z^" + std::to_string(r) + " and u");
                break;
            }
        return rep;
    }
    if (cls == "cAx/4") {
        if (!need_action(4, {1, 1, 3, 2})) return rep;
        if (strip(f, {mono(n, {{0, 1}, {1, 1}}), mono(n, {{2, 2}})}, rest) && uses_only(rest, {3})) {
            if (!in_m(rest, 3) || rest.is_zero()) rep.fail("g(u) = " + rest.str() + " must be a nonzero element of m^3");
            return rep;
        }
        if (strip(f, {mono(n, {{0, 2}}), mono(n, {{2, 2}})}, rest) && uses_only(rest, {1, 3})) {
            if (!in_m(rest, 3) || rest.is_zero())
                rep.fail("g(y,u) = " + rest.str() + " must be a nonzero element of m^3");
            return rep;
        }
        rep.fail("equation is neither xy + z^2 + g(u) nor x^2 + z^2 + g(y,u)");
        return rep;
    }
    if (cls == "cAx/2") {
        if (!need_action(2, {0, 1, 1, 1})) return rep;
        bool shape = (strip(f, {mono(n, {{0, 1}, {1, 1}})}, rest) && uses_only(rest, {2, 3})) ||
                     (strip(f, {mono(n, {{0, 2}}), mono(n, {{1, 2}})}, rest) && uses_only(rest, {2, 3}));
        if (!shape) {
            rep.fail("equation is neither xy + g(z,u) nor x^2 + y^2 + g(z,u)");
            return rep;
        }
        if (rest.is_zero() || !in_m(rest, 4)) rep.fail("g = " + rest.str() + " must be a nonzero element of m^4");
        return rep;
    }
    if (cls == "cD/3") {
        if (!need_action(3, {0, 2, 1, 1})) return rep;
        Poly special = parse_poly("x^2 + y^3 + z^3 + u^3", m.vars);
        if (f == special) return rep;
        for (const Exps& third : {mono(n, {{2, 2}, {3, 1}}), mono(n, {{2, 3}})}) {
            if (!strip(f, {mono(n, {{0, 2}}), mono(n, {{1, 3}}), third}, rest)) continue;
            Poly gy(m.vars), h(m.vars);
            bool ok = true;
            for (const auto& [e, c] : rest.terms()) {
                if (e[0] != 0 || e[1] > 1) ok = false;
                else if (e[1] == 1) gy.add_term(mono(n, {{2, e[2]}, {3, e[3]}}), c);
                else h.add_term(e, c);
            }
            if (!ok) continue;
            if (!in_m(gy, 4)) rep.fail("g = " + gy.str() + " is not in m^4");
            if (!in_m(h, 6)) rep.fail("h = " + h.str() + " is not in m^6");
            return rep;
        }
        rep.fail("equation matches none of the cD/3 forms");
        return rep;
    }
    if (cls == "cD/2") {
        if (!need_action(2, {1, 0, 1, 1})) return rep;
        if (!strip(f, {mono(n, {{0, 2}})}, rest)) {
            rep.fail("missing x^2");
            return rep;
        }
        Poly ypart(m.vars), gz(m.vars);
        for (const auto& [e, c] : rest.terms()) {
            if (e[0] != 0) {
                rep.fail("term involving x besides x^2");
                return rep;
            }
            (e[1] ? ypart : gz).add_term(e, c);
        }
        int ypow = 0;
        bool yzu = false, yz2 = false, other = false;
        for (const auto& [e, c] : ypart.terms()) {
            if (e[2] == 0 && e[3] == 0) {
                if (ypow) other = true;
                ypow = e[1];
            } else if (e == mono(n, {{1, 1}, {2, 1}, {3, 1}})) {
                yzu = true;
            } else if (e == mono(n, {{1, 1}, {2, 2}})) {
                yz2 = true;
            } else {
                other = true;
            }
        }
        bool form1 = yzu && !yz2 && ypow == 3;
        bool form2 = yzu && !yz2 && ypow >= 4;
        bool form3 = yz2 && !yzu && ypow >= 3;
        if (other || !(form1 || form2 || form3)) {
            rep.fail("equation matches none of the cD/2 forms");
            return rep;
        }
        if (!in_m(gz, 4)) rep.fail("g = " + gz.str() + " is not in m^4");
        return rep;
    }
    if (cls == "cE/2") {
        if (!need_action(2, {1, 0, 1, 1})) return rep;
        if (!strip(f, {mono(n, {{0, 2}}), mono(n, {{1, 3}})}, rest)) {
            rep.fail("missing x^2 or y^3");
            return rep;
        }
        Poly gy(m.vars), h(m.vars);
        for (const auto& [e, c] : rest.terms()) {
            if (e[0] != 0 || e[1] > 1) {
                rep.fail("equation is not x^2 + y^3 + y g(z,u) + h(z,u)");
                return rep;
            }
            if (e[1] == 1) gy.add_term(mono(n, {{2, e[2]}, {3, e[3]}}), c);
            else h.add_term(e, c);
        }
        if (!in_m(gy, 4)) rep.fail("g = " + gy.str() + " is not in " + ordinal_m(4));
        if (!in_m(h, 4)) rep.fail("h = " + h.str() + " is not in " + ordinal_m(4));
        if (h.homogeneous_part(4).is_zero()) rep.fail("h_4 = 0");
        return rep;
    }
    // cD, cE, cDV-other: Gorenstein compound Du Val points
    if (!g.reduced().is_trivial()) {
        rep.fail("class " + cls + " is Gorenstein but the action is nontrivial");
        return rep;
    }
    check_gorenstein_cdv(m, rep);
    return rep;
}

// ---------------------------------------------------------------------------
// Registry

bool TableEntry::operator==(const TableEntry& o) const {
    auto slot_tuple = [](const SlotSpec& s) {
        return std::tie(s.name, s.equation, s.kind, s.weight, s.vars, s.multiplier, s.sample);
    };
    auto slots_eq = [&](const std::vector<SlotSpec>& a, const std::vector<SlotSpec>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (slot_tuple(a[i]) != slot_tuple(b[i])) return false;
        return true;
    };
    auto sweep_eq = [](const std::vector<ParamSpec>& a, const std::vector<ParamSpec>& b) {
        if (a.size() != b.size()) return false;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (std::tie(a[i].name, a[i].lo, a[i].hi, a[i].value) != std::tie(b[i].name, b[i].lo, b[i].hi, b[i].value))
                return false;
        return true;
    };
    return id == o.id && table == o.table && type == o.type && vars == o.vars && action_r == o.action_r &&
           action_a == o.action_a && weight_r == o.weight_r && weight_b == o.weight_b && discrepancy == o.discrepancy &&
           equations == o.equations && slots_eq(slots, o.slots) && conditions == o.conditions && domain == o.domain &&
           sweep_eq(sweep, o.sweep);
}

const TableEntry& table_lookup(const std::string& id) {
    for (const auto& e : table_registry())
        if (e.id == id) return e;
    throw std::out_of_range("no table row '" + id + "'");
}

std::string entry_class(const TableEntry& e) {
    const std::string& t = e.type;
    if (t.rfind("cA/", 0) == 0 || t.rfind("cA_", 0) == 0) return "cA/r";
    if (t == "cAx/4" || t == "cAx/2" || t == "cD/3" || t == "cD/2" || t == "cE/2") return t;
    if (t.rfind("cD", 0) == 0) return "cD";
    if (t.rfind("cE", 0) == 0) return "cE";
    return "cDV-other";
}

nlohmann::json entry_to_json(const TableEntry& e) {
    nlohmann::json j;
    j["id"] = e.id;
    j["table"] = e.table;
    j["type"] = e.type;
    j["vars"] = e.vars;
    j["action"] = {{"r", e.action_r}, {"a", e.action_a}};
    j["weight"] = {{"r", e.weight_r}, {"b", e.weight_b}};
    j["discrepancy"] = e.discrepancy;
    j["equations"] = e.equations;
    j["slots"] = nlohmann::json::array();
    for (const auto& s : e.slots)
        j["slots"].push_back({{"name", s.name},
                              {"equation", s.equation},
                              {"kind", s.kind},
                              {"weight", s.weight},
                              {"vars", s.vars},
                              {"multiplier", s.multiplier},
                              {"sample", s.sample}});
    j["conditions"] = e.conditions;
    j["domain"] = e.domain;
    j["sweep"] = nlohmann::json::array();
    for (const auto& p : e.sweep) j["sweep"].push_back({{"name", p.name}, {"lo", p.lo}, {"hi", p.hi}, {"value", p.value}});
    return j;
}

TableEntry entry_from_json(const nlohmann::json& j) {
    TableEntry e;
    e.id = j.at("id").get<std::string>();
    e.table = j.at("table").get<int>();
    e.type = j.at("type").get<std::string>();
    e.vars = j.at("vars").get<std::vector<std::string>>();
    e.action_r = j.at("action").at("r").get<std::string>();
    e.action_a = j.at("action").at("a").get<std::vector<std::string>>();
    e.weight_r = j.at("weight").at("r").get<std::string>();
    e.weight_b = j.at("weight").at("b").get<std::vector<std::string>>();
    e.discrepancy = j.at("discrepancy").get<std::string>();
    e.equations = j.at("equations").get<std::vector<std::string>>();
    for (const auto& s : j.at("slots"))
        e.slots.push_back(SlotSpec{s.at("name").get<std::string>(), s.at("equation").get<std::size_t>(),
                                   s.at("kind").get<std::string>(), s.at("weight").get<std::string>(),
                                   s.at("vars").get<std::vector<std::string>>(), s.at("multiplier").get<std::string>(),
                                   s.at("sample").get<std::string>()});
    e.conditions = j.at("conditions").get<std::vector<std::string>>();
    e.domain = j.at("domain").get<std::vector<std::string>>();
    for (const auto& p : j.at("sweep"))
        e.sweep.push_back(ParamSpec{p.at("name").get<std::string>(), p.at("lo").get<std::string>(),
                                    p.at("hi").get<std::string>(), p.at("value").get<std::string>()});
    return e;
}

// ---------------------------------------------------------------------------
// Row checks

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

bool is_ident(const std::string& s) {
    std::string t = trim(s);
    if (t.empty() || !(std::isalpha(static_cast<unsigned char>(t[0])) || t[0] == '_')) return false;
    return std::all_of(t.begin(), t.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool uses_slot_functions(const std::string& cond) {
    for (const char* f : {"has(", "deg(", "order(", "iszero("})
        if (cond.find(f) != std::string::npos) return true;
    return false;
}

std::optional<Rat> try_eval(const std::string& text, const ExprEnv& env) {
    try {
        return eval_expr(text, env);
    } catch (const UnboundParameter&) {
        return std::nullopt;
    }
}

std::string describe(const ParamMap& p) {
    std::string s;
    for (const auto& [k, v] : p) s += (s.empty() ? "" : ", ") + k + "=" + to_string(v);
    return "(" + s + ")";
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = s.find(from, pos)) != std::string::npos) {
        s.replace(pos, from.size(), to);
        pos += to.size();
    }
    return s;
}

bool divides(const Exps& d, const Exps& e) {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (d[i] > e[i]) return false;
    return true;
}

bool exps_in_vars(const Exps& e, const std::vector<bool>& allowed) {
    for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i] && !allowed[i]) return false;
    return true;
}

std::vector<bool> allowed_mask(const SlotSpec& s, const std::vector<std::string>& vars) {
    std::vector<bool> mask(vars.size(), false);
    for (const auto& v : s.vars) {
        auto it = std::find(vars.begin(), vars.end(), v);
        if (it == vars.end()) throw std::invalid_argument("slot " + s.name + " uses unknown variable " + v);
        mask[static_cast<std::size_t>(it - vars.begin())] = true;
    }
    return mask;
}

bool weight_ok(const Rat& tw, const Rat& target, const std::string& kind) { return kind == "homog" ? tw == target : tw >= target; }

WeightVector weight_from(const Rat& r, const std::vector<Rat>& b) {
    if (!is_integer(r) || r < 1) throw std::invalid_argument("weight denominator must be a positive integer");
    std::vector<std::int64_t> v;
    for (const auto& x : b) {
        if (!is_integer(x)) throw std::invalid_argument("weight entry " + to_string(x) + " is not an integer");
        v.push_back(to_i64(x));
    }
    return WeightVector(to_i64(r), v);
}

// smallest monomial in the allowed variables of weight exactly (or at least) target
// with the given character
std::optional<Exps> pick_monomial(const std::vector<bool>& allowed, const WeightVector& w, const QuotientAction& g,
                                  std::int64_t want, const Rat& target, bool exact) {
    const std::size_t n = allowed.size();
    Rat maxw = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (allowed[i]) maxw = std::max(maxw, w.value(i));
    if (maxw == 0) return std::nullopt;
    Rat upper = exact ? target : target + maxw * g.r;
    std::optional<Exps> best;
    Rat best_w;
    Exps cur(n, 0);
    GradedLexLess less;
    std::function<void(std::size_t, Rat)> rec = [&](std::size_t i, Rat acc) {
        if (i == n) {
            if (acc < target || (exact && acc != target)) return;
            if (g.character(cur) != mod64(want, g.r)) return;
            if (!best || acc < best_w || (acc == best_w && less(cur, *best))) {
                best = cur;
                best_w = acc;
            }
            return;
        }
        if (!allowed[i]) {
            rec(i + 1, acc);
            return;
        }
        for (int k = 0; acc + w.value(i) * k <= upper; ++k) {
            cur[i] = k;
            rec(i + 1, acc + w.value(i) * k);
        }
        cur[i] = 0;
    };
    rec(0, 0);
    return best;
}

}  // namespace

TableCheckReport validate_table_entry(const SingularityModel& m, const TableEntry& e, const WeightVector& w,
                                      const Bindings& b) {
    TableCheckReport rep;
    if (m.vars != e.vars) {
        rep.fail("variables of the model differ from the row's " + std::to_string(e.vars.size()) + " variables");
        return rep;
    }
    if (m.equations.size() != e.equations.size()) {
        rep.fail("row " + e.id + " has " + std::to_string(e.equations.size()) + " equations, the model " +
                 std::to_string(m.equations.size()));
        return rep;
    }
    if (w.n() != m.n()) {
        rep.fail("weight length differs from the number of variables");
        return rep;
    }

    ParamMap P = b.params;
    std::map<std::string, Poly> slots;
    ExprEnv env{&P, &slots, m.vars};

    // parameters readable off the action and the weight
    if (is_ident(e.action_r) && !P.count(trim(e.action_r))) P[trim(e.action_r)] = Rat(m.ambient.r);
    if (auto ar = try_eval(e.action_r, env); ar && *ar == Rat(m.ambient.r)) {
        for (std::size_t i = 0; i < e.action_a.size(); ++i)
            if (is_ident(e.action_a[i]) && !P.count(trim(e.action_a[i]))) P[trim(e.action_a[i])] = Rat(m.ambient.a[i]);
    }
    if (auto wr = try_eval(e.weight_r, env)) {
        for (std::size_t i = 0; i < e.weight_b.size(); ++i)
            if (is_ident(e.weight_b[i]) && !P.count(trim(e.weight_b[i])))
                P[trim(e.weight_b[i])] = w.value(i) * *wr;
    }
    for (bool progress = true; progress;) {
        progress = false;
        for (const auto& ps : e.sweep) {
            if (ps.value.empty() || P.count(ps.name)) continue;
            if (auto v = try_eval(ps.value, env)) {
                P[ps.name] = *v;
                progress = true;
            }
        }
    }
    for (const auto& ps : e.sweep) {
        if (ps.value.empty() || !P.count(ps.name)) continue;
        auto v = try_eval(ps.value, env);
        if (v && *v != P[ps.name])
            rep.fail("parameter " + ps.name + " = " + to_string(P[ps.name]) + " but " + ps.value + " = " + to_string(*v));
    }
    rep.params = P;

    // action and weight templates
    std::vector<std::int64_t> a;
    for (const auto& s : e.action_a) a.push_back(to_i64(eval_expr(s, env)));
    QuotientAction act(to_i64(eval_expr(e.action_r, env)), a);
    if (!(act.reduced() == m.ambient.reduced()))
        rep.fail("action " + m.ambient.str() + " differs from the row's " + act.str());
    Rat wr = eval_expr(e.weight_r, env);
    for (std::size_t i = 0; i < e.weight_b.size(); ++i) {
        Rat t = eval_expr(e.weight_b[i], env) / wr;
        if (t != w.value(i))
            rep.fail("weight entry " + std::to_string(i + 1) + " is " + to_string(w.value(i)) + ", the row gives " +
                     to_string(t));
    }
    if (!compatibility(m.ambient, w)) rep.fail("weight " + w.str() + " is not compatible with " + m.ambient.str());
    for (const auto& f : m.equations)
        if (!try_character(f, m.ambient)) rep.fail("equation " + f.str() + " is not semi-invariant");

    // equations: fixed part plus slots
    for (const auto& s : e.slots) {
        auto it = b.slots.find(s.name);
        if (it != b.slots.end()) slots[s.name] = parse_poly(it->second, m.vars);
    }
    for (std::size_t q = 0; q < e.equations.size(); ++q) {
        std::string text = interpolate(e.equations[q], env);
        bool missing_inline = false;
        for (const auto& s : e.slots) {
            if (s.equation != q || !s.multiplier.empty()) continue;
            if (!slots.count(s.name)) {
                rep.fail("slot " + s.name + " sits inside the equation and needs an explicit value");
                missing_inline = true;
                continue;
            }
            text = replace_all(text, "[" + s.name + "]", "(" + slots[s.name].str() + ")");
        }
        if (missing_inline) continue;
        Poly residual = m.equations[q] - parse_poly(text, m.vars);

        std::vector<const SlotSpec*> open;
        for (const auto& s : e.slots) {
            if (s.equation != q || s.multiplier.empty()) continue;
            Poly mult = parse_poly(interpolate(s.multiplier, env), m.vars);
            if (slots.count(s.name)) {
                residual = residual - mult * slots[s.name];
            } else {
                open.push_back(&s);
            }
        }
        std::stable_sort(open.begin(), open.end(),
                         [](const SlotSpec* x, const SlotSpec* y) { return x->kind == "homog" && y->kind != "homog"; });
        for (const SlotSpec* s : open) slots[s->name] = Poly(m.vars);
        for (const auto& [ex, c] : residual.terms()) {
            bool placed = false;
            for (const SlotSpec* s : open) {
                Poly mult = parse_poly(interpolate(s->multiplier, env), m.vars);
                if (mult.size() != 1) continue;
                const auto& [me, mc] = *mult.terms().begin();
                if (!divides(me, ex)) continue;
                Exps qe = ex;
                for (std::size_t i = 0; i < qe.size(); ++i) qe[i] -= me[i];
                if (!exps_in_vars(qe, allowed_mask(*s, m.vars))) continue;
                if (!weight_ok(term_weight(qe, w), eval_expr(s->weight, env), s->kind)) continue;
                slots[s->name].add_term(qe, c / mc);
                placed = true;
                break;
            }
            if (!placed)
                rep.fail("equation " + std::to_string(q + 1) + ": term " + Poly::monomial(m.vars, ex, c).str() +
                         " fits neither the fixed part nor a slot");
        }
    }

    // slot constraints
    for (const auto& s : e.slots) {
        if (!slots.count(s.name)) slots[s.name] = Poly(m.vars);
        const Poly& p = slots[s.name];
        auto mask = allowed_mask(s, m.vars);
        Rat target = eval_expr(s.weight, env);
        for (const auto& [ex, c] : p.terms()) {
            if (!exps_in_vars(ex, mask)) {
                rep.fail("slot " + s.name + " contains " + Poly::monomial(m.vars, ex).str() + " outside its variables");
                break;
            }
            if (!weight_ok(term_weight(ex, w), target, s.kind)) {
                rep.fail("slot " + s.name + " term " + Poly::monomial(m.vars, ex).str() + " has weight " +
                         to_string(term_weight(ex, w)) + (s.kind == "homog" ? ", expected " : ", below ") +
                         to_string(target));
                break;
            }
        }
    }
    rep.slots = slots;

    for (const auto& c : e.conditions) {
        ConditionResult cr{c, CondStatus::Holds};
        if (c.rfind("attest:", 0) == 0) {
            cr.status = CondStatus::Attested;
        } else if (!Expr::parse(c).truth(env)) {
            cr.status = CondStatus::Fails;
            rep.fail("condition '" + c + "' fails " + describe(P));
        }
        rep.conditions.push_back(cr);
    }

    bool nonzero = std::all_of(m.equations.begin(), m.equations.end(), [](const Poly& f) { return !f.is_zero(); });
    if (nonzero) {
        rep.computed_discrepancy = discrepancy_formula(w, m.equations);
        rep.expected_discrepancy = eval_expr(e.discrepancy, env);
        if (*rep.computed_discrepancy != *rep.expected_discrepancy)
            rep.fail("discrepancy " + to_string(*rep.computed_discrepancy) + " differs from the row's " +
                     to_string(*rep.expected_discrepancy));
    } else {
        rep.fail("zero equation");
    }
    return rep;
}

std::vector<ParamMap> sweep_bindings(const TableEntry& e, const std::map<std::string, std::vector<Rat>>& overrides) {
    std::vector<ParamMap> out;
    ParamMap P;
    std::map<std::string, Poly> none;
    ExprEnv env{&P, &none, e.vars};
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == e.sweep.size()) {
            for (const auto& d : e.domain)
                if (!Expr::parse(d).truth(env)) return;
            for (const auto& c : e.conditions) {
                if (c.rfind("attest:", 0) == 0 || uses_slot_functions(c)) continue;
                if (!Expr::parse(c).truth(env)) return;
            }
            out.push_back(P);
            return;
        }
        const ParamSpec& ps = e.sweep[i];
        auto ov = overrides.find(ps.name);
        if (ov != overrides.end()) {
            for (const auto& v : ov->second) {
                P[ps.name] = v;
                rec(i + 1);
            }
        } else if (!ps.value.empty()) {
            P[ps.name] = eval_expr(ps.value, env);
            rec(i + 1);
        } else {
            Int lo = ceil_rat(eval_expr(ps.lo, env)), hi = floor_rat(eval_expr(ps.hi, env));
            for (Int v = lo; v <= hi; ++v) {
                P[ps.name] = Rat(v);
                rec(i + 1);
            }
        }
        P.erase(ps.name);
    };
    rec(0);
    return out;
}

Instance instantiate(const TableEntry& e, const ParamMap& params) {
    Instance inst;
    inst.params = params;
    std::map<std::string, Poly> none;
    ExprEnv env{&inst.params, &none, e.vars};

    std::vector<std::int64_t> a;
    for (const auto& s : e.action_a) a.push_back(to_i64(eval_expr(s, env)));
    QuotientAction act(to_i64(eval_expr(e.action_r, env)), a);
    std::vector<Rat> wb;
    for (const auto& s : e.weight_b) wb.push_back(eval_expr(s, env));
    inst.weight = weight_from(eval_expr(e.weight_r, env), wb);

    std::vector<std::string> texts;
    for (const auto& q : e.equations) texts.push_back(interpolate(q, env));

    for (const auto& s : e.slots) {
        if (!s.sample.empty()) {
            inst.slots[s.name] = parse_poly(interpolate(s.sample, env), e.vars);
            continue;
        }
        // a monomial of the right weight whose product with the multiplier matches the
        // character of the rest of the equation
        std::string fixed = texts[s.equation];
        for (const auto& o : e.slots)
            if (o.equation == s.equation && o.multiplier.empty()) fixed = replace_all(fixed, "[" + o.name + "]", "0");
        Poly fp = parse_poly(fixed, e.vars);
        std::int64_t want = 0;
        if (auto ch = try_character(fp, act); ch && !fp.is_zero()) want = *ch;
        if (!s.multiplier.empty()) {
            Poly mult = parse_poly(interpolate(s.multiplier, env), e.vars);
            if (mult.is_zero()) {
                inst.slots[s.name] = Poly(e.vars);
                continue;
            }
            want -= semi_invariant_character(mult, act);
        }
        auto pick = pick_monomial(allowed_mask(s, e.vars), inst.weight, act, want, eval_expr(s.weight, env),
                                  s.kind == "homog");
        inst.slots[s.name] = pick ? Poly::monomial(e.vars, *pick) : Poly(e.vars);
    }

    std::vector<Poly> eqs;
    for (std::size_t q = 0; q < e.equations.size(); ++q) {
        std::string text = texts[q];
        for (const auto& s : e.slots)
            if (s.equation == q && s.multiplier.empty())
                text = replace_all(text, "[" + s.name + "]", "(" + inst.slots[s.name].str() + ")");
        Poly f = parse_poly(text, e.vars);
        for (const auto& s : e.slots)
            if (s.equation == q && !s.multiplier.empty())
                f = f + parse_poly(interpolate(s.multiplier, env), e.vars) * inst.slots[s.name];
        eqs.push_back(f);
    }
    inst.model.ambient = act;
    inst.model.vars = e.vars;
    inst.model.equations = eqs;
    inst.model.declared_class = entry_class(e);
    inst.model.params = params;
    return inst;
}

std::vector<Instance> instantiate_sweep(const TableEntry& e) {
    std::vector<Instance> out;
    for (const auto& p : sweep_bindings(e)) out.push_back(instantiate(e, p));
    return out;
}

ReplaySummary replay_row(const TableEntry& e) {
    ReplaySummary s;
    s.id = e.id;
    for (const auto& p : sweep_bindings(e)) {
        ++s.instances;
        try {
            Instance inst = instantiate(e, p);
            Bindings b{inst.params, {}};
            for (const auto& [k, v] : inst.slots) b.slots[k] = v.str();
            TableCheckReport r = validate_table_entry(inst.model, e, inst.weight, b);
            if (r.passed) {
                ++s.passed;
            } else {
                std::string msg = e.id + " " + describe(p) + ":";
                for (const auto& f : r.failures) msg += " " + f + ";";
                s.failures.push_back(msg);
            }
        } catch (const std::exception& ex) {
            s.failures.push_back(e.id + " " + describe(p) + ": " + ex.what());
        }
    }
    return s;
}

}  // namespace birat3
