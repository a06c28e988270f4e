#include "birat3/links.hpp"

#include "birat3/models.hpp"

#include <algorithm>
#include <set>

namespace birat3 {

namespace {

Rat numerator_weight(const Exps& e, const WeightVector& w) {
    Rat s = 0;
    for (std::size_t k = 0; k < e.size(); ++k) s += Rat(e[k]) * Rat(w.b.at(k));
    return s;
}

void check_shape(const LinkData& d) {
    const std::size_t n = d.n();
    if (n < 4) throw LinkDataError("link data needs at least four coordinates");
    if (d.a2.n() != n) throw LinkDataError("the two weights have different lengths");
    if (d.chart_index < 1 || d.chart_index > n) throw LinkDataError("chart index out of range");
    if (d.duval_index < 1 || d.duval_index > n || d.duval_index == d.chart_index)
        throw LinkDataError("Du Val coordinate must differ from the chart coordinate");
    if (d.eta.size() != n - 3) throw LinkDataError("expected " + std::to_string(n - 3) + " eta entries");
    if (d.m < 1) throw LinkDataError("residual order must be positive");
}

std::int64_t a_at(const WeightVector& w, std::size_t pos) { return w.b.at(pos - 1); }

std::set<std::size_t> deltas(const LinkData& d) {
    std::set<std::size_t> s;
    for (std::size_t j = 0; j < d.eta.size(); ++j) {
        if (!d.eta[j].delta) throw LinkDataError("eta_" + std::to_string(j + 4) + " has no delta assignment");
        s.insert(*d.eta[j].delta);
    }
    return s;
}

bool has_pure_power(const Poly& p, std::size_t pos) {
    for (const auto& [e, c] : p.terms()) {
        bool pure = e.at(pos - 1) > 0;
        for (std::size_t k = 0; k < e.size() && pure; ++k)
            if (k != pos - 1 && e[k] != 0) pure = false;
        if (pure) return true;
    }
    return false;
}

}  // namespace

Rat eta_vE(const LinkData& d, std::size_t j) {
    const EtaData& e = d.eta.at(j);
    if (e.vE) return *e.vE;
    if (!e.eta || e.eta->is_zero()) throw LinkDataError("v_E(eta_" + std::to_string(j + 4) + ") not available");
    // degree of the homogenization by the exceptional coordinate
    Rat best = 0;
    bool first = true;
    for (const auto& [ex, c] : e.eta->terms()) {
        Rat w = numerator_weight(ex, d.a);
        if (first || w > best) best = w;
        first = false;
    }
    return best / Rat(d.r());
}

Rat eta_vF(const LinkData& d, std::size_t j) {
    const EtaData& e = d.eta.at(j);
    if (e.vF) return *e.vF;
    if (!e.eta || e.eta->is_zero()) throw LinkDataError("v_F(eta'_" + std::to_string(j + 4) + ") not available");
    return weight_of(*e.eta, d.a2);
}

XiResult xi_condition(const LinkData& d) {
    check_shape(d);
    XiResult res;
    res.holds = true;
    std::set<std::size_t> ds = deltas(d);
    if (ds.size() != d.eta.size()) {
        res.holds = false;
        res.failures.push_back("delta indices are not distinct");
    }
    for (std::size_t j = 0; j < d.eta.size(); ++j) {
        std::size_t dj = *d.eta[j].delta;
        if (dj < 1 || dj > d.n() || dj == d.chart_index) {
            res.holds = false;
            res.failures.push_back("delta_" + std::to_string(j + 4) + " is not a usable coordinate");
            continue;
        }
        if (d.eta[j].eta && !has_pure_power(*d.eta[j].eta, dj)) {
            res.holds = false;
            res.failures.push_back("eta_" + std::to_string(j + 4) + " has no pure power of coordinate " + std::to_string(dj));
        }
    }
    const std::int64_t a3 = a_at(d.a, d.duval_index);
    bool strict = false;
    for (std::size_t j = 1; j <= d.n(); ++j) {
        if (j == d.chart_index || j == d.duval_index || ds.count(j)) continue;
        std::int64_t lhs = a3 * a_at(d.a2, j), rhs = a_at(d.a, j);
        if (lhs < rhs) {
            res.holds = false;
            res.failures.push_back("a_3 a'_" + std::to_string(j) + " < a_" + std::to_string(j));
        }
        if (lhs > rhs) strict = true;
    }
    if (res.holds && !strict) {
        for (std::size_t j = 0; j < d.eta.size() && !strict; ++j) {
            std::size_t dj = *d.eta[j].delta;
            Rat lhs = Rat(d.r()) * eta_vE(d, j) / Rat(a_at(d.a, dj));
            Rat rhs = Rat(d.r2()) * eta_vF(d, j) / Rat(a_at(d.a2, dj));
            if (lhs > rhs) strict = true;
        }
    }
    res.strict = res.holds && strict;
    return res;
}

bool xi_prime(const LinkData& d) {
    check_shape(d);
    if (d.n() != 4 || d.chart_index > 4) return false;
    std::set<std::size_t> ds = deltas(d);
    const std::int64_t ai = a_at(d.a, d.chart_index);
    for (std::size_t j = 1; j <= d.n(); ++j) {
        if (j == d.chart_index || j == d.duval_index || ds.count(j)) continue;
        if (a_at(d.a, j) > ai) return false;
    }
    return true;
}

bool theta_index(const LinkData& d, std::size_t j) {
    check_shape(d);
    if (j < 1 || j > d.n() || j == d.chart_index) throw LinkDataError("theta index must be a coordinate other than i");
    return a_at(d.a, d.duval_index) * a_at(d.a2, j) > a_at(d.a, j);
}

Rat valuation_E(const LinkData& d, const Poly& u) {
    if (u.nvars() != d.n()) throw LinkDataError("function has the wrong number of variables");
    if (u.is_zero()) throw LinkDataError("valuation of zero");
    return weight_of(u, d.a);
}

Rat valuation_F(const LinkData& d, const Poly& u) {
    if (u.nvars() != d.n()) throw LinkDataError("function has the wrong number of variables");
    if (u.is_zero()) throw LinkDataError("valuation of zero");
    // monomials stay distinct under the chart map, so no cancellation
    return weight_of(chart_map(d.a, d.chart_index).apply(u), d.a2);
}

bool theta_function(const LinkData& d, const Poly& u) {
    check_shape(d);
    DiscrepancyPair p = dcp_discrepancies(d);
    return valuation_E(d, u) < p.aEX / p.aFX * valuation_F(d, u);
}

DiscrepancyPair dcp_discrepancies(std::int64_t a3, std::int64_t r, std::int64_t a2i, std::int64_t r2) {
    if (r < 1 || r2 < 1) throw LinkDataError("indices must be positive");
    return {make_rat(a3, r), make_rat(r + a3 * a2i, r * r2)};
}

DiscrepancyPair dcp_discrepancies(const LinkData& d) {
    return dcp_discrepancies(a_at(d.a, d.duval_index), d.r(), a_at(d.a2, d.chart_index), d.r2());
}

Rat kng_intersection(const LinkData& d) {
    check_shape(d);
    const std::size_t n = d.n();
    const Rat a3 = a_at(d.a, d.duval_index);
    Rat first = a3 * a3, second = a_at(d.a2, d.chart_index);
    for (std::size_t j = 0; j < d.eta.size(); ++j) {
        first *= eta_vE(d, j);
        second *= eta_vF(d, j);
    }
    Rat pa = d.m, pa2 = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        pa *= Rat(a_at(d.a, k));
        pa2 *= Rat(a_at(d.a2, k));
    }
    for (std::size_t k = 0; k < n - 3; ++k) first *= Rat(d.r());
    for (std::size_t k = 0; k + 4 < n; ++k) second *= Rat(d.r2());
    return -first / pa + second / pa2;
}

LinkResult ca_link(const SingularityModel& m, const Contraction& c) {
    const WeightVector& w = c.weight;
    if (m.n() != 4 || m.equations.size() != 1) throw std::invalid_argument("ca_link needs a hypersurface in A^4");
    const std::int64_t r = m.ambient.r;
    if (w.n() != 4 || w.r != r || w.b[3] != r) throw std::invalid_argument("weight is not of the form 1/r(b,c,a,r)");
    if (w.b[2] != 1) throw std::invalid_argument("ca_link needs a = 1, got a = " + std::to_string(w.b[2]));
    const std::int64_t b = w.b[0], cc = w.b[1];
    if (b <= r) throw std::invalid_argument("ca_link needs b > r");
    if ((b + cc) % r != 0) throw std::invalid_argument("b + c is not a multiple of r");
    std::int64_t beta = ((m.ambient.a.at(0) % r) + r) % r;
    Bindings bind{{{"r", r}, {"beta", beta}, {"k", (b + cc) / r}, {"a", 1}}, {}};
    TableCheckReport rep = validate_table_entry(m, table_lookup("A1"), w, bind);
    if (!rep.passed) throw std::invalid_argument("not an A1 blow-up: " + rep.failures.front());

    LinkResult out;
    out.linked = weighted_blowup(m, WeightVector(r, {b - r, cc + r, 1, r}));

    const Poly& f = m.equations[0];
    Poly fs = strict_transform(f, w, 1);
    Poly eta = fs.substitute_constant(0, 0).substitute_constant(2, 0);
    for (std::size_t k = 0; k < eta.nvars(); ++k) {
        int o = eta.order_in(k);
        if (o > 0 && eta.size() > 1) {
            Exps e(eta.nvars(), 0);
            e[k] = o;
            eta = eta.divide_monomial(e);
            out.note = "removed the factor " + m.vars[k] + "^" + std::to_string(o) + " from eta_4";
        }
    }
    Exps ey(4, 0);
    ey[1] = 1;
    out.flop = eta.size() == 1 && eta.has_monomial(ey);
    out.eta4 = eta;

    // weight of the w-morphism over the origin of U_x, v_F(y) read off y = -G
    Poly G = fs - Poly::variable(fs.vars(), 1);
    std::optional<Rat> eps;
    for (const auto& [e, co] : G.terms()) {
        if (e[1] != 0) throw std::invalid_argument("strict transform is not linear in y");
        Rat t = numerator_weight(e, WeightVector(1, {b - r, 1, 1, r}));
        if (!eps || t < *eps) eps = t;
    }
    if (!eps || !is_integer(*eps)) throw std::invalid_argument("could not read v_F(y) on U_x");

    LinkData& d = out.data;
    d.a = w;
    d.a2 = WeightVector(b, {b - r, to_i64(*eps), 1, r});
    d.chart_index = 1;
    d.duval_index = 3;
    d.eta = {EtaData{eta, 2, std::nullopt, std::nullopt}};
    d.m = chart_decomposition(m.ambient, w, 1).m;
    return out;
}

std::optional<bool> disef_check(const DisefInput& in) {
    if (!in.vF_u || !in.vF_strict) throw LinkDataError("hypothesis data missing");
    if (*in.vF_u != make_rat(1, in.r)) throw LinkDataError("v_F(u) must equal 1/r");
    if (*in.vF_strict <= 0) throw LinkDataError("strict transform must have positive v_F");
    if (in.aEX <= 1) return std::nullopt;
    return in.aFX < in.aEX;
}

}  // namespace birat3
