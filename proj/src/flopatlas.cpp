#include "birat3/flopatlas.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace birat3 {

namespace {

const std::vector<std::string> V4 = {"x", "y", "z", "u"};
const std::vector<std::string> SU = {"s", "u"};

Poly var4(std::size_t i) { return Poly::variable(V4, i); }

MonomialMap map4(RExps x, RExps y, RExps z, RExps u) {
    MonomialMap m;
    m.image = {std::move(x), std::move(y), std::move(z), std::move(u)};
    return m;
}

RExps ex(Rat a, Rat b, Rat c, Rat d) { return {a, b, c, d}; }

Poly pull(const Poly& f, const MonomialMap& mm, const RExps& shift) { return mm.apply(f).shift(shift).to_poly(V4); }

// w(f) for w(z, u) = (1/r, 1)
Rat weight_zu(const Poly& f, std::int64_t r) {
    std::optional<Rat> best;
    for (const auto& [e, c] : f.terms()) {
        Rat w = make_rat(e[2], r) + Rat(e[3]);
        if (!best || w < *best) best = w;
    }
    if (!best) throw std::invalid_argument("weight of zero");
    return *best;
}

FlopChart make_chart(std::string name, QuotientAction g, Poly eq, MonomialMap mm, RExps factor) {
    return FlopChart{std::move(name), std::move(g), V4, std::move(eq), std::move(mm), std::move(factor)};
}

void add_z_charts(FlopModel& fm) {
    const std::int64_t r = fm.r, be = fm.beta;
    const Poly& f = fm.f;
    MonomialMap m1x = map4(ex(1, 0, 0, 0), ex(0, 1, 0, 0), ex(0, 0, 1, 0), ex(1, 0, 0, 1));
    MonomialMap m1u = map4(ex(1, 0, 0, 1), ex(0, 1, 0, 0), ex(0, 0, 1, 0), ex(0, 0, 0, 1));
    MonomialMap m2y = map4(ex(1, 0, 0, 0), ex(0, 1, 0, 0), ex(0, 0, 1, 0), ex(0, 1, 0, 1));
    MonomialMap m2u = map4(ex(1, 0, 0, 0), ex(0, 1, 0, 1), ex(0, 0, 1, 0), ex(0, 0, 0, 1));
    RExps none(4, Rat(0));
    fm.z1 = {make_chart("U_{1,x}", QuotientAction(r, {be, -be, 1, -be}), var4(1) + var4(3) * pull(f, m1x, none), m1x,
                        ex(1, 0, 0, 0)),
             make_chart("U_{1,u}", QuotientAction(r, {be, -be, 1, 0}), var4(0) * var4(1) + f, m1u, ex(0, 0, 0, 1))};
    fm.z2 = {make_chart("U_{2,y}", QuotientAction(r, {be, -be, 1, be}), var4(0) + var4(3) * pull(f, m2y, none), m2y,
                        ex(0, 1, 0, 0)),
             make_chart("U_{2,u}", QuotientAction(r, {be, -be, 1, 0}), var4(0) * var4(1) + f, m2u, ex(0, 0, 0, 1))};
}

// ---------------------------------------------------------------------------
// bivariate helpers in Q[s, u]

Poly to_su(const Poly& f, std::int64_t r) {
    Poly F(SU);
    for (const auto& [e, c] : f.terms()) F.add_term({e[2] / static_cast<int>(r), e[3]}, c);
    return F;
}

Poly from_su(const Poly& F, std::int64_t r) {
    Poly f(V4);
    for (const auto& [e, c] : F.terms()) f.add_term({0, 0, e[0] * static_cast<int>(r), e[1]}, c);
    return f;
}

// coefficient of var^d as a polynomial in the other variable
Poly coeff_poly(const Poly& F, std::size_t var, int d) {
    Poly c(F.vars());
    for (const auto& [e, k] : F.terms())
        if (e[var] == d) {
            Exps o = e;
            o[var] = 0;
            c.add_term(o, k);
        }
    return c;
}

bool is_constant(const Poly& p) { return p.total_degree() <= 0; }

// quotient of F by (x_var - h), exact
Poly divide_linear(Poly R, std::size_t var, const Poly& h) {
    Poly G = Poly::variable(R.vars(), var) - h;
    Poly Q(R.vars());
    while (!R.is_zero() && R.degree_in(var) >= 1) {
        int d = R.degree_in(var);
        Exps e(R.nvars(), 0);
        e[var] = d - 1;
        Poly t = coeff_poly(R, var, d) * Poly::monomial(R.vars(), e);
        Q += t;
        R = R - t * G;
    }
    if (!R.is_zero()) throw std::logic_error("inexact division");
    return Q;
}

// Lagrange interpolation through (t_i, v_i) in the variable `other`
Poly interpolate(const std::vector<Rat>& t, const std::vector<Rat>& v, std::size_t other) {
    Poly h(SU);
    Poly x = Poly::variable(SU, other);
    for (std::size_t i = 0; i < t.size(); ++i) {
        Poly li = Poly::constant(SU, v[i]);
        for (std::size_t j = 0; j < t.size(); ++j)
            if (j != i) li = li * (x - Poly::constant(SU, t[j])) * (Rat(1) / (t[i] - t[j]));
        h += li;
    }
    return h;
}

struct RootSearch {
    std::optional<Poly> root;       // F(root, .) = 0 in the direction var
    std::optional<Poly> line;       // F vanishes on other = t
    bool complete = true;
};

// polynomial h(other) with F(h) = 0, found by interpolating rational roots of specializations
RootSearch polynomial_root(const Poly& F, std::size_t var) {
    const std::size_t other = 1 - var;
    RootSearch res;
    const int D = std::max(0, F.degree_in(other));
    std::vector<Rat> pts;
    std::vector<std::vector<Rat>> roots;
    for (int step = 0; static_cast<int>(pts.size()) < D + 1; ++step) {
        Rat t = step % 2 ? Rat(-(step + 1) / 2) : Rat(step / 2);
        Poly g = F.substitute_constant(other, t);
        if (g.is_zero()) {
            res.line = Poly::variable(SU, other) - Poly::constant(SU, t);
            return res;
        }
        std::vector<Rat> rs = upoly_rational_roots(upoly_from(g, var));
        if (rs.empty()) return res;  // no polynomial root exists
        pts.push_back(t);
        roots.push_back(rs);
    }
    double combos = 1;
    for (const auto& rs : roots) combos *= static_cast<double>(rs.size());
    if (combos > 2e5) {
        res.complete = false;
        return res;
    }
    std::vector<std::size_t> idx(roots.size(), 0);
    for (;;) {
        std::vector<Rat> v;
        for (std::size_t i = 0; i < idx.size(); ++i) v.push_back(roots[i][idx[i]]);
        Poly h = interpolate(pts, v, other);
        std::vector<Poly> img(2);
        img[var] = h;
        img[other] = Poly::variable(SU, other);
        if (F.compose(img).is_zero()) {
            res.root = h;
            return res;
        }
        std::size_t p = 0;
        while (p < idx.size() && ++idx[p] == roots[p].size()) idx[p++] = 0;
        if (p == idx.size()) break;
    }
    return res;
}

using Pt = std::pair<std::int64_t, std::int64_t>;

std::vector<Pt> hull(std::vector<Pt> p) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
    if (p.size() < 3) return p;
    auto cross = [](const Pt& o, const Pt& a, const Pt& b) {
        return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
    };
    std::vector<Pt> h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

// Minkowski indecomposability of the Newton polygon over Z^2; nullopt if the search is too large
std::optional<bool> newton_indecomposable(const Poly& F) {
    std::vector<Pt> pts;
    for (const auto& [e, c] : F.terms()) pts.push_back({e[0], e[1]});
    std::vector<Pt> h = hull(pts);
    if (h.size() < 2) return false;
    std::vector<std::pair<Pt, std::int64_t>> edges;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const Pt& a = h[i];
        const Pt& b = h[(i + 1) % h.size()];
        std::int64_t dx = b.first - a.first, dy = b.second - a.second;
        std::int64_t g = std::gcd(std::abs(dx), std::abs(dy));
        edges.push_back({{dx / g, dy / g}, g});
        if (h.size() == 2) break;
    }
    if (h.size() == 2) edges.push_back({{-edges[0].first.first, -edges[0].first.second}, edges[0].second});
    std::int64_t total = 0;
    for (const auto& e : edges) total += e.second;
    std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> states = {{0, 0, 0}};
    for (const auto& [p, n] : edges) {
        std::set<std::tuple<std::int64_t, std::int64_t, std::int64_t>> next;
        for (const auto& [sx, sy, t] : states)
            for (std::int64_t k = 0; k <= n; ++k) next.insert({sx + k * p.first, sy + k * p.second, t + k});
        states = std::move(next);
        if (states.size() > 2000000) return std::nullopt;
    }
    for (const auto& [sx, sy, t] : states)
        if (sx == 0 && sy == 0 && t > 0 && t < total) return false;
    return true;
}

bool specialization_squarefree(const Poly& F, std::size_t var) {
    const std::size_t other = 1 - var;
    const int d = F.degree_in(var);
    if (d <= 0) return true;
    for (int t = 1; t <= 12; ++t) {
        Poly g = F.substitute_constant(other, Rat(t));
        UPoly p = upoly_from(g, var);
        if (static_cast<int>(upoly_trim(p).size()) - 1 == d && upoly_squarefree(p)) return true;
    }
    return false;
}

void check_weight(const FlopModel& fm, const WeightVector& w) {
    const std::int64_t r = fm.r;
    if (w.n() != 4 || w.r != r || w.b[2] != 1 || w.b[3] != r)
        throw std::invalid_argument("weight " + w.str() + " is not of the form 1/r(b,c,1,r)");
    if (w.b[0] + w.b[1] != r * (fm.m + 1))
        throw std::invalid_argument("weight " + w.str() + " needs b + c = r(m + 1) = " + std::to_string(r * (fm.m + 1)));
    if (mod64(w.b[0] - fm.beta, r) != 0) throw std::invalid_argument("weight " + w.str() + " needs b = beta mod r");
}

std::int64_t local_gdep(const FlopChart& c, DepthEngine& eng) {
    LocalPoint p = classify_local(c.action, c.vars, {c.equation});
    if (p.status == PointStatus::Smooth) return 0;
    if (p.status != PointStatus::Quotient) throw std::logic_error(c.name + " origin is not a cyclic quotient point");
    return eng.gdep(p.model).value();
}

}  // namespace

FlopModel make_flop_model(std::int64_t r, std::int64_t beta, const Poly& f0) {
    if (r < 1) throw std::invalid_argument("index must be positive");
    if (std::gcd(mod64(beta, r), r) != 1) throw std::invalid_argument("beta must be a unit mod r");
    if (f0.is_zero()) throw std::invalid_argument("f is zero");
    Poly f = f0.with_vars(V4);
    std::optional<int> zk;
    for (const auto& [e, c] : f.terms()) {
        if (e[0] || e[1]) throw std::invalid_argument("f may only involve z and u");
        if (e[2] % r) throw std::invalid_argument("f is not invariant: z-exponent " + std::to_string(e[2]));
        if (e[3] == 0 && e[2] > 0 && (!zk || e[2] < *zk)) zk = e[2];
    }
    if (!zk) throw std::invalid_argument("f has no pure power of z");
    FlopModel fm;
    fm.r = r;
    fm.beta = mod64(beta, r);
    fm.f = f;
    fm.k = *zk / r;
    if (fm.k <= 1) throw std::invalid_argument("k must exceed 1, got k = " + std::to_string(fm.k));
    fm.m = to_i64(weight_zu(f, r));
    IrreducibilityResult ir = invariant_irreducibility(f, r);
    if (ir.outcome == Factorization::Reducible) throw std::invalid_argument("f is reducible, V is not Q-factorial");
    fm.v_equation = var4(0) * var4(1) + var4(3) * f;
    fm.action = QuotientAction(r, {fm.beta, -fm.beta, 1, 0});
    add_z_charts(fm);
    return fm;
}

FlopModel build_flop(const SingularityModel& x, const LinkResult& link) {
    if (!link.flop) throw std::invalid_argument("the link is negative, there is no flop to factor");
    if (x.n() != 4 || x.equations.size() != 1) throw std::invalid_argument("X must be a hypersurface in A^4");
    const std::int64_t r = x.ambient.r;
    Poly fx = x.equations[0].with_vars(V4) - var4(0) * var4(1);
    const WeightVector& w = link.data.a;
    if (w.n() != 4 || w.r != r) throw std::invalid_argument("link weight does not match X");
    std::int64_t k = (w.b[0] + w.b[1]) / r;
    MonomialMap s = map4(ex(1, 0, 0, 0), ex(0, 1, 0, 0), ex(0, 0, 1, make_rat(1, r)), ex(0, 0, 0, 1));
    Poly f1 = pull(fx, s, ex(0, 0, 0, -k));
    FlopModel fm = make_flop_model(r, x.ambient.a.at(0), f1);
    fm.source_f = fx;
    return fm;
}

Poly recover_source_f(const FlopModel& fm) {
    const FlopChart& c = fm.z1.at(1);
    Poly f1 = c.equation - var4(0) * var4(1);
    MonomialMap back = map4(ex(1, 0, 0, 0), ex(0, 1, 0, 0), ex(0, 0, 1, make_rat(-1, fm.r)), ex(0, 0, 0, 1));
    return pull(f1, back, ex(0, 0, 0, fm.k));
}

FlopModel normalize_m1(const FlopModel& fm) {
    if (fm.m != 1) throw std::invalid_argument("the rewrite needs m = 1");
    Exps eu = {0, 0, 0, 1}, ez = {0, 0, static_cast<int>(fm.r * fm.k), 0};
    if (fm.f.size() != 2 || !fm.f.has_monomial(eu) || !fm.f.has_monomial(ez))
        throw std::invalid_argument("expected f = lambda u + c z^{rk}");
    Rat lambda = fm.f.coeff(eu), c = fm.f.coeff(ez);
    // lambda u + c z^{rk} = u' gives u = (u' - c z^{rk}) / lambda
    Poly fbar = (var4(3) - Poly::monomial(V4, ez, c)) * (Rat(1) / lambda);
    return make_flop_model(fm.r, fm.beta, fbar);
}

WeightVector strict_weight(const FlopModel& fm) {
    const std::int64_t r = fm.r, b = fm.beta;
    if (fm.m > 1) return WeightVector(r, {b + r, fm.m * r - b, 1, r});
    return WeightVector(r, {r + b, r - b, 1, r});
}

std::string to_string(Factorization f) {
    switch (f) {
        case Factorization::Reducible: return "reducible";
        case Factorization::IrreducibleOverQ: return "irreducible-over-Q";
        case Factorization::Undecided: return "undecided";
    }
    return "?";
}

IrreducibilityResult invariant_irreducibility(const Poly& f, std::int64_t r) {
    IrreducibilityResult res;
    Poly fz = f.with_vars(V4);
    for (const auto& [e, c] : fz.terms())
        if (e[0] || e[1] || e[2] % r) throw std::invalid_argument("not a function of z^r and u");
    Poly F = to_su(fz, r);
    if (F.total_degree() <= 0) throw std::invalid_argument("constant function");

    // monomial content
    int ms = F.order_in(0), mu = F.order_in(1);
    if (ms || mu) {
        Exps e = {ms, mu};
        Poly rest = F.divide_monomial(e);
        if (!is_constant(rest)) {
            res.outcome = Factorization::Reducible;
            res.factors = {from_su(Poly::monomial(SU, e), r), from_su(rest, r)};
            res.method = "monomial factor";
            return res;
        }
        if (ms + mu == 1) {
            res.outcome = Factorization::IrreducibleOverQ;
            res.absolute = true;
            res.method = "coordinate function";
            return res;
        }
        Exps one = ms ? Exps{1, 0} : Exps{0, 1};
        res.outcome = Factorization::Reducible;
        res.factors = {from_su(Poly::monomial(SU, one), r), from_su(F.divide_monomial(one), r)};
        res.method = "monomial";
        return res;
    }

    std::string sq = specialization_squarefree(F, 0) && specialization_squarefree(F, 1) ? "square-free" : "square-free unknown";

    auto nd = newton_indecomposable(F);
    if (nd && *nd) {
        res.outcome = Factorization::IrreducibleOverQ;
        res.absolute = true;
        res.method = sq + ", Newton polygon indecomposable";
        return res;
    }

    // degree one in a variable: irreducible iff the two coefficients are coprime
    for (std::size_t var = 0; var < 2; ++var) {
        if (F.degree_in(var) != 1) continue;
        const std::size_t other = 1 - var;
        UPoly a = upoly_from(coeff_poly(F, var, 1), other), b = upoly_from(coeff_poly(F, var, 0), other);
        UPoly g = upoly_gcd(a, b);
        if (upoly_trim(g).size() <= 1) {
            res.outcome = Factorization::IrreducibleOverQ;
            res.absolute = true;
            res.method = sq + ", linear in " + SU[var] + " with coprime coefficients";
            return res;
        }
    }

    bool exhaustive = false;
    for (std::size_t var = 0; var < 2; ++var) {
        RootSearch rs = polynomial_root(F, var);
        const std::size_t other = 1 - var;
        if (rs.line) {
            res.outcome = Factorization::Reducible;
            res.factors = {from_su(*rs.line, r), from_su(divide_linear(F, other, Poly::variable(SU, other) - *rs.line), r)};
            res.method = "vanishes on a line";
            return res;
        }
        if (rs.root && F.degree_in(var) >= 2) {
            res.outcome = Factorization::Reducible;
            res.factors = {from_su(Poly::variable(SU, var) - *rs.root, r), from_su(divide_linear(F, var, *rs.root), r)};
            res.method = "factor of degree one in " + SU[var];
            return res;
        }
        const int d = F.degree_in(var);
        if (rs.complete && !rs.root && d <= 3 && is_constant(coeff_poly(F, var, d))) exhaustive = true;
    }
    if (exhaustive) {
        res.outcome = Factorization::IrreducibleOverQ;
        res.method = sq + ", no factor of degree one";
        return res;
    }
    res.method = sq + ", bounded search inconclusive";
    return res;
}

std::vector<std::string> check_chart(const FlopModel& fm, const FlopChart& c) {
    std::vector<std::string> out;
    RPoly image = c.coord_map.apply(fm.v_equation);
    RPoly expected = RPoly::from_poly(c.equation).shift(c.factor);
    if (!(image == expected)) out.push_back(c.name + ": pulled back equation differs from the chart equation");
    return out;
}

NormalizedChart normalize_chart(const FlopChart& c) {
    const std::size_t n = c.vars.size();
    Poly eq = c.equation;
    std::optional<std::size_t> lin;
    for (std::size_t v = 0; v < n && !lin; ++v) {
        Exps e(n, 0);
        e[v] = 1;
        if (eq.coeff(e) == 0) continue;
        bool clean = true;
        for (const auto& [t, k] : eq.terms())
            if (t[v] && t != e) clean = false;
        if (clean) lin = v;
    }
    NormalizedChart nc;
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < n; ++v)
        if (!lin || v != *lin) keep.push_back(v);
    for (auto v : keep) nc.vars.push_back(c.vars[v]);
    nc.action = c.action.restricted(keep).reduced().normalized();
    if (!lin) nc.equations = {eq};
    return nc;
}

VPrimeReport v_prime(const FlopModel& fm, const WeightVector& w) {
    check_weight(fm, w);
    const std::int64_t r = fm.r, b = w.b[0], c = w.b[1], m = fm.m;
    const Rat B = make_rat(b, r), C = make_rat(c, r), R = make_rat(1, r);
    const Poly& f = fm.f;
    const Poly X = var4(0), Y = var4(1), U = var4(3);
    VPrimeReport rep;
    ChartAtlas& at = rep.atlas;

    MonomialMap mx = map4(ex(B, 0, 0, 0), ex(C, 1, 0, 0), ex(R, 0, 1, 0), ex(1, 0, 0, 1));
    MonomialMap my = map4(ex(1, B, 0, 0), ex(0, C, 0, 0), ex(0, R, 1, 0), ex(0, 1, 0, 1));
    MonomialMap mu = map4(ex(1, 0, 0, B), ex(0, 1, 0, C), ex(0, 0, 1, R), ex(0, 0, 0, 1));
    MonomialMap mz = map4(ex(1, 0, B, 0), ex(0, 1, C, 0), ex(0, 0, R, 0), ex(0, 0, 1, 1));
    at.v_side.push_back(make_chart("U''_1 (U'_x)", QuotientAction(b, {b - r, c, 1, r}),
                                   Y + U * pull(f, mx, ex(-m, 0, 0, 0)), mx, ex(m + 1, 0, 0, 0)));
    at.v_side.push_back(make_chart("U''_2 (U'_y)", QuotientAction(c, {b, c - r, 1, r}),
                                   X + U * pull(f, my, ex(0, -m, 0, 0)), my, ex(0, m + 1, 0, 0)));
    rep.f_prime = pull(f, mu, ex(0, 0, 0, -m));
    at.v_side.push_back(make_chart("U''_3 (U'_u)", QuotientAction(r, {b, c, 1, r}), X * Y + rep.f_prime, mu,
                                   ex(0, 0, 0, m + 1)));
    rep.f_second = pull(f, mz, ex(0, 0, -m, 0));
    rep.w_f_second = weight_zu(rep.f_second, r);
    if (m == fm.k) {
        FlopChart uz = make_chart("U''_4 (U'_z)", QuotientAction::trivial_action(4), X * Y + U * rep.f_second, mz,
                                  ex(0, 0, m + 1, 0));
        rep.uz_smooth = classify_local(uz.action, uz.vars, {uz.equation}).status == PointStatus::Smooth;
        at.v_side.push_back(uz);
    } else {
        MonomialMap m4 = map4(ex(1, 0, B, 0), ex(0, 1, C, 0), ex(0, 0, R, 0), ex(1, 0, 1, 1));
        MonomialMap m5 = map4(ex(1, 0, B, 1), ex(0, 1, C, 0), ex(0, 0, R, 0), ex(0, 0, 1, 1));
        at.v_side.push_back(make_chart("U''_4 (U''_{1,x})", QuotientAction::trivial_action(4),
                                       Y + U * pull(f, m4, ex(0, 0, -m, 0)), m4, ex(1, 0, m + 1, 0)));
        at.v_side.push_back(make_chart("U''_5 (U''_{1,u})", QuotientAction::trivial_action(4),
                                       X * Y + pull(f, m5, ex(0, 0, -m, 0)), m5, ex(0, 0, m + 1, 1)));
    }

    MonomialMap n1 = map4(ex(B, 0, 0, 1), ex(C, 1, 0, 0), ex(R, 0, 1, 0), ex(1, 0, 0, 1));
    MonomialMap n2 = map4(ex(1, B, 0, 1), ex(0, C, 0, 0), ex(0, R, 1, 0), ex(0, 1, 0, 1));
    MonomialMap n4 = map4(ex(1, 0, 0, 0), ex(0, 1, 0, 0), ex(0, 0, 1, 0), ex(1, 0, 0, 1));
    MonomialMap n5 = map4(ex(1, 0, B, 1), ex(0, 1, C, 0), ex(0, 0, R, 0), ex(0, 0, 1, 1));
    const std::int64_t be = fm.beta;
    at.z_side.push_back(make_chart("U'_1 (U'_{1,x})", QuotientAction(b - r, {b - 2 * r, c, 1, r}),
                                   Y + pull(f, n1, ex(-m, 0, 0, 0)), n1, ex(m + 1, 0, 0, 1)));
    at.z_side.push_back(make_chart("U'_2 (U'_{1,y})", QuotientAction(c, {b - r, c - r, 1, r}),
                                   X + pull(f, n2, ex(0, -m, 0, 0)), n2, ex(0, m + 1, 0, 1)));
    at.z_side.push_back(make_chart("U'_3 (U'_{1,u})", QuotientAction(r, {b - r, c, 1, r}),
                                   X * Y + pull(f, mu, ex(0, 0, 0, -m)), mu, ex(0, 0, 0, m + 1)));
    at.z_side.push_back(make_chart("U'_4 (U_{1,x})", QuotientAction(r, {be, -be, 1, -be}),
                                   Y + U * pull(f, n4, RExps(4, Rat(0))), n4, ex(1, 0, 0, 0)));
    at.z_side.push_back(make_chart("U'_5 (U'_{1,z})", QuotientAction::trivial_action(4),
                                   X * Y + pull(f, n5, ex(0, 0, -m, 0)), n5, ex(0, 0, m + 1, 1)));

    rep.irreducibility = invariant_irreducibility(rep.f_prime, r);
    if (rep.irreducibility.outcome == Factorization::Reducible) rep.q_factorial = "no";
    else if (rep.irreducibility.absolute) rep.q_factorial = "yes";
    else rep.q_factorial = "undecided";
    return rep;
}

FlipReport flip_bookkeeping(const FlopModel& fm, const WeightVector& w, DepthEngine& eng) {
    check_weight(fm, w);
    const std::int64_t r = fm.r, b = w.b[0];
    if (b <= r) throw std::invalid_argument("center not at the origin of U_{1,u}: w'(x_1) = (b - r)/r <= 0");
    VPrimeReport rep = v_prime(fm, w);
    FlipReport out;
    out.v_indices = {b};
    out.z_indices = {b - r, r};
    out.delta = (b - 1) - ((b - r - 1) + (r - 1));
    out.delta_gdep = local_gdep(rep.atlas.v_side.at(0), eng) - local_gdep(rep.atlas.z_side.at(0), eng) -
                     local_gdep(rep.atlas.z_side.at(3), eng);
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// depth of a bracketed piece starting at path[i] == BlowUp; i ends after the matching BlowDown
int bracket_depth(const std::vector<DiagramStep>& path, std::size_t& i) {
    ++i;
    int inner = 0;
    while (i < path.size()) {
        switch (path[i]) {
            case DiagramStep::Flop: ++i; break;
            case DiagramStep::BlowUp: inner = std::max(inner, bracket_depth(path, i)); break;
            case DiagramStep::BlowDown: ++i; return inner + 1;
        }
    }
    throw MalformedDiagram("blow-up without a matching blow-down");
}

}  // namespace

std::vector<int> omega_factorization(const std::vector<DiagramStep>& path) {
    std::vector<int> out;
    bool flops = false;
    for (std::size_t i = 0; i < path.size();) {
        switch (path[i]) {
            case DiagramStep::Flop:
                if (!flops) out.push_back(0);
                flops = true;
                ++i;
                break;
            case DiagramStep::BlowUp:
                out.push_back(bracket_depth(path, i));
                flops = false;
                break;
            case DiagramStep::BlowDown: throw MalformedDiagram("blow-down without a blow-up before it");
        }
    }
    if (out.empty()) out.push_back(0);
    return out;
}

int omega_label(const std::vector<DiagramStep>& path) {
    std::vector<int> pieces = omega_factorization(path);
    if (pieces.size() == 1) return pieces[0];
    bool all_flops = std::all_of(pieces.begin(), pieces.end(), [](int p) { return p == 0; });
    if (all_flops) return 0;
    throw MalformedDiagram("path is a composition of " + std::to_string(pieces.size()) + " diagrams, not one");
}

}  // namespace birat3
