#include "birat3/blowup.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>

namespace birat3 {

Rat discrepancy_formula(const WeightVector& w, const std::vector<Poly>& equations) {
    Rat d = w.sum() - 1;
    for (const auto& f : equations) d -= weight_of(f, w);
    return d;
}

Contraction weighted_blowup(const SingularityModel& m, const WeightVector& w) {
    if (w.n() != m.n()) throw std::invalid_argument("weight length differs from the number of variables");
    require_compatible(m.ambient, w);
    for (const auto& f : m.equations) {
        if (f.is_zero()) throw std::invalid_argument("zero equation");
        semi_invariant_character(f, m.ambient);
    }
    Contraction c;
    c.source = m;
    c.weight = w;
    c.discrepancy = discrepancy_formula(w, m.equations);
    c.nonpositive = c.discrepancy <= 0;
    for (std::size_t i = 1; i <= m.n(); ++i) {
        Chart ch;
        ch.index = i;
        ch.label = "U_" + m.vars[i - 1];
        ch.lattice = chart_decomposition(m.ambient, w, i);
        ch.quotient = ch.lattice.action;
        ch.vars = m.vars;
        for (const auto& f : m.equations) ch.equations.push_back(strict_transform(f, w, i));
        ch.coord_map = chart_map(w, i);
        c.charts.push_back(std::move(ch));
    }
    c.m = c.charts.front().lattice.m;
    std::string b;
    for (std::size_t k = 0; k < w.n(); ++k) b += (k ? "," : "") + std::to_string(w.b[k]);
    c.exceptional_description = "P(" + b + ")";
    if (c.m > 1) c.exceptional_description += "/Z_" + std::to_string(c.m);
    return c;
}

bool is_w_morphism(const Contraction& c) { return c.discrepancy == make_rat(1, cartier_index(c.source)); }

std::string to_string(PointStatus s) {
    switch (s) {
        case PointStatus::Absent: return "absent";
        case PointStatus::Smooth: return "smooth";
        case PointStatus::Quotient: return "quotient";
        case PointStatus::CA: return "cA";
        case PointStatus::Unclassified: return "unclassified";
    }
    return "?";
}

namespace {

const std::vector<std::string> kV3 = {"x", "y", "z"};
const std::vector<std::string> kV4 = {"x", "y", "z", "u"};

Exps unit(std::size_t n, std::size_t i, int k = 1) {
    Exps e(n, 0);
    e[i] = k;
    return e;
}

Poly rename(const Poly& f, const std::vector<std::string>& names) {
    Poly p(names);
    for (const auto& [e, c] : f.terms()) p.add_term(e, c);
    return p;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t r) {
    for (std::int64_t k = 1; k < r; ++k)
        if (mod64(a * k, r) == 1) return k;
    return 0;
}

bool has_reflection(const QuotientAction& g) {
    QuotientAction q = g.reduced();
    for (std::int64_t k = 1; k < q.r; ++k) {
        int moved = 0;
        for (auto a : q.a)
            if (mod64(k * a, q.r) != 0) ++moved;
        if (moved == 1) return true;
    }
    return false;
}

// Quotient by the subgroup generated by reflections: the coordinate a reflection moves is
// replaced by its power, which changes the residual action. Returns the new action and
// flags for the coordinates that were replaced.
QuotientAction strip_reflections(QuotientAction g, std::vector<bool>& powered) {
    powered.assign(g.n(), false);
    for (bool again = true; again;) {
        again = false;
        g = g.reduced();
        if (g.r == 1) break;
        for (std::size_t j = 0; j < g.n(); ++j) {
            std::int64_t e = g.r;
            for (std::size_t l = 0; l < g.n(); ++l)
                if (l != j) e = gcd64(e, g.a[l]);
            if (e == 1) continue;
            std::int64_t r2 = g.r / e;
            std::vector<std::int64_t> a(g.n());
            for (std::size_t l = 0; l < g.n(); ++l) a[l] = l == j ? mod64(g.a[j], r2) : mod64(g.a[l] / e, r2);
            g = QuotientAction(r2, a);
            powered[j] = true;
            again = true;
            break;
        }
    }
    return g.reduced();
}

struct CanonicalQuotient {
    QuotientAction action;
    std::vector<std::size_t> order;  // model coordinate k is input coordinate order[k]
};

CanonicalQuotient canonical_order(const QuotientAction& g0) {
    QuotientAction g = g0.reduced();
    CanonicalQuotient best;
    bool have = false;
    for (std::int64_t k = 1; k <= std::max<std::int64_t>(g.r - 1, 1); ++k) {
        if (gcd64(k, g.r) != 1) continue;
        std::vector<std::size_t> idx(g.n());
        std::iota(idx.begin(), idx.end(), 0);
        std::vector<std::int64_t> v(g.n());
        for (std::size_t i = 0; i < g.n(); ++i) v[i] = mod64(k * g.a[i], g.r);
        std::stable_sort(idx.begin(), idx.end(), [&](std::size_t p, std::size_t q) { return v[p] < v[q]; });
        std::vector<std::int64_t> s;
        for (auto i : idx) s.push_back(v[i]);
        QuotientAction cand(g.r, s);
        if (!have || cand.a < best.action.a) {
            best = {cand, idx};
            have = true;
        }
    }
    return best;
}

Poly translate(const Poly& f, std::size_t v, const Rat& t) {
    std::vector<Poly> img;
    for (std::size_t k = 0; k < f.nvars(); ++k) {
        Poly p = Poly::variable(f.vars(), k);
        if (k == v) p = p + Poly::constant(f.vars(), t);
        img.push_back(p);
    }
    return f.compose(img);
}

Poly substitute(const Poly& f, std::size_t v, const Poly& by) {
    std::vector<Poly> img;
    for (std::size_t k = 0; k < f.nvars(); ++k) img.push_back(k == v ? by : Poly::variable(f.vars(), k));
    return f.compose(img);
}

bool involves(const Poly& f, std::size_t v) {
    for (const auto& [e, c] : f.terms())
        if (e[v]) return true;
    return false;
}

std::vector<Poly> jacobian_minors(const std::vector<Poly>& eqs) {
    if (eqs.empty()) return {};
    const std::size_t n = eqs[0].nvars();
    std::vector<Poly> out;
    if (eqs.size() == 1) {
        for (std::size_t i = 0; i < n; ++i) out.push_back(eqs[0].derivative(i));
    } else if (eqs.size() == 2) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                out.push_back(eqs[0].derivative(i) * eqs[1].derivative(j) - eqs[0].derivative(j) * eqs[1].derivative(i));
    } else {
        throw std::invalid_argument("at most two equations");
    }
    return out;
}

// restriction to the v-axis as a univariate polynomial
UPoly on_axis(const Poly& f, std::size_t v) {
    Poly p(f.vars());
    for (const auto& [e, c] : f.terms()) {
        bool ok = true;
        for (std::size_t k = 0; k < e.size(); ++k)
            if (k != v && e[k]) ok = false;
        if (ok) p.add_term(e, c);
    }
    return upoly_from(p, v);
}

UPoly gcd_all(const std::vector<UPoly>& ps) {
    UPoly g;
    for (const auto& p : ps) {
        if (p.empty()) continue;
        g = g.empty() ? upoly_gcd(p, p) : upoly_gcd(g, p);
    }
    return g;
}

Rat upoly_eval(const UPoly& p, const Rat& t) {
    Rat s = 0;
    for (std::size_t k = p.size(); k-- > 0;) s = s * t + p[k];
    return s;
}

struct Candidate {
    QuotientAction action;
    Poly eq;
    std::vector<Poly> coords;  // input coordinate k in model coordinates
};

}  // namespace

std::optional<LocalPoint> recognize_ca(const QuotientAction& g0, const Poly& f) {
    if (f.nvars() != 4 || g0.n() != 4) return std::nullopt;
    if (f.order() != 2) return std::nullopt;
    const QuotientAction g = g0.reduced();
    const std::size_t n = 4;
    if (g.r > 1 && has_reflection(g)) return std::nullopt;
    std::optional<Candidate> best;
    std::string best_key;

    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            Exps pq(n, 0);
            pq[p] = pq[q] = 1;
            Rat c = f.coeff(pq);
            if (c == 0) continue;
            Poly A(f.vars()), B(f.vars()), F(f.vars());
            bool ok = true;
            for (const auto& [e, k] : f.terms()) {
                if (e == pq) continue;
                if (e[p] && e[q]) ok = false;
                else if (e[p] > 1 || e[q] > 1) ok = false;
                else if (e[p]) A.add_term(Exps(e.begin(), e.end()) , k);
                else if (e[q]) B.add_term(e, k);
                else F.add_term(e, k);
            }
            if (!ok) continue;
            A = A.divide_monomial(unit(n, p));
            B = B.divide_monomial(unit(n, q));
            Poly Fp = (F - A * B * (Rat(1) / c)) * (Rat(1) / c);
            if (Fp.is_zero() || Fp.order() < 2) continue;
            std::vector<std::size_t> rest;
            for (std::size_t k = 0; k < n; ++k)
                if (k != p && k != q) rest.push_back(k);

            for (int swap_xy = 0; swap_xy < 2; ++swap_xy) {
                for (int swap_zu = 0; swap_zu < 2; ++swap_zu) {
                    std::size_t ix = swap_xy ? q : p, iy = swap_xy ? p : q;
                    std::size_t iz = swap_zu ? rest[1] : rest[0], iu = swap_zu ? rest[0] : rest[1];
                    QuotientAction act = QuotientAction::trivial_action(4);
                    if (g.r > 1) {
                        if (mod64(g.a[p] + g.a[q], g.r) != 0 || g.a[iu] != 0) continue;
                        std::int64_t inv = inverse_mod(g.a[iz], g.r);
                        if (!inv) continue;
                        std::int64_t beta = mod64(g.a[ix] * inv, g.r);
                        if (gcd64(beta, g.r) != 1 || 2 * beta > g.r) continue;
                        act = QuotientAction(g.r, {beta, g.r - beta, 1, 0});
                    }
                    // input coordinates in terms of model coordinates X,Y,Z,U
                    std::vector<Poly> img(n, Poly(kV4));
                    std::vector<Poly> to_model(n, Poly(kV4));
                    to_model[ix] = Poly::variable(kV4, 0);
                    to_model[iy] = Poly::variable(kV4, 1);
                    to_model[iz] = Poly::variable(kV4, 2);
                    to_model[iu] = Poly::variable(kV4, 3);
                    Poly Bm = B.compose(to_model) * (Rat(1) / c);  // in Z,U
                    Poly Am = A.compose(to_model) * (Rat(1) / c);
                    img[p] = to_model[p] - (p == ix ? Bm : Am);
                    img[q] = to_model[q] - (q == iy ? Am : Bm);
                    img[iz] = to_model[iz];
                    img[iu] = to_model[iu];
                    Poly eq = Poly::variable(kV4, 0) * Poly::variable(kV4, 1) + Fp.compose(to_model);
                    Candidate cand{act, eq, img};
                    // prefer the low power of z: compare the z-order of g(z,0) first
                    Poly gz0 = (eq - Poly::variable(kV4, 0) * Poly::variable(kV4, 1)).substitute_constant(3, 0);
                    int oz = gz0.is_zero() ? 999 : gz0.order();
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "%03d", oz);
                    std::string key = std::string(buf) + act.str() + eq.str();
                    if (!best || key < best_key) {
                        best = cand;
                        best_key = key;
                    }
                }
            }
        }
    }
    if (!best) return std::nullopt;
    LocalPoint lp;
    lp.status = PointStatus::CA;
    lp.model.ambient = best->action;
    lp.model.vars = kV4;
    lp.model.equations = {best->eq};
    lp.model.declared_class = "cA/r";
    for (const auto& p : best->coords) lp.chart_coords.push_back(p);
    lp.detail = lp.model.str();
    return lp;
}

SingularityModel canonical_quotient(const QuotientAction& g) {
    CanonicalQuotient c = canonical_order(g);
    SingularityModel m;
    m.ambient = c.action;
    m.vars = kV3;
    m.declared_class = c.action.r == 1 ? "smooth" : "quotient";
    return m;
}

LocalPoint classify_local(const QuotientAction& g, const std::vector<std::string>& vars, const std::vector<Poly>& eqs0) {
    const std::size_t n = vars.size();
    LocalPoint lp;
    std::vector<Poly> eqs;
    for (const auto& f : eqs0) {
        if (f.is_zero()) continue;
        if (f.coeff(Exps(n, 0)) != 0) return lp;  // Absent
        eqs.push_back(f);
    }
    std::vector<std::optional<Poly>> img;
    for (std::size_t k = 0; k < n; ++k) img.push_back(Poly::variable(vars, k));
    std::vector<bool> alive(n, true);

    // solve for variables occurring only linearly in one equation
    for (bool again = true; again;) {
        again = false;
        for (std::size_t q = 0; q < eqs.size() && !again; ++q) {
            for (std::size_t v = 0; v < n && !again; ++v) {
                if (!alive[v]) continue;
                Rat c = eqs[q].coeff(unit(n, v));
                if (c == 0) continue;
                bool clean = true;
                for (const auto& [e, k] : eqs[q].terms())
                    if (e[v] && e != unit(n, v)) clean = false;
                if (!clean) continue;
                Poly h = eqs[q] - Poly::monomial(vars, unit(n, v), c);
                Poly sub = h * (Rat(-1) / c);
                for (std::size_t o = 0; o < eqs.size(); ++o)
                    if (o != q) eqs[o] = substitute(eqs[o], v, sub);
                for (auto& im : img)
                    if (im) im = substitute(*im, v, sub);
                eqs.erase(eqs.begin() + static_cast<std::ptrdiff_t>(q));
                alive[v] = false;
                again = true;
            }
        }
    }
    for (const auto& f : eqs)
        if (f.coeff(Exps(n, 0)) != 0) return lp;
    // a remaining linear term: smooth hypersurface, the other coordinates parametrize it
    for (std::size_t q = 0; q < eqs.size(); ++q) {
        if (eqs[q].order() != 1) continue;
        if (eqs.size() > 1) {
            lp.status = PointStatus::Unclassified;
            lp.detail = "complete intersection with a smooth member";
            return lp;
        }
        for (std::size_t v = 0; v < n; ++v) {
            if (!alive[v] || eqs[q].coeff(unit(n, v)) == 0) continue;
            alive[v] = false;
            for (auto& im : img)
                if (im && involves(*im, v)) im.reset();
            break;
        }
        eqs.clear();
        break;
    }

    std::vector<std::size_t> keep;
    std::vector<std::string> kvars;
    for (std::size_t k = 0; k < n; ++k)
        if (alive[k]) {
            keep.push_back(k);
            kvars.push_back(vars[k]);
        }
    QuotientAction h = g.restricted(keep).reduced();
    std::vector<Poly> keqs;
    for (const auto& f : eqs) keqs.push_back(f.with_vars(kvars));

    auto finish = [&](const std::vector<std::optional<Poly>>& local_to_model) {
        // local_to_model[j]: kept coordinate j in model coordinates
        lp.chart_coords.clear();
        for (std::size_t k = 0; k < n; ++k) {
            if (!img[k] || !std::all_of(local_to_model.begin(), local_to_model.end(), [](const auto& p) { return p.has_value(); })) {
                bool need = img[k].has_value();
                if (need) {
                    Poly ik = img[k]->with_vars(kvars);
                    bool ok = true;
                    for (std::size_t j = 0; j < keep.size(); ++j)
                        if (!local_to_model[j] && involves(ik, j)) ok = false;
                    if (ok) {
                        std::vector<Poly> sub;
                        for (std::size_t j = 0; j < keep.size(); ++j)
                            sub.push_back(local_to_model[j] ? *local_to_model[j] : Poly(lp.model.vars));
                        lp.chart_coords.push_back(ik.compose(sub));
                        continue;
                    }
                }
                lp.chart_coords.push_back(std::nullopt);
                continue;
            }
            std::vector<Poly> sub;
            for (const auto& p : local_to_model) sub.push_back(*p);
            lp.chart_coords.push_back(img[k]->with_vars(kvars).compose(sub));
        }
    };

    if (keqs.empty()) {
        std::vector<bool> powered;
        QuotientAction s = strip_reflections(h, powered);
        if (s.r == 1) {
            lp.status = PointStatus::Smooth;
            return lp;
        }
        if (keep.size() != 3 || !terminal_quotient_check(s)) {
            lp.status = PointStatus::Unclassified;
            lp.detail = "quotient " + s.str() + " is not a terminal point of a threefold";
            return lp;
        }
        CanonicalQuotient cq = canonical_order(s);
        lp.status = PointStatus::Quotient;
        lp.model = canonical_quotient(s);
        std::vector<std::optional<Poly>> l2m(3);
        for (std::size_t k = 0; k < 3; ++k) {
            std::size_t j = cq.order[k];
            if (!powered[j]) l2m[j] = Poly::variable(kV3, k);
        }
        finish(l2m);
        lp.detail = lp.model.str();
        return lp;
    }
    if (keqs.size() == 1 && keep.size() == 4) {
        if (auto ca = recognize_ca(h, keqs[0])) {
            lp.status = PointStatus::CA;
            lp.model = ca->model;
            lp.detail = ca->detail;
            std::vector<std::optional<Poly>> l2m(ca->chart_coords.begin(), ca->chart_coords.end());
            finish(l2m);
            return lp;
        }
    }
    lp.status = PointStatus::Unclassified;
    lp.model.ambient = h;
    lp.model.vars = kvars;
    lp.model.equations = keqs;
    lp.model.declared_class = "cDV-other";
    lp.detail = lp.model.str();
    return lp;
}

std::vector<ChartPoint> chart_singularities(const Contraction& c) {
    std::vector<ChartPoint> out;
    const std::size_t n = c.source.n();
    for (const auto& ch : c.charts) {
        const std::size_t i = ch.index - 1;
        if (!ch.lattice.cyclic) {
            LocalPoint lp;
            lp.status = PointStatus::Unclassified;
            lp.detail = "chart group is not cyclic";
            out.push_back({ch.index, ch.label, "chart", lp, std::nullopt, 0});
            continue;
        }
        LocalPoint o = classify_local(ch.quotient, ch.vars, ch.equations);
        if (o.status != PointStatus::Absent && o.status != PointStatus::Smooth)
            out.push_back({ch.index, ch.label, "origin", o, std::nullopt, 0});

        const QuotientAction G = ch.quotient.reduced();
        std::vector<Poly> minors = jacobian_minors(ch.equations);
        for (std::size_t v = i + 1; v < n; ++v) {
            const std::string& name = ch.vars[v];
            const std::string line = "the " + name + "-line";
            std::int64_t d = gcd64(G.a[v], G.r);
            std::vector<std::int64_t> ha(n);
            for (std::size_t k = 0; k < n; ++k) ha[k] = mod64(G.a[k], d);
            QuotientAction H(d, ha);
            auto unclassified = [&](const std::string& why) {
                LocalPoint lp;
                lp.status = PointStatus::Unclassified;
                lp.detail = why;
                out.push_back({ch.index, ch.label, line, lp, v, 0});
            };
            auto local_at = [&](const Rat& t) {
                std::vector<Poly> te;
                for (const auto& f : ch.equations) te.push_back(translate(f, v, t));
                return classify_local(H, ch.vars, te);
            };

            std::vector<UPoly> er;
            for (const auto& f : ch.equations) er.push_back(on_axis(f, v));
            UPoly Pe = gcd_all(er);
            std::vector<UPoly> jr;
            for (const auto& mi : minors) jr.push_back(on_axis(mi, v));
            UPoly J = gcd_all(jr);

            UPoly Q;
            if (Pe.empty()) {
                // the line lies on Y: look at a general point of it
                if (!ch.equations.empty() && J.empty()) {
                    unclassified("singular along " + line);
                    continue;
                }
                Rat t = 1;
                while (!J.empty() && upoly_eval(J, t) == 0) t += 1;
                LocalPoint gen = local_at(t);
                if (gen.status != PointStatus::Smooth) {
                    unclassified("singular along " + line);
                    continue;
                }
                Q = J;
            } else {
                Q = (d > 1 || J.empty()) ? Pe : upoly_gcd(Pe, J);
            }
            // drop the origin
            std::size_t z = 0;
            while (z < Q.size() && Q[z] == 0) ++z;
            Q.erase(Q.begin(), Q.begin() + static_cast<std::ptrdiff_t>(std::min(z, Q.size())));
            if (Q.size() <= 1) continue;
            std::vector<Rat> roots = upoly_rational_roots(Q);
            int found = 0;
            for (const auto& t : roots) found += upoly_root_multiplicity(Q, t);
            if (found < static_cast<int>(Q.size()) - 1) unclassified("points of " + line + " not defined over Q");
            const std::int64_t orbit = G.r / d;
            for (const auto& t : roots) {
                if (orbit % 2 == 0 && t < 0 && std::find(roots.begin(), roots.end(), -t) != roots.end()) continue;
                LocalPoint lp = local_at(t);
                if (lp.status == PointStatus::Absent || lp.status == PointStatus::Smooth) continue;
                out.push_back({ch.index, ch.label, name + "=" + to_string(t) + " on " + line, lp, v, t});
            }
        }
    }
    return out;
}

bool point_sets_complete(const std::vector<ChartPoint>& pts) {
    return std::none_of(pts.begin(), pts.end(), [](const ChartPoint& p) { return p.point.status == PointStatus::Unclassified; });
}

// ---------------------------------------------------------------------------

namespace {

bool literal_ca(const SingularityModel& m) {
    if (m.declared_class != "cA/r" || m.n() != 4 || m.equations.size() != 1) return false;
    return validate_normal_form(m).valid;
}

void add_sorted(WMorphismList& out, Contraction c) {
    for (const auto& o : out.contractions)
        if (o.weight == c.weight) return;
    out.contractions.push_back(std::move(c));
}

void finish_sort(WMorphismList& out) {
    std::sort(out.contractions.begin(), out.contractions.end(),
              [](const Contraction& a, const Contraction& b) { return a.weight.b < b.weight.b || (a.weight.b == b.weight.b && a.weight.r < b.weight.r); });
}

WMorphismList enumerate_ca(const SingularityModel& m0) {
    WMorphismList out;
    SingularityModel m = m0;
    if (!literal_ca(m)) {
        auto ca = recognize_ca(m.ambient, m.equations.at(0));
        if (!ca) {
            out.complete = false;
            out.note = "equation is not of the form xy + g(z,u) in these coordinates";
            return out;
        }
        m = ca->model;
    }
    const QuotientAction g = m.ambient.reduced();
    const std::int64_t r = g.r;
    const std::int64_t k = ca_weight_k(m);
    const std::int64_t beta = r == 1 ? 0 : mod64(m.ambient.a[0] * inverse_mod(mod64(m.ambient.a[2], m.ambient.r), m.ambient.r), m.ambient.r);
    Poly gz = m.equations[0] - Poly::monomial(m.vars, {1, 1, 0, 0});
    if (r > 1 && gz.coeff({0, 0, static_cast<int>(r * k), 0}) == 0) {
        out.complete = false;
        out.note = "z^" + std::to_string(r * k) + " is missing from g; the list covers the weights read off these coordinates";
    }
    for (std::int64_t b = 1; b < r * k; ++b) {
        if (r > 1 && mod64(b - beta, r) != 0) continue;
        std::int64_t c = r * k - b;
        WeightVector w(r, {b, c, 1, r});
        Contraction con = weighted_blowup(m, w);
        if (is_w_morphism(con)) add_sorted(out, std::move(con));
    }
    finish_sort(out);
    return out;
}

WMorphismList enumerate_from_tables(const SingularityModel& m, bool complete) {
    WMorphismList out;
    out.complete = complete;
    const Rat target = make_rat(1, cartier_index(m));
    std::vector<std::size_t> perm(m.n());
    std::iota(perm.begin(), perm.end(), 0);
    int deg = 0;
    for (const auto& f : m.equations) deg = std::max(deg, f.total_degree());
    do {
        SingularityModel pm;
        pm.ambient = m.ambient.permuted(perm);
        pm.declared_class = m.declared_class;
        for (const auto& e : table_registry()) {
            if (entry_class(e) != m.declared_class || e.vars.size() != m.n() || e.equations.size() != m.equations.size())
                continue;
            pm.vars = e.vars;
            pm.equations.clear();
            for (const auto& f : m.equations) pm.equations.push_back(rename(f.permuted(perm), e.vars));
            std::map<std::string, std::vector<Rat>> ov;
            for (const auto& p : e.sweep)
                if (p.name == "k" && p.value.empty() && m.declared_class.rfind("cAx", 0) == 0)
                    for (int k = 0; k <= 2 * deg + 2; ++k) ov["k"].push_back(Rat(k));
            for (const auto& P : sweep_bindings(e, ov)) {
                std::map<std::string, Poly> none;
                ExprEnv env{&P, &none, e.vars};
                WeightVector w;
                try {
                    std::vector<std::int64_t> a;
                    for (const auto& s : e.action_a) a.push_back(to_i64(eval_expr(s, env)));
                    if (!(QuotientAction(to_i64(eval_expr(e.action_r, env)), a).reduced() == pm.ambient.reduced())) continue;
                    Rat wr = eval_expr(e.weight_r, env);
                    std::vector<std::int64_t> b;
                    for (const auto& s : e.weight_b) b.push_back(to_i64(eval_expr(s, env)));
                    w = WeightVector(to_i64(wr), b);
                } catch (const std::exception&) {
                    continue;
                }
                TableCheckReport rep = validate_table_entry(pm, e, w, Bindings{P, {}});
                if (!rep.passed || !rep.computed_discrepancy || *rep.computed_discrepancy != target) continue;
                std::vector<std::int64_t> back(m.n());
                for (std::size_t k = 0; k < m.n(); ++k) back[perm[k]] = w.b[k];
                add_sorted(out, weighted_blowup(m, WeightVector(w.r, back)));
            }
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    finish_sort(out);
    if (!complete) out.note = "table-guided candidates in the row's coordinates only";
    return out;
}

}  // namespace

std::int64_t ca_weight_k(const SingularityModel& m) {
    const QuotientAction g = m.ambient.reduced();
    Poly gz = m.equations.at(0) - Poly::monomial(m.vars, {1, 1, 0, 0});
    if (gz.is_zero()) throw std::invalid_argument("g(z,u) vanishes");
    std::optional<Rat> k;
    for (const auto& [e, c] : gz.terms()) {
        Rat t = make_rat(e[2], g.r) + e[3];
        if (!k || t < *k) k = t;
    }
    if (!is_integer(*k)) throw std::invalid_argument("g(z,u) has fractional weight " + to_string(*k));
    return to_i64(*k);
}

WMorphismList enumerate_w_morphisms(const SingularityModel& m) {
    const std::string& cls = m.declared_class;
    if (cls == "smooth") return {};
    if (cls == "quotient") {
        WMorphismList out;
        if (m.n() != 3 || !m.equations.empty() || !terminal_quotient_check(m.ambient)) {
            out.complete = false;
            out.note = "not a terminal quotient point";
            return out;
        }
        if (m.ambient.reduced().r == 1) return out;
        out.contractions.push_back(weighted_blowup(m, kawamata_weight(m.ambient)));
        return out;
    }
    if (cls == "cA/r") return enumerate_ca(m);
    if (cls == "cAx/4" || cls == "cAx/2" || cls == "cD/3" || cls == "cE/2") return enumerate_from_tables(m, true);
    return enumerate_from_tables(m, false);
}

}  // namespace birat3
