#include "birat3/depth.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <limits>
#include <thread>

namespace birat3 {

namespace {

constexpr std::int64_t kInf = std::int64_t{1} << 40;
constexpr std::size_t kNoFrame = std::numeric_limits<std::size_t>::max();

std::string point_key(const SingularityModel& m) { return m.declared_class + "|" + m.key(); }

Poly shift_var(const Poly& f, std::size_t v, const Rat& t) {
    std::vector<Poly> img;
    for (std::size_t k = 0; k < f.nvars(); ++k) {
        Poly p = Poly::variable(f.vars(), k);
        if (k == v) p = p + Poly::constant(f.vars(), t);
        img.push_back(p);
    }
    return f.compose(img);
}

bool is_plain_variable(const Poly& p, std::size_t& which) {
    if (p.size() != 1) return false;
    const auto& [e, c] = *p.terms().begin();
    if (c != 1) return false;
    int deg = 0;
    for (std::size_t k = 0; k < e.size(); ++k)
        if (e[k]) {
            deg += e[k];
            which = k;
        }
    return deg == 1;
}

// root coordinate (as a function on the chart) pulled back to the local model at q
std::optional<RPoly> pull_back(const RPoly& f, const Chart& ch, const ChartPoint& q) {
    RPoly a = ch.coord_map.apply(f);
    const auto& cc = q.point.chart_coords;
    if (cc.size() != ch.vars.size()) return std::nullopt;
    const std::vector<std::string>& mv = q.point.model.vars;
    if (a.is_integral()) {
        Poly p = a.to_poly(ch.vars);
        if (q.line_var) p = shift_var(p, *q.line_var, q.line_value);
        std::vector<Poly> sub;
        for (std::size_t k = 0; k < cc.size(); ++k) {
            bool used = false;
            for (const auto& [e, c] : p.terms())
                if (e[k]) used = true;
            if (used && !cc[k]) return std::nullopt;
            sub.push_back(cc[k] ? *cc[k] : Poly(mv));
        }
        return RPoly::from_poly(p.compose(sub));
    }
    if (q.line_var) return std::nullopt;
    // fractional exponents survive only a relabelling of coordinates
    MonomialMap perm;
    for (std::size_t k = 0; k < cc.size(); ++k) {
        RExps e(mv.size(), Rat(0));
        std::size_t w = 0;
        if (cc[k] && is_plain_variable(*cc[k], w)) {
            e[w] = 1;
        } else {
            bool used = false;
            for (const auto& [ex, c] : a.terms())
                if (ex[k] != 0) used = true;
            if (used) return std::nullopt;
        }
        perm.image.push_back(e);
    }
    return perm.apply(a);
}

}  // namespace

std::int64_t DepthBound::value() const {
    if (!exact()) throw DepthIncomplete("depth not determined: " + str());
    return lower;
}

std::string DepthBound::str() const {
    if (exact()) return std::to_string(lower);
    return "[" + std::to_string(lower) + ", " + (upper ? std::to_string(*upper) + "]" : std::string("inf)"));
}

DepthBound operator+(const DepthBound& a, const DepthBound& b) {
    DepthBound s;
    s.lower = std::min(kInf, a.lower + b.lower);
    if (a.upper && b.upper) s.upper = *a.upper + *b.upper;
    else s.upper = std::nullopt;
    return s;
}

bool is_smooth_point(const SingularityModel& m) {
    if (m.declared_class == "smooth") return true;
    return m.equations.empty() && m.ambient.reduced().r == 1;
}

DepthEngine::DepthEngine(DepthOptions opt) : opt_(opt) {}

const Expansion& DepthEngine::expand(const SingularityModel& m) {
    const std::string key = point_key(m);
    {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = expansions_.find(key);
        if (it != expansions_.end()) return *it->second;
        if (++expanded_ > opt_.budget) throw BudgetExceeded(opt_.budget);
    }
    auto e = std::make_unique<Expansion>();
    WMorphismList wl = enumerate_w_morphisms(m);
    e->list_complete = wl.complete;
    e->note = wl.note;
    e->contractions = std::move(wl.contractions);
    e->points.resize(e->contractions.size());
    const std::size_t n = e->contractions.size();
    const unsigned threads = std::max(1u, std::min<unsigned>(opt_.threads, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) e->points[i] = chart_singularities(e->contractions[i]);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errs(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t i; (i = next++) < n;) e->points[i] = chart_singularities(e->contractions[i]);
                } catch (...) {
                    errs[t] = std::current_exception();
                }
            });
        for (auto& th : pool) th.join();
        for (auto& ep : errs)
            if (ep) std::rethrow_exception(ep);
    }
    std::lock_guard<std::mutex> lk(mu_);
    auto [it, inserted] = expansions_.emplace(key, std::move(e));
    return *it->second;
}

DepthEngine::Result DepthEngine::rec(const SingularityModel& m, DepthKind kind, std::size_t depth) {
    if (is_smooth_point(m)) return {{0, 0}, kNoFrame};
    if (kind == DepthKind::Gorenstein && cartier_index(m) == 1) return {{0, 0}, kNoFrame};
    const auto key = std::make_pair(static_cast<int>(kind), point_key(m));
    if (auto it = memo_.find(key); it != memo_.end()) return {it->second, kNoFrame};
    if (auto it = on_stack_.find(key); it != on_stack_.end()) {
        // a chain returning to a point on the current path is never minimal
        return {{kInf, std::nullopt}, it->second};
    }
    on_stack_[key] = depth;
    const Expansion& ex = expand(m);
    DepthBound best{kInf, std::nullopt};
    std::size_t low = kNoFrame;
    for (std::size_t i = 0; i < ex.contractions.size(); ++i) {
        DepthBound b{1, 1};
        for (const auto& q : ex.points[i]) {
            if (q.point.status == PointStatus::Unclassified) {
                b.upper = std::nullopt;
                continue;
            }
            Result r = rec(q.point.model, kind, depth + 1);
            b = b + r.bound;
            low = std::min(low, r.low);
        }
        best.lower = std::min(best.lower, b.lower);
        if (b.upper && (!best.upper || *b.upper < *best.upper)) best.upper = b.upper;
    }
    if (!ex.list_complete || ex.contractions.empty()) best.lower = std::min<std::int64_t>(best.lower, 1);
    on_stack_.erase(key);
    if (low >= depth) {
        if (best.lower >= kInf) best.lower = 1;
        memo_[key] = best;
        low = kNoFrame;
    }
    return {best, low};
}

DepthBound DepthEngine::solve(const SingularityModel& m, DepthKind kind) {
    Result r = rec(m, kind, 0);
    if (r.bound.lower >= kInf) r.bound.lower = 1;
    return r.bound;
}

DepthBound DepthEngine::gdep_after(const Contraction& c) {
    DepthBound b{0, 0};
    for (const auto& q : chart_singularities(c)) {
        if (q.point.status == PointStatus::Unclassified) b.upper = std::nullopt;
        else b = b + gdep(q.point.model);
    }
    return b;
}

DepthReport depth_report(const SingularityModel& m, const DepthOptions& opt) {
    DepthEngine eng(opt);
    DepthReport r;
    r.gdep = eng.gdep(m);
    r.dep = eng.dep(m);
    if (r.gdep.exact() && r.dep.exact()) {
        std::int64_t d = r.gdep.lower - r.dep.lower;
        r.dep_gor = {d, d};
    } else {
        r.dep_gor.lower = std::max<std::int64_t>(0, r.dep.upper ? r.gdep.lower - *r.dep.upper : 0);
        r.dep_gor.upper = r.gdep.upper ? std::optional<std::int64_t>(*r.gdep.upper - r.dep.lower) : std::nullopt;
    }
    r.expanded = eng.expanded();
    return r;
}

DepthBound bfs_gdep(const SingularityModel& m, std::int64_t budget) {
    if (is_smooth_point(m)) return {0, 0};
    using State = std::vector<SingularityModel>;
    std::deque<std::pair<State, std::int64_t>> queue;
    queue.push_back({{m}, 0});
    std::int64_t expanded = 0;
    std::int64_t first_gap = kInf;  // earliest level where a branch was dropped
    while (!queue.empty()) {
        auto [state, level] = std::move(queue.front());
        queue.pop_front();
        if (level >= first_gap) return {first_gap, std::nullopt};
        if (++expanded > budget) throw BudgetExceeded(budget);
        SingularityModel p = state.front();
        WMorphismList wl = enumerate_w_morphisms(p);
        if (!wl.complete) first_gap = std::min(first_gap, level + 1);
        for (const auto& c : wl.contractions) {
            State next(state.begin() + 1, state.end());
            bool ok = true;
            for (const auto& q : chart_singularities(c)) {
                if (q.point.status == PointStatus::Unclassified) ok = false;
                else if (!is_smooth_point(q.point.model)) next.push_back(q.point.model);
            }
            if (!ok) {
                first_gap = std::min(first_gap, level + 1);
                continue;
            }
            if (next.empty()) return {std::min(level + 1, first_gap), level + 1};
            queue.push_back({next, level + 1});
        }
    }
    return {first_gap >= kInf ? 1 : first_gap, std::nullopt};
}

// ---------------------------------------------------------------------------

namespace {

struct LivePoint {
    SingularityModel model;
    std::vector<std::optional<RPoly>> root_coords;
};

TreeNode make_node(const std::vector<LivePoint>& st, DepthEngine& eng) {
    TreeNode n;
    for (const auto& p : st) {
        n.points.push_back(p.model);
        n.gdep += eng.gdep(p.model).value();
        n.dep += eng.dep(p.model).value();
    }
    return n;
}

}  // namespace

ResolutionTree build_chain(const SingularityModel& m, DepthEngine& eng,
                           const std::function<std::size_t(const SingularityModel&, const Expansion&)>& pick,
                           std::size_t max_steps) {
    ResolutionTree t;
    t.root = m;
    std::vector<LivePoint> st;
    if (!is_smooth_point(m)) {
        LivePoint lp{m, {}};
        for (std::size_t k = 0; k < m.n(); ++k) lp.root_coords.push_back(RPoly::from_poly(Poly::variable(m.vars, k)));
        st.push_back(lp);
    }
    t.nodes.push_back(make_node(st, eng));
    while (!st.empty() && t.edges.size() < max_steps) {
        LivePoint P = st.front();
        const Expansion& ex = eng.expand(P.model);
        if (ex.contractions.empty()) throw DepthIncomplete("no w-morphism known over " + P.model.str());
        std::size_t ci = pick(P.model, ex);
        const Contraction& c = ex.contractions.at(ci);
        bool same_coords = c.source.key() == P.model.key();
        TreeEdge e;
        e.from = t.nodes.size() - 1;
        e.point = 0;
        e.weight = c.weight;
        e.discrepancy = c.discrepancy;
        for (const auto& f : P.root_coords)
            e.valuations.push_back(f && same_coords ? std::optional<Rat>(weight_of(*f, c.weight)) : std::nullopt);
        std::vector<LivePoint> next;
        for (const auto& q : ex.points[ci]) {
            if (q.point.status == PointStatus::Unclassified)
                throw DepthIncomplete("unclassified point " + q.locus + " in " + q.chart_label + ": " + q.point.detail);
            if (is_smooth_point(q.point.model)) continue;
            LivePoint lp{q.point.model, {}};
            const Chart& ch = c.charts.at(q.chart - 1);
            for (const auto& f : P.root_coords)
                lp.root_coords.push_back(f && same_coords ? pull_back(*f, ch, q) : std::nullopt);
            next.push_back(lp);
        }
        next.insert(next.end(), st.begin() + 1, st.end());
        st = std::move(next);
        t.nodes.push_back(make_node(st, eng));
        e.to = t.nodes.size() - 1;
        e.strict = t.nodes[e.to].gdep == t.nodes[e.from].gdep - 1;
        t.edges.push_back(e);
    }
    t.picard_gain = static_cast<std::int64_t>(t.edges.size());
    return t;
}

ResolutionTree feasible_resolution(const SingularityModel& m, DepthEngine& eng) {
    eng.gdep(m).value();
    auto minimal = [&eng](const SingularityModel& p, const Expansion& ex) -> std::size_t {
        const std::int64_t g = eng.gdep(p).value();
        for (std::size_t i = 0; i < ex.contractions.size(); ++i) {
            DepthBound b{1, 1};
            for (const auto& q : ex.points[i]) {
                if (q.point.status == PointStatus::Unclassified) b.upper = std::nullopt;
                else b = b + eng.gdep(q.point.model);
            }
            if (b.exact() && b.lower == g) return i;
        }
        throw DepthIncomplete("no minimal w-morphism found over " + p.str());
    };
    return build_chain(m, eng, minimal, std::numeric_limits<std::size_t>::max());
}

ResolutionTree feasible_resolution(const SingularityModel& m, const DepthOptions& opt) {
    DepthEngine eng(opt);
    return feasible_resolution(m, eng);
}

bool is_strict(const Contraction& c, DepthEngine& eng) {
    return eng.gdep_after(c).value() == eng.gdep(c.source).value() - 1;
}

InequalityReport check_depth_inequalities(const ResolutionTree& chain, DepthEngine& eng) {
    InequalityReport r;
    auto total = [&](const TreeNode& n, DepthKind k) {
        std::int64_t s = 0;
        for (const auto& p : n.points) s += eng.solve(p, k).value();
        return s;
    };
    std::vector<std::int64_t> g, d;
    for (const auto& n : chain.nodes) {
        g.push_back(total(n, DepthKind::General));
        d.push_back(total(n, DepthKind::Gorenstein));
    }
    r.rho = static_cast<std::int64_t>(chain.edges.size());
    r.delta_gdep = g.front() - g.back();
    for (const auto& e : chain.edges) {
        bool strict = g[e.to] == g[e.from] - 1;
        if (strict != e.strict) r.violations.push_back("edge " + std::to_string(e.from) + " strictness flag is stale");
        r.all_strict = r.all_strict && strict;
        if (g[e.from] > g[e.to] + 1) r.violations.push_back("gdep drops by more than one on edge " + std::to_string(e.from));
        if (g[e.from] - d[e.from] < g[e.to] - d[e.to])
            r.violations.push_back("Gorenstein depth grows on edge " + std::to_string(e.from));
    }
    if (r.rho < r.delta_gdep) r.violations.push_back("rho < gdep drop");
    if ((r.rho == r.delta_gdep) != r.all_strict) r.violations.push_back("equality case does not match strictness");
    r.ok = r.violations.empty();
    return r;
}

}  // namespace birat3
