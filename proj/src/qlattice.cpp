#include "birat3/qlattice.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace birat3 {

namespace {

std::string join(const std::vector<std::int64_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    return os.str();
}

Int iabs(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

QuotientAction::QuotientAction(std::int64_t r_, std::vector<std::int64_t> a_) : r(r_), a(std::move(a_)) {
    if (r < 1) throw std::invalid_argument("quotient order must be positive");
    for (auto& x : a) x = mod64(x, r);
}

bool QuotientAction::is_trivial() const { return effective_order() == 1; }

std::int64_t QuotientAction::effective_order() const {
    std::int64_t g = r;
    for (auto x : a) g = std::gcd(g, x);
    return r / g;
}

QuotientAction QuotientAction::reduced() const {
    std::int64_t g = r;
    for (auto x : a) g = std::gcd(g, x);
    std::vector<std::int64_t> b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) b[i] = a[i] / g;
    return QuotientAction(r / g, b);
}

QuotientAction QuotientAction::normalized() const {
    QuotientAction q = reduced();
    std::vector<std::int64_t> best = q.a;
    for (std::int64_t k = 2; k < q.r; ++k) {
        if (std::gcd(k, q.r) != 1) continue;
        std::vector<std::int64_t> v(q.a.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod64(k * q.a[i], q.r);
        if (v < best) best = v;
    }
    return QuotientAction(q.r, best);
}

QuotientAction QuotientAction::restricted(const std::vector<std::size_t>& keep) const {
    std::vector<std::int64_t> b;
    b.reserve(keep.size());
    for (auto i : keep) b.push_back(a.at(i));
    return QuotientAction(r, b);
}

QuotientAction QuotientAction::permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != a.size()) throw std::invalid_argument("permutation size mismatch");
    return restricted(perm);
}

std::int64_t QuotientAction::character(const std::vector<int>& exps) const {
    if (exps.size() != a.size()) throw std::invalid_argument("exponent vector size mismatch");
    std::int64_t c = 0;
    for (std::size_t i = 0; i < a.size(); ++i) c = mod64(c + a[i] * exps[i], r);
    return c;
}

std::string QuotientAction::str() const { return "1/" + std::to_string(r) + "(" + join(a) + ")"; }

WeightVector::WeightVector(std::int64_t r_, std::vector<std::int64_t> b_) : r(r_), b(std::move(b_)) {
    if (r < 1) throw std::invalid_argument("weight denominator must be positive");
    for (auto x : b)
        if (x < 1) throw std::invalid_argument("weight entries must be positive");
}

Rat WeightVector::sum() const {
    std::int64_t s = 0;
    for (auto x : b) s += x;
    return make_rat(s, r);
}

std::string WeightVector::str() const {
    if (r == 1) return "(" + join(b) + ")";
    return "1/" + std::to_string(r) + "(" + join(b) + ")";
}

std::optional<Compatibility> compatibility(const QuotientAction& action, const WeightVector& w) {
    if (action.n() != w.n()) throw std::invalid_argument("action and weight have different dimensions");
    Compatibility c;
    c.R = lcm64(action.r, w.r);
    const std::int64_t sa = c.R / action.r, sb = c.R / w.r;
    for (std::size_t i = 0; i < w.n(); ++i) {
        c.a.push_back(action.a[i] * sa);
        c.b.push_back(w.b[i] * sb);
    }
    // lambda only matters modulo the order of the action generator inside (1/R)Z^n
    for (std::int64_t lam = 1; lam <= c.R; ++lam) {
        bool ok = true;
        for (std::size_t i = 0; i < w.n() && ok; ++i) ok = mod64(c.b[i] - lam * c.a[i], c.R) == 0;
        if (!ok) continue;
        c.lambda = lam;
        c.k.resize(w.n());
        for (std::size_t i = 0; i < w.n(); ++i) c.k[i] = (c.b[i] - lam * c.a[i]) / c.R;
        return c;
    }
    return std::nullopt;
}

Compatibility require_compatible(const QuotientAction& action, const WeightVector& w) {
    auto c = compatibility(action, w);
    if (!c) throw CompatibilityError("weight " + w.str() + " is not compatible with " + action.str());
    return *c;
}

std::vector<Int> smith_diagonal(std::vector<std::vector<Int>> m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::vector<Int> diag;
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // smallest nonzero entry of the remaining block becomes the pivot
            std::size_t pr = rows, pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (m[i][j] != 0 && (pr == rows || iabs(m[i][j]) < iabs(m[pr][pc]))) pr = i, pc = j;
            if (pr == rows) return diag;
            std::swap(m[t], m[pr]);
            for (auto& row : m) std::swap(row[t], row[pc]);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (m[i][t] == 0) continue;
                Int q = floor_div(m[i][t], m[t][t]);
                for (std::size_t j = t; j < cols; ++j) m[i][j] -= q * m[t][j];
                if (m[i][t] != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (m[t][j] == 0) continue;
                Int q = floor_div(m[t][j], m[t][t]);
                for (std::size_t i = t; i < rows; ++i) m[i][j] -= q * m[i][t];
                if (m[t][j] != 0) clean = false;
            }
            if (!clean) continue;
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (m[i][j] % m[t][t] != 0) {
                        for (std::size_t jj = t; jj < cols; ++jj) m[t][jj] += m[i][jj];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(iabs(m[t][t]));
    }
    return diag;
}

SubgroupInfo subgroup_info(const std::vector<std::vector<std::int64_t>>& gens, std::int64_t D) {
    if (D < 1) throw std::invalid_argument("denominator must be positive");
    std::size_t n = gens.empty() ? 0 : gens[0].size();
    std::vector<std::vector<Int>> mat;
    for (const auto& g : gens) {
        if (g.size() != n) throw std::invalid_argument("generator size mismatch");
        std::vector<Int> row;
        for (auto x : g) row.emplace_back(mod64(x, D));
        mat.push_back(row);
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> row(n, Int(0));
        row[i] = D;
        mat.push_back(row);
    }
    SubgroupInfo info;
    Int order = 1;
    for (const auto& d : smith_diagonal(mat)) {
        Int f = Int(D) / d;
        order *= f;
        if (f > 1) info.invariant_factors.push_back(f);
    }
    std::sort(info.invariant_factors.begin(), info.invariant_factors.end());
    info.order = to_i64(order);
    info.cyclic = info.invariant_factors.size() <= 1;
    return info;
}

ChartQuotientData chart_decomposition(const QuotientAction& action, const WeightVector& w, std::size_t i) {
    const std::size_t n = w.n();
    if (i < 1 || i > n) throw std::out_of_range("chart index out of range");
    Compatibility c = require_compatible(action, w);
    const std::size_t ii = i - 1;
    const std::int64_t R = c.R, bi = c.b[ii], ai = c.a[ii];

    ChartQuotientData d;
    d.chart_index = i;
    d.order_tau = bi;
    d.R = R;
    d.lambda = c.lambda;
    d.k = c.k;
    d.tau.resize(n);
    d.tau_prime.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (j == ii) {
            d.tau[j] = mod64(-R, bi);
            d.tau_prime[j] = mod64(ai * R, R * bi);
        } else {
            d.tau[j] = mod64(c.b[j], bi);
            d.tau_prime[j] = mod64(c.a[j] * bi - ai * c.b[j], R * bi);
        }
    }

    const std::int64_t D = R * bi;
    std::vector<std::int64_t> t1(n), t2 = d.tau_prime;
    for (std::size_t j = 0; j < n; ++j) t1[j] = d.tau[j] * R;
    SubgroupInfo gi = subgroup_info({t1, t2}, D);
    SubgroupInfo ti = subgroup_info({t1}, D);
    d.group_order = gi.order;
    d.tau_effective_order = ti.order;
    d.m = gi.order / ti.order;
    d.cyclic = gi.cyclic;

    // tau'^lambda - tau^{k_i} must vanish in (Q/Z)^n
    d.relation_holds = true;
    for (std::size_t j = 0; j < n; ++j) {
        Int v = Int(t2[j]) * c.lambda - Int(t1[j]) * c.k[ii];
        if (v % D != 0) d.relation_holds = false;
    }

    d.action = QuotientAction::trivial_action(n);
    if (gi.cyclic && gi.order > 1) {
        SubgroupInfo t2i = subgroup_info({t2}, D);
        bool found = false;
        for (std::int64_t s = 0; s < ti.order && !found; ++s) {
            for (std::int64_t t = 0; t < t2i.order && !found; ++t) {
                std::vector<std::int64_t> g(n);
                for (std::size_t j = 0; j < n; ++j) g[j] = mod64(s * t1[j] + t * t2[j], D);
                if (subgroup_info({g}, D).order != gi.order) continue;
                std::vector<std::int64_t> cexp(n);
                std::int64_t N = gi.order;
                for (std::size_t j = 0; j < n; ++j) cexp[j] = g[j] * N / D;
                d.action = QuotientAction(N, cexp).normalized();
                found = true;
            }
        }
        if (!found) d.cyclic = false;
    }
    return d;
}

std::set<std::size_t> center_chart_test(const WeightVector& a, const WeightVector& b) {
    if (a.n() != b.n()) throw std::invalid_argument("dimension mismatch in center test");
    std::vector<Rat> ratio;
    for (std::size_t i = 0; i < a.n(); ++i) ratio.push_back(make_rat(b.b[i], a.b[i]));
    Rat lo = *std::min_element(ratio.begin(), ratio.end());
    std::set<std::size_t> out;
    for (std::size_t i = 0; i < ratio.size(); ++i)
        if (ratio[i] == lo) out.insert(i + 1);
    return out;
}

Rat ambient_discrepancy(const WeightVector& w) { return w.sum() - 1; }

Rat exc_self_intersection(const WeightVector& w, std::int64_t m, std::size_t n) {
    if (m < 1) throw std::invalid_argument("residual order must be positive");
    Int numer = 1, denom = m;
    for (std::size_t k = 0; k + 1 < n; ++k) numer *= w.r;
    for (auto x : w.b) denom *= x;
    Rat v(numer, denom);
    return (n % 2 == 0) ? Rat(-v) : v;
}

namespace {

// exponents k*a in the shape (alpha, r - alpha, 1) up to order, gcd(alpha, r) = 1
std::optional<std::vector<std::int64_t>> terminal_shape(const std::vector<std::int64_t>& v, std::int64_t r) {
    for (std::size_t one = 0; one < 3; ++one) {
        if (v[one] != mod64(1, r)) continue;
        std::size_t p = (one + 1) % 3, q = (one + 2) % 3;
        if (mod64(v[p] + v[q], r) == 0 && std::gcd(v[p], r) == 1) return v;
    }
    return std::nullopt;
}

}  // namespace

bool terminal_quotient_check(const QuotientAction& action) {
    if (action.n() != 3) throw std::invalid_argument("terminal quotient check needs n = 3");
    QuotientAction q = action.reduced();
    if (q.r == 1) return true;
    for (std::int64_t k = 1; k < q.r; ++k) {
        if (std::gcd(k, q.r) != 1) continue;
        std::vector<std::int64_t> v(3);
        for (int i = 0; i < 3; ++i) v[i] = mod64(k * q.a[i], q.r);
        if (terminal_shape(v, q.r)) return true;
    }
    return false;
}

WeightVector kawamata_weight(const QuotientAction& action) {
    if (action.n() != 3) throw std::invalid_argument("Kawamata weight needs n = 3");
    QuotientAction q = action.reduced();
    if (q.r == 1) throw std::invalid_argument("no Kawamata weight over a smooth point");
    std::set<std::vector<std::int64_t>> found;
    for (std::int64_t k = 1; k < q.r; ++k) {
        if (std::gcd(k, q.r) != 1) continue;
        std::vector<std::int64_t> v(3);
        for (int i = 0; i < 3; ++i) v[i] = mod64(k * q.a[i], q.r);
        if (terminal_shape(v, q.r)) found.insert(v);
    }
    if (found.empty()) throw std::invalid_argument(action.str() + " is not a terminal quotient");
    if (found.size() != 1) throw std::logic_error("Kawamata weight not unique for " + action.str());
    return WeightVector(q.r, *found.begin());
}

}  // namespace birat3
