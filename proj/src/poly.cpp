#include "birat3/poly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace birat3 {

bool GradedLexLess::operator()(const Exps& a, const Exps& b) const {
    int da = std::accumulate(a.begin(), a.end(), 0);
    int db = std::accumulate(b.begin(), b.end(), 0);
    if (da != db) return da < db;
    return b < a;
}

Poly Poly::constant(const std::vector<std::string>& vars, const Rat& c) {
    Poly p(vars);
    p.add_term(Exps(vars.size(), 0), c);
    return p;
}

Poly Poly::variable(const std::vector<std::string>& vars, std::size_t i) {
    Exps e(vars.size(), 0);
    e.at(i) = 1;
    return monomial(vars, e);
}

Poly Poly::monomial(const std::vector<std::string>& vars, const Exps& e, const Rat& c) {
    Poly p(vars);
    p.add_term(e, c);
    return p;
}

std::size_t Poly::var_index(const std::string& name) const {
    auto it = std::find(vars_.begin(), vars_.end(), name);
    if (it == vars_.end()) throw std::invalid_argument("unknown variable '" + name + "'");
    return static_cast<std::size_t>(it - vars_.begin());
}

Rat Poly::coeff(const Exps& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Exps& e, const Rat& c) {
    if (e.size() != vars_.size()) throw std::invalid_argument("exponent vector size mismatch");
    for (int x : e)
        if (x < 0) throw std::invalid_argument("negative exponent");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

static void require_same_ring(const Poly& a, const Poly& b) {
    if (a.vars() != b.vars()) throw std::invalid_argument("polynomials live in different rings");
}

Poly Poly::operator-() const {
    Poly p(vars_);
    for (const auto& [e, c] : terms_) p.terms_.emplace(e, -c);
    return p;
}

Poly& Poly::operator+=(const Poly& o) {
    require_same_ring(*this, o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Poly Poly::operator+(const Poly& o) const {
    Poly p = *this;
    p += o;
    return p;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    require_same_ring(*this, o);
    Poly p(vars_);
    Exps e(vars_.size());
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            for (std::size_t k = 0; k < e.size(); ++k) e[k] = e1[k] + e2[k];
            p.add_term(e, c1 * c2);
        }
    return p;
}

Poly Poly::operator*(const Rat& c) const {
    Poly p(vars_);
    if (c == 0) return p;
    for (const auto& [e, v] : terms_) p.terms_.emplace(e, v * c);
    return p;
}

Poly Poly::pow(unsigned e) const {
    Poly result = constant(vars_, 1), base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

int Poly::order() const {
    if (terms_.empty()) return -1;
    const auto& e = terms_.begin()->first;
    return std::accumulate(e.begin(), e.end(), 0);
}

int Poly::degree_in(std::size_t i) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max(d, t.first.at(i));
    return d;
}

int Poly::order_in(std::size_t i) const {
    if (terms_.empty()) return -1;
    int d = terms_.begin()->first.at(i);
    for (const auto& t : terms_) d = std::min(d, t.first[i]);
    return d;
}

Poly Poly::homogeneous_part(int d) const {
    Poly p(vars_);
    for (const auto& [e, c] : terms_)
        if (std::accumulate(e.begin(), e.end(), 0) == d) p.terms_.emplace(e, c);
    return p;
}

Poly Poly::derivative(std::size_t i) const {
    Poly p(vars_);
    for (const auto& [e, c] : terms_) {
        if (e.at(i) == 0) continue;
        Exps f = e;
        f[i] -= 1;
        p.add_term(f, c * e[i]);
    }
    return p;
}

Rat Poly::eval(const std::vector<Rat>& point) const {
    if (point.size() != vars_.size()) throw std::invalid_argument("evaluation point size mismatch");
    Rat s = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (std::size_t k = 0; k < e.size(); ++k)
            for (int j = 0; j < e[k]; ++j) t *= point[k];
        s += t;
    }
    return s;
}

Poly Poly::substitute_constant(std::size_t i, const Rat& c) const {
    Poly p(vars_);
    for (const auto& [e, v] : terms_) {
        Rat t = v;
        for (int j = 0; j < e.at(i); ++j) t *= c;
        Exps f = e;
        f[i] = 0;
        p.add_term(f, t);
    }
    return p;
}

Poly Poly::compose(const std::vector<Poly>& images) const {
    if (images.size() != vars_.size()) throw std::invalid_argument("compose needs one image per variable");
    if (images.empty()) throw std::invalid_argument("compose of a constant-ring polynomial");
    const auto& target = images[0].vars();
    // cache powers, since normal forms reuse the same variable many times
    std::vector<std::vector<Poly>> powers(images.size());
    Poly out(target);
    for (const auto& [e, c] : terms_) {
        Poly t = constant(target, c);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            auto& pk = powers[k];
            if (pk.empty()) pk.push_back(constant(target, 1));
            while (static_cast<int>(pk.size()) <= e[k]) pk.push_back(pk.back() * images[k]);
            t = t * pk[e[k]];
        }
        out += t;
    }
    return out;
}

Poly Poly::divide_monomial(const Exps& d) const {
    Poly p(vars_);
    for (const auto& [e, c] : terms_) {
        Exps f = e;
        for (std::size_t k = 0; k < f.size(); ++k) {
            f[k] -= d.at(k);
            if (f[k] < 0) throw IntegralityError("monomial division leaves a negative exponent");
        }
        p.terms_.emplace(f, c);
    }
    return p;
}

Poly Poly::with_vars(const std::vector<std::string>& new_vars) const {
    std::vector<std::size_t> where(vars_.size(), new_vars.size());
    for (std::size_t k = 0; k < vars_.size(); ++k) {
        auto it = std::find(new_vars.begin(), new_vars.end(), vars_[k]);
        if (it != new_vars.end()) where[k] = static_cast<std::size_t>(it - new_vars.begin());
    }
    Poly p(new_vars);
    for (const auto& [e, c] : terms_) {
        Exps f(new_vars.size(), 0);
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            if (where[k] == new_vars.size())
                throw std::invalid_argument("variable '" + vars_[k] + "' missing from target ring");
            f[where[k]] += e[k];
        }
        p.add_term(f, c);
    }
    return p;
}

Poly Poly::permuted(const std::vector<std::size_t>& perm) const {
    if (perm.size() != vars_.size()) throw std::invalid_argument("permutation size mismatch");
    std::vector<std::string> nv(perm.size());
    for (std::size_t k = 0; k < perm.size(); ++k) nv[k] = vars_.at(perm[k]);
    Poly p(nv);
    for (const auto& [e, c] : terms_) {
        Exps f(perm.size());
        for (std::size_t k = 0; k < perm.size(); ++k) f[k] = e[perm[k]];
        p.add_term(f, c);
    }
    return p;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::vector<std::string> factors;
        for (std::size_t k = 0; k < e.size(); ++k) {
            if (e[k] == 0) continue;
            factors.push_back(e[k] == 1 ? vars_[k] : vars_[k] + "^" + std::to_string(e[k]));
        }
        if (factors.empty()) {
            os << to_string(a);
            continue;
        }
        if (a != 1) os << to_string(a) << "*";
        for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
    }
    return os.str();
}

namespace {

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

    Poly run() {
        Poly p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw PolyParseError(msg, pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    Int integer() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected a number");
        return Int(s_.substr(start, pos_ - start));
    }

    Poly expr() {
        Poly p = term();
        for (;;) {
            if (eat('+'))
                p += term();
            else if (eat('-'))
                p += -term();
            else
                return p;
        }
    }

    Poly term() {
        Poly p = unary();
        while (eat('*')) p = p * unary();
        return p;
    }

    Poly unary() {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Poly power() {
        Poly p = atom();
        if (eat('^')) {
            Int e = integer();
            if (e > 10000) fail("exponent too large");
            p = p.pow(static_cast<unsigned>(e));
        }
        return p;
    }

    Poly atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Poly p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Int p = integer();
            Int q = 1;
            if (eat('/')) {
                std::size_t at = pos_;
                q = integer();
                if (q == 0) throw PolyParseError("zero denominator", at);
            }
            return Poly::constant(vars_, Rat(p, q));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '\''))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            auto it = std::find(vars_.begin(), vars_.end(), name);
            if (it == vars_.end()) throw PolyParseError("unknown variable '" + name + "'", start);
            return Poly::variable(vars_, static_cast<std::size_t>(it - vars_.begin()));
        }
        fail("unexpected character '" + std::string(1, c) + "'");
    }
};

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& vars) { return Parser(text, vars).run(); }

Rat term_weight(const Exps& e, const WeightVector& w) {
    if (e.size() != w.n()) throw std::invalid_argument("weight and polynomial dimensions differ");
    std::int64_t s = 0;
    for (std::size_t k = 0; k < e.size(); ++k) s += w.b[k] * e[k];
    return make_rat(s, w.r);
}

Rat weight_of(const Poly& f, const WeightVector& w) {
    if (f.is_zero()) throw std::domain_error("weight of the zero polynomial is undefined");
    std::optional<Rat> best;
    for (const auto& t : f.terms()) {
        Rat v = term_weight(t.first, w);
        if (!best || v < *best) best = v;
    }
    return *best;
}

Poly leading_form(const Poly& f, const WeightVector& w) {
    Rat lo = weight_of(f, w);
    Poly p(f.vars());
    for (const auto& [e, c] : f.terms())
        if (term_weight(e, w) == lo) p.add_term(e, c);
    return p;
}

bool is_w_homogeneous(const Poly& f, const WeightVector& w) {
    if (f.is_zero()) return true;
    return leading_form(f, w) == f;
}

std::int64_t semi_invariant_character(const Poly& f, const QuotientAction& g) {
    if (f.nvars() != g.n()) throw std::invalid_argument("action and polynomial dimensions differ");
    std::optional<std::int64_t> ch;
    Exps witness;
    for (const auto& t : f.terms()) {
        std::int64_t c = g.character(t.first);
        if (!ch) {
            ch = c;
            witness = t.first;
        } else if (*ch != c) {
            throw NotSemiInvariant("terms have different characters under " + g.str(), witness, t.first);
        }
    }
    return ch.value_or(0);
}

std::optional<std::int64_t> try_character(const Poly& f, const QuotientAction& g) {
    try {
        return semi_invariant_character(f, g);
    } catch (const NotSemiInvariant&) {
        return std::nullopt;
    }
}

RPoly RPoly::from_poly(const Poly& p) {
    RPoly r(p.nvars());
    for (const auto& [e, c] : p.terms()) {
        RExps re(e.begin(), e.end());
        r.add_term(re, c);
    }
    return r;
}

RPoly RPoly::monomial(const RExps& e, const Rat& c) {
    RPoly r(e.size());
    r.add_term(e, c);
    return r;
}

void RPoly::add_term(const RExps& e, const Rat& c) {
    if (e.size() != n_) throw std::invalid_argument("exponent vector size mismatch");
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

RPoly RPoly::operator+(const RPoly& o) const {
    if (o.n_ != n_) throw std::invalid_argument("size mismatch");
    RPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

RPoly RPoly::operator*(const RPoly& o) const {
    if (o.n_ != n_) throw std::invalid_argument("size mismatch");
    RPoly r(n_);
    RExps e(n_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            for (std::size_t k = 0; k < n_; ++k) e[k] = e1[k] + e2[k];
            r.add_term(e, c1 * c2);
        }
    return r;
}

RPoly RPoly::pow(unsigned e) const {
    RPoly result = monomial(RExps(n_, Rat(0))), base = *this;
    while (e) {
        if (e & 1u) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

Rat RPoly::min_exponent(std::size_t i) const {
    if (terms_.empty()) throw std::domain_error("min exponent of zero");
    Rat m = terms_.begin()->first.at(i);
    for (const auto& t : terms_) m = std::min(m, t.first[i]);
    return m;
}

RPoly RPoly::shift(const RExps& s) const {
    RPoly r(n_);
    for (const auto& [e, c] : terms_) {
        RExps f = e;
        for (std::size_t k = 0; k < n_; ++k) f[k] += s.at(k);
        r.terms_.emplace(f, c);
    }
    return r;
}

bool RPoly::is_integral() const {
    for (const auto& t : terms_)
        for (const auto& x : t.first)
            if (!is_integer(x) || x < 0) return false;
    return true;
}

Poly RPoly::to_poly(const std::vector<std::string>& vars) const {
    if (vars.size() != n_) throw std::invalid_argument("variable list size mismatch");
    Poly p(vars);
    for (const auto& [e, c] : terms_) {
        Exps f(n_);
        for (std::size_t k = 0; k < n_; ++k) {
            if (!is_integer(e[k]) || e[k] < 0)
                throw IntegralityError("exponent " + to_string(e[k]) + " of " + vars[k] + " is not a nonnegative integer");
            f[k] = static_cast<int>(to_i64(e[k]));
        }
        p.add_term(f, c);
    }
    return p;
}

Rat weight_of(const RPoly& f, const WeightVector& w) {
    if (f.is_zero()) throw std::domain_error("weight of the zero polynomial is undefined");
    std::optional<Rat> best;
    for (const auto& t : f.terms()) {
        Rat v = 0;
        for (std::size_t k = 0; k < w.n(); ++k) v += t.first.at(k) * w.b[k];
        v /= w.r;
        if (!best || v < *best) best = v;
    }
    return *best;
}

RPoly MonomialMap::apply(const RPoly& f) const {
    if (f.nvars() != source_dim()) throw std::invalid_argument("monomial map source mismatch");
    RPoly out(target_dim());
    for (const auto& [e, c] : f.terms()) {
        RExps t(target_dim(), Rat(0));
        for (std::size_t k = 0; k < e.size(); ++k)
            if (e[k] != 0)
                for (std::size_t j = 0; j < t.size(); ++j) t[j] += e[k] * image[k][j];
        out.add_term(t, c);
    }
    return out;
}

RPoly MonomialMap::apply(const Poly& f) const { return apply(RPoly::from_poly(f)); }

MonomialMap MonomialMap::after(const MonomialMap& inner) const {
    if (inner.target_dim() != source_dim()) throw std::invalid_argument("monomial maps do not compose");
    MonomialMap out;
    for (const auto& e : inner.image) {
        RExps t(target_dim(), Rat(0));
        for (std::size_t k = 0; k < e.size(); ++k)
            for (std::size_t j = 0; j < t.size(); ++j) t[j] += e[k] * image[k][j];
        out.image.push_back(t);
    }
    return out;
}

std::string MonomialMap::str(const std::vector<std::string>& tv) const {
    std::ostringstream os;
    for (std::size_t k = 0; k < image.size(); ++k) {
        if (k) os << ", ";
        bool any = false;
        for (std::size_t j = 0; j < image[k].size(); ++j) {
            if (image[k][j] == 0) continue;
            if (any) os << "*";
            os << tv.at(j);
            if (image[k][j] != 1) os << "^" << (is_integer(image[k][j]) ? to_string(image[k][j]) : "(" + to_string(image[k][j]) + ")");
            any = true;
        }
        if (!any) os << "1";
    }
    return os.str();
}

MonomialMap chart_map(const WeightVector& w, std::size_t i) {
    if (i < 1 || i > w.n()) throw std::out_of_range("chart index out of range");
    MonomialMap m;
    for (std::size_t k = 0; k < w.n(); ++k) {
        RExps e(w.n(), Rat(0));
        if (k != i - 1) e[k] = 1;
        e[i - 1] = make_rat(w.b[k], w.r);
        m.image.push_back(e);
    }
    return m;
}

Poly strict_transform(const Poly& f, const WeightVector& w, std::size_t i) {
    if (f.is_zero()) throw std::domain_error("strict transform of zero");
    RPoly img = chart_map(w, i).apply(f);
    RExps s(w.n(), Rat(0));
    s[i - 1] = -weight_of(f, w);
    return img.shift(s).to_poly(f.vars());
}

UPoly upoly_trim(UPoly p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
    return p;
}

UPoly upoly_from(const Poly& f, std::size_t var) {
    UPoly p;
    for (const auto& [e, c] : f.terms()) {
        for (std::size_t k = 0; k < e.size(); ++k)
            if (k != var && e[k] != 0) throw std::invalid_argument("polynomial is not univariate");
        std::size_t d = static_cast<std::size_t>(e[var]);
        if (p.size() <= d) p.resize(d + 1, Rat(0));
        p[d] += c;
    }
    return upoly_trim(p);
}

UPoly upoly_derivative(const UPoly& p) {
    UPoly d;
    for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long long>(k));
    return upoly_trim(d);
}

UPoly upoly_mod(const UPoly& a_, const UPoly& b_) {
    UPoly a = upoly_trim(a_), b = upoly_trim(b_);
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    while (a.size() >= b.size()) {
        Rat q = a.back() / b.back();
        std::size_t off = a.size() - b.size();
        for (std::size_t k = 0; k < b.size(); ++k) a[off + k] -= q * b[k];
        a = upoly_trim(a);
    }
    return a;
}

UPoly upoly_gcd(UPoly a, UPoly b) {
    a = upoly_trim(a);
    b = upoly_trim(b);
    while (!b.empty()) {
        UPoly r = upoly_mod(a, b);
        a = b;
        b = r;
    }
    if (!a.empty()) {
        Rat lc = a.back();
        for (auto& c : a) c /= lc;
    }
    return a;
}

bool upoly_squarefree(const UPoly& p) {
    UPoly q = upoly_trim(p);
    if (q.size() <= 2) return !q.empty();
    return upoly_gcd(q, upoly_derivative(q)).size() == 1;
}

namespace {

std::vector<Int> divisors(Int n) {
    if (n < 0) n = -n;
    if (n == 0) throw std::domain_error("divisors of zero");
    if (n > Int(1000000000000LL)) throw std::overflow_error("coefficient too large for root search");
    std::vector<Int> out;
    for (Int d = 1; d * d <= n; ++d)
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    return out;
}

Rat upoly_eval(const UPoly& p, const Rat& x) {
    Rat s = 0;
    for (std::size_t k = p.size(); k-- > 0;) s = s * x + p[k];
    return s;
}

}  // namespace

std::vector<Rat> upoly_rational_roots(const UPoly& p_) {
    UPoly p = upoly_trim(p_);
    if (p.empty()) throw std::domain_error("roots of the zero polynomial");
    std::set<Rat> roots;
    std::size_t low = 0;
    while (p[low] == 0) ++low;
    if (low > 0) roots.insert(Rat(0));
    UPoly q(p.begin() + static_cast<std::ptrdiff_t>(low), p.end());
    if (q.size() > 1) {
        Int l = 1;
        for (const auto& c : q) l = boost::multiprecision::lcm(l, den(c));
        std::vector<Int> iq;
        for (const auto& c : q) iq.push_back(num(c * l));
        for (const auto& a : divisors(iq.front()))
            for (const auto& b : divisors(iq.back()))
                for (int s : {1, -1}) {
                    Rat x(Int(s) * a, b);
                    if (upoly_eval(q, x) == 0) roots.insert(x);
                }
    }
    return {roots.begin(), roots.end()};
}

int upoly_root_multiplicity(const UPoly& p_, const Rat& root) {
    UPoly p = upoly_trim(p_);
    if (p.empty()) throw std::domain_error("multiplicity in the zero polynomial");
    int m = 0;
    while (!p.empty() && upoly_eval(p, root) == 0) {
        ++m;
        // synthetic division by (t - root)
        UPoly q(p.size() - 1, Rat(0));
        Rat carry = 0;
        for (std::size_t k = p.size(); k-- > 1;) {
            carry = carry * root + p[k];
            q[k - 1] = carry;
        }
        p = upoly_trim(q);
    }
    return m;
}

}  // namespace birat3
