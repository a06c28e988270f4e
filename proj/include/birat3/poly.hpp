#pragma once

#include "birat3/qlattice.hpp"
#include "birat3/rational.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace birat3 {

using Exps = std::vector<int>;

// total degree first, then reverse lexicographic so that x*y comes before u^2 when printed
struct GradedLexLess {
    bool operator()(const Exps& a, const Exps& b) const;
};

struct PolyParseError : std::runtime_error {
    std::size_t position;
    PolyParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

struct NotSemiInvariant : std::runtime_error {
    Exps first, second;
    NotSemiInvariant(const std::string& msg, Exps a, Exps b)
        : std::runtime_error(msg), first(std::move(a)), second(std::move(b)) {}
};

struct IntegralityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Poly {
public:
    using TermMap = std::map<Exps, Rat, GradedLexLess>;

    Poly() = default;
    explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static Poly constant(const std::vector<std::string>& vars, const Rat& c);
    static Poly variable(const std::vector<std::string>& vars, std::size_t i);
    static Poly monomial(const std::vector<std::string>& vars, const Exps& e, const Rat& c = 1);

    const std::vector<std::string>& vars() const { return vars_; }
    std::size_t nvars() const { return vars_.size(); }
    std::size_t var_index(const std::string& name) const;
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rat coeff(const Exps& e) const;
    bool has_monomial(const Exps& e) const { return terms_.count(e) != 0; }
    void add_term(const Exps& e, const Rat& c);

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& c) const;
    Poly& operator+=(const Poly& o);
    Poly pow(unsigned e) const;
    bool operator==(const Poly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    int total_degree() const;  // -1 for zero
    int order() const;         // lowest total degree, -1 for zero
    int degree_in(std::size_t i) const;
    int order_in(std::size_t i) const;  // largest power of x_i dividing every term
    Poly homogeneous_part(int d) const;
    Poly derivative(std::size_t i) const;
    Rat eval(const std::vector<Rat>& point) const;
    Poly substitute_constant(std::size_t i, const Rat& c) const;
    // images are polynomials in a common target ring
    Poly compose(const std::vector<Poly>& images) const;
    // exact division by the monomial x^e, throws when some term is not divisible
    Poly divide_monomial(const Exps& e) const;
    // polynomial in the named variables; every variable actually used must be present
    Poly with_vars(const std::vector<std::string>& new_vars) const;
    Poly permuted(const std::vector<std::size_t>& perm) const;  // new var k = old var perm[k]

    std::string str() const;

private:
    std::vector<std::string> vars_;
    TermMap terms_;
};

Poly parse_poly(const std::string& text, const std::vector<std::string>& vars);

Rat term_weight(const Exps& e, const WeightVector& w);
Rat weight_of(const Poly& f, const WeightVector& w);
Poly leading_form(const Poly& f, const WeightVector& w);
bool is_w_homogeneous(const Poly& f, const WeightVector& w);
std::int64_t semi_invariant_character(const Poly& f, const QuotientAction& g);
std::optional<std::int64_t> try_character(const Poly& f, const QuotientAction& g);

// Polynomials with exponents in Q, used for images of coordinates under chart maps.
using RExps = std::vector<Rat>;

class RPoly {
public:
    using TermMap = std::map<RExps, Rat>;

    RPoly() = default;
    explicit RPoly(std::size_t n) : n_(n) {}
    static RPoly from_poly(const Poly& p);
    static RPoly monomial(const RExps& e, const Rat& c = 1);

    std::size_t nvars() const { return n_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const RExps& e, const Rat& c);

    RPoly operator+(const RPoly& o) const;
    RPoly operator*(const RPoly& o) const;
    RPoly pow(unsigned e) const;
    Rat min_exponent(std::size_t i) const;
    RPoly shift(const RExps& e) const;  // multiply by the monomial y^e
    bool is_integral() const;
    Poly to_poly(const std::vector<std::string>& vars) const;  // IntegralityError unless integral
    bool operator==(const RPoly& o) const { return n_ == o.n_ && terms_ == o.terms_; }

private:
    std::size_t n_ = 0;
    TermMap terms_;
};

Rat weight_of(const RPoly& f, const WeightVector& w);

// x_k -> y^{image[k]}
struct MonomialMap {
    std::vector<RExps> image;

    std::size_t source_dim() const { return image.size(); }
    std::size_t target_dim() const { return image.empty() ? 0 : image[0].size(); }
    RPoly apply(const Poly& f) const;
    RPoly apply(const RPoly& f) const;
    // (this after inner): source of this = target of inner
    MonomialMap after(const MonomialMap& inner) const;
    std::string str(const std::vector<std::string>& target_vars) const;
};

// x_j = y_j y_i^{b_j/r}, x_i = y_i^{b_i/r}
MonomialMap chart_map(const WeightVector& w, std::size_t i);

// phi^*(f) / y_i^{w(f)} in chart U_i, variables keep their names
Poly strict_transform(const Poly& f, const WeightVector& w, std::size_t i);

// Dense univariate polynomials over Q, coefficient of t^k at index k.
using UPoly = std::vector<Rat>;
UPoly upoly_trim(UPoly p);
UPoly upoly_from(const Poly& f, std::size_t var);  // f must only involve var
UPoly upoly_derivative(const UPoly& p);
UPoly upoly_mod(const UPoly& a, const UPoly& b);
UPoly upoly_gcd(UPoly a, UPoly b);  // monic
bool upoly_squarefree(const UPoly& p);
std::vector<Rat> upoly_rational_roots(const UPoly& p);  // distinct, sorted
int upoly_root_multiplicity(const UPoly& p, const Rat& root);

}  // namespace birat3
