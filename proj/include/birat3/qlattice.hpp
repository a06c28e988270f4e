#pragma once

#include "birat3/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace birat3 {

struct CompatibilityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A^n / (1/r)(a_1,...,a_n). Exponents are kept reduced into [0, r).
struct QuotientAction {
    std::int64_t r = 1;
    std::vector<std::int64_t> a;

    QuotientAction() = default;
    QuotientAction(std::int64_t r_, std::vector<std::int64_t> a_);
    static QuotientAction trivial_action(std::size_t n) { return QuotientAction(1, std::vector<std::int64_t>(n, 0)); }

    std::size_t n() const { return a.size(); }
    bool is_trivial() const;
    // order of the generator in (Q/Z)^n
    std::int64_t effective_order() const;
    // same group, written with r = effective_order()
    QuotientAction reduced() const;
    // same group, generator chosen so the exponent vector is lexicographically minimal
    QuotientAction normalized() const;
    QuotientAction restricted(const std::vector<std::size_t>& keep) const;
    QuotientAction permuted(const std::vector<std::size_t>& perm) const;
    std::int64_t character(const std::vector<int>& exps) const;
    std::string str() const;

    bool operator==(const QuotientAction& o) const { return r == o.r && a == o.a; }
    bool operator<(const QuotientAction& o) const { return r != o.r ? r < o.r : a < o.a; }
};

// w = (1/r)(b_1,...,b_n), all b_i >= 1; never rescaled automatically
struct WeightVector {
    std::int64_t r = 1;
    std::vector<std::int64_t> b;

    WeightVector() = default;
    WeightVector(std::int64_t r_, std::vector<std::int64_t> b_);

    std::size_t n() const { return b.size(); }
    Rat value(std::size_t i) const { return make_rat(b.at(i), r); }
    Rat sum() const;
    std::string str() const;  // "1/r(b1,...)" or "(b1,...)" when r == 1

    bool operator==(const WeightVector& o) const { return r == o.r && b == o.b; }
    bool operator<(const WeightVector& o) const { return r != o.r ? r < o.r : b < o.b; }
};

// b_i/R = lambda a_i/R + k_i after putting action and weight over the common denominator R
struct Compatibility {
    std::int64_t R = 1;
    std::vector<std::int64_t> a;  // action numerators over R
    std::vector<std::int64_t> b;  // weight numerators over R
    std::int64_t lambda = 1;
    std::vector<std::int64_t> k;
};

std::optional<Compatibility> compatibility(const QuotientAction& action, const WeightVector& w);
Compatibility require_compatible(const QuotientAction& action, const WeightVector& w);

struct ChartQuotientData {
    std::size_t chart_index = 1;        // 1-based
    std::int64_t order_tau = 1;         // b_i over the common denominator
    std::vector<std::int64_t> tau;       // numerators over order_tau
    std::vector<std::int64_t> tau_prime; // numerators over R * order_tau
    std::int64_t R = 1;
    std::int64_t lambda = 1;
    std::vector<std::int64_t> k;
    std::int64_t tau_effective_order = 1;
    std::int64_t group_order = 1;
    std::int64_t m = 1;                  // residual order acting on the exceptional divisor
    bool cyclic = true;
    bool relation_holds = true;          // tau^{k_i} == tau'^{lambda}
    QuotientAction action;               // single cyclic generator, normalized
};

ChartQuotientData chart_decomposition(const QuotientAction& action, const WeightVector& w, std::size_t i);

// Order of the subgroup of (Q/Z)^n generated by gens (numerators over D), via Smith normal form.
struct SubgroupInfo {
    std::int64_t order = 1;
    std::vector<Int> invariant_factors;  // of the subgroup, each > 1, dividing chain
    bool cyclic = true;
};
SubgroupInfo subgroup_info(const std::vector<std::vector<std::int64_t>>& gens, std::int64_t D);

// Nonzero diagonal of the Smith normal form.
std::vector<Int> smith_diagonal(std::vector<std::vector<Int>> mat);

std::set<std::size_t> center_chart_test(const WeightVector& blowup_weight, const WeightVector& valuation_weight);

Rat ambient_discrepancy(const WeightVector& w);
Rat exc_self_intersection(const WeightVector& w, std::int64_t m, std::size_t n);

// n = 3 only: 1/r(a, -a, 1) up to permutation and change of generator, gcd(a, r) = 1
bool terminal_quotient_check(const QuotientAction& action);

// The unique w-morphism weight over a terminal cyclic quotient point (n = 3).
WeightVector kawamata_weight(const QuotientAction& action);

}  // namespace birat3
