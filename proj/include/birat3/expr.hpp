#pragma once

// Small exact expression language used by the classification registry.
//   numbers, parameters, + - * / % ^, comparisons, && || !, and
//   min max floor ceil mod gcd odd even if(c,a,b)
//   has(slot, "monomial"), deg(slot, "var"), order(slot)
// Booleans evaluate to 0/1.

#include "birat3/poly.hpp"
#include "birat3/rational.hpp"

#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace birat3 {

struct ExprError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnboundParameter : ExprError {
    std::string name;
    explicit UnboundParameter(const std::string& n) : ExprError("unbound parameter '" + n + "'"), name(n) {}
};

struct ExprEnv {
    const std::map<std::string, Rat>* params = nullptr;
    const std::map<std::string, Poly>* slots = nullptr;
    std::vector<std::string> vars;  // ring for monomial literals
};

class Expr {
public:
    struct Node;

    Expr() = default;
    static Expr parse(const std::string& text);

    Rat eval(const ExprEnv& env) const;
    bool truth(const ExprEnv& env) const { return eval(env) != 0; }
    const std::string& source() const { return source_; }
    // parameter names referenced outside slot-function arguments
    std::set<std::string> parameters() const;
    // a bare identifier, e.g. a weight entry "b"
    bool is_identifier() const;

private:
    std::string source_;
    std::shared_ptr<const Node> root_;
};

Rat eval_expr(const std::string& text, const ExprEnv& env);

// replaces every {expr} by its value, parenthesised when not a nonnegative integer
std::string interpolate(const std::string& templ, const ExprEnv& env);

}  // namespace birat3
