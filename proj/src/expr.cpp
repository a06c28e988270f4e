#include "birat3/expr.hpp"

#include <cctype>
#include <functional>

namespace birat3 {

struct Expr::Node {
    enum class Kind { Num, Ident, Str, Unary, Binary, Call } kind;
    Rat num;
    std::string text;  // identifier, string literal, operator or function name
    std::vector<std::shared_ptr<const Node>> kids;
};

namespace {

using NodeP = std::shared_ptr<const Expr::Node>;

NodeP mk(Expr::Node::Kind k, std::string text = {}, std::vector<NodeP> kids = {}, Rat num = 0) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->text = std::move(text);
    n->kids = std::move(kids);
    n->num = std::move(num);
    return n;
}

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    NodeP run() {
        NodeP n = disj();
        skip();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return n;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ExprError(msg + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(const std::string& tok) {
        skip();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            // do not split "<=" into "<" "=" etc.
            if ((tok == "<" || tok == ">" || tok == "!") && pos_ + 1 < s_.size() && s_[pos_ + 1] == '=') return false;
            pos_ += tok.size();
            return true;
        }
        return false;
    }

    NodeP disj() {
        NodeP n = conj();
        while (eat("||")) n = mk(Expr::Node::Kind::Binary, "||", {n, conj()});
        return n;
    }

    NodeP conj() {
        NodeP n = cmp();
        while (eat("&&")) n = mk(Expr::Node::Kind::Binary, "&&", {n, cmp()});
        return n;
    }

    NodeP cmp() {
        NodeP n = sum();
        for (const char* op : {"==", "!=", "<=", ">=", "<", ">"})
            if (eat(op)) return mk(Expr::Node::Kind::Binary, op, {n, sum()});
        return n;
    }

    NodeP sum() {
        NodeP n = prod();
        for (;;) {
            if (eat("+"))
                n = mk(Expr::Node::Kind::Binary, "+", {n, prod()});
            else if (eat("-"))
                n = mk(Expr::Node::Kind::Binary, "-", {n, prod()});
            else
                return n;
        }
    }

    NodeP prod() {
        NodeP n = unary();
        for (;;) {
            if (eat("*"))
                n = mk(Expr::Node::Kind::Binary, "*", {n, unary()});
            else if (eat("/"))
                n = mk(Expr::Node::Kind::Binary, "/", {n, unary()});
            else if (eat("%"))
                n = mk(Expr::Node::Kind::Binary, "%", {n, unary()});
            else
                return n;
        }
    }

    NodeP unary() {
        if (eat("-")) return mk(Expr::Node::Kind::Unary, "-", {unary()});
        if (eat("!")) return mk(Expr::Node::Kind::Unary, "!", {unary()});
        NodeP n = primary();
        if (eat("^")) return mk(Expr::Node::Kind::Binary, "^", {n, unary()});
        return n;
    }

    NodeP primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodeP n = disj();
            if (!eat(")")) fail("expected ')'");
            return n;
        }
        if (c == '"') {
            std::size_t end = s_.find('"', pos_ + 1);
            if (end == std::string::npos) fail("unterminated string");
            std::string lit = s_.substr(pos_ + 1, end - pos_ - 1);
            pos_ = end + 1;
            return mk(Expr::Node::Kind::Str, lit);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            return mk(Expr::Node::Kind::Num, {}, {}, Rat(Int(s_.substr(start, pos_ - start))));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (eat("(")) {
                std::vector<NodeP> args;
                if (!eat(")")) {
                    do args.push_back(disj());
                    while (eat(","));
                    if (!eat(")")) fail("expected ')' after arguments");
                }
                return mk(Expr::Node::Kind::Call, name, args);
            }
            return mk(Expr::Node::Kind::Ident, name);
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

Int as_int(const Rat& v, const std::string& what) {
    if (!is_integer(v)) throw ExprError(what + " needs an integer, got " + to_string(v));
    return num(v);
}

const Poly& slot_arg(const NodeP& n, const ExprEnv& env) {
    if (n->kind != Expr::Node::Kind::Ident) throw ExprError("slot function needs a slot name");
    if (!env.slots) throw ExprError("no slots bound");
    auto it = env.slots->find(n->text);
    if (it == env.slots->end()) throw ExprError("unknown slot '" + n->text + "'");
    return it->second;
}

std::string str_arg(const NodeP& n) {
    if (n->kind == Expr::Node::Kind::Str || n->kind == Expr::Node::Kind::Ident) return n->text;
    throw ExprError("expected a string argument");
}

Rat eval_node(const NodeP& n, const ExprEnv& env) {
    using K = Expr::Node::Kind;
    switch (n->kind) {
        case K::Num:
            return n->num;
        case K::Str:
            throw ExprError("string literal used as a number");
        case K::Ident: {
            if (env.params) {
                auto it = env.params->find(n->text);
                if (it != env.params->end()) return it->second;
            }
            throw UnboundParameter(n->text);
        }
        case K::Unary: {
            Rat v = eval_node(n->kids[0], env);
            return n->text == "-" ? Rat(-v) : Rat(v == 0 ? 1 : 0);
        }
        case K::Binary: {
            const std::string& op = n->text;
            if (op == "&&") return eval_node(n->kids[0], env) != 0 && eval_node(n->kids[1], env) != 0 ? 1 : 0;
            if (op == "||") return eval_node(n->kids[0], env) != 0 || eval_node(n->kids[1], env) != 0 ? 1 : 0;
            Rat a = eval_node(n->kids[0], env), b = eval_node(n->kids[1], env);
            if (op == "+") return a + b;
            if (op == "-") return a - b;
            if (op == "*") return a * b;
            if (op == "/") {
                if (b == 0) throw ExprError("division by zero");
                return a / b;
            }
            if (op == "%") {
                Int m = as_int(b, "%");
                if (m <= 0) throw ExprError("modulus must be positive");
                Int r = as_int(a, "%") % m;
                return Rat(r < 0 ? Int(r + m) : r);
            }
            if (op == "^") {
                Int e = as_int(b, "^");
                if (e < 0 || e > 64) throw ExprError("exponent out of range");
                Rat p = 1;
                for (Int k = 0; k < e; ++k) p *= a;
                return p;
            }
            if (op == "==") return a == b ? 1 : 0;
            if (op == "!=") return a != b ? 1 : 0;
            if (op == "<") return a < b ? 1 : 0;
            if (op == "<=") return a <= b ? 1 : 0;
            if (op == ">") return a > b ? 1 : 0;
            if (op == ">=") return a >= b ? 1 : 0;
            throw ExprError("unknown operator " + op);
        }
        case K::Call: {
            const std::string& f = n->text;
            const auto& k = n->kids;
            auto need = [&](std::size_t c) {
                if (k.size() != c) throw ExprError(f + " expects " + std::to_string(c) + " arguments");
            };
            if (f == "if") {
                need(3);
                return eval_node(k[0], env) != 0 ? eval_node(k[1], env) : eval_node(k[2], env);
            }
            if (f == "has") {
                need(2);
                const Poly& p = slot_arg(k[0], env);
                Poly m = parse_poly(interpolate(str_arg(k[1]), env), env.vars);
                if (m.size() != 1) throw ExprError("has() needs a single monomial");
                Poly pv = p.with_vars(env.vars);
                return pv.has_monomial(m.terms().begin()->first) ? 1 : 0;
            }
            if (f == "deg") {
                need(2);
                const Poly& p = slot_arg(k[0], env);
                std::string v = str_arg(k[1]);
                auto it = std::find(p.vars().begin(), p.vars().end(), v);
                if (it == p.vars().end()) return 0;
                return p.degree_in(static_cast<std::size_t>(it - p.vars().begin()));
            }
            if (f == "order") {
                need(1);
                return slot_arg(k[0], env).order();
            }
            if (f == "iszero") {
                need(1);
                return slot_arg(k[0], env).is_zero() ? 1 : 0;
            }
            std::vector<Rat> v;
            for (const auto& a : k) v.push_back(eval_node(a, env));
            if (f == "min" || f == "max") {
                if (v.empty()) throw ExprError(f + " needs arguments");
                Rat m = v[0];
                for (const auto& x : v) m = (f == "min") ? std::min(m, x) : std::max(m, x);
                return m;
            }
            if (f == "floor") {
                need(1);
                return Rat(floor_rat(v[0]));
            }
            if (f == "ceil") {
                need(1);
                return Rat(ceil_rat(v[0]));
            }
            if (f == "mod") {
                need(2);
                Int m = as_int(v[1], "mod");
                if (m <= 0) throw ExprError("modulus must be positive");
                Int r = as_int(v[0], "mod") % m;
                return Rat(r < 0 ? Int(r + m) : r);
            }
            if (f == "gcd") {
                need(2);
                return Rat(boost::multiprecision::gcd(as_int(v[0], "gcd"), as_int(v[1], "gcd")));
            }
            if (f == "odd" || f == "even") {
                need(1);
                bool odd = (as_int(v[0], f) % 2) != 0;
                return (f == "odd") == odd ? 1 : 0;
            }
            if (f == "isint") {
                need(1);
                return is_integer(v[0]) ? 1 : 0;
            }
            throw ExprError("unknown function " + f);
        }
    }
    throw ExprError("bad expression node");
}

void collect(const NodeP& n, std::set<std::string>& out) {
    using K = Expr::Node::Kind;
    if (n->kind == K::Ident) out.insert(n->text);
    if (n->kind == K::Call && (n->text == "has" || n->text == "deg" || n->text == "order" || n->text == "iszero")) return;
    for (const auto& k : n->kids) collect(k, out);
}

}  // namespace

Expr Expr::parse(const std::string& text) {
    Expr e;
    e.source_ = text;
    e.root_ = ExprParser(text).run();
    return e;
}

Rat Expr::eval(const ExprEnv& env) const {
    if (!root_) throw ExprError("empty expression");
    return eval_node(root_, env);
}

std::set<std::string> Expr::parameters() const {
    std::set<std::string> out;
    if (root_) collect(root_, out);
    return out;
}

bool Expr::is_identifier() const { return root_ && root_->kind == Node::Kind::Ident; }

Rat eval_expr(const std::string& text, const ExprEnv& env) { return Expr::parse(text).eval(env); }

std::string interpolate(const std::string& templ, const ExprEnv& env) {
    std::string out;
    std::size_t i = 0;
    while (i < templ.size()) {
        if (templ[i] != '{') {
            out += templ[i++];
            continue;
        }
        std::size_t depth = 1, j = i + 1;
        while (j < templ.size() && depth) {
            if (templ[j] == '{') ++depth;
            if (templ[j] == '}') --depth;
            ++j;
        }
        if (depth) throw ExprError("unbalanced '{' in template '" + templ + "'");
        Rat v = eval_expr(templ.substr(i + 1, j - i - 2), env);
        std::string s = to_string(v);
        out += (is_integer(v) && v >= 0) ? s : "(" + s + ")";
        i = j;
    }
    return out;
}

}  // namespace birat3
