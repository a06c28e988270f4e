#include "birat3/rational.hpp"

#include <limits>
#include <numeric>

namespace birat3 {

Int floor_div(const Int& a, const Int& b) {
    if (b == 0) throw std::domain_error("division by zero");
    Int q = a / b;
    Int r = a % b;
    if (r != 0 && ((r < 0) != (b < 0))) q -= 1;
    return q;
}

Int floor_rat(const Rat& x) { return floor_div(num(x), den(x)); }

Int ceil_rat(const Rat& x) { return -floor_div(-num(x), den(x)); }

std::string to_string(const Int& x) { return x.str(); }

std::string to_string(const Rat& x) {
    if (den(x) == 1) return num(x).str();
    return num(x).str() + "/" + den(x).str();
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int p(s.substr(0, slash));
        Int q(s.substr(slash + 1));
        if (q == 0) throw std::domain_error("zero denominator in '" + s + "'");
        return Rat(p, q);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational literal: '" + s + "'");
    }
}

std::int64_t to_i64(const Int& x) {
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min())
        throw std::overflow_error("integer out of 64-bit range: " + x.str());
    return static_cast<std::int64_t>(x);
}

std::int64_t to_i64(const Rat& x) {
    if (!is_integer(x)) throw std::domain_error("expected an integer, got " + to_string(x));
    return to_i64(num(x));
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    if (a == 0 || b == 0) return 0;
    return std::lcm(a, b);
}

std::int64_t mod64(std::int64_t a, std::int64_t m) {
    if (m <= 0) throw std::domain_error("modulus must be positive");
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

}  // namespace birat3
