#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace birat3 {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat make_rat(std::int64_t p, std::int64_t q = 1) {
    if (q == 0) throw std::domain_error("zero denominator");
    return Rat(Int(p), Int(q));
}

inline Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rat& x) { return den(x) == 1; }

Int floor_div(const Int& a, const Int& b);
Int floor_rat(const Rat& x);
Int ceil_rat(const Rat& x);

// "p" or "p/q", always in lowest terms
std::string to_string(const Rat& x);
std::string to_string(const Int& x);
Rat parse_rat(const std::string& s);

std::int64_t to_i64(const Int& x);
std::int64_t to_i64(const Rat& x);  // throws unless integral

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t mod64(std::int64_t a, std::int64_t m);  // result in [0, m)

}  // namespace birat3
