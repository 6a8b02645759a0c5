#include "kacmod/rational.hpp"

#include <stdexcept>

namespace kacmod {

std::string to_string(const Rational& r) {
    const BigInt n = numerator(r);
    const BigInt d = denominator(r);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt n(s.substr(0, slash));
        BigInt d(s.substr(slash + 1));
        if (d == 0) throw std::invalid_argument("zero denominator");
        return Rational(n, d);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("bad rational: " + s);
    }
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

bool is_integer(const Rational& r) { return denominator(r) == 1; }

std::int64_t to_int64(const Rational& r) {
    if (!is_integer(r)) throw std::domain_error("not an integer: " + to_string(r));
    const BigInt n = numerator(r);
    if (n > BigInt(INT64_MAX) || n < BigInt(INT64_MIN)) throw std::overflow_error("integer too large");
    return n.convert_to<std::int64_t>();
}

Rational floor_r(const Rational& r) {
    BigInt n = numerator(r), d = denominator(r);
    BigInt q = n / d;  // truncates toward zero
    if (n < 0 && q * d != n) q -= 1;
    return Rational(q);
}

Rational frac(const Rational& r) { return r - floor_r(r); }

}  // namespace kacmod
