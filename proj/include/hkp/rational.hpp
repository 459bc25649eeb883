#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hkp {

using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string num_string(const Rational& r) { return r.get_num().get_str(); }
inline std::string den_string(const Rational& r) { return r.get_den().get_str(); }

inline std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return num_string(r);
    return num_string(r) + "/" + den_string(r);
}

inline Rational factorial(int n) {
    if (n < 0) throw std::domain_error("factorial of negative integer");
    mpz_class f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return Rational(f);
}

inline Rational binomial(int n, int k) {
    if (k < 0 || k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(b);
}

inline Rational rational_pow(const Rational& base, int e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("zero to a negative power");
        return rational_pow(Rational(1) / base, -e);
    }
    Rational r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

inline Rational parse_rational(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    r.canonicalize();
    return r;
}

}  // namespace hkp
