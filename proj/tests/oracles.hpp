#pragma once
// Independent reference computations for tests. Nothing here calls into
// piforge; values are built from GMP primitives and textbook formulas.

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace oracle {

inline constexpr std::uint64_t kSeed = 20240601;

inline mpz_class binom(unsigned long n, unsigned long k) {
    mpz_class r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline mpz_class central(unsigned long n) { return binom(2 * n, n); }

/// Coefficients of (x^2 + b x + c)^n by repeated polynomial multiplication.
inline mpz_class trinomial(long n, const mpz_class& b, const mpz_class& c) {
    std::vector<mpz_class> poly{1};
    for (long i = 0; i < n; ++i) {
        std::vector<mpz_class> next(poly.size() + 2);
        for (std::size_t j = 0; j < poly.size(); ++j) {
            next[j] += poly[j] * c;
            next[j + 1] += poly[j] * b;
            next[j + 2] += poly[j];
        }
        poly = std::move(next);
    }
    return poly[static_cast<std::size_t>(n)];
}

/// sum_k binom(2k,k)^2 binom(2(n-k),n-k)^2, termwise.
inline mpz_class conv_sq(unsigned long n) {
    mpz_class s = 0;
    for (unsigned long k = 0; k <= n; ++k) {
        const mpz_class a = central(k);
        const mpz_class b = central(n - k);
        s += a * a * b * b;
    }
    return s;
}

/// floor(pi * 10^digits) by Machin's formula in fixed point with guard digits.
inline mpz_class pi_scaled(unsigned long digits) {
    const unsigned long guard = 10;
    mpz_class one;
    mpz_ui_pow_ui(one.get_mpz_t(), 10, digits + guard);
    auto arctan_inv = [&](unsigned long x) {
        mpz_class sum = 0;
        mpz_class term = one / x;
        const unsigned long x2 = x * x;
        for (unsigned long k = 0; term != 0; ++k) {
            const mpz_class t = term / (2 * k + 1);
            if (k % 2 == 0) sum += t;
            else sum -= t;
            term /= x2;
        }
        return sum;
    };
    mpz_class pi = 4 * (4 * arctan_inv(5) - arctan_inv(239));
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, guard);
    return pi / scale;
}

inline mpz_class isqrt(const mpz_class& v) {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

/// First `digits` decimals of a/pi as an integer floor(10^digits * a / pi).
inline mpz_class over_pi_scaled(const mpq_class& a, unsigned long digits) {
    const unsigned long extra = 10;
    const mpz_class pi = pi_scaled(digits + extra);
    mpz_class p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, 2 * (digits + extra));
    mpz_class num = a.get_num() * p10;
    mpz_class den = a.get_den() * pi;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    mpz_class s;
    mpz_ui_pow_ui(s.get_mpz_t(), 10, extra);
    return q / s;
}

inline bool is_prime_slow(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

/// Euler's criterion.
inline int legendre_slow(long a, long p) {
    long r = ((a % p) + p) % p;
    if (r == 0) return 0;
    long acc = 1;
    for (long i = 0; i < (p - 1) / 2; ++i) acc = acc * r % p;
    return acc == 1 ? 1 : -1;
}

inline std::string str(const mpz_class& v) { return v.get_str(); }

}  // namespace oracle
