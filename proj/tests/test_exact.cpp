#include "oracles.hpp"
#include "piforge/exact.hpp"
#include "piforge/modular.hpp"

#include <doctest.h>

using namespace piforge;
namespace mod = piforge::modular;

TEST_CASE("rationals are canonical") {
    const ExactRat r = make_rat(6, -4);
    CHECK(r.get_num() == -3);
    CHECK(r.get_den() == 2);
    CHECK_THROWS_AS(make_rat(1, 0), DomainError);
    CHECK(parse_rat("-10/4") == make_rat(-5, 2));
    CHECK(parse_rat("7") == 7);
    CHECK_THROWS(parse_rat("1/0"));
    CHECK_THROWS(parse_rat("abc"));
    CHECK(to_string(make_rat(3, 9)) == "1/3");
}

TEST_CASE("binomial examples") {
    CHECK(binomial(2, 1) == 2);
    CHECK(binomial(5, 7) == 0);
    // binom(-1/2, 3) = binom(6,3) / (-4)^3
    CHECK(binomial(make_rat(-1, 2), 3) == make_rat(-5, 16));
    CHECK(binomial(make_rat(-1, 2), 3) == ExactRat(oracle::binom(6, 3)) / ExactRat(-64));
    CHECK(binomial(make_rat(-1, 4), 2) == make_rat(5, 32));
    CHECK_THROWS_AS(binomial(ExactRat(3), -1), DomainError);
    CHECK_THROWS_AS(binomial(4, -1), DomainError);
}

TEST_CASE("binomial agrees with GMP on random arguments") {
    std::mt19937_64 rng(oracle::kSeed);
    for (int i = 0; i < 300; ++i) {
        const long n = static_cast<long>(rng() % 400);
        const long k = static_cast<long>(rng() % 420);
        CHECK(binomial(n, k) == oracle::binom(n, k));
        CHECK(binomial(ExactRat(n), k) == ExactRat(oracle::binom(n, k)));
    }
}

TEST_CASE("generalized binomial of -1/2 gives central binomials") {
    for (long k = 0; k <= 60; ++k) {
        const ExactRat lhs = binomial(make_rat(-1, 2), k) * rpow(ExactRat(-4), k);
        CHECK(lhs == ExactRat(oracle::central(k)));
    }
}

TEST_CASE("reduce_mod") {
    CHECK(*reduce_mod(make_rat(1, 2), 7) == 4);
    CHECK(*reduce_mod(ExactRat(-1), 7) == 6);
    CHECK_FALSE(reduce_mod(make_rat(1, 7), 49).has_value());
    CHECK(*reduce_mod_u64(make_rat(-3, 5), 11) == 6);  // 5*6 = 30 = -3 mod 11
    std::mt19937_64 rng(oracle::kSeed + 1);
    for (int i = 0; i < 200; ++i) {
        const long num = static_cast<long>(rng() % 100000) - 50000;
        const long den = static_cast<long>(rng() % 1000) + 1;
        const std::uint64_t m = rng() % 100000 + 2;
        const ExactRat v = make_rat(num, den);
        const auto r = reduce_mod_u64(v, m);
        if (std::gcd(static_cast<std::uint64_t>(v.get_den().get_ui()), m) != 1) {
            CHECK_FALSE(r.has_value());
        } else {
            REQUIRE(r.has_value());
            // r * den == num (mod m)
            const mpz_class lhs = mpz_class(static_cast<unsigned long>(*r)) * v.get_den() - v.get_num();
            CHECK(mpz_divisible_ui_p(lhs.get_mpz_t(), m) != 0);
        }
    }
}

TEST_CASE("digit counts and logs") {
    CHECK(decimal_digits(0) == 1);
    CHECK(decimal_digits(ExactInt("-123456")) == 6);
    CHECK(log2_abs(ExactRat(1024)) == doctest::Approx(10.0));
    CHECK(log2_abs(make_rat(1, 8)) == doctest::Approx(-3.0));
}

TEST_CASE("modular primitives") {
    CHECK(mod::pow(3, 4, 7) == 4);
    CHECK(mod::inverse(3, 7) == 5);
    CHECK(mod::inverse(7, 49) == 0);
    CHECK(mod::from_signed(-1, 9) == 8);
    const std::uint64_t big = (std::uint64_t{1} << 62) + 135;
    CHECK(mod::mul(big - 1, big - 1, big) == 1);
}

TEST_CASE("prime sieve matches trial division") {
    const auto ps = mod::primes_up_to(2000);
    std::vector<std::uint32_t> want;
    for (long n = 2; n <= 2000; ++n) {
        if (oracle::is_prime_slow(n)) want.push_back(static_cast<std::uint32_t>(n));
    }
    CHECK(ps == want);
    for (long n = 0; n < 3000; ++n) CHECK(mod::is_prime(static_cast<std::uint64_t>(n)) == oracle::is_prime_slow(n));
    CHECK(mod::is_prime(18446744073709551557ULL));
}

TEST_CASE("legendre examples and errors") {
    CHECK(mod::legendre(-1, 5) == 1);
    CHECK(mod::legendre(2, 7) == 1);
    CHECK(mod::legendre(3, 7) == -1);
    CHECK(mod::legendre(14, 7) == 0);
    CHECK_THROWS_AS(mod::legendre(3, 9), DomainError);
    CHECK_THROWS_AS(mod::legendre(3, 2), DomainError);
}

TEST_CASE("legendre: multiplicativity and reciprocity on 1000 random pairs") {
    const auto ps = mod::primes_up_to(5000);
    std::mt19937_64 rng(oracle::kSeed + 2);
    for (int i = 0; i < 1000; ++i) {
        const long p = ps[1 + rng() % (ps.size() - 1)];
        const long q = ps[1 + rng() % (ps.size() - 1)];
        const long a = static_cast<long>(rng() % 200000) - 100000;
        const long b = static_cast<long>(rng() % 200000) - 100000;
        const int la = mod::legendre(a, p);
        CHECK(la == oracle::legendre_slow(a, p));
        CHECK(mod::legendre(ExactInt(a) * b, p) == la * mod::legendre(b, p));
        if (p != q) {
            const int sign = ((p - 1) / 2 * ((q - 1) / 2)) % 2 == 0 ? 1 : -1;
            CHECK(mod::legendre(p, q) * mod::legendre(q, p) == sign);
        }
    }
}

TEST_CASE("jacobi agrees with the product of legendre symbols") {
    std::mt19937_64 rng(oracle::kSeed + 3);
    for (int i = 0; i < 300; ++i) {
        const long n = 2 * static_cast<long>(rng() % 2000) + 1;
        const long a = static_cast<long>(rng() % 100000) - 50000;
        int want = 1;
        long m = n;
        for (long d = 3; d <= m; d += 2) {
            while (m % d == 0) {
                want *= oracle::legendre_slow(a, d);
                m /= d;
            }
        }
        CHECK(mod::jacobi(a, static_cast<std::uint64_t>(n)) == want);
    }
}
