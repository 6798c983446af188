#include "oracles.hpp"
#include "piforge/identities.hpp"
#include "piforge/modular.hpp"

#include <doctest.h>

using namespace piforge;

namespace {

mpz_class spow(long base, unsigned long e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base < 0 ? -base : base), e);
    return base < 0 && e % 2 == 1 ? mpz_class(-r) : r;
}

/// Binomial transform: sum_k f(k) binom(k,n-k) base^(n-k).
template <class F>
mpz_class transform(unsigned long n, long base, F f) {
    mpz_class s = 0;
    for (unsigned long k = (n + 1) / 2; k <= n; ++k) s += f(k) * oracle::binom(k, n - k) * spow(base, n - k);
    return s;
}

mpz_class lhs_2_1(unsigned long n) {
    return transform(n, -16, [](unsigned long k) { return mpz_class(oracle::central(k) * oracle::central(k) * oracle::central(k)); });
}

mpz_class lhs_2_5_sum(unsigned long n) {
    return transform(n, -64, [](unsigned long k) {
        return mpz_class(oracle::binom(4 * k, 2 * k) * oracle::central(k) * oracle::central(k));
    });
}

mpz_class p4(unsigned long n) {
    mpz_class s = 0;
    for (unsigned long k = 0; k <= n; ++k) s += oracle::central(k) * oracle::central(k) * oracle::central(n - k) * spow(4, n - k);
    return s;
}

}  // namespace

TEST_CASE("identity anchors") {
    const auto v21 = verify_identity(IdentityTag::Id2_1, 1);
    REQUIRE(v21.size() == 2);
    CHECK(v21[0].lhs == 1);
    CHECK(v21[1].lhs == 8);
    CHECK(v21[1].rhs == 8);
    const auto v31 = verify_identity(IdentityTag::Id3_1, 1);
    CHECK(v31[0].lhs == 1);
    CHECK(v31[1].lhs == 40);
    CHECK(v31[1].rhs == 40);
    const auto v25 = verify_identity(IdentityTag::Id2_5, 1);
    CHECK(v25[0].lhs == 1);
    CHECK(v25[0].rhs == 1);
    // normalized by binom(2n,n), both realizations are 1, 12
    CHECK(v25[1].lhs / 2 == 12);
    CHECK(v25[1].rhs / 2 == 12);
    CHECK_THROWS_AS(verify_identity(IdentityTag::Id2_1, -1), DomainError);
}

TEST_CASE("identity sides match independent sums") {
    for (unsigned long n = 0; n <= 40; ++n) {
        const long m = static_cast<long>(n);
        CHECK(identity_side(IdentityTag::Id2_1, Side::Lhs, m) == ExactRat(lhs_2_1(n)));
        CHECK(identity_side(IdentityTag::Id2_1, Side::Rhs, m) == ExactRat(oracle::conv_sq(n)));
        CHECK(identity_side(IdentityTag::Id2_5, Side::Lhs, m) == ExactRat(oracle::central(n) * p4(n)));
        CHECK(identity_side(IdentityTag::Id2_5, Side::Rhs, m) == ExactRat(lhs_2_5_sum(n)));
    }
}

TEST_CASE("3.1 left side: 64^n times the quarter convolution") {
    for (long n = 0; n <= 15; ++n) {
        ExactRat s = 0;
        for (long k = 0; k <= n; ++k) {
            const ExactRat a = binomial(make_rat(-1, 4), k);
            const ExactRat b = binomial(make_rat(-3, 4), n - k);
            s += a * a * b * b;
        }
        CHECK(identity_side(IdentityTag::Id3_1, Side::Lhs, n) == s * ipow(64, static_cast<unsigned long>(n)));
    }
}

TEST_CASE("every identity holds for n <= 60") {
    for (const auto& info : identity_catalog()) {
        for (const auto& v : verify_identity(info.tag, 60, 2)) CHECK_MESSAGE(v.equal, info.id << " n=" << v.n);
    }
}

TEST_CASE("identity verdicts are independent of worker count") {
    const auto a = verify_identity(IdentityTag::Id2_4, 25, 1);
    const auto b = verify_identity(IdentityTag::Id2_4, 25, 4);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].n == static_cast<long>(i));
        CHECK(a[i].lhs == b[i].lhs);
    }
}

TEST_CASE("catalog") {
    CHECK(identity_catalog().size() == 6);
    CHECK(identity_info(IdentityTag::Id2_2).status == Status::Quoted);
    CHECK(identity_info(IdentityTag::Id2_1).status == Status::Proved);
    CHECK(identity_from_id("3.1") == IdentityTag::Id3_1);
    CHECK_FALSE(identity_from_id("9.9").has_value());
    CHECK(recurrence_from_id("REC_2_5") == RecurrenceTag::Rec2_5);
}

TEST_CASE("recurrence examples") {
    // u_2 from the recurrence: (8*3*5*8 - 256) / 8 = 88
    const auto c = recurrence_coeffs(RecurrenceTag::Rec2_1, 0);
    CHECK(c.c2 == 8);
    CHECK((c.c1 * 8 + c.c0) / c.c2 == 88);
    CHECK(lhs_2_1(2) == 88);
    const auto d = recurrence_coeffs(RecurrenceTag::Rec2_5, 0);
    CHECK((d.c1 * 12 + d.c0) / d.c2 == 164);
    CHECK(p4(2) == 164);
    for (auto tag : {RecurrenceTag::Rec2_1, RecurrenceTag::Rec2_5, RecurrenceTag::Rec3_1}) {
        for (auto side : {Side::Lhs, Side::Rhs}) {
            const auto v = verify_recurrence(tag, side, 2);
            REQUIRE(v.size() == 1);
            CHECK(v[0].holds);
            CHECK(v[0].residual == 0);
        }
    }
    CHECK_THROWS_AS(verify_recurrence(RecurrenceTag::Rec2_1, Side::Lhs, 1), DomainError);
}

TEST_CASE("recurrences hold for both realizations to n = 80") {
    for (auto tag : {RecurrenceTag::Rec2_1, RecurrenceTag::Rec2_5, RecurrenceTag::Rec3_1}) {
        for (auto side : {Side::Lhs, Side::Rhs}) {
            const auto v = verify_recurrence(tag, side, 82, 2);
            CHECK(v.size() == 81);
            for (const auto& r : v) CHECK_MESSAGE(r.holds, recurrence_info(tag).id << " n=" << r.n);
        }
    }
}

TEST_CASE("recurrence coefficients never vanish in the leading term") {
    for (auto tag : {RecurrenceTag::Rec2_1, RecurrenceTag::Rec2_5, RecurrenceTag::Rec3_1}) {
        for (long n = 0; n <= 500; ++n) CHECK(recurrence_coeffs(tag, n).c2 != 0);
    }
}

TEST_CASE("induction cross-check") {
    for (auto tag : {RecurrenceTag::Rec2_1, RecurrenceTag::Rec2_5, RecurrenceTag::Rec3_1}) {
        const auto c = induction_cross_check(tag, 40);
        CHECK(c.bases_equal);
        CHECK(c.lhs_recurrence);
        CHECK(c.rhs_recurrence);
        CHECK(c.implied());
        CHECK(c.direct_equal);
        CHECK(c.consistent());
    }
    InductionCheck broken;
    broken.bases_equal = broken.lhs_recurrence = broken.rhs_recurrence = true;
    broken.direct_equal = false;
    CHECK_FALSE(broken.consistent());
}

TEST_CASE("s_n properties") {
    const auto r = verify_s_properties(40, 100);
    CHECK(r.ok);
    REQUIRE(r.rows.size() == 41);
    const std::vector<long> listed = {-1, 40, 696, 23408, 969496, 44602560};
    for (std::size_t n = 0; n < listed.size(); ++n) CHECK(r.rows[n].value == listed[n]);
    for (std::size_t n = 1; n < r.rows.size(); ++n) {
        CHECK(r.rows[n].integral);
        CHECK(r.rows[n].divisible_by_8);
    }
    std::size_t primes = 0;
    for (long p = 3; p <= 100; ++p) primes += oracle::is_prime_slow(p) ? 1 : 0;
    CHECK(r.primes.size() == primes + 1);  // p = 2 included
    for (const auto& row : r.primes) {
        CHECK(row.expected == (row.p + 1) / 6);
        CHECK(row.holds);
    }
    CHECK_THROWS_AS(verify_s_properties(0, 10), DomainError);
    CHECK_THROWS_AS(verify_s_properties(5, 2), DomainError);
}

TEST_CASE("s_4 mod 5 example") {
    const auto r = verify_s_properties(5, 5);
    bool seen = false;
    for (const auto& row : r.primes) {
        if (row.p != 5) continue;
        seen = true;
        CHECK(row.residue == 1);
        CHECK(row.expected == 1);
    }
    CHECK(seen);
}
