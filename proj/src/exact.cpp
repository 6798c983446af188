#include "piforge/exact.hpp"

#include <cmath>
#include <limits>

namespace piforge {

ExactRat make_rat(const ExactInt& num, const ExactInt& den) {
    if (den == 0) throw DomainError("zero denominator");
    ExactRat r(num, den);
    r.canonicalize();
    return r;
}

ExactInt parse_int(const std::string& text) {
    ExactInt v;
    std::string t = text;
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty() || v.set_str(t, 10) != 0) throw DomainError("not an integer: '" + text + "'");
    return v;
}

ExactRat parse_rat(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) return ExactRat(parse_int(text));
    return make_rat(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

std::string to_string(const ExactInt& v) { return v.get_str(10); }

std::string to_string(const ExactRat& v) {
    if (v.get_den() == 1) return v.get_num().get_str(10);
    return v.get_num().get_str(10) + "/" + v.get_den().get_str(10);
}

ExactInt ipow(const ExactInt& base, unsigned long exp) {
    ExactInt r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

ExactRat rpow(const ExactRat& base, long exp) {
    if (exp < 0) {
        if (base == 0) throw DomainError("zero raised to a negative power");
        return rpow(ExactRat(1) / base, -exp);
    }
    const auto e = static_cast<unsigned long>(exp);
    ExactRat r(ipow(base.get_num(), e), ipow(base.get_den(), e));
    r.canonicalize();
    return r;
}

ExactInt binomial(long n, long k) {
    if (k < 0) throw DomainError("binomial: k must be nonnegative");
    if (n < 0) return binomial(ExactRat(n), k).get_num();
    if (k > n) return 0;
    ExactInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

ExactRat binomial(const ExactRat& n, long k) {
    if (k < 0) throw DomainError("binomial: k must be nonnegative");
    if (is_integer(n) && n >= 0 && n.get_num().fits_slong_p()) {
        return ExactRat(binomial(n.get_num().get_si(), k));
    }
    ExactInt num = 1;
    ExactInt den = 1;
    // Work with a common denominator so the product stays integral until the end.
    const ExactInt& q = n.get_den();
    for (long i = 0; i < k; ++i) {
        num *= n.get_num() - ExactInt(i) * q;
        den *= q * (i + 1);
    }
    return make_rat(num, den);
}

std::optional<ExactInt> reduce_mod(const ExactRat& value, const ExactInt& modulus) {
    if (modulus < 2) throw DomainError("modulus must be >= 2");
    ExactInt inv;
    if (mpz_invert(inv.get_mpz_t(), value.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0) {
        return std::nullopt;
    }
    ExactInt r = value.get_num() * inv;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

std::optional<std::uint64_t> reduce_mod_u64(const ExactRat& value, std::uint64_t modulus) {
    static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
    if (modulus >= 2 && value.get_den() == 1) {
        return static_cast<std::uint64_t>(mpz_fdiv_ui(value.get_num().get_mpz_t(), modulus));
    }
    auto r = reduce_mod(value, ExactInt(static_cast<unsigned long>(modulus)));
    if (!r) return std::nullopt;
    return static_cast<std::uint64_t>(r->get_ui());
}

std::size_t decimal_digits(const ExactInt& v) {
    if (v == 0) return 1;
    ExactInt a = abs(v);
    return a.get_str(10).size();
}

double log2_abs(const ExactRat& v) {
    if (v == 0) return -std::numeric_limits<double>::infinity();
    long en = 0;
    long ed = 0;
    const double mn = mpz_get_d_2exp(&en, v.get_num().get_mpz_t());
    const double md = mpz_get_d_2exp(&ed, v.get_den().get_mpz_t());
    return std::log2(std::fabs(mn)) + static_cast<double>(en) - std::log2(md) -
           static_cast<double>(ed);
}

}  // namespace piforge
