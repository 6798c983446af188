#include "piforge/bigfloat.hpp"

#include <cmath>
#include <cstdlib>
#include <utility>

namespace piforge {

BigFloat::BigFloat(mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
}

BigFloat::BigFloat(const ExactRat& v, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_q(v_, v.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(v_, other.precision());
    mpfr_swap(v_, other.v_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::pi(mpfr_prec_t bits) {
    BigFloat r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt(const ExactRat& v, mpfr_prec_t bits) {
    if (v < 0) throw DomainError("sqrt of a negative rational");
    BigFloat r(v, bits + 16);
    mpfr_sqrt(r.v_, r.v_, MPFR_RNDN);
    mpfr_prec_round(r.v_, bits, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow10(long exp, mpfr_prec_t bits) {
    BigFloat r(bits);
    mpfr_set_ui(r.v_, 10, MPFR_RNDN);
    mpfr_pow_si(r.v_, r.v_, exp, MPFR_RNDN);
    return r;
}

namespace {
mpfr_prec_t max_prec(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }
}  // namespace

BigFloat BigFloat::operator+(const BigFloat& o) const {
    BigFloat r(max_prec(*this, o));
    mpfr_add(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator-(const BigFloat& o) const {
    BigFloat r(max_prec(*this, o));
    mpfr_sub(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator*(const BigFloat& o) const {
    BigFloat r(max_prec(*this, o));
    mpfr_mul(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::operator/(const BigFloat& o) const {
    BigFloat r(max_prec(*this, o));
    mpfr_div(r.v_, v_, o.v_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs() const {
    BigFloat r(precision());
    mpfr_abs(r.v_, v_, MPFR_RNDN);
    return r;
}

std::string BigFloat::to_fixed(long digits) const {
    if (digits < 1) digits = 1;
    if (mpfr_zero_p(v_)) return "0";
    mpfr_exp_t exp = 0;
    char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<std::size_t>(digits), v_, MPFR_RNDZ);
    std::string s(raw);
    mpfr_free_str(raw);
    std::string sign;
    if (!s.empty() && s[0] == '-') {
        sign = "-";
        s.erase(0, 1);
    }
    std::string out;
    const long len = static_cast<long>(s.size());
    if (exp <= 0) {
        out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + s;
    } else if (exp >= len) {
        out = s + std::string(static_cast<std::size_t>(exp - len), '0');
    } else {
        out = s.substr(0, static_cast<std::size_t>(exp)) + "." + s.substr(static_cast<std::size_t>(exp));
    }
    return sign + out;
}

std::string BigFloat::to_sci(int digits) const {
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", digits - 1, v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
}

mpfr_prec_t bits_for_digits(long digits) {
    return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits + 20) * 3.3219280948873623)) + 64;
}

}  // namespace piforge
