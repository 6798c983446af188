#pragma once

// Thin RAII wrapper over mpfr_t. Only the target constants and residual
// comparisons go through here; all series terms stay exact.

#include "piforge/exact.hpp"

#include <mpfr.h>

#include <string>

namespace piforge {

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t bits);
    BigFloat(const ExactRat& v, mpfr_prec_t bits);
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    static BigFloat pi(mpfr_prec_t bits);
    static BigFloat sqrt(const ExactRat& v, mpfr_prec_t bits);
    /// 10^exp
    static BigFloat pow10(long exp, mpfr_prec_t bits);

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }

    BigFloat operator+(const BigFloat& o) const;
    BigFloat operator-(const BigFloat& o) const;
    BigFloat operator*(const BigFloat& o) const;
    BigFloat operator/(const BigFloat& o) const;
    BigFloat abs() const;

    bool operator<(const BigFloat& o) const { return mpfr_less_p(v_, o.v_) != 0; }
    bool operator>(const BigFloat& o) const { return mpfr_greater_p(v_, o.v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    /// `digits` significant decimal digits, truncated toward zero, positional notation.
    std::string to_fixed(long digits) const;
    /// Scientific notation with `digits` significant digits, e.g. "3.14159e+00".
    std::string to_sci(int digits = 6) const;

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

private:
    mpfr_t v_;
};

/// Working precision in bits for `digits` decimal digits plus guard digits.
mpfr_prec_t bits_for_digits(long digits);

}  // namespace piforge
