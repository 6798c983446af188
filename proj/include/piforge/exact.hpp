#pragma once

// Exact integer and rational arithmetic. ExactInt/ExactRat are GMP values;
// every ExactRat handed out by this library is canonical (reduced, den > 0).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace piforge {

using ExactInt = mpz_class;
using ExactRat = mpq_class;

/// Raised when an argument lies outside an operation's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Builds num/den in lowest terms. Throws DomainError when den == 0.
ExactRat make_rat(const ExactInt& num, const ExactInt& den = 1);

/// Parses "a", "-a" or "a/b".
ExactRat parse_rat(const std::string& text);
ExactInt parse_int(const std::string& text);

std::string to_string(const ExactInt& v);
std::string to_string(const ExactRat& v);

inline bool is_integer(const ExactRat& v) { return v.get_den() == 1; }

ExactInt ipow(const ExactInt& base, unsigned long exp);
ExactRat rpow(const ExactRat& base, long exp);

/// binom(n, k) for integer n >= 0; zero when k > n.
ExactInt binomial(long n, long k);

/// Generalized binomial via the falling factorial n(n-1)...(n-k+1)/k!.
/// Integer n (of either sign) yields an integer-valued result.
ExactRat binomial(const ExactRat& n, long k);

/// Reduces a rational modulo `modulus` (>= 2). Returns nullopt when the
/// denominator is not invertible; the result lies in [0, modulus).
std::optional<ExactInt> reduce_mod(const ExactRat& value, const ExactInt& modulus);

/// Same as above for moduli that fit in 63 bits.
std::optional<std::uint64_t> reduce_mod_u64(const ExactRat& value, std::uint64_t modulus);

/// Decimal digit count of |v| (1 for zero).
std::size_t decimal_digits(const ExactInt& v);

/// |v| as a rough log2, used for ratio diagnostics. -inf for zero.
double log2_abs(const ExactRat& v);

}  // namespace piforge
