#pragma once

// Machine-word modular arithmetic for the congruence inner loops. Moduli are
// below 2^63 so that a + b never overflows; products go through 128 bits.

#include "piforge/exact.hpp"

#include <cstdint>
#include <vector>

namespace piforge::modular {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 add(u64 a, u64 b, u64 m) {
    const u64 s = a + b;
    return s >= m ? s - m : s;
}
inline u64 sub(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + m - b; }
inline u64 mul(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow(u64 base, u64 exp, u64 m);

/// Signed integer into [0, m).
u64 from_signed(std::int64_t v, u64 m);

/// Inverse of a modulo m, or 0 when gcd(a, m) != 1 (m >= 2).
u64 inverse(u64 a, u64 m);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

/// All primes <= limit, ascending (Eratosthenes).
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Jacobi symbol (a/n) for odd n >= 1, via quadratic reciprocity.
int jacobi(const ExactInt& a, u64 n);

/// Legendre symbol (a/p). Throws DomainError when p is even or composite.
int legendre(const ExactInt& a, u64 p);

}  // namespace piforge::modular
