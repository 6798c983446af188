#include "piforge/modular.hpp"

#include <string>

namespace piforge::modular {

u64 pow(u64 base, u64 exp, u64 m) {
    u64 r = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) r = mul(r, base, m);
        base = mul(base, base, m);
        exp >>= 1U;
    }
    return r;
}

u64 from_signed(std::int64_t v, u64 m) {
    if (v >= 0) return static_cast<u64>(v) % m;
    const u64 r = static_cast<u64>(-(v + 1)) % m;  // -(v+1) avoids INT64_MIN overflow
    return m - 1 - r;
}

u64 inverse(u64 a, u64 m) {
    // Extended Euclid on signed 128-bit to keep the cofactors exact.
    __int128 t = 0;
    __int128 new_t = 1;
    __int128 r = m;
    __int128 new_r = a % m;
    while (new_r != 0) {
        const __int128 q = r / new_r;
        const __int128 tt = t - q * new_t;
        t = new_t;
        new_t = tt;
        const __int128 rr = r - q * new_r;
        r = new_r;
        new_r = rr;
    }
    if (r != 1) return 0;
    if (t < 0) t += m;
    return static_cast<u64>(t);
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mul(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

int jacobi(const ExactInt& a, u64 n) {
    if (n == 0 || (n & 1U) == 0) throw DomainError("jacobi: modulus must be odd and positive");
    ExactInt r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(n));
    u64 x = r.get_ui();
    u64 y = n;
    int sign = 1;
    while (x != 0) {
        while ((x & 1U) == 0) {
            x >>= 1U;
            const u64 m8 = y % 8;
            if (m8 == 3 || m8 == 5) sign = -sign;
        }
        std::swap(x, y);
        if (x % 4 == 3 && y % 4 == 3) sign = -sign;
        x %= y;
    }
    return y == 1 ? sign : 0;
}

int legendre(const ExactInt& a, u64 p) {
    if (p == 2 || !is_prime(p)) {
        throw DomainError("legendre: " + std::to_string(p) + " is not an odd prime");
    }
    return jacobi(a, p);
}

}  // namespace piforge::modular
