#pragma once

#include <cstdint>
#include <stdexcept>

namespace coringlab::gf {

using u32 = std::uint32_t;
using u64 = std::uint64_t;

// Moduli are capped so that a row dot product of length <= 2^20 fits in u64.
inline constexpr u32 kMaxPrime = 1u << 15;

inline bool is_prime(u32 p) {
    if (p < 2) return false;
    for (u32 d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline void require_prime(u32 p) {
    if (!is_prime(p) || p > kMaxPrime)
        throw std::invalid_argument("modulus must be a prime < 2^15");
}

inline u32 add_mod(u32 a, u32 b, u32 p) {
    u32 s = a + b;
    return s >= p ? s - p : s;
}

inline u32 sub_mod(u32 a, u32 b, u32 p) { return a >= b ? a - b : a + p - b; }

inline u32 neg_mod(u32 a, u32 p) { return a == 0 ? 0 : p - a; }

inline u32 mul_mod(u32 a, u32 b, u32 p) { return static_cast<u32>((u64(a) * b) % p); }

inline u32 pow_mod(u32 a, u64 e, u32 p) {
    u64 r = 1, base = a % p;
    while (e) {
        if (e & 1) r = (r * base) % p;
        base = (base * base) % p;
        e >>= 1;
    }
    return static_cast<u32>(r);
}

inline u32 inv_mod(u32 a, u32 p) {
    if (a % p == 0) throw std::domain_error("inverse of zero");
    return pow_mod(a % p, p - 2, p);  // Fermat, p prime
}

}  // namespace coringlab::gf
