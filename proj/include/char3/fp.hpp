#ifndef CHAR3_FP_HPP
#define CHAR3_FP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace char3 {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Coordinate vector over GF(p); entries are kept reduced in [0, p).
using Vec = std::vector<u8>;

inline bool is_prime(u32 n) {
    if (n < 2) return false;
    for (u32 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Arithmetic context for the prime field GF(p), p an odd prime.
/// p = 2 is rejected: everything downstream divides by 2.
struct PrimeField {
    u32 p;

    explicit PrimeField(u32 modulus) : p(modulus) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeField: p = " + std::to_string(p) + " is not prime");
        if (p == 2) throw std::invalid_argument("PrimeField: characteristic 2 is not supported");
        if (p > 127) throw std::invalid_argument("PrimeField: p too large for the byte representation");
    }

    u32 add(u32 a, u32 b) const { u32 s = a + b; return s >= p ? s - p : s; }
    u32 sub(u32 a, u32 b) const { return a >= b ? a - b : a + p - b; }
    u32 neg(u32 a) const { return a == 0 ? 0 : p - a; }
    u32 mul(u32 a, u32 b) const { return (a * b) % p; }

    u32 reduce(i64 v) const {
        i64 r = v % static_cast<i64>(p);
        if (r < 0) r += p;
        return static_cast<u32>(r);
    }

    u32 pow(u32 a, u64 e) const {
        u64 base = a % p, acc = 1;
        while (e) {
            if (e & 1) acc = acc * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return static_cast<u32>(acc);
    }

    u32 inv(u32 a) const {
        if (a % p == 0) throw std::domain_error("PrimeField: inverse of zero");
        return pow(a % p, p - 2);
    }

    /// 1/2 = (p+1)/2, total since p is odd.
    u32 half() const { return (p + 1) / 2; }
    /// 1/4, used by the short-SL2 bracket formulas.
    u32 quarter() const { return mul(half(), half()); }
};

inline Vec zero_vec(size_t n) { return Vec(n, 0); }

inline Vec unit_vec(size_t n, size_t i) {
    Vec v(n, 0);
    v.at(i) = 1;
    return v;
}

inline bool is_zero(const Vec& v) {
    for (u8 x : v)
        if (x) return false;
    return true;
}

inline void vec_add_scaled(const PrimeField& F, Vec& dst, const Vec& src, u32 c) {
    if (c == 0) return;
    for (size_t i = 0; i < dst.size(); ++i) dst[i] = static_cast<u8>(F.add(dst[i], F.mul(src[i], c)));
}

inline Vec vec_scale(const PrimeField& F, const Vec& v, u32 c) {
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = static_cast<u8>(F.mul(v[i], c));
    return r;
}

inline Vec vec_sub(const PrimeField& F, const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<u8>(F.sub(a[i], b[i]));
    return r;
}

inline Vec vec_add(const PrimeField& F, const Vec& a, const Vec& b) {
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = static_cast<u8>(F.add(a[i], b[i]));
    return r;
}

}  // namespace char3

#endif
