#pragma once

#include <cstdint>
#include <random>

namespace hwpoly {

/// Barrett reduction for moduli below 2^32. Operands of mul() must be
/// reduced, so products stay below 2^64.
class Barrett {
public:
    Barrett() = default;
    explicit Barrett(std::uint64_t p)
        : p_(p), m_(static_cast<std::uint64_t>((static_cast<unsigned __int128>(1) << 64) / p)) {}

    std::uint64_t modulus() const noexcept { return p_; }

    std::uint64_t reduce(std::uint64_t x) const noexcept {
        auto q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * m_) >> 64);
        std::uint64_t r = x - q * p_;
        return r >= p_ ? r - p_ : r;
    }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept { return reduce(a * b); }
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        std::uint64_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
        return a >= b ? a - b : a + p_ - b;
    }
    /// Repeated squaring.
    std::uint64_t pow(std::uint64_t base, std::uint32_t k) const noexcept {
        std::uint64_t result = 1;
        while (k) {
            if (k & 1u)
                result = mul(result, base);
            base = mul(base, base);
            k >>= 1;
        }
        return result;
    }

private:
    std::uint64_t p_ = 1;
    std::uint64_t m_ = 0;
};

/// Arithmetic in Z/q for q below 2^63.
namespace modq {

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b, std::uint64_t q) noexcept {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % q);
}
inline std::uint64_t add(std::uint64_t a, std::uint64_t b, std::uint64_t q) noexcept {
    std::uint64_t s = a + b;
    return s >= q ? s - q : s;
}
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b, std::uint64_t q) noexcept {
    return a >= b ? a - b : a + q - b;
}
inline std::uint64_t neg(std::uint64_t a, std::uint64_t q) noexcept { return a == 0 ? 0 : q - a; }
std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t q) noexcept;
/// Inverse of a nonzero residue; q must be prime.
std::uint64_t inv(std::uint64_t a, std::uint64_t q);
/// Reduce a signed 64-bit integer.
inline std::uint64_t from_signed(std::int64_t v, std::uint64_t q) noexcept {
    std::int64_t r = v % static_cast<std::int64_t>(q);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(q) : r);
}

}  // namespace modq

bool is_prime(std::uint64_t n);
/// Smallest prime >= n.
std::uint64_t next_prime(std::uint64_t n);
/// Next prime after a uniform start in [lo, hi], redrawn until it lands in range.
std::uint64_t random_prime(std::uint64_t lo, std::uint64_t hi, std::mt19937_64& rng);

/// Default large primes for exact linear algebra, close to 2^62.
inline constexpr std::uint64_t kPrimeA = 4611686018427387847ULL;  // 2^62 - 57
inline constexpr std::uint64_t kPrimeB = 4611686018427387817ULL;  // 2^62 - 87

/// SplitMix64 finalizer, used to derive independent seeds.
inline std::uint64_t mix_seed(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) noexcept {
    return mix_seed(mix_seed(a) ^ (b + 0x632be59bd9b4e019ULL));
}

}  // namespace hwpoly
