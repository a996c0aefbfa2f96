#include "hwpoly/modular.hpp"

#include <gmpxx.h>

#include "hwpoly/error.hpp"

namespace hwpoly {

namespace modq {

std::uint64_t pow(std::uint64_t base, std::uint64_t e, std::uint64_t q) noexcept {
    std::uint64_t result = 1 % q;
    base %= q;
    while (e) {
        if (e & 1u)
            result = mul(result, base, q);
        base = mul(base, base, q);
        e >>= 1;
    }
    return result;
}

std::uint64_t inv(std::uint64_t a, std::uint64_t q) {
    a %= q;
    if (a == 0)
        throw InvalidArgument("inverse of zero modulo " + std::to_string(q));
    return pow(a, q - 2, q);
}

}  // namespace modq

namespace {

mpz_class to_mpz(std::uint64_t v) {
    mpz_class z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

std::uint64_t to_u64(const mpz_class& z) {
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, z.get_mpz_t());
    return v;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    // 50 Miller-Rabin rounds after GMP's trial division; deterministic for the
    // 64-bit range in practice (GMP uses BPSW first).
    return mpz_probab_prime_p(to_mpz(n).get_mpz_t(), 50) != 0;
}

std::uint64_t next_prime(std::uint64_t n) {
    if (n <= 2)
        return 2;
    mpz_class z = to_mpz(n - 1), out;
    mpz_nextprime(out.get_mpz_t(), z.get_mpz_t());
    return to_u64(out);
}

std::uint64_t random_prime(std::uint64_t lo, std::uint64_t hi, std::mt19937_64& rng) {
    if (hi < lo)
        throw InvalidArgument("empty prime range");
    for (int attempt = 0; attempt < 64; ++attempt) {
        std::uniform_int_distribution<std::uint64_t> dist(lo, hi);
        std::uint64_t p = next_prime(dist(rng));
        if (p <= hi)
            return p;
    }
    return next_prime(lo);
}

}  // namespace hwpoly
