#include "hwpoly/dimension.hpp"

#include "hwpoly/error.hpp"

namespace hwpoly {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;
    }
    return r;
}

DimensionReport dimensions(const Family& family, std::mt19937_64& rng, int height) {
    DimensionReport rep;
    rep.dim_v = family.parameter_count();
    rep.dim_w = binomial(static_cast<std::uint64_t>(family.n() + family.c() - 1), family.c());
    rep.dim_x = static_cast<int>(jacobian_rank(family, rng, height));
    rep.fiber = rep.dim_v - rep.dim_x;
    if (family.kind() == Family::Kind::symmetroid) {
        const int m = family.m();
        rep.dim_v_sliced = m + (family.n() - 1) * m * (m + 1) / 2;
        rep.fiber_sliced = *rep.dim_v_sliced - rep.dim_x;
    }
    return rep;
}

}  // namespace hwpoly
