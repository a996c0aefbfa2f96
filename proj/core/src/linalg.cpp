#include "hwpoly/linalg.hpp"

#include <utility>

#include "hwpoly/error.hpp"
#include "hwpoly/modular.hpp"

namespace hwpoly {

std::vector<std::size_t> row_reduce_mod(ModMatrix& m, std::uint64_t q) {
    std::vector<std::size_t> pivots;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t sel = r;
        while (sel < rows && m[sel][col] == 0)
            ++sel;
        if (sel == rows)
            continue;
        std::swap(m[r], m[sel]);
        const std::uint64_t inv = modq::inv(m[r][col], q);
        for (auto& x : m[r])
            x = modq::mul(x, inv, q);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][col] == 0)
                continue;
            const std::uint64_t f = m[i][col];
            for (std::size_t j = col; j < cols; ++j)
                if (m[r][j])
                    m[i][j] = modq::sub(m[i][j], modq::mul(f, m[r][j], q), q);
        }
        pivots.push_back(col);
        ++r;
    }
    return pivots;
}

std::size_t rank_mod(ModMatrix m, std::uint64_t q) { return row_reduce_mod(m, q).size(); }

std::vector<std::vector<std::uint64_t>> nullspace_mod(ModMatrix m, std::uint64_t q, std::size_t columns) {
    for (const auto& row : m)
        if (row.size() != columns)
            throw InvalidArgument("ragged matrix");
    auto pivots = row_reduce_mod(m, q);
    std::vector<bool> is_pivot(columns, false);
    for (auto p : pivots)
        is_pivot[p] = true;
    std::vector<std::vector<std::uint64_t>> basis;
    for (std::size_t free = 0; free < columns; ++free) {
        if (is_pivot[free])
            continue;
        std::vector<std::uint64_t> v(columns, 0);
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = modq::neg(m[i][free], q);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::size_t rank_exact(std::vector<std::vector<mpz_class>> m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    mpz_class prev = 1;
    std::size_t r = 0;
    for (std::size_t col = 0; col < cols && r < rows; ++col) {
        std::size_t sel = r;
        while (sel < rows && m[sel][col] == 0)
            ++sel;
        if (sel == rows)
            continue;
        std::swap(m[r], m[sel]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                m[i][j] = m[i][j] * m[r][col] - m[r][j] * m[i][col];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][col] = 0;
        }
        prev = m[r][col];
        ++r;
    }
    return r;
}

std::optional<mpq_class> rational_reconstruct(const mpz_class& residue, const mpz_class& modulus) {
    mpz_class bound;
    mpz_class half = modulus / 2;
    mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
    mpz_class r0 = modulus, r1 = residue % modulus;
    if (r1 < 0)
        r1 += modulus;
    mpz_class t0 = 0, t1 = 1;
    while (r1 > bound) {
        mpz_class quo = r0 / r1;
        mpz_class r2 = r0 - quo * r1;
        mpz_class t2 = t0 - quo * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (t1 == 0 || abs(t1) > bound)
        return std::nullopt;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), r1.get_mpz_t(), t1.get_mpz_t());
    if (g != 1)
        return std::nullopt;
    mpq_class out(r1, t1);
    out.canonicalize();
    return out;
}

std::vector<mpz_class> primitive_integer_vector(const std::vector<mpq_class>& v) {
    mpz_class den = 1;
    for (const auto& x : v)
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
    std::vector<mpz_class> out;
    out.reserve(v.size());
    mpz_class g = 0;
    for (const auto& x : v) {
        mpz_class y = x.get_num() * (den / x.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y.get_mpz_t());
        out.push_back(std::move(y));
    }
    if (g == 0)
        return out;
    int sign = 0;
    for (const auto& x : out)
        if (x != 0) {
            sign = sgn(x);
            break;
        }
    for (auto& x : out) {
        x /= g;
        if (sign < 0)
            x = -x;
    }
    return out;
}

}  // namespace hwpoly
