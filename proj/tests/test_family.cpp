#include <random>
#include <sstream>

#include "doctest.h"
#include "hwpoly/dimension.hpp"
#include "hwpoly/error.hpp"
#include "hwpoly/family.hpp"
#include "hwpoly/linalg.hpp"
#include "hwpoly/modular.hpp"

using namespace hwpoly;

namespace {

IntMatrix zeros(int m) { return IntMatrix(m, std::vector<mpz_class>(m, 0)); }

IntMatrix random_symmetric(int m, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(-9, 9);
    auto a = zeros(m);
    for (int r = 0; r < m; ++r)
        for (int s = r; s < m; ++s)
            a[r][s] = a[s][r] = dist(rng);
    return a;
}

// Numeric determinant by fraction-free elimination.
mpz_class numeric_det(IntMatrix a) {
    const int m = static_cast<int>(a.size());
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < m; ++k) {
        int sel = k;
        while (sel < m && a[sel][k] == 0)
            ++sel;
        if (sel == m)
            return 0;
        if (sel != k) {
            std::swap(a[sel], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < m; ++i)
            for (int j = k + 1; j < m; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        prev = a[k][k];
    }
    return sign * a[m - 1][m - 1];
}

mpq_class eval_form(const FormSample& f, const std::vector<mpz_class>& x) {
    mpq_class total = 0;
    for (const auto& [alpha, g] : f.coefficients()) {
        mpq_class v = g;
        for (std::size_t i = 0; i < alpha.size(); ++i)
            for (int k = 0; k < alpha[i]; ++k)
                v *= x[i];
        total += v;
    }
    return total;
}

// Derivative of a polynomial map in one parameter, from values at
// p + h·e_j for h = 0..D and the forward-difference formula
// f'(0) = Σ_{k=1..D} (-1)^(k+1) Δ^k f(0) / k.
std::vector<mpq_class> interpolated_derivative(const Family& fam, std::vector<mpz_class> p, int j, int degree) {
    auto exps = exponents_of_degree(fam.n(), fam.c());
    std::vector<std::vector<mpq_class>> vals;
    for (int h = 0; h <= degree; ++h) {
        auto q = p;
        q[j] += h;
        auto f = fam.evaluate(q);
        std::vector<mpq_class> v;
        for (const auto& a : exps)
            v.push_back(f.coefficient(a));
        vals.push_back(v);
    }
    std::vector<mpq_class> out(exps.size(), 0);
    auto diff = vals;
    for (int k = 1; k <= degree; ++k) {
        for (int h = 0; h + k <= degree; ++h)
            for (std::size_t i = 0; i < exps.size(); ++i)
                diff[h][i] = diff[h + 1][i] - diff[h][i];
        for (std::size_t i = 0; i < exps.size(); ++i)
            out[i] += (k % 2 == 1 ? 1 : -1) * diff[0][i] / k;
    }
    return out;
}

}  // namespace

TEST_CASE("pencil determinants") {
    {
        std::vector<IntMatrix> A(4, zeros(3));
        for (int i = 0; i < 3; ++i)
            A[0][i][i] = 1;
        auto f = pencil_determinant(A);
        CHECK(f.coefficients().size() == 1);
        CHECK(f.coefficient({3, 0, 0, 0}) == 1);
    }
    {
        std::vector<IntMatrix> A(2, zeros(2));
        A[0][0][0] = 1;
        A[1][1][1] = 1;
        auto f = pencil_determinant(A);
        CHECK(f.coefficients().size() == 1);
        CHECK(f.coefficient({1, 1}) == 1);
    }
    std::mt19937_64 rng(5);
    for (int m = 1; m <= 4; ++m)
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<IntMatrix> A;
            for (int i = 0; i < 3; ++i)
                A.push_back(random_symmetric(m, rng));
            auto cof = pencil_determinant(A, DetMethod::cofactor);
            CHECK(cof == pencil_determinant(A, DetMethod::leibniz));
            std::uniform_int_distribution<int> dist(-5, 5);
            std::vector<mpz_class> x{dist(rng), dist(rng), dist(rng)};
            auto M = zeros(m);
            for (int r = 0; r < m; ++r)
                for (int s = 0; s < m; ++s)
                    for (int i = 0; i < 3; ++i)
                        M[r][s] += x[i] * A[i][r][s];
            CHECK(eval_form(cof, x) == numeric_det(M));
        }
    CHECK_THROWS_AS(pencil_determinant(std::vector<IntMatrix>(1, zeros(5)), DetMethod::leibniz), InvalidArgument);
}

TEST_CASE("veronese samples") {
    auto fam = Family::veronese(2, 2);
    auto f = fam.evaluate({1, 1});
    CHECK(f.coefficient({2, 0}) == 1);
    CHECK(f.coefficient({1, 1}) == 2);
    CHECK(f.coefficient({0, 2}) == 1);
    CHECK(fam.parameter_count() == 2);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        auto s = fam.sample(rng, 5);
        CHECK(!s.is_zero());
        CHECK(s.is_integral());
        // squares have zero discriminant
        mpq_class disc = s.coefficient({1, 1}) * s.coefficient({1, 1}) - 4 * s.coefficient({2, 0}) * s.coefficient({0, 2});
        CHECK(disc == 0);
    }
}

TEST_CASE("symmetroid samples match the pencil determinant") {
    auto fam = Family::symmetroid(3, 4);
    CHECK(fam.parameter_count() == 24);
    CHECK(fam.c() == 3);
    std::mt19937_64 rng(8);
    auto p = fam.draw_parameters(rng, 100);
    std::vector<IntMatrix> A;
    int k = 0;
    for (int i = 0; i < 4; ++i) {
        auto a = zeros(3);
        for (int r = 0; r < 3; ++r)
            for (int s = r; s < 3; ++s)
                a[r][s] = a[s][r] = p[k++];
        A.push_back(a);
    }
    CHECK(fam.evaluate(p) == pencil_determinant(A, DetMethod::leibniz));
}

TEST_CASE("Jacobian matches interpolated derivatives") {
    std::mt19937_64 rng(9);
    for (const auto& fam : {Family::symmetroid(3, 4), Family::veronese(3, 3), Family::symmetroid(2, 3)}) {
        auto p = fam.draw_parameters(rng, 10);
        auto J = fam.jacobian(p);
        REQUIRE(static_cast<int>(J.size()) == fam.parameter_count());
        for (int j = 0; j < fam.parameter_count(); j += 3) {
            auto want = interpolated_derivative(fam, p, j, fam.c());
            for (std::size_t i = 0; i < want.size(); ++i)
                CHECK(mpq_class(J[j][i]) == want[i]);
        }
    }
}

TEST_CASE("generic family files") {
    // the veronese conic written out by hand
    std::istringstream in("#family generic n=2 c=2 params=2\n"
                          "2,0 : p1^2\n"
                          "1,1 : 2*p1*p2\n"
                          "0,2 : p2^2\n");
    auto fam = read_generic_family(in);
    CHECK(fam.kind() == Family::Kind::generic);
    auto ver = Family::veronese(2, 2);
    std::mt19937_64 rng(2);
    for (int i = 0; i < 5; ++i) {
        auto p = fam.draw_parameters(rng, 50);
        CHECK(fam.evaluate(p) == ver.evaluate(p));
        CHECK(fam.jacobian(p) == ver.jacobian(p));
    }
    CHECK(jacobian_rank(fam, rng) == 2);

    std::istringstream signs("#family generic n=1 c=1 params=3\n1 : 3*p1 - p2 + -2*p3\n");
    auto g = read_generic_family(signs);
    CHECK(g.evaluate({1, 1, 1}).coefficient({1}) == 0);
    CHECK(g.evaluate({2, 1, 1}).coefficient({1}) == 3);

    std::istringstream inhom("#family generic n=1 c=1 params=2\n1 : p1 + p2^2\n");
    CHECK_THROWS_AS(read_generic_family(inhom), ParseError);
    std::istringstream bad("#family generic n=2 c=2 params=1\n2,0 : p1\n1 : p1\n");
    try {
        read_generic_family(bad, "fam.txt");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("linear algebra helpers") {
    const std::uint64_t q = 101;
    ModMatrix m{{1, 2, 3}, {2, 4, 6}, {1, 0, 1}};
    CHECK(rank_mod(m, q) == 2);
    auto ker = nullspace_mod(m, q, 3);
    REQUIRE(ker.size() == 1);
    for (const auto& row : m) {
        std::uint64_t s = 0;
        for (int j = 0; j < 3; ++j)
            s = modq::add(s, modq::mul(row[j], ker[0][j], q), q);
        CHECK(s == 0);
    }
    CHECK(nullspace_mod({}, q, 2).size() == 2);
    CHECK(rank_exact({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}) == 2);
    CHECK(rank_exact({{2, 0}, {0, 3}}) == 2);

    mpz_class mod = mpz_class(kPrimeA) * kPrimeB;
    for (auto [a, b] : {std::pair{3, 7}, {-22, 9}, {0, 1}, {123456, 654321}}) {
        mpz_class inv;
        mpz_class bb = b;
        mpz_invert(inv.get_mpz_t(), bb.get_mpz_t(), mod.get_mpz_t());
        mpz_class r = (a * inv) % mod;
        auto got = rational_reconstruct(r, mod);
        REQUIRE(got.has_value());
        mpq_class want(a, b);
        want.canonicalize();
        CHECK(*got == want);
    }
    CHECK(primitive_integer_vector({mpq_class(-1, 2), mpq_class(1, 3), 0}) ==
          std::vector<mpz_class>{3, -2, 0});
}

TEST_CASE("dimensions") {
    std::mt19937_64 rng(42);
    auto q3 = dimensions(Family::symmetroid(3, 4), rng);
    CHECK(q3.dim_v_sliced == 21);
    CHECK(q3.dim_w == 20);
    CHECK(q3.dim_x == 16);
    CHECK(q3.fiber_sliced == 5);
    CHECK(q3.dim_v == 24);
    CHECK(q3.codim() == 4);

    auto q4 = dimensions(Family::symmetroid(4, 4), rng);
    CHECK(q4.dim_v_sliced == 34);
    CHECK(q4.dim_w == 35);
    CHECK(q4.dim_x == 25);
    CHECK(q4.fiber_sliced == 9);
    CHECK(q4.dim_v == 40);
    CHECK(q4.codim() == 10);

    auto ver = dimensions(Family::veronese(2, 2), rng);
    CHECK(ver.dim_v == 2);
    CHECK(ver.dim_w == 3);
    CHECK(ver.dim_x == 2);
    CHECK(ver.fiber == 0);
    CHECK(!ver.dim_v_sliced);

    // exact rank agrees with the modular one
    auto fam = Family::symmetroid(3, 4);
    CHECK(rank_exact(fam.jacobian(fam.draw_parameters(rng, 100))) == 16);
}
