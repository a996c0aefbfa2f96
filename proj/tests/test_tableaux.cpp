#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "hwpoly/error.hpp"
#include "hwpoly/partition.hpp"
#include "hwpoly/tableaux.hpp"
#include "oracles/naive.hpp"

using namespace hwpoly;

namespace {

std::vector<std::vector<int>> fillings(const std::vector<IsobaricTableau>& ts) {
    std::vector<std::vector<int>> out;
    for (const auto& t : ts)
        out.push_back(t.filling());
    std::sort(out.begin(), out.end());
    return out;
}

double multinomial_count(int d, int c) {
    double r = 1;
    int n = 0;
    for (int v = 0; v < d; ++v)
        for (int i = 1; i <= c; ++i)
            r = r * (++n) / i;
    return r;
}

}  // namespace

TEST_CASE("enumerate_isobaric_tableaux examples") {
    auto t22 = enumerate_isobaric_tableaux(Partition({2, 2}), 2, 2);
    REQUIRE(t22.size() == 1);
    CHECK(t22[0].row(0) == std::vector<int>{1, 1});
    CHECK(t22[0].row(1) == std::vector<int>{2, 2});

    auto t4 = enumerate_isobaric_tableaux(Partition({4}), 2, 2);
    REQUIRE(t4.size() == 1);
    CHECK(t4[0].filling() == std::vector<int>{1, 1, 2, 2});

    // rows [1,1,2],[2] is semistandard; its symmetrization vanishes instead
    auto t31 = enumerate_isobaric_tableaux(Partition({3, 1}), 2, 2);
    REQUIRE(t31.size() == 1);
    CHECK(oracle::brute_force_tableaux({3, 1}, 2, 2).size() == 1);
    CHECK(t31[0].filling() == std::vector<int>{1, 1, 2, 2});

    CHECK_THROWS_AS(enumerate_isobaric_tableaux(Partition({3, 2}), 2, 2), InvalidArgument);
}

TEST_CASE("the worked-example tableau is found") {
    // rows 111234 / 2234 / 34 with d=4, c=3
    auto all = enumerate_isobaric_tableaux(Partition({6, 4, 2}), 4, 3);
    std::vector<int> want{1, 1, 1, 2, 3, 4, 2, 2, 3, 4, 3, 4};
    CHECK(std::any_of(all.begin(), all.end(), [&](const auto& t) { return t.filling() == want; }));
}

TEST_CASE("Pieri enumeration agrees with brute force for d*c <= 12") {
    int checked = 0;
    for (int d = 1; d <= 12; ++d) {
        for (int c = 1; d * c <= 12; ++c) {
            if (multinomial_count(d, c) > 2.5e6)
                continue;
            for (const auto& shape : partitions_of(d * c, d * c)) {
                auto lib = enumerate_isobaric_tableaux(shape, d, c);
                auto ref = oracle::brute_force_tableaux(shape.parts(), d, c);
                INFO("d=" << d << " c=" << c << " shape=" << shape.to_string());
                CHECK(fillings(lib) == ref);
                ++checked;
            }
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("Pieri chain round trip and counter rank/unrank") {
    for (auto [shape, d, c] : {std::tuple{Partition({6, 4, 2}), 4, 3},
                               std::tuple{Partition({4, 4, 2, 2}), 6, 2},
                               std::tuple{Partition({5, 3, 3, 1}), 4, 3}}) {
        TableauCounter counter(shape, d, c);
        auto all = enumerate_isobaric_tableaux(shape, d, c);
        REQUIRE(counter.count() == all.size());
        for (std::size_t i = 0; i < all.size(); ++i) {
            CHECK(from_pieri_chain(to_pieri_chain(all[i]), d, c) == all[i]);
            CHECK(counter.rank(all[i]) == i);
            CHECK(is_semistandard(shape, all[i].filling()));
        }
        for (std::size_t i = 1; i < all.size(); ++i)
            CHECK(to_pieri_chain(all[i - 1]) > to_pieri_chain(all[i]));  // earlier rows fill first
    }
}

TEST_CASE("counter handles large tableau sets") {
    TableauCounter counter(Partition({15, 6, 6, 6}), 11, 3);
    const auto n = counter.count();
    CHECK(n == 18788055u);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 20; ++i) {
        auto r = std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng);
        auto t = counter.unrank(r);
        CHECK(counter.rank(t) == r);
        CHECK(is_semistandard(t.shape(), t.filling()));
    }
}

TEST_CASE("column_lengths") {
    CHECK(column_lengths(Partition({6, 4, 2})) == std::vector<int>{3, 3, 2, 2, 1, 1});
    CHECK(column_lengths(Partition({8, 8, 8, 8})) == std::vector<int>(8, 4));
    std::vector<int> want(6, 4);
    want.insert(want.end(), 9, 1);
    CHECK(column_lengths(Partition({15, 6, 6, 6})) == want);
}

TEST_CASE("irrep_dimension") {
    CHECK(irrep_dimension(Partition({15, 6, 6, 6}), 4) == 220);
    CHECK(irrep_dimension(Partition({7}), 1) == 1);
    CHECK(irrep_dimension(Partition({2, 2}), 2) == 1);
    CHECK(irrep_dimension(Partition({2}), 3) == 6);
    CHECK(irrep_dimension(Partition({2, 1}), 3) == 8);
    CHECK_THROWS_AS(irrep_dimension(Partition({1, 1, 1}), 2), InvalidArgument);
}

TEST_CASE("count_assignments") {
    CHECK(count_assignments(Partition({8, 8, 8, 8})) == mpz_class("110075314176"));
    CHECK(count_assignments(Partition({12})) == 1);
    CHECK(count_assignments(Partition({15, 6, 6, 6})) == 191102976);

    // direct iteration over all assignments for small products
    for (const auto& shape : partitions_of(9, 9)) {
        std::vector<std::vector<int>> cols;
        for (int m : column_lengths(shape)) {
            cols.emplace_back(m);
            for (int r = 0; r < m; ++r)
                cols.back()[r] = r;
        }
        long n = 0;
        while (true) {
            ++n;
            std::size_t i = 0;
            for (; i < cols.size(); ++i)
                if (std::next_permutation(cols[i].begin(), cols[i].end()))
                    break;
            if (i == cols.size())
                break;
        }
        CHECK(count_assignments(shape) == n);
    }
}

TEST_CASE("partitions_of") {
    auto ps = partitions_of(4, 4);
    REQUIRE(ps.size() == 5);
    CHECK(ps.front() == Partition({4}));
    CHECK(ps.back() == Partition({1, 1, 1, 1}));
    CHECK(partitions_of(6, 2).size() == 4);
    CHECK(Partition::parse("15-6-6-6") == Partition({15, 6, 6, 6}));
    CHECK_THROWS_AS(Partition({1, 2}), InvalidArgument);
    CHECK_THROWS_AS(Partition::parse("3,,1"), InvalidArgument);
}
