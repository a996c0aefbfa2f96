#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "hwpoly/error.hpp"
#include "hwpoly/expander.hpp"
#include "hwpoly/gray_code.hpp"
#include "hwpoly/incremental_hash.hpp"
#include "oracles/naive.hpp"

using namespace hwpoly;

namespace {

std::map<oracle::Blocks, std::int64_t> as_map(const HighestWeightPolynomial& hwp) {
    std::map<oracle::Blocks, std::int64_t> out;
    for (const auto& t : hwp.terms) {
        oracle::Blocks blocks;
        for (int b = 0; b < t.monomial.d(); ++b) {
            auto blk = t.monomial.block(b);
            blocks.emplace_back(blk.begin(), blk.end());
        }
        out[blocks] = t.coeff;
    }
    return out;
}

IsobaricTableau worked_example() {
    return IsobaricTableau(Partition({6, 4, 2}), 4, 3, {1, 1, 1, 2, 3, 4, 2, 2, 3, 4, 3, 4});
}

int inversion_sign(const AssignmentWalker& w) {
    int s = 1;
    for (int col = 0; col < w.columns(); ++col)
        for (int i = 0; i < w.column_length(col); ++i)
            for (int j = i + 1; j < w.column_length(col); ++j)
                if (w.value(i, col) > w.value(j, col))
                    s = -s;
    return s;
}

std::vector<int> snapshot(const AssignmentWalker& w) {
    std::vector<int> v;
    for (int col = 0; col < w.columns(); ++col)
        for (int r = 0; r < w.column_length(col); ++r)
            v.push_back(w.value(r, col));
    return v;
}

}  // namespace

TEST_CASE("word_class_of and sign_of on the worked example") {
    ColumnAssignment a{{{1, 2, 3}, {2, 1, 3}, {2, 1}, {1, 2}, {1}, {1}}};
    auto t = worked_example();
    CHECK(word_class_of(a, t) ==
          MonomialClass::from_blocks({{1, 2, 2}, {1, 1, 2}, {1, 1, 3}, {1, 2, 3}}));
    CHECK(sign_of(a) == 1);

    IsobaricTableau t22(Partition({2, 2}), 2, 2, {1, 1, 2, 2});
    auto id = identity_assignment(Partition({2, 2}));
    CHECK(word_class_of(id, t22) == MonomialClass::from_blocks({{1, 1}, {2, 2}}));
    CHECK(sign_of(id) == 1);
    ColumnAssignment swapped{{{1, 2}, {2, 1}}};
    CHECK(word_class_of(swapped, t22) == MonomialClass::from_blocks({{1, 2}, {1, 2}}));
    CHECK(sign_of(swapped) == -1);
    CHECK_THROWS_AS(sign_of(ColumnAssignment{{{1, 1}}}), InvalidArgument);
}

TEST_CASE("monomial canonical form") {
    auto m = MonomialClass::from_blocks({{2, 1, 2}, {1, 1, 3}});
    CHECK(m.to_string() == "1,1,3;1,2,2");
    CHECK(MonomialClass(m.c(), m.entries()) == m);
    CHECK(MonomialClass::parse("1,2,2;1,1,3") == m);
    CHECK(m.content(3) == std::vector<int>{3, 2, 1});
}

TEST_CASE("enumerate_weight_monomials") {
    auto dom22 = enumerate_weight_monomials(Partition({2, 2}), 2, 2);
    REQUIRE(dom22.size() == 2);
    CHECK(dom22[0].to_string() == "1,1;2,2");
    CHECK(dom22[1].to_string() == "1,2;1,2");

    auto dom4 = enumerate_weight_monomials(Partition({4}), 2, 2);
    REQUIRE(dom4.size() == 1);
    CHECK(dom4[0].to_string() == "1,1;1,1");

    auto dom1111 = enumerate_weight_monomials(Partition({1, 1, 1, 1}), 2, 2);
    REQUIRE(dom1111.size() == 3);
    CHECK(dom1111[0].to_string() == "1,2;3,4");
    CHECK(dom1111[1].to_string() == "1,3;2,4");
    CHECK(dom1111[2].to_string() == "1,4;2,3");

    for (auto [w, d, c] : {std::tuple{Partition({6, 4, 2}), 4, 3}, std::tuple{Partition({3, 3, 2}), 4, 2}}) {
        auto dom = enumerate_weight_monomials(w, d, c);
        CHECK(std::is_sorted(dom.begin(), dom.end()));
        CHECK(std::adjacent_find(dom.begin(), dom.end()) == dom.end());
        CHECK(dom.size() == count_weight_monomials(w.parts(), d, c));
        for (const auto& m : dom)
            CHECK(m.content(w.length()) == w.parts());
    }
    CHECK(count_weight_monomials({15, 6, 6, 6}, 11, 3) == 25459);
}

TEST_CASE("plain changes") {
    for (int m = 1; m <= 6; ++m) {
        auto perms = plain_change_perms(m);
        std::set<std::vector<int>> distinct(perms.begin(), perms.end());
        long fact = 1;
        for (int i = 2; i <= m; ++i)
            fact *= i;
        CHECK(static_cast<long>(perms.size()) == fact);
        CHECK(static_cast<long>(distinct.size()) == fact);
    }
    CHECK(plain_change_swaps(3) == std::vector<std::uint8_t>{1, 0, 1, 0, 1});
}

TEST_CASE("Gray walker: every assignment once, sign equals inversion parity") {
    for (const auto& shape : {Partition({3, 2, 2}), Partition({2, 2, 1, 1}), Partition({4, 4, 3}),
                              Partition({5}), Partition({1, 1, 1, 1})}) {
        AssignmentWalker w(shape);
        std::set<std::vector<int>> seen{snapshot(w)};
        CHECK(w.sign() == inversion_sign(w));
        AssignmentWalker::Move mv{};
        std::uint64_t visits = 1;
        while (w.next(mv)) {
            ++visits;
            CHECK(w.sign() == inversion_sign(w));
            seen.insert(snapshot(w));
        }
        CHECK(visits == count_assignments(shape).get_ui());
        CHECK(seen.size() == visits);
        CHECK(w.total() * 1 == visits);
    }
}

TEST_CASE("Gray walker: first-column ranges partition the assignment space") {
    Partition shape({3, 3, 2});
    std::set<std::vector<int>> all;
    std::uint64_t visits = 0;
    for (long j = 0; j < 6; ++j) {
        AssignmentWalker w(shape, j);
        CHECK(w.sign() == inversion_sign(w));
        all.insert(snapshot(w));
        ++visits;
        AssignmentWalker::Move mv{};
        while (w.next(mv)) {
            CHECK(mv.col != 0);
            CHECK(w.sign() == inversion_sign(w));
            all.insert(snapshot(w));
            ++visits;
        }
    }
    CHECK(visits == 72);
    CHECK(all.size() == 72);
}

TEST_CASE("incremental hash equals recomputation after every step") {
    std::mt19937_64 rng(11);
    auto t = worked_example();
    auto scheme = draw_hash_scheme(1000003, t.shape().length(), rng, 0);
    AssignmentWalker w(t.shape());
    IncrementalBlockHash inc(scheme, t, w);
    AssignmentWalker::Move mv{};
    int steps = 0;
    do {
        ColumnAssignment a;
        for (int col = 0; col < w.columns(); ++col) {
            a.columns.emplace_back();
            for (int r = 0; r < w.column_length(col); ++r)
                a.columns.back().push_back(w.value(r, col));
        }
        REQUIRE(inc.value() == scheme.hash(word_class_of(a, t)));
        REQUIRE(inc.value() == inc.recompute());
        if (!w.next(mv))
            break;
        inc.apply(mv, w);
    } while (++steps < 20000);
    CHECK(steps == 143);
}

TEST_CASE("hash scheme verification") {
    auto dom = enumerate_weight_monomials(Partition({2, 2}), 2, 2);
    HashScheme zero{5, 101, {0, 0, 0}, 0};
    CHECK(verify_hash_scheme(zero, std::span(dom).first(1)).ok);
    auto bad = verify_hash_scheme(zero, dom);
    CHECK_FALSE(bad.ok);
    CHECK(bad.collisions.size() == 1);
    CHECK(bad.collisions[0].value == 0);

    // ι = (·, 1, 2), k = 3, p = 101: {{1,1},{2,2}} -> 2^3 + 4^3 = 72, {{1,2},{1,2}} -> 2*27 = 54
    HashScheme good{3, 101, {0, 1, 2}, 0};
    CHECK(good.hash(dom[0]) == 72);
    CHECK(good.hash(dom[1]) == 54);
    CHECK(verify_hash_scheme(good, dom).ok);
    CHECK_THROWS_AS(HashChain(zero, dom), HashOverflow);
}

TEST_CASE("hash chain resolves a domain under a tiny cell budget") {
    auto dom = enumerate_weight_monomials(Partition({5, 4, 3}), 4, 3);
    REQUIRE(dom.size() > 20);
    HashChainOptions opts;
    opts.max_cells = 4 * dom.size();
    opts.draws_per_level = 1;
    auto chain = HashChain::build(dom, 3, 5, opts);
    CHECK(chain.depth() >= 2);
    // every element is resolved at exactly one level, and resolved cells are unique
    std::set<std::pair<std::size_t, std::uint64_t>> cells;
    for (const auto& m : dom) {
        std::size_t L = 0;
        for (; L < chain.depth(); ++L)
            if (!chain.ambiguous(L, chain.level(L).hash(m)))
                break;
        REQUIRE(L < chain.depth());
        CHECK(cells.insert({L, chain.level(L).hash(m)}).second);
    }
    CHECK(estimate_chain_depth(dom.size(), 1u << 22) == 1);
    CHECK(estimate_chain_depth(240481, 1u << 22) >= 2);
}

TEST_CASE("expand_hwv examples") {
    IsobaricTableau t22(Partition({2, 2}), 2, 2, {1, 1, 2, 2});
    auto hwp = expand_hwv(t22, {.seed = 3, .workers = 1});
    REQUIRE(hwp.terms.size() == 2);
    CHECK(hwp.terms[0].monomial.to_string() == "1,1;2,2");
    CHECK(hwp.terms[0].coeff == 2);
    CHECK(hwp.terms[1].monomial.to_string() == "1,2;1,2");
    CHECK(hwp.terms[1].coeff == -2);

    IsobaricTableau row(Partition({6}), 3, 2, {1, 1, 2, 2, 3, 3});
    auto single = expand_hwv(row);
    REQUIRE(single.terms.size() == 1);
    CHECK(single.terms[0].monomial.to_string() == "1,1;1,1;1,1");
    CHECK(single.terms[0].coeff == 1);

    // a tableau whose symmetrization telescopes to zero
    IsobaricTableau t31(Partition({3, 1}), 2, 2, {1, 1, 2, 2});
    CHECK(oracle::naive_expand({3, 1}, t31.filling(), 2).empty());
    CHECK(expand_hwv(t31).terms.empty());
}

TEST_CASE("expand_hwv matches the naive oracle, independent of scheme and workers") {
    for (auto [shape, d, c] : {std::tuple{Partition({6, 4, 2}), 4, 3},
                               std::tuple{Partition({4, 2}), 2, 3},
                               std::tuple{Partition({3, 3, 2}), 4, 2},
                               std::tuple{Partition({4, 4, 4}), 4, 3}}) {
        auto tabs = enumerate_isobaric_tableaux(shape, d, c);
        for (std::size_t i = 0; i < tabs.size(); i += std::max<std::size_t>(1, tabs.size() / 4)) {
            auto ref = oracle::naive_expand(shape.parts(), tabs[i].filling(), d);
            auto a = expand_hwv(tabs[i], {.seed = 1, .workers = 1});
            auto b = expand_hwv(tabs[i], {.seed = 99, .workers = 3});
            HashChainOptions tiny;
            tiny.max_cells = 32;
            auto chained = expand_hwv(tabs[i], {.seed = 7, .workers = 2, .hash = tiny});
            INFO(shape.to_string() << " tableau " << tabs[i].filling_string());
            CHECK(as_map(a) == ref);
            CHECK(a.terms == b.terms);
            CHECK(a.terms == chained.terms);
            CHECK_FALSE(find_content_violation(a).has_value());
        }
    }
}

TEST_CASE("progress reports reach the total") {
    IsobaricTableau t(Partition({4, 4, 4}), 4, 3, {1, 1, 1, 2, 2, 2, 3, 3, 3, 4, 4, 4});
    std::uint64_t last = 0, total = 0;
    expand_hwv(t, {.seed = 1, .workers = 2, .progress = [&](std::uint64_t done, std::uint64_t tot) {
                       last = done;
                       total = tot;
                   }});
    CHECK(total == 6u * 6 * 6 * 6);
    CHECK(last == total);
}
