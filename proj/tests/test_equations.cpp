#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "hwpoly/database.hpp"
#include "hwpoly/dimension.hpp"
#include "hwpoly/equations.hpp"
#include "hwpoly/error.hpp"
#include "hwpoly/evaluation.hpp"
#include "hwpoly/expander.hpp"
#include "hwpoly/linalg.hpp"
#include "hwpoly/modular.hpp"
#include "hwpoly/tableaux.hpp"

using namespace hwpoly;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("hwpoly-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

FinderOptions quiet(std::uint64_t seed = 1) {
    FinderOptions o;
    o.seed = seed;
    o.workers = 1;
    return o;
}

FormSample random_integer_form(int n, int c, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dist(-1000, 1000);
    FormSample f(n, c);
    for (const auto& alpha : exponents_of_degree(n, c))
        f.set(alpha, dist(rng));
    return f;
}

// Rank of the evaluation matrix of every tableau expansion of the weight.
std::size_t full_rank(const Partition& weight, int d, int c) {
    std::mt19937_64 rng(99);
    std::vector<FormSample> forms;
    const auto tabs = enumerate_isobaric_tableaux(weight, d, c);
    for (std::size_t i = 0; i < 2 * tabs.size() + 4; ++i)
        forms.push_back(random_integer_form(weight.length(), c, rng));
    ModMatrix m;
    for (const auto& t : tabs) {
        HwpEvaluator ev(expand_hwv(t, {.seed = 3, .workers = 1}));
        std::vector<std::uint64_t> row;
        for (const auto& f : forms)
            row.push_back(ev.mod(f, kPrimeA));
        m.push_back(row);
    }
    return rank_mod(m, kPrimeA);
}

// Weight-space dimensions of the degree-d ideal of the rational normal
// curve {ℓ^c} ⊂ S^c(C²), by nullspace of monomials in the coefficients.
std::map<Partition, std::size_t> veronese_ideal_weights(int d, int c) {
    const auto exps = exponents_of_degree(2, c);
    const int m = static_cast<int>(exps.size());
    // monomials of degree d in m coefficient variables, grouped by weight
    std::map<std::vector<int>, std::vector<std::vector<int>>> by_weight;
    std::vector<int> e(m, 0);
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == m - 1) {
            e[i] = left;
            std::vector<int> w(2, 0);
            for (int j = 0; j < m; ++j)
                for (int r = 0; r < 2; ++r)
                    w[r] += e[j] * exps[j][r];
            by_weight[w].push_back(e);
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[i] = a;
            self(self, i + 1, left - a);
        }
    };
    rec(rec, 0, d);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> dist(-50, 50);
    std::map<Partition, std::size_t> out;
    for (const auto& [w, monos] : by_weight) {
        if (w[0] < w[1])
            continue;
        ModMatrix mat;
        for (std::size_t s = 0; s < 3 * monos.size() + 5; ++s) {
            const long l1 = dist(rng), l2 = dist(rng);
            std::vector<std::uint64_t> g;
            for (const auto& alpha : exps) {
                mpz_class v = multinomial(alpha);
                for (int k = 0; k < alpha[0]; ++k)
                    v *= l1;
                for (int k = 0; k < alpha[1]; ++k)
                    v *= l2;
                mpz_class r = v % mpz_class(static_cast<unsigned long>(kPrimeA));
                if (r < 0)
                    r += static_cast<unsigned long>(kPrimeA);
                g.push_back(r.get_ui());
            }
            std::vector<std::uint64_t> row;
            for (const auto& mono : monos) {
                std::uint64_t v = 1;
                for (int j = 0; j < m; ++j)
                    v = modq::mul(v, modq::pow(g[j], mono[j], kPrimeA), kPrimeA);
                row.push_back(v);
            }
            mat.push_back(row);
        }
        const auto ker = monos.size() - rank_mod(mat, kPrimeA);
        std::vector<int> parts;
        for (int x : w)
            if (x > 0)
                parts.push_back(x);
        out[Partition(parts)] = ker;
    }
    return out;
}

}  // namespace

TEST_CASE("plethysm multiplicities") {
    CHECK(plethysm_multiplicity(Partition({4}), 2, 2) == 1);
    CHECK(plethysm_multiplicity(Partition({2, 2}), 2, 2) == 1);
    CHECK(plethysm_multiplicity(Partition({3, 1}), 2, 2) == 0);
    CHECK(plethysm_multiplicity(Partition({4, 2}), 2, 3) == 1);
    CHECK(plethysm_multiplicity(Partition({5, 1}), 2, 3) == 0);
    CHECK(plethysm_multiplicity(Partition({3, 3}), 2, 3) == 0);
    CHECK(plethysm_multiplicity(Partition({2, 2, 2}), 3, 2) == 1);
    CHECK(plethysm_multiplicity(Partition({15, 6, 6, 6}), 11, 3) == 6);

    // Σ_λ a_λ · dim S^λ(C^n) = dim S^d(S^c(C^n))
    for (int d = 1; d <= 5; ++d)
        for (int c = 1; c <= 4; ++c) {
            if (d * c > 14)
                continue;
            for (int n = 1; n <= 4; ++n) {
                mpz_class total = 0;
                for (const auto& w : partitions_of(d * c, n))
                    total += plethysm_multiplicity(w, d, c) * irrep_dimension(w, n);
                CHECK(total == binomial(binomial(n + c - 1, c) + d - 1, d));
            }
        }
}

TEST_CASE("multiplicity equals the rank of all tableau expansions") {
    for (int d = 1; d <= 4; ++d)
        for (int c = 1; c <= 3; ++c)
            for (const auto& w : partitions_of(d * c, d)) {
                if (TableauCounter(w, d, c).count() == 0 || count_assignments(w) > 100000)
                    continue;
                CAPTURE(w.to_string());
                CHECK(full_rank(w, d, c) == plethysm_multiplicity(w, d, c));
            }
}

TEST_CASE("basis selection") {
    auto b4 = select_basis(Partition({4}), 2, 2, nullptr, quiet());
    CHECK(b4.multiplicity == 1);
    CHECK(b4.elements.size() == 1);
    auto b22 = select_basis(Partition({2, 2}), 2, 2, nullptr, quiet());
    CHECK(b22.elements.size() == 1);
    auto b31 = select_basis(Partition({3, 1}), 2, 2, nullptr, quiet());
    CHECK(b31.multiplicity == 0);
    CHECK(b31.elements.empty());

    auto b = select_basis(Partition({6, 3, 3}), 4, 3, nullptr, quiet(7));
    CHECK(b.elements.size() == b.multiplicity);
    CHECK(b.multiplicity == full_rank(Partition({6, 3, 3}), 4, 3));
}

TEST_CASE("veronese conic: the discriminant") {
    auto fam = Family::veronese(2, 2);
    auto reports = ideal_slice(2, fam, nullptr, quiet());
    // (3,1) has a tableau whose expansion vanishes, so it is reported with a=0
    REQUIRE(reports.size() == 3);
    CHECK(reports[0].weight == Partition({4}));
    CHECK(reports[0].a == 1);
    CHECK(reports[0].b == 0);
    CHECK(reports[1].weight == Partition({3, 1}));
    CHECK(reports[1].a == 0);
    CHECK(reports[1].b == 0);
    CHECK(reports[2].weight == Partition({2, 2}));
    CHECK(reports[2].b == 1);
    CHECK(reports[2].kernel == std::vector<std::vector<mpz_class>>{{1}});

    std::ostringstream out;
    write_report(out, reports[2]);
    CHECK(out.str() == "weight=2,2 a=1 b=1 dim_irrep=1\nbasis 0\nkernel 1\n");
}

TEST_CASE("veronese ideals match the weight-space oracle") {
    for (int c = 2; c <= 3; ++c)
        for (int d = 2; d <= 4; ++d) {
            auto dims = veronese_ideal_weights(d, c);
            auto reports = ideal_slice(d, Family::veronese(2, c), nullptr, quiet());
            for (const auto& r : reports) {
                const auto& w = r.weight;
                std::size_t above = 0;
                if (w.length() == 2) {
                    std::vector<int> up{w[0] + 1, w[1] - 1};
                    if (up[1] == 0)
                        up.pop_back();
                    above = dims[Partition(up)];
                }
                CAPTURE(w.to_string());
                CAPTURE(d);
                CHECK(r.b == dims[w] - above);
            }
        }
}

TEST_CASE("no quadrics or cubics vanish on the cubic symmetroid") {
    auto fam = Family::symmetroid(3, 4);
    for (int d = 2; d <= 3; ++d) {
        auto reports = ideal_slice(d, fam, nullptr, quiet());
        CHECK(!reports.empty());
        for (const auto& r : reports)
            CHECK(r.b == 0);
    }
}

TEST_CASE("kernel vectors vanish exactly and are seed independent") {
    auto fam = Family::veronese(2, 3);
    // S^2(S^3) on twisted cubics: (4,2) is the discriminant-like quadric
    std::vector<Basis> bases;
    auto reports = ideal_slice(2, fam, nullptr, quiet(1), Partition({4, 2}), &bases);
    REQUIRE(reports.size() == 1);
    REQUIRE(reports[0].b == 1);
    auto poly = kernel_polynomial(bases[0], reports[0].kernel[0]);
    std::mt19937_64 rng(77);
    CHECK(vanishes_on(poly, fam, rng, 3));
    CHECK(!poly.combo.empty());

    std::vector<Basis> bases2;
    auto again = ideal_slice(2, fam, nullptr, quiet(2), Partition({4, 2}), &bases2);
    auto poly2 = kernel_polynomial(bases2[0], again[0].kernel[0]);
    // compare up to scale: make both primitive with a positive first term
    auto normalize = [](HighestWeightPolynomial p) {
        std::vector<mpq_class> v;
        for (const auto& t : p.terms)
            v.push_back(mpq_class(static_cast<long>(t.coeff)));
        auto w = primitive_integer_vector(v);
        for (std::size_t i = 0; i < w.size(); ++i)
            p.terms[i].coeff = w[i].get_si();
        p.combo.clear();
        return p.terms;
    };
    CHECK(normalize(poly) == normalize(poly2));
}

TEST_CASE("reports are deterministic for a seed") {
    auto fam = Family::veronese(2, 2);
    auto text = [&](std::uint64_t seed) {
        std::ostringstream out;
        for (const auto& r : ideal_slice(3, fam, nullptr, quiet(seed)))
            write_report(out, r);
        return out.str();
    };
    CHECK(text(4) == text(4));
}

TEST_CASE("database build, resume and verify") {
    TempDir tmp;
    Database db(tmp.path / "db");
    auto delta = build_database(db, 2, 2, 2, quiet());
    CHECK(delta.size() == 2);
    CHECK(db.find(2, 2, Partition({4}), 0).has_value());
    CHECK(db.find(2, 2, Partition({2, 2}), 0).has_value());
    CHECK(fs::exists(tmp.path / "db" / "2" / "2" / "2-2" / "0.hwp"));
    CHECK(db.verify().ok());
    CHECK(build_database(db, 2, 2, 2, quiet()).empty());

    // reopening reads the manifest back
    Database again(tmp.path / "db");
    CHECK(again.entries() == db.entries());

    // a missing file is rebuilt, byte-identical
    const auto file = tmp.path / "db" / "2" / "2" / "2-2" / "0.hwp";
    const auto sha = sha256_file(file);
    fs::remove(file);
    CHECK(!again.verify().ok());
    CHECK(build_database(again, 2, 2, 2, quiet()).empty());  // same entry re-stored
    CHECK(sha256_file(file) == sha);
    CHECK(again.verify().ok());

    // a corrupted term line is reported with its line number
    {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        auto text = buf.str();
        auto pos = text.find("-2 1,2;1,2");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 10, "-2 1,2;1,x");
        std::ofstream(file) << text;
    }
    auto rep = again.verify();
    REQUIRE(!rep.ok());
    CHECK(rep.issues[0].file == file);
    CHECK(rep.issues[0].line == 7);

    // a truncated file (no trailer) is detected and rebuilt
    {
        std::ofstream(file) << "#hwp v1\n#params d=2 c=2\n";
    }
    CHECK(!again.load(2, 2, Partition({2, 2}), 0).has_value());
    build_database(again, 2, 2, 2, quiet());
    CHECK(again.verify().ok());

    // term-count mismatch between manifest and file
    {
        std::ifstream in(file);
        std::stringstream buf;
        buf << in.rdbuf();
        auto text = buf.str();
        auto pos = text.find("-2 1,2;1,2\n");
        text.erase(pos, 11);
        text.replace(text.find("#terms 2"), 8, "#terms 1");
        std::ofstream(file) << text;
    }
    rep = again.verify();
    REQUIRE(!rep.ok());
    bool mismatch = false;
    for (const auto& issue : rep.issues)
        if (issue.message.find("term count") != std::string::npos)
            mismatch = true;
    CHECK(mismatch);

    // every tableau
    Database all(tmp.path / "all");
    CHECK(build_database(all, 2, 2, 2, quiet(), std::nullopt, true).size() == 3);
}
