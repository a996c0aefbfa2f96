#include "hwpoly/equations.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>

#include "hwpoly/error.hpp"
#include "hwpoly/evaluation.hpp"
#include "hwpoly/expander.hpp"
#include "hwpoly/linalg.hpp"
#include "hwpoly/modular.hpp"
#include "hwpoly/monomial.hpp"
#include "hwpoly/tableaux.hpp"

namespace hwpoly {

namespace {

std::uint64_t weight_key(const Partition& weight, int d, int c) {
    std::uint64_t h = mix_seed(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(c));
    for (int p : weight.parts())
        h = mix_seed(h, static_cast<std::uint64_t>(p));
    return h;
}

void say(const FinderOptions& options, const std::string& msg) {
    if (options.log)
        options.log(msg);
}

std::uint64_t previous_prime(std::uint64_t n) {
    do
        --n;
    while (!is_prime(n));
    return n;
}

// Expansion context of one weight; the domain and hash chain are built on
// first use.
class WeightExpander {
public:
    WeightExpander(Partition weight, int d, int c, Database* db, const FinderOptions& options)
        : weight_(std::move(weight)), d_(d), c_(c), db_(db), options_(options), counter_(weight_, d, c) {}

    std::uint64_t tableaux() { return counter_.count(); }

    HighestWeightPolynomial obtain(std::uint64_t id) {
        if (db_)
            if (auto hwp = db_->load(c_, d_, weight_, id))
                return std::move(*hwp);
        if (domain_.empty()) {
            domain_ = enumerate_weight_monomials(weight_, d_, c_);
            chain_ = HashChain::build(domain_, weight_.length(), mix_seed(options_.seed, weight_key(weight_, d_, c_)),
                                      options_.hash);
        }
        ExpandOptions eo;
        eo.seed = options_.seed;
        eo.workers = options_.workers;
        eo.hash = options_.hash;
        eo.progress = options_.progress;
        auto hwp = expand_hwv(counter_.unrank(id), chain_, domain_, eo);
        if (db_)
            db_->store(hwp, id);
        return hwp;
    }

private:
    Partition weight_;
    int d_, c_;
    Database* db_;
    const FinderOptions& options_;
    TableauCounter counter_;
    std::vector<MonomialClass> domain_;
    HashChain chain_;
};

FormSample generic_form(int n, int c, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> dist(-1000000, 1000000);
    FormSample f(n, c);
    for (const auto& alpha : exponents_of_degree(n, c))
        f.set(alpha, mpq_class(dist(rng)));
    return f;
}

// Rows in echelon form over F_q, each normalized to 1 at its pivot.
class Echelon {
public:
    explicit Echelon(std::uint64_t q) : q_(q) {}

    // Reduces v; appends it and returns true when it is independent.
    bool insert(std::vector<std::uint64_t> v) {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            const std::uint64_t f = v[pivots_[i]];
            if (f == 0)
                continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = modq::sub(v[j], modq::mul(f, rows_[i][j], q_), q_);
        }
        auto it = std::find_if(v.begin(), v.end(), [](auto x) { return x != 0; });
        if (it == v.end())
            return false;
        const std::size_t pivot = static_cast<std::size_t>(it - v.begin());
        const std::uint64_t inv = modq::inv(*it, q_);
        for (auto& x : v)
            x = modq::mul(x, inv, q_);
        rows_.push_back(std::move(v));
        pivots_.push_back(pivot);
        return true;
    }
    std::size_t rank() const noexcept { return rows_.size(); }

private:
    std::uint64_t q_;
    std::vector<std::vector<std::uint64_t>> rows_;
    std::vector<std::size_t> pivots_;
};

mpz_class crt(const mpz_class& r1, const mpz_class& m1, std::uint64_t r2, std::uint64_t m2) {
    // x ≡ r1 (m1), x ≡ r2 (m2)
    mpz_class inv, mm2 = mpz_class(std::to_string(m2));
    mpz_invert(inv.get_mpz_t(), mpz_class(m1 % mm2).get_mpz_t(), mm2.get_mpz_t());
    mpz_class t = ((mpz_class(std::to_string(r2)) - r1) % mm2) * inv % mm2;
    if (t < 0)
        t += mm2;
    return r1 + m1 * t;
}

mpz_class from_u64(std::uint64_t v) { return mpz_class(std::to_string(v)); }

}  // namespace

std::uint64_t plethysm_multiplicity(const Partition& weight, int d, int c) {
    if (weight.size() != d * c)
        throw InvalidArgument("weight " + weight.to_string() + " is not a partition of d*c");
    const int n = weight.length();
    // entry i of λ + ρ - w(ρ) is λ_i - i + w(i) (0-based); w is built row by
    // row and partial contents with a negative entry are pruned.
    std::vector<int> content(n);
    std::vector<bool> used(n, false);
    long long total = 0;
    auto rec = [&](auto&& self, int i, int sign) -> void {
        if (i == n) {
            total += sign * static_cast<long long>(count_weight_monomials(content, d, c));
            return;
        }
        for (int j = n - 1; j >= 0; --j) {
            // w(i) = j; inversions with earlier rows are used values above j
            if (used[j])
                continue;
            const int v = weight[i] - i + j;
            if (v < 0)
                continue;
            int larger_used = 0;
            for (int k = j + 1; k < n; ++k)
                if (used[k])
                    ++larger_used;
            used[j] = true;
            content[i] = v;
            self(self, i + 1, larger_used % 2 ? -sign : sign);
            used[j] = false;
        }
    };
    rec(rec, 0, 1);
    if (total < 0)
        throw Error("internal", "negative multiplicity for " + weight.to_string());
    return static_cast<std::uint64_t>(total);
}

HighestWeightPolynomial obtain_hwp(const Partition& weight, int d, int c, std::uint64_t id, Database* db,
                                   const FinderOptions& options) {
    return WeightExpander(weight, d, c, db, options).obtain(id);
}

Basis select_basis(const Partition& weight, int d, int c, Database* db, const FinderOptions& options) {
    Basis basis;
    basis.weight = weight;
    basis.d = d;
    basis.c = c;
    basis.multiplicity = plethysm_multiplicity(weight, d, c);
    WeightExpander expander(weight, d, c, db, options);
    basis.tableaux = expander.tableaux();
    const std::uint64_t a = basis.multiplicity;
    if (a == 0)
        return basis;
    if (a > basis.tableaux)
        throw Error("internal", "multiplicity exceeds the tableau count for " + weight.to_string());

    const int rows = weight.length();
    const std::size_t N = 2 * a + 4;
    std::mt19937_64 rng(mix_seed(options.seed, weight_key(weight, d, c)));
    std::vector<FormSample> forms;
    for (std::size_t i = 0; i < N; ++i)
        forms.push_back(generic_form(rows, c, rng));

    // candidate order
    const std::uint64_t count = basis.tableaux;
    const std::size_t limit = options.max_candidates ? options.max_candidates
                                                     : std::max<std::size_t>(200, 40 * static_cast<std::size_t>(a));
    std::vector<std::uint64_t> order;
    if (count <= (std::uint64_t{1} << 20)) {
        order.resize(count);
        std::iota(order.begin(), order.end(), std::uint64_t{0});
        std::shuffle(order.begin(), order.end(), rng);
    }
    std::set<std::uint64_t> drawn;
    auto next_candidate = [&](std::size_t i) -> std::optional<std::uint64_t> {
        if (!order.empty() || count <= (std::uint64_t{1} << 20))
            return i < order.size() ? std::optional(order[i]) : std::nullopt;
        if (drawn.size() == count)
            return std::nullopt;
        std::uniform_int_distribution<std::uint64_t> dist(0, count - 1);
        while (true) {
            auto id = dist(rng);
            if (drawn.insert(id).second)
                return id;
        }
    };

    Echelon ech(kPrimeA);
    for (std::size_t i = 0; ech.rank() < a; ++i) {
        if (i >= limit)
            throw Unstable("weight " + weight.to_string() + ": rank stuck at " + std::to_string(ech.rank()) +
                           " of " + std::to_string(a) + " after " + std::to_string(i) + " tableaux");
        auto id = next_candidate(i);
        if (!id)
            throw Unstable("weight " + weight.to_string() + ": all tableaux give rank " +
                           std::to_string(ech.rank()) + " < " + std::to_string(a));
        ++basis.candidates;
        auto hwp = expander.obtain(*id);
        if (hwp.terms.empty())
            continue;
        HwpEvaluator ev(hwp);
        std::vector<std::uint64_t> v;
        v.reserve(N);
        for (const auto& f : forms)
            v.push_back(ev.mod(f, kPrimeA));
        if (ech.insert(std::move(v))) {
            say(options, "weight " + weight.to_string() + ": tableau " + std::to_string(*id) + " kept (" +
                             std::to_string(ech.rank()) + "/" + std::to_string(a) + ")");
            basis.elements.push_back({*id, std::move(hwp)});
        }
    }
    std::sort(basis.elements.begin(), basis.elements.end(),
              [](const auto& x, const auto& y) { return x.tableau_id < y.tableau_id; });

    // confirm with a second prime and fresh forms
    ModMatrix check;
    std::vector<HwpEvaluator> evs;
    for (const auto& e : basis.elements)
        evs.emplace_back(e.hwp);
    for (std::size_t i = 0; i < N; ++i) {
        auto f = generic_form(rows, c, rng);
        std::vector<std::uint64_t> row;
        for (const auto& ev : evs)
            row.push_back(ev.mod(f, kPrimeB));
        check.push_back(std::move(row));
    }
    if (rank_mod(check, kPrimeB) != a)
        throw Unstable("weight " + weight.to_string() + ": basis rank not confirmed mod a second prime");
    return basis;
}

IsotypicReport isotypic_kernel(const Basis& basis, const Family& family, const FinderOptions& options) {
    IsotypicReport rep;
    rep.weight = basis.weight;
    rep.a = basis.multiplicity;
    rep.dim_irrep = irrep_dimension(basis.weight, family.n());
    for (const auto& e : basis.elements)
        rep.basis_ids.push_back(e.tableau_id);
    if (family.c() != basis.c)
        throw InvalidArgument("family degree " + std::to_string(family.c()) + " differs from c=" +
                              std::to_string(basis.c));
    if (family.n() < basis.weight.length())
        throw InvalidArgument("family has fewer variables than the weight has rows");
    if (rep.a == 0)
        return rep;

    const std::size_t a = basis.elements.size();
    std::vector<HwpEvaluator> evs;
    for (const auto& e : basis.elements)
        evs.emplace_back(e.hwp);
    std::mt19937_64 rng(mix_seed(mix_seed(options.seed, weight_key(basis.weight, basis.d, basis.c)), 0x6b));

    auto kernel_mod = [&](std::uint64_t q, std::size_t samples) {
        ModMatrix m;
        for (std::size_t s = 0; s < samples; ++s) {
            auto f = family.sample(rng, options.height);
            std::vector<std::uint64_t> row;
            for (const auto& ev : evs)
                row.push_back(ev.mod(f, q));
            m.push_back(std::move(row));
        }
        return nullspace_mod(std::move(m), q, a);
    };
    auto free_columns = [](const std::vector<std::vector<std::uint64_t>>& ker) {
        // free column of each RREF kernel vector: its last nonzero entry is
        // the 1 placed there, the entries after it are zero.
        std::vector<std::size_t> cols;
        for (const auto& v : ker) {
            std::size_t j = v.size();
            while (j > 0 && v[j - 1] == 0)
                --j;
            cols.push_back(j - 1);
        }
        return cols;
    };

    std::size_t samples = a + 8;
    std::vector<std::vector<std::uint64_t>> kA, kB;
    bool agreed = false;
    for (int attempt = 0; attempt < 2 && !agreed; ++attempt, samples *= 2) {
        kA = kernel_mod(kPrimeA, samples);
        kB = kernel_mod(kPrimeB, samples);
        agreed = kA.size() == kB.size() && free_columns(kA) == free_columns(kB);
        rep.samples = samples;
    }
    if (!agreed)
        throw Unstable("weight " + basis.weight.to_string() + ": kernel differs between primes (" +
                       std::to_string(kA.size()) + " vs " + std::to_string(kB.size()) + ")");
    rep.primes = {kPrimeA, kPrimeB};
    rep.b = kA.size();
    if (rep.b == 0)
        return rep;

    // lift each kernel vector from residues by CRT and rational
    // reconstruction; accept once it vanishes exactly at fresh samples
    std::vector<std::vector<mpz_class>> residues(rep.b, std::vector<mpz_class>(a));
    for (std::size_t i = 0; i < rep.b; ++i)
        for (std::size_t j = 0; j < a; ++j)
            residues[i][j] = crt(from_u64(kA[i][j]), from_u64(kPrimeA), kB[i][j], kPrimeB);
    mpz_class modulus = from_u64(kPrimeA) * from_u64(kPrimeB);
    std::uint64_t q = kPrimeB;
    const auto columns = free_columns(kA);
    for (int round = 0; round < 8; ++round) {
        bool ok = true;
        std::vector<std::vector<mpz_class>> lifted;
        for (const auto& res : residues) {
            std::vector<mpq_class> v;
            for (const auto& r : res) {
                auto x = rational_reconstruct(r, modulus);
                if (!x) {
                    ok = false;
                    break;
                }
                v.push_back(*x);
            }
            if (!ok)
                break;
            lifted.push_back(primitive_integer_vector(v));
        }
        if (ok) {
            for (int s = 0; s < 3 && ok; ++s) {
                auto f = family.sample(rng, options.height);
                std::vector<mpq_class> vals;
                for (const auto& ev : evs)
                    vals.push_back(ev.exact(f));
                for (const auto& v : lifted) {
                    mpq_class total = 0;
                    for (std::size_t j = 0; j < a; ++j)
                        total += mpq_class(v[j]) * vals[j];
                    if (total != 0) {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if (ok) {
            rep.kernel = std::move(lifted);
            return rep;
        }
        q = previous_prime(q);
        auto k = kernel_mod(q, samples);
        if (k.size() != rep.b || free_columns(k) != columns)
            continue;  // unlucky prime or batch; try another
        rep.primes.push_back(q);
        for (std::size_t i = 0; i < rep.b; ++i)
            for (std::size_t j = 0; j < a; ++j)
                residues[i][j] = crt(residues[i][j], modulus, k[i][j], q);
        modulus *= from_u64(q);
    }
    throw Unstable("weight " + basis.weight.to_string() + ": kernel vectors failed the exact check");
}

std::vector<IsotypicReport> ideal_slice(int d, const Family& family, Database* db, const FinderOptions& options,
                                        const std::optional<Partition>& only, std::vector<Basis>* bases) {
    const int c = family.c();
    std::vector<IsotypicReport> out;
    for (const auto& weight : partitions_of(d * c, family.n())) {
        if (only && weight != *only)
            continue;
        if (TableauCounter(weight, d, c).count() == 0)
            continue;
        auto basis = select_basis(weight, d, c, db, options);
        out.push_back(isotypic_kernel(basis, family, options));
        say(options, "weight " + weight.to_string() + ": a=" + std::to_string(out.back().a) +
                         " b=" + std::to_string(out.back().b));
        if (bases)
            bases->push_back(std::move(basis));
    }
    return out;
}

void write_report(std::ostream& os, const IsotypicReport& r) {
    os << "weight=" << r.weight.to_string() << " a=" << r.a << " b=" << r.b << " dim_irrep=" << r.dim_irrep.get_str()
       << '\n';
    os << "basis";
    for (auto id : r.basis_ids)
        os << ' ' << id;
    os << '\n';
    for (const auto& v : r.kernel) {
        os << "kernel";
        for (const auto& x : v)
            os << ' ' << x.get_str();
        os << '\n';
    }
}

HighestWeightPolynomial kernel_polynomial(const Basis& basis, const std::vector<mpz_class>& v) {
    if (v.size() != basis.elements.size())
        throw InvalidArgument("kernel vector length differs from the basis size");
    std::vector<const HighestWeightPolynomial*> parts;
    std::vector<std::int64_t> coeffs;
    HighestWeightPolynomial out;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (!v[j].fits_slong_p())
            throw InvalidArgument("kernel coefficient exceeds 64 bits");
        parts.push_back(&basis.elements[j].hwp);
        coeffs.push_back(v[j].get_si());
    }
    out = combine(parts, coeffs);
    for (std::size_t j = 0; j < v.size(); ++j)
        if (coeffs[j] != 0)
            out.combo.push_back({basis.elements[j].tableau_id, coeffs[j]});
    return out;
}

bool vanishes_on(const HighestWeightPolynomial& hwp, const Family& family, std::mt19937_64& rng, int samples,
                 int height) {
    HwpEvaluator ev(hwp);
    for (int s = 0; s < samples; ++s)
        if (ev.exact(family.sample(rng, height)) != 0)
            return false;
    return true;
}

std::vector<ManifestEntry> build_database(Database& db, int d, int c, int n, const FinderOptions& options,
                                          const std::optional<Partition>& only, bool all_tableaux) {
    const auto before = db.entries();
    for (const auto& weight : partitions_of(d * c, n)) {
        if (only && weight != *only)
            continue;
        WeightExpander expander(weight, d, c, &db, options);
        const auto count = expander.tableaux();
        if (count == 0)
            continue;
        if (all_tableaux) {
            for (std::uint64_t id = 0; id < count; ++id)
                expander.obtain(id);
            say(options, "weight " + weight.to_string() + ": " + std::to_string(count) + " tableaux");
        } else {
            auto basis = select_basis(weight, d, c, &db, options);
            say(options, "weight " + weight.to_string() + ": a=" + std::to_string(basis.multiplicity) + " from " +
                             std::to_string(basis.candidates) + " tableaux");
        }
    }
    std::vector<ManifestEntry> delta;
    for (const auto& [key, e] : db.entries()) {
        auto it = before.find(key);
        if (it == before.end() || it->second != e)
            delta.push_back(e);
    }
    return delta;
}

}  // namespace hwpoly
