#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hwpoly/database.hpp"
#include "hwpoly/family.hpp"
#include "hwpoly/hash_scheme.hpp"
#include "hwpoly/hwp.hpp"
#include "hwpoly/partition.hpp"

namespace hwpoly {

/// Multiplicity a_λ of S^λ in S^d(S^c), from the weight multiplicities of
/// S^d(S^c) via a_λ = Σ_{w ∈ S_ℓ} sgn(w)·m(λ + ρ - w(ρ)).
std::uint64_t plethysm_multiplicity(const Partition& weight, int d, int c);

struct FinderOptions {
    std::uint64_t seed = 1;
    unsigned workers = 0;
    int height = 100;                    // family parameter bound
    HashChainOptions hash;
    std::size_t max_candidates = 0;      // 0: max(200, 40·a_λ)
    std::function<void(const std::string&)> log;
    std::function<void(std::uint64_t, std::uint64_t)> progress;  // per expansion
};

struct BasisElement {
    std::uint64_t tableau_id = 0;
    HighestWeightPolynomial hwp;
};

/// a_λ tableau expansions whose polynomials are linearly independent.
struct Basis {
    Partition weight;
    int d = 0;
    int c = 0;
    std::uint64_t multiplicity = 0;
    std::uint64_t tableaux = 0;
    std::size_t candidates = 0;  // tableaux expanded or loaded while selecting
    std::vector<BasisElement> elements;
};

/// Tableau `id` of the weight, loaded from `db` when present there and
/// otherwise expanded (and stored when `db` is given).
HighestWeightPolynomial obtain_hwp(const Partition& weight, int d, int c, std::uint64_t id, Database* db,
                                   const FinderOptions& options);

/// Draws tableaux in a seeded random order, keeping each one whose
/// evaluations at generic forms are independent of those kept so far, until
/// a_λ are kept. The final rank is confirmed mod a second prime on fresh
/// forms.
Basis select_basis(const Partition& weight, int d, int c, Database* db, const FinderOptions& options);

struct IsotypicReport {
    Partition weight;
    std::uint64_t a = 0;
    std::uint64_t b = 0;
    mpz_class dim_irrep;
    std::vector<std::uint64_t> basis_ids;
    std::vector<std::vector<mpz_class>> kernel;  // primitive integer rows
    std::vector<std::uint64_t> primes;
    std::size_t samples = 0;
};

/// Kernel of the evaluation matrix of `basis` at family samples.
IsotypicReport isotypic_kernel(const Basis& basis, const Family& family, const FinderOptions& options);

/// Reports for every λ ⊢ d·c with at most n rows and at least one tableau,
/// in descending lexicographic order. `only` restricts to one weight.
std::vector<IsotypicReport> ideal_slice(int d, const Family& family, Database* db, const FinderOptions& options,
                                        const std::optional<Partition>& only = std::nullopt,
                                        std::vector<Basis>* bases = nullptr);

void write_report(std::ostream& os, const IsotypicReport& report);

/// Σ_j v_j·basis_j, recording the combination in the header.
HighestWeightPolynomial kernel_polynomial(const Basis& basis, const std::vector<mpz_class>& v);

/// Exact evaluation of `hwp` at `samples` fresh family points; true when all
/// vanish.
bool vanishes_on(const HighestWeightPolynomial& hwp, const Family& family, std::mt19937_64& rng, int samples,
                 int height = 100);

/// Expands and stores a basis for every weight of S^d(S^c) with at most n
/// rows (or every tableau with `all_tableaux`). Returns the entries added.
std::vector<ManifestEntry> build_database(Database& db, int d, int c, int n, const FinderOptions& options,
                                          const std::optional<Partition>& only = std::nullopt,
                                          bool all_tableaux = false);

}  // namespace hwpoly
