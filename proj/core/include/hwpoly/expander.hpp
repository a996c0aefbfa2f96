#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hwpoly/hash_scheme.hpp"
#include "hwpoly/hwp.hpp"
#include "hwpoly/monomial.hpp"
#include "hwpoly/tableaux.hpp"

namespace hwpoly {

/// Column permutation assignment, materialized. columns[i][r] is the value in
/// row r of column i; column i holds a permutation of 1..μᵢ.
struct ColumnAssignment {
    std::vector<std::vector<int>> columns;
};

/// The assignment that writes row numbers into every column.
ColumnAssignment identity_assignment(const Partition& shape);

/// Block t collects the values of the boxes whose tableau entry is t.
MonomialClass word_class_of(const ColumnAssignment& assignment, const IsobaricTableau& tableau);

/// Product of the signs of the column permutations.
int sign_of(const ColumnAssignment& assignment);

struct ExpandOptions {
    std::uint64_t seed = 1;
    unsigned workers = 0;  // 0: hardware concurrency
    HashChainOptions hash;
    /// Called with (assignments done, total); may be invoked from worker
    /// threads but never concurrently.
    std::function<void(std::uint64_t, std::uint64_t)> progress;
};

/// Σ over column permutation assignments T of sgn(T)·κ(T), accumulated in
/// hash-indexed arrays. `domain` must be the weight-λ monomial classes and
/// `chain` must resolve them (see HashChain).
HighestWeightPolynomial expand_hwv(const IsobaricTableau& tableau, const HashChain& chain,
                                   std::span<const MonomialClass> domain,
                                   const ExpandOptions& options = {});

/// Convenience: enumerates the weight domain and draws a hash chain from
/// `options.seed`.
HighestWeightPolynomial expand_hwv(const IsobaricTableau& tableau, const ExpandOptions& options = {});

}  // namespace hwpoly
