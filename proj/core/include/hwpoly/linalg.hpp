#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace hwpoly {

using ModMatrix = std::vector<std::vector<std::uint64_t>>;

/// Reduced row echelon form over F_q in place; returns the pivot columns.
std::vector<std::size_t> row_reduce_mod(ModMatrix& m, std::uint64_t q);

std::size_t rank_mod(ModMatrix m, std::uint64_t q);

/// Basis of {x : m·x = 0} over F_q, one vector per free column, with a 1 in
/// that free column and 0 in the other free columns. `columns` is needed for
/// matrices with no rows.
std::vector<std::vector<std::uint64_t>> nullspace_mod(ModMatrix m, std::uint64_t q, std::size_t columns);

/// Rank over Q by fraction-free elimination.
std::size_t rank_exact(std::vector<std::vector<mpz_class>> m);

/// The fraction a/b with |a|, |b| <= sqrt(modulus/2) congruent to `residue`,
/// if one exists.
std::optional<mpq_class> rational_reconstruct(const mpz_class& residue, const mpz_class& modulus);

/// Scales a rational vector to coprime integers with the first nonzero
/// entry positive.
std::vector<mpz_class> primitive_integer_vector(const std::vector<mpq_class>& v);

}  // namespace hwpoly
