#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "hwpoly/family.hpp"

namespace hwpoly {

/// Affine dimensions of a family f : V → W with image X.
struct DimensionReport {
    int dim_v = 0;                     // every parameter
    std::optional<int> dim_v_sliced;   // symmetroids with the first matrix diagonal
    std::uint64_t dim_w = 0;           // binom(n + c - 1, c)
    int dim_x = 0;                     // Jacobian rank
    int fiber = 0;                     // dim_v - dim_x
    std::optional<int> fiber_sliced;

    /// (dim W - 1) - (dim X - 1), as projective varieties.
    std::uint64_t codim() const noexcept { return dim_w - static_cast<std::uint64_t>(dim_x); }
};

DimensionReport dimensions(const Family& family, std::mt19937_64& rng, int height = 100);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

}  // namespace hwpoly
