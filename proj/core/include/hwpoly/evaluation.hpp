#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

#include "hwpoly/form.hpp"
#include "hwpoly/hwp.hpp"

namespace hwpoly {

/// Coordinate of f paired with a block: g_α / multinomial(c; α), where α_r is
/// the multiplicity of row r in the block.
mpq_class block_coordinate(std::span<const std::uint8_t> block, const FormSample& f);

/// Σ_terms coeff · ∏_blocks block_coordinate(block, f).
mpq_class evaluate_hwp(const HighestWeightPolynomial& hwp, const FormSample& f);

/// evaluate_hwp reduced mod the prime q. Requires q > c and coefficient
/// denominators of f prime to q.
std::uint64_t evaluate_hwp_mod(const HighestWeightPolynomial& hwp, const FormSample& f, std::uint64_t q);

/// An HWP prepared for repeated evaluation: the distinct blocks are
/// collected once, so each evaluation computes one coordinate per distinct
/// block and then only multiplies.
class HwpEvaluator {
public:
    explicit HwpEvaluator(const HighestWeightPolynomial& hwp);

    mpq_class exact(const FormSample& f) const;
    std::uint64_t mod(const FormSample& f, std::uint64_t q) const;

    int d() const noexcept { return d_; }
    int c() const noexcept { return c_; }
    std::size_t terms() const noexcept { return coeffs_.size(); }

private:
    void check(const FormSample& f) const;

    int d_ = 0;
    int c_ = 0;
    int rows_ = 0;
    std::vector<Exponent> blocks_;     // length rows_
    std::vector<mpz_class> scale_;     // ∏ α_r!
    std::vector<std::int64_t> coeffs_;
    std::vector<std::uint32_t> ids_;   // d_ per term
};

}  // namespace hwpoly
