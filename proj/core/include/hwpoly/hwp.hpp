#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hwpoly/monomial.hpp"
#include "hwpoly/partition.hpp"

namespace hwpoly {

struct HashRecord {
    std::uint32_t k = 0;
    std::uint64_t p = 0;
    std::uint64_t seed = 0;
    bool operator==(const HashRecord&) const = default;
};

struct HwpTerm {
    MonomialClass monomial;
    std::int64_t coeff = 0;
    bool operator==(const HwpTerm&) const = default;
};

/// Sparse integer combination of monomial classes of one weight. Produced by
/// expanding a tableau, or as an integer combination of such expansions.
struct HighestWeightPolynomial {
    int d = 0;
    int c = 0;
    Partition weight;
    std::vector<int> tableau;                                  // row-major filling, may be empty
    std::vector<std::pair<std::uint64_t, std::int64_t>> combo;  // (tableau-id, coefficient)
    std::vector<HashRecord> hashes;
    std::vector<HwpTerm> terms;  // ascending by monomial, no zero coefficients

    bool operator==(const HighestWeightPolynomial&) const = default;
};

/// Index of the first term whose content differs from the weight.
std::optional<std::size_t> find_content_violation(const HighestWeightPolynomial& hwp);

void write_hwp(std::ostream& os, const HighestWeightPolynomial& hwp);
HighestWeightPolynomial read_hwp(std::istream& is, const std::string& source = "<stream>");

void write_hwp_file(const std::filesystem::path& path, const HighestWeightPolynomial& hwp);
HighestWeightPolynomial read_hwp_file(const std::filesystem::path& path);

/// Σ coeff_i · hwp_i. All inputs must share (d, c, weight). Throws on 64-bit
/// overflow of a coefficient.
HighestWeightPolynomial combine(const std::vector<const HighestWeightPolynomial*>& parts,
                                const std::vector<std::int64_t>& coefficients);

}  // namespace hwpoly
