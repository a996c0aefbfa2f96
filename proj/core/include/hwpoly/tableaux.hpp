#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hwpoly/partition.hpp"

namespace hwpoly {

/// Semistandard filling of `shape` in which every value 1..d occurs exactly
/// c times. Entries are stored row-major.
class IsobaricTableau {
public:
    IsobaricTableau() = default;
    IsobaricTableau(Partition shape, int d, int c, std::vector<int> filling);

    const Partition& shape() const noexcept { return shape_; }
    int d() const noexcept { return d_; }
    int c() const noexcept { return c_; }
    const std::vector<int>& filling() const noexcept { return filling_; }

    int entry(int row, int col) const { return filling_[offsets_[row] + col]; }
    std::vector<int> row(int r) const;

    /// "1,1,2,2" (row-major, comma-joined).
    std::string filling_string() const;

    bool operator==(const IsobaricTableau& o) const {
        return shape_ == o.shape_ && d_ == o.d_ && c_ == o.c_ && filling_ == o.filling_;
    }

private:
    Partition shape_;
    int d_ = 0;
    int c_ = 0;
    std::vector<int> filling_;
    std::vector<int> offsets_;
};

/// True iff rows weakly increase and columns strictly increase.
bool is_semistandard(const Partition& shape, const std::vector<int>& filling);

/// ∅ = λ⁰ ⊂ λ¹ ⊂ … ⊂ λᵈ, each step a horizontal strip of c boxes.
/// Shapes are stored padded to the final length.
using PieriChain = std::vector<std::vector<int>>;

PieriChain to_pieri_chain(const IsobaricTableau& t);
IsobaricTableau from_pieri_chain(const PieriChain& chain, int d, int c);

/// Counts and unranks isobaric tableaux of a fixed shape via memoized
/// Pieri-chain counts. The canonical order is lexicographic on the chain:
/// at each step the strip adding more boxes to earlier rows comes first.
class TableauCounter {
public:
    TableauCounter(Partition shape, int d, int c);

    std::uint64_t count();
    IsobaricTableau unrank(std::uint64_t rank);
    std::uint64_t rank(const IsobaricTableau& t);

private:
    std::uint64_t completions(const std::vector<int>& cur, int step);
    std::uint64_t key(const std::vector<int>& cur) const;

    template <class F>
    void for_each_strip(const std::vector<int>& cur, F&& f) const;

    Partition shape_;
    int d_, c_;
    std::unordered_map<std::uint64_t, std::uint64_t> memo_;
};

/// All isobaric semistandard tableaux of `shape` with content (c,…,c),
/// in canonical order. Throws if |shape| != d·c.
std::vector<IsobaricTableau> enumerate_isobaric_tableaux(const Partition& shape, int d, int c);

}  // namespace hwpoly
