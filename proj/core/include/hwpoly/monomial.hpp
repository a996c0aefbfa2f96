#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hwpoly/partition.hpp"

namespace hwpoly {

/// A wreath-product orbit of words: d blocks, each a multiset of c row
/// indices (1-based). Always held in canonical form, each block sorted
/// ascending and the blocks sorted lexicographically, so equality of
/// objects is equality of orbits.
class MonomialClass {
public:
    MonomialClass() = default;
    /// `entries` is d·c row indices grouped into consecutive blocks of c.
    MonomialClass(int c, std::vector<std::uint8_t> entries);
    static MonomialClass from_blocks(const std::vector<std::vector<int>>& blocks);

    int c() const noexcept { return c_; }
    int d() const noexcept { return c_ == 0 ? 0 : static_cast<int>(entries_.size()) / c_; }
    std::span<const std::uint8_t> block(int i) const {
        return {entries_.data() + static_cast<std::size_t>(i) * c_, static_cast<std::size_t>(c_)};
    }
    const std::vector<std::uint8_t>& entries() const noexcept { return entries_; }

    /// Number of occurrences of each row index 1..rows.
    std::vector<int> content(int rows) const;

    /// "1,1;2,2"
    std::string to_string() const;
    static MonomialClass parse(std::string_view text);

    auto operator<=>(const MonomialClass&) const = default;

private:
    int c_ = 0;
    std::vector<std::uint8_t> entries_;
};

/// All canonical classes of content `weight` in S^d(S^c), ascending.
std::vector<MonomialClass> enumerate_weight_monomials(const Partition& weight, int d, int c);

/// Number of classes of the given content (any composition, zeros allowed).
std::uint64_t count_weight_monomials(const std::vector<int>& content, int d, int c);

}  // namespace hwpoly
