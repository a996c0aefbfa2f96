#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace hwpoly {

/// Integer partition, weakly decreasing with strictly positive parts.
/// Doubles as a dominant GL(n) weight when length() <= n.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts);

    const std::vector<int>& parts() const noexcept { return parts_; }
    int length() const noexcept { return static_cast<int>(parts_.size()); }
    int size() const noexcept;
    int operator[](std::size_t row) const { return parts_[row]; }
    bool empty() const noexcept { return parts_.empty(); }

    /// Comma-joined parts, e.g. "15,6,6,6".
    std::string to_string(char sep = ',') const;
    static Partition parse(std::string_view text);

    auto operator<=>(const Partition&) const = default;

private:
    std::vector<int> parts_;
};

std::ostream& operator<<(std::ostream& os, const Partition& p);

/// Conjugate partition: entry i is the number of boxes in column i.
std::vector<int> column_lengths(const Partition& shape);

/// Dimension of the irreducible GL(n) module with highest weight `shape`
/// (hook-content formula).
mpz_class irrep_dimension(const Partition& shape, int n);

/// Number of column permutation assignments: product of (column length)!.
mpz_class count_assignments(const Partition& shape);

/// All partitions of `total` with at most `max_rows` parts, in descending
/// lexicographic order.
std::vector<Partition> partitions_of(int total, int max_rows);

}  // namespace hwpoly
