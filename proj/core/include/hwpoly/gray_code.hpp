#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hwpoly/partition.hpp"

namespace hwpoly {

/// Plain changes (Steinhaus-Johnson-Trotter) on m elements. Entry j is the
/// position p such that permutation j+1 is permutation j with positions p
/// and p+1 exchanged. Size m! - 1. Tables are cached per m.
const std::vector<std::uint8_t>& plain_change_swaps(int m);

/// The full plain-change list as arrays of values 1..m.
std::vector<std::vector<int>> plain_change_perms(int m);

/// Walks all column permutation assignments of a shape, each step applying a
/// single adjacent transposition inside one column. Columns of length 1 never
/// move. Digits run a loopless reflected mixed-radix Gray code (radix μᵢ!), and
/// each digit indexes that column's plain-change list, so the global sign
/// flips on every step.
///
/// With `first_column_perm >= 0`, column 0 is frozen at that index of its
/// plain-change list and only the remaining columns move; this is how the
/// expander splits work into contiguous ranges.
class AssignmentWalker {
public:
    struct Move {
        int col;
        int row;  // rows `row` and `row + 1` of `col` exchanged values
    };

    explicit AssignmentWalker(const Partition& shape, long first_column_perm = -1);

    /// Value (1-based) currently assigned to the box.
    int value(int row, int col) const { return values_[col_start_[col] + row]; }
    int sign() const noexcept { return sign_; }
    int columns() const noexcept { return static_cast<int>(col_len_.size()); }
    int column_length(int col) const { return col_len_[col]; }
    /// Column-major position of a box; consecutive rows are adjacent.
    int box_index(int row, int col) const { return col_start_[col] + row; }
    int boxes() const noexcept { return static_cast<int>(values_.size()); }

    /// Advance; returns false (state unchanged) once every assignment has
    /// been visited.
    bool next(Move& move) {
        const int j = focus_[0];
        focus_[0] = 0;
        if (j == static_cast<int>(digit_col_.size()))
            return false;
        const auto& swaps = *swaps_[j];
        int pos;
        if (dir_[j] > 0)
            pos = swaps[digit_[j]++];
        else
            pos = swaps[--digit_[j]];
        if (digit_[j] == 0 || digit_[j] == radix_[j] - 1) {
            dir_[j] = -dir_[j];
            focus_[j] = focus_[j + 1];
            focus_[j + 1] = j + 1;
        }
        const int col = digit_col_[j];
        int* base = values_.data() + col_start_[col];
        std::swap(base[pos], base[pos + 1]);
        sign_ = -sign_;
        move = {col, pos};
        return true;
    }

    /// Number of assignments this walker visits.
    std::uint64_t total() const noexcept { return total_; }

private:
    std::vector<int> col_len_;
    std::vector<int> col_start_;
    std::vector<int> values_;  // column-major
    std::vector<int> digit_col_;
    std::vector<const std::vector<std::uint8_t>*> swaps_;
    std::vector<long> radix_;
    std::vector<long> digit_;
    std::vector<int> dir_;
    std::vector<int> focus_;
    int sign_ = 1;
    std::uint64_t total_ = 1;
};

}  // namespace hwpoly
