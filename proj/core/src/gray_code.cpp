#include "hwpoly/gray_code.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "hwpoly/error.hpp"

namespace hwpoly {

namespace {

std::vector<std::uint8_t> build_plain_changes(int m) {
    std::vector<std::uint8_t> swaps;
    std::vector<int> perm(m), dir(m, -1);
    for (int i = 0; i < m; ++i)
        perm[i] = i + 1;
    while (true) {
        int best = -1;
        for (int i = 0; i < m; ++i) {
            int j = i + dir[i];
            if (j < 0 || j >= m || perm[j] > perm[i])
                continue;
            if (best < 0 || perm[i] > perm[best])
                best = i;
        }
        if (best < 0)
            break;
        int j = best + dir[best];
        int moved = perm[best];
        std::swap(perm[best], perm[j]);
        std::swap(dir[best], dir[j]);
        swaps.push_back(static_cast<std::uint8_t>(std::min(best, j)));
        for (int i = 0; i < m; ++i)
            if (perm[i] > moved)
                dir[i] = -dir[i];
    }
    return swaps;
}

}  // namespace

const std::vector<std::uint8_t>& plain_change_swaps(int m) {
    if (m < 1 || m > 11)
        throw InvalidArgument("column length " + std::to_string(m) + " outside 1..11");
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<std::vector<std::uint8_t>>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[m];
    if (!slot)
        slot = std::make_unique<std::vector<std::uint8_t>>(build_plain_changes(m));
    return *slot;
}

std::vector<std::vector<int>> plain_change_perms(int m) {
    const auto& swaps = plain_change_swaps(m);
    std::vector<std::vector<int>> out;
    out.reserve(swaps.size() + 1);
    std::vector<int> perm(m);
    for (int i = 0; i < m; ++i)
        perm[i] = i + 1;
    out.push_back(perm);
    for (auto p : swaps) {
        std::swap(perm[p], perm[p + 1]);
        out.push_back(perm);
    }
    return out;
}

AssignmentWalker::AssignmentWalker(const Partition& shape, long first_column_perm) {
    col_len_ = column_lengths(shape);
    col_start_.resize(col_len_.size());
    int off = 0;
    for (std::size_t i = 0; i < col_len_.size(); ++i) {
        col_start_[i] = off;
        for (int r = 0; r < col_len_[i]; ++r)
            values_.push_back(r + 1);
        off += col_len_[i];
    }
    for (std::size_t i = 0; i < col_len_.size(); ++i) {
        const int m = col_len_[i];
        if (m < 2)
            continue;
        if (i == 0 && first_column_perm >= 0) {
            const auto& swaps = plain_change_swaps(m);
            if (static_cast<std::size_t>(first_column_perm) > swaps.size())
                throw InvalidArgument("first-column permutation index out of range");
            for (long s = 0; s < first_column_perm; ++s)
                std::swap(values_[swaps[s]], values_[swaps[s] + 1]);
            sign_ = (first_column_perm % 2 == 0) ? 1 : -1;
            continue;
        }
        const auto& swaps = plain_change_swaps(m);
        digit_col_.push_back(static_cast<int>(i));
        swaps_.push_back(&swaps);
        radix_.push_back(static_cast<long>(swaps.size()) + 1);
        if (__builtin_mul_overflow(total_, static_cast<std::uint64_t>(radix_.back()), &total_))
            throw InvalidArgument("assignment count exceeds 64 bits");
    }
    const std::size_t n = digit_col_.size();
    digit_.assign(n, 0);
    dir_.assign(n, 1);
    focus_.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        focus_[j] = static_cast<int>(j);
}

}  // namespace hwpoly
