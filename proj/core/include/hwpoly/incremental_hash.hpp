#pragma once

#include <cstdint>
#include <vector>

#include "hwpoly/gray_code.hpp"
#include "hwpoly/hash_scheme.hpp"
#include "hwpoly/error.hpp"
#include "hwpoly/tableaux.hpp"

namespace hwpoly {

/// The hash h of the word of the walker's current assignment, kept current
/// under Gray-code moves. A move exchanges the values of two boxes, so it
/// changes at most two blocks and two of the k-th powers in h.
///
/// Each block is tracked by a content code Σ_v count_v·(c+1)^(v-1). The k-th
/// power of every possible block sum is computed once by repeated squaring
/// and then looked up by code, which keeps the per-step cost at a handful of
/// table reads.
class IncrementalBlockHash {
public:
    IncrementalBlockHash(const HashScheme& scheme, const IsobaricTableau& tableau,
                         const AssignmentWalker& walker)
        : br_(scheme.p) {
        const int rows = tableau.shape().length();
        const int base = tableau.c() + 1;
        weight_.assign(rows + 1, 0);
        std::uint64_t w = 1;
        for (int v = 1; v <= rows; ++v) {
            weight_[v] = w;
            w *= static_cast<std::uint64_t>(base);
        }
        if (w > kMaxTable)
            throw InvalidArgument("block content table too large for this weight");
        power_.assign(w, 0);
        // code -> (Σ count_v ι(v))^k
        for (std::uint64_t code = 0; code < w; ++code) {
            std::uint64_t rest = code, s = 0;
            for (int v = 1; v <= rows; ++v) {
                const std::uint64_t cnt = rest % base;
                rest /= base;
                s = br_.add(s, br_.mul(cnt, scheme.iota[v] % scheme.p));
            }
            power_[code] = br_.pow(s, scheme.k);
        }

        block_.resize(walker.boxes());
        for (int col = 0; col < walker.columns(); ++col)
            for (int r = 0; r < walker.column_length(col); ++r)
                block_[walker.box_index(r, col)] = tableau.entry(r, col) - 1;
        code_.assign(tableau.d(), 0);
        for (int col = 0; col < walker.columns(); ++col)
            for (int r = 0; r < walker.column_length(col); ++r)
                code_[block_[walker.box_index(r, col)]] += weight_[walker.value(r, col)];
        hash_ = recompute();
    }

    /// Call after `walker.next(move)` returned true.
    void apply(const AssignmentWalker::Move& mv, const AssignmentWalker& walker) {
        const int idx = walker.box_index(mv.row, mv.col);
        const int t1 = block_[idx], t2 = block_[idx + 1];
        if (t1 == t2)
            return;
        // box idx now holds v1 (it held v2); box idx+1 the reverse
        const std::uint64_t w1 = weight_[walker.value(mv.row, mv.col)];
        const std::uint64_t w2 = weight_[walker.value(mv.row + 1, mv.col)];
        const std::uint64_t before = br_.add(power_[code_[t1]], power_[code_[t2]]);
        code_[t1] = code_[t1] + w1 - w2;
        code_[t2] = code_[t2] + w2 - w1;
        const std::uint64_t after = br_.add(power_[code_[t1]], power_[code_[t2]]);
        hash_ = br_.add(br_.sub(hash_, before), after);
    }

    std::uint64_t value() const noexcept { return hash_; }

    /// h summed afresh over all blocks.
    std::uint64_t recompute() const {
        std::uint64_t h = 0;
        for (auto code : code_)
            h = br_.add(h, power_[code]);
        return h;
    }

    static constexpr std::uint64_t kMaxTable = std::uint64_t{1} << 22;

private:
    Barrett br_;
    std::vector<std::uint64_t> weight_;
    std::vector<std::uint64_t> power_;
    std::vector<int> block_;
    std::vector<std::uint64_t> code_;
    std::uint64_t hash_ = 0;
};

}  // namespace hwpoly
