#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hwpoly/modular.hpp"
#include "hwpoly/monomial.hpp"

namespace hwpoly {

/// Equivariant hash h(w) = Σ_blocks (Σ_{v in block} ι(v))^k mod p.
/// Depends only on the wreath-product orbit of w.
struct HashScheme {
    std::uint32_t k = 3;
    std::uint64_t p = 2;
    std::vector<std::uint64_t> iota;  // indexed by row value; iota[0] unused
    std::uint64_t seed = 0;

    Barrett reducer() const { return Barrett(p); }
    std::uint64_t hash(const MonomialClass& m) const;
    /// Hash of an arbitrary (non-canonical) list of blocks.
    std::uint64_t hash_blocks(const std::vector<std::vector<int>>& blocks) const;
};

/// Draws k in [3, 64] and ι uniformly in [0, p) for row values 1..rows.
HashScheme draw_hash_scheme(std::uint64_t p, int rows, std::mt19937_64& rng, std::uint64_t seed);

struct Collision {
    MonomialClass first;
    MonomialClass second;
    std::uint64_t value;
};

struct HashVerification {
    bool ok = true;
    std::vector<Collision> collisions;
};

/// Injectivity check of `scheme` on `domain`.
HashVerification verify_hash_scheme(const HashScheme& scheme, std::span<const MonomialClass> domain);

/// Expected number of domain elements sharing a cell with another element
/// when D elements land uniformly in p cells (birthday estimate).
double expected_ambiguous(double domain_size, double cells);

/// Schemes needed so that the last level is collision-free, estimated by
/// iterating the birthday estimate with the given cell budget.
int estimate_chain_depth(std::uint64_t domain_size, std::uint64_t max_cells);

struct HashChainOptions {
    std::uint64_t max_cells = std::uint64_t{1} << 22;
    int max_depth = 4;
    int draws_per_level = 32;
};

/// A sequence of hash schemes. Level 0 sees every word; a cell of level L
/// that holds more than one domain element is "ambiguous" and words landing
/// there are re-hashed with level L+1. The last level is injective on the
/// elements that reach it.
class HashChain {
public:
    HashChain() = default;
    /// Single-level chain; throws if `scheme` is not injective on `domain`.
    HashChain(HashScheme scheme, std::span<const MonomialClass> domain);

    static HashChain build(std::span<const MonomialClass> domain, int rows, std::uint64_t seed,
                           const HashChainOptions& options = {});

    std::size_t depth() const noexcept { return levels_.size(); }
    const HashScheme& level(std::size_t i) const { return levels_[i]; }
    const std::vector<HashScheme>& levels() const noexcept { return levels_; }
    bool ambiguous(std::size_t level, std::uint64_t cell) const {
        const auto& bits = ambiguous_[level];
        return !bits.empty() && ((bits[cell >> 6] >> (cell & 63)) & 1u);
    }
    /// Sizes of the domains seen by each level.
    const std::vector<std::size_t>& level_domains() const noexcept { return level_domain_; }

private:
    std::vector<HashScheme> levels_;
    std::vector<std::vector<std::uint64_t>> ambiguous_;
    std::vector<std::size_t> level_domain_;
};

}  // namespace hwpoly
