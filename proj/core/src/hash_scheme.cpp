#include "hwpoly/hash_scheme.hpp"

#include <algorithm>
#include <cmath>

#include "hwpoly/error.hpp"

namespace hwpoly {

std::uint64_t HashScheme::hash(const MonomialClass& m) const {
    const Barrett br(p);
    std::uint64_t h = 0;
    for (int b = 0; b < m.d(); ++b) {
        std::uint64_t s = 0;
        for (auto v : m.block(b))
            s = br.add(s, iota.at(v));
        h = br.add(h, br.pow(s, k));
    }
    return h;
}

std::uint64_t HashScheme::hash_blocks(const std::vector<std::vector<int>>& blocks) const {
    const Barrett br(p);
    std::uint64_t h = 0;
    for (const auto& block : blocks) {
        std::uint64_t s = 0;
        for (int v : block)
            s = br.add(s, iota.at(v));
        h = br.add(h, br.pow(s, k));
    }
    return h;
}

HashScheme draw_hash_scheme(std::uint64_t p, int rows, std::mt19937_64& rng, std::uint64_t seed) {
    HashScheme s;
    s.p = p;
    s.seed = seed;
    s.k = std::uniform_int_distribution<std::uint32_t>(3, 64)(rng);
    std::uniform_int_distribution<std::uint64_t> cell(0, p - 1);
    s.iota.assign(rows + 1, 0);
    for (int v = 1; v <= rows; ++v)
        s.iota[v] = cell(rng);
    return s;
}

HashVerification verify_hash_scheme(const HashScheme& scheme,
                                    std::span<const MonomialClass> domain) {
    std::vector<std::pair<std::uint64_t, std::size_t>> hashed;
    hashed.reserve(domain.size());
    for (std::size_t i = 0; i < domain.size(); ++i)
        hashed.emplace_back(scheme.hash(domain[i]), i);
    std::sort(hashed.begin(), hashed.end());
    HashVerification out;
    for (std::size_t i = 1; i < hashed.size(); ++i) {
        if (hashed[i].first == hashed[i - 1].first) {
            out.ok = false;
            out.collisions.push_back(
                {domain[hashed[i - 1].second], domain[hashed[i].second], hashed[i].first});
        }
    }
    return out;
}

double expected_ambiguous(double domain_size, double cells) {
    if (domain_size <= 1)
        return 0.0;
    return domain_size * (1.0 - std::exp(-(domain_size - 1.0) / cells));
}

namespace {

constexpr std::uint64_t kMaxHashPrime = (std::uint64_t{1} << 31) - 1;

std::pair<std::uint64_t, std::uint64_t> prime_window(std::uint64_t domain, std::uint64_t max_cells) {
    const double sq = static_cast<double>(domain) * static_cast<double>(domain);
    const double cap = static_cast<double>(std::min(max_cells, kMaxHashPrime));
    auto lo = static_cast<std::uint64_t>(std::min(4.0 * sq, cap / 2));
    auto hi = static_cast<std::uint64_t>(std::min(8.0 * sq, cap));
    lo = std::max<std::uint64_t>(lo, 5);
    hi = std::max(hi, 2 * lo);
    return {lo, hi};
}

std::size_t count_ambiguous(const std::vector<std::uint64_t>& hashes) {
    std::vector<std::uint64_t> sorted(hashes);
    std::sort(sorted.begin(), sorted.end());
    std::size_t amb = 0;
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i])
            ++j;
        if (j - i > 1)
            amb += j - i;
        i = j;
    }
    return amb;
}

}  // namespace

int estimate_chain_depth(std::uint64_t domain_size, std::uint64_t max_cells) {
    double remaining = static_cast<double>(domain_size);
    int depth = 0;
    while (remaining >= 1.0 && depth < 16) {
        ++depth;
        auto [lo, hi] = prime_window(static_cast<std::uint64_t>(remaining), max_cells);
        remaining = expected_ambiguous(remaining, static_cast<double>(lo + hi) / 2);
        if (remaining < 0.5)
            break;
    }
    return depth;
}

HashChain::HashChain(HashScheme scheme, std::span<const MonomialClass> domain) {
    auto check = verify_hash_scheme(scheme, domain);
    if (!check.ok)
        throw HashOverflow("hash scheme is not injective on the domain (" +
                           std::to_string(check.collisions.size()) + " collisions)");
    levels_.push_back(std::move(scheme));
    ambiguous_.emplace_back();
    level_domain_.push_back(domain.size());
}

HashChain HashChain::build(std::span<const MonomialClass> domain, int rows, std::uint64_t seed,
                           const HashChainOptions& options) {
    HashChain chain;
    std::vector<std::size_t> current(domain.size());
    for (std::size_t i = 0; i < current.size(); ++i)
        current[i] = i;
    for (int level = 0; level < options.max_depth; ++level) {
        const std::uint64_t level_seed = mix_seed(seed, static_cast<std::uint64_t>(level));
        std::mt19937_64 rng(level_seed);
        auto [lo, hi] = prime_window(current.size(), options.max_cells);

        HashScheme best;
        std::vector<std::uint64_t> best_hashes;
        std::size_t best_amb = static_cast<std::size_t>(-1);
        for (int attempt = 0; attempt < options.draws_per_level; ++attempt) {
            std::uint64_t p = random_prime(lo, hi, rng);
            HashScheme s = draw_hash_scheme(p, rows, rng, level_seed);
            std::vector<std::uint64_t> hashes(current.size());
            for (std::size_t i = 0; i < current.size(); ++i)
                hashes[i] = s.hash(domain[current[i]]);
            std::size_t amb = count_ambiguous(hashes);
            if (amb < best_amb) {
                best_amb = amb;
                best = std::move(s);
                best_hashes = std::move(hashes);
            }
            if (amb == 0)
                break;
        }

        chain.level_domain_.push_back(current.size());
        std::vector<std::uint64_t> bits;
        std::vector<std::size_t> next;
        if (best_amb > 0) {
            std::vector<std::uint64_t> sorted(best_hashes);
            std::sort(sorted.begin(), sorted.end());
            bits.assign(best.p / 64 + 1, 0);
            for (std::size_t i = 1; i < sorted.size(); ++i)
                if (sorted[i] == sorted[i - 1])
                    bits[sorted[i] >> 6] |= std::uint64_t{1} << (sorted[i] & 63);
            for (std::size_t i = 0; i < current.size(); ++i)
                if ((bits[best_hashes[i] >> 6] >> (best_hashes[i] & 63)) & 1u)
                    next.push_back(current[i]);
        }
        chain.levels_.push_back(std::move(best));
        chain.ambiguous_.push_back(std::move(bits));
        if (next.empty())
            return chain;
        current = std::move(next);
    }
    throw HashOverflow(std::to_string(current.size()) + " domain elements still collide after " +
                       std::to_string(options.max_depth) + " hash levels");
}

}  // namespace hwpoly
