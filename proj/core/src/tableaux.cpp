#include "hwpoly/tableaux.hpp"

#include <algorithm>
#include <functional>

#include "hwpoly/error.hpp"

namespace hwpoly {

IsobaricTableau::IsobaricTableau(Partition shape, int d, int c, std::vector<int> filling)
    : shape_(std::move(shape)), d_(d), c_(c), filling_(std::move(filling)) {
    if (static_cast<int>(filling_.size()) != shape_.size())
        throw InvalidArgument("filling size does not match shape " + shape_.to_string());
    if (shape_.size() != d_ * c_)
        throw InvalidArgument("shape " + shape_.to_string() + " does not have d*c boxes");
    std::vector<int> seen(d_ + 1, 0);
    for (int v : filling_) {
        if (v < 1 || v > d_)
            throw InvalidArgument("tableau entry out of range 1.." + std::to_string(d_));
        ++seen[v];
    }
    for (int v = 1; v <= d_; ++v)
        if (seen[v] != c_)
            throw InvalidArgument("tableau is not isobaric: entry " + std::to_string(v) +
                                  " appears " + std::to_string(seen[v]) + " times");
    offsets_.resize(shape_.length());
    int off = 0;
    for (int r = 0; r < shape_.length(); ++r) {
        offsets_[r] = off;
        off += shape_[r];
    }
}

std::vector<int> IsobaricTableau::row(int r) const {
    return {filling_.begin() + offsets_[r], filling_.begin() + offsets_[r] + shape_[r]};
}

std::string IsobaricTableau::filling_string() const {
    std::string s;
    for (std::size_t i = 0; i < filling_.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(filling_[i]);
    }
    return s;
}

bool is_semistandard(const Partition& shape, const std::vector<int>& filling) {
    std::vector<int> off(shape.length() + 1, 0);
    for (int r = 0; r < shape.length(); ++r)
        off[r + 1] = off[r] + shape[r];
    for (int r = 0; r < shape.length(); ++r) {
        for (int j = 0; j < shape[r]; ++j) {
            int v = filling[off[r] + j];
            if (j > 0 && filling[off[r] + j - 1] > v)
                return false;
            if (r > 0 && filling[off[r - 1] + j] >= v)
                return false;
        }
    }
    return true;
}

PieriChain to_pieri_chain(const IsobaricTableau& t) {
    const int rows = t.shape().length();
    PieriChain chain(t.d() + 1, std::vector<int>(rows, 0));
    for (int r = 0; r < rows; ++r)
        for (int j = 0; j < t.shape()[r]; ++j)
            for (int step = t.entry(r, j); step <= t.d(); ++step)
                ++chain[step][r];
    return chain;
}

IsobaricTableau from_pieri_chain(const PieriChain& chain, int d, int c) {
    if (static_cast<int>(chain.size()) != d + 1)
        throw InvalidArgument("Pieri chain must have d+1 shapes");
    const auto& last = chain.back();
    std::vector<int> parts;
    for (int v : last)
        if (v > 0)
            parts.push_back(v);
    Partition shape(parts);
    std::vector<int> filling;
    filling.reserve(shape.size());
    for (int r = 0; r < shape.length(); ++r) {
        for (int step = 1; step <= d; ++step) {
            int added = chain[step][r] - chain[step - 1][r];
            if (added < 0)
                throw InvalidArgument("Pieri chain is not increasing");
            filling.insert(filling.end(), added, step);
        }
    }
    if (!is_semistandard(shape, filling))
        throw InvalidArgument("Pieri chain step is not a horizontal strip");
    return IsobaricTableau(std::move(shape), d, c, std::move(filling));
}

TableauCounter::TableauCounter(Partition shape, int d, int c)
    : shape_(std::move(shape)), d_(d), c_(c) {
    if (d < 0 || c < 0)
        throw InvalidArgument("d and c must be nonnegative");
    if (shape_.size() != d * c)
        throw InvalidArgument("shape " + shape_.to_string() + " has " +
                              std::to_string(shape_.size()) + " boxes, expected d*c = " +
                              std::to_string(d * c));
}

std::uint64_t TableauCounter::key(const std::vector<int>& cur) const {
    std::uint64_t k = 0;
    for (int r = 0; r < shape_.length(); ++r)
        k = k * static_cast<std::uint64_t>(shape_[r] + 1) + static_cast<std::uint64_t>(cur[r]);
    return k;
}

template <class F>
void TableauCounter::for_each_strip(const std::vector<int>& cur, F&& f) const {
    const int rows = shape_.length();
    std::vector<int> next(cur);
    // suffix capacity so hopeless branches are cut early
    std::vector<int> cap(rows + 1, 0);
    for (int r = rows - 1; r >= 0; --r) {
        int above = r > 0 ? cur[r - 1] : shape_[0];
        cap[r] = cap[r + 1] + std::max(0, std::min(shape_[r], above) - cur[r]);
    }
    std::function<void(int, int)> rec = [&](int r, int left) {
        if (r == rows) {
            if (left == 0)
                f(static_cast<const std::vector<int>&>(next));
            return;
        }
        if (cap[r] < left)
            return;
        int above = r > 0 ? cur[r - 1] : shape_[0];
        int most = std::min({shape_[r], above, cur[r] + left}) - cur[r];
        for (int a = most; a >= 0; --a) {
            next[r] = cur[r] + a;
            rec(r + 1, left - a);
        }
        next[r] = cur[r];
    };
    rec(0, c_);
}

std::uint64_t TableauCounter::completions(const std::vector<int>& cur, int step) {
    if (step == d_)
        return cur == shape_.parts() ? 1 : 0;
    const auto k = key(cur);
    if (auto it = memo_.find(k); it != memo_.end())
        return it->second;
    std::uint64_t total = 0;
    for_each_strip(cur, [&](const std::vector<int>& next) {
        std::uint64_t sub = completions(next, step + 1);
        if (__builtin_add_overflow(total, sub, &total))
            throw InvalidArgument("tableau count exceeds 64 bits");
    });
    memo_.emplace(k, total);
    return total;
}

std::uint64_t TableauCounter::count() {
    return completions(std::vector<int>(shape_.length(), 0), 0);
}

IsobaricTableau TableauCounter::unrank(std::uint64_t rank) {
    if (rank >= count())
        throw InvalidArgument("tableau rank out of range");
    PieriChain chain{std::vector<int>(shape_.length(), 0)};
    for (int step = 0; step < d_; ++step) {
        bool chosen = false;
        std::vector<int> pick;
        for_each_strip(chain.back(), [&](const std::vector<int>& next) {
            if (chosen)
                return;
            std::uint64_t sub = completions(next, step + 1);
            if (rank < sub) {
                pick = next;
                chosen = true;
            } else {
                rank -= sub;
            }
        });
        chain.push_back(std::move(pick));
    }
    return from_pieri_chain(chain, d_, c_);
}

std::uint64_t TableauCounter::rank(const IsobaricTableau& t) {
    if (t.shape() != shape_ || t.d() != d_ || t.c() != c_)
        throw InvalidArgument("tableau does not match counter parameters");
    const auto chain = to_pieri_chain(t);
    std::uint64_t r = 0;
    for (int step = 0; step < d_; ++step) {
        bool found = false;
        for_each_strip(chain[step], [&](const std::vector<int>& next) {
            if (found)
                return;
            if (next == chain[step + 1])
                found = true;
            else
                r += completions(next, step + 1);
        });
    }
    return r;
}

std::vector<IsobaricTableau> enumerate_isobaric_tableaux(const Partition& shape, int d, int c) {
    TableauCounter counter(shape, d, c);
    std::vector<IsobaricTableau> out;
    const std::uint64_t total = counter.count();
    out.reserve(total);
    for (std::uint64_t r = 0; r < total; ++r)
        out.push_back(counter.unrank(r));
    return out;
}

}  // namespace hwpoly
