#include "hwpoly/monomial.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>

#include "hwpoly/error.hpp"

namespace hwpoly {

namespace {

void canonicalize(int c, std::vector<std::uint8_t>& entries) {
    const std::size_t d = c == 0 ? 0 : entries.size() / c;
    std::vector<std::vector<std::uint8_t>> blocks(d);
    for (std::size_t i = 0; i < d; ++i) {
        blocks[i].assign(entries.begin() + i * c, entries.begin() + (i + 1) * c);
        std::sort(blocks[i].begin(), blocks[i].end());
    }
    std::sort(blocks.begin(), blocks.end());
    for (std::size_t i = 0; i < d; ++i)
        std::copy(blocks[i].begin(), blocks[i].end(), entries.begin() + i * c);
}

// All c-multisets over 1..rows in lexicographic order.
std::vector<std::vector<std::uint8_t>> all_blocks(int rows, int c) {
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<std::uint8_t> cur;
    std::function<void(int)> rec = [&](int lo) {
        if (static_cast<int>(cur.size()) == c) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v <= rows; ++v) {
            cur.push_back(static_cast<std::uint8_t>(v));
            rec(v);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

}  // namespace

MonomialClass::MonomialClass(int c, std::vector<std::uint8_t> entries)
    : c_(c), entries_(std::move(entries)) {
    if (c_ < 0 || (c_ == 0 && !entries_.empty()) || (c_ > 0 && entries_.size() % c_ != 0))
        throw InvalidArgument("monomial entries are not a whole number of blocks");
    for (auto v : entries_)
        if (v == 0)
            throw InvalidArgument("monomial row indices are 1-based");
    canonicalize(c_, entries_);
}

MonomialClass MonomialClass::from_blocks(const std::vector<std::vector<int>>& blocks) {
    if (blocks.empty())
        return {};
    const int c = static_cast<int>(blocks.front().size());
    std::vector<std::uint8_t> entries;
    for (const auto& b : blocks) {
        if (static_cast<int>(b.size()) != c)
            throw InvalidArgument("monomial blocks must have equal size");
        for (int v : b) {
            if (v < 1 || v > 255)
                throw InvalidArgument("row index out of range");
            entries.push_back(static_cast<std::uint8_t>(v));
        }
    }
    return MonomialClass(c, std::move(entries));
}

std::vector<int> MonomialClass::content(int rows) const {
    std::vector<int> out(rows, 0);
    for (auto v : entries_) {
        if (v > rows)
            throw InvalidArgument("row index exceeds weight length");
        ++out[v - 1];
    }
    return out;
}

std::string MonomialClass::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (i)
            s += (i % c_ == 0) ? ';' : ',';
        s += std::to_string(entries_[i]);
    }
    return s;
}

MonomialClass MonomialClass::parse(std::string_view text) {
    std::vector<std::vector<int>> blocks(1);
    std::size_t pos = 0;
    while (true) {
        std::size_t end = text.find_first_of(",;", pos);
        std::string_view tok = text.substr(pos, end == std::string_view::npos ? text.size() - pos
                                                                               : end - pos);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw InvalidArgument("malformed monomial '" + std::string(text) + "'");
        blocks.back().push_back(v);
        if (end == std::string_view::npos)
            break;
        if (text[end] == ';')
            blocks.emplace_back();
        pos = end + 1;
    }
    return from_blocks(blocks);
}

std::vector<MonomialClass> enumerate_weight_monomials(const Partition& weight, int d, int c) {
    if (weight.size() != d * c)
        throw InvalidArgument("weight " + weight.to_string() + " is not a partition of d*c");
    const int rows = weight.length();
    const auto blocks = all_blocks(rows, c);
    std::vector<int> remaining = weight.parts();
    std::vector<std::uint8_t> cur;
    std::vector<MonomialClass> out;
    std::function<void(std::size_t, int)> rec = [&](std::size_t first, int left) {
        if (left == 0) {
            out.emplace_back(c, cur);
            return;
        }
        for (std::size_t b = first; b < blocks.size(); ++b) {
            bool fits = true;
            for (auto v : blocks[b])
                if (--remaining[v - 1] < 0)
                    fits = false;
            if (fits) {
                cur.insert(cur.end(), blocks[b].begin(), blocks[b].end());
                rec(b, left - 1);
                cur.resize(cur.size() - c);
            }
            for (auto v : blocks[b])
                ++remaining[v - 1];
        }
    };
    if (d == 0) {
        out.emplace_back();
        return out;
    }
    rec(0, d);
    return out;
}

std::uint64_t count_weight_monomials(const std::vector<int>& content, int d, int c) {
    for (int x : content)
        if (x < 0)
            return 0;
    int total = 0;
    for (int x : content)
        total += x;
    if (total != d * c)
        return 0;
    const int rows = static_cast<int>(content.size());
    // exponent vectors of all blocks
    std::vector<std::vector<int>> exps;
    for (const auto& b : all_blocks(rows, c)) {
        std::vector<int> e(rows, 0);
        for (auto v : b)
            ++e[v - 1];
        exps.push_back(std::move(e));
    }
    std::map<std::vector<int>, std::uint64_t> memo;
    std::function<std::uint64_t(std::size_t, std::vector<int>&, int)> rec =
        [&](std::size_t idx, std::vector<int>& rem, int left) -> std::uint64_t {
        if (left == 0)
            return std::all_of(rem.begin(), rem.end(), [](int x) { return x == 0; }) ? 1 : 0;
        if (idx == exps.size())
            return 0;
        std::vector<int> key(rem);
        key.push_back(static_cast<int>(idx));
        key.push_back(left);
        if (auto it = memo.find(key); it != memo.end())
            return it->second;
        std::uint64_t sum = rec(idx + 1, rem, left);
        int taken = 0;
        while (taken < left) {
            bool ok = true;
            for (int r = 0; r < rows; ++r) {
                rem[r] -= exps[idx][r];
                ok = ok && rem[r] >= 0;
            }
            ++taken;
            if (!ok)
                break;
            sum += rec(idx + 1, rem, left - taken);
        }
        for (int r = 0; r < rows; ++r)
            rem[r] += taken * exps[idx][r];
        memo.emplace(std::move(key), sum);
        return sum;
    };
    std::vector<int> rem(content);
    return rec(0, rem, d);
}

}  // namespace hwpoly
