#include "hwpoly/partition.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <ostream>

#include "hwpoly/error.hpp"

namespace hwpoly {

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (parts_[i] <= 0)
            throw InvalidArgument("partition parts must be positive");
        if (i > 0 && parts_[i] > parts_[i - 1])
            throw InvalidArgument("partition parts must be weakly decreasing");
    }
}

int Partition::size() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

std::string Partition::to_string(char sep) const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i)
            out += sep;
        out += std::to_string(parts_[i]);
    }
    return out;
}

Partition Partition::parse(std::string_view text) {
    std::vector<int> parts;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find_first_of(",-", pos);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view tok = text.substr(pos, end - pos);
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
        if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
            throw InvalidArgument("malformed partition '" + std::string(text) + "'");
        parts.push_back(value);
        pos = end + 1;
    }
    return Partition(std::move(parts));
}

std::ostream& operator<<(std::ostream& os, const Partition& p) {
    return os << '(' << p.to_string() << ')';
}

std::vector<int> column_lengths(const Partition& shape) {
    if (shape.empty())
        return {};
    std::vector<int> mu(shape[0], 0);
    for (int row : shape.parts())
        for (int i = 0; i < row; ++i)
            ++mu[i];
    return mu;
}

mpz_class irrep_dimension(const Partition& shape, int n) {
    if (shape.length() > n)
        throw InvalidArgument("weight " + shape.to_string() + " has more than " +
                              std::to_string(n) + " rows");
    const auto mu = column_lengths(shape);
    mpz_class num = 1, den = 1;
    for (int i = 0; i < shape.length(); ++i) {
        for (int j = 0; j < shape[i]; ++j) {
            int arm = shape[i] - j - 1;
            int leg = mu[j] - i - 1;
            num *= n + j - i;
            den *= arm + leg + 1;
        }
    }
    return num / den;
}

mpz_class count_assignments(const Partition& shape) {
    mpz_class total = 1;
    for (int m : column_lengths(shape)) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
        total *= f;
    }
    return total;
}

namespace {

void partitions_rec(int remaining, int max_part, int rows_left, std::vector<int>& cur,
                    std::vector<Partition>& out) {
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    if (rows_left == 0)
        return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        // the remaining rows cannot hold more than rows_left * part boxes
        if (static_cast<long>(part) * rows_left < remaining)
            break;
        cur.push_back(part);
        partitions_rec(remaining - part, part, rows_left - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<Partition> partitions_of(int total, int max_rows) {
    std::vector<Partition> out;
    std::vector<int> cur;
    if (total == 0) {
        out.emplace_back();
        return out;
    }
    partitions_rec(total, total, max_rows, cur, out);
    return out;
}

}  // namespace hwpoly
