#include "hwpoly/expander.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "hwpoly/error.hpp"
#include "hwpoly/gray_code.hpp"
#include "hwpoly/incremental_hash.hpp"

namespace hwpoly {

ColumnAssignment identity_assignment(const Partition& shape) {
    ColumnAssignment a;
    for (int m : column_lengths(shape)) {
        std::vector<int> col(m);
        for (int r = 0; r < m; ++r)
            col[r] = r + 1;
        a.columns.push_back(std::move(col));
    }
    return a;
}

MonomialClass word_class_of(const ColumnAssignment& assignment, const IsobaricTableau& tableau) {
    const auto mu = column_lengths(tableau.shape());
    if (assignment.columns.size() != mu.size())
        throw InvalidArgument("assignment does not match the tableau's columns");
    std::vector<std::vector<int>> blocks(tableau.d());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (static_cast<int>(assignment.columns[i].size()) != mu[i])
            throw InvalidArgument("assignment column length mismatch");
        for (int r = 0; r < mu[i]; ++r)
            blocks[tableau.entry(r, static_cast<int>(i)) - 1].push_back(assignment.columns[i][r]);
    }
    return MonomialClass::from_blocks(blocks);
}

int sign_of(const ColumnAssignment& assignment) {
    int sign = 1;
    for (const auto& col : assignment.columns) {
        std::vector<bool> seen(col.size() + 1, false);
        for (int v : col) {
            if (v < 1 || v > static_cast<int>(col.size()) || seen[v])
                throw InvalidArgument("assignment column is not a permutation");
            seen[v] = true;
        }
        for (std::size_t i = 0; i < col.size(); ++i)
            for (std::size_t j = i + 1; j < col.size(); ++j)
                if (col[i] > col[j])
                    sign = -sign;
    }
    return sign;
}

namespace {

// One worker's accumulation arrays, one per hash level.
class Accumulator {
public:
    Accumulator(const IsobaricTableau& tableau, const HashChain& chain)
        : tableau_(tableau), chain_(chain) {
        for (const auto& s : chain_.levels())
            acc_.emplace_back(s.p, 0);
    }

    // Sums sgn(T) over the Gray-code range with column 0 frozen at
    // `first_column_perm` (or over everything when it is -1).
    void run(long first_column_perm, const std::function<void(std::uint64_t)>& tick) {
        constexpr std::uint64_t kTickMask = (std::uint64_t{1} << 24) - 1;
        AssignmentWalker walker(tableau_.shape(), first_column_perm);
        IncrementalBlockHash primary(chain_.level(0), tableau_, walker);
        std::vector<IncrementalBlockHash> fallback;
        for (std::size_t L = 1; L < chain_.depth(); ++L)
            fallback.emplace_back(chain_.level(L), tableau_, walker);

        std::int64_t* acc0 = acc_[0].data();
        std::uint64_t steps = 0;
        AssignmentWalker::Move mv{};
        while (true) {
            const std::uint64_t h = primary.value();
            if (!chain_.ambiguous(0, h))
                acc0[h] += walker.sign();
            else
                resolve(fallback, walker.sign());
            if ((++steps & kTickMask) == 0 && tick)
                tick(kTickMask + 1);
            if (!walker.next(mv))
                break;
            primary.apply(mv, walker);
            for (auto& f : fallback)
                f.apply(mv, walker);
        }
        if (tick)
            tick(steps & kTickMask);
    }

    void merge_into(Accumulator& other) const {
        for (std::size_t L = 0; L < acc_.size(); ++L)
            for (std::size_t i = 0; i < acc_[L].size(); ++i)
                other.acc_[L][i] += acc_[L][i];
    }

    std::int64_t coefficient(const MonomialClass& m) const {
        for (std::size_t L = 0; L < chain_.depth(); ++L) {
            std::uint64_t cell = chain_.level(L).hash(m);
            if (!chain_.ambiguous(L, cell))
                return acc_[L][cell];
        }
        throw HashOverflow("monomial " + m.to_string() + " unresolved by the hash chain");
    }

private:
    void resolve(const std::vector<IncrementalBlockHash>& fallback, int sgn) {
        for (std::size_t L = 1; L < chain_.depth(); ++L) {
            const std::uint64_t h = fallback[L - 1].recompute();
            if (!chain_.ambiguous(L, h)) {
                acc_[L][h] += sgn;
                return;
            }
        }
        throw HashOverflow("assignment word unresolved by the hash chain");
    }

    const IsobaricTableau& tableau_;
    const HashChain& chain_;
    std::vector<std::vector<std::int64_t>> acc_;
};

}  // namespace

HighestWeightPolynomial expand_hwv(const IsobaricTableau& tableau, const HashChain& chain,
                                   std::span<const MonomialClass> domain,
                                   const ExpandOptions& options) {
    const Partition& shape = tableau.shape();
    const mpz_class total_big = count_assignments(shape);
    if (total_big >= mpz_class("9223372036854775807"))
        throw InvalidArgument("assignment count of " + shape.to_string() +
                              " does not fit the 64-bit accumulators");
    const std::uint64_t total = total_big.get_ui();
    if (chain.depth() == 0)
        throw InvalidArgument("empty hash chain");

    for (const auto& s : chain.levels())
        if (static_cast<int>(s.iota.size()) < shape.length() + 1)
            throw InvalidArgument("hash scheme has fewer row values than the weight");

    const auto mu = column_lengths(shape);
    const long tasks = (!mu.empty() && mu[0] >= 2)
                           ? static_cast<long>(plain_change_swaps(mu[0]).size()) + 1
                           : 1;
    unsigned workers = options.workers ? options.workers : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(tasks)));

    std::atomic<long> next_task{0};
    std::mutex progress_mutex;
    std::uint64_t done = 0;
    auto tick = [&](std::uint64_t n) {
        if (!options.progress)
            return;
        std::lock_guard lock(progress_mutex);
        done += n;
        options.progress(done, total);
    };

    std::vector<std::unique_ptr<Accumulator>> accs;
    for (unsigned w = 0; w < workers; ++w)
        accs.push_back(std::make_unique<Accumulator>(tableau, chain));
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
        try {
            while (true) {
                long task = next_task.fetch_add(1);
                if (task >= tasks)
                    break;
                accs[w]->run(tasks > 1 ? task : -1, tick);
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w)
            threads.emplace_back(work, w);
        for (auto& t : threads)
            t.join();
    }
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    for (unsigned w = 1; w < workers; ++w)
        accs[w]->merge_into(*accs[0]);

    HighestWeightPolynomial out;
    out.d = tableau.d();
    out.c = tableau.c();
    out.weight = shape;
    out.tableau = tableau.filling();
    for (const auto& s : chain.levels())
        out.hashes.push_back({s.k, s.p, s.seed});
    for (const auto& m : domain) {
        std::int64_t coeff = accs[0]->coefficient(m);
        if (coeff != 0)
            out.terms.push_back({m, coeff});
    }
    std::sort(out.terms.begin(), out.terms.end(),
              [](const HwpTerm& a, const HwpTerm& b) { return a.monomial < b.monomial; });
    return out;
}

HighestWeightPolynomial expand_hwv(const IsobaricTableau& tableau, const ExpandOptions& options) {
    const auto domain = enumerate_weight_monomials(tableau.shape(), tableau.d(), tableau.c());
    const auto chain = HashChain::build(domain, tableau.shape().length(), options.seed, options.hash);
    return expand_hwv(tableau, chain, domain, options);
}

}  // namespace hwpoly
