#include "hwpoly/evaluation.hpp"

#include <map>

#include "hwpoly/error.hpp"
#include "hwpoly/modular.hpp"

namespace hwpoly {

namespace {

mpz_class factorial(int n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Exponent block_exponent(std::span<const std::uint8_t> block, int n) {
    Exponent alpha(n, 0);
    for (auto v : block) {
        if (v < 1 || v > n)
            throw InvalidArgument("block entry " + std::to_string(v) + " outside 1.." + std::to_string(n));
        ++alpha[v - 1];
    }
    return alpha;
}

}  // namespace

mpq_class block_coordinate(std::span<const std::uint8_t> block, const FormSample& f) {
    if (static_cast<int>(block.size()) != f.c())
        throw InvalidArgument("block size differs from the form degree");
    auto alpha = block_exponent(block, f.n());
    mpq_class v = f.coefficient(alpha);
    v /= mpq_class(multinomial(alpha));
    return v;
}

HwpEvaluator::HwpEvaluator(const HighestWeightPolynomial& hwp)
    : d_(hwp.d), c_(hwp.c), rows_(hwp.weight.length()) {
    std::map<Exponent, std::uint32_t> index;
    coeffs_.reserve(hwp.terms.size());
    ids_.reserve(hwp.terms.size() * static_cast<std::size_t>(d_));
    for (const auto& t : hwp.terms) {
        coeffs_.push_back(t.coeff);
        for (int i = 0; i < d_; ++i) {
            auto alpha = block_exponent(t.monomial.block(i), rows_);
            auto [it, fresh] = index.try_emplace(alpha, static_cast<std::uint32_t>(blocks_.size()));
            if (fresh) {
                mpz_class s = 1;
                for (int a : alpha)
                    s *= factorial(a);
                blocks_.push_back(alpha);
                scale_.push_back(s);
            }
            ids_.push_back(it->second);
        }
    }
}

void HwpEvaluator::check(const FormSample& f) const {
    if (f.c() != c_)
        throw InvalidArgument("form degree " + std::to_string(f.c()) + " differs from c=" + std::to_string(c_));
    if (f.n() < rows_)
        throw InvalidArgument("form has " + std::to_string(f.n()) + " variables, weight needs " +
                              std::to_string(rows_));
}

mpq_class HwpEvaluator::exact(const FormSample& f) const {
    check(f);
    // With D the common denominator of f, D·f is integral and each block
    // coordinate of D·f is (D g_α ∏α_r!) / c!. The sum is then an integer
    // divided by (D·c!)^d.
    mpz_class den = 1;
    for (const auto& [alpha, g] : f.coefficients())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), g.get_den_mpz_t());
    std::vector<mpz_class> value(blocks_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        Exponent alpha(blocks_[b]);
        alpha.resize(f.n(), 0);
        mpq_class g = f.coefficient(alpha) * den;
        value[b] = g.get_num() * scale_[b];
    }
    mpz_class total = 0, prod;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        const auto* id = ids_.data() + t * d_;
        prod = static_cast<long>(coeffs_[t]);
        for (int i = 0; i < d_ && prod != 0; ++i)
            prod *= value[id[i]];
        total += prod;
    }
    mpz_class denom = den * factorial(c_);
    mpz_pow_ui(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<unsigned long>(d_));
    mpq_class result(total, denom);
    result.canonicalize();
    return result;
}

std::uint64_t HwpEvaluator::mod(const FormSample& f, std::uint64_t q) const {
    check(f);
    if (q <= static_cast<std::uint64_t>(c_))
        throw InvalidArgument("modulus " + std::to_string(q) + " must exceed c=" + std::to_string(c_));
    if (q >= (std::uint64_t{1} << 63))
        throw InvalidArgument("modulus must be below 2^63");
    const std::uint64_t inv_cfact = modq::inv(mpz_class(factorial(c_) % q).get_ui(), q);
    auto reduce = [q](const mpz_class& z) {
        mpz_class r = z % q;
        if (r < 0)
            r += q;
        return static_cast<std::uint64_t>(r.get_ui());
    };
    std::vector<std::uint64_t> value(blocks_.size());
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        Exponent alpha(blocks_[b]);
        alpha.resize(f.n(), 0);
        mpq_class g = f.coefficient(alpha);
        const std::uint64_t den = reduce(g.get_den());
        if (den == 0)
            throw InvalidArgument("form coefficient denominator divisible by the modulus");
        std::uint64_t v = modq::mul(reduce(g.get_num()), modq::inv(den, q), q);
        v = modq::mul(v, reduce(scale_[b]), q);
        value[b] = modq::mul(v, inv_cfact, q);
    }
    std::uint64_t total = 0;
    for (std::size_t t = 0; t < coeffs_.size(); ++t) {
        const auto* id = ids_.data() + t * d_;
        std::uint64_t prod = modq::from_signed(coeffs_[t], q);
        for (int i = 0; i < d_ && prod != 0; ++i)
            prod = modq::mul(prod, value[id[i]], q);
        total = modq::add(total, prod, q);
    }
    return total;
}

mpq_class evaluate_hwp(const HighestWeightPolynomial& hwp, const FormSample& f) {
    return HwpEvaluator(hwp).exact(f);
}

std::uint64_t evaluate_hwp_mod(const HighestWeightPolynomial& hwp, const FormSample& f, std::uint64_t q) {
    return HwpEvaluator(hwp).mod(f, q);
}

}  // namespace hwpoly
