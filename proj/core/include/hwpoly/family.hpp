#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hwpoly/form.hpp"

namespace hwpoly {

using IntMatrix = std::vector<std::vector<mpz_class>>;

enum class DetMethod { cofactor, leibniz };

/// det(Σ_i x_i A_i) as a form of degree m in n = A.size() variables. The
/// matrices must be square of one size m. Cofactor expansion handles m <= 6,
/// Leibniz m <= 4.
FormSample pencil_determinant(const std::vector<IntMatrix>& A, DetMethod method = DetMethod::cofactor);

/// One monomial coef·∏ p_i^e_i of a parameter polynomial.
struct ParamTerm {
    mpz_class coeff;
    std::vector<int> exponents;  // one per parameter
};

/// Output coordinate α of a generic family: g_α = Σ terms.
struct GenericComponent {
    Exponent alpha;
    std::vector<ParamTerm> terms;
};

/// A polynomial map from integer parameters to degree-c forms in n
/// variables whose image is GL(n)-stable.
class Family {
public:
    enum class Kind { symmetroid, veronese, generic };

    /// det(x_1 A_1 + ... + x_n A_n) for symmetric m×m A_i.
    static Family symmetroid(int m, int n);
    /// ℓ^c for linear forms ℓ in n variables.
    static Family veronese(int n, int c);
    /// Components must be homogeneous of one common degree.
    static Family generic(int n, int c, int params, std::vector<GenericComponent> components);

    /// "symmetroid:<m>", "veronese" or "generic:<file>". `c` is used by
    /// veronese only (symmetroid forms have degree m).
    static Family from_spec(const std::string& spec, int n, int c);

    Kind kind() const noexcept { return kind_; }
    int n() const noexcept { return n_; }
    int c() const noexcept { return c_; }
    /// Symmetroid matrix size, 0 otherwise.
    int m() const noexcept { return m_; }
    int parameter_count() const noexcept { return params_; }
    std::string name() const;

    FormSample evaluate(const std::vector<mpz_class>& params) const;
    /// Derivatives of every form coefficient (columns, ordered as
    /// exponents_of_degree(n, c)) with respect to every parameter (rows).
    IntMatrix jacobian(const std::vector<mpz_class>& params) const;

    /// Parameters uniform in [-height, height]; zero forms are redrawn.
    std::vector<mpz_class> draw_parameters(std::mt19937_64& rng, int height) const;
    FormSample sample(std::mt19937_64& rng, int height = 100) const;

    const std::vector<GenericComponent>& components() const noexcept { return components_; }

private:
    template <class R>
    std::vector<R> evaluate_in(const std::vector<R>& params) const;

    Kind kind_ = Kind::veronese;
    int n_ = 0;
    int c_ = 0;
    int m_ = 0;
    int params_ = 0;
    std::vector<GenericComponent> components_;
    std::string source_;
};

Family read_generic_family(std::istream& is, const std::string& source = "<stream>");
Family read_generic_family_file(const std::filesystem::path& path);

/// Rank of the Jacobian at random parameter points, computed mod two large
/// primes; points are redrawn until two consecutive points agree.
std::size_t jacobian_rank(const Family& family, std::mt19937_64& rng, int height = 100);

}  // namespace hwpoly
