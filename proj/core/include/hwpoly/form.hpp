#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace hwpoly {

using Exponent = std::vector<int>;

/// A degree-c form in n variables, f = Σ g_α x^α, with exact rational
/// coefficients. Zero coefficients are never stored.
class FormSample {
public:
    FormSample() = default;
    FormSample(int n, int c);

    int n() const noexcept { return n_; }
    int c() const noexcept { return c_; }
    const std::map<Exponent, mpq_class>& coefficients() const noexcept { return coeffs_; }

    /// g_α, zero when absent.
    mpq_class coefficient(const Exponent& alpha) const;
    void set(const Exponent& alpha, const mpq_class& value);
    void add(const Exponent& alpha, const mpq_class& value);

    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_integral() const;

    /// f(Mx): every x_i replaced by Σ_j M[i][j]·x_j.
    FormSample substitute(const std::vector<std::vector<mpq_class>>& matrix) const;
    /// x_r ← t_r·x_r.
    FormSample scale(const std::vector<mpq_class>& t) const;
    /// x_r ← x_r + t·x_s (0-based r, s).
    FormSample shear(int r, int s, const mpq_class& t) const;

    bool operator==(const FormSample&) const = default;

private:
    void check(const Exponent& alpha) const;

    int n_ = 0;
    int c_ = 0;
    std::map<Exponent, mpq_class> coeffs_;
};

/// All exponent vectors of degree c in n variables, x_1^c first.
std::vector<Exponent> exponents_of_degree(int n, int c);

/// c! / ∏ α_r!
mpz_class multinomial(const Exponent& alpha);

void write_form(std::ostream& os, const FormSample& f);
FormSample read_form(std::istream& is, const std::string& source = "<stream>");
FormSample read_form_file(const std::filesystem::path& path);

}  // namespace hwpoly
