#include "hwpoly/form.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hwpoly/error.hpp"
#include "text.hpp"

namespace hwpoly {

FormSample::FormSample(int n, int c) : n_(n), c_(c) {
    if (n < 1 || c < 1)
        throw InvalidArgument("form needs n >= 1 and c >= 1");
}

void FormSample::check(const Exponent& alpha) const {
    if (static_cast<int>(alpha.size()) != n_)
        throw InvalidArgument("exponent has " + std::to_string(alpha.size()) + " entries, expected " +
                              std::to_string(n_));
    int total = 0;
    for (int a : alpha) {
        if (a < 0)
            throw InvalidArgument("negative exponent");
        total += a;
    }
    if (total != c_)
        throw InvalidArgument("exponent of degree " + std::to_string(total) + " in a form of degree " +
                              std::to_string(c_));
}

mpq_class FormSample::coefficient(const Exponent& alpha) const {
    auto it = coeffs_.find(alpha);
    return it == coeffs_.end() ? mpq_class(0) : it->second;
}

void FormSample::set(const Exponent& alpha, const mpq_class& value) {
    check(alpha);
    if (value == 0)
        coeffs_.erase(alpha);
    else
        coeffs_[alpha] = value;
}

void FormSample::add(const Exponent& alpha, const mpq_class& value) {
    check(alpha);
    if (value == 0)
        return;
    auto [it, fresh] = coeffs_.try_emplace(alpha, value);
    if (!fresh) {
        it->second += value;
        if (it->second == 0)
            coeffs_.erase(it);
    }
}

bool FormSample::is_integral() const {
    for (const auto& [alpha, g] : coeffs_)
        if (g.get_den() != 1)
            return false;
    return true;
}

namespace {

using Sparse = std::map<Exponent, mpq_class>;

Sparse multiply(const Sparse& a, const Sparse& b) {
    Sparse out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            Exponent e(ea.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ea[i] + eb[i];
            out[e] += ca * cb;
        }
    std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
    return out;
}

}  // namespace

FormSample FormSample::substitute(const std::vector<std::vector<mpq_class>>& matrix) const {
    if (static_cast<int>(matrix.size()) != n_)
        throw InvalidArgument("substitution matrix has wrong size");
    std::vector<Sparse> linear(n_);
    for (int i = 0; i < n_; ++i) {
        if (static_cast<int>(matrix[i].size()) != n_)
            throw InvalidArgument("substitution matrix has wrong size");
        for (int j = 0; j < n_; ++j)
            if (matrix[i][j] != 0) {
                Exponent e(n_, 0);
                e[j] = 1;
                linear[i][e] = matrix[i][j];
            }
    }
    FormSample out(n_, c_);
    for (const auto& [alpha, g] : coeffs_) {
        Sparse term{{Exponent(n_, 0), g}};
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < alpha[i]; ++k)
                term = multiply(term, linear[i]);
        for (const auto& [e, v] : term)
            out.add(e, v);
    }
    return out;
}

FormSample FormSample::scale(const std::vector<mpq_class>& t) const {
    if (static_cast<int>(t.size()) != n_)
        throw InvalidArgument("scaling vector has wrong size");
    FormSample out(n_, c_);
    for (const auto& [alpha, g] : coeffs_) {
        mpq_class v = g;
        for (int i = 0; i < n_; ++i)
            for (int k = 0; k < alpha[i]; ++k)
                v *= t[i];
        out.set(alpha, v);
    }
    return out;
}

FormSample FormSample::shear(int r, int s, const mpq_class& t) const {
    if (r < 0 || s < 0 || r >= n_ || s >= n_ || r == s)
        throw InvalidArgument("shear needs two distinct variables");
    std::vector<std::vector<mpq_class>> m(n_, std::vector<mpq_class>(n_, 0));
    for (int i = 0; i < n_; ++i)
        m[i][i] = 1;
    m[r][s] = t;
    return substitute(m);
}

std::vector<Exponent> exponents_of_degree(int n, int c) {
    std::vector<Exponent> out;
    Exponent e(n, 0);
    // descending lex: recursive fill from the first variable
    auto rec = [&](auto&& self, int i, int left) -> void {
        if (i == n - 1) {
            e[i] = left;
            out.push_back(e);
            return;
        }
        for (int a = left; a >= 0; --a) {
            e[i] = a;
            self(self, i + 1, left - a);
        }
    };
    if (n > 0)
        rec(rec, 0, c);
    return out;
}

mpz_class multinomial(const Exponent& alpha) {
    mpz_class result = 1;
    unsigned long total = 0;
    for (int a : alpha) {
        for (int k = 1; k <= a; ++k) {
            ++total;
            result *= total;
            result /= k;
        }
    }
    return result;
}

void write_form(std::ostream& os, const FormSample& f) {
    os << "#form n=" << f.n() << " c=" << f.c() << '\n';
    for (const auto& [alpha, g] : f.coefficients()) {
        for (std::size_t i = 0; i < alpha.size(); ++i)
            os << (i ? "," : "") << alpha[i];
        os << ' ' << g.get_str() << '\n';
    }
}

FormSample read_form(std::istream& is, const std::string& source) {
    std::string line;
    std::size_t lineno = 0;
    FormSample f;
    bool header = false;
    while (std::getline(is, line)) {
        ++lineno;
        auto text = detail::trim(line);
        if (text.empty())
            continue;
        if (!header) {
            auto fields = detail::split_ws(text);
            if (fields.size() != 3 || fields[0] != "#form")
                throw ParseError(source, lineno, "expected '#form n=<n> c=<c>'");
            int n = detail::parse_key_int(fields[1], "n", source, lineno);
            int c = detail::parse_key_int(fields[2], "c", source, lineno);
            try {
                f = FormSample(n, c);
            } catch (const Error& e) {
                throw ParseError(source, lineno, e.what());
            }
            header = true;
            continue;
        }
        if (text.front() == '#')
            throw ParseError(source, lineno, "unexpected directive");
        auto fields = detail::split_ws(text);
        if (fields.size() != 2)
            throw ParseError(source, lineno, "expected '<exponent> <coefficient>'");
        Exponent alpha;
        for (auto part : detail::split(fields[0], ','))
            alpha.push_back(detail::parse_int(part, source, lineno));
        mpq_class value;
        if (value.set_str(std::string(fields[1]), 10) != 0 || value.get_den() == 0)
            throw ParseError(source, lineno, "bad coefficient '" + std::string(fields[1]) + "'");
        value.canonicalize();
        if (f.coefficients().contains(alpha))
            throw ParseError(source, lineno, "repeated exponent");
        try {
            f.set(alpha, value);
        } catch (const Error& e) {
            throw ParseError(source, lineno, e.what());
        }
    }
    if (!header)
        throw ParseError(source, lineno, "missing '#form' header");
    return f;
}

FormSample read_form_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open " + path.string());
    return read_form(in, path.string());
}

}  // namespace hwpoly
