#include "hwpoly/family.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>

#include "hwpoly/error.hpp"
#include "hwpoly/linalg.hpp"
#include "hwpoly/modular.hpp"
#include "text.hpp"

namespace hwpoly {

namespace {

// Forward-mode derivative: a + b·ε with ε² = 0.
struct Dual {
    mpz_class a, b;
    Dual() = default;
    Dual(long v) : a(v) {}
    Dual(mpz_class x, mpz_class dx = 0) : a(std::move(x)), b(std::move(dx)) {}

    Dual& operator+=(const Dual& o) {
        a += o.a;
        b += o.b;
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        a -= o.a;
        b -= o.b;
        return *this;
    }
    friend Dual operator+(Dual x, const Dual& y) { return x += y; }
    friend Dual operator-(Dual x, const Dual& y) { return x -= y; }
    friend Dual operator*(const Dual& x, const Dual& y) { return Dual(x.a * y.a, x.a * y.b + x.b * y.a); }
    friend Dual operator-(const Dual& x) { return Dual(-x.a, -x.b); }
    bool is_zero() const { return a == 0 && b == 0; }
};

bool is_zero(const mpz_class& x) { return x == 0; }
bool is_zero(const Dual& x) { return x.is_zero(); }

template <class R>
using Poly = std::map<Exponent, R>;

template <class R>
Poly<R> poly_mul(const Poly<R>& x, const Poly<R>& y) {
    Poly<R> out;
    for (const auto& [ex, cx] : x)
        for (const auto& [ey, cy] : y) {
            Exponent e(ex.size());
            for (std::size_t i = 0; i < e.size(); ++i)
                e[i] = ex[i] + ey[i];
            out[e] += cx * cy;
        }
    std::erase_if(out, [](const auto& kv) { return is_zero(kv.second); });
    return out;
}

template <class R>
void poly_add(Poly<R>& acc, const Poly<R>& x, bool negate) {
    for (const auto& [e, v] : x) {
        auto& slot = acc[e];
        if (negate)
            slot -= v;
        else
            slot += v;
        if (is_zero(slot))
            acc.erase(e);
    }
}

template <class R>
using PolyMatrix = std::vector<std::vector<Poly<R>>>;

// Laplace expansion along successive rows, memoized on the set of columns
// still available.
template <class R>
Poly<R> det_cofactor(const PolyMatrix<R>& a, int n) {
    const int m = static_cast<int>(a.size());
    std::vector<Poly<R>> memo(std::size_t{1} << m);
    std::vector<bool> have(memo.size(), false);
    auto rec = [&](auto&& self, unsigned mask) -> const Poly<R>& {
        if (have[mask])
            return memo[mask];
        const int row = m - std::popcount(mask);
        Poly<R> acc;
        if (mask == 0) {
            acc[Exponent(n, 0)] = R(1);
        } else {
            int sign_pos = 0;
            for (int col = 0; col < m; ++col) {
                if (!(mask & (1u << col)))
                    continue;
                if (!a[row][col].empty()) {
                    const auto& minor = self(self, mask & ~(1u << col));
                    poly_add(acc, poly_mul(a[row][col], minor), sign_pos % 2 == 1);
                }
                ++sign_pos;
            }
        }
        have[mask] = true;
        memo[mask] = std::move(acc);
        return memo[mask];
    };
    return rec(rec, (1u << m) - 1);
}

template <class R>
Poly<R> det_leibniz(const PolyMatrix<R>& a, int n) {
    const int m = static_cast<int>(a.size());
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    Poly<R> acc;
    do {
        int inversions = 0;
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (perm[i] > perm[j])
                    ++inversions;
        Poly<R> prod{{Exponent(n, 0), R(1)}};
        for (int i = 0; i < m && !prod.empty(); ++i)
            prod = poly_mul(prod, a[i][perm[i]]);
        poly_add(acc, prod, inversions % 2 == 1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return acc;
}

// Σ_i x_i A_i with A_i given as entry accessors.
template <class R, class Entry>
PolyMatrix<R> pencil(int m, int n, Entry entry) {
    PolyMatrix<R> out(m, std::vector<Poly<R>>(m));
    for (int r = 0; r < m; ++r)
        for (int s = 0; s < m; ++s)
            for (int i = 0; i < n; ++i) {
                R v = entry(i, r, s);
                if (is_zero(v))
                    continue;
                Exponent e(n, 0);
                e[i] = 1;
                out[r][s][e] = v;
            }
    return out;
}

template <class R>
std::vector<R> poly_to_dense(const Poly<R>& p, int n, int c) {
    auto exps = exponents_of_degree(n, c);
    std::vector<R> out(exps.size());
    for (std::size_t i = 0; i < exps.size(); ++i) {
        auto it = p.find(exps[i]);
        if (it != p.end())
            out[i] = it->second;
    }
    return out;
}

int symmetric_index(int m, int r, int s) {
    if (r > s)
        std::swap(r, s);
    // row-major upper triangle
    return r * m - r * (r - 1) / 2 + (s - r);
}

}  // namespace

FormSample pencil_determinant(const std::vector<IntMatrix>& A, DetMethod method) {
    const int n = static_cast<int>(A.size());
    if (n == 0)
        throw InvalidArgument("pencil needs at least one matrix");
    const int m = static_cast<int>(A[0].size());
    for (const auto& M : A) {
        if (static_cast<int>(M.size()) != m)
            throw InvalidArgument("pencil matrices differ in size");
        for (const auto& row : M)
            if (static_cast<int>(row.size()) != m)
                throw InvalidArgument("pencil matrix is not square");
    }
    if (m < 1 || (method == DetMethod::cofactor && m > 6) || (method == DetMethod::leibniz && m > 4))
        throw InvalidArgument("unsupported matrix size " + std::to_string(m));
    auto mat = pencil<mpz_class>(m, n, [&](int i, int r, int s) { return A[i][r][s]; });
    auto det = method == DetMethod::cofactor ? det_cofactor(mat, n) : det_leibniz(mat, n);
    FormSample f(n, m);
    for (const auto& [e, v] : det)
        f.set(e, mpq_class(v));
    return f;
}

Family Family::symmetroid(int m, int n) {
    if (m < 1 || m > 6)
        throw InvalidArgument("symmetroid matrix size must be in 1..6");
    if (n < 1)
        throw InvalidArgument("need at least one variable");
    Family f;
    f.kind_ = Kind::symmetroid;
    f.n_ = n;
    f.c_ = m;
    f.m_ = m;
    f.params_ = n * m * (m + 1) / 2;
    return f;
}

Family Family::veronese(int n, int c) {
    if (n < 1 || c < 1)
        throw InvalidArgument("veronese needs n >= 1 and c >= 1");
    Family f;
    f.kind_ = Kind::veronese;
    f.n_ = n;
    f.c_ = c;
    f.params_ = n;
    return f;
}

Family Family::generic(int n, int c, int params, std::vector<GenericComponent> components) {
    if (n < 1 || c < 1 || params < 1)
        throw InvalidArgument("generic family needs n, c, params >= 1");
    int degree = -1;
    std::map<Exponent, bool> seen;
    for (const auto& comp : components) {
        FormSample probe(n, c);
        probe.set(comp.alpha, 1);  // validates the exponent
        if (seen.contains(comp.alpha))
            throw InvalidArgument("coordinate listed twice");
        seen[comp.alpha] = true;
        for (const auto& t : comp.terms) {
            if (static_cast<int>(t.exponents.size()) != params)
                throw InvalidArgument("parameter monomial has wrong arity");
            int deg = 0;
            for (int e : t.exponents) {
                if (e < 0)
                    throw InvalidArgument("negative parameter exponent");
                deg += e;
            }
            if (degree >= 0 && deg != degree)
                throw InvalidArgument("components are not homogeneous of one degree (" + std::to_string(degree) +
                                      " and " + std::to_string(deg) + ")");
            degree = deg;
        }
    }
    Family f;
    f.kind_ = Kind::generic;
    f.n_ = n;
    f.c_ = c;
    f.params_ = params;
    f.components_ = std::move(components);
    return f;
}

std::string Family::name() const {
    switch (kind_) {
    case Kind::symmetroid:
        return "symmetroid:" + std::to_string(m_);
    case Kind::veronese:
        return "veronese";
    case Kind::generic:
        return "generic:" + source_;
    }
    return {};
}

Family Family::from_spec(const std::string& spec, int n, int c) {
    if (spec.rfind("symmetroid:", 0) == 0) {
        int m = 0;
        try {
            m = std::stoi(spec.substr(11));
        } catch (const std::exception&) {
            throw InvalidArgument("bad family '" + spec + "'");
        }
        if (c > 0 && c != m)
            throw InvalidArgument("symmetroid:" + std::to_string(m) + " has degree " + std::to_string(m) +
                                  ", not " + std::to_string(c));
        return symmetroid(m, n);
    }
    if (spec == "veronese") {
        if (c < 1)
            throw InvalidArgument("veronese needs a degree c");
        return veronese(n, c);
    }
    if (spec.rfind("generic:", 0) == 0) {
        auto f = read_generic_family_file(spec.substr(8));
        if (f.n() != n)
            throw InvalidArgument("family file has n=" + std::to_string(f.n()) + ", expected " + std::to_string(n));
        if (c > 0 && f.c() != c)
            throw InvalidArgument("family file has c=" + std::to_string(f.c()) + ", expected " + std::to_string(c));
        f.source_ = spec.substr(8);
        return f;
    }
    throw InvalidArgument("unknown family '" + spec + "'");
}

template <class R>
std::vector<R> Family::evaluate_in(const std::vector<R>& p) const {
    if (static_cast<int>(p.size()) != params_)
        throw InvalidArgument("expected " + std::to_string(params_) + " parameters");
    switch (kind_) {
    case Kind::symmetroid: {
        const int per = m_ * (m_ + 1) / 2;
        auto mat = pencil<R>(m_, n_, [&](int i, int r, int s) { return p[i * per + symmetric_index(m_, r, s)]; });
        return poly_to_dense(det_cofactor(mat, n_), n_, c_);
    }
    case Kind::veronese: {
        auto exps = exponents_of_degree(n_, c_);
        std::vector<R> out;
        out.reserve(exps.size());
        for (const auto& alpha : exps) {
            R v(multinomial(alpha));
            for (int i = 0; i < n_; ++i)
                for (int k = 0; k < alpha[i]; ++k)
                    v = v * p[i];
            out.push_back(std::move(v));
        }
        return out;
    }
    case Kind::generic: {
        auto exps = exponents_of_degree(n_, c_);
        std::vector<R> out(exps.size());
        for (const auto& comp : components_) {
            auto pos = std::lower_bound(exps.begin(), exps.end(), comp.alpha, std::greater<>()) - exps.begin();
            R acc(0);
            for (const auto& t : comp.terms) {
                R v(t.coeff);
                for (int i = 0; i < params_; ++i)
                    for (int k = 0; k < t.exponents[i]; ++k)
                        v = v * p[i];
                acc += v;
            }
            out[pos] = std::move(acc);
        }
        return out;
    }
    }
    return {};
}

FormSample Family::evaluate(const std::vector<mpz_class>& params) const {
    auto values = evaluate_in(params);
    auto exps = exponents_of_degree(n_, c_);
    FormSample f(n_, c_);
    for (std::size_t i = 0; i < exps.size(); ++i)
        f.set(exps[i], mpq_class(values[i]));
    return f;
}

IntMatrix Family::jacobian(const std::vector<mpz_class>& params) const {
    IntMatrix rows;
    rows.reserve(params_);
    std::vector<Dual> p(params.begin(), params.end());
    for (int j = 0; j < params_; ++j) {
        p[j].b = 1;
        auto values = evaluate_in(p);
        p[j].b = 0;
        std::vector<mpz_class> row;
        row.reserve(values.size());
        for (auto& v : values)
            row.push_back(std::move(v.b));
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<mpz_class> Family::draw_parameters(std::mt19937_64& rng, int height) const {
    if (height < 1)
        throw InvalidArgument("height must be at least 1");
    std::uniform_int_distribution<long> dist(-height, height);
    std::vector<mpz_class> p;
    p.reserve(params_);
    for (int i = 0; i < params_; ++i)
        p.emplace_back(dist(rng));
    return p;
}

FormSample Family::sample(std::mt19937_64& rng, int height) const {
    for (int attempt = 0; attempt < 100; ++attempt) {
        auto f = evaluate(draw_parameters(rng, height));
        if (!f.is_zero())
            return f;
    }
    throw Unstable("family " + name() + " produced only zero forms in 100 draws");
}

std::size_t jacobian_rank(const Family& family, std::mt19937_64& rng, int height) {
    auto reduce = [](const IntMatrix& m, std::uint64_t q) {
        ModMatrix out(m.size());
        for (std::size_t i = 0; i < m.size(); ++i)
            for (const auto& x : m[i]) {
                mpz_class r = x % q;
                if (r < 0)
                    r += q;
                out[i].push_back(r.get_ui());
            }
        return out;
    };
    long previous = -1;
    for (int attempt = 0; attempt < 8; ++attempt) {
        auto J = family.jacobian(family.draw_parameters(rng, height));
        const auto ra = rank_mod(reduce(J, kPrimeA), kPrimeA);
        const auto rb = rank_mod(reduce(J, kPrimeB), kPrimeB);
        // a rank drop mod one prime only means that prime divides a minor
        const long r = static_cast<long>(std::max(ra, rb));
        if (r == previous)
            return static_cast<std::size_t>(r);
        previous = r;
    }
    throw Unstable("Jacobian rank did not stabilize for " + family.name());
}

Family read_generic_family(std::istream& is, const std::string& source) {
    std::string line;
    std::size_t lineno = 0;
    int n = 0, c = 0, params = 0;
    bool header = false;
    std::vector<GenericComponent> comps;
    while (std::getline(is, line)) {
        ++lineno;
        auto text = detail::trim(line);
        if (text.empty())
            continue;
        if (!header) {
            auto f = detail::split_ws(text);
            if (f.size() != 5 || f[0] != "#family" || f[1] != "generic")
                throw ParseError(source, lineno, "expected '#family generic n=<n> c=<c> params=<a>'");
            n = detail::parse_key_int(f[2], "n", source, lineno);
            c = detail::parse_key_int(f[3], "c", source, lineno);
            params = detail::parse_key_int(f[4], "params", source, lineno);
            if (n < 1 || c < 1 || params < 1)
                throw ParseError(source, lineno, "n, c and params must be positive");
            header = true;
            continue;
        }
        auto colon = text.find(':');
        if (colon == std::string_view::npos)
            throw ParseError(source, lineno, "expected '<exponent> : <polynomial>'");
        GenericComponent comp;
        for (auto part : detail::split(detail::trim(text.substr(0, colon)), ','))
            comp.alpha.push_back(detail::parse_int(part, source, lineno));

        std::string poly;
        for (char ch : text.substr(colon + 1))
            if (ch != ' ' && ch != '\t')
                poly += ch;
        if (poly.empty())
            throw ParseError(source, lineno, "empty polynomial");
        // split into signed terms
        std::vector<std::string> terms;
        std::string cur;
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const char ch = poly[i];
            if ((ch == '+' || ch == '-') && i > 0 && std::string_view("^*+-").find(poly[i - 1]) == std::string_view::npos) {
                terms.push_back(cur);
                cur.clear();
                if (ch == '-')
                    cur += '-';
                continue;
            }
            cur += ch;
        }
        terms.push_back(cur);
        for (const auto& term : terms) {
            ParamTerm pt{1, std::vector<int>(params, 0)};
            std::string_view body = term;
            if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
                if (body[0] == '-')
                    pt.coeff = -1;
                body.remove_prefix(1);
            }
            if (body.empty())
                throw ParseError(source, lineno, "empty term");
            for (auto factor : detail::split(body, '*')) {
                if (factor.empty())
                    throw ParseError(source, lineno, "empty factor");
                if (factor[0] == 'p') {
                    auto caret = factor.find('^');
                    const int idx = detail::parse_int(factor.substr(1, caret == std::string_view::npos
                                                                           ? std::string_view::npos
                                                                           : caret - 1),
                                                      source, lineno);
                    const int e = caret == std::string_view::npos
                                      ? 1
                                      : detail::parse_int(factor.substr(caret + 1), source, lineno);
                    if (idx < 1 || idx > params)
                        throw ParseError(source, lineno, "parameter index out of range");
                    if (e < 0)
                        throw ParseError(source, lineno, "negative exponent");
                    pt.exponents[idx - 1] += e;
                } else {
                    mpz_class v;
                    if (v.set_str(std::string(factor), 10) != 0)
                        throw ParseError(source, lineno, "bad factor '" + std::string(factor) + "'");
                    pt.coeff *= v;
                }
            }
            if (pt.coeff != 0)
                comp.terms.push_back(std::move(pt));
        }
        comps.push_back(std::move(comp));
    }
    if (!header)
        throw ParseError(source, lineno, "missing '#family' header");
    try {
        return Family::generic(n, c, params, std::move(comps));
    } catch (const InvalidArgument& e) {
        throw ParseError(source, lineno, e.what());
    }
}

Family read_generic_family_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open " + path.string());
    return read_generic_family(in, path.string());
}

}  // namespace hwpoly
