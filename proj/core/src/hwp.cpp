#include "hwpoly/hwp.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "hwpoly/error.hpp"

namespace hwpoly {

std::optional<std::size_t> find_content_violation(const HighestWeightPolynomial& hwp) {
    const auto& want = hwp.weight.parts();
    const int rows = hwp.weight.length();
    for (std::size_t i = 0; i < hwp.terms.size(); ++i) {
        const auto& m = hwp.terms[i].monomial;
        if (m.d() != hwp.d || m.c() != hwp.c)
            return i;
        std::vector<int> got(rows, 0);
        bool ok = true;
        for (auto v : m.entries()) {
            if (v > rows) {
                ok = false;
                break;
            }
            ++got[v - 1];
        }
        if (!ok || got != want)
            return i;
    }
    return std::nullopt;
}

namespace {

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(v[i]);
    }
    return s;
}

template <class T>
T parse_number(std::string_view tok, const std::string& source, std::size_t line) {
    T value{};
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(source, line, "bad number '" + std::string(tok) + "'");
    return value;
}

// "key=value" fields after the tag
std::map<std::string, std::string> fields(std::istringstream& in) {
    std::map<std::string, std::string> out;
    std::string tok;
    while (in >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos)
            out[tok] = "";
        else
            out[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return out;
}

}  // namespace

void write_hwp(std::ostream& os, const HighestWeightPolynomial& hwp) {
    os << "#hwp v1\n";
    os << "#params d=" << hwp.d << " c=" << hwp.c << '\n';
    os << "#weight " << hwp.weight.to_string() << '\n';
    if (!hwp.tableau.empty())
        os << "#tableau " << join(hwp.tableau) << '\n';
    if (!hwp.combo.empty()) {
        os << "#combo";
        for (const auto& [id, coeff] : hwp.combo)
            os << ' ' << id << ':' << coeff;
        os << '\n';
    }
    for (const auto& h : hwp.hashes)
        os << "#hash k=" << h.k << " p=" << h.p << " seed=" << h.seed << '\n';
    for (const auto& t : hwp.terms)
        os << t.coeff << ' ' << t.monomial.to_string() << '\n';
    os << "#terms " << hwp.terms.size() << '\n';
}

HighestWeightPolynomial read_hwp(std::istream& is, const std::string& source) {
    HighestWeightPolynomial hwp;
    std::string line;
    std::size_t lineno = 0;
    bool have_params = false, have_weight = false, done = false;

    auto need = [&](bool cond, const std::string& what) {
        if (!cond)
            throw ParseError(source, lineno, what);
    };

    if (!std::getline(is, line) || (++lineno, line != "#hwp v1"))
        throw ParseError(source, lineno == 0 ? 1 : lineno, "missing '#hwp v1' header");

    while (std::getline(is, line)) {
        ++lineno;
        need(!done, "content after #terms trailer");
        if (line.empty())
            throw ParseError(source, lineno, "empty line");
        if (line[0] == '#') {
            std::istringstream in(line);
            std::string tag;
            in >> tag;
            if (tag == "#params") {
                auto f = fields(in);
                need(f.count("d") && f.count("c"), "#params needs d= and c=");
                hwp.d = parse_number<int>(f["d"], source, lineno);
                hwp.c = parse_number<int>(f["c"], source, lineno);
                have_params = true;
            } else if (tag == "#weight") {
                std::string w;
                in >> w;
                try {
                    hwp.weight = w.empty() ? Partition() : Partition::parse(w);
                } catch (const InvalidArgument& e) {
                    throw ParseError(source, lineno, e.what());
                }
                have_weight = true;
            } else if (tag == "#tableau") {
                std::string w;
                in >> w;
                std::size_t pos = 0;
                while (pos <= w.size() && !w.empty()) {
                    auto end = w.find(',', pos);
                    if (end == std::string::npos)
                        end = w.size();
                    hwp.tableau.push_back(
                        parse_number<int>(std::string_view(w).substr(pos, end - pos), source, lineno));
                    pos = end + 1;
                }
            } else if (tag == "#combo") {
                std::string tok;
                while (in >> tok) {
                    auto colon = tok.find(':');
                    need(colon != std::string::npos, "#combo entries are id:coefficient");
                    std::string_view sv(tok);
                    hwp.combo.emplace_back(
                        parse_number<std::uint64_t>(sv.substr(0, colon), source, lineno),
                        parse_number<std::int64_t>(sv.substr(colon + 1), source, lineno));
                }
            } else if (tag == "#hash") {
                auto f = fields(in);
                need(f.count("k") && f.count("p") && f.count("seed"), "#hash needs k=, p=, seed=");
                hwp.hashes.push_back({parse_number<std::uint32_t>(f["k"], source, lineno),
                                      parse_number<std::uint64_t>(f["p"], source, lineno),
                                      parse_number<std::uint64_t>(f["seed"], source, lineno)});
            } else if (tag == "#terms") {
                std::string n;
                in >> n;
                auto count = parse_number<std::size_t>(n, source, lineno);
                need(count == hwp.terms.size(), "#terms says " + n + " but file has " +
                                                    std::to_string(hwp.terms.size()) + " terms");
                done = true;
            } else {
                throw ParseError(source, lineno, "unknown header '" + tag + "'");
            }
            continue;
        }
        need(have_params && have_weight, "term before #params/#weight");
        auto space = line.find(' ');
        need(space != std::string::npos, "term must be '<coefficient> <monomial>'");
        HwpTerm term;
        term.coeff = parse_number<std::int64_t>(std::string_view(line).substr(0, space), source, lineno);
        need(term.coeff != 0, "zero coefficient stored");
        try {
            term.monomial = MonomialClass::parse(std::string_view(line).substr(space + 1));
        } catch (const InvalidArgument& e) {
            throw ParseError(source, lineno, e.what());
        }
        need(term.monomial.to_string() == line.substr(space + 1), "monomial not in canonical form");
        need(term.monomial.d() == hwp.d && term.monomial.c() == hwp.c,
             "monomial shape does not match #params");
        need(hwp.terms.empty() || hwp.terms.back().monomial < term.monomial,
             "terms not strictly ascending");
        hwp.terms.push_back(std::move(term));
    }
    if (!done)
        throw ParseError(source, lineno + 1, "missing #terms trailer (truncated file?)");
    if (!have_params || !have_weight)
        throw ParseError(source, lineno, "missing #params or #weight");
    return hwp;
}

void write_hwp_file(const std::filesystem::path& path, const HighestWeightPolynomial& hwp) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error("io", "cannot open " + path.string() + " for writing");
    write_hwp(out, hwp);
    if (!out)
        throw Error("io", "write failed for " + path.string());
}

HighestWeightPolynomial read_hwp_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error("io", "cannot open " + path.string());
    return read_hwp(in, path.string());
}

HighestWeightPolynomial combine(const std::vector<const HighestWeightPolynomial*>& parts,
                                const std::vector<std::int64_t>& coefficients) {
    if (parts.empty() || parts.size() != coefficients.size())
        throw InvalidArgument("combine needs one coefficient per polynomial");
    HighestWeightPolynomial out;
    out.d = parts[0]->d;
    out.c = parts[0]->c;
    out.weight = parts[0]->weight;
    std::map<MonomialClass, __int128> acc;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = *parts[i];
        if (p.d != out.d || p.c != out.c || p.weight != out.weight)
            throw InvalidArgument("combine: polynomials of different weight or degree");
        if (coefficients[i] == 0)
            continue;
        for (const auto& t : p.terms)
            acc[t.monomial] += static_cast<__int128>(t.coeff) * coefficients[i];
    }
    for (auto& [m, v] : acc) {
        if (v == 0)
            continue;
        if (v > INT64_MAX || v < INT64_MIN)
            throw InvalidArgument("combined coefficient exceeds 64 bits");
        out.terms.push_back({m, static_cast<std::int64_t>(v)});
    }
    return out;
}

}  // namespace hwpoly
