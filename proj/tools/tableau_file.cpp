#include "tableau_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hwpoly/error.hpp"

namespace hwpoly::cli {

namespace {

int to_int(const std::string& tok, const std::string& source, std::size_t line) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size())
        throw ParseError(source, line, "bad number '" + tok + "'");
    return v;
}

int key_value(const std::string& tok, const std::string& key, const std::string& source, std::size_t line) {
    if (tok.rfind(key + "=", 0) != 0)
        throw ParseError(source, line, "expected " + key + "=<value>");
    return to_int(tok.substr(key.size() + 1), source, line);
}

}  // namespace

IsobaricTableau read_tableau(std::istream& in, const std::string& source) {
    std::string line;
    std::size_t lineno = 0;
    int d = 0, c = 0;
    bool header = false;
    std::vector<int> parts, filling;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::istringstream ls(line);
        if (!header) {
            std::string tag, a, b;
            ls >> tag >> a >> b;
            if (tag != "#tableau")
                throw ParseError(source, lineno, "expected '#tableau d=<d> c=<c>'");
            d = key_value(a, "d", source, lineno);
            c = key_value(b, "c", source, lineno);
            header = true;
            continue;
        }
        std::string tok;
        int len = 0;
        while (std::getline(ls, tok, ',')) {
            filling.push_back(to_int(tok, source, lineno));
            ++len;
        }
        parts.push_back(len);
    }
    if (!header)
        throw ParseError(source, lineno, "missing '#tableau' header");
    try {
        Partition shape(parts);
        if (!is_semistandard(shape, filling))
            throw InvalidArgument("tableau is not semistandard");
        return IsobaricTableau(shape, d, c, filling);
    } catch (const InvalidArgument& e) {
        throw ParseError(source, lineno, e.what());
    }
}

IsobaricTableau read_tableau_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw InvalidArgument("cannot open " + path.string());
    return read_tableau(in, path.string());
}

void write_tableau(std::ostream& out, const IsobaricTableau& t) {
    out << "#tableau d=" << t.d() << " c=" << t.c() << '\n';
    for (int r = 0; r < t.shape().length(); ++r) {
        for (int col = 0; col < t.shape()[r]; ++col)
            out << (col ? "," : "") << t.entry(r, col);
        out << '\n';
    }
}

}  // namespace hwpoly::cli
