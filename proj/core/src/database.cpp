#include "hwpoly/database.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <openssl/evp.h>

#include "hwpoly/error.hpp"
#include "text.hpp"

namespace hwpoly {

namespace fs = std::filesystem;

namespace {

constexpr const char* kManifestHeader = "c\td\tweight\ttableau\tterms\tsha256\tk\tp\tseed";

std::string join_hashes(const std::vector<HashRecord>& hashes, int field) {
    std::string out;
    for (std::size_t i = 0; i < hashes.size(); ++i) {
        if (i)
            out += '/';
        out += std::to_string(field == 0 ? hashes[i].k : field == 1 ? hashes[i].p : hashes[i].seed);
    }
    return out;
}

std::string hex(const unsigned char* data, std::size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        s += digits[data[i] >> 4];
        s += digits[data[i] & 15];
    }
    return s;
}

}  // namespace

std::string sha256_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DatabaseError("cannot open " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, md, &len);
    EVP_MD_CTX_free(ctx);
    return hex(md, len);
}

void write_file_atomic(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw DatabaseError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out)
            throw DatabaseError("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

Database::Database(fs::path root) : root_(std::move(root)) {
    fs::create_directories(root_);
    read_manifest();
}

fs::path Database::file_for(int c, int d, const Partition& weight, std::uint64_t id) const {
    return root_ / std::to_string(c) / std::to_string(d) / weight.to_string('-') / (std::to_string(id) + ".hwp");
}

void Database::read_manifest() {
    const auto path = root_ / "manifest.tsv";
    std::ifstream in(path);
    if (!in)
        return;
    const std::string source = path.string();
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) {
            if (line != kManifestHeader)
                throw ParseError(source, lineno, "unexpected manifest header");
            continue;
        }
        if (line.empty())
            continue;
        auto f = detail::split(line, '\t');
        if (f.size() != 9)
            throw ParseError(source, lineno, "expected 9 columns");
        ManifestEntry e;
        e.c = detail::parse_int(f[0], source, lineno);
        e.d = detail::parse_int(f[1], source, lineno);
        try {
            e.weight = Partition::parse(f[2]);
        } catch (const Error& err) {
            throw ParseError(source, lineno, err.what());
        }
        e.tableau_id = detail::parse_int<std::uint64_t>(f[3], source, lineno);
        e.terms = detail::parse_int<std::size_t>(f[4], source, lineno);
        e.sha256 = std::string(f[5]);
        auto ks = detail::split(f[6], '/'), ps = detail::split(f[7], '/'), ss = detail::split(f[8], '/');
        if (ks.size() != ps.size() || ks.size() != ss.size())
            throw ParseError(source, lineno, "hash columns disagree in length");
        if (!(ks.size() == 1 && ks[0].empty()))
            for (std::size_t i = 0; i < ks.size(); ++i)
                e.hashes.push_back({detail::parse_int<std::uint32_t>(ks[i], source, lineno),
                                    detail::parse_int<std::uint64_t>(ps[i], source, lineno),
                                    detail::parse_int<std::uint64_t>(ss[i], source, lineno)});
        entries_[e.key()] = std::move(e);
    }
}

void Database::write_manifest() const {
    std::ostringstream out;
    out << kManifestHeader << '\n';
    for (const auto& [key, e] : entries_)
        out << e.c << '\t' << e.d << '\t' << e.weight.to_string() << '\t' << e.tableau_id << '\t' << e.terms
            << '\t' << e.sha256 << '\t' << join_hashes(e.hashes, 0) << '\t' << join_hashes(e.hashes, 1) << '\t'
            << join_hashes(e.hashes, 2) << '\n';
    write_file_atomic(root_ / "manifest.tsv", out.str());
}

std::optional<ManifestEntry> Database::find(int c, int d, const Partition& weight, std::uint64_t id) const {
    auto it = entries_.find({c, d, weight, id});
    if (it == entries_.end())
        return std::nullopt;
    return it->second;
}

std::optional<HighestWeightPolynomial> Database::load(int c, int d, const Partition& weight,
                                                      std::uint64_t id) const {
    auto entry = find(c, d, weight, id);
    if (!entry)
        return std::nullopt;
    const auto path = file_for(c, d, weight, id);
    if (!fs::exists(path) || sha256_file(path) != entry->sha256)
        return std::nullopt;
    try {
        auto hwp = read_hwp_file(path);
        if (hwp.terms.size() != entry->terms)
            return std::nullopt;
        return hwp;
    } catch (const ParseError&) {
        return std::nullopt;
    }
}

ManifestEntry Database::store(const HighestWeightPolynomial& hwp, std::uint64_t id) {
    const auto path = file_for(hwp.c, hwp.d, hwp.weight, id);
    std::ostringstream text;
    write_hwp(text, hwp);
    write_file_atomic(path, text.str());
    ManifestEntry e{hwp.c, hwp.d, hwp.weight, id, hwp.terms.size(), sha256_file(path), hwp.hashes};
    entries_[e.key()] = e;
    write_manifest();
    return e;
}

VerifyReport Database::verify() const {
    VerifyReport rep;
    for (const auto& [key, e] : entries_) {
        ++rep.checked;
        const auto path = file_for(e.c, e.d, e.weight, e.tableau_id);
        if (!fs::exists(path)) {
            rep.issues.push_back({path, 0, "listed in manifest but missing"});
            continue;
        }
        HighestWeightPolynomial hwp;
        try {
            hwp = read_hwp_file(path);
        } catch (const ParseError& err) {
            rep.issues.push_back({path, err.line(), err.what()});
            continue;
        }
        if (hwp.terms.size() != e.terms)
            rep.issues.push_back({path, 0,
                                  "term count " + std::to_string(hwp.terms.size()) + " differs from manifest " +
                                      std::to_string(e.terms)});
        if (hwp.c != e.c || hwp.d != e.d || hwp.weight != e.weight)
            rep.issues.push_back({path, 2, "parameters differ from the manifest"});
        if (auto bad = find_content_violation(hwp)) {
            const std::size_t header = 3 + (hwp.tableau.empty() ? 0 : 1) + (hwp.combo.empty() ? 0 : 1) +
                                       hwp.hashes.size();
            rep.issues.push_back({path, header + *bad + 1,
                                  "monomial " + hwp.terms[*bad].monomial.to_string() + " has content other than " +
                                      hwp.weight.to_string()});
        }
        if (sha256_file(path) != e.sha256)
            rep.issues.push_back({path, 0, "checksum differs from manifest"});
    }
    // stray files that the manifest does not know about
    for (const auto& item : fs::recursive_directory_iterator(root_)) {
        if (!item.is_regular_file() || item.path().extension() != ".hwp")
            continue;
        bool listed = false;
        for (const auto& [key, e] : entries_)
            if (file_for(e.c, e.d, e.weight, e.tableau_id) == item.path()) {
                listed = true;
                break;
            }
        if (!listed)
            rep.issues.push_back({item.path(), 0, "not listed in manifest"});
    }
    return rep;
}

}  // namespace hwpoly
