#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "hwpoly/hwp.hpp"
#include "hwpoly/partition.hpp"

namespace hwpoly {

struct ManifestEntry {
    int c = 0;
    int d = 0;
    Partition weight;
    std::uint64_t tableau_id = 0;
    std::size_t terms = 0;
    std::string sha256;
    std::vector<HashRecord> hashes;

    using Key = std::tuple<int, int, Partition, std::uint64_t>;
    Key key() const { return {c, d, weight, tableau_id}; }
    bool operator==(const ManifestEntry&) const = default;
};

struct VerifyIssue {
    std::filesystem::path file;
    std::size_t line = 0;  // 0 when not tied to a line
    std::string message;
};

struct VerifyReport {
    std::size_t checked = 0;
    std::vector<VerifyIssue> issues;
    bool ok() const noexcept { return issues.empty(); }
};

/// Directory of HWP files, `<root>/<c>/<d>/<λ joined by '-'>/<id>.hwp`, with
/// `<root>/manifest.tsv` listing every stored file. Files and the manifest
/// are written to a temporary name and renamed into place.
class Database {
public:
    explicit Database(std::filesystem::path root);

    const std::filesystem::path& root() const noexcept { return root_; }
    std::filesystem::path file_for(int c, int d, const Partition& weight, std::uint64_t id) const;

    const std::map<ManifestEntry::Key, ManifestEntry>& entries() const noexcept { return entries_; }
    std::optional<ManifestEntry> find(int c, int d, const Partition& weight, std::uint64_t id) const;

    /// The stored polynomial if the manifest lists it and the file is intact.
    std::optional<HighestWeightPolynomial> load(int c, int d, const Partition& weight, std::uint64_t id) const;

    /// Writes the file and records it in the manifest.
    ManifestEntry store(const HighestWeightPolynomial& hwp, std::uint64_t id);

    /// Re-reads every listed file: parse, trailer, checksum, term count and
    /// the content invariant.
    VerifyReport verify() const;

private:
    void read_manifest();
    void write_manifest() const;

    std::filesystem::path root_;
    std::map<ManifestEntry::Key, ManifestEntry> entries_;
};

/// Hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Writes `content` to `path` via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace hwpoly
