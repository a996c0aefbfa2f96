#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hwpoly/tableaux.hpp"

namespace hwpoly::cli {

// Tableau files:
//   #tableau d=<d> c=<c>
//   1,1,1,2
//   2,2
// one comma-separated line per row, top to bottom.
IsobaricTableau read_tableau(std::istream& in, const std::string& source);
IsobaricTableau read_tableau_file(const std::filesystem::path& path);
void write_tableau(std::ostream& out, const IsobaricTableau& t);

}  // namespace hwpoly::cli
