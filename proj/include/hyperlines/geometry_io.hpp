#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hyperlines/incidence.hpp"

namespace hyperlines {

/// Parse failure with the 1-based line number of the offending input line.
struct ParseError : std::runtime_error {
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_no(line) {}
  int line_no;
};

/// Text format: header "pls n m", then m records of strictly ascending
/// point ids. Blank lines and lines starting with '#' are skipped. Ids out
/// of range, unsorted records, or a record miscount throw ParseError.
PartialLinearSpace parse_pls(std::istream& in);
PartialLinearSpace read_pls_file(const std::string& path);

/// Canonical form: "pls n m" header, records each sorted ascending and the
/// record list sorted lexicographically, single spaces, LF endings. Parsing
/// the output reproduces the input up to line order.
std::string write_pls(const PartialLinearSpace& pls);
void write_pls_file(const PartialLinearSpace& pls, const std::string& path);

/// Sidecar format: header "classmap n k", then one "point class" pair per
/// line in point order.
std::string write_classmap(const std::vector<int>& class_map, int num_classes);
void write_classmap_file(const std::vector<int>& class_map, int num_classes,
                         const std::string& path);

}  // namespace hyperlines
