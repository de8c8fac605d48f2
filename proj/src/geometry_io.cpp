#include "hyperlines/geometry_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace hyperlines {

namespace {

/// Next content line, with comments and blank lines skipped. Returns false
/// on EOF; line_no tracks the physical line number for diagnostics.
bool next_content_line(std::istream& in, std::string& out, int& line_no) {
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t i = raw.find_first_not_of(" \t");
    if (i == std::string::npos || raw[i] == '#') continue;
    out = raw;
    return true;
  }
  return false;
}

std::vector<long long> parse_ints(const std::string& line, int line_no) {
  std::istringstream ss(line);
  std::vector<long long> out;
  std::string tok;
  while (ss >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      throw ParseError(line_no, "expected integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw ParseError(line_no, "expected integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

PartialLinearSpace parse_pls(std::istream& in) {
  int line_no = 0;
  std::string line;
  if (!next_content_line(in, line, line_no)) throw ParseError(line_no + 1, "missing header");

  std::istringstream hs(line);
  std::string magic;
  long long n = -1, m = -1;
  hs >> magic >> n >> m;
  std::string extra;
  if (magic != "pls" || hs.fail() || (hs >> extra))
    throw ParseError(line_no, "header must be 'pls <points> <lines>'");
  if (n < 0 || m < 0) throw ParseError(line_no, "negative header count");
  if (n > 1'000'000 || m > 10'000'000) throw ParseError(line_no, "header count out of range");

  std::vector<std::vector<int>> lines;
  lines.reserve(static_cast<std::size_t>(m));
  for (long long r = 0; r < m; ++r) {
    if (!next_content_line(in, line, line_no))
      throw ParseError(line_no + 1, "expected " + std::to_string(m) + " records, got " +
                           std::to_string(r));
    auto ids = parse_ints(line, line_no);
    if (ids.empty()) throw ParseError(line_no, "empty record");
    std::vector<int> rec;
    rec.reserve(ids.size());
    for (long long v : ids) {
      if (v < 0 || v >= n) throw ParseError(line_no, "point id out of range");
      if (!rec.empty() && rec.back() >= v)
        throw ParseError(line_no, "record not strictly ascending");
      rec.push_back(static_cast<int>(v));
    }
    lines.push_back(std::move(rec));
  }
  if (next_content_line(in, line, line_no))
    throw ParseError(line_no, "trailing content after " + std::to_string(m) + " records");

  return PartialLinearSpace(static_cast<int>(n), std::move(lines));
}

PartialLinearSpace read_pls_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path);
  return parse_pls(in);
}

std::string write_pls(const PartialLinearSpace& pls) {
  std::vector<std::vector<int>> lines = pls.lines();
  std::sort(lines.begin(), lines.end());
  std::ostringstream out;
  out << "pls " << pls.n() << ' ' << lines.size() << '\n';
  for (const auto& l : lines) {
    for (std::size_t i = 0; i < l.size(); ++i) {
      if (i) out << ' ';
      out << l[i];
    }
    out << '\n';
  }
  return out.str();
}

void write_pls_file(const PartialLinearSpace& pls, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << write_pls(pls);
}

std::string write_classmap(const std::vector<int>& class_map, int num_classes) {
  std::ostringstream out;
  out << "classmap " << class_map.size() << ' ' << num_classes << '\n';
  for (std::size_t p = 0; p < class_map.size(); ++p) out << p << ' ' << class_map[p] << '\n';
  return out.str();
}

void write_classmap_file(const std::vector<int>& class_map, int num_classes,
                         const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << write_classmap(class_map, num_classes);
}

}  // namespace hyperlines
