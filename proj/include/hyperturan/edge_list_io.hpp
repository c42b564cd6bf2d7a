#ifndef HYPERTURAN_EDGE_LIST_IO_HPP
#define HYPERTURAN_EDGE_LIST_IO_HPP

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "hyperturan/triple_system.hpp"

namespace hyperturan {

// Text format:
//   u3 <n> <m>
//   <a> <b> <c>      (m lines, 0 <= a < b < c < n, ascending, LF-terminated)

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::size_t parse_uint(std::string_view tok, std::size_t line_no) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size())
    throw DomainError("line " + std::to_string(line_no) + ": expected a nonnegative integer, got '" +
                      std::string(tok) + "'");
  return v;
}

} // namespace detail

inline TripleSystem parse_edge_list(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  while (!lines.empty() && detail::split_ws(lines.back()).empty()) lines.pop_back();
  if (lines.empty()) throw DomainError("empty edge list: missing 'u3 <n> <m>' header");

  auto header = detail::split_ws(lines[0]);
  if (header.size() != 3 || header[0] != "u3") throw DomainError("malformed header, expected 'u3 <n> <m>'");
  const std::size_t n = detail::parse_uint(header[1], 1);
  const std::size_t m = detail::parse_uint(header[2], 1);
  if (lines.size() - 1 != m)
    throw DomainError("header declares " + std::to_string(m) + " edges but " +
                      std::to_string(lines.size() - 1) + " edge lines follow");

  std::vector<Triple> triples;
  triples.reserve(m);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto tok = detail::split_ws(lines[i]);
    if (tok.size() != 3)
      throw DomainError("line " + std::to_string(i + 1) + ": expected three vertex ids");
    std::array<std::size_t, 3> v{};
    for (int k = 0; k < 3; ++k) {
      v[k] = detail::parse_uint(tok[k], i + 1);
      if (v[k] >= n)
        throw DomainError("line " + std::to_string(i + 1) + ": vertex id " + std::to_string(v[k]) +
                          " >= n = " + std::to_string(n));
    }
    triples.push_back(Triple::of(static_cast<Vertex>(v[0]), static_cast<Vertex>(v[1]),
                                 static_cast<Vertex>(v[2])));
  }
  return TripleSystem(n, triples);
}

inline std::string serialize_edge_list(const TripleSystem& h) {
  std::string out = "u3 " + std::to_string(h.vertex_count()) + " " + std::to_string(h.edge_count()) + "\n";
  for (const Triple& t : h.edges()) {
    out += to_string(t);
    out += '\n';
  }
  return out;
}

inline TripleSystem read_edge_list_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_edge_list(ss.str());
}

inline void write_edge_list_file(const std::string& path, const TripleSystem& h) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DomainError("cannot write " + path);
  out << serialize_edge_list(h);
}

} // namespace hyperturan

#endif
