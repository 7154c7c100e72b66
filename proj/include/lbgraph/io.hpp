#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "csr.hpp"

namespace lbg {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

/// Parses a signed decimal integer occupying the whole token.
inline long long parse_int(std::string_view tok, std::size_t line) {
  long long v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw ParseError(line, "not an integer: '" + std::string(tok) + "'");
  return v;
}

inline weight_t checked_weight(long long w, std::size_t line) {
  if (w < 0) throw ParseError(line, "negative weight");
  if (w > std::numeric_limits<weight_t>::max())
    throw ParseError(line, "weight " + std::to_string(w) + " too large");
  return static_cast<weight_t>(w);
}

inline std::ifstream open_input(const std::filesystem::path& path,
                                std::ios::openmode mode = std::ios::in) {
  std::ifstream in(path, mode);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  return in;
}

}  // namespace detail

/**
 * Reads a 9th DIMACS challenge shortest-path file (`c` comments,
 * `p sp N M` header, `a u v w` arcs with 1-based ids). Ids are shifted to
 * 0-based; arcs keep their file order within each source.
 */
inline CsrGraph read_dimacs_gr(std::istream& in) {
  std::vector<node_t> src, dst;
  std::vector<weight_t> wt;
  bool have_header = false;
  std::size_t header_line = 0;
  long long n = 0, m = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto tok = detail::split_ws(line);
    if (tok.empty() || tok[0] == "c") continue;
    if (tok[0] == "p") {
      if (have_header) throw ParseError(lineno, "duplicate problem line");
      if (tok.size() != 4 || tok[1] != "sp")
        throw ParseError(lineno, "malformed header, expected 'p sp N M'");
      n = detail::parse_int(tok[2], lineno);
      m = detail::parse_int(tok[3], lineno);
      if (n < 0 || m < 0) throw ParseError(lineno, "malformed header, negative count");
      if (n > std::numeric_limits<node_t>::max())
        throw ParseError(lineno, "node count exceeds id range");
      have_header = true;
      header_line = lineno;
      src.reserve(static_cast<std::size_t>(m));
      dst.reserve(static_cast<std::size_t>(m));
      wt.reserve(static_cast<std::size_t>(m));
    } else if (tok[0] == "a") {
      if (!have_header) throw ParseError(lineno, "arc before problem line");
      if (tok.size() != 4) throw ParseError(lineno, "malformed arc, expected 'a u v w'");
      const long long u = detail::parse_int(tok[1], lineno);
      const long long v = detail::parse_int(tok[2], lineno);
      for (long long id : {u, v})
        if (id < 1 || id > n)
          throw ParseError(lineno, "node id " + std::to_string(id) + " out of range");
      src.push_back(static_cast<node_t>(u - 1));
      dst.push_back(static_cast<node_t>(v - 1));
      wt.push_back(detail::checked_weight(detail::parse_int(tok[3], lineno), lineno));
    } else {
      throw ParseError(lineno, "unknown line type '" + std::string(tok[0]) + "'");
    }
  }
  if (!have_header) throw ParseError(lineno, "missing problem line 'p sp N M'");
  if (static_cast<long long>(src.size()) != m)
    throw ParseError(header_line, "arc count mismatch: header declares " +
                                      std::to_string(m) + ", file has " +
                                      std::to_string(src.size()));
  return CsrGraph::from_edges(static_cast<std::size_t>(n), src, dst,
                              std::span<const weight_t>(wt));
}

inline CsrGraph load_dimacs_gr(const std::filesystem::path& path) {
  auto in = detail::open_input(path);
  return read_dimacs_gr(in);
}

/// Whitespace-separated `u v [w]` lines with 0-based ids; `#` starts a
/// comment. The node count is one past the largest id seen.
inline CsrGraph read_edge_list(std::istream& in, bool weighted) {
  std::vector<node_t> src, dst;
  std::vector<weight_t> wt;
  long long max_id = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    if (auto hash = body.find('#'); hash != std::string_view::npos)
      body = body.substr(0, hash);
    const auto tok = detail::split_ws(body);
    if (tok.empty()) continue;
    const std::size_t expected = weighted ? 3 : 2;
    if (tok.size() != expected && !(!weighted && tok.size() == 3))
      throw ParseError(lineno, weighted ? "expected 'u v w'" : "expected 'u v'");
    const long long u = detail::parse_int(tok[0], lineno);
    const long long v = detail::parse_int(tok[1], lineno);
    if (weighted) wt.push_back(detail::checked_weight(detail::parse_int(tok[2], lineno), lineno));
    for (long long id : {u, v})
      if (id < 0 || id >= std::numeric_limits<node_t>::max())
        throw ParseError(lineno, "node id " + std::to_string(id) + " out of range");
    src.push_back(static_cast<node_t>(u));
    dst.push_back(static_cast<node_t>(v));
    max_id = std::max({max_id, u, v});
  }
  const auto n = static_cast<std::size_t>(max_id + 1);
  if (weighted) return CsrGraph::from_edges(n, src, dst, std::span<const weight_t>(wt));
  return CsrGraph::from_edges(n, src, dst);
}

inline CsrGraph load_edge_list(const std::filesystem::path& path, bool weighted) {
  auto in = detail::open_input(path);
  return read_edge_list(in, weighted);
}

// Binary CSR cache: "CSRG", u32 version, u64 N, u64 E, u64 row_offsets[N+1],
// u32 col_indices[E], u8 weighted, u32 weights[E] if weighted. Little-endian.

inline constexpr std::uint32_t kCsrCacheVersion = 1;

namespace detail {

template <class T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> buf;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    buf[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff);
  out.write(buf.data(), buf.size());
}

template <class T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> buf;
  if (!in.read(reinterpret_cast<char*>(buf.data()), buf.size()))
    throw ParseError(0, "truncated CSR cache file");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) v |= std::uint64_t{buf[i]} << (8 * i);
  return static_cast<T>(v);
}

}  // namespace detail

inline void write_csr_binary(std::ostream& out, const CsrGraph& g) {
  out.write("CSRG", 4);
  detail::put_le<std::uint32_t>(out, kCsrCacheVersion);
  detail::put_le<std::uint64_t>(out, g.num_nodes());
  detail::put_le<std::uint64_t>(out, g.num_edges());
  for (edge_t o : g.row_offsets) detail::put_le<std::uint64_t>(out, o);
  for (node_t c : g.col_indices) detail::put_le<std::uint32_t>(out, c);
  detail::put_le<std::uint8_t>(out, g.weighted() ? 1 : 0);
  if (g.weights)
    for (weight_t w : *g.weights) detail::put_le<std::uint32_t>(out, w);
}

inline CsrGraph read_csr_binary(std::istream& in) {
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "CSRG", 4) != 0)
    throw ParseError(0, "bad magic, not a CSR cache file");
  if (auto ver = detail::get_le<std::uint32_t>(in); ver != kCsrCacheVersion)
    throw ParseError(0, "unsupported CSR cache version " + std::to_string(ver));
  const auto n = detail::get_le<std::uint64_t>(in);
  const auto m = detail::get_le<std::uint64_t>(in);
  if (n > std::numeric_limits<node_t>::max()) throw ParseError(0, "node count exceeds id range");
  CsrGraph g;
  g.row_offsets.resize(n + 1);
  for (auto& o : g.row_offsets) o = detail::get_le<std::uint64_t>(in);
  g.col_indices.resize(m);
  for (auto& c : g.col_indices) c = detail::get_le<std::uint32_t>(in);
  const auto flag = detail::get_le<std::uint8_t>(in);
  if (flag > 1) throw ParseError(0, "bad weights flag");
  if (flag) {
    g.weights.emplace(m);
    for (auto& w : *g.weights) w = detail::get_le<std::uint32_t>(in);
  }
  if (auto bad = g.validate()) throw ParseError(0, "invalid CSR cache: " + *bad);
  return g;
}

inline void save_csr_binary(const std::filesystem::path& path, const CsrGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_csr_binary(out, g);
  if (!out) throw Error("write failed: " + path.string());
}

inline CsrGraph load_csr_binary(const std::filesystem::path& path) {
  auto in = detail::open_input(path, std::ios::binary);
  return read_csr_binary(in);
}

}  // namespace lbg
