#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "tcov/generators.hpp"
#include "tcov/kernel_mk.hpp"

namespace tcov {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> tokenize_line(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> toks;
  std::string t;
  while (ss >> t) toks.push_back(t);
  return toks;
}

inline int parse_int(const std::string& tok, int line_no, const char* what) {
  try {
    std::size_t pos = 0;
    int v = std::stoi(tok, &pos);
    if (pos != tok.size()) throw parse_error("");
    return v;
  } catch (...) {
    throw parse_error("line " + std::to_string(line_no) + ": expected an integer " + what + ", got '" +
                      tok + "'");
  }
}

struct LineReader {
  std::istringstream in;
  int line_no = 0;

  explicit LineReader(const std::string& text) : in(text) {}

  // Next non-comment line's tokens, or empty at end of input.
  std::vector<std::string> next() {
    std::string line;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      auto toks = tokenize_line(line);
      if (toks.empty() || toks[0] == "c") continue;
      return toks;
    }
    return {};
  }
};

}  // namespace detail

// Instance format: `c` comment lines anywhere; `p tcov <n> <m>` exactly once
// as the first non-comment line; m lines `e <v1> ... <vt>` with 1-indexed
// vertices; optional `b <edge-index>` lines (1-indexed into edge order).
inline SubsetInstance parse_instance(const std::string& text) {
  detail::LineReader rd(text);
  auto toks = rd.next();
  if (toks.empty() || toks[0] != "p")
    throw parse_error("line " + std::to_string(rd.line_no) + ": expected 'p tcov <n> <m>' first");
  if (toks.size() != 4 || toks[1] != "tcov")
    throw parse_error("line " + std::to_string(rd.line_no) + ": malformed problem line");
  int n = detail::parse_int(toks[2], rd.line_no, "vertex count");
  int m = detail::parse_int(toks[3], rd.line_no, "edge count");
  if (n < 0 || m < 0) throw parse_error("line " + std::to_string(rd.line_no) + ": negative n or m");

  std::vector<std::vector<int>> edges;
  EdgeSet black;
  while (!(toks = rd.next()).empty()) {
    if (toks[0] == "p") throw parse_error("line " + std::to_string(rd.line_no) + ": duplicate 'p' line");
    if (toks[0] == "e") {
      if (static_cast<int>(edges.size()) == m)
        throw parse_error("line " + std::to_string(rd.line_no) + ": more than " + std::to_string(m) +
                          " 'e' lines");
      std::vector<int> e;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        int v = detail::parse_int(toks[i], rd.line_no, "vertex id");
        if (v < 1 || v > n)
          throw parse_error("line " + std::to_string(rd.line_no) + ": vertex id " + std::to_string(v) +
                            " out of range 1.." + std::to_string(n));
        e.push_back(v - 1);
      }
      if (e.empty()) throw parse_error("line " + std::to_string(rd.line_no) + ": empty edge");
      edges.push_back(std::move(e));
    } else if (toks[0] == "b") {
      if (toks.size() != 2)
        throw parse_error("line " + std::to_string(rd.line_no) + ": 'b' takes one edge index");
      int q = detail::parse_int(toks[1], rd.line_no, "edge index");
      if (q < 1 || q > m)
        throw parse_error("line " + std::to_string(rd.line_no) + ": edge index " + std::to_string(q) +
                          " out of range 1.." + std::to_string(m));
      black.push_back(q - 1);
    } else {
      throw parse_error("line " + std::to_string(rd.line_no) + ": unknown line type '" + toks[0] + "'");
    }
  }
  if (static_cast<int>(edges.size()) != m)
    throw parse_error("expected " + std::to_string(m) + " 'e' lines, got " +
                      std::to_string(edges.size()));
  detail::sort_unique(black);
  return SubsetInstance(Hypergraph(n, std::move(edges)), std::move(black), 0);
}

inline std::string serialize_instance(const SubsetInstance& I) {
  std::ostringstream out;
  out << "p tcov " << I.H.n << ' ' << I.H.m() << '\n';
  for (const auto& e : I.H.edges) {
    out << 'e';
    for (int v : e) out << ' ' << v + 1;
    out << '\n';
  }
  for (int b : I.black) out << "b " << b + 1 << '\n';
  return out.str();
}

inline std::string serialize_instance(const Hypergraph& H) {
  return serialize_instance(SubsetInstance(H, {}, 0));
}

// r-partite input: `p rdm <r> <nprime>` then edges of exactly r global
// 1-indexed ids, one per part.
inline RPartiteHypergraph parse_rpartite(const std::string& text) {
  detail::LineReader rd(text);
  auto toks = rd.next();
  if (toks.size() != 4 || toks[0] != "p" || toks[1] != "rdm")
    throw parse_error("line " + std::to_string(rd.line_no) + ": expected 'p rdm <r> <nprime>' first");
  int r = detail::parse_int(toks[2], rd.line_no, "r");
  int np = detail::parse_int(toks[3], rd.line_no, "part size");
  std::vector<std::vector<int>> edges;
  while (!(toks = rd.next()).empty()) {
    if (toks[0] != "e")
      throw parse_error("line " + std::to_string(rd.line_no) + ": unknown line type '" + toks[0] + "'");
    std::vector<int> e;
    for (std::size_t i = 1; i < toks.size(); ++i) {
      int v = detail::parse_int(toks[i], rd.line_no, "vertex id");
      if (v < 1 || v > r * np)
        throw parse_error("line " + std::to_string(rd.line_no) + ": vertex id out of range");
      e.push_back(v - 1);
    }
    edges.push_back(std::move(e));
  }
  return RPartiteHypergraph(r, np, std::move(edges));
}

// Simple graph input: `p graph <n> <m>` then m lines `e <u> <v>`, 1-indexed.
inline SimpleGraph parse_simple_graph(const std::string& text) {
  detail::LineReader rd(text);
  auto toks = rd.next();
  if (toks.size() != 4 || toks[0] != "p" || toks[1] != "graph")
    throw parse_error("line " + std::to_string(rd.line_no) + ": expected 'p graph <n> <m>' first");
  int n = detail::parse_int(toks[2], rd.line_no, "vertex count");
  int m = detail::parse_int(toks[3], rd.line_no, "edge count");
  std::vector<std::pair<int, int>> edges;
  while (!(toks = rd.next()).empty()) {
    if (toks[0] != "e" || toks.size() != 3)
      throw parse_error("line " + std::to_string(rd.line_no) + ": expected 'e <u> <v>'");
    int u = detail::parse_int(toks[1], rd.line_no, "vertex id");
    int v = detail::parse_int(toks[2], rd.line_no, "vertex id");
    if (u < 1 || u > n || v < 1 || v > n)
      throw parse_error("line " + std::to_string(rd.line_no) + ": vertex id out of range");
    edges.emplace_back(u - 1, v - 1);
  }
  if (static_cast<int>(edges.size()) != m)
    throw parse_error("expected " + std::to_string(m) + " 'e' lines, got " +
                      std::to_string(edges.size()));
  return SimpleGraph(n, std::move(edges));
}

}  // namespace tcov
