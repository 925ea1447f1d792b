#pragma once

#include <cstdint>
#include <optional>

#include "tcov/bounds.hpp"
#include "tcov/hypergraph.hpp"
#include "tcov/oracle.hpp"

namespace tcov {

struct BranchStats {
  std::uint64_t nodes_visited = 0;
  std::optional<int> guessed_vertex;
  int depth = 0;
};

struct MkResult {
  bool yes = false;
  std::optional<EdgeSet> witness;
  BranchStats stats;
};

namespace detail {

inline bool live_is_test_cover(const Hypergraph& H, const EdgeSet& live, int extra_vertices) {
  int n = H.n + extra_vertices;
  if (n == 0) return true;
  if (n <= 64) {
    MaskRefinement ref(n);
    for (int q : live) ref.refine(edge_mask64(H.edges[q]));
    return ref.count() == n;
  }
  Refinement ref(n);
  for (int q : live) ref.refine(H.edges[q]);
  return ref.num_classes == n;
}

}  // namespace detail

// The isolating family for edge e: a minimal cover B0 of e's vertices plus,
// for each b in B0, a minimal set separating b\e from b&e. At most r^2 edges
// and it isolates the vertex set of e. `live` is the surviving edge pool;
// e must be deletable from it and y0 must have degree 0.
inline EdgeSet build_isolating_family(const Hypergraph& H, const EdgeSet& live, int e_index, int y0) {
  H.check_edge_index(e_index);
  // y0 == H.n stands for a freshly added isolated vertex.
  if (y0 < 0 || y0 > H.n) throw contract_error("build_isolating_family: y0 out of range");
  for (int q : live)
    if (detail::contains(H.edges[q], y0))
      throw contract_error("build_isolating_family: y0 is not isolated");
  const auto& e = H.edges[e_index];
  EdgeSet pool;  // live \ {e}
  for (int q : live)
    if (q != e_index) pool.push_back(q);

  // B0: greedy cover of e, then a delete-if-redundant pass.
  EdgeSet b0;
  VertexSet covered;
  for (int v : e) {
    if (detail::contains(covered, v)) continue;
    int pick = -1;
    for (int q : pool)
      if (detail::contains(H.edges[q], v)) {
        pick = q;
        break;
      }
    if (pick < 0)
      throw invariant_error("build_isolating_family: a vertex of e is uncovered, so live\\{e} is not a test cover");
    b0.push_back(pick);
    covered = detail::set_union(covered, detail::set_intersection(H.edges[pick], e));
  }
  detail::sort_unique(b0);
  for (std::size_t i = 0; i < b0.size();) {
    VertexSet rest;
    for (std::size_t j = 0; j < b0.size(); ++j)
      if (j != i) rest = detail::set_union(rest, detail::set_intersection(H.edges[b0[j]], e));
    if (detail::is_subset(e, rest))
      b0.erase(b0.begin() + static_cast<long>(i));
    else
      ++i;
  }

  EdgeSet family = b0;
  for (int b : b0) {
    VertexSet inside = detail::set_intersection(H.edges[b], e);
    VertexSet outside = detail::set_difference(H.edges[b], e);
    if (inside.empty() || outside.empty()) continue;
    EdgeSet bb = separating_subset(H, inside, outside, pool);
    // delete-if-redundant pass for minimality
    for (std::size_t i = 0; i < bb.size();) {
      EdgeSet rest(bb.begin(), bb.end());
      rest.erase(rest.begin() + static_cast<long>(i));
      bool still = true;
      for (int x : inside) {
        for (int y : outside) {
          bool sep = false;
          for (int q : rest)
            if (separates(H.edges[q], x, y)) {
              sep = true;
              break;
            }
          if (!sep) {
            still = false;
            break;
          }
        }
        if (!still) break;
      }
      if (still)
        bb.erase(bb.begin() + static_cast<long>(i));
      else
        ++i;
    }
    family = detail::set_union(family, bb);
  }

  int r = std::max(H.r(), 1);
  if (static_cast<int>(family.size()) > r * r)
    throw invariant_error("build_isolating_family: family exceeds r^2 edges");
  // It must isolate V(e).
  for (int x : e)
    for (int y = 0; y < H.n; ++y) {
      if (detail::contains(e, y)) continue;
      bool sep = false;
      for (int q : family)
        if (separates(H.edges[q], x, y)) {
          sep = true;
          break;
        }
      if (!sep) throw invariant_error("build_isolating_family: family does not isolate V(e)");
    }
  return family;
}

inline EdgeSet build_isolating_family(const Hypergraph& H, int e_index, int y0) {
  return build_isolating_family(H, all_edges(H), e_index, y0);
}

namespace detail {

struct MkSearch {
  const Hypergraph* H;
  int extra_vertices = 0;  // 1 when a fresh isolated vertex was added
  int y0 = 0;
  BranchStats* stats;
  std::uint64_t max_nodes;

  std::optional<EdgeSet> rec(const EdgeSet& live, int k, int depth) {
    if (++stats->nodes_visited > max_nodes) throw budget_error("solve_mk: node budget exceeded");
    stats->depth = std::max(stats->depth, depth);
    if (!live_is_test_cover(*H, live, extra_vertices)) return std::nullopt;
    if (k <= 0) return live;
    int deletable = -1;
    for (int q : live) {
      EdgeSet rest;
      for (int p : live)
        if (p != q) rest.push_back(p);
      if (live_is_test_cover(*H, rest, extra_vertices)) {
        deletable = q;
        break;
      }
    }
    if (deletable < 0) return std::nullopt;  // a test cover must contain all edges
    EdgeSet family = build_isolating_family(*H, live, deletable, y0);
    EdgeSet branch = family;
    branch.push_back(deletable);
    sort_unique(branch);
    for (int f : branch) {
      EdgeSet next;
      for (int p : live)
        if (p != f) next.push_back(p);
      if (auto w = rec(next, k - 1, depth + 1)) return w;
    }
    return std::nullopt;
  }
};

}  // namespace detail

// Depth-bounded search tree for Test-r-Cover(m-k): yes iff a test cover of
// size at most m-k exists. Guess phase first fixes an isolated vertex (an
// existing one, or each vertex x with its edges deleted and k reduced, or a
// fresh vertex), then the recursion deletes one edge of the isolating family
// per level.
inline MkResult solve_mk(const Hypergraph& H, int k, const SearchBudget& budget = {}) {
  if (k < 0) throw contract_error("solve_mk: k must be nonnegative");
  if (!is_test_cover(H)) throw contract_error("solve_mk: edge set is not a test cover");

  MkResult res;
  auto degs = all_degrees(H);
  int isolated = -1;
  for (int v = 0; v < H.n; ++v)
    if (degs[v] == 0) {
      isolated = v;
      break;
    }

  detail::MkSearch search;
  search.H = &H;
  search.stats = &res.stats;
  search.max_nodes = budget.max_nodes;

  if (isolated >= 0) {
    search.y0 = isolated;
    if (auto w = search.rec(all_edges(H), k, 0)) {
      res.yes = true;
      res.witness = *w;
    }
    return res;
  }

  for (int x = 0; x < H.n && !res.yes; ++x) {
    EdgeSet live;
    int deleted = 0;
    for (int q = 0; q < H.m(); ++q) {
      if (detail::contains(H.edges[q], x))
        ++deleted;
      else
        live.push_back(q);
    }
    search.y0 = x;
    search.extra_vertices = 0;
    if (auto w = search.rec(live, k - deleted, 0)) {
      res.yes = true;
      res.witness = *w;
      res.stats.guessed_vertex = x;
    }
  }
  if (!res.yes) {
    // Guess that the solution covers every vertex: add a fresh isolated one.
    search.y0 = H.n;
    search.extra_vertices = 1;
    if (auto w = search.rec(all_edges(H), k, 0)) {
      res.yes = true;
      res.witness = *w;
    }
  }
  return res;
}

}  // namespace tcov
