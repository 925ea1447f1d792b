#pragma once

// Independent reference implementations used by the unit and acceptance
// suites. Everything here decides by direct pairwise separation checks, never
// by calling the library's refinement machinery, so library bugs cannot hide.

#include <cstdint>
#include <vector>

#include "tcov/generators.hpp"
#include "tcov/hypergraph.hpp"
#include "tcov/kernel_mk.hpp"

namespace support {

inline bool pair_separated(const tcov::Hypergraph& H, const std::vector<int>& T, int x, int y) {
  for (int q : T) {
    bool in_x = tcov::detail::contains(H.edges[q], x);
    bool in_y = tcov::detail::contains(H.edges[q], y);
    if (in_x != in_y) return true;
  }
  return false;
}

inline bool pairwise_cover(const tcov::Hypergraph& H, const std::vector<int>& T) {
  for (int x = 0; x < H.n; ++x)
    for (int y = x + 1; y < H.n; ++y)
      if (!pair_separated(H, T, x, y)) return false;
  return true;
}

// Number of equivalence classes under "no edge of T separates".
inline int pairwise_class_count(const tcov::Hypergraph& H, const std::vector<int>& T) {
  std::vector<int> rep;
  for (int v = 0; v < H.n; ++v) {
    bool fresh = true;
    for (int u : rep)
      if (!pair_separated(H, T, u, v)) fresh = false;
    if (fresh) rep.push_back(v);
  }
  return static_cast<int>(rep.size());
}

// Minimum test cover size by subset enumeration, or -1 if none exists.
inline int min_cover_size(const tcov::Hypergraph& H, int max_m = 20) {
  int m = H.m();
  if (m > max_m) return -2;
  int best = -1;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> T;
    for (int q = 0; q < m; ++q)
      if (mask & (1u << q)) T.push_back(q);
    if (best >= 0 && static_cast<int>(T.size()) >= best) continue;
    if (pairwise_cover(H, T)) best = static_cast<int>(T.size());
  }
  return best;
}

// Does a test cover containing all black edges with at most m-k edges exist?
inline bool subset_oracle(const tcov::SubsetInstance& I) {
  int m = I.H.m();
  int limit = m - I.k;
  if (limit < 0) return false;
  std::uint32_t black_mask = 0;
  for (int b : I.black) black_mask |= 1u << b;
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    if ((mask & black_mask) != black_mask) continue;
    std::vector<int> T;
    for (int q = 0; q < m; ++q)
      if (mask & (1u << q)) T.push_back(q);
    if (static_cast<int>(T.size()) > limit) continue;
    if (pairwise_cover(I.H, T)) return true;
  }
  return false;
}

// Every hypergraph with n in [1, max_n], m in [0, max_m] edges drawn (with
// repetition, non-decreasing) from the nonempty subsets of size <= max_r.
template <typename F>
inline void for_each_instance(int max_n, int max_m, int max_r, F&& f) {
  for (int n = 1; n <= max_n; ++n) {
    std::vector<std::vector<int>> candidates;
    int cap = std::min(max_r, n);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      if (__builtin_popcount(mask) > cap) continue;
      std::vector<int> e;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) e.push_back(v);
      candidates.push_back(std::move(e));
    }
    std::vector<std::vector<int>> edges;
    auto rec = [&](auto&& self, int from) -> void {
      f(tcov::Hypergraph(n, edges));
      if (static_cast<int>(edges.size()) == max_m) return;
      for (int c = from; c < static_cast<int>(candidates.size()); ++c) {
        edges.push_back(candidates[c]);
        self(self, c);
        edges.pop_back();
      }
    };
    rec(rec, 0);
  }
}

inline bool has_perfect_matching(const tcov::RPartiteHypergraph& G) {
  int need = G.n_prime;
  int m = static_cast<int>(G.edges.size());
  std::vector<int> pick;
  auto disjoint = [&](int e) {
    for (int p : pick)
      if (tcov::detail::intersects(G.edges[p], G.edges[e])) return false;
    return true;
  };
  auto rec = [&](auto&& self, int from) -> bool {
    if (static_cast<int>(pick.size()) == need) return true;
    for (int e = from; e < m; ++e) {
      if (!disjoint(e)) continue;
      pick.push_back(e);
      if (self(self, e + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(rec, 0);
}

// Can V(G) be partitioned into |V|/3 vertex-disjoint paths on 3 vertices?
inline bool has_p3_packing(const tcov::SimpleGraph& G) {
  std::vector<std::vector<char>> adj(G.n, std::vector<char>(G.n, 0));
  for (auto [u, v] : G.edges) adj[u][v] = adj[v][u] = 1;
  std::vector<char> used(G.n, 0);
  auto rec = [&](auto&& self) -> bool {
    int a = -1;
    for (int v = 0; v < G.n; ++v)
      if (!used[v]) {
        a = v;
        break;
      }
    if (a < 0) return true;
    used[a] = 1;
    for (int b = 0; b < G.n; ++b) {
      if (used[b]) continue;
      used[b] = 1;
      for (int c = 0; c < G.n; ++c) {
        if (used[c]) continue;
        // a-b-c, a-c-b or b-a-c as a path on {a,b,c}
        bool path = (adj[a][b] && adj[b][c]) || (adj[a][c] && adj[c][b]) || (adj[b][a] && adj[a][c]);
        if (!path) continue;
        used[c] = 1;
        if (self(self)) return true;
        used[c] = 0;
      }
      used[b] = 0;
    }
    used[a] = 0;
    return false;
  };
  return rec(rec);
}

}  // namespace support
