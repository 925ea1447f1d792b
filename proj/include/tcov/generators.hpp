#pragma once

#include <utility>

#include "tcov/bounds.hpp"
#include "tcov/hypergraph.hpp"
#include "tcov/oracle.hpp"
#include "tcov/prng.hpp"

namespace tcov {

// r-partite r-uniform hypergraph: parts X_1..X_r of size n_prime, part i
// holding ids [(i-1)*n_prime, i*n_prime); each edge has one vertex per part.
struct RPartiteHypergraph {
  int r = 3;
  int n_prime = 0;
  std::vector<std::vector<int>> edges;

  RPartiteHypergraph(int r_, int n_prime_, std::vector<std::vector<int>> edges_)
      : r(r_), n_prime(n_prime_), edges(std::move(edges_)) {
    if (r < 3) throw contract_error("RPartiteHypergraph: r must be at least 3");
    if (n_prime < 1) throw contract_error("RPartiteHypergraph: part size must be positive");
    for (auto& e : edges) {
      detail::sort_unique(e);
      if (static_cast<int>(e.size()) != r)
        throw contract_error("RPartiteHypergraph: edge must have exactly one vertex per part");
      for (int i = 0; i < r; ++i)
        if (e[i] < i * n_prime || e[i] >= (i + 1) * n_prime)
          throw contract_error("RPartiteHypergraph: edge must have exactly one vertex per part");
    }
  }

  int num_vertices() const { return r * n_prime; }
};

// Simple undirected graph: no loops, no duplicate pairs.
struct SimpleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;

  SimpleGraph(int n_, std::vector<std::pair<int, int>> edges_) : n(n_), edges(std::move(edges_)) {
    if (n < 0) throw contract_error("SimpleGraph: negative vertex count");
    for (auto& [u, v] : edges) {
      if (u == v) throw contract_error("SimpleGraph: loop edge");
      if (u > v) std::swap(u, v);
      if (u < 0 || v >= n) throw contract_error("SimpleGraph: vertex id out of range");
    }
    auto sorted = edges;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw contract_error("SimpleGraph: duplicate edge");
  }
};

// The tight r x r grid: vertex x_{i,j} has id (i-1)*r + (j-1); edges are the
// first r-1 rows followed by the first r-1 columns. Minimum cover 2(r-1).
inline Hypergraph gen_grid(int r) {
  if (r < 2) throw contract_error("gen_grid: r must be at least 2");
  std::vector<std::vector<int>> edges;
  for (int q = 1; q <= r - 1; ++q) {
    std::vector<int> row;
    for (int j = 1; j <= r; ++j) row.push_back((q - 1) * r + (j - 1));
    edges.push_back(std::move(row));
  }
  for (int s = 1; s <= r - 1; ++s) {
    std::vector<int> col;
    for (int i = 1; i <= r; ++i) col.push_back((i - 1) * r + (s - 1));
    edges.push_back(std::move(col));
  }
  return Hypergraph(r * r, std::move(edges));
}

// Disjoint union of `copies` grids; every copy beyond the first omits its
// x_{r,r} (which lies in no edge), so the whole instance keeps exactly one
// degree-zero vertex and stays tight: min cover = copies * 2(r-1).
inline Hypergraph gen_grid_multi(int r, int copies) {
  if (r < 2) throw contract_error("gen_grid_multi: r must be at least 2");
  if (copies < 1) throw contract_error("gen_grid_multi: copies must be at least 1");
  std::vector<std::vector<int>> edges;
  int n = 0;
  for (int c = 0; c < copies; ++c) {
    int base = n;
    // x_{r,r} is the row-major last id, so omitting it in later copies does
    // not touch any edge.
    n += (c == 0) ? r * r : r * r - 1;
    for (int q = 1; q <= r - 1; ++q) {
      std::vector<int> row;
      for (int j = 1; j <= r; ++j) row.push_back(base + (q - 1) * r + (j - 1));
      edges.push_back(std::move(row));
    }
    for (int s = 1; s <= r - 1; ++s) {
      std::vector<int> col;
      for (int i = 1; i <= r; ++i) col.push_back(base + (i - 1) * r + (s - 1));
      edges.push_back(std::move(col));
    }
  }
  Hypergraph H(n, std::move(edges));
  // The gluing is our reading of the construction, so it self-verifies.
  if (!is_test_cover(H)) throw invariant_error("gen_grid_multi: result is not a test cover");
  int expected = copies * 2 * (r - 1);
  if (expected != lower_bound_r(H.n, r))
    throw invariant_error("gen_grid_multi: size formula disagrees with the lower bound");
  if (H.m() <= 10) {
    CoverResult min = exact_min(H);
    if (min.size != expected) throw invariant_error("gen_grid_multi: oracle disagrees on min cover");
  }
  return H;
}

// Reduction from r-Dimensional Matching. Output vertex layout: x_{i,j} keeps
// the input id (i-1)*n' + (j-1); then y_{i,p} for i in [r-1] and
// p in {r-1, 2(r-1), ..., n'} ascending within i; y_0 is the last id.
// Edges: the matching edges in input order, then e_{i,p} in the same order.
// G has a perfect matching iff the output has a test cover of size `target`.
inline std::pair<Hypergraph, int> reduce_from_matching(const RPartiteHypergraph& G) {
  int r = G.r;
  int np = G.n_prime;
  if (np % (r - 1) != 0)
    throw contract_error("reduce_from_matching: part size must be divisible by r-1");
  int groups = np / (r - 1);  // values of p per row i
  int y_base = r * np;
  auto y_id = [&](int i, int p) { return y_base + (i - 1) * groups + (p / (r - 1) - 1); };
  int n = r * np + np + 1;  // + (r-1)*groups y's + y_0 = rn' + n' + 1

  std::vector<std::vector<int>> edges = G.edges;
  for (int i = 1; i <= r - 1; ++i) {
    for (int p = r - 1; p <= np; p += r - 1) {
      std::vector<int> e;
      for (int t = p - r + 2; t <= p; ++t) e.push_back((i - 1) * np + (t - 1));
      e.push_back(y_id(i, p));
      edges.push_back(std::move(e));
    }
  }
  int target = 2 * np;  // = 2(n-1)/(r+1)
  return {Hypergraph(n, std::move(edges)), target};
}

// Reduction from P3-packing: the graph itself plus one isolated vertex
// (appended as id n). G packs |V|/3 disjoint P3's iff the output has a test
// cover of size `target` = 2|V|/3.
inline std::pair<Hypergraph, int> reduce_from_p3(const SimpleGraph& G) {
  if (G.n % 3 != 0) throw contract_error("reduce_from_p3: vertex count must be divisible by 3");
  std::vector<std::vector<int>> edges;
  for (auto [u, v] : G.edges) edges.push_back({u, v});
  return {Hypergraph(G.n + 1, std::move(edges)), 2 * G.n / 3};
}

// Seeded random r-bounded hypergraph: m edges, each a uniform subset with
// size uniform in [1, min(r, n)], drawn from splitmix64.
inline Hypergraph gen_random(int n, int m, int r, std::uint64_t seed) {
  if (n < 1) throw contract_error("gen_random: n must be positive");
  if (m < 0) throw contract_error("gen_random: m must be nonnegative");
  if (r < 2) throw contract_error("gen_random: r must be at least 2");
  SplitMix64 rng(seed);
  int cap = std::min(r, n);
  std::vector<std::vector<int>> edges;
  for (int q = 0; q < m; ++q) {
    int size = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(cap)));
    std::vector<int> e;
    while (static_cast<int>(e.size()) < size) {
      int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      if (!detail::contains(e, v)) {
        e.push_back(v);
        std::sort(e.begin(), e.end());
      }
    }
    edges.push_back(std::move(e));
  }
  return Hypergraph(n, std::move(edges));
}

}  // namespace tcov
