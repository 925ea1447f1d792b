#pragma once

#include <optional>

#include "tcov/hypergraph.hpp"

namespace tcov {

// ceil(2(n-1)/(r+1)): the size-r lower bound on any test cover.
inline int lower_bound_r(int n, int r) {
  if (n < 1) throw contract_error("lower_bound_r: n must be positive");
  if (r < 2) throw contract_error("lower_bound_r: r must be at least 2");
  return (2 * (n - 1) + r) / (r + 1);
}

// ceil(log2 n), by integer bit length.
inline int lower_bound_log(int n) {
  if (n < 1) throw contract_error("lower_bound_log: n must be positive");
  return std::bit_width(static_cast<unsigned>(n - 1));
}

namespace detail {

// Greedy step shared by the class-extension routines: among candidate edges
// not yet picked, the one adding the most classes, ties by lowest index.
inline int best_split_edge(const std::vector<std::vector<int>>& edges, const std::vector<char>& used,
                           const Refinement& ref) {
  int best = -1;
  int best_gain = -1;
  for (int q = 0; q < static_cast<int>(edges.size()); ++q) {
    if (used[q]) continue;
    int gain = ref.probe(edges[q]);
    if (gain > best_gain) {
      best_gain = gain;
      best = q;
    }
  }
  return best;
}

}  // namespace detail

// A subset F of exactly i edges inducing at least i+1 classes.
inline EdgeSet extend_classes(const Hypergraph& H, int i) {
  int t = induced_class_count(H, all_edges(H));
  if (t < 2) throw contract_error("extend_classes: the edge set induces fewer than 2 classes");
  if (i < 1 || i > t - 1 || i > H.m()) throw contract_error("extend_classes: i out of range");
  detail::Refinement ref(H.n);
  std::vector<char> used(H.m(), 0);
  EdgeSet F;
  for (int step = 0; step < i; ++step) {
    int q = detail::best_split_edge(H.edges, used, ref);
    used[q] = 1;
    ref.refine(H.edges[q]);
    F.push_back(q);
  }
  if (ref.num_classes < i + 1) throw invariant_error("extend_classes: class bound violated");
  detail::sort_unique(F);
  return F;
}

// A test cover of at most n-1 edges, grown greedily until n classes.
inline EdgeSet bondy_prune(const Hypergraph& H) {
  if (!is_test_cover(H)) throw contract_error("bondy_prune: edge set is not a test cover");
  detail::Refinement ref(H.n);
  std::vector<char> used(H.m(), 0);
  EdgeSet F;
  while (ref.num_classes < H.n) {
    int q = detail::best_split_edge(H.edges, used, ref);
    used[q] = 1;
    if (ref.refine(H.edges[q]) == 0) throw invariant_error("bondy_prune: no edge makes progress");
    F.push_back(q);
  }
  detail::sort_unique(F);
  return F;
}

// A subset of the candidate pool separating every x in X from every y in Y,
// with at most t_X + t_Y - 1 edges. Works on the restriction to X u Y and
// lifts the chosen restricted edges back to pool indices.
inline EdgeSet separating_subset(const Hypergraph& H, const VertexSet& X, const VertexSet& Y,
                                 const std::optional<EdgeSet>& pool = std::nullopt) {
  VertexSet Xs = X, Ys = Y;
  detail::sort_unique(Xs);
  detail::sort_unique(Ys);
  for (int v : Xs) H.check_vertex(v);
  for (int v : Ys) H.check_vertex(v);
  if (detail::intersects(Xs, Ys)) throw contract_error("separating_subset: X and Y intersect");
  if (Xs.empty() || Ys.empty()) return {};

  VertexSet U = detail::set_union(Xs, Ys);
  std::vector<int> local(H.n, -1);
  for (int i = 0; i < static_cast<int>(U.size()); ++i) local[U[i]] = i;
  std::vector<char> in_x(U.size(), 0);
  for (int v : Xs) in_x[local[v]] = 1;

  EdgeSet candidates = pool ? *pool : all_edges(H);
  check_edge_set(H, candidates);
  std::vector<std::vector<int>> restricted;  // edge n U, in local ids
  std::vector<int> source;                   // pool edge index per restricted edge
  for (int q : candidates) {
    std::vector<int> re;
    for (int v : H.edges[q])
      if (local[v] >= 0) re.push_back(local[v]);
    if (!re.empty()) {
      restricted.push_back(std::move(re));
      source.push_back(q);
    }
  }

  int nu = static_cast<int>(U.size());
  detail::Refinement full(nu);
  for (const auto& re : restricted) full.refine(re);
  // Each restricted class must lie inside X or inside Y.
  {
    std::vector<int> seen_x(full.num_classes, -1), seen_y(full.num_classes, -1);
    for (int i = 0; i < nu; ++i) {
      int c = full.class_of[i];
      (in_x[i] ? seen_x : seen_y)[c] = i;
      if (seen_x[c] >= 0 && seen_y[c] >= 0)
        throw contract_error("separating_subset: pair not separated: " + std::to_string(U[seen_x[c]]) +
                             " and " + std::to_string(U[seen_y[c]]));
    }
  }

  int target = full.num_classes;
  detail::Refinement ref(nu);
  std::vector<char> used(restricted.size(), 0);
  EdgeSet F;
  while (ref.num_classes < target) {
    int q = detail::best_split_edge(restricted, used, ref);
    used[q] = 1;
    if (ref.refine(restricted[q]) == 0)
      throw invariant_error("separating_subset: greedy stalled before reaching the class target");
    F.push_back(source[q]);
  }
  detail::sort_unique(F);
  return F;
}

// Tightness profile for covers of size exactly the r-bound: one vertex of
// degree zero, one degree-one vertex per edge, everything else degree two.
inline bool degree_profile_check(const Hypergraph& H, const EdgeSet& T) {
  check_edge_set(H, T);
  int r_eff = std::max(H.r(), 2);
  if (static_cast<int>(T.size()) != lower_bound_r(H.n, r_eff))
    throw contract_error("degree_profile_check: |T| differs from the lower bound");
  if (!is_test_cover(H, T)) throw contract_error("degree_profile_check: T is not a test cover");

  std::vector<int> deg(H.n, 0);
  for (int q : T)
    for (int v : H.edges[q]) ++deg[v];
  int zeros = 0;
  for (int v = 0; v < H.n; ++v) {
    if (deg[v] == 0) ++zeros;
    if (deg[v] > 2) return false;
  }
  if (zeros != 1) return false;
  for (int q : T) {
    int ones = 0;
    for (int v : H.edges[q])
      if (deg[v] == 1) ++ones;
    if (ones != 1) return false;
  }
  return true;
}

}  // namespace tcov
