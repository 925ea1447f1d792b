#pragma once

#include <cstdint>
#include <limits>
#include <optional>

#include "tcov/bounds.hpp"
#include "tcov/hypergraph.hpp"

namespace tcov {

struct SearchBudget {
  std::uint64_t max_nodes = std::numeric_limits<std::uint64_t>::max();
};

struct CoverResult {
  int size = 0;
  EdgeSet witness;
  std::uint64_t nodes = 0;
};

// Exhaustive reference solver: subsets in increasing cardinality, within a
// cardinality in lexicographic index order, so the witness is the
// lexicographically least minimum.
inline CoverResult brute_force_min(const Hypergraph& H, int cap = 22) {
  if (!is_test_cover(H)) throw contract_error("brute_force_min: edge set is not a test cover");
  if (H.m() > cap) throw budget_error("brute_force_min: instance exceeds the edge cap");
  int m = H.m();
  std::vector<std::uint64_t> masks;
  bool small = H.n <= 64;
  if (small)
    for (const auto& e : H.edges) masks.push_back(detail::edge_mask64(e));

  auto covers = [&](const std::vector<int>& comb) {
    if (small) {
      detail::MaskRefinement ref(H.n);
      for (int q : comb) ref.refine(masks[q]);
      return ref.count() == H.n;
    }
    detail::Refinement ref(H.n);
    for (int q : comb) ref.refine(H.edges[q]);
    return ref.num_classes == H.n;
  };

  CoverResult res;
  for (int s = 0; s <= m; ++s) {
    std::vector<int> comb(s);
    for (int i = 0; i < s; ++i) comb[i] = i;
    while (true) {
      ++res.nodes;
      if (covers(comb)) {
        res.size = s;
        res.witness = comb;
        return res;
      }
      // next lexicographic combination
      int i = s - 1;
      while (i >= 0 && comb[i] == m - s + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  throw invariant_error("brute_force_min: no cover found despite test-cover precondition");
}

// Greedy logarithmic approximation: add the edge maximizing the induced class
// count until n classes. At most n-1 edges.
inline EdgeSet greedy_cover(const Hypergraph& H) {
  if (!is_test_cover(H)) throw contract_error("greedy_cover: edge set is not a test cover");
  detail::Refinement ref(H.n);
  std::vector<char> used(H.m(), 0);
  EdgeSet F;
  while (ref.num_classes < H.n) {
    int q = detail::best_split_edge(H.edges, used, ref);
    used[q] = 1;
    if (ref.refine(H.edges[q]) == 0) throw invariant_error("greedy_cover: stalled");
    F.push_back(q);
  }
  detail::sort_unique(F);
  return F;
}

namespace detail {

struct BnBState {
  const Hypergraph* H;
  std::vector<int> order;  // edges, by descending split power at the root
  int r = 2;
  int best_size = 0;
  std::vector<int> best;    // in order positions
  std::vector<int> chosen;  // order positions
  std::uint64_t nodes = 0;
  std::uint64_t max_nodes = 0;

  // Fewest further edges that could reach n classes from t classes: each edge
  // at most doubles the class count and adds at most r new classes.
  int more_needed(int t) const {
    int n = H->n;
    if (t >= n) return 0;
    int by_r = (n - t + r - 1) / r;
    int by_log = 0;
    long long c = t;
    while (c < n) {
      c *= 2;
      ++by_log;
    }
    return std::max(by_r, by_log);
  }

  void dfs(int pos, Refinement& ref) {
    if (++nodes > max_nodes) throw budget_error("exact_min: node budget exceeded");
    if (ref.num_classes == H->n) {
      if (static_cast<int>(chosen.size()) < best_size) {
        best_size = static_cast<int>(chosen.size());
        best = chosen;
      }
      return;
    }
    if (pos == static_cast<int>(order.size())) return;
    if (static_cast<int>(chosen.size()) + more_needed(ref.num_classes) >= best_size) return;
    // Feasibility: all remaining edges together must still reach n classes.
    {
      Refinement probe = ref;
      for (int i = pos; i < static_cast<int>(order.size()); ++i)
        probe.refine(H->edges[order[i]]);
      if (probe.num_classes < H->n) return;
    }
    const auto& e = H->edges[order[pos]];
    if (ref.probe(e) > 0) {
      Refinement inc = ref;
      inc.refine(e);
      chosen.push_back(pos);
      dfs(pos + 1, inc);
      chosen.pop_back();
    }
    dfs(pos + 1, ref);
  }
};

}  // namespace detail

// Branch-and-bound exact minimum, pruned with the class-growth bounds and a
// Bondy-style greedy upper bound. Same size as brute_force_min everywhere.
inline CoverResult exact_min(const Hypergraph& H, const SearchBudget& budget = {}) {
  if (!is_test_cover(H)) throw contract_error("exact_min: edge set is not a test cover");
  EdgeSet ub = greedy_cover(H);

  detail::BnBState st;
  st.H = &H;
  st.r = std::max(H.r(), 1);
  st.max_nodes = budget.max_nodes;
  st.order = all_edges(H);
  std::vector<long long> power(H.m());
  for (int q = 0; q < H.m(); ++q) {
    long long s = static_cast<long long>(H.edges[q].size());
    power[q] = s * (H.n - s);  // pairs the edge separates
  }
  std::stable_sort(st.order.begin(), st.order.end(),
                   [&](int a, int b) { return power[a] > power[b]; });
  st.best_size = static_cast<int>(ub.size());
  for (int q : ub) {
    int pos = static_cast<int>(std::find(st.order.begin(), st.order.end(), q) - st.order.begin());
    st.best.push_back(pos);
  }

  detail::Refinement root(H.n);
  st.dfs(0, root);

  CoverResult res;
  res.size = st.best_size;
  for (int pos : st.best) res.witness.push_back(st.order[pos]);
  detail::sort_unique(res.witness);
  res.nodes = st.nodes;
  return res;
}

// True iff a test cover with at most s edges exists. Does not require the
// full edge set to be a test cover.
inline std::pair<bool, std::optional<EdgeSet>> has_cover_of_size(const Hypergraph& H, int s,
                                                                 const SearchBudget& budget = {}) {
  if (s < 0) return {false, std::nullopt};
  if (H.n <= 1) return {true, EdgeSet{}};
  if (!is_test_cover(H)) return {false, std::nullopt};
  CoverResult best = exact_min(H, budget);
  if (best.size <= s) return {true, best.witness};
  return {false, std::nullopt};
}

}  // namespace tcov
