#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <variant>

#include "tcov/hypergraph.hpp"
#include "tcov/oracle.hpp"

namespace tcov {

// A k-mini test cover: at most 2k edges inducing at least |T| + k classes.
// Its existence is equivalent to a test cover of size at most n - k.
struct MiniTestCover {
  EdgeSet T;
  int class_count = 0;
  int k = 0;
};

// The obstruction structure when no k-mini test cover is found greedily:
// F induces classes C_1..C_l inside V(F) plus the class G of vertices in no
// edge of F; components are the maximal G-portions (e & G over all edges).
struct FStructure {
  EdgeSet F;
  std::vector<VertexSet> classes;  // C_1..C_l, canonically ordered
  VertexSet G;
  VertexSet C;  // union of the classes
  std::vector<VertexSet> components;
  std::map<std::pair<int, int>, EdgeSet> marks_pair;  // E_{i,j}
  std::map<int, EdgeSet> marks_single;                // E_i
  std::vector<int> marked_components;                 // indices into components
};

namespace detail {

inline bool cuts(const std::vector<int>& edge, const VertexSet& K) {
  auto inside = set_intersection(edge, K);
  return !inside.empty() && inside.size() < K.size();
}

// All induced classes of F, including the uncovered one, used for the
// structural conditions below.
inline std::vector<VertexSet> all_f_classes(const Hypergraph& H, const FStructure& fs) {
  auto cl = fs.classes;
  if (!fs.G.empty()) cl.push_back(fs.G);
  return cl;
}

inline void validate_fstructure(const Hypergraph& H, const FStructure& fs, int k) {
  if (static_cast<int>(fs.F.size()) >= 2 * k)
    throw invariant_error("FStructure: F has 2k or more edges");
  int total = induced_class_count(H, fs.F);
  if (total >= static_cast<int>(fs.F.size()) + k)
    throw invariant_error("FStructure: F induces |F|+k or more classes");
  auto cl = all_f_classes(H, fs);
  for (const auto& e : H.edges) {
    int cut = 0;
    for (const auto& K : cl)
      if (cuts(e, K)) ++cut;
    if (cut > 1) throw invariant_error("FStructure: an edge cuts two classes of F");
  }
  for (int a = 0; a < H.m(); ++a)
    for (int b = a + 1; b < H.m(); ++b) {
      const auto& e = H.edges[a];
      const auto& f = H.edges[b];
      for (const auto& K : cl) {
        auto both = set_intersection(set_intersection(e, f), K);
        auto only_e = set_intersection(set_difference(e, f), K);
        auto only_f = set_intersection(set_difference(f, e), K);
        auto neither = set_difference(K, set_union(e, f));
        if (!both.empty() && !only_e.empty() && !only_f.empty() && !neither.empty())
          throw invariant_error("FStructure: an edge pair splits a class into four parts");
      }
    }
  int r = std::max(H.r(), 1);
  if (static_cast<int>(fs.classes.size()) >= 3 * k)
    throw invariant_error("FStructure: l >= 3k classes");
  for (const auto& comp : fs.components)
    if (static_cast<int>(comp.size()) > r)
      throw invariant_error("FStructure: component larger than r");
  if (static_cast<int>(fs.C.size()) > (2 * k - 1) * r)
    throw invariant_error("FStructure: |C| exceeds (2k-1)r");
}

}  // namespace detail

// Greedy search for a k-mini test cover: add a single edge gaining >= 2
// classes, else a pair gaining >= 3; after k-1 additions the accumulated set
// is a mini cover. A fixpoint short of that yields the structure F, whose
// conditions follow from the absence of such gains.
inline std::variant<MiniTestCover, FStructure> find_mini_or_F(const Hypergraph& H, int k) {
  if (k < 2) throw contract_error("find_mini_or_F: k must be at least 2");
  if (!is_test_cover(H)) throw contract_error("find_mini_or_F: edge set is not a test cover");

  EdgeSet T;
  int classes = induced_class_count(H, T);
  int steps = 0;
  while (steps < k - 1) {
    int gain1 = -1;
    for (int e = 0; e < H.m() && gain1 < 0; ++e) {
      if (detail::contains(T, e)) continue;
      EdgeSet next = T;
      next.push_back(e);
      detail::sort_unique(next);
      if (induced_class_count(H, next) >= classes + 2) gain1 = e;
    }
    if (gain1 >= 0) {
      T.push_back(gain1);
      detail::sort_unique(T);
      classes = induced_class_count(H, T);
      ++steps;
      continue;
    }
    int pe = -1, pf = -1;
    for (int e = 0; e < H.m() && pe < 0; ++e) {
      if (detail::contains(T, e)) continue;
      for (int f = e + 1; f < H.m(); ++f) {
        if (detail::contains(T, f)) continue;
        EdgeSet next = T;
        next.push_back(e);
        next.push_back(f);
        detail::sort_unique(next);
        if (induced_class_count(H, next) >= classes + 3) {
          pe = e;
          pf = f;
          break;
        }
      }
    }
    if (pe < 0) break;
    T.push_back(pe);
    T.push_back(pf);
    detail::sort_unique(T);
    classes = induced_class_count(H, T);
    ++steps;
  }

  if (classes >= static_cast<int>(T.size()) + k) {
    if (static_cast<int>(T.size()) > 2 * k)
      throw invariant_error("find_mini_or_F: mini cover exceeds 2k edges");
    return MiniTestCover{std::move(T), classes, k};
  }

  FStructure fs;
  fs.F = std::move(T);
  Partition part = induced_classes(H, fs.F);
  VertexSet covered;
  for (int q : fs.F) covered = detail::set_union(covered, H.edges[q]);
  for (const auto& K : part.classes) {
    if (detail::intersects(K, covered)) {
      fs.classes.push_back(K);
      fs.C = detail::set_union(fs.C, K);
    } else {
      fs.G = detail::set_union(fs.G, K);
    }
  }
  // Maximal G-portions, ordered by smallest contained vertex.
  std::vector<VertexSet> portions;
  for (const auto& e : H.edges) {
    auto p = detail::set_intersection(e, fs.G);
    if (!p.empty()) portions.push_back(std::move(p));
  }
  for (const auto& p : portions) {
    bool maximal = true;
    for (const auto& q : portions)
      if (p != q && detail::is_subset(p, q)) maximal = false;
    if (maximal && std::find(fs.components.begin(), fs.components.end(), p) == fs.components.end())
      fs.components.push_back(p);
  }
  std::sort(fs.components.begin(), fs.components.end(),
            [](const VertexSet& a, const VertexSet& b) { return a[0] != b[0] ? a[0] < b[0] : a < b; });
  detail::validate_fstructure(H, fs, k);
  return fs;
}

// Component marking: for each ordered class pair (C_i, C_j) mark up to 2k
// unmarked components holding the G-portion of an edge containing C_i and
// missing C_j; then per class up to 2k+1 components holding an edge
// containing C_i. Requires the size guard |V| > (7k+2)r, which makes the
// maximal components pairwise disjoint.
inline FStructure build_marks(const Hypergraph& H, int k, FStructure fs) {
  int r = std::max(H.r(), 2);
  if (H.n <= (7 * k + 2) * r)
    throw contract_error("build_marks: instance is below the size guard");
  for (std::size_t a = 0; a < fs.components.size(); ++a)
    for (std::size_t b = a + 1; b < fs.components.size(); ++b)
      if (detail::intersects(fs.components[a], fs.components[b]))
        throw contract_error("build_marks: maximal components overlap");

  int nc = static_cast<int>(fs.components.size());
  std::vector<char> marked(nc, 0);
  auto portion_component = [&](const std::vector<int>& edge) {
    auto p = detail::set_intersection(edge, fs.G);
    if (p.empty()) return -1;
    for (int c = 0; c < nc; ++c)
      if (detail::is_subset(p, fs.components[c])) return c;
    return -1;
  };

  int l = static_cast<int>(fs.classes.size());
  for (int i = 0; i < l; ++i) {
    for (int j = 0; j < l; ++j) {
      if (i == j) continue;
      EdgeSet rec;
      for (int c = 0; c < nc && static_cast<int>(rec.size()) < 2 * k; ++c) {
        if (marked[c]) continue;
        for (int e = 0; e < H.m(); ++e) {
          if (!detail::is_subset(fs.classes[i], H.edges[e])) continue;
          if (detail::intersects(H.edges[e], fs.classes[j])) continue;
          if (portion_component(H.edges[e]) != c) continue;
          marked[c] = 1;
          rec.push_back(e);
          fs.marked_components.push_back(c);
          break;
        }
      }
      if (!rec.empty()) fs.marks_pair[{i, j}] = std::move(rec);
    }
  }
  for (int i = 0; i < l; ++i) {
    EdgeSet rec;
    for (int c = 0; c < nc && static_cast<int>(rec.size()) < 2 * k + 1; ++c) {
      if (marked[c]) continue;
      for (int e = 0; e < H.m(); ++e) {
        if (!detail::is_subset(fs.classes[i], H.edges[e])) continue;
        if (portion_component(H.edges[e]) != c) continue;
        marked[c] = 1;
        rec.push_back(e);
        fs.marked_components.push_back(c);
        break;
      }
    }
    if (!rec.empty()) fs.marks_single[i] = std::move(rec);
  }
  detail::sort_unique(fs.marked_components);
  return fs;
}

enum class NkVerdict { Yes, Reduced };

struct NkKernelResult {
  NkVerdict verdict = NkVerdict::Reduced;
  std::optional<std::pair<Hypergraph, int>> kernel;
  EdgeSet kept_edges;  // kernel edge q came from original index kept_edges[q]
  std::optional<MiniTestCover> mini;
};

// The n-k kernel: small instances pass through unchanged; otherwise find a
// mini cover (yes) or mark components and delete every G-cutting edge whose
// portion lies in no marked component, then all isolated vertices but one.
inline NkKernelResult kernelize_nk(const Hypergraph& H, int k) {
  if (!is_test_cover(H)) throw contract_error("kernelize_nk: edge set is not a test cover");
  NkKernelResult res;
  if (k <= 1) {
    res.verdict = NkVerdict::Yes;
    res.mini = MiniTestCover{{}, induced_class_count(H, {}), k};
    return res;
  }
  int r = std::max(H.r(), 2);
  if (H.n <= (7 * k + 2) * r) {
    res.kernel = {H, k};
    res.kept_edges = all_edges(H);
    return res;
  }
  auto found = find_mini_or_F(H, k);
  if (auto* mini = std::get_if<MiniTestCover>(&found)) {
    res.verdict = NkVerdict::Yes;
    res.mini = *mini;
    return res;
  }
  FStructure fs = build_marks(H, k, std::get<FStructure>(found));

  std::vector<VertexSet> marked;
  for (int c : fs.marked_components) marked.push_back(fs.components[c]);
  std::vector<std::vector<int>> edges;
  for (int e = 0; e < H.m(); ++e) {
    auto p = detail::set_intersection(H.edges[e], fs.G);
    bool keep = p.empty();
    for (const auto& comp : marked)
      if (!keep && detail::is_subset(p, comp)) keep = true;
    if (keep) {
      edges.push_back(H.edges[e]);
      res.kept_edges.push_back(e);
    }
  }
  // Drop isolated vertices, keeping the lowest-id one if any exist.
  std::vector<char> used(H.n, 0);
  for (const auto& e : edges)
    for (int v : e) used[v] = 1;
  std::vector<int> remap(H.n, -1);
  int nn = 0;
  bool kept_isolated = false;
  for (int v = 0; v < H.n; ++v) {
    if (used[v] || !kept_isolated) {
      if (!used[v]) kept_isolated = true;
      remap[v] = nn++;
    }
  }
  for (auto& e : edges)
    for (auto& v : e) v = remap[v];

  long long vbound = 18LL * k * k * k * r;
  if (nn > vbound) throw invariant_error("kernelize_nk: vertex count exceeds 18k^3r");
  long double ebound = std::pow(static_cast<long double>(vbound), static_cast<long double>(r));
  if (static_cast<long double>(edges.size()) > ebound)
    throw invariant_error("kernelize_nk: edge count exceeds (18k^3r)^r");

  res.kernel = {Hypergraph(nn, std::move(edges)), k};
  return res;
}

struct NkResult {
  bool yes = false;
  std::optional<MiniTestCover> witness;  // edges indexed into the original
};

// Decides whether a test cover of size at most n-k exists: kernelize, then
// look for a k-mini test cover among kernel edge subsets of size at most 2k.
inline NkResult solve_nk(const Hypergraph& H, int k, const SearchBudget& budget = {}) {
  if (!is_test_cover(H)) throw contract_error("solve_nk: edge set is not a test cover");
  if (k <= 1) return {true, MiniTestCover{{}, induced_class_count(H, {}), k}};
  NkKernelResult ker = kernelize_nk(H, k);
  if (ker.verdict == NkVerdict::Yes) return {true, ker.mini};

  const Hypergraph& K = ker.kernel->first;
  int m = K.m();
  std::uint64_t nodes = 0;
  for (int s = 1; s <= std::min(2 * k, m); ++s) {
    std::vector<int> comb(s);
    for (int i = 0; i < s; ++i) comb[i] = i;
    while (true) {
      if (++nodes > budget.max_nodes) throw budget_error("solve_nk: subset budget exceeded");
      int classes = induced_class_count(K, comb);
      if (classes >= s + k) {
        EdgeSet orig;
        for (int q : comb) orig.push_back(ker.kept_edges[q]);
        detail::sort_unique(orig);
        int orig_classes = induced_class_count(H, orig);
        if (orig_classes < s + k)
          throw invariant_error("solve_nk: kernel mini cover does not lift to the original");
        return {true, MiniTestCover{std::move(orig), orig_classes, k}};
      }
      int i = s - 1;
      while (i >= 0 && comb[i] == m - s + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return {false, std::nullopt};
}

}  // namespace tcov
