#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tcov {

class contract_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class invariant_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sorted, duplicate-free vertex ids.
using VertexSet = std::vector<int>;
// Sorted, duplicate-free edge indices into a Hypergraph's edge list.
using EdgeSet = std::vector<int>;

namespace detail {

inline void sort_unique(std::vector<int>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline bool contains(const std::vector<int>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), x);
}

inline std::vector<int> set_difference(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<int> set_intersection(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline std::vector<int> set_union(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline bool intersects(const std::vector<int>& a, const std::vector<int>& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      return true;
  }
  return false;
}

inline bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

// Hypergraph (V, E): vertices are ids 0..n-1, edges are nonempty sorted vertex
// sets. Duplicate edges are kept: they are distinct tests and their count
// matters for the m-k parameterization.
struct Hypergraph {
  int n = 0;
  std::vector<std::vector<int>> edges;

  Hypergraph() = default;
  Hypergraph(int n_, std::vector<std::vector<int>> edges_) : n(n_), edges(std::move(edges_)) {
    if (n < 0) throw contract_error("Hypergraph: negative vertex count");
    for (auto& e : edges) {
      detail::sort_unique(e);
      if (e.empty()) throw contract_error("Hypergraph: empty edge (drop empty edges first)");
      if (e.front() < 0 || e.back() >= n) throw contract_error("Hypergraph: vertex id out of range");
    }
  }

  int m() const { return static_cast<int>(edges.size()); }

  // Maximum edge cardinality (0 when there are no edges).
  int r() const {
    std::size_t best = 0;
    for (const auto& e : edges) best = std::max(best, e.size());
    return static_cast<int>(best);
  }

  void check_edge_index(int q) const {
    if (q < 0 || q >= m()) throw contract_error("edge index out of range");
  }

  void check_vertex(int x) const {
    if (x < 0 || x >= n) throw contract_error("vertex id out of range");
  }

  bool operator==(const Hypergraph&) const = default;
};

// Removes empty edges in place and returns the positions dropped, so callers
// producing empty edges (set-difference reductions) can log the event.
inline std::vector<int> drop_empty_edges(std::vector<std::vector<int>>& edges) {
  std::vector<int> dropped;
  std::vector<std::vector<int>> kept;
  kept.reserve(edges.size());
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    if (edges[i].empty())
      dropped.push_back(i);
    else
      kept.push_back(std::move(edges[i]));
  }
  edges = std::move(kept);
  return dropped;
}

inline EdgeSet all_edges(const Hypergraph& H) {
  EdgeSet T(H.m());
  for (int i = 0; i < H.m(); ++i) T[i] = i;
  return T;
}

inline void check_edge_set(const Hypergraph& H, const EdgeSet& T) {
  for (int q : T) H.check_edge_index(q);
}

// The classes induced by an edge subset: maximal vertex sets no pair of which
// is separated. Classes are listed in order of their smallest member.
struct Partition {
  std::vector<std::vector<int>> classes;
  std::vector<int> class_of;

  int size() const { return static_cast<int>(classes.size()); }
};

// True iff exactly one of x, y lies in the edge.
inline bool separates(const std::vector<int>& edge, int x, int y) {
  if (x == y) throw contract_error("separates: x == y");
  if (x < 0 || y < 0) throw contract_error("separates: negative vertex id");
  return detail::contains(edge, x) != detail::contains(edge, y);
}

inline bool separates(const Hypergraph& H, int edge_index, int x, int y) {
  H.check_edge_index(edge_index);
  H.check_vertex(x);
  H.check_vertex(y);
  return separates(H.edges[edge_index], x, y);
}

namespace detail {

// Iterated partition refinement over class-of labels. Works for any n.
struct Refinement {
  std::vector<int> class_of;
  std::vector<int> class_size;
  int num_classes = 0;

  explicit Refinement(int n) : class_of(n, 0) {
    if (n > 0) {
      class_size.push_back(n);
      num_classes = 1;
    }
  }

  // Splits every class the edge cuts into its inside/outside parts.
  // Returns the number of classes added.
  int refine(const std::vector<int>& edge) {
    std::vector<std::pair<int, int>> touched;  // (class, members inside edge)
    for (int v : edge) {
      int c = class_of[v];
      bool found = false;
      for (auto& t : touched)
        if (t.first == c) {
          ++t.second;
          found = true;
          break;
        }
      if (!found) touched.emplace_back(c, 1);
    }
    std::vector<std::pair<int, int>> remap;  // old class -> class for inside part
    for (auto& [c, cnt] : touched) {
      if (cnt < class_size[c]) {
        int nc = num_classes++;
        class_size.push_back(cnt);
        class_size[c] -= cnt;
        remap.emplace_back(c, nc);
      }
    }
    for (int v : edge) {
      int c = class_of[v];
      for (auto& [oc, nc] : remap)
        if (oc == c) {
          class_of[v] = nc;
          break;
        }
    }
    return static_cast<int>(remap.size());
  }

  // How many classes the edge would add, without applying it.
  int probe(const std::vector<int>& edge) const {
    std::vector<std::pair<int, int>> touched;
    for (int v : edge) {
      int c = class_of[v];
      bool found = false;
      for (auto& t : touched)
        if (t.first == c) {
          ++t.second;
          found = true;
          break;
        }
      if (!found) touched.emplace_back(c, 1);
    }
    int added = 0;
    for (auto& [c, cnt] : touched)
      if (cnt < class_size[c]) ++added;
    return added;
  }
};

inline std::uint64_t edge_mask64(const std::vector<int>& e) {
  std::uint64_t w = 0;
  for (int v : e) w |= std::uint64_t{1} << v;
  return w;
}

// Single-word bitset refinement, the fast path for n <= 64.
struct MaskRefinement {
  std::vector<std::uint64_t> classes;

  explicit MaskRefinement(int n) {
    if (n > 0) classes.push_back(n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1));
  }

  int refine(std::uint64_t e) {
    int added = 0;
    std::size_t sz = classes.size();
    for (std::size_t i = 0; i < sz; ++i) {
      std::uint64_t inside = classes[i] & e;
      if (inside != 0 && inside != classes[i]) {
        classes[i] ^= inside;
        classes.push_back(inside);
        ++added;
      }
    }
    return added;
  }

  int count() const { return static_cast<int>(classes.size()); }
};

}  // namespace detail

// Number of classes induced by T. Semantically identical on both the bitset
// fast path (n <= 64) and the generic path.
inline int induced_class_count(const Hypergraph& H, const EdgeSet& T) {
  check_edge_set(H, T);
  if (H.n == 0) return 0;
  if (H.n <= 64) {
    detail::MaskRefinement ref(H.n);
    for (int q : T) ref.refine(detail::edge_mask64(H.edges[q]));
    return ref.count();
  }
  detail::Refinement ref(H.n);
  for (int q : T) ref.refine(H.edges[q]);
  return ref.num_classes;
}

inline Partition induced_classes(const Hypergraph& H, const EdgeSet& T) {
  check_edge_set(H, T);
  detail::Refinement ref(H.n);
  for (int q : T) ref.refine(H.edges[q]);
  // Renumber classes in order of smallest member.
  Partition P;
  P.class_of.assign(H.n, -1);
  std::vector<int> label(ref.num_classes, -1);
  for (int v = 0; v < H.n; ++v) {
    int c = ref.class_of[v];
    if (label[c] < 0) {
      label[c] = static_cast<int>(P.classes.size());
      P.classes.emplace_back();
    }
    P.class_of[v] = label[c];
    P.classes[label[c]].push_back(v);
  }
  return P;
}

inline bool is_test_cover(const Hypergraph& H, const EdgeSet& T) {
  return induced_class_count(H, T) == H.n;
}

inline bool is_test_cover(const Hypergraph& H) { return is_test_cover(H, all_edges(H)); }

// N_j[X] over vertices: N_0[X] = X, each step adds every vertex sharing an
// edge with the current set.
inline VertexSet vertex_neighborhood(const Hypergraph& H, const VertexSet& X, int j) {
  if (j < 0) throw contract_error("vertex_neighborhood: j must be nonnegative");
  VertexSet cur = X;
  detail::sort_unique(cur);
  for (int v : cur) H.check_vertex(v);
  for (int step = 0; step < j; ++step) {
    VertexSet next = cur;
    for (const auto& e : H.edges)
      if (detail::intersects(e, cur)) next = detail::set_union(next, e);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

// N_j[F] over edges: each step adds every edge intersecting an edge of the
// current set.
inline EdgeSet edge_neighborhood(const Hypergraph& H, const EdgeSet& F, int j) {
  if (j < 0) throw contract_error("edge_neighborhood: j must be nonnegative");
  EdgeSet cur = F;
  detail::sort_unique(cur);
  check_edge_set(H, cur);
  for (int step = 0; step < j; ++step) {
    VertexSet covered;
    for (int q : cur) covered = detail::set_union(covered, H.edges[q]);
    EdgeSet next = cur;
    for (int q = 0; q < H.m(); ++q)
      if (detail::intersects(H.edges[q], covered)) next.push_back(q);
    detail::sort_unique(next);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

inline int degree(const Hypergraph& H, int x) {
  H.check_vertex(x);
  int d = 0;
  for (const auto& e : H.edges)
    if (detail::contains(e, x)) ++d;
  return d;
}

inline std::vector<int> all_degrees(const Hypergraph& H) {
  std::vector<int> deg(H.n, 0);
  for (const auto& e : H.edges)
    for (int v : e) ++deg[v];
  return deg;
}

}  // namespace tcov
