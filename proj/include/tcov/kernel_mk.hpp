#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <utility>

#include "tcov/bounds.hpp"
#include "tcov/hypergraph.hpp"

namespace tcov {

// Subset-Test-r-Cover(m-k) state: a hypergraph, the black edges that any
// solution must contain, and the parameter.
struct SubsetInstance {
  Hypergraph H;
  EdgeSet black;
  int k = 0;

  SubsetInstance() = default;
  SubsetInstance(Hypergraph H_, EdgeSet black_, int k_) : H(std::move(H_)), black(std::move(black_)), k(k_) {
    detail::sort_unique(black);
    check_edge_set(H, black);
  }

  bool is_black(int q) const { return detail::contains(black, q); }
  bool operator==(const SubsetInstance&) const = default;
};

enum class EdgeColor : unsigned char { Uncolored, Black, Orange, Green };

struct EdgeColoring {
  std::vector<EdgeColor> color;
};

// Replayable log of rule applications. Each entry is one rule firing,
// expressed as primitive instance edits.
struct TraceOp {
  enum Kind { DeleteEdge, DeleteVertex, ReplaceEdge, AddBlackEdge, MarkBlack, SetK } kind;
  int arg = 0;             // edge index, vertex id, or new k
  std::vector<int> verts;  // for ReplaceEdge / AddBlackEdge
};

struct TraceEntry {
  std::string rule;
  std::vector<TraceOp> ops;
};

struct ReductionTrace {
  std::vector<TraceEntry> entries;
};

namespace detail {

inline void apply_op(SubsetInstance& I, const TraceOp& op) {
  switch (op.kind) {
    case TraceOp::DeleteEdge: {
      I.H.check_edge_index(op.arg);
      I.H.edges.erase(I.H.edges.begin() + op.arg);
      EdgeSet nb;
      for (int b : I.black)
        if (b != op.arg) nb.push_back(b > op.arg ? b - 1 : b);
      I.black = std::move(nb);
      break;
    }
    case TraceOp::DeleteVertex: {
      I.H.check_vertex(op.arg);
      for (auto& e : I.H.edges)
        for (auto& v : e) {
          if (v == op.arg) throw invariant_error("trace: deleting a vertex still in an edge");
          if (v > op.arg) --v;
        }
      --I.H.n;
      break;
    }
    case TraceOp::ReplaceEdge: {
      I.H.check_edge_index(op.arg);
      auto verts = op.verts;
      sort_unique(verts);
      if (verts.empty()) throw invariant_error("trace: replacing an edge with the empty set");
      for (int v : verts) I.H.check_vertex(v);
      I.H.edges[op.arg] = std::move(verts);
      break;
    }
    case TraceOp::AddBlackEdge: {
      auto verts = op.verts;
      sort_unique(verts);
      if (verts.empty()) throw invariant_error("trace: adding an empty black edge");
      for (int v : verts) I.H.check_vertex(v);
      I.H.edges.push_back(std::move(verts));
      I.black.push_back(I.H.m() - 1);
      sort_unique(I.black);
      break;
    }
    case TraceOp::MarkBlack: {
      I.H.check_edge_index(op.arg);
      I.black.push_back(op.arg);
      sort_unique(I.black);
      break;
    }
    case TraceOp::SetK:
      I.k = op.arg;
      break;
  }
}

// One rule firing: apply its ops and record them.
inline void apply_entry(SubsetInstance& I, ReductionTrace* trace, TraceEntry entry) {
  for (const auto& op : entry.ops) apply_op(I, op);
  if (trace) trace->entries.push_back(std::move(entry));
}

}  // namespace detail

// Replaying a trace on the instance it was recorded from reproduces the
// reduced instance exactly.
inline SubsetInstance replay(SubsetInstance I, const ReductionTrace& trace) {
  for (const auto& entry : trace.entries)
    for (const auto& op : entry.ops) detail::apply_op(I, op);
  return I;
}

namespace detail {

// Rule 1: a degree-one vertex x whose only edge is the black singleton {x}.
inline bool rule1_step(SubsetInstance& I, ReductionTrace* trace) {
  auto deg = all_degrees(I.H);
  for (int b : I.black) {
    const auto& e = I.H.edges[b];
    if (e.size() == 1 && deg[e[0]] == 1) {
      TraceEntry entry{"rule1", {{TraceOp::DeleteEdge, b, {}}, {TraceOp::DeleteVertex, e[0], {}}}};
      apply_entry(I, trace, std::move(entry));
      return true;
    }
  }
  return false;
}

// Rule 2, first case: a black edge properly contained in another edge.
inline bool rule2_subset_step(SubsetInstance& I, ReductionTrace* trace) {
  for (int b : I.black) {
    const auto& bv = I.H.edges[b];
    for (int e = 0; e < I.H.m(); ++e) {
      if (e == b) continue;
      const auto& ev = I.H.edges[e];
      if (bv.size() < ev.size() && is_subset(bv, ev)) {
        TraceEntry entry{"rule2-subset", {{TraceOp::ReplaceEdge, e, set_difference(ev, bv)}}};
        apply_entry(I, trace, std::move(entry));
        return true;
      }
    }
  }
  return false;
}

// Rule 2, second case: two black edges cutting each other.
inline bool rule2_cut_step(SubsetInstance& I, ReductionTrace* trace) {
  for (std::size_t i = 0; i < I.black.size(); ++i) {
    for (std::size_t j = i + 1; j < I.black.size(); ++j) {
      const auto& a = I.H.edges[I.black[i]];
      const auto& b = I.H.edges[I.black[j]];
      auto common = set_intersection(a, b);
      if (common.empty() || common.size() == a.size() || common.size() == b.size()) continue;
      TraceEntry entry{"rule2-cut",
                       {{TraceOp::DeleteEdge, I.black[j], {}},
                        {TraceOp::DeleteEdge, I.black[i], {}},
                        {TraceOp::AddBlackEdge, 0, set_difference(a, b)},
                        {TraceOp::AddBlackEdge, 0, set_difference(b, a)},
                        {TraceOp::AddBlackEdge, 0, common}}};
      apply_entry(I, trace, std::move(entry));
      return true;
    }
  }
  return false;
}

// Duplicate edges around a black edge. Not a rule stated as such in the
// kernelization, but required so that black edges end up pairwise disjoint
// even when the input contains duplicates. An equal black twin is redundant
// (delete it, same k). A non-black twin never helps a cover that already
// contains the black edge: deleting it costs one unit of k when k >= 1
// (a solution using the twin swaps it for the black copy and shrinks), and
// nothing when k <= 0 (any cover avoiding the twin fits the new budget m-1-k).
inline bool dedup_step(SubsetInstance& I, ReductionTrace* trace) {
  for (std::size_t i = 0; i < I.black.size(); ++i) {
    const auto& bv = I.H.edges[I.black[i]];
    for (std::size_t j = i + 1; j < I.black.size(); ++j) {
      if (I.H.edges[I.black[j]] == bv) {
        TraceEntry entry{"dedup-black", {{TraceOp::DeleteEdge, I.black[j], {}}}};
        apply_entry(I, trace, std::move(entry));
        return true;
      }
    }
    for (int e = 0; e < I.H.m(); ++e) {
      if (I.is_black(e)) continue;
      if (I.H.edges[e] == bv) {
        TraceEntry entry{"dedup", {{TraceOp::DeleteEdge, e, {}}}};
        if (I.k >= 1) entry.ops.push_back({TraceOp::SetK, I.k - 1, {}});
        apply_entry(I, trace, std::move(entry));
        return true;
      }
    }
  }
  return false;
}

inline bool any_rule12_applicable(const SubsetInstance& I) {
  SubsetInstance tmp = I;
  return rule1_step(tmp, nullptr) || rule2_subset_step(tmp, nullptr) || rule2_cut_step(tmp, nullptr) ||
         dedup_step(tmp, nullptr);
}

}  // namespace detail

// Rules 1-2 (plus duplicate cleanup) to fixpoint. Returns whether anything
// changed.
inline bool apply_rules12(SubsetInstance& I, ReductionTrace* trace = nullptr) {
  bool changed = false;
  while (detail::rule1_step(I, trace) || detail::rule2_subset_step(I, trace) ||
         detail::rule2_cut_step(I, trace) || detail::dedup_step(I, trace))
    changed = true;
  return changed;
}

inline std::optional<SubsetInstance> apply_rule_black_singleton(const SubsetInstance& I) {
  SubsetInstance out = I;
  if (detail::rule1_step(out, nullptr)) return out;
  return std::nullopt;
}

inline std::optional<SubsetInstance> apply_rule_black_overlap(const SubsetInstance& I) {
  SubsetInstance out = I;
  if (detail::rule2_subset_step(out, nullptr) || detail::rule2_cut_step(out, nullptr)) return out;
  return std::nullopt;
}

struct DegreeReduceResult {
  std::optional<bool> verdict;  // set when the reduction already decides
  SubsetInstance inst;
};

// Degree reduction: while some vertex exceeds degree k*r^2, grow the robustly
// isolated set X~ and either delete it (if it is an edge, k-1) or force it as
// a new black edge.
inline DegreeReduceResult reduce_degrees(SubsetInstance I, ReductionTrace* trace = nullptr) {
  if (detail::any_rule12_applicable(I))
    throw contract_error("reduce_degrees: instance is still reducible by Rules 1-2");

  for (;;) {
    if (I.k <= 0) return {true, std::move(I)};
    int r = std::max(I.H.r(), 2);
    long long threshold = static_cast<long long>(I.k) * r * r;
    auto deg = all_degrees(I.H);
    int x = -1;
    for (int v = 0; v < I.H.n; ++v)
      if (deg[v] > threshold) {
        x = v;
        break;
      }
    if (x < 0) return {std::nullopt, std::move(I)};

    // Grow X~ with k+1 pairwise disjoint isolating families.
    std::vector<char> alive(I.H.m(), 1);
    VertexSet X = {x};
    int i = 1, j = 1;
    while (i <= I.k + 1) {
      EdgeSet pool;
      for (int q = 0; q < I.H.m(); ++q)
        if (alive[q]) pool.push_back(q);
      detail::Refinement ref(I.H.n);
      for (int q : pool) ref.refine(I.H.edges[q]);
      // Is X isolated by the surviving edges?
      std::vector<char> in_x(I.H.n, 0);
      for (int v : X) in_x[v] = 1;
      bool isolated = true;
      for (int v = 0; v < I.H.n && isolated; ++v)
        if (!in_x[v] && ref.class_of[v] == ref.class_of[x]) isolated = false;
      if (isolated) {
        int ei = -1;
        for (int q : pool)
          if (detail::is_subset(X, I.H.edges[q])) {
            ei = q;
            break;
          }
        if (ei < 0) throw invariant_error("reduce_degrees: no surviving edge contains X");
        EdgeSet subpool;
        for (int q : pool)
          if (q != ei) subpool.push_back(q);
        VertexSet outside = detail::set_difference(I.H.edges[ei], X);
        EdgeSet Ei = outside.empty() ? EdgeSet{} : separating_subset(I.H, X, outside, subpool);
        if (static_cast<int>(Ei.size()) > r - 1)
          throw invariant_error("reduce_degrees: separating family exceeds r-1 edges");
        alive[ei] = 0;
        for (int q : Ei) alive[q] = 0;
        ++i;
      } else {
        VertexSet grown;
        for (int v = 0; v < I.H.n; ++v)
          if (ref.class_of[v] == ref.class_of[x]) grown.push_back(v);
        if (!detail::is_subset(X, grown))
          throw invariant_error("reduce_degrees: X left its induced class");
        X = std::move(grown);
        i = 1;
        ++j;
        if (j > r) throw invariant_error("reduce_degrees: growth loop reached j = r+1");
      }
    }

    int existing = -1;
    for (int q = 0; q < I.H.m(); ++q)
      if (I.H.edges[q] == X) {
        existing = q;
        break;
      }
    if (existing >= 0) {
      detail::apply_entry(I, trace,
                          TraceEntry{"degree-delete",
                                     {{TraceOp::DeleteEdge, existing, {}}, {TraceOp::SetK, I.k - 1, {}}}});
    } else {
      detail::apply_entry(I, trace, TraceEntry{"degree-black", {{TraceOp::AddBlackEdge, 0, X}}});
    }
    apply_rules12(I, trace);
  }
}

struct ColoringResult {
  SubsetInstance inst;
  EdgeColoring coloring;
  bool changed = false;
};

// Colors every non-black edge: black if its removal breaks the test cover
// (re-running Rules 1-2 after each new black), orange if deletable with a
// degree-one vertex, green otherwise.
inline ColoringResult color_edges(SubsetInstance I, ReductionTrace* trace = nullptr) {
  bool changed = false;
  for (;;) {
    bool blackened = false;
    for (int e = 0; e < I.H.m(); ++e) {
      if (I.is_black(e)) continue;
      EdgeSet rest;
      for (int q = 0; q < I.H.m(); ++q)
        if (q != e) rest.push_back(q);
      if (!is_test_cover(I.H, rest)) {
        detail::apply_entry(I, trace, TraceEntry{"color-black", {{TraceOp::MarkBlack, e, {}}}});
        apply_rules12(I, trace);
        blackened = true;
        changed = true;
        break;
      }
    }
    if (!blackened) break;
  }

  EdgeColoring col;
  col.color.assign(I.H.m(), EdgeColor::Green);
  auto deg = all_degrees(I.H);
  bool has_isolated = false;
  for (int v = 0; v < I.H.n; ++v)
    if (deg[v] == 0) has_isolated = true;
  for (int e = 0; e < I.H.m(); ++e) {
    if (I.is_black(e)) {
      col.color[e] = EdgeColor::Black;
      continue;
    }
    bool deg_one = false;
    for (int v : I.H.edges[e])
      if (deg[v] == 1) deg_one = true;
    col.color[e] = deg_one ? EdgeColor::Orange : EdgeColor::Green;
    if (col.color[e] == EdgeColor::Orange && has_isolated)
      throw invariant_error("color_edges: orange edge despite an isolated vertex");
  }
  return {std::move(I), std::move(col), changed};
}

namespace detail {

// Rule 3: delete an orange edge with no green edge in N2 and spend one unit
// of k.
inline bool rule_orange_step(SubsetInstance& I, const EdgeColoring& col, ReductionTrace* trace) {
  for (int o = 0; o < I.H.m(); ++o) {
    if (col.color[o] != EdgeColor::Orange) continue;
    EdgeSet n2 = edge_neighborhood(I.H, {o}, 2);
    bool green_near = false;
    for (int q : n2)
      if (col.color[q] == EdgeColor::Green) green_near = true;
    if (!green_near) {
      apply_entry(I, trace,
                  TraceEntry{"rule3", {{TraceOp::DeleteEdge, o, {}}, {TraceOp::SetK, I.k - 1, {}}}});
      return true;
    }
  }
  return false;
}

}  // namespace detail

inline std::optional<SubsetInstance> apply_rule_orange(const SubsetInstance& I, const EdgeColoring& col) {
  if (static_cast<int>(col.color.size()) != I.H.m())
    throw contract_error("apply_rule_orange: coloring size mismatch");
  SubsetInstance out = I;
  if (detail::rule_orange_step(out, col, nullptr)) return out;
  return std::nullopt;
}

// Maximal greedy set of green edges with pairwise disjoint closed edge
// neighborhoods. If it reaches k edges the instance is a yes.
inline EdgeSet greedy_green_packing(const SubsetInstance& I, const EdgeColoring& col) {
  if (static_cast<int>(col.color.size()) != I.H.m())
    throw contract_error("greedy_green_packing: coloring size mismatch");
  EdgeSet packed;
  std::vector<EdgeSet> hoods;
  for (int g = 0; g < I.H.m(); ++g) {
    if (col.color[g] != EdgeColor::Green) continue;
    EdgeSet n1 = edge_neighborhood(I.H, {g}, 1);
    bool ok = true;
    for (const auto& h : hoods)
      if (detail::intersects(h, n1)) ok = false;
    if (ok) {
      packed.push_back(g);
      hoods.push_back(std::move(n1));
    }
  }
  return packed;
}

enum class MkVerdict { Yes, No, Reduced };

struct MkKernelResult {
  MkVerdict verdict = MkVerdict::Reduced;
  std::optional<SubsetInstance> kernel;
  std::optional<EdgeColoring> coloring;
  ReductionTrace trace;
};

// Full m-k kernelization: Rules 1-2, degree reduction, coloring and Rule 3 to
// mutual fixpoint, then the green-packing / edge-count early answers. The
// kernel size bounds are asserted on every reduced output as a bug detector.
inline MkKernelResult kernelize_mk(SubsetInstance I) {
  check_edge_set(I.H, I.black);
  if (!is_test_cover(I.H)) throw contract_error("kernelize_mk: edge set is not a test cover");

  MkKernelResult res;
  ReductionTrace* trace = &res.trace;
  for (;;) {
    if (I.k <= 0) {
      res.verdict = MkVerdict::Yes;
      return res;
    }
    if (I.H.m() - I.k < 0 || static_cast<int>(I.black.size()) > I.H.m() - I.k) {
      res.verdict = MkVerdict::No;
      return res;
    }
    if (!is_test_cover(I.H)) {
      // No subset can separate what the full edge set cannot.
      res.verdict = MkVerdict::No;
      return res;
    }
    if (apply_rules12(I, trace)) continue;
    {
      DegreeReduceResult dr = reduce_degrees(std::move(I), trace);
      I = std::move(dr.inst);
      if (dr.verdict) {
        res.verdict = *dr.verdict ? MkVerdict::Yes : MkVerdict::No;
        return res;
      }
    }
    ColoringResult cr = color_edges(std::move(I), trace);
    I = std::move(cr.inst);
    if (cr.changed) continue;
    if (detail::rule_orange_step(I, cr.coloring, trace)) continue;

    // Mutual fixpoint.
    EdgeSet packing = greedy_green_packing(I, cr.coloring);
    if (static_cast<int>(packing.size()) >= I.k) {
      res.verdict = MkVerdict::Yes;
      return res;
    }
    if (I.H.m() - I.k >= I.H.n) {
      res.verdict = MkVerdict::Yes;
      return res;
    }

    int r = std::max(I.H.r(), 2);
    long long threshold = static_cast<long long>(I.k) * r * r;
    for (int d : all_degrees(I.H))
      if (d > threshold) throw invariant_error("kernelize_mk: degree bound violated at fixpoint");
    for (std::size_t a = 0; a < I.black.size(); ++a)
      for (std::size_t b = a + 1; b < I.black.size(); ++b)
        if (detail::intersects(I.H.edges[I.black[a]], I.H.edges[I.black[b]]))
          throw invariant_error("kernelize_mk: black edges intersect at fixpoint");
    {
      // Every non-isolated vertex must live in V(N3[g]) for a green edge g.
      auto deg = all_degrees(I.H);
      VertexSet reach;
      for (int g = 0; g < I.H.m(); ++g) {
        if (cr.coloring.color[g] != EdgeColor::Green) continue;
        EdgeSet n3 = edge_neighborhood(I.H, {g}, 3);
        for (int q : n3) reach = detail::set_union(reach, I.H.edges[q]);
      }
      for (int v = 0; v < I.H.n; ++v)
        if (deg[v] > 0 && !detail::contains(reach, v))
          throw invariant_error("kernelize_mk: vertex outside every green N3 neighborhood");
    }
    {
      long double bound = static_cast<long double>(I.k - 1) * std::pow(static_cast<long double>(I.k), 5) *
                          std::pow(static_cast<long double>(r), 16);
      if (static_cast<long double>(I.H.n) > bound + 1)
        throw invariant_error("kernelize_mk: vertex count exceeds the kernel bound");
      if (static_cast<long double>(I.H.m()) > bound + I.k)
        throw invariant_error("kernelize_mk: edge count exceeds the kernel bound");
    }
    res.verdict = MkVerdict::Reduced;
    res.kernel = std::move(I);
    res.coloring = std::move(cr.coloring);
    return res;
  }
}

// Maps a kernelized Subset instance back to plain Test-r-Cover(m-k): a black
// edge whose removal breaks the cover needs no gadget; every other black edge
// is forced by the 4-vertex gadget (b u {x1}, {x1,x2,x3}, {x3,x4}).
//
// `width` is the edge-size bound r of the instance family. Reductions can
// shrink every edge below the family bound, so it cannot be recovered from
// the kernel itself; pass the width of the pre-kernelization instance. The
// default 0 falls back to the kernel's own maximum edge size, which is only
// safe when the kernel still realizes the family bound.
inline std::pair<Hypergraph, int> encode_black_gadget(const SubsetInstance& I, int width = 0) {
  check_edge_set(I.H, I.black);
  std::vector<char> needs_gadget(I.H.m(), 0);
  for (int b : I.black) {
    EdgeSet rest;
    for (int q = 0; q < I.H.m(); ++q)
      if (q != b) rest.push_back(q);
    if (is_test_cover(I.H, rest)) needs_gadget[b] = 1;
  }
  int r = std::max({width, I.H.r(), 2});
  if (width != 0 && I.H.r() > width)
    throw contract_error("encode_black_gadget: instance exceeds the given width");
  auto edges = I.H.edges;
  int n = I.H.n;
  for (int b : I.black) {
    if (!needs_gadget[b]) continue;
    if (static_cast<int>(edges[b].size()) >= r)
      throw invariant_error("encode_black_gadget: black edge too large to grow");
    int x1 = n, x2 = n + 1, x3 = n + 2, x4 = n + 3;
    n += 4;
    edges[b].push_back(x1);
    edges.push_back({x1, x2, x3});
    edges.push_back({x3, x4});
  }
  return {Hypergraph(n, std::move(edges)), I.k};
}

}  // namespace tcov
