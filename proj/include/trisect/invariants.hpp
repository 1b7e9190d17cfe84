#pragma once

// Diagram-level invariants: first homology, fundamental-group presentations,
// Euler characteristics, and the homology-4-sphere verdict.
//
// First homology of the described 4-manifold is the cokernel of the matrix
// of curve classes over H1 of the surface: filling the three handlebody
// sides kills exactly the classes of the diagram curves.  For a diagram on a
// surface with boundary the same quotient computes the homology of the spine
// (central surface thickening plus compression handles); callers should
// treat it as the compact manifold's group only where that has been checked
// independently, and reports label it "spine" for that reason.
//
// Fundamental groups come from a dual handle structure on the surface: one
// 0-handle per polygonal face, one 1-handle per interior edge, one 2-handle
// per interior vertex.  Generators are the interior edges outside a spanning
// tree of the face-adjacency graph; every interior vertex contributes the
// word of edges crossed by a small loop around it, and every diagram curve
// contributes the word of edges it crosses.  For the standard one-vertex
// closed surfaces this is literally the classical polygon presentation (2g
// generators and the single surface relation) plus one relator per curve.

#include <atomic>
#include <cstdlib>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trisect/abelian.hpp"
#include "trisect/diagrams.hpp"
#include "trisect/homology.hpp"
#include "trisect/smith.hpp"

namespace trisect {

// Finite presentation with named generators.  Relator words are stored as
// signed 1-based generator indices: +i is generator i, -i its inverse.
struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;

  // Exponent-sum matrix, one row per relator.
  IMat relation_matrix() const {
    IMat m(static_cast<int>(relators.size()), static_cast<int>(generators.size()));
    for (size_t r = 0; r < relators.size(); ++r)
      for (int x : relators[r])
        m.at(static_cast<int>(r), std::abs(x) - 1) += (x > 0) ? 1 : -1;
    return m;
  }

  AbelianGroup abelianization(const std::atomic<bool>* cancel = nullptr) const {
    return abelian_from_relations(relation_matrix(), cancel);
  }

  // "< x1, x2 | x2^-1 x1 x2 x1^-1 >"; the trivial presentation is "< | >".
  std::string to_string() const {
    std::string s = "<";
    for (size_t i = 0; i < generators.size(); ++i)
      s += (i ? ", " : " ") + generators[i];
    s += " |";
    for (size_t r = 0; r < relators.size(); ++r) {
      s += (r ? ", " : "");
      for (int x : relators[r]) {
        s += " " + generators[std::abs(x) - 1];
        if (x < 0) s += "^-1";
      }
    }
    s += " >";
    return s;
  }
};

namespace pres_detail {

// Free reduction plus cyclic reduction of a relator word.
inline void reduce_word(std::vector<int>& w) {
  std::vector<int> out;
  for (int x : w) {
    if (!out.empty() && out.back() == -x) out.pop_back();
    else out.push_back(x);
  }
  while (out.size() >= 2 && out.front() == -out.back()) {
    out.erase(out.begin());
    out.pop_back();
  }
  w = std::move(out);
}

// Deliberately small simplification pass: drop relators that reduce to
// nothing, and substitute single-letter relators (such a generator is trivial
// in the group, so it can be erased everywhere).  No search beyond that.
inline void tietze_simplify(GroupPresentation& p) {
  for (auto& w : p.relators) reduce_word(w);
  for (;;) {
    int kill = 0;  // 1-based index of a generator forced trivial
    for (const auto& w : p.relators)
      if (w.size() == 1) {
        kill = std::abs(w[0]);
        break;
      }
    if (!kill) break;
    p.generators.erase(p.generators.begin() + (kill - 1));
    std::vector<std::vector<int>> next;
    for (const auto& w : p.relators) {
      std::vector<int> v;
      for (int x : w) {
        int g = std::abs(x);
        if (g == kill) continue;
        if (g > kill) g -= 1;
        v.push_back(x > 0 ? g : -g);
      }
      reduce_word(v);
      next.push_back(std::move(v));
    }
    p.relators = std::move(next);
  }
  std::vector<std::vector<int>> kept;
  for (auto& w : p.relators)
    if (!w.empty()) kept.push_back(std::move(w));
  p.relators = std::move(kept);
}

}  // namespace pres_detail

// Presentation of pi1 of the drawing's surface modulo the given closed
// curves (pass no curves for the surface group itself).  See the header
// comment for the construction.
inline GroupPresentation curve_quotient_presentation(const Drawing& dr,
                                                     const std::vector<int>& curve_ids) {
  const CombSurface& s = dr.surface();

  // Spanning tree of the face-adjacency graph across interior edges.
  std::vector<char> seen(s.num_faces(), 0);
  std::set<int> tree;  // representative slots of tree edges
  std::vector<int> order{0};
  if (s.num_faces() > 0) seen[0] = 1;
  for (size_t qi = 0; qi < order.size(); ++qi) {
    int f = order[qi];
    for (int i = 0; i < s.face(f).nslots; ++i) {
      int sl = s.slot(f, i);
      if (s.is_boundary(sl)) continue;
      int nb = s.slot_face(s.pair_of(sl));
      if (!seen[nb]) {
        seen[nb] = 1;
        tree.insert(s.edge_rep(sl));
        order.push_back(nb);
      }
    }
  }
  for (int f = 0; f < s.num_faces(); ++f)
    if (!seen[f]) throw pipeline_error("presentation of a disconnected surface");

  GroupPresentation p;
  std::map<int, int> gen;  // representative slot -> 1-based generator index
  for (int sl = 0; sl < s.num_slots(); ++sl) {
    if (s.is_boundary(sl) || s.edge_rep(sl) != sl || tree.count(sl)) continue;
    gen[sl] = static_cast<int>(p.generators.size()) + 1;
    p.generators.push_back("x" + std::to_string(gen.at(sl)));
  }

  // Letter contributed by crossing an edge outward through `exit_slot`;
  // 0 for spanning-tree edges (they carry no generator).
  auto letter = [&](int exit_slot) -> int {
    int rep = s.edge_rep(exit_slot);
    auto it = gen.find(rep);
    if (it == gen.end()) return 0;
    return exit_slot == rep ? it->second : -it->second;
  };

  // One relator per interior vertex: rotate a small loop counterclockwise
  // around it.  At the corner before slot c the loop leaves the face through
  // the preceding edge and re-enters at the matching corner of the partner
  // face; hitting a boundary edge instead means the vertex is a boundary
  // vertex, which bounds no disk and contributes no relator.
  DisjointSets corners = s.corner_classes();
  std::set<int> done;
  for (int c0 = 0; c0 < s.num_slots(); ++c0) {
    int root = corners.find(c0);
    if (!done.insert(root).second) continue;
    std::vector<int> w;
    bool interior = true;
    int c = c0;
    for (int guard = 0;; ++guard) {
      if (guard > s.num_slots()) throw pipeline_error("vertex rotation did not close");
      int e = s.prev_in_face(c);
      if (s.is_boundary(e)) {
        interior = false;
        break;
      }
      if (int x = letter(e)) w.push_back(x);
      c = s.pair_of(e);
      if (c == c0) break;
    }
    if (interior) p.relators.push_back(std::move(w));
  }

  // One relator per curve: the word of edges it crosses, in traversal order.
  for (int idx : curve_ids) {
    const Curve& cv = dr.curve(idx);
    if (!cv.closed) throw unsupported("presentation relator for a non-closed curve");
    std::vector<int> w;
    for (const Chord& ch : cv.chords)
      if (int x = letter(ch.b.slot)) w.push_back(x);
    p.relators.push_back(std::move(w));
  }

  pres_detail::tietze_simplify(p);
  return p;
}

namespace detail {

inline std::vector<int> all_family_curves(const Drawing& dr) {
  std::vector<int> ids;
  for (const char* fam : kFamilyNames)
    for (int i : dr.family_members(fam)) ids.push_back(i);
  return ids;
}

inline AbelianGroup curve_class_cokernel(const Drawing& dr,
                                         const std::atomic<bool>* cancel) {
  SurfaceHomology h(dr.surface());
  std::vector<int> ids = all_family_curves(dr);
  IMat rel(static_cast<int>(ids.size()), h.h1_rank());
  for (size_t r = 0; r < ids.size(); ++r) {
    std::vector<Int> cls = h.h1_class_of_curve(dr, dr.curve(ids[r]));
    for (int c = 0; c < h.h1_rank(); ++c) rel.at(static_cast<int>(r), c) = cls[c];
  }
  return abelian_from_relations(rel, cancel);
}

}  // namespace detail

// H1 of the closed 4-manifold: H1 of the surface divided by the classes of
// all diagram curves.
inline AbelianGroup h1_closed(const TrisectionDiagram& d,
                              const std::atomic<bool>* cancel = nullptr) {
  if (!d.validated) throw validation_error("diagram not validated");
  return detail::curve_class_cokernel(d.drawing, cancel);
}

// H1 of the spine of a relative diagram: the same quotient over the free H1
// of the bounded surface.
inline AbelianGroup h1_spine_relative(const RelativeTrisectionDiagram& d,
                                      const std::atomic<bool>* cancel = nullptr) {
  if (!d.validated) throw validation_error("diagram not validated");
  return detail::curve_class_cokernel(d.drawing, cancel);
}

// Presentation of pi1 of the closed manifold; its abelianization is checked
// against the homology computation before returning.
inline GroupPresentation pi1_presentation(const TrisectionDiagram& d,
                                          const std::atomic<bool>* cancel = nullptr) {
  if (!d.validated) throw validation_error("diagram not validated");
  GroupPresentation p =
      curve_quotient_presentation(d.drawing, detail::all_family_curves(d.drawing));
  if (!(p.abelianization(cancel) == h1_closed(d, cancel)))
    throw pipeline_error("presentation abelianization disagrees with homology");
  return p;
}

// Presentation of the spine group of a relative diagram, cross-checked the
// same way.
inline GroupPresentation pi1_presentation(const RelativeTrisectionDiagram& d,
                                          const std::atomic<bool>* cancel = nullptr) {
  if (!d.validated) throw validation_error("diagram not validated");
  GroupPresentation p =
      curve_quotient_presentation(d.drawing, detail::all_family_curves(d.drawing));
  if (!(p.abelianization(cancel) == h1_spine_relative(d, cancel)))
    throw pipeline_error("presentation abelianization disagrees with homology");
  return p;
}

// Euler characteristic of the closed manifold, from its handle counts: one
// 0-handle, k 1-handles per sector wedge, and the dual counts on the far
// side.  Validated diagrams are balanced, so chi = 2 + g - 3k.
inline int euler_char_closed(const TrisectionDiagram& d) {
  if (!d.validated) throw validation_error("diagram not validated");
  return 2 + d.g - 3 * d.k;
}

// Euler characteristic of the compact manifold with parameters (g,k,p,b):
// one 0-handle, k 1-handles, g-k+p+b-1 2-handles and k-2p-b+1 3-handles.
inline int euler_char_relative(int g, int k, int p, int b) {
  if (g < 0 || p < 0 || b < 1 || p > g)
    throw validation_error("relative parameters out of range (g=" + std::to_string(g) +
                           ", k=" + std::to_string(k) + ", p=" + std::to_string(p) +
                           ", b=" + std::to_string(b) + ")");
  int h1 = k;
  int h2 = g - k + p + b - 1;
  int h3 = k - 2 * p - b + 1;
  if (h1 < 0 || h2 < 0 || h3 < 0)
    throw validation_error("negative handle count (1-handles " + std::to_string(h1) +
                           ", 2-handles " + std::to_string(h2) + ", 3-handles " +
                           std::to_string(h3) + ")");
  return 1 - h1 + h2 - h3;
}

// Homology-level 4-sphere test: trivial H1 and Euler characteristic 2.  (With
// Poincare duality and universal coefficients this pins the full integral
// homology of a closed orientable 4-manifold to that of the 4-sphere.)
struct HomologySphereReport {
  bool verdict = false;
  AbelianGroup h1;
  int euler = 0;

  std::string text() const {
    return "h1 = " + h1.to_string() +
           "\neuler characteristic = " + std::to_string(euler) +
           "\nintegral homology 4-sphere: " + (verdict ? "yes" : "no") + "\n";
  }
};

inline HomologySphereReport homology_4sphere_check(
    const TrisectionDiagram& d, const std::atomic<bool>* cancel = nullptr) {
  HomologySphereReport r;
  r.h1 = h1_closed(d, cancel);
  r.euler = euler_char_closed(d);
  r.verdict = r.h1.is_trivial() && r.euler == 2;
  return r;
}

// First homology of the small Seifert space over the sphere with three
// exceptional fibers of orders a, b, c (each paired with one fiber twist):
// abelianize < x1,x2,x3,h | [xi,h], x1^a h, x2^b h, x3^c h, x1 x2 x3 >.
// Its order, when finite, is |ab+bc+ca|.
inline AbelianGroup seifert_h1(const Int& a, const Int& b, const Int& c) {
  IMat m(4, 4);
  m.at(0, 0) = a;
  m.at(1, 1) = b;
  m.at(2, 2) = c;
  m.at(0, 3) = m.at(1, 3) = m.at(2, 3) = 1;
  m.at(3, 0) = m.at(3, 1) = m.at(3, 2) = 1;
  return abelian_from_relations(m);
}

}  // namespace trisect
