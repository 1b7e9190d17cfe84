#pragma once

// First homology of a combinatorial surface and homology classes of drawn
// curves.
//
// The cellulation itself is the chain complex: vertices are corner classes,
// edges are slot pairs (or boundary slots), faces are faces.  A chord's class
// is computed by sliding each endpoint along its edge to a designated vertex
// (the head of the representative slot) and walking the face boundary
// counterclockwise between the two corners; summing over a closed curve's
// chords gives a 1-cycle on the nose.
//
// H1 coordinates: with A = boundary map edges->vertices and B = faces->edges,
// pick an integer kernel basis K of A, express im B in K-coordinates, and
// Smith-reduce.  Surfaces have free H1, so the reduced coordinates beyond the
// image rank are a basis; the construction is deterministic, hence classes
// are reproducible across runs.

#include <map>
#include <string>
#include <vector>

#include "trisect/abelian.hpp"
#include "trisect/curves.hpp"
#include "trisect/smith.hpp"

namespace trisect {

class SurfaceHomology {
 public:
  explicit SurfaceHomology(const CombSurface& s) : surf_(&s), corners_(s.corner_classes()) {
    // Edge index over representative slots, ascending.
    for (int sl = 0; sl < s.num_slots(); ++sl)
      if (s.edge_rep(sl) == sl) edge_index_[sl] = static_cast<int>(edge_index_.size());
    // Vertex index over corner classes.
    for (int sl = 0; sl < s.num_slots(); ++sl) {
      int root = corners_.find(sl);
      vertex_index_.try_emplace(root, static_cast<int>(vertex_index_.size()));
    }
    const int ne = static_cast<int>(edge_index_.size());
    const int nv = static_cast<int>(vertex_index_.size());
    const int nf = s.num_faces();

    IMat d1(nv, ne);  // edges -> vertices
    for (auto& [rep, e] : edge_index_) {
      int tail = vertex_of_corner(rep);
      int head = vertex_of_corner(s.next_in_face(rep));
      d1.at(head, e) += 1;
      d1.at(tail, e) -= 1;
    }
    IMat d2(ne, nf);  // faces -> edges
    for (int f = 0; f < nf; ++f)
      for (int i = 0; i < s.face(f).nslots; ++i) {
        int sl = s.slot(f, i);
        int rep = s.edge_rep(sl);
        d2.at(edge_index_.at(rep), f) += (sl == rep) ? 1 : -1;
      }
    d1_ = d1;
    kernel_ = kernel_basis(d1);

    // Express each face boundary in kernel coordinates.
    IMat c(kernel_.cols, nf);
    for (int f = 0; f < nf; ++f) {
      std::vector<Int> col(ne);
      for (int e = 0; e < ne; ++e) col[e] = d2.at(e, f);
      std::vector<Int> x;
      if (!solve_integer(kernel_, col, &x))
        throw pipeline_error("face boundary not a cycle");
      for (int r = 0; r < kernel_.cols; ++r) c.at(r, f) = x[r];
    }
    SNFResult snf = smith_normal_form(c);
    for (const Int& d : snf.invariant_factors)
      if (d != 1)
        throw pipeline_error("surface complex with torsion in H1");
    u_ = snf.u;
    image_rank_ = snf.rank;
  }

  int h1_rank() const { return kernel_.cols - image_rank_; }
  int num_edges() const { return static_cast<int>(edge_index_.size()); }
  int edge_of_rep(int rep) const { return edge_index_.at(rep); }

  // The corner before slot `sl`, as a vertex index.
  int vertex_of_corner(int sl) const { return vertex_index_.at(corners_.find(sl)); }

  // Designated vertex of the edge through `slot`, seen as a corner of the
  // face containing `slot`.
  int anchor_corner(int slot) const {
    const CombSurface& s = *surf_;
    return (s.edge_rep(slot) == slot) ? s.next_in_face(slot) : slot;
  }

  // Signed edge sequence of a chord: slide both ends to the designated
  // vertices and walk counterclockwise between the corners.  Entries are
  // (edge index, +1/-1) in walk order.
  std::vector<std::pair<int, int>> chord_path(const Chord& ch) const {
    const CombSurface& s = *surf_;
    if (ch.a.at_mark || ch.b.at_mark)
      throw unsupported("homology of a chord ending at a mark");
    int from = anchor_corner(ch.a.slot);
    int to = anchor_corner(ch.b.slot);
    std::vector<std::pair<int, int>> path;
    int cur = from;
    while (cur != to) {
      int rep = s.edge_rep(cur);
      path.push_back({edge_index_.at(rep), cur == rep ? +1 : -1});
      cur = s.next_in_face(cur);
    }
    return path;
  }

  // 1-cycle of a closed curve (edge-indexed coefficient vector).
  std::vector<Int> cycle_of(const Curve& c) const {
    if (!c.closed) throw unsupported("homology class of a non-closed curve");
    std::vector<Int> z(num_edges(), 0);
    for (const Chord& ch : c.chords)
      for (auto [e, sgn] : chord_path(ch)) z[e] += sgn;
    return z;
  }

  // 1-cycle of a boundary circle, traversed in boundary-walk order (all
  // boundary slots are their own representatives, so coefficients are +1).
  std::vector<Int> cycle_of_boundary(const std::vector<int>& circle_slots) const {
    std::vector<Int> z(num_edges(), 0);
    for (int sl : circle_slots) z[e_of(sl)] += 1;
    return z;
  }

  // H1 coordinates of a cycle, in the fixed deterministic basis.
  std::vector<Int> h1_class(const std::vector<Int>& cycle) const {
    std::vector<Int> x;
    if (!solve_integer(kernel_, cycle, &x))
      throw pipeline_error("h1_class of a non-cycle");
    std::vector<Int> u(kernel_.cols, 0);
    for (int r = 0; r < kernel_.cols; ++r)
      for (int cidx = 0; cidx < kernel_.cols; ++cidx)
        if (u_.at(r, cidx) != 0) u[r] += u_.at(r, cidx) * x[cidx];
    return std::vector<Int>(u.begin() + image_rank_, u.end());
  }

  std::vector<Int> h1_class_of_curve(const Drawing& d, const Curve& c) const {
    (void)d;
    return h1_class(cycle_of(c));
  }

 private:
  int e_of(int slot) const { return edge_index_.at(surf_->edge_rep(slot)); }

  const CombSurface* surf_;
  DisjointSets corners_;
  std::map<int, int> edge_index_;
  std::map<int, int> vertex_index_;
  IMat d1_;
  IMat kernel_;      // columns: basis of 1-cycles
  IMat u_;           // SNF transform; rows beyond image_rank_ read off H1
  int image_rank_ = 0;
};

// Convenience: homology class of a closed curve on the drawing's surface.
inline std::vector<Int> homology_class(const Drawing& d, const Curve& c) {
  SurfaceHomology h(d.surface());
  return h.h1_class_of_curve(d, c);
}

}  // namespace trisect
