#pragma once

// Oriented combinatorial surfaces as polygon complexes.
//
// A surface is a list of named polygonal faces; each face is a cyclic list of
// edge-slots, read counterclockwise (interior on the left).  An involution
// pairs some slots in orientation-reversing fashion: the head of one slot is
// identified with the tail of its partner.  Unpaired slots form the boundary.
// Because the only gluing permitted is the orientation-reversing one, every
// surface built here is oriented by construction; non-orientable gluings are
// rejected at the operation level, not representable.
//
// Marked points (bridge points of shadow diagrams) live in face interiors and
// are stored as name -> face.  Boundary labels (binding names, names inherited
// from deleted marks) are stored as name -> a slot on the labeled circle.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "trisect/errors.hpp"

namespace trisect {

// Union-find over 0..n-1.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) const {
    while (parent_[x] != x) x = parent_[x];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  int count_classes() const {
    int n = 0;
    for (int i = 0; i < static_cast<int>(parent_.size()); ++i)
      if (find(i) == i) ++n;
    return n;
  }

 private:
  mutable std::vector<int> parent_;
};

struct SurfaceClass {
  int genus = 0;
  int boundary_count = 0;
  int components = 1;
  bool orientable = true;

  bool operator==(const SurfaceClass& o) const {
    return genus == o.genus && boundary_count == o.boundary_count &&
           components == o.components && orientable == o.orientable;
  }
};

class CombSurface {
 public:
  struct Face {
    std::string name;
    int nslots = 0;
    int slot0 = 0;  // global id of this face's slot 0
  };

  // --- construction (used by SurfaceBuilder and the surgery ops) ---

  int add_face(const std::string& name, int nslots) {
    if (nslots <= 0) throw pipeline_error("face needs at least one slot: " + name);
    if (face_index_.count(name)) throw pipeline_error("duplicate face name: " + name);
    Face f;
    f.name = name;
    f.nslots = nslots;
    f.slot0 = total_slots_;
    face_index_[name] = static_cast<int>(faces_.size());
    faces_.push_back(f);
    total_slots_ += nslots;
    pair_of_.resize(total_slots_, -1);
    return static_cast<int>(faces_.size()) - 1;
  }

  void glue(int slot_a, int slot_b) {
    if (slot_a == slot_b) throw pipeline_error("cannot glue a slot to itself");
    if (pair_of_[slot_a] != -1 || pair_of_[slot_b] != -1)
      throw parse_error("slot glued twice");
    pair_of_[slot_a] = slot_b;
    pair_of_[slot_b] = slot_a;
  }

  void add_mark(const std::string& name, int face) {
    if (marks_.count(name)) throw parse_error("duplicate mark name: " + name);
    marks_[name] = face;
  }

  void remove_mark(const std::string& name) { marks_.erase(name); }

  void add_boundary_label(const std::string& name, int slot) {
    boundary_labels_[name] = slot;
  }

  void remove_boundary_label(const std::string& name) {
    boundary_labels_.erase(name);
  }

  // --- slot navigation ---

  int num_faces() const { return static_cast<int>(faces_.size()); }
  int num_slots() const { return total_slots_; }
  const Face& face(int i) const { return faces_[i]; }
  int face_index(const std::string& name) const {
    auto it = face_index_.find(name);
    if (it == face_index_.end()) throw unknown_name("face " + name);
    return it->second;
  }
  bool has_face(const std::string& name) const { return face_index_.count(name) > 0; }

  int slot(int face, int local) const { return faces_[face].slot0 + local; }
  int slot_face(int s) const {
    // faces are added in slot order, so binary search by slot0
    int lo = 0, hi = num_faces() - 1;
    while (lo < hi) {
      int mid = (lo + hi + 1) / 2;
      if (faces_[mid].slot0 <= s) lo = mid;
      else hi = mid - 1;
    }
    return lo;
  }
  int slot_local(int s) const { return s - faces_[slot_face(s)].slot0; }
  int pair_of(int s) const { return pair_of_[s]; }
  bool is_boundary(int s) const { return pair_of_[s] == -1; }

  int next_in_face(int s) const {
    const Face& f = faces_[slot_face(s)];
    int local = s - f.slot0;
    return f.slot0 + (local + 1) % f.nslots;
  }
  int prev_in_face(int s) const {
    const Face& f = faces_[slot_face(s)];
    int local = s - f.slot0;
    return f.slot0 + (local + f.nslots - 1) % f.nslots;
  }

  // Edge representative: the smaller slot id of the pair (the slot itself on
  // the boundary).  Edge data everywhere else is keyed by this id.
  int edge_rep(int s) const {
    int p = pair_of_[s];
    return (p == -1 || s < p) ? s : p;
  }

  const std::map<std::string, int>& marks() const { return marks_; }
  int mark_face(const std::string& name) const {
    auto it = marks_.find(name);
    if (it == marks_.end()) throw unknown_mark(name);
    return it->second;
  }
  bool has_mark(const std::string& name) const { return marks_.count(name) > 0; }

  const std::map<std::string, int>& boundary_labels() const { return boundary_labels_; }

  // --- vertices (corner classes) ---

  // Corner c(s): the face corner immediately before slot s.  The pairing
  // identifies head with tail: start(s) ~ end(pair(s)) and end(s) ~
  // start(pair(s)).
  DisjointSets corner_classes() const {
    DisjointSets ds(total_slots_);
    for (int s = 0; s < total_slots_; ++s) {
      int p = pair_of_[s];
      if (p == -1 || p < s) continue;
      ds.unite(s, next_in_face(p));
      ds.unite(next_in_face(s), p);
    }
    return ds;
  }

  int num_vertices() const { return corner_classes().count_classes(); }

  int num_edges() const {
    int e = 0;
    for (int s = 0; s < total_slots_; ++s)
      if (pair_of_[s] == -1 || pair_of_[s] > s) ++e;
    return e;
  }

  int euler_characteristic() const {
    return num_vertices() - num_edges() + num_faces();
  }

  // --- boundary structure ---

  // Successor along the boundary: exits the head of s and walks the vertex
  // fan until the next unpaired slot.
  int next_boundary_slot(int s) const {
    int t = next_in_face(s);
    while (pair_of_[t] != -1) t = next_in_face(pair_of_[t]);
    return t;
  }

  // Boundary circles as cyclic slot lists (each starting from its smallest
  // slot id, circles sorted by that id).
  std::vector<std::vector<int>> boundary_circles() const {
    std::vector<bool> seen(total_slots_, false);
    std::vector<std::vector<int>> out;
    for (int s = 0; s < total_slots_; ++s) {
      if (pair_of_[s] != -1 || seen[s]) continue;
      std::vector<int> circle;
      int t = s;
      do {
        circle.push_back(t);
        seen[t] = true;
        t = next_boundary_slot(t);
      } while (t != s);
      out.push_back(circle);
    }
    return out;
  }

  // --- components and classification ---

  std::vector<int> face_components() const {
    DisjointSets ds(num_faces());
    for (int s = 0; s < total_slots_; ++s)
      if (pair_of_[s] != -1)
        ds.unite(slot_face(s), slot_face(pair_of_[s]));
    std::vector<int> comp(num_faces());
    std::map<int, int> rename;
    for (int f = 0; f < num_faces(); ++f) {
      int root = ds.find(f);
      auto it = rename.try_emplace(root, static_cast<int>(rename.size())).first;
      comp[f] = it->second;
    }
    return comp;
  }

  int num_components() const {
    auto comp = face_components();
    return comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
  }

  // Classification of the whole complex.  For multi-component surfaces the
  // genus field is the total genus (sum over components).
  SurfaceClass classify() const {
    auto comp = face_components();
    int ncomp = comp.empty() ? 0 : 1 + *std::max_element(comp.begin(), comp.end());
    // per-component V - E + F and boundary count
    std::vector<int> chi(ncomp, 0), bnd(ncomp, 0);
    DisjointSets corners = corner_classes();
    std::set<int> counted;
    for (int s = 0; s < total_slots_; ++s) {
      int c = comp[slot_face(s)];
      if (counted.insert(corners.find(s)).second) chi[c] += 1;  // vertex
      if (pair_of_[s] == -1 || pair_of_[s] > s) chi[c] -= 1;    // edge
    }
    for (int f = 0; f < num_faces(); ++f) chi[comp[f]] += 1;     // face
    for (const auto& circle : boundary_circles()) bnd[comp[slot_face(circle[0])]] += 1;
    SurfaceClass sc;
    sc.components = ncomp;
    sc.orientable = true;
    int total_genus = 0, total_bnd = 0;
    for (int c = 0; c < ncomp; ++c) {
      int two_g = 2 - chi[c] - bnd[c];
      if (two_g < 0 || two_g % 2 != 0)
        throw pipeline_error("component with impossible euler characteristic");
      total_genus += two_g / 2;
      total_bnd += bnd[c];
    }
    sc.genus = total_genus;
    sc.boundary_count = total_bnd;
    return sc;
  }

  // Structural sanity: pairing is a fixed-point-free involution within range.
  void check_valid() const {
    for (int s = 0; s < total_slots_; ++s) {
      int p = pair_of_[s];
      if (p == s) throw validation_error("slot paired to itself");
      if (p != -1 && (p < 0 || p >= total_slots_ || pair_of_[p] != s))
        throw validation_error("pairing is not an involution");
    }
    for (const auto& [name, f] : marks_)
      if (f < 0 || f >= num_faces())
        throw validation_error("mark in unknown face: " + name);
  }

  bool operator==(const CombSurface& o) const {
    if (num_faces() != o.num_faces() || pair_of_ != o.pair_of_) return false;
    for (int f = 0; f < num_faces(); ++f)
      if (faces_[f].name != o.faces_[f].name || faces_[f].nslots != o.faces_[f].nslots)
        return false;
    return marks_ == o.marks_ && boundary_labels_ == o.boundary_labels_;
  }

 private:
  std::vector<Face> faces_;
  std::map<std::string, int> face_index_;
  std::vector<int> pair_of_;
  std::map<std::string, int> marks_;            // mark name -> face index
  std::map<std::string, int> boundary_labels_;  // label -> a slot on the circle
  int total_slots_ = 0;
};

// Canonical cellulation of the genus-g surface with b boundary circles: one
// central polygon (4g-gon when g>0, square when g=0, plus b extra slots) and
// b boundary squares.  Square B_j has slots (q0,q1,q2,q3) with q1~q3 rolled
// into a tube, q0 glued to the central polygon's extra slot, q2 left free.
inline CombSurface standard_surface(int g, int b, const std::string& prefix = "") {
  if (g < 0 || b < 0) throw pipeline_error("standard_surface needs g,b >= 0");
  CombSurface s;
  int main_slots = (g > 0 ? 4 * g : 4) + b;
  int mf = s.add_face(prefix + "F0", main_slots);
  if (g == 0) {
    s.glue(s.slot(mf, 0), s.slot(mf, 1));
    s.glue(s.slot(mf, 2), s.slot(mf, 3));
  } else {
    for (int i = 0; i < g; ++i) {
      s.glue(s.slot(mf, 4 * i), s.slot(mf, 4 * i + 2));
      s.glue(s.slot(mf, 4 * i + 1), s.slot(mf, 4 * i + 3));
    }
  }
  int base = (g > 0 ? 4 * g : 4);
  for (int j = 0; j < b; ++j) {
    int bf = s.add_face(prefix + "B" + std::to_string(j), 4);
    s.glue(s.slot(bf, 0), s.slot(mf, base + j));
    s.glue(s.slot(bf, 1), s.slot(bf, 3));
    s.add_boundary_label(prefix + "d" + std::to_string(j), s.slot(bf, 2));
  }
  s.check_valid();
  return s;
}

inline int euler_characteristic(const CombSurface& s) {
  return s.euler_characteristic();
}
inline SurfaceClass classify(const CombSurface& s) { return s.classify(); }

}  // namespace trisect
