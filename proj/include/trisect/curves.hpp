#pragma once

// Curves and arcs drawn on a combinatorial surface.
//
// A drawing is a surface plus a set of curves in normal position.  Each curve
// is a sequence of chords; a chord lives in one face and runs between two
// ends, an end being either a strand point on an edge of that face or a
// marked point.  Strand points are shared: where a curve crosses an interior
// edge, one point id appears as the exit end of a chord on one side and the
// entry end of the next chord on the other side.
//
// Every edge carries an ordered list of the strand points on it, stored once
// per edge (keyed by the representative slot) and read reversed from the
// other side.  These per-edge orders are the single source of truth for
// crossing detection: two chords of one face cross exactly when their
// endpoints interleave in the cyclic boundary order of the face.
//
// Faces are convex in spirit: chords are drawn straight, so a pair of chords
// crosses at most once, and all intersection counts are computed exactly,
// integer-only.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trisect/combsurf.hpp"
#include "trisect/errors.hpp"

namespace trisect {

struct End {
  bool at_mark = false;
  int point = -1;        // strand point id (when !at_mark)
  int slot = -1;         // the slot side the end sits on (when !at_mark)
  std::string mark;      // mark name (when at_mark)

  static End at_point(int point, int slot) {
    End e;
    e.point = point;
    e.slot = slot;
    return e;
  }
  static End at(const std::string& mark) {
    End e;
    e.at_mark = true;
    e.mark = mark;
    return e;
  }
  bool operator==(const End& o) const {
    return at_mark == o.at_mark && point == o.point && slot == o.slot && mark == o.mark;
  }
};

struct Chord {
  int face = -1;
  End a, b;
};

struct Curve {
  std::string family;  // alpha, beta, gamma, s_alpha, s_beta, s_gamma, work, ...
  std::string name;
  bool closed = true;
  std::vector<Chord> chords;

  bool is_arc() const { return !closed; }
};

// Position of an end on the boundary of its face: local slot index, then
// index along the slot direction.  Corners sit between slots and never carry
// ends.  Mark ends have no boundary position.
struct FacePos {
  int local_slot = 0;
  int idx = 0;
  bool operator<(const FacePos& o) const {
    return local_slot != o.local_slot ? local_slot < o.local_slot : idx < o.idx;
  }
  bool operator==(const FacePos& o) const {
    return local_slot == o.local_slot && idx == o.idx;
  }
};

// Which side of the original a parallel push-off runs on.  Left is the
// convention "entry end displaced forward along the slot, exit end displaced
// backward"; Right is the mirror.  The two names are arbitrary but fixed.
enum class Push { Left, Right };

class Drawing {
 public:
  Drawing() = default;
  explicit Drawing(CombSurface surf) : surf_(std::move(surf)) {}

  const CombSurface& surface() const { return surf_; }
  CombSurface& surface_mutable() { return surf_; }

  // --- strand points ---

  int num_points_on_edge(int slot) const {
    auto it = edge_pts_.find(surf_.edge_rep(slot));
    return it == edge_pts_.end() ? 0 : static_cast<int>(it->second.size());
  }

  // Point ids along `slot` in the slot's own direction.
  std::vector<int> points_on_slot(int slot) const {
    int rep = surf_.edge_rep(slot);
    auto it = edge_pts_.find(rep);
    if (it == edge_pts_.end()) return {};
    std::vector<int> v = it->second;
    if (slot != rep) std::reverse(v.begin(), v.end());
    return v;
  }

  int point_index_on_slot(int slot, int point) const {
    auto v = points_on_slot(slot);
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] == point) return static_cast<int>(i);
    throw pipeline_error("strand point not on expected edge");
  }

  // Insert a fresh point at position `idx` along `slot`'s direction
  // (0 = tail of the slot, current-count = head).  Returns the new point id.
  int insert_point_on_slot(int slot, int idx) {
    int rep = surf_.edge_rep(slot);
    auto& v = edge_pts_[rep];
    int n = static_cast<int>(v.size());
    if (idx < 0 || idx > n) throw pipeline_error("strand insertion out of range");
    int at = (slot == rep) ? idx : n - idx;
    int id = next_point_++;
    v.insert(v.begin() + at, id);
    return id;
  }

  int insert_point_before(int slot, int point) {
    return insert_point_on_slot(slot, point_index_on_slot(slot, point));
  }
  int insert_point_after(int slot, int point) {
    return insert_point_on_slot(slot, point_index_on_slot(slot, point) + 1);
  }
  int insert_point_at_end(int slot) {
    return insert_point_on_slot(slot, num_points_on_edge(slot));
  }

  void remove_point(int slot, int point) {
    int rep = surf_.edge_rep(slot);
    auto it = edge_pts_.find(rep);
    if (it == edge_pts_.end()) throw pipeline_error("removing point from empty edge");
    auto& v = it->second;
    auto pos = std::find(v.begin(), v.end(), point);
    if (pos == v.end()) throw pipeline_error("removing absent strand point");
    v.erase(pos);
    if (v.empty()) edge_pts_.erase(it);
  }

  // Raw access used by serialization and surgery.
  const std::map<int, std::vector<int>>& edge_tables() const { return edge_pts_; }
  void set_edge_table(int rep, std::vector<int> pts) {
    if (pts.empty()) edge_pts_.erase(rep);
    else edge_pts_[rep] = std::move(pts);
  }
  int peek_next_point() const { return next_point_; }
  void reserve_points(int upto) { next_point_ = std::max(next_point_, upto); }
  int fresh_point() { return next_point_++; }

  // --- curves ---

  int add_curve(Curve c) {
    curves_.push_back(std::move(c));
    return static_cast<int>(curves_.size()) - 1;
  }

  const std::vector<Curve>& curves() const { return curves_; }
  const Curve& curve(int i) const { return curves_[i]; }
  Curve& curve_mutable(int i) { return curves_[i]; }
  int num_curves() const { return static_cast<int>(curves_.size()); }

  std::optional<int> find_curve(const std::string& family, const std::string& name) const {
    for (int i = 0; i < num_curves(); ++i)
      if (curves_[i].family == family && curves_[i].name == name) return i;
    return std::nullopt;
  }

  std::vector<int> family_members(const std::string& family) const {
    std::vector<int> out;
    for (int i = 0; i < num_curves(); ++i)
      if (curves_[i].family == family) out.push_back(i);
    return out;
  }

  // Remove a curve and garbage-collect its strand points.
  void remove_curve(int index) {
    const Curve& c = curves_[index];
    // A point id appears on both sides of an edge; collect unique (rep, id).
    std::set<std::pair<int, int>> pts;
    for (const Chord& ch : c.chords) {
      for (const End* e : {&ch.a, &ch.b})
        if (!e->at_mark) pts.insert({surf_.edge_rep(e->slot), e->point});
    }
    for (auto& [rep, id] : pts) {
      auto it = edge_pts_.find(rep);
      if (it == edge_pts_.end()) continue;
      auto& v = it->second;
      v.erase(std::remove(v.begin(), v.end(), id), v.end());
      if (v.empty()) edge_pts_.erase(it);
    }
    curves_.erase(curves_.begin() + index);
  }

  void remove_curves(std::vector<int> indices) {
    std::sort(indices.rbegin(), indices.rend());
    for (int i : indices) remove_curve(i);
  }

  // --- positions and crossings ---

  FacePos end_pos(const End& e) const {
    if (e.at_mark) throw pipeline_error("mark end has no boundary position");
    FacePos p;
    p.local_slot = surf_.slot_local(e.slot);
    p.idx = point_index_on_slot(e.slot, e.point);
    return p;
  }

  // Is m strictly inside the counterclockwise open arc from a to b?
  static bool cyclic_between(const FacePos& a, const FacePos& m, const FacePos& b) {
    if (a < b) return a < m && m < b;
    return a < m || m < b;
  }

  // Do two chords of the same face cross (drawn straight)?  Chords sharing a
  // mark end never cross near the mark; a mark-ended chord against a chord
  // not at that mark is rejected (the mark has no position relative to the
  // chord -- the marked-face invariant must hold before asking).
  bool chords_cross(const Chord& c, const Chord& d) const {
    if (c.face != d.face) return false;
    bool cm = c.a.at_mark || c.b.at_mark;
    bool dm = d.a.at_mark || d.b.at_mark;
    if (cm || dm) {
      if (cm && dm) return false;  // both incident to the face's mark
      throw unsupported(
          "crossing query between a mark-ended chord and a free chord in one face");
    }
    FacePos a = end_pos(c.a), b = end_pos(c.b);
    FacePos x = end_pos(d.a), y = end_pos(d.b);
    return cyclic_between(a, x, b) != cyclic_between(a, y, b);
  }

  // Sign of a crossing (chords must cross): +1 when d crosses c left to
  // right, i.e. when d's entry end lies in the ccw arc from c's entry to c's
  // exit.  With counterclockwise faces this is the standard intersection sign
  // of the ordered pair (c, d).
  int crossing_sign(const Chord& c, const Chord& d) const {
    FacePos a = end_pos(c.a), b = end_pos(c.b);
    FacePos x = end_pos(d.a);
    return cyclic_between(a, x, b) ? +1 : -1;
  }

  int geometric_crossings(const Curve& c1, const Curve& c2) const {
    int n = 0;
    for (const Chord& c : c1.chords)
      for (const Chord& d : c2.chords)
        if (chords_cross(c, d)) ++n;
    return n;
  }

  int self_crossings(const Curve& c) const {
    int n = 0;
    for (size_t i = 0; i < c.chords.size(); ++i)
      for (size_t j = i + 1; j < c.chords.size(); ++j)
        if (chords_cross(c.chords[i], c.chords[j])) ++n;
    return n;
  }

  int algebraic_intersection(const Curve& c1, const Curve& c2) const {
    if (!c1.closed || !c2.closed)
      throw unsupported("algebraic intersection needs closed curves");
    int s = 0;
    for (const Chord& c : c1.chords)
      for (const Chord& d : c2.chords)
        if (chords_cross(c, d)) s += crossing_sign(c, d);
    return s;
  }

  bool is_embedded(const Curve& c) const { return self_crossings(c) == 0; }

  // --- structural checks ---

  // Verify chord connectivity: consecutive chords share a strand point
  // through a pairing; arc ends are marks or boundary points; every strand
  // point referenced is present on its edge.
  void check_curve(const Curve& c) const {
    if (c.chords.empty()) throw validation_error("curve with no chords: " + c.name);
    auto check_end = [&](const End& e, int face) {
      if (e.at_mark) {
        if (!surf_.has_mark(e.mark)) throw unknown_mark(e.mark);
        if (surf_.mark_face(e.mark) != face)
          throw validation_error("chord reaches a mark of another face");
        return;
      }
      if (surf_.slot_face(e.slot) != face)
        throw validation_error("chord end on a slot of another face");
      point_index_on_slot(e.slot, e.point);  // throws if absent
    };
    for (const Chord& ch : c.chords) {
      check_end(ch.a, ch.face);
      check_end(ch.b, ch.face);
    }
    size_t n = c.chords.size();
    size_t links = c.closed ? n : n - 1;
    for (size_t i = 0; i < links; ++i) {
      const End& out = c.chords[i].b;
      const End& in = c.chords[(i + 1) % n].a;
      if (out.at_mark || in.at_mark)
        throw validation_error("curve " + c.name + " breaks at a mark");
      if (out.point != in.point || surf_.pair_of(out.slot) != in.slot)
        throw validation_error("curve " + c.name + " has disconnected chords");
    }
    if (!c.closed) {
      for (const End* e : {&c.chords.front().a, &c.chords.back().b}) {
        if (e->at_mark) continue;
        if (!surf_.is_boundary(e->slot))
          throw validation_error("arc " + c.name + " ends on an interior edge");
      }
    } else {
      for (const Chord& ch : c.chords)
        if (ch.a.at_mark || ch.b.at_mark)
          throw validation_error("closed curve " + c.name + " passes through a mark");
    }
  }

  // Whole-drawing integrity: every edge-table id is used by exactly one
  // chord end per side (two for interior edges, one for boundary edges).
  void check_integrity() const {
    std::map<std::pair<int, int>, int> uses;  // (slot, point) -> count
    for (const Curve& c : curves_) {
      check_curve(c);
      for (const Chord& ch : c.chords)
        for (const End* e : {&ch.a, &ch.b})
          if (!e->at_mark) uses[{e->slot, e->point}]++;
    }
    for (const auto& [rep, pts] : edge_pts_) {
      int other = surf_.pair_of(rep);
      for (int id : pts) {
        if (uses[{rep, id}] != 1)
          throw pipeline_error("strand point with wrong use count on edge side");
        if (other != -1 && uses[{other, id}] != 1)
          throw pipeline_error("strand point missing on paired side");
      }
    }
    int total_uses = 0;
    for (auto& [k, v] : uses) total_uses += v;
    int expected = 0;
    for (const auto& [rep, pts] : edge_pts_)
      expected += static_cast<int>(pts.size()) * (surf_.pair_of(rep) == -1 ? 1 : 2);
    if (total_uses != expected)
      throw pipeline_error("stray chord ends or orphan strand points");
  }

  // --- parallel push-offs ---

  // Push a copy of curve c to one side.  Left: every chord's entry end is
  // displaced forward along its slot direction and its exit end backward;
  // this is self-consistent across pairings (forward on one side reads as
  // backward from the other), so the copy is embedded, parallel and disjoint
  // from the original.  Arc ends at marks stay at the marks; arc ends on
  // boundary edges are displaced like interior entries/exits.
  Curve parallel_copy(const Curve& c, Push side, const std::string& new_name) {
    Curve out;
    out.family = c.family;
    out.name = new_name;
    out.closed = c.closed;
    // New point ids, one per strand point of c (keyed by point id).
    std::map<int, int> copy_of;
    auto displaced = [&](const End& e, bool entry) -> End {
      if (e.at_mark) return e;
      bool forward = (side == Push::Left) ? entry : !entry;
      auto it = copy_of.find(e.point);
      int np;
      if (it != copy_of.end()) {
        np = it->second;
      } else {
        np = forward ? insert_point_after(e.slot, e.point)
                     : insert_point_before(e.slot, e.point);
        copy_of[e.point] = np;
      }
      return End::at_point(np, e.slot);
    };
    for (const Chord& ch : c.chords) {
      Chord nc;
      nc.face = ch.face;
      nc.a = displaced(ch.a, /*entry=*/true);
      nc.b = displaced(ch.b, /*entry=*/false);
      out.chords.push_back(nc);
    }
    return out;
  }

  static Curve reversed(const Curve& c) {
    Curve out = c;
    std::reverse(out.chords.begin(), out.chords.end());
    for (Chord& ch : out.chords) std::swap(ch.a, ch.b);
    return out;
  }

 private:
  CombSurface surf_;
  std::map<int, std::vector<int>> edge_pts_;  // edge rep -> point ids, rep direction
  std::vector<Curve> curves_;
  int next_point_ = 0;
};

// Free-function views matching the operation names used elsewhere.
inline int geometric_crossings(const Drawing& d, const Curve& a, const Curve& b) {
  return d.geometric_crossings(a, b);
}
inline int algebraic_intersection(const Drawing& d, const Curve& a, const Curve& b) {
  return d.algebraic_intersection(a, b);
}

}  // namespace trisect
