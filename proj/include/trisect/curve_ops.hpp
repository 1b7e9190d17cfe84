#pragma once

// Moves on drawn curves.
//
//  * finger_move — isotopy utility: push a chord across an edge and straight
//    back, leaving a retractable u-turn (used to wiggle diagrams).
//  * reduce_bigons — normalization: retract empty u-turns and slide corridor
//    bigons apart until no face-level bigon between the two curves remains.
//    Crossings never increase; algebraic intersection and homology classes
//    are untouched (every move is an isotopy of one curve).
//  * regular_neighborhood_boundary — the simple closed curve encircling the
//    shadow of an arc together with its two end holes.
//  * band_core_closure — the closed curve formed by an arc and the core of a
//    band attached at its end holes.
//  * handle_slide — replace one family member by its band sum with another
//    member along a guide arc.
//
// All operations keep the per-edge strand orders as the single source of
// truth and verify their own output; pipeline errors signal internal
// bookkeeping faults, validation errors signal refused inputs.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trisect/combsurf.hpp"
#include "trisect/curves.hpp"
#include "trisect/errors.hpp"

namespace trisect {

// Indices (into the drawing's curve list) of one family, in drawing order.
inline std::vector<int> family_members(const Drawing& d, const std::string& family) {
  std::vector<int> out;
  for (int i = 0; i < d.num_curves(); ++i)
    if (d.curve(i).family == family) out.push_back(i);
  return out;
}

// --- finger move -----------------------------------------------------------

// Push a finger of chord `chord_idx` of curve `ci` across the interior edge
// at `slot` (a side of the chord's face) and straight back: two fresh strand
// points at position `at` along the slot and a u-turn in the opposite face.
// An isotopy of the curve; reduce_bigons performs the inverse retraction.
inline void finger_move(Drawing& d, int ci, int chord_idx, int slot, int at) {
  const CombSurface& s = d.surface();
  Curve& c = d.curve_mutable(ci);
  if (chord_idx < 0 || chord_idx >= static_cast<int>(c.chords.size()))
    throw pipeline_error("finger move on an absent chord");
  Chord ch = c.chords[chord_idx];
  if (s.slot_face(slot) != ch.face)
    throw pipeline_error("finger move through a slot of another face");
  if (s.is_boundary(slot))
    throw validation_error("finger move across a boundary edge");
  int nface = s.slot_face(s.pair_of(slot));
  for (const auto& [m, f] : s.marks())
    if (f == nface) throw unsupported("finger move into a marked face");
  int n = d.num_points_on_edge(slot);
  if (at < 0 || at > n) throw pipeline_error("finger position out of range");
  int p2 = d.insert_point_on_slot(slot, at);
  int p1 = d.insert_point_on_slot(slot, at);  // lands just before p2
  int back = s.pair_of(slot);
  auto build = [&](int n1, int n2) {
    std::vector<Chord> piece(3);
    piece[0].face = ch.face;
    piece[0].a = ch.a;
    piece[0].b = End::at_point(n1, slot);
    piece[1].face = nface;
    piece[1].a = End::at_point(n1, back);
    piece[1].b = End::at_point(n2, back);
    piece[2].face = ch.face;
    piece[2].a = End::at_point(n2, slot);
    piece[2].b = ch.b;
    return piece;
  };
  std::vector<Chord> piece = build(p1, p2);
  // The finger must not cross itself; the mirrored order fixes the parity.
  // (Mark-ended chords cannot be position-tested; keep the default order.)
  if (!ch.a.at_mark && !ch.b.at_mark) {
    if (d.chords_cross(piece[0], piece[2])) piece = build(p2, p1);
    if (d.chords_cross(piece[0], piece[2]))
      throw pipeline_error("finger move cannot be drawn embedded");
  }
  c.chords.erase(c.chords.begin() + chord_idx);
  c.chords.insert(c.chords.begin() + chord_idx, piece.begin(), piece.end());
}

// --- bigon reduction -------------------------------------------------------

namespace ops_detail {

// Retract one u-turn of c: a chord with both ends on one slot, entered and
// left from the same neighbouring face.  Straightening never adds crossings
// (a chord crosses the straightened strand only if it separated the u-turn's
// outer ends, in which case it crossed the old path too).  True on success.
inline bool retract_backtrack(Drawing& d, Curve& c) {
  int n = static_cast<int>(c.chords.size());
  if (n < 3) return false;
  int last = c.closed ? n : n - 2;
  for (int i = 0; i < last; ++i) {
    int j = (i + 1) % n, k = (i + 2) % n;
    const Chord& mid = c.chords[j];
    if (mid.a.at_mark || mid.b.at_mark) continue;
    if (mid.a.slot != mid.b.slot) continue;
    Chord rep;
    rep.face = c.chords[i].face;
    rep.a = c.chords[i].a;
    rep.b = c.chords[k].b;
    d.remove_point(mid.a.slot, mid.a.point);
    d.remove_point(mid.b.slot, mid.b.point);
    std::vector<Chord> rest;
    if (c.closed) {
      // Any cyclic rotation of a closed chord list names the same curve.
      for (int t = (k + 1) % n; t != i; t = (t + 1) % n) rest.push_back(c.chords[t]);
      rest.push_back(rep);
    } else {
      for (int t = 0; t < i; ++t) rest.push_back(c.chords[t]);
      rest.push_back(rep);
      for (int t = k + 1; t < n; ++t) rest.push_back(c.chords[t]);
    }
    c.chords = std::move(rest);
    return true;
  }
  return false;
}

// Order of crossings along chord C walked from C.a: the crossing with D1
// comes first when D1's endpoint inside the ccw arc (C.a -> C.b) is met
// first; far endpoints break ties.  Any consistent straight-line realization
// induces such an order, which is all adjacency testing needs.
struct AlongChord {
  const Drawing* d;
  FacePos a, b;
  AlongChord(const Drawing& dr, const Chord& C)
      : d(&dr), a(dr.end_pos(C.a)), b(dr.end_pos(C.b)) {}
  FacePos near(const Chord& D) const {
    FacePos x = d->end_pos(D.a);
    return Drawing::cyclic_between(a, x, b) ? x : d->end_pos(D.b);
  }
  FacePos far(const Chord& D) const {
    FacePos x = d->end_pos(D.a);
    return Drawing::cyclic_between(a, x, b) ? d->end_pos(D.b) : x;
  }
  bool before(const Chord& D1, const Chord& D2) const {
    FacePos n1 = near(D1), n2 = near(D2);
    if (!(n1 == n2)) return Drawing::cyclic_between(a, n1, n2);
    FacePos f1 = far(D1), f2 = far(D2);
    if (f1 == f2) return false;
    return Drawing::cyclic_between(b, f2, f1);
  }
};

struct Xing {
  int i = -1;  // chord index on the first curve
  int j = -1;  // chord index on the second curve
};

// All crossings between c1 and c2 in cyclic order along c1 (order1) and
// along c2 (order2), as indices into the returned crossing list.
struct XingOrders {
  std::vector<Xing> xings;
  std::vector<int> order1, order2;
};

inline XingOrders crossing_orders(const Drawing& d, const Curve& c1, const Curve& c2) {
  XingOrders out;
  for (int i = 0; i < static_cast<int>(c1.chords.size()); ++i)
    for (int j = 0; j < static_cast<int>(c2.chords.size()); ++j)
      if (d.chords_cross(c1.chords[i], c2.chords[j])) out.xings.push_back({i, j});
  auto sorted_along = [&](const Curve& host, bool host_is_first) {
    std::vector<int> order;
    for (int h = 0; h < static_cast<int>(host.chords.size()); ++h) {
      std::vector<int> here;
      for (int x = 0; x < static_cast<int>(out.xings.size()); ++x)
        if ((host_is_first ? out.xings[x].i : out.xings[x].j) == h) here.push_back(x);
      AlongChord along(d, host.chords[h]);
      const Curve& other = host_is_first ? c2 : c1;
      std::sort(here.begin(), here.end(), [&](int x, int y) {
        int cx = host_is_first ? out.xings[x].j : out.xings[x].i;
        int cy = host_is_first ? out.xings[y].j : out.xings[y].i;
        return along.before(other.chords[cx], other.chords[cy]);
      });
      order.insert(order.end(), here.begin(), here.end());
    }
    return order;
  };
  out.order1 = sorted_along(c1, true);
  out.order2 = sorted_along(c2, false);
  return out;
}

// Strand points (with the slot they are seen from) passed by `c` walking
// forward from just after the crossing on chord `fi` to just before the
// crossing on chord `ti`; `wrap` distinguishes the two walks when both
// crossings sit on one chord.  Empty optional when an open arc would wrap.
inline std::optional<std::vector<std::pair<int, int>>> forward_points(
    const Curve& c, int fi, int ti, bool wrap) {
  int n = static_cast<int>(c.chords.size());
  int steps = (ti - fi + n) % n;
  if (fi == ti) steps = wrap ? n : 0;
  if (!c.closed && fi + steps > n - 1) return std::nullopt;
  std::vector<std::pair<int, int>> pts;
  for (int u = 0; u < steps; ++u) {
    const End& e = c.chords[(fi + u) % n].b;
    pts.push_back({e.point, e.slot});
  }
  return pts;
}

inline std::optional<std::vector<std::pair<int, int>>> backward_points(
    const Curve& c, int fi, int ti, bool wrap) {
  int n = static_cast<int>(c.chords.size());
  int steps = (fi - ti + n) % n;
  if (fi == ti) steps = wrap ? n : 0;
  if (!c.closed && fi - steps < 0) return std::nullopt;
  std::vector<std::pair<int, int>> pts;
  for (int u = 0; u < steps; ++u) {
    const End& e = c.chords[(fi - u + n) % n].a;
    pts.push_back({e.point, e.slot});
  }
  return pts;
}

// Try to slide one corridor bigon of (c1, c2) apart.  A corridor bigon is a
// pair of crossings adjacent along both curves whose connecting segments
// cross the same edges, from the same sides, in the same order, with the
// rails adjacent on every edge (nothing runs between them).  The first
// curve's segment is rerouted to the far side of the second's; exactly the
// two crossings vanish and no third strand is disturbed.
inline bool reduce_one_corridor(Drawing& d, int ci, int cj) {
  const Curve& c1 = d.curve(ci);
  const Curve& c2 = d.curve(cj);
  XingOrders xo = crossing_orders(d, c1, c2);
  int nx = static_cast<int>(xo.xings.size());
  if (nx < 2) return false;
  std::vector<int> pos2(nx);
  for (int p = 0; p < nx; ++p) pos2[xo.order2[p]] = p;

  int pairs1 = c1.closed ? nx : nx - 1;
  for (int p = 0; p < pairs1; ++p) {
    int x = xo.order1[p], y = xo.order1[(p + 1) % nx];
    if (x == y) continue;
    // adjacency along c2 as well (in either direction)
    int qx = pos2[x], qy = pos2[y];
    int fwd = (qy - qx + nx) % nx, bwd = (qx - qy + nx) % nx;
    bool adj2 = (fwd == 1 || bwd == 1);
    if (!c2.closed && ((fwd == 1 && qy != qx + 1) || (bwd == 1 && qx != qy + 1)))
      adj2 = false;
    if (!adj2) continue;

    const Xing& X = xo.xings[x];
    const Xing& Y = xo.xings[y];
    bool wrap1 = (X.i == Y.i);  // adjacent the long way round on one chord
    auto s1 = forward_points(c1, X.i, Y.i, wrap1);
    if (!s1 || s1->empty()) continue;
    auto try_match = [&](const std::optional<std::vector<std::pair<int, int>>>& s2) {
      if (!s2 || s2->size() != s1->size()) return false;
      for (size_t u = 0; u < s1->size(); ++u)
        if ((*s1)[u].second != (*s2)[u].second) return false;
      for (size_t u = 0; u < s1->size(); ++u) {
        int sl = (*s1)[u].second;
        int ip = d.point_index_on_slot(sl, (*s1)[u].first);
        int iq = d.point_index_on_slot(sl, (*s2)[u].first);
        if (ip - iq != 1 && iq - ip != 1) return false;  // strip not empty
      }
      return true;
    };
    std::optional<std::vector<std::pair<int, int>>> s2 =
        forward_points(c2, X.j, Y.j, X.j == Y.j && fwd == 1 && nx != 1);
    if (!try_match(s2)) {
      s2 = backward_points(c2, X.j, Y.j, X.j == Y.j && bwd == 1 && nx != 1);
      if (!try_match(s2)) continue;
    }

    // Reroute c1 to the far side of c2's rail.
    int r = static_cast<int>(s1->size());
    int n1 = static_cast<int>(c1.chords.size());
    std::vector<int> np(r);
    for (int u = 0; u < r; ++u) {
      int sl = (*s1)[u].second;
      int ip = d.point_index_on_slot(sl, (*s1)[u].first);
      int iq = d.point_index_on_slot(sl, (*s2)[u].first);
      np[u] = d.insert_point_on_slot(sl, ip < iq ? iq + 1 : iq);
    }
    std::vector<Chord> run;
    Chord first;
    first.face = c1.chords[X.i].face;
    first.a = c1.chords[X.i].a;
    first.b = End::at_point(np[0], (*s1)[0].second);
    run.push_back(first);
    const CombSurface& s = d.surface();
    for (int u = 0; u + 1 < r; ++u) {
      Chord mid;
      mid.face = c1.chords[(X.i + u + 1) % n1].face;
      mid.a = End::at_point(np[u], s.pair_of((*s1)[u].second));
      mid.b = End::at_point(np[u + 1], (*s1)[u + 1].second);
      run.push_back(mid);
    }
    Chord lastc;
    lastc.face = c1.chords[Y.i].face;
    lastc.a = End::at_point(np[r - 1], s.pair_of((*s1)[r - 1].second));
    lastc.b = c1.chords[Y.i].b;
    run.push_back(lastc);

    std::vector<Chord> kept;
    if (c1.closed) {
      if (!(wrap1 && X.i == Y.i))
        for (int t = (Y.i + 1) % n1; t != X.i; t = (t + 1) % n1)
          kept.push_back(c1.chords[t]);
      kept.insert(kept.end(), run.begin(), run.end());
    } else {
      for (int t = 0; t < X.i; ++t) kept.push_back(c1.chords[t]);
      kept.insert(kept.end(), run.begin(), run.end());
      for (int t = Y.i + 1; t < n1; ++t) kept.push_back(c1.chords[t]);
    }
    d.curve_mutable(ci).chords = std::move(kept);
    for (int u = 0; u < r; ++u) d.remove_point((*s1)[u].second, (*s1)[u].first);
    if (d.geometric_crossings(d.curve(ci), d.curve(cj)) > nx - 2)
      throw pipeline_error("corridor move failed to reduce crossings");
    return true;
  }
  return false;
}

}  // namespace ops_detail

// Normalize the pair (ci, cj): retract u-turn fingers on both curves and
// slide empty corridor bigons apart until neither move applies.  Every move
// is an isotopy of a single curve, so algebraic intersections and homology
// classes are untouched; the geometric crossing count never increases.
// Returns the number of crossings removed.
inline int reduce_bigons(Drawing& d, int ci, int cj) {
  if (ci == cj) throw pipeline_error("bigon reduction needs two distinct curves");
  if (!d.is_embedded(d.curve(ci)) || !d.is_embedded(d.curve(cj)))
    throw validation_error("bigon reduction needs embedded curves");
  int before = d.geometric_crossings(d.curve(ci), d.curve(cj));
  int guard = 0;
  for (;;) {
    if (++guard > 100000) throw pipeline_error("bigon reduction does not terminate");
    if (ops_detail::retract_backtrack(d, d.curve_mutable(ci))) continue;
    if (ops_detail::retract_backtrack(d, d.curve_mutable(cj))) continue;
    if (ops_detail::reduce_one_corridor(d, ci, cj)) continue;
    break;
  }
  int after = d.geometric_crossings(d.curve(ci), d.curve(cj));
  if (after > before) throw pipeline_error("bigon reduction increased crossings");
  return before - after;
}

// --- regular neighbourhood boundary ----------------------------------------

namespace ops_detail {

// Insert the crossing points of a path hugging the boundary circle of the
// one-slot hole `hole`, walked once around its vertex starting just after
// the hole.  Returns (point, slot crossed) pairs in walk order.
inline std::vector<std::pair<int, int>> hug_hole(Drawing& d, int hole) {
  const CombSurface& s = d.surface();
  std::vector<std::pair<int, int>> zs;
  int t = s.next_in_face(hole);
  int guard = 0;
  while (t != hole) {
    if (++guard > 2 * s.num_slots() + 8)
      throw pipeline_error("hole hug does not close up");
    if (s.is_boundary(t))
      throw unsupported("end hole pinched against another boundary arc");
    zs.push_back({d.insert_point_on_slot(t, 0), t});
    t = s.next_in_face(s.pair_of(t));
  }
  if (zs.empty()) throw unsupported("end hole with no edge at its vertex");
  return zs;
}

// Chords between consecutive hug points.
inline void hug_inner_chords(const CombSurface& s,
                             const std::vector<std::pair<int, int>>& zs,
                             std::vector<Chord>& out) {
  for (size_t i = 0; i + 1 < zs.size(); ++i) {
    Chord c;
    c.face = s.slot_face(zs[i + 1].second);
    c.a = End::at_point(zs[i].first, s.pair_of(zs[i].second));
    c.b = End::at_point(zs[i + 1].first, zs[i + 1].second);
    out.push_back(c);
  }
}

}  // namespace ops_detail

// The simple closed curve bounding a regular neighbourhood of an arc
// together with its two ends: two parallel rails along the arc, joined by
// wraps around the ends.  With include_end_holes the arc must already end on
// one-slot boundary circles (as left by delete_marked_disk) and the wraps
// hug those holes; without it the arc must still end at marked points and
// the wraps turn just past the marks.  New strand points are inserted into
// the drawing; the returned curve is not added to it.
inline Curve regular_neighborhood_boundary(Drawing& d, const Curve& a,
                                           bool include_end_holes) {
  const CombSurface& s = d.surface();
  if (a.closed)
    throw validation_error("neighbourhood boundary of a closed curve is a push-off");
  d.check_curve(a);
  if (!d.is_embedded(a))
    throw validation_error("neighbourhood boundary of a self-crossing arc");
  const End e0 = a.chords.front().a;
  const End e1 = a.chords.back().b;
  int m = static_cast<int>(a.chords.size()) - 1;  // interior edge crossings

  Curve out;
  out.family = a.family;
  out.name = a.name + ".nbd";
  out.closed = true;

  if (!include_end_holes) {
    if (!e0.at_mark || !e1.at_mark)
      throw validation_error(
          "neighbourhood wrap past the endpoints needs marked endpoints; "
          "holes require include_end_holes");
    if (m == 0)
      throw unsupported("neighbourhood boundary of a chordless arc stays inside one face");
    Curve L = d.parallel_copy(a, Push::Left, "");
    Curve R = d.parallel_copy(a, Push::Right, "");
    Chord near_wrap;  // past the first endpoint, left rail to right rail
    near_wrap.face = a.chords.front().face;
    near_wrap.a = L.chords.front().b;
    near_wrap.b = R.chords.front().b;
    Chord far_wrap;  // past the last endpoint, right rail to left rail
    far_wrap.face = a.chords.back().face;
    far_wrap.a = R.chords.back().a;
    far_wrap.b = L.chords.back().a;
    out.chords.push_back(near_wrap);
    for (int u = 1; u < m; ++u) out.chords.push_back(R.chords[u]);
    out.chords.push_back(far_wrap);
    for (int u = m - 1; u >= 1; --u) {
      Chord rev = L.chords[u];
      std::swap(rev.a, rev.b);
      out.chords.push_back(rev);
    }
    d.check_curve(out);
    if (!d.is_embedded(out))
      throw pipeline_error("neighbourhood boundary came out self-crossing");
    return out;
  }

  for (const End* e : {&e0, &e1})
    if (e->at_mark || !s.is_boundary(e->slot))
      throw validation_error("arc endpoints are not boundary holes");
  for (const End* e : {&e0, &e1})
    if (s.next_in_face(e->slot) == e->slot)
      throw unsupported("end hole filling a whole face");
  // One-slot hole circles only (the shape delete_marked_disk leaves).
  auto one_slot_circle = [&](int hole) {
    int t = s.next_in_face(hole);
    while (!s.is_boundary(t)) t = s.next_in_face(s.pair_of(t));
    return t == hole;
  };
  for (const End* e : {&e0, &e1})
    if (!one_slot_circle(e->slot))
      throw unsupported("end hole circle with more than one boundary edge");
  if (e0.slot == e1.slot)
    throw unsupported("arc with both ends on one boundary circle");

  if (m == 0) {
    auto z1 = ops_detail::hug_hole(d, e0.slot);
    auto z2 = ops_detail::hug_hole(d, e1.slot);
    ops_detail::hug_inner_chords(s, z1, out.chords);
    Chord b1;  // from the z just before the first hole to the z just after the second
    b1.face = a.chords.front().face;
    b1.a = End::at_point(z1.back().first, s.pair_of(z1.back().second));
    b1.b = End::at_point(z2.front().first, z2.front().second);
    out.chords.push_back(b1);
    ops_detail::hug_inner_chords(s, z2, out.chords);
    Chord b2;
    b2.face = a.chords.front().face;
    b2.a = End::at_point(z2.back().first, s.pair_of(z2.back().second));
    b2.b = End::at_point(z1.front().first, z1.front().second);
    out.chords.push_back(b2);
  } else {
    Curve L = d.parallel_copy(a, Push::Left, "");
    Curve R = d.parallel_copy(a, Push::Right, "");
    for (const Curve* rail : {&L, &R}) {
      d.remove_point(rail->chords.front().a.slot, rail->chords.front().a.point);
      d.remove_point(rail->chords.back().b.slot, rail->chords.back().b.point);
    }
    auto z1 = ops_detail::hug_hole(d, e0.slot);
    auto z2 = ops_detail::hug_hole(d, e1.slot);
    // into the first hug from the left rail ...
    Chord in1;
    in1.face = a.chords.front().face;
    in1.a = L.chords.front().b;
    in1.b = End::at_point(z1.front().first, z1.front().second);
    out.chords.push_back(in1);
    ops_detail::hug_inner_chords(s, z1, out.chords);
    // ... out to the right rail, along it, around the far hole, and back.
    Chord out1;
    out1.face = a.chords.front().face;
    out1.a = End::at_point(z1.back().first, s.pair_of(z1.back().second));
    out1.b = R.chords.front().b;
    out.chords.push_back(out1);
    for (int u = 1; u < m; ++u) out.chords.push_back(R.chords[u]);
    Chord in2;
    in2.face = a.chords.back().face;
    in2.a = R.chords.back().a;
    in2.b = End::at_point(z2.front().first, z2.front().second);
    out.chords.push_back(in2);
    ops_detail::hug_inner_chords(s, z2, out.chords);
    Chord out2;
    out2.face = a.chords.back().face;
    out2.a = End::at_point(z2.back().first, s.pair_of(z2.back().second));
    out2.b = L.chords.back().a;
    out.chords.push_back(out2);
    for (int u = m - 1; u >= 1; --u) {
      Chord rev = L.chords[u];
      std::swap(rev.a, rev.b);
      out.chords.push_back(rev);
    }
  }
  d.check_curve(out);
  if (!d.is_embedded(out))
    throw pipeline_error("neighbourhood boundary came out self-crossing");
  if (d.geometric_crossings(out, a) != 0)
    throw pipeline_error("neighbourhood boundary meets its own arc");
  return out;
}

// --- band core closure ------------------------------------------------------

// The closed curve formed by the shadow arc `a` and the core of the band
// `band_face` (a square attached by attach_band whose feet are the holes
// carrying the arc's endpoints).  One extra chord runs through the band.
inline Curve band_core_closure(const Drawing& d, const Curve& a,
                               const std::string& band_face) {
  const CombSurface& s = d.surface();
  if (a.closed) throw validation_error("band closure of a closed curve");
  int bf = -1;
  for (int f = 0; f < s.num_faces(); ++f)
    if (s.face(f).name == band_face) bf = f;
  if (bf < 0) throw unknown_name("band face " + band_face);
  if (s.face(bf).nslots != 4 || s.is_boundary(s.slot(bf, 0)) ||
      s.is_boundary(s.slot(bf, 2)) || !s.is_boundary(s.slot(bf, 1)) ||
      !s.is_boundary(s.slot(bf, 3)))
    throw validation_error(band_face + " is not an attached band");
  int f1 = s.pair_of(s.slot(bf, 0));
  int f2 = s.pair_of(s.slot(bf, 2));
  const End& e0 = a.chords.front().a;
  const End& e1 = a.chords.back().b;
  if (e0.at_mark || e1.at_mark)
    throw validation_error("band closure of a mark-ended arc");
  Chord core;
  core.face = bf;
  if (e1.slot == f2 && e0.slot == f1) {
    core.a = End::at_point(e1.point, s.slot(bf, 2));
    core.b = End::at_point(e0.point, s.slot(bf, 0));
  } else if (e1.slot == f1 && e0.slot == f2) {
    core.a = End::at_point(e1.point, s.slot(bf, 0));
    core.b = End::at_point(e0.point, s.slot(bf, 2));
  } else {
    throw validation_error("band " + band_face + " is not attached at the ends of " +
                           a.name);
  }
  Curve out = a;
  out.closed = true;
  out.chords.push_back(core);
  d.check_curve(out);
  if (!d.is_embedded(out))
    throw validation_error("band core closure is not simple");
  return out;
}

// --- handle slide -----------------------------------------------------------

// Replace family member `mover` by its band sum with member `over` along
// `guide`.  The guide is an open chord path whose first end rides on a
// strand point of the mover (the slot names the side the band leaves from)
// and whose last end rides on a strand point of the over curve; its interior
// points must have been inserted into the drawing and are consumed by the
// slide.  The family stays pairwise disjoint or the slide is refused.
inline void handle_slide(Drawing& d, const std::string& family, int mover, int over,
                         const Curve& guide) {
  std::vector<int> members = family_members(d, family);
  int nm = static_cast<int>(members.size());
  if (mover < 0 || over < 0 || mover >= nm || over >= nm)
    throw pipeline_error("handle slide outside the family");
  if (mover == over) throw validation_error("cannot slide a curve over itself");
  if (guide.closed || guide.chords.empty())
    throw validation_error("slide guide must be an open chord path");
  const End g0 = guide.chords.front().a;
  const End g1 = guide.chords.back().b;
  if (g0.at_mark || g1.at_mark) throw validation_error("slide guide ends at a mark");
  int K = static_cast<int>(guide.chords.size());
  for (int t = 0; t + 1 < K; ++t) {
    const End& outp = guide.chords[t].b;
    const End& inp = guide.chords[t + 1].a;
    if (outp.at_mark || inp.at_mark || outp.point != inp.point)
      throw validation_error("broken slide guide");
  }

  Drawing w = d;  // all-or-nothing
  const CombSurface& s = w.surface();
  for (int t = 0; t + 1 < K; ++t)
    if (s.pair_of(guide.chords[t].b.slot) != guide.chords[t + 1].a.slot)
      throw validation_error("broken slide guide");
  int mi = members[mover], oi = members[over];

  // Orient the mover so its outgoing chord at the guide's start lives on the
  // guide's side of the edge.
  auto find_out = [&]() -> int {
    const Curve& mc = w.curve(mi);
    for (int t = 0; t < static_cast<int>(mc.chords.size()); ++t)
      if (!mc.chords[t].a.at_mark && mc.chords[t].a.point == g0.point &&
          mc.chords[t].a.slot == g0.slot)
        return t;
    return -1;
  };
  int j = find_out();
  if (j < 0) {
    w.curve_mutable(mi) = Drawing::reversed(w.curve(mi));
    j = find_out();
  }
  if (j < 0)
    throw validation_error("slide guide does not start on the moving curve");
  const Chord m_out = w.curve(mi).chords[j];

  // The over chord on the guide's arrival side.
  const Curve& oc = w.curve(oi);
  if (!w.is_embedded(oc)) throw validation_error("slide over a self-crossing curve");
  int oz = -1;
  for (int t = 0; t < static_cast<int>(oc.chords.size()); ++t) {
    const Chord& ch = oc.chords[t];
    if ((!ch.a.at_mark && ch.a.point == g1.point && ch.a.slot == g1.slot) ||
        (!ch.b.at_mark && ch.b.point == g1.point && ch.b.slot == g1.slot))
      oz = t;
  }
  if (oz < 0)
    throw validation_error("slide guide does not end on the slid-over curve");

  // Push the over curve off toward the guide's approach.
  const End approach = guide.chords.back().a;  // for K == 1 this is g0
  bool left = Drawing::cyclic_between(w.end_pos(oc.chords[oz].a), w.end_pos(approach),
                                      w.end_pos(oc.chords[oz].b));
  Curve ostar = w.parallel_copy(oc, left ? Push::Left : Push::Right, "");
  int po_star = -1;
  for (int t = 0; t < static_cast<int>(oc.chords.size()); ++t) {
    if (!oc.chords[t].a.at_mark && oc.chords[t].a.point == g1.point)
      po_star = ostar.chords[t].a.point;
    if (!oc.chords[t].b.at_mark && oc.chords[t].b.point == g1.point)
      po_star = ostar.chords[t].b.point;
  }
  if (po_star < 0) throw pipeline_error("push-off lost the guide's landing point");
  int qi = -1, qo = -1;  // push-off chords into and out of the landing copy
  int no = static_cast<int>(ostar.chords.size());
  for (int t = 0; t < no; ++t) {
    if (ostar.chords[t].b.point == po_star) qi = t;
    if (ostar.chords[t].a.point == po_star) qo = t;
  }
  if (qi < 0 || qo < 0) throw pipeline_error("push-off lost its landing chords");

  // Two opening points beyond the push-off, away from the over curve.
  int sigma = g1.slot;
  int idx_over = w.point_index_on_slot(sigma, g1.point);
  int idx_star = w.point_index_on_slot(sigma, po_star);
  int n3, poo;
  if (idx_star > idx_over) {
    n3 = w.insert_point_on_slot(sigma, idx_star + 1);
    poo = w.insert_point_on_slot(sigma, idx_star + 2);
  } else {
    n3 = w.insert_point_on_slot(sigma, idx_star);
    poo = w.insert_point_on_slot(sigma, idx_star);
  }

  // Guide rails (the band's two sides); their end copies are not used.
  Curve rail_l, rail_r;
  if (K >= 2) {
    rail_l = w.parallel_copy(guide, Push::Left, "");
    rail_r = w.parallel_copy(guide, Push::Right, "");
    for (Curve* rail : {&rail_l, &rail_r}) {
      w.remove_point(rail->chords.front().a.slot, rail->chords.front().a.point);
      w.remove_point(rail->chords.back().b.slot, rail->chords.back().b.point);
    }
  }

  auto assemble = [&](bool left_in) {
    const Curve& rin = left_in ? rail_l : rail_r;
    const Curve& rout = left_in ? rail_r : rail_l;
    std::vector<Chord> run;
    for (int t = 0; t < K; ++t) {  // along the guide to the push-off opening
      Chord c;
      c.face = guide.chords[t].face;
      c.a = (t == 0) ? End::at_point(g0.point, g0.slot)
                     : End::at_point(rin.chords[t].a.point, guide.chords[t].a.slot);
      c.b = (t == K - 1)
                ? End::at_point(poo, sigma)
                : End::at_point(rin.chords[t].b.point, guide.chords[t].b.slot);
      run.push_back(c);
    }
    if (ostar.chords[qi].b.slot == sigma) {  // traverse the push-off forward
      Chord c = ostar.chords[qo];
      c.a = End::at_point(poo, c.a.slot);
      run.push_back(c);
      if (qo != qi)
        for (int t = (qo + 1) % no;; t = (t + 1) % no) {
          run.push_back(ostar.chords[t]);
          if (t == qi) break;
        }
    } else {  // traverse it backward
      Chord c = ostar.chords[qi];
      std::swap(c.a, c.b);
      c.a = End::at_point(poo, c.a.slot);
      run.push_back(c);
      if (qi != qo)
        for (int t = (qi - 1 + no) % no;; t = (t - 1 + no) % no) {
          Chord rc = ostar.chords[t];
          std::swap(rc.a, rc.b);
          run.push_back(rc);
          if (t == qo) break;
        }
    }
    Chord uturn;
    uturn.face = s.slot_face(s.pair_of(sigma));
    uturn.a = End::at_point(po_star, s.pair_of(sigma));
    uturn.b = End::at_point(n3, s.pair_of(sigma));
    run.push_back(uturn);
    for (int t = K - 1; t >= 0; --t) {  // back along the other rail
      Chord c;
      c.face = guide.chords[t].face;
      c.a = (t == K - 1)
                ? End::at_point(n3, sigma)
                : End::at_point(rout.chords[t].b.point, guide.chords[t].b.slot);
      c.b = (t == 0) ? m_out.b
                     : End::at_point(rout.chords[t].a.point, guide.chords[t].a.slot);
      run.push_back(c);
    }
    return run;
  };

  auto splice = [&](std::vector<Chord> run) {
    const Curve& mc = w.curve(mi);
    std::vector<Chord> chords;
    for (int t = 0; t < static_cast<int>(mc.chords.size()); ++t) {
      if (t == j)
        chords.insert(chords.end(), run.begin(), run.end());
      else
        chords.push_back(mc.chords[t]);
    }
    return chords;
  };

  Curve trial = w.curve(mi);
  trial.chords = splice(assemble(true));
  if (!w.is_embedded(trial)) trial.chords = splice(assemble(false));
  w.check_curve(trial);
  if (!w.is_embedded(trial))
    throw validation_error("slide guide obstructed: band sum not embedded");
  for (int idx : members) {
    if (idx == mi) continue;
    if (w.geometric_crossings(trial, w.curve(idx)) != 0)
      throw validation_error("slide guide obstructed: family no longer disjoint");
  }
  w.curve_mutable(mi) = trial;
  for (int t = 0; t + 1 < K; ++t)  // the guide's interior points are consumed
    w.remove_point(guide.chords[t].b.slot, guide.chords[t].b.point);
  w.check_integrity();
  d = std::move(w);
}

}  // namespace trisect
