#pragma once

// Surgery on drawings: the local rewrites every construction reduces to.
//
//  * delete_marked_disk   — removes an open disk around a marked point; the
//    containing face becomes an annular face cut open along an arc from its
//    base corner, and chords that ended at the mark are rerouted to the new
//    boundary circle.
//  * delete_disk_at_corner — same face rewrite with an empty stub set; the
//    hole sits next to the face's base corner, clear of all passing chords
//    (used by connect sums and stabilizations).
//  * split_boundary_slot  — subdivides a boundary edge at chosen positions
//    between its strand points (isolates band feet, equalizes circle lengths).
//  * subdivide_edge       — subdivides an interior edge at a strand index; a
//    pure recellulation used to test invariance of downstream computations.
//  * attach_band          — glues a square face along two whole boundary
//    slots; only the orientation-preserving gluing is representable.
//  * cut_along_system     — cuts the surface along a disjoint family of
//    embedded closed curves (or merely refines the cellulation along them),
//    carrying all disjoint curves into the result.
//  * cap_boundary_circle  — glues a disk onto a boundary circle.
//  * connect_sum          — boundary-connected assembly of two drawings by
//    removing a corner disk in each and gluing the circles.
//  * glue_boundary_circles — identifies two boundary circles slot by slot,
//    merging strand endpoints and fusing curves across the seam.
//
// Every operation takes values and returns fresh values; faces are rebuilt
// with deterministic names so pipeline outputs are reproducible.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "trisect/curves.hpp"

namespace trisect {

enum class BandOrientation { Preserve, Reverse };

namespace detail {

// Shared helper: rebuild a drawing after a structural edit, given the new
// surface and an old-slot -> new-slot map.  Edge tables follow their edges
// (reversing when the representative side flips); curves keep their chords
// with slots remapped.
inline Drawing rebuild_remapped(const Drawing& d, CombSurface new_surf,
                                const std::vector<int>& slot_map) {
  Drawing out(std::move(new_surf));
  out.reserve_points(d.peek_next_point());
  const CombSurface& osurf = d.surface();
  const CombSurface& nsurf = out.surface();
  for (const auto& [rep, pts] : d.edge_tables()) {
    int nrep_candidate = slot_map[rep];
    int nrep = nsurf.edge_rep(nrep_candidate);
    std::vector<int> v = pts;
    if (nrep != nrep_candidate) std::reverse(v.begin(), v.end());
    out.set_edge_table(nrep, std::move(v));
  }
  for (const Curve& c : d.curves()) {
    Curve nc = c;
    for (Chord& ch : nc.chords) {
      ch.face = nsurf.slot_face(slot_map[osurf.slot(ch.face, 0)]);
      for (End* e : {&ch.a, &ch.b})
        if (!e->at_mark) e->slot = slot_map[e->slot];
    }
    out.add_curve(std::move(nc));
  }
  return out;
}

// Face rewrite shared by the two disk deletions. The face (s_0 .. s_{n-1})
// becomes (c_in, h, c_out, s_0 .. s_{n-1}): walk from the base corner down
// the cut, once around the new hole, and back.  c_in/c_out are glued to each
// other; h is the new boundary edge and inherits `hole_label`.  `stub_curve`
// lists chord ends previously at the deleted mark, ordered by their far
// endpoints; they are rerouted to fresh strand points on h (reversed order:
// walking the hole clockwise meets the stubs by descending far position).
struct StubRef {
  int curve = -1;
  int chord = -1;
  bool end_b = false;  // which end of the chord pointed at the mark
  FacePos far;         // position of the chord's other end
};

inline Drawing delete_disk_in_face(const Drawing& d, int face,
                                   const std::string& hole_label,
                                   std::vector<StubRef> stubs,
                                   const std::string& consumed_mark) {
  const CombSurface& s = d.surface();
  // New surface: identical except `face` gains three leading slots.
  CombSurface ns;
  std::vector<int> slot_map(s.num_slots(), -1);
  for (int f = 0; f < s.num_faces(); ++f) {
    int extra = (f == face) ? 3 : 0;
    ns.add_face(s.face(f).name, s.face(f).nslots + extra);
    for (int i = 0; i < s.face(f).nslots; ++i)
      slot_map[s.slot(f, i)] = ns.slot(f, i + extra);
  }
  for (int sl = 0; sl < s.num_slots(); ++sl) {
    int p = s.pair_of(sl);
    if (p > sl) ns.glue(slot_map[sl], slot_map[p]);
  }
  ns.glue(ns.slot(face, 0), ns.slot(face, 2));  // c_in ~ c_out
  for (const auto& [m, f] : s.marks())
    if (m != consumed_mark) ns.add_mark(m, f);
  for (const auto& [label, sl] : s.boundary_labels())
    ns.add_boundary_label(label, slot_map[sl]);
  int hole_slot = ns.slot(face, 1);
  ns.add_boundary_label(hole_label, hole_slot);
  ns.check_valid();

  Drawing out = rebuild_remapped(d, std::move(ns), slot_map);

  // Reroute stubs: ascending far position q_1 < ... < q_r maps to descending
  // positions on h (the hole is walked clockwise as seen from the face).
  std::sort(stubs.begin(), stubs.end(),
            [](const StubRef& a, const StubRef& b) { return a.far < b.far; });
  int r = static_cast<int>(stubs.size());
  for (int j = 0; j < r; ++j) {
    // h is a boundary edge; fill positions r-1-j going 0,1,... i.e. insert
    // each new point at the front so earlier stubs end up later on h.
    int np = out.insert_point_on_slot(hole_slot, 0);
    Curve& c = out.curve_mutable(stubs[j].curve);
    End& e = stubs[j].end_b ? c.chords[stubs[j].chord].b : c.chords[stubs[j].chord].a;
    e = End::at_point(np, hole_slot);
  }
  return out;
}

}  // namespace detail

// Remove an open disk around marked point `mark`.  Preconditions beyond the
// mark existing: the containing face holds no other mark, and every chord in
// it is incident to the mark with its far end on an edge (the marked-face
// invariant); the mark's face is otherwise arbitrary.
inline Drawing delete_marked_disk(const Drawing& d, const std::string& mark) {
  const CombSurface& s = d.surface();
  int face = s.mark_face(mark);  // throws UnknownMark
  for (const auto& [m, f] : s.marks())
    if (f == face && m != mark)
      throw unsupported("two marks share a face: " + m + ", " + mark);
  std::vector<detail::StubRef> stubs;
  for (int ci = 0; ci < d.num_curves(); ++ci) {
    const Curve& c = d.curve(ci);
    for (size_t k = 0; k < c.chords.size(); ++k) {
      const Chord& ch = c.chords[k];
      if (ch.face != face) continue;
      bool a_at = ch.a.at_mark, b_at = ch.b.at_mark;
      if (a_at && b_at)
        throw unsupported("chord with both ends at marks; subdivide the arc first");
      if (!a_at && !b_at)
        throw unsupported("marked face contains a chord not incident to the mark");
      detail::StubRef ref;
      ref.curve = ci;
      ref.chord = static_cast<int>(k);
      ref.end_b = b_at;
      const End& far = b_at ? ch.a : ch.b;
      ref.far = d.end_pos(far);
      stubs.push_back(ref);
    }
  }
  return detail::delete_disk_in_face(d, face, mark, std::move(stubs), mark);
}

// Remove an open disk next to the base corner of `face`, away from every
// chord.  The new boundary circle gets `hole_label`.
inline Drawing delete_disk_at_corner(const Drawing& d, int face,
                                     const std::string& hole_label) {
  for (const auto& [m, f] : d.surface().marks())
    if (f == face)
      throw unsupported("corner disk deletion in a marked face");
  return detail::delete_disk_in_face(d, face, hole_label, {}, "");
}

// Split a boundary slot at `cuts` (each cut c in 0..#points means "between
// point c-1 and point c" along the slot direction).  The slot is replaced by
// cuts.size()+1 boundary slots; strand points keep their ids.
inline Drawing split_boundary_slot(const Drawing& d, int slot, std::vector<int> cuts) {
  const CombSurface& s = d.surface();
  if (!s.is_boundary(slot)) throw pipeline_error("splitting a non-boundary slot");
  auto pts = d.points_on_slot(slot);
  int npts = static_cast<int>(pts.size());
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (int c : cuts)
    if (c < 0 || c > npts) throw pipeline_error("slot split position out of range");
  int extra = static_cast<int>(cuts.size());
  if (extra == 0) return d;

  int face = s.slot_face(slot);
  int local = s.slot_local(slot);
  CombSurface ns;
  std::vector<int> slot_map(s.num_slots(), -1);
  for (int f = 0; f < s.num_faces(); ++f) {
    ns.add_face(s.face(f).name, s.face(f).nslots + (f == face ? extra : 0));
    for (int i = 0; i < s.face(f).nslots; ++i) {
      int shift = (f == face && i > local) ? extra : 0;
      slot_map[s.slot(f, i)] = ns.slot(f, i + shift);
    }
  }
  for (int sl = 0; sl < s.num_slots(); ++sl) {
    int p = s.pair_of(sl);
    if (p > sl) ns.glue(slot_map[sl], slot_map[p]);
  }
  for (const auto& [m, f] : s.marks()) ns.add_mark(m, f);
  for (const auto& [label, sl] : s.boundary_labels())
    ns.add_boundary_label(label, slot_map[sl]);
  ns.check_valid();

  // Rebuild, then redistribute the split edge's points over the pieces.
  Drawing out = detail::rebuild_remapped(d, std::move(ns), slot_map);
  // segment j covers point indexes [seg_lo[j], seg_hi[j])
  std::vector<int> bounds;
  bounds.push_back(0);
  for (int c : cuts) bounds.push_back(c);
  bounds.push_back(npts);
  const CombSurface& nsurf = out.surface();
  // Clear the original (remapped) table and write per-piece tables.
  out.set_edge_table(nsurf.edge_rep(slot_map[slot]), {});
  std::map<int, int> new_slot_of_point;
  for (int j = 0; j + 1 < static_cast<int>(bounds.size()); ++j) {
    int piece = nsurf.slot(face, local + j);
    std::vector<int> seg(pts.begin() + bounds[j], pts.begin() + bounds[j + 1]);
    for (int id : seg) new_slot_of_point[id] = piece;
    out.set_edge_table(piece, std::move(seg));  // boundary slot: rep = itself
  }
  // Point ends that referenced the old slot move to their piece.
  for (int ci = 0; ci < out.num_curves(); ++ci) {
    Curve& c = out.curve_mutable(ci);
    for (Chord& ch : c.chords)
      for (End* e : {&ch.a, &ch.b})
        if (!e->at_mark && e->slot == slot_map[slot])
          e->slot = new_slot_of_point.at(e->point);
  }
  return out;
}

// Subdivide the interior edge through `slot` at strand index `at` (0..n for
// an edge carrying n strand points, counted along the slot's own direction).
// The edge becomes two edges meeting at a new vertex; both incident faces
// gain one slot.  Points with index < at stay on the first half.  A pure
// recellulation: the surface, its curves and all invariants are unchanged.
inline Drawing subdivide_edge(const Drawing& d, int slot, int at) {
  const CombSurface& s = d.surface();
  if (s.is_boundary(slot))
    throw validation_error("subdividing a boundary edge (split the slot instead)");
  int t = s.pair_of(slot);
  auto pts = d.points_on_slot(slot);  // in slot direction
  int n = static_cast<int>(pts.size());
  if (at < 0 || at > n) throw pipeline_error("edge subdivision position out of range");

  // New complex: each face keeps its slots in order, with one extra slot
  // inserted right after every side of the split edge it contains.
  CombSurface ns;
  std::vector<int> slot_map(s.num_slots(), -1);  // old slot -> its first piece
  int sA = -1, sB = -1, tA = -1, tB = -1;
  for (int f = 0; f < s.num_faces(); ++f) {
    int extra = 0;
    for (int i = 0; i < s.face(f).nslots; ++i)
      if (s.slot(f, i) == slot || s.slot(f, i) == t) ++extra;
    ns.add_face(s.face(f).name, s.face(f).nslots + extra);
    int shift = 0;
    for (int i = 0; i < s.face(f).nslots; ++i) {
      int old = s.slot(f, i);
      slot_map[old] = ns.slot(f, i + shift);
      if (old == slot) {
        sA = ns.slot(f, i + shift);
        sB = ns.slot(f, i + shift + 1);
        ++shift;
      } else if (old == t) {
        tA = ns.slot(f, i + shift);
        tB = ns.slot(f, i + shift + 1);
        ++shift;
      }
    }
  }
  for (int sl = 0; sl < s.num_slots(); ++sl) {
    int p = s.pair_of(sl);
    if (p > sl && sl != slot && sl != t) ns.glue(slot_map[sl], slot_map[p]);
  }
  // Walking the split edge along `slot` covers sA then sB; the paired side
  // walks it backwards, so the far side's first piece matches our second.
  ns.glue(sA, tB);
  ns.glue(sB, tA);
  for (const auto& [m, f] : s.marks()) ns.add_mark(m, f);
  for (const auto& [label, sl] : s.boundary_labels())
    ns.add_boundary_label(label, slot_map[sl]);
  ns.check_valid();

  Drawing out(std::move(ns));
  out.reserve_points(d.peek_next_point());
  const CombSurface& nsurf = out.surface();
  for (const auto& [rep, pts_rep] : d.edge_tables()) {
    if (rep == s.edge_rep(slot)) continue;  // handled below
    int cand = slot_map[rep];
    int nrep = nsurf.edge_rep(cand);
    std::vector<int> v = pts_rep;
    if (nrep != cand) std::reverse(v.begin(), v.end());
    out.set_edge_table(nrep, std::move(v));
  }
  auto write_half = [&](int piece, std::vector<int> half) {
    if (half.empty()) return;
    int rep = nsurf.edge_rep(piece);
    if (rep != piece) std::reverse(half.begin(), half.end());
    out.set_edge_table(rep, std::move(half));
  };
  write_half(sA, {pts.begin(), pts.begin() + at});
  write_half(sB, {pts.begin() + at, pts.end()});

  // Point index -> piece, seen from either side of the old edge.
  std::map<int, bool> on_first;  // point id -> lies on the first (sA/tB) half
  for (int i = 0; i < n; ++i) on_first[pts[i]] = i < at;
  for (const Curve& c : d.curves()) {
    Curve nc = c;
    for (Chord& ch : nc.chords) {
      // Face indexes are unchanged: faces keep their order, only slot
      // numbering inside the two incident faces shifts.
      for (End* e : {&ch.a, &ch.b}) {
        if (e->at_mark) continue;
        if (e->slot == slot)
          e->slot = on_first.at(e->point) ? sA : sB;
        else if (e->slot == t)
          e->slot = on_first.at(e->point) ? tB : tA;
        else
          e->slot = slot_map[e->slot];
      }
    }
    out.add_curve(std::move(nc));
  }
  if (out.surface().euler_characteristic() != s.euler_characteristic())
    throw pipeline_error("edge subdivision changed the euler characteristic");
  out.check_integrity();
  return out;
}

// Apply `steps` random interior-edge subdivisions with a seeded generator.
// Deterministic for a fixed input and seed; used to exercise invariance of
// every computation under recellulation.
inline Drawing random_recellulation(const Drawing& d, int steps, unsigned seed) {
  std::mt19937 rng(seed);
  Drawing out = d;
  for (int it = 0; it < steps; ++it) {
    const CombSurface& s = out.surface();
    std::vector<int> interior;
    for (int sl = 0; sl < s.num_slots(); ++sl)
      if (!s.is_boundary(sl) && s.pair_of(sl) > sl) interior.push_back(sl);
    if (interior.empty()) break;
    int slot = interior[rng() % interior.size()];
    int n = out.num_points_on_edge(slot);
    int at = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
    out = subdivide_edge(out, slot, at);
  }
  return out;
}

// Attach a band: a new square face `band_name` with sides (b0,b1,b2,b3),
// b0 glued to foot1 and b2 glued to foot2 (whole boundary slots); b1, b3
// become boundary.  Only the orientation-preserving gluing exists in this
// representation.
inline Drawing attach_band(const Drawing& d, int foot1, int foot2,
                           const std::string& band_name,
                           BandOrientation orient = BandOrientation::Preserve) {
  if (orient == BandOrientation::Reverse)
    throw non_orientable_result("orientation-reversing band requested");
  if (foot1 == foot2) throw validation_error("overlapping band feet");
  const CombSurface& s = d.surface();
  if (!s.is_boundary(foot1) || !s.is_boundary(foot2))
    throw validation_error("band feet must be boundary slots");
  Drawing out = d;  // slot ids are stable: we only append a face
  CombSurface& ns = out.surface_mutable();
  int bf = ns.add_face(band_name, 4);
  ns.glue(ns.slot(bf, 0), foot1);
  ns.glue(ns.slot(bf, 2), foot2);
  ns.check_valid();
  return out;
}

// --- cutting ---

struct CutOptions {
  bool cut = true;              // false: only refine the cellulation
  bool drop_crossing = false;   // drop curves meeting the system (else error)
};

struct CutResult {
  Drawing drawing;
  // For each cut curve ("family/name"): one slot on each of its two scar
  // circles (left = the side along the curve's own chord direction).
  std::map<std::string, std::pair<int, int>> scar_slots;
};

inline CutResult cut_along_system(const Drawing& input, std::vector<int> cut_idx,
                                  const CutOptions& opt = {}) {
  Drawing d = input;
  std::sort(cut_idx.begin(), cut_idx.end());
  // Validate the system.
  for (int i : cut_idx) {
    const Curve& c = d.curve(i);
    if (!c.closed) throw validation_error("cut system member is not closed: " + c.name);
    d.check_curve(c);
    if (!d.is_embedded(c)) throw validation_error("cut curve not simple: " + c.name);
  }
  for (size_t i = 0; i < cut_idx.size(); ++i)
    for (size_t j = i + 1; j < cut_idx.size(); ++j)
      if (d.geometric_crossings(d.curve(cut_idx[i]), d.curve(cut_idx[j])) > 0)
        throw validation_error("cut curves not disjoint: " +
                               d.curve(cut_idx[i]).name + " / " +
                               d.curve(cut_idx[j]).name);
  // Carried curves must be disjoint from the system.
  std::vector<int> dropped;
  for (int ci = 0; ci < d.num_curves(); ++ci) {
    if (std::binary_search(cut_idx.begin(), cut_idx.end(), ci)) continue;
    for (int i : cut_idx)
      if (d.geometric_crossings(d.curve(ci), d.curve(i)) > 0) {
        if (!opt.drop_crossing)
          throw validation_error("curve crosses the cut system: " + d.curve(ci).name);
        dropped.push_back(ci);
        break;
      }
  }
  if (!dropped.empty()) {
    // Removing curves shifts indices; recompute cut indices by identity.
    std::vector<std::pair<std::string, std::string>> keys;
    for (int i : cut_idx) keys.push_back({d.curve(i).family, d.curve(i).name});
    d.remove_curves(dropped);
    cut_idx.clear();
    for (auto& [fam, name] : keys) cut_idx.push_back(*d.find_curve(fam, name));
    std::sort(cut_idx.begin(), cut_idx.end());
  }

  const CombSurface& s = d.surface();
  std::set<int> cut_set(cut_idx.begin(), cut_idx.end());

  // Marked faces must not be touched by the system (a mark has no position
  // relative to a crossing chord).
  for (const auto& [m, f] : s.marks())
    for (int i : cut_idx)
      for (const Chord& ch : d.curve(i).chords)
        if (ch.face == f)
          throw unsupported("cut system enters the marked face of " + m);

  // Cut points per slot, ascending along the slot direction.
  std::map<int, std::vector<int>> cut_pts_on_slot;  // slot -> point ids in slot order
  for (int i : cut_idx)
    for (const Chord& ch : d.curve(i).chords)
      for (const End* e : {&ch.a, &ch.b})
        if (s.is_boundary(e->slot))
          throw validation_error("closed cut curve touches the boundary");
  for (int sl = 0; sl < s.num_slots(); ++sl) {
    auto pts = d.points_on_slot(sl);
    std::vector<int> cuts;
    for (int id : pts) {
      // Is id an end of a cut chord?  Strand points belong to one curve only.
      bool is_cut = false;
      for (int i : cut_idx) {
        for (const Chord& ch : d.curve(i).chords) {
          if ((!ch.a.at_mark && ch.a.point == id) ||
              (!ch.b.at_mark && ch.b.point == id)) {
            is_cut = true;
            break;
          }
        }
        if (is_cut) break;
      }
      if (is_cut) cuts.push_back(id);
    }
    if (!cuts.empty()) cut_pts_on_slot[sl] = std::move(cuts);
  }

  // Sub-slot bookkeeping: slot sl with k cut points splits into k+1 pieces.
  auto pieces_of = [&](int sl) {
    auto it = cut_pts_on_slot.find(sl);
    return it == cut_pts_on_slot.end() ? 1 : static_cast<int>(it->second.size()) + 1;
  };
  // cut point id -> its rank on this slot (0-based along slot direction)
  auto rank_on_slot = [&](int sl, int id) {
    const auto& v = cut_pts_on_slot.at(sl);
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] == id) return static_cast<int>(i);
    throw pipeline_error("cut point rank lookup failed");
  };

  // --- per-face cell tracing ---
  // End records around each face, sorted by boundary position.
  struct CutEnd {
    FacePos pos;
    int curve = -1, chord = -1;
    bool end_b = false;
    int slot = -1, point = -1;
  };
  struct CellElement {
    // either a boundary run (from ends[i] to ends[i+1]) or a directed chord
    bool is_run = true;
    int run_from = -1;                 // index into ends
    int curve = -1, chord = -1;        // directed chord
    bool forward = true;               // a->b or b->a
  };
  struct FaceCells {
    std::vector<CutEnd> ends;
    // cells as element sequences; traversal order defines the new face
    std::vector<std::vector<CellElement>> cells;
  };

  std::vector<FaceCells> per_face(s.num_faces());
  for (int i : cut_idx) {
    const Curve& c = d.curve(i);
    for (size_t k = 0; k < c.chords.size(); ++k) {
      const Chord& ch = c.chords[k];
      for (bool end_b : {false, true}) {
        const End& e = end_b ? ch.b : ch.a;
        CutEnd ce;
        ce.pos = d.end_pos(e);
        ce.curve = i;
        ce.chord = static_cast<int>(k);
        ce.end_b = end_b;
        ce.slot = e.slot;
        ce.point = e.point;
        per_face[ch.face].ends.push_back(ce);
      }
    }
  }
  for (int f = 0; f < s.num_faces(); ++f) {
    auto& fc = per_face[f];
    std::sort(fc.ends.begin(), fc.ends.end(),
              [](const CutEnd& a, const CutEnd& b) { return a.pos < b.pos; });
    int r = static_cast<int>(fc.ends.size());
    if (r == 0) {
      fc.cells.push_back({CellElement{}});  // whole face; run_from = -1
      continue;
    }
    // element table: runs 0..r-1 (run i starts at ends[i]), directed chords
    auto end_index_at = [&](int curve, int chord, bool end_b) {
      for (int i2 = 0; i2 < r; ++i2)
        if (fc.ends[i2].curve == curve && fc.ends[i2].chord == chord &&
            fc.ends[i2].end_b == end_b)
          return i2;
      throw pipeline_error("cut end lookup failed");
    };
    std::vector<bool> run_seen(r, false);
    std::map<std::pair<std::pair<int, int>, bool>, bool> chord_seen;
    auto trace_from_run = [&](int start_run, std::vector<CellElement>* cell) {
      int run = start_run;
      for (;;) {
        cell->push_back(CellElement{true, run, -1, -1, true});
        run_seen[run] = true;
        // run ends at ends[(run+1)%r]; continue along that end's chord,
        // directed away from it
        const CutEnd& e = fc.ends[(run + 1) % r];
        bool forward = !e.end_b;  // leaving via .a means traversing a->b
        cell->push_back(CellElement{false, -1, e.curve, e.chord, forward});
        chord_seen[{{e.curve, e.chord}, forward}] = true;
        // chord arrives at its other end; next run starts there
        int far_idx = end_index_at(e.curve, e.chord, !e.end_b);
        if (far_idx == start_run) break;  // closed up
        run = far_idx;
        if (run_seen[run]) throw pipeline_error("cell tracing revisited a run");
      }
    };
    for (int i2 = 0; i2 < r; ++i2) {
      if (run_seen[i2]) continue;
      std::vector<CellElement> cell;
      trace_from_run(i2, &cell);
      fc.cells.push_back(std::move(cell));
    }
    // sanity: every directed chord of this face used exactly once
    int used = 0;
    for (auto& [k, v] : chord_seen) used += v ? 1 : 0;
    if (used != r) throw pipeline_error("cell tracing missed chord sides");
  }

  // --- assemble the new surface ---
  CombSurface ns;
  // sub-slot (slot, piece) -> new global slot
  std::map<std::pair<int, int>, int> sub_slot_map;
  // directed chord (curve, chord, forward) -> new global slot
  std::map<std::pair<std::pair<int, int>, bool>, int> chord_slot_map;
  // original face -> (cell -> new face index)
  std::vector<std::vector<int>> cell_face(s.num_faces());

  std::set<std::string> used_names;
  for (int f = 0; f < s.num_faces(); ++f) used_names.insert(s.face(f).name);

  for (int f = 0; f < s.num_faces(); ++f) {
    const auto& fc = per_face[f];
    for (size_t cidx = 0; cidx < fc.cells.size(); ++cidx) {
      const auto& cell = fc.cells[cidx];
      // Slot layout of this cell, in traversal order.
      struct NewSlot {
        bool from_chord;
        int slot, piece;  // sub-slot
        int curve, chord;
        bool forward;
      };
      std::vector<NewSlot> layout;
      if (fc.ends.empty()) {
        // whole face: all sub-slots of every original slot, in order
        for (int i2 = 0; i2 < s.face(f).nslots; ++i2) {
          int sl = s.slot(f, i2);
          for (int p = 0; p < pieces_of(sl); ++p)
            layout.push_back({false, sl, p, -1, -1, true});
        }
      } else {
        int r = static_cast<int>(fc.ends.size());
        for (const CellElement& el : cell) {
          if (!el.is_run) {
            layout.push_back({true, -1, -1, el.curve, el.chord, el.forward});
            continue;
          }
          const CutEnd& from = fc.ends[el.run_from];
          const CutEnd& to = fc.ends[(el.run_from + 1) % r];
          // from cut point (slot s_f, rank q_f) to (slot s_t, rank q_t):
          // pieces (s_f, q_f+1 .. last), full slots between, (s_t, 0 .. q_t)
          int sf = from.slot, st = to.slot;
          int qf = rank_on_slot(sf, from.point);
          int qt = rank_on_slot(st, to.point);
          if (sf == st && qf < qt) {
            for (int p = qf + 1; p <= qt; ++p) layout.push_back({false, sf, p, -1, -1, true});
            continue;
          }
          for (int p = qf + 1; p < pieces_of(sf); ++p)
            layout.push_back({false, sf, p, -1, -1, true});
          int sl = s.next_in_face(sf);
          while (sl != st) {
            for (int p = 0; p < pieces_of(sl); ++p)
              layout.push_back({false, sl, p, -1, -1, true});
            sl = s.next_in_face(sl);
          }
          for (int p = 0; p <= qt; ++p) layout.push_back({false, st, p, -1, -1, true});
        }
      }
      // name: keep the original for single whole cells, else suffix
      std::string name = s.face(f).name;
      if (!(fc.cells.size() == 1 && fc.ends.empty())) {
        name += "." + std::to_string(cidx);
        while (used_names.count(name)) name += "x";
      }
      used_names.insert(name);
      int nf = ns.add_face(name, static_cast<int>(layout.size()));
      cell_face[f].push_back(nf);
      for (size_t li = 0; li < layout.size(); ++li) {
        const NewSlot& nsl = layout[li];
        int g = ns.slot(nf, static_cast<int>(li));
        if (nsl.from_chord)
          chord_slot_map[{{nsl.curve, nsl.chord}, nsl.forward}] = g;
        else
          sub_slot_map[{nsl.slot, nsl.piece}] = g;
      }
    }
  }

  // Pairings: sub-slots follow original pairings reversed piecewise; chord
  // sides pair only in refine mode.
  for (int sl = 0; sl < s.num_slots(); ++sl) {
    int p = s.pair_of(sl);
    if (p < sl) continue;  // boundary (-1) or already done
    int k = pieces_of(sl);
    if (pieces_of(p) != k) throw pipeline_error("cut points disagree across an edge");
    for (int j = 0; j < k; ++j)
      ns.glue(sub_slot_map.at({sl, j}), sub_slot_map.at({p, k - 1 - j}));
  }
  CutResult result;
  std::map<std::string, std::pair<int, int>> scars;
  for (int i : cut_idx) {
    const Curve& c = d.curve(i);
    int left = chord_slot_map.at({{i, 0}, true});
    int right = chord_slot_map.at({{i, 0}, false});
    scars[c.family + "/" + c.name] = {left, right};
    if (!opt.cut) {
      for (size_t k = 0; k < c.chords.size(); ++k)
        ns.glue(chord_slot_map.at({{i, static_cast<int>(k)}, true}),
                chord_slot_map.at({{i, static_cast<int>(k)}, false}));
    }
  }

  // Marks: marked faces are untouched single cells.
  for (const auto& [m, f] : s.marks()) ns.add_mark(m, cell_face[f][0]);
  // Boundary labels: boundary slots are never subdivided by a cut (closed
  // curves avoid the boundary), but refine keeps everything interior anyway.
  for (const auto& [label, sl] : s.boundary_labels())
    ns.add_boundary_label(label, sub_slot_map.at({sl, 0}));
  ns.check_valid();

  // --- carry curves and edge tables ---
  Drawing out(std::move(ns));
  out.reserve_points(d.peek_next_point());
  const CombSurface& nsurf = out.surface();
  // Edge tables: per sub-slot, the surviving (non-cut) points.
  std::set<int> cut_point_ids;
  for (auto& [sl, ids] : cut_pts_on_slot) cut_point_ids.insert(ids.begin(), ids.end());
  // point id -> its sub-slot on each side
  std::map<std::pair<int, int>, int> side_sub_slot;  // (old slot, id) -> new slot
  for (int sl = 0; sl < s.num_slots(); ++sl) {
    auto pts = d.points_on_slot(sl);
    if (pts.empty()) continue;
    auto cuts_it = cut_pts_on_slot.find(sl);
    const std::vector<int>* cuts = cuts_it == cut_pts_on_slot.end() ? nullptr : &cuts_it->second;
    int piece = 0;
    std::vector<std::vector<int>> seg(pieces_of(sl));
    for (int id : pts) {
      if (cut_point_ids.count(id) && cuts) {
        // advance piece when passing a cut point of this slot
        piece = rank_on_slot(sl, id) + 1;
        continue;
      }
      seg[piece].push_back(id);
      side_sub_slot[{sl, id}] = sub_slot_map.at({sl, piece});
    }
    // write tables once per edge, from the representative side
    for (int j = 0; j < pieces_of(sl); ++j) {
      int g = sub_slot_map.at({sl, j});
      int rep = nsurf.edge_rep(g);
      if (rep == g && !seg[j].empty()) out.set_edge_table(rep, seg[j]);
    }
  }
  for (int ci = 0; ci < d.num_curves(); ++ci) {
    if (cut_set.count(ci)) continue;
    Curve nc = d.curve(ci);
    for (Chord& ch : nc.chords) {
      int cell = -1;
      for (End* e : {&ch.a, &ch.b}) {
        if (e->at_mark) continue;
        int g = side_sub_slot.at({e->slot, e->point});
        int cf = nsurf.slot_face(g);
        if (cell == -1) cell = cf;
        else if (cell != cf) throw pipeline_error("carried chord straddles cells");
        e->slot = g;
      }
      if (cell == -1) throw pipeline_error("carried chord with two mark ends");
      ch.face = cell;
    }
    out.add_curve(std::move(nc));
  }

  if (out.surface().euler_characteristic() != s.euler_characteristic())
    throw pipeline_error("cutting changed the euler characteristic");
  out.check_integrity();
  result.drawing = std::move(out);
  result.scar_slots = std::move(scars);
  return result;
}

// Glue a disk face onto the boundary circle through `slot`.
inline Drawing cap_boundary_circle(const Drawing& d, int slot,
                                   const std::string& cap_name) {
  const CombSurface& s = d.surface();
  if (!s.is_boundary(slot)) throw pipeline_error("capping a non-boundary slot");
  for (const auto& circle : s.boundary_circles()) {
    if (std::find(circle.begin(), circle.end(), slot) == circle.end()) continue;
    for (int t : circle)
      if (d.num_points_on_edge(t) > 0)
        throw unsupported("capping a circle met by arc endpoints");
    Drawing out = d;
    CombSurface& ns = out.surface_mutable();
    int m = static_cast<int>(circle.size());
    int cf = ns.add_face(cap_name, m);
    for (int i = 0; i < m; ++i) ns.glue(ns.slot(cf, i), circle[m - 1 - i]);
    ns.check_valid();
    return out;
  }
  throw pipeline_error("slot not found on any boundary circle");
}

// Boundary-connected sum: removes a corner disk in face1 of d1 and face2 of
// d2 and glues the two new circles.  Face names and curve (family,name) pairs
// must be disjoint across the inputs.
inline Drawing connect_sum(const Drawing& d1, int face1, const Drawing& d2, int face2) {
  const CombSurface& s1 = d1.surface();
  const CombSurface& s2 = d2.surface();
  for (int f = 0; f < s2.num_faces(); ++f)
    if (s1.has_face(s2.face(f).name))
      throw pipeline_error("connect_sum with clashing face name: " + s2.face(f).name);
  // merged complex: faces of d1 then faces of d2
  CombSurface ms;
  for (int f = 0; f < s1.num_faces(); ++f) ms.add_face(s1.face(f).name, s1.face(f).nslots);
  int off_faces = s1.num_faces();
  int off_slots = s1.num_slots();
  for (int f = 0; f < s2.num_faces(); ++f) ms.add_face(s2.face(f).name, s2.face(f).nslots);
  for (int sl = 0; sl < s1.num_slots(); ++sl)
    if (s1.pair_of(sl) > sl) ms.glue(sl, s1.pair_of(sl));
  for (int sl = 0; sl < s2.num_slots(); ++sl)
    if (s2.pair_of(sl) > sl) ms.glue(off_slots + sl, off_slots + s2.pair_of(sl));
  for (const auto& [m, f] : s1.marks()) ms.add_mark(m, f);
  for (const auto& [m, f] : s2.marks()) {
    if (s1.marks().count(m)) throw pipeline_error("connect_sum with clashing mark: " + m);
    ms.add_mark(m, off_faces + f);
  }
  for (const auto& [label, sl] : s1.boundary_labels()) ms.add_boundary_label(label, sl);
  for (const auto& [label, sl] : s2.boundary_labels()) {
    if (s1.boundary_labels().count(label))
      throw pipeline_error("connect_sum with clashing boundary label: " + label);
    ms.add_boundary_label(label, off_slots + sl);
  }
  Drawing merged(std::move(ms));
  merged.reserve_points(d1.peek_next_point() + d2.peek_next_point());
  for (const auto& [rep, pts] : d1.edge_tables()) merged.set_edge_table(rep, pts);
  int poff = d1.peek_next_point();
  for (const auto& [rep, pts] : d2.edge_tables()) {
    std::vector<int> v = pts;
    for (int& id : v) id += poff;
    merged.set_edge_table(off_slots + rep, std::move(v));
  }
  for (const Curve& c : d1.curves()) merged.add_curve(c);
  for (const Curve& c : d2.curves()) {
    if (merged.find_curve(c.family, c.name))
      throw pipeline_error("connect_sum with clashing curve name: " + c.name);
    Curve nc = c;
    for (Chord& ch : nc.chords) {
      ch.face += off_faces;
      for (End* e : {&ch.a, &ch.b})
        if (!e->at_mark) {
          e->point += poff;
          e->slot += off_slots;
        }
    }
    merged.add_curve(std::move(nc));
  }
  merged.surface_mutable().check_valid();

  // Cut the two corner disks and glue the resulting one-edge circles.
  Drawing step = delete_disk_at_corner(merged, face1, "cs.l");
  step = delete_disk_at_corner(step, off_faces + face2, "cs.r");
  const CombSurface& ss = step.surface();
  int h1 = ss.boundary_labels().at("cs.l");
  int h2 = ss.boundary_labels().at("cs.r");
  Drawing out = step;
  out.surface_mutable().glue(h1, h2);
  // the temporary labels named circles that no longer exist; rebuild without them
  {
    const CombSurface& cur = out.surface();
    CombSurface clean;
    for (int f = 0; f < cur.num_faces(); ++f)
      clean.add_face(cur.face(f).name, cur.face(f).nslots);
    for (int sl = 0; sl < cur.num_slots(); ++sl)
      if (cur.pair_of(sl) > sl) clean.glue(sl, cur.pair_of(sl));
    for (const auto& [m, f] : cur.marks()) clean.add_mark(m, f);
    for (const auto& [label, sl] : cur.boundary_labels())
      if (label != "cs.l" && label != "cs.r") clean.add_boundary_label(label, sl);
    clean.check_valid();
    Drawing res(std::move(clean));
    res.reserve_points(out.peek_next_point());
    for (const auto& [rep, pts] : out.edge_tables()) res.set_edge_table(rep, pts);
    for (const Curve& c : out.curves()) res.add_curve(c);
    out = std::move(res);
  }
  out.check_integrity();
  return out;
}

// Identify two boundary circles of one drawing.  `slot_a` and `slot_b` name
// the circles; the walk starting at slot_a is glued to the walk starting at
// slot_b traversed backwards, so slot_a pairs with slot_b, the successor of
// slot_a with the predecessor of slot_b, and so on.  Circles must have equal
// length; matched edges must carry equal strand counts, and the strand
// endpoints are merged (arcs continue across the seam; curves whose ends meet
// are fused, and closed up when both ends join).
inline Drawing glue_boundary_circles(const Drawing& d, int slot_a, int slot_b) {
  const CombSurface& s = d.surface();
  auto circles = s.boundary_circles();
  std::vector<int> ca, cb;
  for (auto& c : circles) {
    if (std::find(c.begin(), c.end(), slot_a) != c.end()) ca = c;
    if (std::find(c.begin(), c.end(), slot_b) != c.end()) cb = c;
  }
  if (ca.empty() || cb.empty()) throw pipeline_error("gluing slot not on a boundary circle");
  if (ca == cb) throw unsupported("gluing a boundary circle to itself");
  if (ca.size() != cb.size())
    throw validation_error("boundary circles of different lengths (subdivide first)");
  // rotate so the walks start at the chosen slots
  auto rot = [](std::vector<int> v, int start) {
    auto it = std::find(v.begin(), v.end(), start);
    std::rotate(v.begin(), it, v.end());
    return v;
  };
  ca = rot(ca, slot_a);
  cb = rot(cb, slot_b);
  int m = static_cast<int>(ca.size());

  Drawing out = d;
  // The seam reverses orientation: A[0]~B[0], A[1]~B[m-1], A[2]~B[m-2], ...
  // Matched edges carry the same strands; merge ids (B side renamed to A's)
  // reading the B side backwards.
  std::map<int, int> rename;  // point id on B side -> id on A side
  std::vector<std::pair<int, std::vector<int>>> final_tables;
  for (int i = 0; i < m; ++i) {
    int ea = ca[i];
    int eb = cb[(m - i) % m];
    auto pa = out.points_on_slot(ea);
    auto pb = out.points_on_slot(eb);
    if (pa.size() != pb.size())
      throw validation_error("strand counts differ across the seam");
    int k = static_cast<int>(pa.size());
    for (int j = 0; j < k; ++j) rename[pb[j]] = pa[k - 1 - j];
    // target table for the fused edge, keyed by whichever side is lower
    if (!pa.empty()) {
      if (ea < eb) final_tables.push_back({ea, pa});
      else {
        std::reverse(pa.begin(), pa.end());
        final_tables.push_back({eb, std::move(pa)});
      }
    }
    out.set_edge_table(ea, {});
    out.set_edge_table(eb, {});
  }
  for (int ci = 0; ci < out.num_curves(); ++ci) {
    Curve& c = out.curve_mutable(ci);
    for (Chord& ch : c.chords)
      for (End* e : {&ch.a, &ch.b})
        if (!e->at_mark) {
          auto it = rename.find(e->point);
          if (it != rename.end()) e->point = it->second;
        }
  }
  CombSurface& ns = out.surface_mutable();
  for (int i = 0; i < m; ++i) ns.glue(ca[i], cb[(m - i) % m]);
  ns.check_valid();
  for (auto& [rep, pts] : final_tables) out.set_edge_table(rep, std::move(pts));

  // Fuse curves across the seam: two arc ends sharing a merged point id on
  // the two sides of a seam edge become one curve.  An arc meeting itself
  // closes up.  Repeats until stable (chains crossing the seam many times).
  auto ends_meet = [&](const End& x, const End& y) {
    return !x.at_mark && !y.at_mark && x.point == y.point &&
           out.surface().pair_of(x.slot) == y.slot;
  };
  for (;;) {
    bool fused = false;
    for (int i = 0; i < out.num_curves() && !fused; ++i) {
      if (out.curve(i).closed) continue;
      const Curve& c1 = out.curve(i);
      if (ends_meet(c1.chords.back().b, c1.chords.front().a)) {
        out.curve_mutable(i).closed = true;
        fused = true;
        break;
      }
      for (int j = 0; j < out.num_curves() && !fused; ++j) {
        if (j == i || out.curve(j).closed) continue;
        const Curve& c2 = out.curve(j);
        std::optional<Curve> merged;
        if (ends_meet(c1.chords.back().b, c2.chords.front().a)) {
          merged = c1;
          for (const Chord& ch : c2.chords) merged->chords.push_back(ch);
        } else if (ends_meet(c1.chords.back().b, c2.chords.back().b)) {
          merged = c1;
          for (const Chord& ch : Drawing::reversed(c2).chords)
            merged->chords.push_back(ch);
        } else if (ends_meet(c1.chords.front().a, c2.chords.front().a)) {
          merged = Drawing::reversed(c2);
          merged->family = c1.family;
          merged->name = c1.name;
          for (const Chord& ch : c1.chords) merged->chords.push_back(ch);
        }
        if (!merged) continue;
        // rebuild the curve list with i replaced and j dropped (remove_curve
        // would garbage-collect strand points the merged curve still uses)
        Drawing res(out.surface());
        res.reserve_points(out.peek_next_point());
        for (const auto& [rep, pts] : out.edge_tables()) res.set_edge_table(rep, pts);
        for (int k2 = 0; k2 < out.num_curves(); ++k2) {
          if (k2 == j) continue;
          if (k2 == i) res.add_curve(*merged);
          else res.add_curve(out.curve(k2));
        }
        out = std::move(res);
        fused = true;
      }
    }
    if (!fused) break;
  }
  out.check_integrity();
  return out;
}

}  // namespace trisect
