#pragma once

// Open books on the boundary of a relative trisection.
//
// A validated (g,k,p,b) diagram induces an open book on the boundary
// 3-manifold: the page is the genus-p surface with b boundary circles
// obtained by compressing the central surface along any one of the three
// cut systems, and the binding is the surface boundary.  This header
// extracts pages, names bindings, computes the monodromy of planar-page
// (p = 0) open books as a vector of boundary Dehn twist counts, and carries
// the first-homology arithmetic of the small Seifert fibered spaces that
// three-binding planar open books present.
//
// The monodromy computation transports a page arc through the three
// compression bodies in order: make it disjoint from the next family by
// sliding it over the current family (slides over the current family are
// isotopies of the arc inside the current page, because the compression
// caps that family with disks).  After a full circuit the arc returns to
// the first page as its own monodromy image; closing it against a frozen
// copy of its start position gives a loop whose homology class decomposes
// as winding numbers around the two bindings the arc joins, modulo the
// first family's curve classes.  Those winding numbers are the twist
// counts.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trisect/abelian.hpp"
#include "trisect/curve_ops.hpp"
#include "trisect/diagrams.hpp"
#include "trisect/homology.hpp"
#include "trisect/invariants.hpp"
#include "trisect/smith.hpp"
#include "trisect/surgery.hpp"

namespace trisect {

// --- binding labels ----------------------------------------------------------

// Boundary circles of the central surface in canonical order (each circle
// listed from its smallest slot, circles sorted by that slot), one display
// label each.  A circle carrying one of the structural fiber names S_0, S_1,
// S_-1 keeps it; otherwise the alphabetically first boundary label on the
// circle is used, and unlabeled circles get positional names.
struct BindingLabeling {
  std::vector<std::vector<int>> circles;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(circles.size()); }

  int index_of(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return static_cast<int>(i);
    throw unknown_name("no binding labeled " + label);
  }
};

inline BindingLabeling binding_labeling(const Drawing& d) {
  static const char* kStructural[3] = {"S_0", "S_1", "S_-1"};
  const CombSurface& s = d.surface();
  BindingLabeling out;
  out.circles = s.boundary_circles();
  int structural_used = 0;
  for (size_t i = 0; i < out.circles.size(); ++i) {
    std::set<int> on(out.circles[i].begin(), out.circles[i].end());
    std::vector<std::string> names;
    std::vector<std::string> structural;
    for (const auto& [name, sl] : s.boundary_labels()) {
      if (!on.count(sl)) continue;
      names.push_back(name);
      for (const char* sn : kStructural)
        if (name == sn) structural.push_back(name);
    }
    if (structural.size() > 1)
      throw validation_error("binding circle carries more than one of S_0, S_1, S_-1");
    std::string label;
    if (!structural.empty()) {
      label = structural.front();
      ++structural_used;
    } else if (!names.empty()) {
      label = *std::min_element(names.begin(), names.end());
    } else {
      label = "binding." + std::to_string(i);
    }
    out.labels.push_back(label);
  }
  // The structural fiber names form a full labeling of a three-binding
  // boundary or none of it.
  if (out.size() == 3 && structural_used != 0 && structural_used != 3)
    throw validation_error(
        "structural binding labels S_0, S_1, S_-1 must name all three bindings");
  return out;
}

// --- twist vectors -----------------------------------------------------------

// Boundary Dehn twist counts of a planar-page open book, one per binding in
// the canonical binding order; positive = right-handed.
struct TwistVector {
  std::vector<int> twists;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(twists.size()); }

  int twist_on(const std::string& label) const {
    for (size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) return twists[i];
    throw unknown_name("no binding labeled " + label);
  }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < size(); ++i) {
      if (i) s += ", ";
      if (twists[i] > 0) s += "+";
      s += std::to_string(twists[i]);
      s += " on " + labels[i];
    }
    return s + ")";
  }
};

// First homology of the Seifert fibered space presented by a three-binding
// planar open book twisting a, b, c times around its bindings: abelianize
//   < x1, x2, x3, h | [xi,h], x1^a h, x2^b h, x3^c h, x1 x2 x3 >.
// The order, when finite, is |ab+bc+ca|.
inline AbelianGroup seifert_h1(const TwistVector& t) {
  if (t.size() != 3)
    throw unsupported("seifert homology needs exactly three bindings (got " +
                      std::to_string(t.size()) + ")");
  return seifert_h1(Int(t.twists[0]), Int(t.twists[1]), Int(t.twists[2]));
}

// True exactly when the three twist counts are {2,2,-2} up to permutation
// and a global sign flip -- the patterns presenting the quaternion space.
inline bool check_quaternion_signature(int a, int b, int c) {
  std::array<int, 3> v{a, b, c};
  std::sort(v.begin(), v.end());
  return v == std::array<int, 3>{-2, 2, 2} || v == std::array<int, 3>{-2, -2, 2};
}

inline bool check_quaternion_signature(const TwistVector& t) {
  if (t.size() != 3)
    throw unsupported("quaternion signature needs exactly three bindings (got " +
                      std::to_string(t.size()) + ")");
  return check_quaternion_signature(t.twists[0], t.twists[1], t.twists[2]);
}

// --- page extraction ---------------------------------------------------------

// The page of the induced open book: compress the central surface along the
// chosen family (0, 1, 2), i.e. cut along its curves and cap every scar
// circle with a disk.  All three choices yield homeomorphic surfaces on a
// valid diagram.
inline CombSurface extract_page(const RelativeTrisectionDiagram& d, int which) {
  if (!d.validated)
    throw validation_error("page extraction requires a validated diagram; "
                           "run validation first");
  if (which < 0 || which > 2)
    throw pipeline_error("page family index must be 0, 1, or 2");
  Drawing stripped = detail::only_family(d.drawing, kFamilyNames[which]);
  std::vector<int> all(stripped.num_curves());
  std::iota(all.begin(), all.end(), 0);
  CutResult res = cut_along_system(stripped, all);
  Drawing page = std::move(res.drawing);
  for (const auto& [key, lr] : res.scar_slots) {
    std::string base = "cap." + key;
    std::replace(base.begin(), base.end(), '/', '.');
    page = cap_boundary_circle(page, lr.first, base + ".l");
    page = cap_boundary_circle(page, lr.second, base + ".r");
  }
  CombSurface out = page.surface();
  SurfaceClass sc = out.classify();
  if (sc.components != 1 || !sc.orientable)
    throw pipeline_error("page extraction produced a disconnected or "
                         "non-orientable surface");
  return out;
}

// --- monodromy ---------------------------------------------------------------

namespace obdetail {

// Cyclic coordinates around one face: (local slot, doubled position along the
// slot).  Strand points sit at even positions 2*index; odd values address the
// gaps between them.
struct FaceCoord {
  int lslot = 0;
  int pos = 0;
};

inline bool coord_less(const FaceCoord& a, const FaceCoord& b) {
  return a.lslot != b.lslot ? a.lslot < b.lslot : a.pos < b.pos;
}

// Is m strictly inside the counterclockwise open arc from a to b?
inline bool coord_between(const FaceCoord& a, const FaceCoord& m, const FaceCoord& b) {
  if (coord_less(a, b)) return coord_less(a, m) && coord_less(m, b);
  return coord_less(a, m) || coord_less(m, b);
}

// The chords of one family partition each face into regions (family curves
// are embedded and pairwise disjoint, so the chords never cross).  For every
// slot of the face, the family's strand points split it into insertion
// windows; each window lies in a single region, identified by which side of
// every family chord it falls on.
struct FaceRegions {
  std::vector<std::vector<int>> walls;          // per local slot: wall point ids
  std::vector<std::vector<int>> window_region;  // per local slot: region per window
};

inline FaceRegions face_regions(const Drawing& d, int face,
                                const std::vector<int>& wall_curves) {
  const CombSurface& s = d.surface();
  int m = s.face(face).nslots;
  std::vector<std::pair<FaceCoord, FaceCoord>> wall_chords;
  std::vector<std::set<int>> wall_pts(m);
  for (int ci : wall_curves)
    for (const Chord& ch : d.curve(ci).chords) {
      if (ch.face != face) continue;
      FaceCoord a{s.slot_local(ch.a.slot),
                  2 * d.point_index_on_slot(ch.a.slot, ch.a.point)};
      FaceCoord b{s.slot_local(ch.b.slot),
                  2 * d.point_index_on_slot(ch.b.slot, ch.b.point)};
      wall_chords.push_back({a, b});
      wall_pts[a.lslot].insert(ch.a.point);
      wall_pts[b.lslot].insert(ch.b.point);
    }
  FaceRegions out;
  out.walls.resize(m);
  out.window_region.resize(m);
  std::map<std::vector<bool>, int> region_ids;
  for (int l = 0; l < m; ++l) {
    int sl = s.slot(face, l);
    for (int pid : d.points_on_slot(sl))
      if (wall_pts[l].count(pid)) out.walls[l].push_back(pid);
    int nw = static_cast<int>(out.walls[l].size());
    for (int w = 0; w <= nw; ++w) {
      int pos;
      if (nw == 0)
        pos = -1;
      else if (w == 0)
        pos = 2 * d.point_index_on_slot(sl, out.walls[l][0]) - 1;
      else
        pos = 2 * d.point_index_on_slot(sl, out.walls[l][w - 1]) + 1;
      FaceCoord g{l, pos};
      std::vector<bool> sig;
      sig.reserve(wall_chords.size());
      for (const auto& [a, b] : wall_chords) sig.push_back(coord_between(a, g, b));
      auto it = region_ids.try_emplace(sig, static_cast<int>(region_ids.size())).first;
      out.window_region[l].push_back(it->second);
    }
  }
  return out;
}

// An embedded arc between two boundary circles, disjoint from one family of
// closed curves, found by breadth-first search over (face, region) nodes.
// Each step crosses an interior edge through one insertion window; windows
// are anchored by wall point ids so the route can be materialized after
// other insertions have shifted raw indices.
inline Curve arc_between_circles(Drawing& d, const std::vector<int>& from_circle,
                                 const std::vector<int>& to_circle,
                                 const std::string& wall_family,
                                 const std::string& family, const std::string& name) {
  const CombSurface& s = d.surface();
  std::vector<int> wall_curves = d.family_members(wall_family);
  int nf = s.num_faces();
  std::vector<FaceRegions> fr(nf);
  for (int f = 0; f < nf; ++f) fr[f] = face_regions(d, f, wall_curves);

  using Node = std::pair<int, int>;  // (face, region)
  auto node_of_slot = [&](int sl) -> Node {
    int f = s.slot_face(sl);
    return {f, fr[f].window_region[s.slot_local(sl)][0]};
  };
  std::map<Node, int> start_slot, goal_slot;
  for (int sl : from_circle) start_slot.try_emplace(node_of_slot(sl), sl);
  for (int sl : to_circle) goal_slot.try_emplace(node_of_slot(sl), sl);

  struct Step {
    Node from;
    int slot = -1;    // slot on the side of the face being left
    int window = -1;  // window index on that slot
  };
  std::map<Node, Step> parent;
  std::vector<Node> queue;
  for (const auto& [n, sl] : start_slot) {
    if (parent.count(n)) continue;
    parent[n] = Step{n, -1, -1};
    queue.push_back(n);
  }
  std::optional<Node> reached;
  for (size_t qi = 0; qi < queue.size() && !reached; ++qi) {
    Node cur = queue[qi];
    if (goal_slot.count(cur)) {
      reached = cur;
      break;
    }
    auto [f, r] = cur;
    int m = s.face(f).nslots;
    for (int l = 0; l < m; ++l) {
      int sl = s.slot(f, l);
      if (s.is_boundary(sl)) continue;
      int nw = static_cast<int>(fr[f].walls[l].size());
      for (int w = 0; w <= nw; ++w) {
        if (fr[f].window_region[l][w] != r) continue;
        int sl2 = s.pair_of(sl);
        int f2 = s.slot_face(sl2);
        int l2 = s.slot_local(sl2);
        Node nxt{f2, fr[f2].window_region[l2][nw - w]};
        if (parent.count(nxt)) continue;
        parent[nxt] = Step{cur, sl, w};
        queue.push_back(nxt);
      }
    }
  }
  if (!reached)
    throw pipeline_error("page arc search found no route between bindings");

  // Walk back to the start, collecting edge crossings.
  std::vector<Step> steps;
  Node at = *reached;
  while (true) {
    const Step& st = parent.at(at);
    if (st.slot < 0) break;
    steps.push_back(st);
    at = st.from;
  }
  std::reverse(steps.begin(), steps.end());

  // Materialize: endpoints at the free end of their boundary slots, crossing
  // points just after their window's anchor wall point.
  int sb0 = start_slot.at(at);
  int sb1 = goal_slot.at(*reached);
  int q0 = d.insert_point_on_slot(sb0, d.num_points_on_edge(sb0));
  std::vector<int> cpts;
  for (const Step& st : steps) {
    int f = s.slot_face(st.slot);
    int l = s.slot_local(st.slot);
    int idx = 0;
    if (st.window > 0) {
      int anchor = fr[f].walls[l][st.window - 1];
      idx = d.point_index_on_slot(st.slot, anchor) + 1;
    }
    cpts.push_back(d.insert_point_on_slot(st.slot, idx));
  }
  int q1 = d.insert_point_on_slot(sb1, d.num_points_on_edge(sb1));

  Curve c;
  c.family = family;
  c.name = name;
  c.closed = false;
  int r = static_cast<int>(steps.size());
  if (r == 0) {
    Chord ch;
    ch.face = s.slot_face(sb0);
    ch.a = End::at_point(q0, sb0);
    ch.b = End::at_point(q1, sb1);
    c.chords.push_back(ch);
  } else {
    Chord first;
    first.face = s.slot_face(sb0);
    first.a = End::at_point(q0, sb0);
    first.b = End::at_point(cpts[0], steps[0].slot);
    c.chords.push_back(first);
    for (int t = 0; t + 1 < r; ++t) {
      Chord mid;
      mid.face = s.slot_face(s.pair_of(steps[t].slot));
      mid.a = End::at_point(cpts[t], s.pair_of(steps[t].slot));
      mid.b = End::at_point(cpts[t + 1], steps[t + 1].slot);
      c.chords.push_back(mid);
    }
    Chord last;
    last.face = s.slot_face(sb1);
    last.a = End::at_point(cpts[r - 1], s.pair_of(steps[r - 1].slot));
    last.b = End::at_point(q1, sb1);
    c.chords.push_back(last);
  }
  d.check_curve(c);
  if (!d.is_embedded(c))
    throw pipeline_error("page arc construction produced a self-crossing arc");
  for (int ci : wall_curves)
    if (d.geometric_crossings(c, d.curve(ci)) != 0)
      throw pipeline_error("page arc construction crossed the compressed family");
  return c;
}

inline std::string describe_end(const Drawing& d, const End& e) {
  (void)d;
  return "p" + std::to_string(e.point) + "@" + std::to_string(e.slot);
}

inline std::string arc_diagnostic(const Drawing& d, int probe, const std::string& nxt) {
  std::string out = "stuck arc:\n";
  for (const Chord& ch : d.curve(probe).chords)
    out += "  face " + d.surface().face(ch.face).name + ": " +
           describe_end(d, ch.a) + " -- " + describe_end(d, ch.b) + "\n";
  for (int j : d.family_members(nxt))
    out += "  crossings with " + nxt + "/" + d.curve(j).name + ": " +
           std::to_string(d.geometric_crossings(d.curve(probe), d.curve(j))) + "\n";
  return out;
}

// One compression-body step: make the working page arc disjoint from the
// next family using isotopies and slides over the current family.  Slides
// are chosen greedily among single-chord guides from a strand point of the
// arc to a strand point of a current-family curve in a shared face,
// accepting the candidate that leaves the fewest crossings after bigon
// reduction.  A step that cannot strictly decrease the crossing count fails.
inline void transport_across(Drawing& d, int probe, const std::string& cur,
                             const std::string& nxt, std::string& log) {
  auto total = [&](Drawing& w) {
    int x = 0;
    for (int j : w.family_members(nxt))
      x += w.geometric_crossings(w.curve(probe), w.curve(j));
    return x;
  };
  auto settle = [&](Drawing& w) {
    for (bool again = true; again;) {
      again = false;
      for (int j : w.family_members(nxt))
        if (reduce_bigons(w, probe, j) > 0) again = true;
    }
  };
  settle(d);
  int x = total(d);
  int guard = 0;
  while (x > 0) {
    if (++guard > 64)
      throw transport_failed("arc transport exceeded its slide budget between " +
                             cur + " and " + nxt + "\n" +
                             arc_diagnostic(d, probe, nxt) + log);
    const CombSurface& s = d.surface();
    // Strand-point sides of the arc and of the current family, in a fixed
    // deterministic order.
    std::set<std::pair<int, int>> pe;
    for (const Chord& ch : d.curve(probe).chords) {
      pe.insert({ch.a.point, ch.a.slot});
      pe.insert({ch.b.point, ch.b.slot});
    }
    struct Cand {
      int after = 0;
      Drawing w;
      std::string desc;
    };
    std::optional<Cand> best;
    for (int cj : d.family_members(cur)) {
      std::set<std::pair<int, int>> ce;
      for (const Chord& ch : d.curve(cj).chords) {
        ce.insert({ch.a.point, ch.a.slot});
        ce.insert({ch.b.point, ch.b.slot});
      }
      for (const auto& [pp, ps] : pe)
        for (const auto& [cp, cs] : ce) {
          if (s.slot_face(ps) != s.slot_face(cs)) continue;
          Drawing w = d;
          w.curve_mutable(probe).family = cur;
          std::vector<int> fam = w.family_members(cur);
          auto pos = [&](int idx) {
            return static_cast<int>(std::find(fam.begin(), fam.end(), idx) -
                                    fam.begin());
          };
          Curve guide;
          guide.family = "slide.guide";
          guide.name = "g";
          guide.closed = false;
          Chord g;
          g.face = s.slot_face(ps);
          g.a = End::at_point(pp, ps);
          g.b = End::at_point(cp, cs);
          guide.chords.push_back(g);
          try {
            handle_slide(w, cur, pos(probe), pos(cj), guide);
          } catch (const Error&) {
            continue;
          }
          w.curve_mutable(probe).family = d.curve(probe).family;
          settle(w);
          int after = total(w);
          if (after < x && (!best || after < best->after)) {
            Cand c;
            c.after = after;
            c.w = std::move(w);
            c.desc = "over " + cur + "/" + d.curve(cj).name + " in face " +
                     s.face(g.face).name;
            best = std::move(c);
          }
        }
    }
    if (!best)
      throw transport_failed("arc transport is stuck between " + cur + " and " +
                             nxt + ": no slide reduces the crossing count\n" +
                             arc_diagnostic(d, probe, nxt) + log);
    log += "    slide " + best->desc + ": " + std::to_string(x) + " -> " +
           std::to_string(best->after) + "\n";
    d = std::move(best->w);
    x = best->after;
  }
}

inline int to_small_int(const Int& v) { return static_cast<int>(v.convert_to<long long>()); }

}  // namespace obdetail

// Twist sign convention: the raw solve coefficients at the arc's departure
// and arrival bindings are converted to right-handed twist counts by these
// two signs.  The relative sign is forced by the built-in consistency check
// (every interior binding is read by two arcs); the global sign is anchored
// once against the double-twist disk bundle over the projective plane and
// then fixed for every diagram.
inline constexpr int kTwistDepartSign = +1;
inline constexpr int kTwistArriveSign = -1;

// Boundary Dehn twist counts of the open book induced by a validated
// planar-page diagram, one entry per binding in canonical order.  The
// optional trace receives the slide-by-slide transport log.
inline TwistVector monodromy_twist_vector(const RelativeTrisectionDiagram& d,
                                          std::string* trace = nullptr) {
  if (!d.validated)
    throw validation_error("monodromy requires a validated diagram; "
                           "run validation first");
  if (d.p != 0)
    throw unsupported("monodromy computation supports only planar pages "
                      "(p = 0); this diagram has page genus " +
                      std::to_string(d.p));
  BindingLabeling bl = binding_labeling(d.drawing);
  int b = bl.size();
  if (b != d.b)
    throw pipeline_error("binding count disagrees with the validated b");
  std::string log;
  std::vector<std::optional<int>> m(b);
  // A disk page admits no twisting relative to its boundary.
  if (b == 1) m[0] = 0;
  auto put = [&](int idx, int val) {
    if (m[idx] && *m[idx] != val)
      throw transport_failed("twist readings disagree on binding " +
                             bl.labels[idx] + " (" + std::to_string(*m[idx]) +
                             " vs " + std::to_string(val) + ")\n" + log);
    m[idx] = val;
  };
  for (int t = 0; t + 1 < b; ++t) {
    log += "arc between " + bl.labels[t] + " and " + bl.labels[t + 1] + ":\n";
    Drawing w = d.drawing;
    SurfaceHomology H(w.surface());
    Curve probeC = obdetail::arc_between_circles(
        w, bl.circles[t], bl.circles[t + 1], kFamilyNames[0], "page.work", "arc");
    int probe = w.add_curve(probeC);
    Curve refC = w.parallel_copy(w.curve(probe), Push::Left, "arc.start");
    refC.family = "page.ref";
    int ref = w.add_curve(refC);
    w.check_integrity();
    for (int sct = 0; sct < 3; ++sct) {
      log += "  " + std::string(kFamilyNames[sct]) + " -> " +
             kFamilyNames[(sct + 1) % 3] + ":\n";
      obdetail::transport_across(w, probe, kFamilyNames[sct],
                                 kFamilyNames[(sct + 1) % 3], log);
    }
    // Difference loop: transported arc minus frozen copy, closed along the
    // bindings (the endpoints share boundary edges, so the chains already
    // close up).
    std::vector<Int> z(H.num_edges(), 0);
    for (const Chord& ch : w.curve(probe).chords)
      for (auto [e, sg] : H.chord_path(ch)) z[e] += sg;
    for (const Chord& ch : w.curve(ref).chords)
      for (auto [e, sg] : H.chord_path(ch)) z[e] -= sg;
    std::vector<Int> L = H.h1_class(z);
    // Solve L = x.delta_t + y.delta_{t+1} + (first-family classes).  With one
    // binding pair fixed the coefficients are unique: any two boundary
    // classes of a planar page are independent modulo the compressed family.
    std::vector<std::vector<Int>> cols;
    cols.push_back(H.h1_class(H.cycle_of_boundary(bl.circles[t])));
    int pinned = 1;
    if (b >= 3) {
      cols.push_back(H.h1_class(H.cycle_of_boundary(bl.circles[t + 1])));
      pinned = 2;
    }
    for (int ai : w.family_members(kFamilyNames[0]))
      cols.push_back(H.h1_class(H.cycle_of(w.curve(ai))));
    IMat M(static_cast<int>(L.size()), static_cast<int>(cols.size()));
    for (int c = 0; c < M.cols; ++c)
      for (int r = 0; r < M.rows; ++r) M.at(r, c) = cols[c][r];
    std::vector<Int> sol;
    if (!solve_integer(M, L, &sol))
      throw transport_failed("transported arc winding does not decompose as "
                             "boundary twists\n" + log);
    IMat K = kernel_basis(M);
    for (int c = 0; c < K.cols; ++c)
      for (int r = 0; r < pinned; ++r)
        if (K.at(r, c) != 0) throw pipeline_error("twist reading is ambiguous");
    int x = obdetail::to_small_int(sol[0]);
    log += "  raw winding: depart " + std::to_string(x);
    if (b >= 3) {
      int y = obdetail::to_small_int(sol[1]);
      log += ", arrive " + std::to_string(y) + "\n";
      put(t, kTwistDepartSign * x);
      put(t + 1, kTwistArriveSign * y);
    } else {
      // Two parallel bindings of an annulus page: only the total twist about
      // the core is an invariant; report it on the first binding.
      log += "\n";
      put(0, kTwistDepartSign * x);
      m[1] = 0;
    }
  }
  TwistVector out;
  out.labels = bl.labels;
  for (int i = 0; i < b; ++i) {
    if (!m[i]) throw pipeline_error("monodromy left a binding unread");
    out.twists.push_back(*m[i]);
  }
  if (trace) *trace = log;
  return out;
}

}  // namespace trisect
