#pragma once

// Worked diagrams, built programmatically.
//
// The builders here construct the cellulated bases and the diagrams of the
// shipped catalog; the data/catalog directory stores their frozen
// serializations.  Every builder validates what it returns.

#include <string>
#include <utility>
#include <vector>

#include "trisect/curves.hpp"
#include "trisect/diagrams.hpp"
#include "trisect/errors.hpp"

namespace trisect {
namespace builders {

// Sphere cellulated as two polar caps and k corridor squares E0..E{k-1};
// square slots are ordered (west, south, east, north).  Every face is a
// disk.  Bridge points placed in distinct corridors can be joined by arcs
// along the equator or over either cap without entering a third marked
// face, which is what the disk-deletion step of the complement
// construction needs.
inline CombSurface globe(int k) {
  if (k < 3) throw pipeline_error("globe needs at least three corridors");
  CombSurface s;
  int n = s.add_face("N", k);
  int so = s.add_face("S", k);
  std::vector<int> e(k);
  for (int i = 0; i < k; ++i)
    e[i] = s.add_face("E" + std::to_string(i), 4);
  for (int i = 0; i < k; ++i) {
    s.glue(s.slot(e[i], 2), s.slot(e[(i + 1) % k], 0));  // equator
    s.glue(s.slot(n, i), s.slot(e[i], 3));               // north rim
    s.glue(s.slot(so, i), s.slot(e[(k - i) % k], 1));    // south rim
  }
  s.check_valid();
  return s;
}

// Arc from mark m0 to mark m1 crossing the listed interior slots in order.
// Faces are inferred from the slots; each strand point is appended at the
// tail of its edge's order.
inline void arc_through(Drawing& d, const std::string& family,
                        const std::string& name, const std::string& m0,
                        const std::vector<int>& exits, const std::string& m1) {
  const CombSurface& s = d.surface();
  Curve c;
  c.family = family;
  c.name = name;
  c.closed = false;
  End prev = End::at(m0);
  int prev_face = s.mark_face(m0);
  for (int exit : exits) {
    int p = d.insert_point_at_end(exit);
    c.chords.push_back({prev_face, prev, End::at_point(p, exit)});
    int back = s.pair_of(exit);
    prev = End::at_point(p, back);
    prev_face = s.slot_face(back);
  }
  c.chords.push_back({prev_face, prev, End::at(m1)});
  d.check_curve(c);
  d.add_curve(std::move(c));
}

// Shadow of the trivial one-bridge sphere: two bridge points at the poles
// of a three-corridor globe, one arc per family, each through its own
// corridor.  The drawn surface is a sphere (chi 2) with c = 1, b = 1.
inline ShadowDiagram trivial_sphere_shadow() {
  CombSurface s = globe(3);
  s.add_mark("n", 0);
  s.add_mark("s", 1);
  Drawing d(std::move(s));
  const CombSurface& surf = d.surface();
  for (int i = 0; i < 3; ++i) {
    // polar cap -> corridor i -> other polar cap
    arc_through(d, kArcFamilyNames[i], "t" + std::to_string(i), "n",
                {surf.slot(0, i), surf.slot(2 + i, 1)}, "s");
  }
  ShadowDiagram sd;
  sd.drawing = std::move(d);
  Report r = validate_shadow(sd);
  if (!r.passed)
    throw pipeline_error("trivial sphere shadow failed validation:\n" +
                         r.text());
  return sd;
}

// Shadow of an unknotted projective plane in two-bridge position: four
// bridge points in alternate corridors of an eight-corridor globe.  One
// arc family pairs equatorial neighbours a-b and c-d, the second pairs
// b-c and d-a, and the third pairs the diagonals a-c over the north cap
// and b-d under the south cap.  The drawn surface has chi 1, c = 1, b = 2.
inline ShadowDiagram unknotted_rp2_shadow() {
  CombSurface s = globe(8);
  s.add_mark("a", 2 + 0);
  s.add_mark("b", 2 + 2);
  s.add_mark("c", 2 + 4);
  s.add_mark("d", 2 + 6);
  Drawing d(std::move(s));
  const CombSurface& surf = d.surface();
  auto E = [&](int i, int local) { return surf.slot(2 + i, local); };
  arc_through(d, kArcFamilyNames[0], "ab", "a", {E(0, 2), E(1, 2)}, "b");
  arc_through(d, kArcFamilyNames[0], "cd", "c", {E(4, 2), E(5, 2)}, "d");
  arc_through(d, kArcFamilyNames[1], "bc", "b", {E(2, 2), E(3, 2)}, "c");
  arc_through(d, kArcFamilyNames[1], "da", "d", {E(6, 2), E(7, 2)}, "a");
  arc_through(d, kArcFamilyNames[2], "ac", "a", {E(0, 3), surf.slot(0, 4)},
              "c");
  arc_through(d, kArcFamilyNames[2], "bd", "b", {E(2, 1), surf.slot(1, 2)},
              "d");
  ShadowDiagram sd;
  sd.drawing = std::move(d);
  Report r = validate_shadow(sd);
  if (!r.passed)
    throw pipeline_error("projective plane shadow failed validation:\n" +
                         r.text());
  return sd;
}

}  // namespace builders
}  // namespace trisect
