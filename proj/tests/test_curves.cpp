#include <catch2/catch_amalgamated.hpp>

#include "trisect/curves.hpp"

using namespace trisect;

namespace {

// Meridian of the standard torus: one strand through the edge {slot0,slot2}.
int add_meridian(Drawing& d, const std::string& name = "m") {
  const CombSurface& s = d.surface();
  int p = d.insert_point_at_end(s.slot(0, 0));
  Curve c;
  c.family = "alpha";
  c.name = name;
  c.closed = true;
  Chord ch;
  ch.face = 0;
  ch.a = End::at_point(p, s.slot(0, 0));
  ch.b = End::at_point(p, s.slot(0, 2));
  c.chords.push_back(ch);
  return d.add_curve(c);
}

// Longitude: one strand through the edge {slot1,slot3}.
int add_longitude(Drawing& d, const std::string& name = "l") {
  const CombSurface& s = d.surface();
  int p = d.insert_point_at_end(s.slot(0, 1));
  Curve c;
  c.family = "beta";
  c.name = name;
  c.closed = true;
  Chord ch;
  ch.face = 0;
  ch.a = End::at_point(p, s.slot(0, 1));
  ch.b = End::at_point(p, s.slot(0, 3));
  c.chords.push_back(ch);
  return d.add_curve(c);
}

// A contractible circle crossing the meridian edge twice and bounding a disk.
int add_trivial_circle(Drawing& d) {
  const CombSurface& s = d.surface();
  int p1 = d.insert_point_at_end(s.slot(0, 0));
  int p2 = d.insert_point_at_end(s.slot(0, 0));
  Curve c;
  c.family = "gamma";
  c.name = "triv";
  c.closed = true;
  Chord c1, c2;
  c1.face = 0;
  c1.a = End::at_point(p1, s.slot(0, 0));
  c1.b = End::at_point(p2, s.slot(0, 0));
  c2.face = 0;
  c2.a = End::at_point(p2, s.slot(0, 2));
  c2.b = End::at_point(p1, s.slot(0, 2));
  c.chords = {c1, c2};
  return d.add_curve(c);
}

}  // namespace

TEST_CASE("meridian and longitude cross once with antisymmetric sign") {
  Drawing d(standard_surface(1, 0));
  int im = add_meridian(d);
  int il = add_longitude(d);
  d.check_integrity();
  const Curve& m = d.curve(im);
  const Curve& l = d.curve(il);
  REQUIRE(d.geometric_crossings(m, l) == 1);
  REQUIRE(d.geometric_crossings(l, m) == 1);
  int s1 = d.algebraic_intersection(m, l);
  int s2 = d.algebraic_intersection(l, m);
  REQUIRE((s1 == 1 || s1 == -1));
  REQUIRE(s1 == -s2);
  REQUIRE(d.is_embedded(m));
  REQUIRE(d.is_embedded(l));
  // reversal flips the pairing
  Curve mr = Drawing::reversed(m);
  REQUIRE(d.algebraic_intersection(mr, l) == -s1);
}

TEST_CASE("contractible circle is embedded and disjoint from the longitude") {
  Drawing d(standard_surface(1, 0));
  int il = add_longitude(d);
  int it = add_trivial_circle(d);
  d.check_integrity();
  REQUIRE(d.is_embedded(d.curve(it)));
  REQUIRE(d.geometric_crossings(d.curve(it), d.curve(il)) == 0);
  REQUIRE(d.algebraic_intersection(d.curve(it), d.curve(il)) == 0);
  // A meridian strand added after the circle's feet passes outside the disk
  // the circle bounds, so they stay disjoint.
  int im = add_meridian(d);
  REQUIRE(d.geometric_crossings(d.curve(it), d.curve(im)) == 0);
}

TEST_CASE("circle enclosing a strand crosses it twice with opposite signs") {
  Drawing d(standard_surface(1, 0));
  const CombSurface& s = d.surface();
  int p1 = d.insert_point_at_end(s.slot(0, 0));
  int im = add_meridian(d);  // strand sits between the circle's two feet
  int p2 = d.insert_point_at_end(s.slot(0, 0));
  Curve c;
  c.family = "gamma";
  c.name = "ring";
  c.closed = true;
  Chord c1, c2;
  c1.face = 0;
  c1.a = End::at_point(p1, s.slot(0, 0));
  c1.b = End::at_point(p2, s.slot(0, 0));
  c2.face = 0;
  c2.a = End::at_point(p2, s.slot(0, 2));
  c2.b = End::at_point(p1, s.slot(0, 2));
  c.chords = {c1, c2};
  int it = d.add_curve(c);
  d.check_integrity();
  REQUIRE(d.is_embedded(d.curve(it)));
  REQUIRE(d.geometric_crossings(d.curve(it), d.curve(im)) == 2);
  REQUIRE(d.algebraic_intersection(d.curve(it), d.curve(im)) == 0);
}

TEST_CASE("parallel copies are embedded, parallel and disjoint") {
  Drawing d(standard_surface(1, 0));
  int im = add_meridian(d);
  int il = add_longitude(d);
  for (Push side : {Push::Left, Push::Right}) {
    Curve copy = d.parallel_copy(d.curve(im), side, "m2");
    int ic = d.add_curve(copy);
    d.check_integrity();
    REQUIRE(d.is_embedded(d.curve(ic)));
    REQUIRE(d.geometric_crossings(d.curve(ic), d.curve(im)) == 0);
    REQUIRE(d.geometric_crossings(d.curve(ic), d.curve(il)) == 1);
    d.remove_curve(ic);
  }
  d.check_integrity();
}

TEST_CASE("parallel copy of a two-chord curve stays disjoint") {
  Drawing d(standard_surface(1, 0));
  int it = add_trivial_circle(d);
  Curve copy = d.parallel_copy(d.curve(it), Push::Left, "triv2");
  int ic = d.add_curve(copy);
  d.check_integrity();
  REQUIRE(d.is_embedded(d.curve(ic)));
  REQUIRE(d.geometric_crossings(d.curve(ic), d.curve(it)) == 0);
}

TEST_CASE("curve removal garbage-collects strand points") {
  Drawing d(standard_surface(1, 0));
  int im = add_meridian(d);
  REQUIRE(d.num_points_on_edge(d.surface().slot(0, 0)) == 1);
  d.remove_curve(im);
  REQUIRE(d.num_points_on_edge(d.surface().slot(0, 0)) == 0);
  d.check_integrity();
}

TEST_CASE("malformed curves are rejected") {
  Drawing d(standard_surface(1, 0));
  const CombSurface& s = d.surface();
  int p1 = d.insert_point_at_end(s.slot(0, 0));
  int p2 = d.insert_point_at_end(s.slot(0, 1));
  Curve broken;
  broken.family = "alpha";
  broken.name = "bad";
  broken.closed = true;
  Chord ch;
  ch.face = 0;
  ch.a = End::at_point(p1, s.slot(0, 0));
  ch.b = End::at_point(p2, s.slot(0, 1));
  broken.chords.push_back(ch);
  REQUIRE_THROWS_AS(d.check_curve(broken), Error);
}
