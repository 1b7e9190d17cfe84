#include <catch2/catch_amalgamated.hpp>

#include "trisect/homology.hpp"

using namespace trisect;

namespace {

Curve one_chord_curve(Drawing& d, const std::string& fam, const std::string& name,
                      int slot_a, int slot_b) {
  int p = d.insert_point_at_end(slot_a);
  Curve c;
  c.family = fam;
  c.name = name;
  c.closed = true;
  Chord ch;
  ch.face = d.surface().slot_face(slot_a);
  ch.a = End::at_point(p, slot_a);
  ch.b = End::at_point(p, slot_b);
  c.chords.push_back(ch);
  return c;
}

}  // namespace

TEST_CASE("h1 ranks of standard surfaces") {
  for (int g = 0; g <= 3; ++g)
    for (int b = 0; b <= 3; ++b) {
      CombSurface s = standard_surface(g, b);
      SurfaceHomology h(s);
      INFO("g=" << g << " b=" << b);
      int expect = (b == 0) ? 2 * g : 2 * g + b - 1;
      REQUIRE(h.h1_rank() == expect);
    }
}

TEST_CASE("meridian and longitude classes form a basis of H1 of the torus") {
  Drawing d(standard_surface(1, 0));
  const CombSurface& s = d.surface();
  Curve m = one_chord_curve(d, "alpha", "m", s.slot(0, 0), s.slot(0, 2));
  d.add_curve(m);
  Curve l = one_chord_curve(d, "beta", "l", s.slot(0, 1), s.slot(0, 3));
  d.add_curve(l);
  SurfaceHomology h(s);
  auto cm = h.h1_class_of_curve(d, d.curve(0));
  auto cl = h.h1_class_of_curve(d, d.curve(1));
  REQUIRE(cm.size() == 2);
  IMat mat(2, 2);
  mat.at(0, 0) = cm[0];
  mat.at(1, 0) = cm[1];
  mat.at(0, 1) = cl[0];
  mat.at(1, 1) = cl[1];
  REQUIRE(int_abs(mat_det(mat)) == 1);
}

TEST_CASE("null-homotopic circle has zero class") {
  Drawing d(standard_surface(1, 0));
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
  int ic = d.add_curve(c);
  SurfaceHomology h(s);
  for (const Int& x : h.h1_class_of_curve(d, d.curve(ic))) REQUIRE(x == 0);
}

TEST_CASE("parallel copy has the same homology class") {
  Drawing d(standard_surface(2, 0));
  const CombSurface& s = d.surface();
  Curve m = one_chord_curve(d, "alpha", "m1", s.slot(0, 0), s.slot(0, 2));
  int im = d.add_curve(m);
  Curve copy = d.parallel_copy(d.curve(im), Push::Right, "m1c");
  int ic = d.add_curve(copy);
  SurfaceHomology h(s);
  REQUIRE(h.h1_class_of_curve(d, d.curve(im)) == h.h1_class_of_curve(d, d.curve(ic)));
}

TEST_CASE("boundary circle cycles: the two ends of an annulus cancel") {
  CombSurface s = standard_surface(0, 2);
  SurfaceHomology h(s);
  REQUIRE(h.h1_rank() == 1);
  auto circles = s.boundary_circles();
  REQUIRE(circles.size() == 2);
  auto z1 = h.h1_class(h.cycle_of_boundary(circles[0]));
  auto z2 = h.h1_class(h.cycle_of_boundary(circles[1]));
  REQUIRE(z1.size() == 1);
  REQUIRE(z1[0] != 0);
  REQUIRE(z1[0] + z2[0] == 0);
}

TEST_CASE("sum of all boundary circle classes vanishes on every standard surface") {
  for (int g = 0; g <= 2; ++g)
    for (int b = 1; b <= 3; ++b) {
      CombSurface s = standard_surface(g, b);
      SurfaceHomology h(s);
      auto circles = s.boundary_circles();
      std::vector<Int> sum(h.h1_rank(), 0);
      for (const auto& c : circles) {
        auto z = h.h1_class(h.cycle_of_boundary(c));
        for (size_t i = 0; i < z.size(); ++i) sum[i] += z[i];
      }
      for (const Int& x : sum) REQUIRE(x == 0);
    }
}
