#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <string>
#include <vector>

#include "trisect/catalog.hpp"
#include "trisect/complement.hpp"
#include "trisect/invariants.hpp"
#include "trisect/surgery.hpp"
#include "trisect/tri_io.hpp"

using namespace trisect;

// ---------------------------------------------------------------------------
// Parameter bookkeeping.  Expected values below are frozen from the closed
// formulas evaluated by hand:
//   k' = k + 3 - chi,  g' = (12 + 2g - 5 chi - b') / 2,  2p' + b' = 4 - chi.
// ---------------------------------------------------------------------------

TEST_CASE("complement parameter bookkeeping matches frozen examples") {
  // sphere base, drawn projective plane, planar page
  PredictedParameters q = predicted_parameters(0, 0, 1, 3, 0);
  CHECK(q.g == 2);
  CHECK(q.k == 2);
  CHECK(q.p == 0);
  CHECK(q.b == 3);
  // genus-three base, drawn torus, genus-one page
  q = predicted_parameters(3, 1, 0, 2, 1);
  CHECK(q.g == 8);
  CHECK(q.k == 4);
  CHECK(q.p == 1);
  CHECK(q.b == 2);
  // genus-three base, drawn projective plane, planar page
  q = predicted_parameters(3, 1, 1, 3, 0);
  CHECK(q.g == 5);
  CHECK(q.k == 3);
  CHECK(q.p == 0);
  CHECK(q.b == 3);
  // sphere base, drawn projective plane, genus-one page
  q = predicted_parameters(0, 0, 1, 1, 1);
  CHECK(q.g == 3);
  CHECK(q.k == 2);
  CHECK(q.p == 1);
  CHECK(q.b == 1);
  // sphere base, drawn sphere, annular page
  q = predicted_parameters(0, 0, 2, 2, 0);
  CHECK(q.g == 0);
  CHECK(q.k == 1);
  CHECK(q.p == 0);
  CHECK(q.b == 2);
}

TEST_CASE("parameter bookkeeping rejects inconsistent pages") {
  // genus numerator 12 - 5 - 2 = 5 is odd
  try {
    predicted_parameters(0, 0, 1, 2, 0);
    FAIL("expected a parity rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
    CHECK(std::string(e.what()).find("parity") != std::string::npos);
  }
  // 2p' + b' = 1 but 4 - chi = 3
  try {
    predicted_parameters(0, 0, 1, 1, 0);
    FAIL("expected a page-constraint rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
    CHECK(std::string(e.what()).find("page constraint") != std::string::npos);
  }
  // pages need boundary
  CHECK_THROWS_AS(predicted_parameters(0, 0, 1, 0, 2), Error);
}

// ---------------------------------------------------------------------------
// Complements of the unknotted projective plane shadow.
// ---------------------------------------------------------------------------

TEST_CASE("protected-point selection on the projective plane shadow") {
  ShadowDiagram sd = builders::unknotted_rp2_shadow();
  CHECK(sd.g == 0);
  CHECK(sd.k == 0);
  CHECK(sd.c == 1);
  CHECK(sd.b == 2);

  ArcSelection sel = select_arcs(sd, SelectionMode::AutoP0B3);
  REQUIRE(sel.protected_bridge_point.has_value());
  CHECK(*sel.protected_bridge_point == "a");
  CHECK(sel.used[0] == std::vector<std::string>{"cd"});
  CHECK(sel.used[1] == std::vector<std::string>{"bc"});
  CHECK(sel.used[2] == std::vector<std::string>{"bd"});

  RelativeTrisectionDiagram rd = build_complement(sd, sel);
  CHECK(rd.g == 2);
  CHECK(rd.k == 2);
  CHECK(rd.p == 0);
  CHECK(rd.b == 3);
  CHECK(rd.drawing.surface().euler_characteristic() == -5);

  // agrees with the closed formulas
  PredictedParameters q = predicted_parameters(sd.g, sd.k, 1, rd.b, rd.p);
  CHECK(q.g == rd.g);
  CHECK(q.k == rd.k);

  // the protected bridge point's hole survives band-free, still labeled
  REQUIRE(rd.drawing.surface().boundary_labels().count("a") == 1);
  CHECK(rd.drawing.surface().is_boundary(
      rd.drawing.surface().boundary_labels().at("a")));

  // two curves per family: the closed-up arc and its encircling curve
  for (const char* fam : kFamilyNames)
    CHECK(rd.drawing.family_members(fam).size() == 2);
  CHECK(rd.drawing.find_curve("alpha", "cd.core").has_value());
  CHECK(rd.drawing.find_curve("alpha", "cd.nbd").has_value());
  CHECK(rd.drawing.find_curve("beta", "bc.core").has_value());
  CHECK(rd.drawing.find_curve("gamma", "bd.nbd").has_value());

  // first homology of the complement of a projective plane
  CHECK(h1_spine_relative(rd).to_string() == "Z/2");
}

TEST_CASE("explicit star selection reaches the genus-one page") {
  ShadowDiagram sd = builders::unknotted_rp2_shadow();
  ArcSelection sel;
  sel.used[0] = {"ab"};
  sel.used[1] = {"bc"};
  sel.used[2] = {"bd"};
  ArcSelection echo = select_arcs(sd, sel);
  CHECK(echo.used == sel.used);
  CHECK(!echo.protected_bridge_point.has_value());

  RelativeTrisectionDiagram rd = build_complement(sd, sel);
  CHECK(rd.g == 3);
  CHECK(rd.k == 2);
  CHECK(rd.p == 1);
  CHECK(rd.b == 1);
  CHECK(rd.drawing.surface().euler_characteristic() == -5);
  CHECK(h1_spine_relative(rd).to_string() == "Z/2");
}

TEST_CASE("every selection of the projective plane shadow builds") {
  ShadowDiagram sd = builders::unknotted_rp2_shadow();
  const std::vector<std::string> f0 = {"ab", "cd"};
  const std::vector<std::string> f1 = {"bc", "da"};
  const std::vector<std::string> f2 = {"ac", "bd"};
  auto touches = [](const std::string& arc) {
    return std::set<char>{arc[0], arc[1]};
  };
  int planar = 0;
  int genus_one = 0;
  for (const std::string& u0 : f0)
    for (const std::string& u1 : f1)
      for (const std::string& u2 : f2) {
        ArcSelection sel;
        sel.used[0] = {u0 == "ab" ? "cd" : "ab"};
        sel.used[1] = {u1 == "bc" ? "da" : "bc"};
        sel.used[2] = {u2 == "ac" ? "bd" : "ac"};
        RelativeTrisectionDiagram rd = build_complement(sd, sel);
        CHECK(rd.k == 2);
        CHECK(rd.drawing.surface().euler_characteristic() == -5);
        CHECK(h1_spine_relative(rd).to_string() == "Z/2");
        // when the three unused arcs share a bridge point, its hole is
        // untouched and the page is planar; otherwise the used arcs form a
        // tree and the page has genus one
        std::set<char> common;
        for (char m : touches(u0))
          if (touches(u1).count(m) && touches(u2).count(m)) common.insert(m);
        if (!common.empty()) {
          CHECK(rd.g == 2);
          CHECK(rd.p == 0);
          CHECK(rd.b == 3);
          ++planar;
        } else {
          CHECK(rd.g == 3);
          CHECK(rd.p == 1);
          CHECK(rd.b == 1);
          ++genus_one;
        }
      }
  CHECK(planar == 4);
  CHECK(genus_one == 4);
}

TEST_CASE("complement construction is deterministic") {
  ShadowDiagram sd = builders::unknotted_rp2_shadow();
  ArcSelection sel = select_arcs(sd, SelectionMode::AutoP0B3);
  RelativeTrisectionDiagram r1 = build_complement(sd, sel);
  RelativeTrisectionDiagram r2 = build_complement(sd, sel);
  CHECK(write_tri(r1.drawing, {}) == write_tri(r2.drawing, {}));
}

TEST_CASE("complement construction is stable under recellulation") {
  ShadowDiagram sd = builders::unknotted_rp2_shadow();
  ShadowDiagram sd2;
  sd2.drawing = random_recellulation(sd.drawing, 12, 20250817u);
  Report r = validate_shadow(sd2);
  REQUIRE(r.passed);
  CHECK(sd2.g == 0);
  CHECK(sd2.c == 1);
  CHECK(sd2.b == 2);
  ArcSelection sel = select_arcs(sd2, SelectionMode::AutoP0B3);
  REQUIRE(sel.protected_bridge_point.has_value());
  CHECK(*sel.protected_bridge_point == "a");
  RelativeTrisectionDiagram rd = build_complement(sd2, sel);
  CHECK(rd.g == 2);
  CHECK(rd.k == 2);
  CHECK(rd.p == 0);
  CHECK(rd.b == 3);
  CHECK(h1_spine_relative(rd).to_string() == "Z/2");
}

// ---------------------------------------------------------------------------
// Zero-band case: a drawn sphere needs no bands at all.
// ---------------------------------------------------------------------------

TEST_CASE("zero-band complement of the trivial sphere shadow") {
  ShadowDiagram sd = builders::trivial_sphere_shadow();
  CHECK(sd.g == 0);
  CHECK(sd.k == 0);
  CHECK(sd.c == 1);
  CHECK(sd.b == 1);

  ArcSelection sel = select_arcs(sd, SelectionMode::AutoAny);
  for (int i = 0; i < 3; ++i) CHECK(sel.used[i].empty());

  RelativeTrisectionDiagram rd = build_complement(sd, sel);
  CHECK(rd.g == 0);
  CHECK(rd.k == 1);
  CHECK(rd.p == 0);
  CHECK(rd.b == 2);
  CHECK(rd.drawing.num_curves() == 0);
  CHECK(rd.drawing.surface().euler_characteristic() == 0);
  // both polar holes survive, labeled by their bridge points
  CHECK(rd.drawing.surface().boundary_labels().count("n") == 1);
  CHECK(rd.drawing.surface().boundary_labels().count("s") == 1);
  // the complement of the trivial sphere has infinite cyclic first homology
  CHECK(h1_spine_relative(rd).to_string() == "Z");

  // protected-point mode picks the first bridge point here
  ArcSelection p0 = select_arcs(sd, SelectionMode::AutoP0B3);
  REQUIRE(p0.protected_bridge_point.has_value());
  CHECK(*p0.protected_bridge_point == "n");
}

// ---------------------------------------------------------------------------
// Rejections.
// ---------------------------------------------------------------------------

TEST_CASE("disconnected drawn surfaces are rejected") {
  // two drawn spheres: arcs join m1-m2 and m3-m4 in every family
  CombSurface s = builders::globe(4);
  s.add_mark("m1", 2);
  s.add_mark("m2", 3);
  s.add_mark("m3", 4);
  s.add_mark("m4", 5);
  Drawing d(std::move(s));
  const CombSurface& surf = d.surface();
  auto E = [&](int i, int local) { return surf.slot(2 + i, local); };
  for (int i = 0; i < 3; ++i) {
    builders::arc_through(d, kArcFamilyNames[i], "x" + std::to_string(i),
                          "m1", {E(0, 2)}, "m2");
    builders::arc_through(d, kArcFamilyNames[i], "y" + std::to_string(i),
                          "m3", {E(2, 2)}, "m4");
  }
  ShadowDiagram sd;
  sd.drawing = std::move(d);
  Report r = validate_shadow(sd);
  REQUIRE(r.passed);
  CHECK(sd.c == 2);
  try {
    select_arcs(sd, SelectionMode::AutoAny);
    FAIL("expected a rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
    CHECK(std::string(e.what()).find("c = 1") != std::string::npos);
  }
}

TEST_CASE("selection search reports every failed candidate") {
  // bridge points sharing a face defeat every disk deletion, so the search
  // must exhaust its candidates and report each failure
  CombSurface s = builders::globe(4);
  s.add_mark("a", 2);
  s.add_mark("b", 2);
  s.add_mark("c", 4);
  s.add_mark("d", 4);
  Drawing d(std::move(s));
  const CombSurface& surf = d.surface();
  auto E = [&](int i, int local) { return surf.slot(2 + i, local); };
  // ab and cd double back through a neighbouring corridor
  builders::arc_through(d, kArcFamilyNames[0], "ab", "a", {E(0, 2), E(1, 0)},
                        "b");
  builders::arc_through(d, kArcFamilyNames[0], "cd", "c", {E(2, 2), E(3, 0)},
                        "d");
  builders::arc_through(d, kArcFamilyNames[1], "bc", "b", {E(0, 2), E(1, 2)},
                        "c");
  builders::arc_through(d, kArcFamilyNames[1], "da", "d", {E(2, 2), E(3, 2)},
                        "a");
  builders::arc_through(d, kArcFamilyNames[2], "ac", "a",
                        {E(0, 3), surf.slot(0, 2)}, "c");
  builders::arc_through(d, kArcFamilyNames[2], "bd", "b",
                        {E(0, 1), surf.slot(1, 2)}, "d");
  ShadowDiagram sd;
  sd.drawing = std::move(d);
  Report r = validate_shadow(sd);
  REQUIRE(r.passed);
  CHECK(sd.c == 1);
  try {
    select_arcs(sd, SelectionMode::AutoAny);
    FAIL("expected the search to fail");
  } catch (const Error& e) {
    std::string msg = e.what();
    CHECK(msg.find("no valid selection") != std::string::npos);
    CHECK(msg.find("two marks share a face") != std::string::npos);
    // all eight candidates are in the log
    size_t lines = 0;
    for (size_t at = msg.find("leave "); at != std::string::npos;
         at = msg.find("leave ", at + 1))
      ++lines;
    CHECK(lines == 8);
  }
}

TEST_CASE("structurally bad selections are rejected up front") {
  ShadowDiagram sd = builders::unknotted_rp2_shadow();

  ArcSelection sel;
  sel.used[0] = {"zz"};
  sel.used[1] = {"bc"};
  sel.used[2] = {"bd"};
  try {
    select_arcs(sd, sel);
    FAIL("expected an unknown-arc rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("no arc named zz") != std::string::npos);
  }

  sel.used[0] = {"ab", "cd"};
  try {
    select_arcs(sd, sel);
    FAIL("expected an arc-count rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("exactly one arc unused") !=
          std::string::npos);
  }

  sel.used[0] = {"ab"};
  sel.protected_bridge_point = "a";
  try {
    select_arcs(sd, sel);
    FAIL("expected a protected-point rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("touches protected bridge point") !=
          std::string::npos);
  }

  sel.protected_bridge_point = "qq";
  CHECK_THROWS_AS(select_arcs(sd, sel), Error);
}
