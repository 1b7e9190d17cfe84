#include <catch2/catch_amalgamated.hpp>

#include "trisect/tri_io.hpp"

using namespace trisect;

namespace {

int add_meridian(Drawing& d, int handle, const std::string& family,
                 const std::string& name) {
  const CombSurface& s = d.surface();
  int sl = s.slot(0, 4 * handle);
  int p = d.insert_point_at_end(sl);
  Curve c;
  c.family = family;
  c.name = name;
  c.closed = true;
  c.chords.push_back({0, End::at_point(p, sl), End::at_point(p, s.pair_of(sl))});
  return d.add_curve(c);
}

int add_longitude(Drawing& d, int handle, const std::string& family,
                  const std::string& name) {
  const CombSurface& s = d.surface();
  int sl = s.slot(0, 4 * handle + 1);
  int p = d.insert_point_at_end(sl);
  Curve c;
  c.family = family;
  c.name = name;
  c.closed = true;
  c.chords.push_back({0, End::at_point(p, sl), End::at_point(p, s.pair_of(sl))});
  return d.add_curve(c);
}

int add_diagonal(Drawing& d, const std::string& family, const std::string& name) {
  const CombSurface& s = d.surface();
  int p0 = d.insert_point_at_end(s.slot(0, 0));
  int p1 = d.insert_point_at_end(s.slot(0, 1));
  Curve c;
  c.family = family;
  c.name = name;
  c.closed = true;
  c.chords.push_back({0, End::at_point(p0, s.slot(0, 0)), End::at_point(p1, s.slot(0, 1))});
  c.chords.push_back({0, End::at_point(p1, s.slot(0, 3)), End::at_point(p0, s.slot(0, 2))});
  return d.add_curve(c);
}

TriFile make_cp2_file() {
  TriFile f;
  f.drawing = Drawing(standard_surface(1, 0));
  add_meridian(f.drawing, 0, "alpha", "a1");
  add_longitude(f.drawing, 0, "beta", "b1");
  add_diagonal(f.drawing, "gamma", "c1");
  f.meta["kind"] = "trisection";
  f.meta["params"] = "1,0";
  return f;
}

}  // namespace

TEST_CASE("serialization is canonical under reparse") {
  TriFile f = make_cp2_file();
  std::string t1 = write_tri(f);
  TriFile f2 = parse_tri(t1);
  std::string t2 = write_tri(f2);
  CHECK(t1 == t2);
  CHECK(f2.meta == f.meta);
  // semantic round trip
  CHECK(f2.drawing.num_curves() == 3);
  CHECK(f2.drawing.surface().classify().genus == 1);
  const Curve& a = f2.drawing.curve(f2.drawing.family_members("alpha")[0]);
  const Curve& c = f2.drawing.curve(f2.drawing.family_members("gamma")[0]);
  CHECK(std::abs(f2.drawing.algebraic_intersection(a, c)) == 1);
}

TEST_CASE("a hand-written sphere file loads as the empty diagram") {
  std::string text =
      "TRI 1\n"
      "# a plain sphere, no curves\n"
      "FACE F0 4\n"
      "GLUE F0.0 F0.1\n"
      "GLUE F0.2 F0.3\n"
      "META kind trisection\n"
      "META params 0,0\n";
  TriFile f = parse_tri(text);
  CHECK(tri_kind(f) == TriKind::Trisection);
  LoadedTrisection lt = load_trisection(f);
  INFO(lt.report.text());
  CHECK(lt.report.passed);
  CHECK(parameters(lt.diagram) == std::pair<int, int>{0, 0});
  CHECK(lt.report.text().find("declared parameters (0,0) match derived (0,0)") !=
        std::string::npos);
}

TEST_CASE("declared parameters that disagree with the diagram fail the load") {
  std::string text =
      "TRI 1\n"
      "FACE F0 4\n"
      "GLUE F0.0 F0.1\n"
      "GLUE F0.2 F0.3\n"
      "META kind trisection\n"
      "META params 2,1\n";
  LoadedTrisection lt = load_trisection(parse_tri(text));
  CHECK_FALSE(lt.report.passed);
  CHECK(lt.report.text().find("FAIL: declared parameters (2,1) match derived (0,0)") !=
        std::string::npos);
}

TEST_CASE("marks and arcs round trip through text") {
  TriFile f;
  CombSurface s = standard_surface(0, 0);
  s.add_mark("m0", 0);
  s.add_mark("m1", 0);
  f.drawing = Drawing(std::move(s));
  for (const char* fam : {"s_alpha", "s_beta", "s_gamma"}) {
    Curve c;
    c.family = fam;
    c.name = "t1";
    c.closed = false;
    c.chords.push_back({0, End::at("m0"), End::at("m1")});
    f.drawing.add_curve(c);
  }
  f.meta["kind"] = "shadow";
  f.meta["params"] = "1,1";
  f.meta["euler_number"] = "-2";

  std::string t1 = write_tri(f);
  CHECK(t1.find("MARK m0 IN F0") != std::string::npos);
  CHECK(t1.find("ARC s_alpha t1 : F0[MARK m0->MARK m1]") != std::string::npos);
  TriFile f2 = parse_tri(t1);
  CHECK(write_tri(f2) == t1);
  CHECK(tri_kind(f2) == TriKind::Shadow);
  LoadedShadow ls = load_shadow(f2);
  INFO(ls.report.text());
  CHECK(ls.report.passed);
  CHECK(parameters(ls.diagram) == std::array<int, 4>{0, 0, 1, 1});
  REQUIRE(ls.diagram.euler_number.has_value());
  CHECK(*ls.diagram.euler_number == -2);
}

TEST_CASE("boundary labels travel as META entries") {
  TriFile f;
  f.drawing = Drawing(standard_surface(1, 1));
  add_meridian(f.drawing, 0, "alpha", "a1");
  add_meridian(f.drawing, 0, "beta", "b1");
  add_meridian(f.drawing, 0, "gamma", "c1");
  f.meta["kind"] = "relative";
  f.meta["params"] = "1,1,0,1";
  std::string t1 = write_tri(f);
  CHECK(t1.find("META boundary.d0 B0.2") != std::string::npos);
  TriFile f2 = parse_tri(t1);
  CHECK(write_tri(f2) == t1);
  CHECK(f2.drawing.surface().boundary_labels().count("d0") == 1);
  CHECK(tri_kind(f2) == TriKind::Relative);
  LoadedRelative lr = load_relative(f2);
  INFO(lr.report.text());
  CHECK(lr.report.passed);
  CHECK(parameters(lr.diagram) == std::array<int, 4>{1, 1, 0, 1});
}

TEST_CASE("kind is inferred from the content when absent") {
  std::string closed =
      "TRI 1\nFACE F0 4\nGLUE F0.0 F0.1\nGLUE F0.2 F0.3\n";
  CHECK(tri_kind(parse_tri(closed)) == TriKind::Trisection);
  std::string holed = "TRI 1\nFACE F0 4\nGLUE F0.0 F0.1\n";
  CHECK(tri_kind(parse_tri(holed)) == TriKind::Relative);
  std::string marked =
      "TRI 1\nFACE F0 4\nGLUE F0.0 F0.1\nGLUE F0.2 F0.3\nMARK m IN F0\n";
  CHECK(tri_kind(parse_tri(marked)) == TriKind::Shadow);
}

TEST_CASE("parse errors carry line numbers") {
  auto expect_parse_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_tri(text);
      FAIL("expected a parse error for: " << needle);
    } catch (const Error& e) {
      INFO(e.what());
      CHECK(e.code() == ErrorCode::Parse);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_parse_error("FACE F0 4\n", "line 1: expected header TRI 1");
  expect_parse_error("TRI 1\nFACE F0 4\nGLUE F0.0 F1.0\n", "line 3: unknown face: F1");
  expect_parse_error("TRI 1\nFACE F0 4\nGLUE F0.0 F0.9\n", "line 3: slot out of range");
  expect_parse_error("TRI 1\nFACE F0 4\nGLUE F0.0 F0.1\nGLUE F0.1 F0.2\n",
                     "line 4: slot glued twice");
  expect_parse_error("TRI 1\nFACE F0 4\nFACE F0 2\n", "line 3: duplicate face");
  expect_parse_error("TRI 1\nFACE F0 4\nBLORB x\n", "line 3: unknown keyword: BLORB");
  expect_parse_error("TRI 1\nFACE F0 4\nCURVE a c1 : F0[0.0->1.0\n",
                     "line 3: expected <face>[<end>-><end>]");
  expect_parse_error("TRI 1\nFACE F0 4\nMARK m IN F9\n", "line 3: unknown face: F9");
  expect_parse_error("TRI 1\nFACE F0 4\nCURVE a c : F0[MARK z->MARK z]\n",
                     "line 3: unknown mark: z");
  expect_parse_error("TRI 1\nFACE F0 2\nGLUE F0.0 F0.1\n"
                     "CURVE a c : F0[0.0->1.0]\nCURVE a c : F0[0.1->1.1]\n",
                     "line 5: duplicate curve");
  expect_parse_error("TRI 1\nFACE F0 4\nMETA params 1,0\nMETA params 1,0\n",
                     "line 4: duplicate META key");
}

TEST_CASE("strand orders must pair up across an edge") {
  // order 1 on one side with no matching strand on the other
  std::string text =
      "TRI 1\n"
      "FACE F0 4\n"
      "GLUE F0.0 F0.1\n"
      "GLUE F0.2 F0.3\n"
      "CURVE a c1 : F0[0.0->1.1]\n";
  try {
    parse_tri(text);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("strand orders disagree") != std::string::npos);
  }
}

TEST_CASE("a curve whose chords do not connect is a parse error") {
  // both edges carry matched strands, but the second chord starts on the
  // wrong side so the walk does not continue
  std::string text =
      "TRI 1\n"
      "FACE F0 4\n"
      "GLUE F0.0 F0.2\n"
      "GLUE F0.1 F0.3\n"
      "CURVE a c1 : F0[0.0->1.0],F0[2.0->3.0]\n";
  try {
    parse_tri(text);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    INFO(e.what());
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("line 5: bad curve") != std::string::npos);
  }
}

TEST_CASE("strand order reverses on the far side of an edge") {
  // two parallel strands through one edge: orders 0,1 on one side must be
  // referenced as 1,0 from the other
  std::string text =
      "TRI 1\n"
      "FACE F0 4\n"
      "GLUE F0.0 F0.2\n"
      "GLUE F0.1 F0.3\n"
      "CURVE a c1 : F0[0.0->2.1]\n"
      "CURVE a c2 : F0[0.1->2.0]\n";
  TriFile f = parse_tri(text);
  const Drawing& d = f.drawing;
  REQUIRE(d.num_curves() == 2);
  const Curve& c1 = d.curve(0);
  const Curve& c2 = d.curve(1);
  // both are closed up through the same edge without crossing
  CHECK(d.geometric_crossings(c1, c2) == 0);
  CHECK_NOTHROW(d.check_integrity());
}
