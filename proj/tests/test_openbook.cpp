#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <set>
#include <string>
#include <vector>

#include "trisect/catalog.hpp"
#include "trisect/complement.hpp"
#include "trisect/openbook.hpp"

using namespace trisect;

namespace {

RelativeTrisectionDiagram planar_rp2_complement() {
  ShadowDiagram sd = builders::unknotted_rp2_shadow();
  ArcSelection sel = select_arcs(sd, SelectionMode::AutoP0B3);
  return build_complement(sd, sel);
}

RelativeTrisectionDiagram genus_one_rp2_complement() {
  ShadowDiagram sd = builders::unknotted_rp2_shadow();
  ArcSelection sel;
  sel.used[0] = {"ab"};
  sel.used[1] = {"bc"};
  sel.used[2] = {"bd"};
  return build_complement(sd, sel);
}

RelativeTrisectionDiagram annular_sphere_complement() {
  ShadowDiagram sd = builders::trivial_sphere_shadow();
  ArcSelection sel = select_arcs(sd, SelectionMode::AutoAny);
  return build_complement(sd, sel);
}

std::multiset<int> twist_multiset(const TwistVector& t) {
  return std::multiset<int>(t.twists.begin(), t.twists.end());
}

}  // namespace

// ---------------------------------------------------------------------------
// Circle-bundle homology arithmetic.  Expected values below are frozen from
// the presentation  < x1, x2, x3, h | [xi,h], x1^a h, x2^b h, x3^c h,
// x1 x2 x3 >  abelianized by hand: the group is finite of order |ab+bc+ca|
// exactly when that number is nonzero.
// ---------------------------------------------------------------------------

TEST_CASE("seifert homology of the double-twist patterns") {
  CHECK(seifert_h1(Int(2), Int(2), Int(-2)).to_string() == "Z/2 + Z/2");
  CHECK(seifert_h1(Int(-2), Int(-2), Int(2)).to_string() == "Z/2 + Z/2");

  AbelianGroup g = seifert_h1(Int(2), Int(2), Int(2));
  CHECK(g.is_finite());
  CHECK(g.torsion_order() == 12);

  g = seifert_h1(Int(1), Int(1), Int(1));
  CHECK(g.is_finite());
  CHECK(g.torsion_order() == 3);
}

TEST_CASE("seifert homology order is the pairwise product sum") {
  for (int a = -6; a <= 6; ++a)
    for (int b = -6; b <= 6; ++b)
      for (int c = -6; c <= 6; ++c) {
        if (a == 0 || b == 0 || c == 0) continue;
        AbelianGroup g = seifert_h1(Int(a), Int(b), Int(c));
        long long n = std::abs(static_cast<long long>(a) * b +
                               static_cast<long long>(b) * c +
                               static_cast<long long>(c) * a);
        CHECK(g.is_finite() == (n != 0));
        if (n != 0) CHECK(g.torsion_order() == Int(n));
      }
}

TEST_CASE("seifert homology is symmetric in the twists and in mirroring") {
  const std::array<std::array<int, 3>, 4> samples = {
      {{2, 3, 4}, {1, -5, 2}, {2, 2, -2}, {6, -6, 1}}};
  for (const auto& s : samples) {
    AbelianGroup base = seifert_h1(Int(s[0]), Int(s[1]), Int(s[2]));
    std::array<int, 3> p = s;
    std::sort(p.begin(), p.end());
    do {
      CHECK(seifert_h1(Int(p[0]), Int(p[1]), Int(p[2])) == base);
      CHECK(seifert_h1(Int(-p[0]), Int(-p[1]), Int(-p[2])) == base);
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("quaternion signature accepts exactly the double-twist patterns") {
  CHECK(check_quaternion_signature(2, 2, -2));
  CHECK(check_quaternion_signature(2, -2, 2));
  CHECK(check_quaternion_signature(-2, 2, 2));
  CHECK(check_quaternion_signature(-2, -2, 2));
  CHECK(check_quaternion_signature(-2, 2, -2));
  CHECK(check_quaternion_signature(2, -2, -2));

  CHECK(!check_quaternion_signature(2, 2, 2));
  CHECK(!check_quaternion_signature(-2, -2, -2));
  CHECK(!check_quaternion_signature(2, 2, 0));
  CHECK(!check_quaternion_signature(2, 2, -1));
  CHECK(!check_quaternion_signature(1, 1, -1));
  CHECK(!check_quaternion_signature(4, 4, -4));
  CHECK(!check_quaternion_signature(0, 0, 0));
  CHECK(!check_quaternion_signature(2, -2, 0));
}

TEST_CASE("twist-vector helpers reject the wrong number of bindings") {
  TwistVector t;
  t.twists = {2, -2};
  t.labels = {"x", "y"};
  try {
    seifert_h1(t);
    FAIL("expected a binding-count rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
  try {
    check_quaternion_signature(t);
    FAIL("expected a binding-count rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
  }
  CHECK(t.twist_on("y") == -2);
  CHECK_THROWS_AS(t.twist_on("z"), Error);
}

// ---------------------------------------------------------------------------
// Page extraction.
// ---------------------------------------------------------------------------

TEST_CASE("the three pages of one diagram are homeomorphic") {
  RelativeTrisectionDiagram rd = planar_rp2_complement();
  std::array<SurfaceClass, 3> cls;
  for (int i = 0; i < 3; ++i) {
    CombSurface page = extract_page(rd, i);
    cls[i] = page.classify();
    CHECK(cls[i].components == 1);
    CHECK(cls[i].orientable);
    CHECK(cls[i].genus == rd.p);
    CHECK(cls[i].boundary_count == rd.b);
  }
  CHECK(cls[0] == cls[1]);
  CHECK(cls[1] == cls[2]);
}

TEST_CASE("page extraction follows the diagram's page parameters") {
  RelativeTrisectionDiagram rd = genus_one_rp2_complement();
  for (int i = 0; i < 3; ++i) {
    SurfaceClass c = extract_page(rd, i).classify();
    CHECK(c.genus == 1);
    CHECK(c.boundary_count == 1);
  }

  RelativeTrisectionDiagram annulus = annular_sphere_complement();
  for (int i = 0; i < 3; ++i) {
    SurfaceClass c = extract_page(annulus, i).classify();
    CHECK(c.genus == 0);
    CHECK(c.boundary_count == 2);
  }
}

TEST_CASE("page extraction demands a validated diagram") {
  RelativeTrisectionDiagram rd = planar_rp2_complement();
  rd.validated = false;
  try {
    extract_page(rd, 0);
    FAIL("expected a validation rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
    CHECK(std::string(e.what()).find("validated") != std::string::npos);
  }
  rd.validated = true;
  CHECK_THROWS_AS(extract_page(rd, 3), Error);
  CHECK_THROWS_AS(extract_page(rd, -1), Error);
}

// ---------------------------------------------------------------------------
// Binding labels.
// ---------------------------------------------------------------------------

TEST_CASE("binding labels name every boundary circle once") {
  RelativeTrisectionDiagram rd = planar_rp2_complement();
  BindingLabeling bl = binding_labeling(rd.drawing);
  REQUIRE(bl.size() == 3);
  std::set<std::string> uniq(bl.labels.begin(), bl.labels.end());
  CHECK(uniq.size() == 3);
  // the protected bridge point's hole keeps its label
  int ia = bl.index_of("a");
  CHECK(ia >= 0);
  CHECK(ia < 3);
  CHECK_THROWS_AS(bl.index_of("zz"), Error);
}

TEST_CASE("structural binding names win and must be complete") {
  RelativeTrisectionDiagram rd = planar_rp2_complement();
  BindingLabeling plain = binding_labeling(rd.drawing);

  Drawing partial = rd.drawing;
  partial.surface_mutable().add_boundary_label("S_0", plain.circles[0][0]);
  try {
    binding_labeling(partial);
    FAIL("expected a completeness rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
  }

  Drawing full = rd.drawing;
  full.surface_mutable().add_boundary_label("S_0", plain.circles[0][0]);
  full.surface_mutable().add_boundary_label("S_1", plain.circles[1][0]);
  full.surface_mutable().add_boundary_label("S_-1", plain.circles[2][0]);
  BindingLabeling bl = binding_labeling(full);
  CHECK(bl.labels == std::vector<std::string>{"S_0", "S_1", "S_-1"});
  CHECK(bl.index_of("S_-1") == 2);

  // two structural names on one circle are contradictory
  Drawing clash = rd.drawing;
  clash.surface_mutable().add_boundary_label("S_0", plain.circles[0][0]);
  clash.surface_mutable().add_boundary_label("S_1", plain.circles[0][0] ==
                                                        plain.circles[0].back()
                                                    ? plain.circles[0][0]
                                                    : plain.circles[0].back());
  clash.surface_mutable().add_boundary_label("S_-1", plain.circles[2][0]);
  CHECK_THROWS_AS(binding_labeling(clash), Error);
}

// ---------------------------------------------------------------------------
// Monodromy.  The projective-plane complement carries the double-twist open
// book: two right-handed and one left-handed boundary twist.
// ---------------------------------------------------------------------------

TEST_CASE("boundary twists of the planar projective-plane complement") {
  RelativeTrisectionDiagram rd = planar_rp2_complement();
  std::string trace;
  TwistVector tv = monodromy_twist_vector(rd, &trace);
  INFO(trace);
  REQUIRE(tv.size() == 3);
  CHECK(twist_multiset(tv) == std::multiset<int>{-2, 2, 2});
  CHECK(check_quaternion_signature(tv));
  CHECK(seifert_h1(tv).to_string() == "Z/2 + Z/2");
}

TEST_CASE("every planar selection yields the double-twist pattern") {
  ShadowDiagram sd = builders::unknotted_rp2_shadow();
  // the four selections whose unused arcs share a bridge point
  const std::array<std::array<const char*, 3>, 4> planar = {{
      {"cd", "bc", "bd"},   // protects a
      {"cd", "da", "ac"},   // protects b... (unused arcs share the point)
      {"ab", "da", "bd"},   // protects c
      {"ab", "bc", "ac"},   // protects d
  }};
  for (const auto& pick : planar) {
    ArcSelection sel;
    sel.used[0] = {pick[0]};
    sel.used[1] = {pick[1]};
    sel.used[2] = {pick[2]};
    RelativeTrisectionDiagram rd = build_complement(sd, sel);
    REQUIRE(rd.p == 0);
    REQUIRE(rd.b == 3);
    TwistVector tv = monodromy_twist_vector(rd);
    CHECK(check_quaternion_signature(tv));
    CHECK(twist_multiset(tv) == std::multiset<int>{-2, 2, 2});
  }
}

TEST_CASE("monodromy rejects non-planar pages and unvalidated diagrams") {
  RelativeTrisectionDiagram star = genus_one_rp2_complement();
  try {
    monodromy_twist_vector(star);
    FAIL("expected a page-genus rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Unsupported);
    CHECK(std::string(e.what()).find("planar") != std::string::npos);
  }

  RelativeTrisectionDiagram rd = planar_rp2_complement();
  rd.validated = false;
  try {
    monodromy_twist_vector(rd);
    FAIL("expected a validation rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Validation);
  }
}

TEST_CASE("the annular open book of the drawn sphere does not twist") {
  RelativeTrisectionDiagram rd = annular_sphere_complement();
  TwistVector tv = monodromy_twist_vector(rd);
  REQUIRE(tv.size() == 2);
  CHECK(tv.twists == std::vector<int>{0, 0});
}

TEST_CASE("monodromy computation is deterministic") {
  RelativeTrisectionDiagram rd = planar_rp2_complement();
  std::string t1, t2;
  TwistVector a = monodromy_twist_vector(rd, &t1);
  TwistVector b = monodromy_twist_vector(rd, &t2);
  CHECK(a.twists == b.twists);
  CHECK(a.labels == b.labels);
  CHECK(t1 == t2);
}
