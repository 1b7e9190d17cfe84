#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "trisect/abelian.hpp"
#include "trisect/smith.hpp"

using namespace trisect;

namespace {

// Independent oracle: the k-th determinantal divisor d_k is the gcd of all
// k x k minors, and the k-th invariant factor is d_k / d_{k-1}.  This route
// never performs a row or column operation, so it shares no code path with
// the production reduction.
std::vector<Int> invariant_factors_by_minors(const IMat& m) {
  int n = std::min(m.rows, m.cols);
  std::vector<Int> dets{1};  // d_0 = 1
  for (int k = 1; k <= n; ++k) {
    Int g = 0;
    std::vector<int> rs(k), cs(k);
    for (int i = 0; i < k; ++i) rs[i] = i;
    bool more_rows = true;
    while (more_rows) {
      for (int i = 0; i < k; ++i) cs[i] = i;
      bool more_cols = true;
      while (more_cols) {
        IMat sub(k, k);
        for (int r = 0; r < k; ++r)
          for (int c = 0; c < k; ++c) sub.at(r, c) = m.at(rs[r], cs[c]);
        g = int_gcd(g, mat_det(sub));
        // next column combination
        int i = k - 1;
        while (i >= 0 && cs[i] == m.cols - k + i) --i;
        if (i < 0) more_cols = false;
        else { ++cs[i]; for (int j = i + 1; j < k; ++j) cs[j] = cs[j - 1] + 1; }
      }
      int i = k - 1;
      while (i >= 0 && rs[i] == m.rows - k + i) --i;
      if (i < 0) more_rows = false;
      else { ++rs[i]; for (int j = i + 1; j < k; ++j) rs[j] = rs[j - 1] + 1; }
    }
    if (g == 0) break;  // rank reached
    dets.push_back(g);
  }
  std::vector<Int> factors;
  for (size_t k = 1; k < dets.size(); ++k) factors.push_back(dets[k] / dets[k - 1]);
  return factors;
}

void check_snf_contract(const IMat& a) {
  SNFResult f = smith_normal_form(a);
  // S = U A V exactly.
  REQUIRE(mat_mul(mat_mul(f.u, a), f.v) == f.s);
  // U, V unimodular.
  REQUIRE(int_abs(mat_det(f.u)) == 1);
  REQUIRE(int_abs(mat_det(f.v)) == 1);
  // S diagonal, nonnegative, divisibility chain.
  for (int r = 0; r < f.s.rows; ++r)
    for (int c = 0; c < f.s.cols; ++c)
      if (r != c) REQUIRE(f.s.at(r, c) == 0);
  for (int i = 0; i + 1 < std::min(f.s.rows, f.s.cols); ++i) {
    const Int& x = f.s.at(i, i);
    const Int& y = f.s.at(i + 1, i + 1);
    REQUIRE(x >= 0);
    if (x == 0) REQUIRE(y == 0);
    else if (y != 0) REQUIRE(y % x == 0);
  }
  // Invariant factors agree with the minors oracle.
  REQUIRE(f.invariant_factors == invariant_factors_by_minors(a));
}

}  // namespace

TEST_CASE("smith normal form on pinned matrices") {
  IMat a(2, 2);
  a.at(0, 0) = 2; a.at(0, 1) = 4; a.at(1, 0) = 6; a.at(1, 1) = 8;
  SNFResult f = smith_normal_form(a);
  REQUIRE(f.invariant_factors == std::vector<Int>{2, 4});
  check_snf_contract(a);

  IMat z(3, 4);
  check_snf_contract(z);
  REQUIRE(smith_normal_form(z).rank == 0);

  IMat id = IMat::identity(4);
  REQUIRE(smith_normal_form(id).invariant_factors == std::vector<Int>(4, 1));

  // A matrix whose naive diagonalization breaks the divisibility chain.
  IMat b(2, 2);
  b.at(0, 0) = 2; b.at(0, 1) = 0; b.at(1, 0) = 0; b.at(1, 1) = 3;
  SNFResult g = smith_normal_form(b);
  REQUIRE(g.invariant_factors == std::vector<Int>{1, 6});
  check_snf_contract(b);
}

TEST_CASE("smith normal form vs minors oracle on random matrices") {
  std::mt19937_64 rng(20260817);
  std::uniform_int_distribution<int> dim(1, 5), entry(-9, 9);
  for (int trial = 0; trial < 60; ++trial) {
    IMat a(dim(rng), dim(rng));
    for (int r = 0; r < a.rows; ++r)
      for (int c = 0; c < a.cols; ++c) a.at(r, c) = entry(rng);
    check_snf_contract(a);
  }
}

TEST_CASE("kernel basis spans the kernel") {
  std::mt19937_64 rng(977);
  std::uniform_int_distribution<int> entry(-4, 4);
  for (int trial = 0; trial < 30; ++trial) {
    IMat a(3, 5);
    for (int r = 0; r < a.rows; ++r)
      for (int c = 0; c < a.cols; ++c) a.at(r, c) = entry(rng);
    IMat k = kernel_basis(a);
    IMat prod = mat_mul(a, k);
    for (const Int& x : prod.a) REQUIRE(x == 0);
    REQUIRE(k.cols == a.cols - smith_normal_form(a).rank);
  }
}

TEST_CASE("integer solve round trip") {
  std::mt19937_64 rng(412);
  std::uniform_int_distribution<int> entry(-5, 5);
  for (int trial = 0; trial < 30; ++trial) {
    IMat a(4, 3);
    for (int r = 0; r < a.rows; ++r)
      for (int c = 0; c < a.cols; ++c) a.at(r, c) = entry(rng);
    std::vector<Int> x0 = {entry(rng), entry(rng), entry(rng)};
    std::vector<Int> b(a.rows, 0);
    for (int r = 0; r < a.rows; ++r)
      for (int c = 0; c < a.cols; ++c) b[r] += a.at(r, c) * x0[c];
    std::vector<Int> x;
    REQUIRE(solve_integer(a, b, &x));
    std::vector<Int> b2(a.rows, 0);
    for (int r = 0; r < a.rows; ++r)
      for (int c = 0; c < a.cols; ++c) b2[r] += a.at(r, c) * x[c];
    REQUIRE(b2 == b);
  }
  // An unsolvable system: 2x = 1.
  IMat two(1, 1);
  two.at(0, 0) = 2;
  std::vector<Int> x;
  REQUIRE_FALSE(solve_integer(two, std::vector<Int>{Int(1)}, &x));
}

TEST_CASE("abelian groups from relation matrices") {
  IMat r(2, 2);
  r.at(0, 0) = 2; r.at(1, 1) = 2;
  AbelianGroup g = abelian_from_relations(r);
  REQUIRE(g.rank == 0);
  REQUIRE(g.torsion == std::vector<Int>{2, 2});
  REQUIRE(g.to_string() == "Z/2 + Z/2");
  REQUIRE(g.torsion_order() == 4);

  IMat zero(0, 3);
  REQUIRE(abelian_from_relations(zero).to_string() == "Z^3");

  IMat one(1, 1);
  one.at(0, 0) = 1;
  REQUIRE(abelian_from_relations(one).to_string() == "0");

  IMat m(2, 3);
  m.at(0, 0) = 2; m.at(0, 1) = 4; m.at(0, 2) = 6;
  m.at(1, 0) = 0; m.at(1, 1) = 6; m.at(1, 2) = 6;
  AbelianGroup h = abelian_from_relations(m);
  REQUIRE(h.rank == 1);
}
