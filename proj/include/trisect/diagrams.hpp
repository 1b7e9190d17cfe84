#pragma once

// The three diagram kinds and their validators.
//
//  * TrisectionDiagram — closed surface of genus g with three cut systems
//    (families "alpha", "beta", "gamma" of g closed curves each).
//  * RelativeTrisectionDiagram — surface with boundary; families of g-p
//    closed curves compressing it to a page of genus p with b boundary circles.
//  * ShadowDiagram — a closed diagram together with 2b marked bridge points
//    and three families of b arcs ("s_alpha", "s_beta", "s_gamma").
//
// Validators are report-valued (they never throw on a mere failure) and all
// parameter values are derived from the combinatorics; declared values in
// input files are cross-checked, never trusted.  The handlebody conditions
// are checked homologically only, and reports say so.

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "trisect/abelian.hpp"
#include "trisect/homology.hpp"
#include "trisect/smith.hpp"
#include "trisect/surgery.hpp"

namespace trisect {

inline constexpr const char* kFamilyNames[3] = {"alpha", "beta", "gamma"};
inline constexpr const char* kArcFamilyNames[3] = {"s_alpha", "s_beta", "s_gamma"};

struct Report {
  bool passed = true;
  std::vector<std::string> lines;

  void check(bool ok, const std::string& what) {
    lines.push_back((ok ? "ok: " : "FAIL: ") + what);
    if (!ok) passed = false;
  }
  void fail(const std::string& what) { check(false, what); }
  void note(const std::string& what) { lines.push_back("note: " + what); }
  void merge(const std::string& prefix, const Report& r) {
    for (const auto& l : r.lines) lines.push_back(prefix + l);
    if (!r.passed) passed = false;
  }
  std::string text() const {
    std::string out;
    for (const auto& l : lines) {
      out += l;
      out += '\n';
    }
    out += passed ? "result: pass\n" : "result: fail\n";
    return out;
  }
};

struct TrisectionDiagram {
  Drawing drawing;
  int g = -1;
  int k = -1;
  bool validated = false;
};

struct RelativeTrisectionDiagram {
  Drawing drawing;
  int g = -1;
  int k = -1;
  int p = -1;
  int b = -1;
  bool validated = false;
};

struct ShadowDiagram {
  Drawing drawing;  // base families plus marks plus arc families
  int g = -1;
  int k = -1;
  int c = -1;
  int b = -1;
  std::optional<int> euler_number;
  bool validated = false;
};

namespace detail {

// Copy of the drawing keeping only the named family's curves.
inline Drawing only_family(const Drawing& d, const std::string& family) {
  Drawing out = d;
  std::vector<int> drop;
  for (int i = 0; i < out.num_curves(); ++i)
    if (out.curve(i).family != family) drop.push_back(i);
  out.remove_curves(drop);
  return out;
}

struct PairK {
  bool clean = false;  // SNF is diag(1,...,1,0,...,0)
  int rank = 0;
  std::string factors;
};

inline PairK family_pair_rank(const Drawing& d, const std::vector<int>& fa,
                              const std::vector<int>& fb) {
  PairK out;
  int n = static_cast<int>(fa.size());
  int m = static_cast<int>(fb.size());
  if (n == 0 || m == 0) {
    out.clean = true;
    out.rank = 0;
    out.factors = "()";
    return out;
  }
  IMat J(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      J.at(i, j) = d.algebraic_intersection(d.curve(fa[i]), d.curve(fb[j]));
  SNFResult snf = smith_normal_form(J);
  out.rank = snf.rank;
  out.clean = true;
  out.factors = "(";
  for (int i = 0; i < snf.rank; ++i) {
    if (snf.invariant_factors[i] != 1) out.clean = false;
    if (i) out.factors += ",";
    out.factors += snf.invariant_factors[i].str();
  }
  out.factors += ")";
  return out;
}

}  // namespace detail

// A family is a cut system for (p, b): pairwise-disjoint embedded closed
// curves, g-p of them, whose cut yields one genus-p component with
// b + 2(g-p) boundary circles.
inline Report validate_cut_system(const Drawing& d, const std::string& family,
                                  int p, int b) {
  Report r;
  SurfaceClass sc;
  try {
    sc = d.surface().classify();
  } catch (const Error& e) {
    r.fail(std::string("surface classification: ") + e.what());
    return r;
  }
  r.check(sc.components == 1, "surface is connected");
  r.check(sc.orientable, "surface is orientable");
  r.check(sc.boundary_count == b,
          family + ": surface has " + std::to_string(b) + " boundary circles (found " +
              std::to_string(sc.boundary_count) + ")");
  int g = sc.genus;
  auto members = d.family_members(family);
  int want = g - p;
  r.check(static_cast<int>(members.size()) == want,
          family + ": " + std::to_string(want) + " curves (found " +
              std::to_string(members.size()) + ")");
  bool shape_ok = true;
  for (int i : members) {
    const Curve& c = d.curve(i);
    if (!c.closed) {
      r.fail(family + "/" + c.name + ": curve is not closed");
      shape_ok = false;
      continue;
    }
    try {
      d.check_curve(c);
    } catch (const Error& e) {
      r.fail(family + "/" + c.name + ": " + e.what());
      shape_ok = false;
      continue;
    }
    if (!d.is_embedded(c)) {
      r.fail(family + "/" + c.name + ": curve is not embedded");
      shape_ok = false;
    }
  }
  for (size_t i = 0; i < members.size() && shape_ok; ++i)
    for (size_t j = i + 1; j < members.size(); ++j) {
      int x = d.geometric_crossings(d.curve(members[i]), d.curve(members[j]));
      if (x != 0) {
        r.fail(family + ": curves " + d.curve(members[i]).name + " and " +
               d.curve(members[j]).name + " intersect");
        shape_ok = false;
      }
    }
  if (!r.passed) return r;

  try {
    Drawing stripped = detail::only_family(d, family);
    std::vector<int> all(stripped.num_curves());
    for (int i = 0; i < stripped.num_curves(); ++i) all[i] = i;
    CutResult res = cut_along_system(stripped, all);
    SurfaceClass cut = res.drawing.surface().classify();
    r.check(cut.components == 1, family + ": cut surface is connected");
    r.check(cut.genus == p,
            family + ": cut surface has genus " + std::to_string(p) + " (found " +
                std::to_string(cut.genus) + ")");
    int want_bd = b + 2 * (g - p);
    r.check(cut.boundary_count == want_bd,
            family + ": cut surface has " + std::to_string(want_bd) +
                " boundary circles (found " + std::to_string(cut.boundary_count) + ")");
  } catch (const Error& e) {
    r.fail(family + ": cutting failed: " + std::string(e.what()));
  }
  return r;
}

// Closed trisection diagram validator; on pass, fills in (g, k).
inline Report validate_trisection(TrisectionDiagram& d) {
  Report r;
  const Drawing& dr = d.drawing;
  SurfaceClass sc;
  try {
    sc = dr.surface().classify();
  } catch (const Error& e) {
    r.fail(std::string("surface classification: ") + e.what());
    return r;
  }
  r.check(sc.components == 1, "surface is connected");
  r.check(sc.boundary_count == 0, "surface is closed");
  r.check(sc.orientable, "surface is orientable");
  if (!r.passed) return r;
  int g = sc.genus;
  r.note("genus " + std::to_string(g));
  for (const char* fam : kFamilyNames) r.merge("", validate_cut_system(dr, fam, 0, 0));
  if (!r.passed) return r;

  // Homological handlebody condition per pair: the g x g intersection matrix
  // must smith-reduce to diag(1,...,1,0,...,0); k = g - (number of ones).
  int k = -1;
  for (int i = 0; i < 3; ++i) {
    const char* fa = kFamilyNames[i];
    const char* fb = kFamilyNames[(i + 1) % 3];
    detail::PairK pk = detail::family_pair_rank(dr, dr.family_members(fa),
                                                dr.family_members(fb));
    r.check(pk.clean, std::string(fa) + "/" + fb +
                          ": intersection matrix reduces to ones and zeros " +
                          pk.factors);
    int ki = g - pk.rank;
    r.note(std::string(fa) + "/" + fb + ": k = " + std::to_string(ki));
    if (k == -1) k = ki;
    else if (k != ki)
      r.fail("sector k values disagree");
  }
  r.note("handlebody conditions checked homologically (necessary conditions only)");
  if (r.passed) {
    d.g = g;
    d.k = k;
    d.validated = true;
  }
  return r;
}

// Relative trisection diagram validator; on pass, fills in (g, k, p, b).
inline Report validate_relative(RelativeTrisectionDiagram& d) {
  Report r;
  const Drawing& dr = d.drawing;
  SurfaceClass sc;
  try {
    sc = dr.surface().classify();
  } catch (const Error& e) {
    r.fail(std::string("surface classification: ") + e.what());
    return r;
  }
  r.check(sc.components == 1, "surface is connected");
  r.check(sc.orientable, "surface is orientable");
  r.check(sc.boundary_count > 0, "surface has boundary");
  if (!r.passed) return r;
  int g = sc.genus;
  int b = sc.boundary_count;
  r.note("genus " + std::to_string(g) + ", boundary circles " + std::to_string(b));

  // Page genus from each family; all three must agree.
  int p = -1;
  bool pages_ok = true;
  for (const char* fam : kFamilyNames) {
    auto members = dr.family_members(fam);
    int pf = g - static_cast<int>(members.size());
    Report rf = validate_cut_system(dr, fam, pf, b);
    r.merge("", rf);
    if (!rf.passed) {
      pages_ok = false;
      continue;
    }
    if (p == -1) p = pf;
    else if (p != pf) {
      r.fail(std::string("inconsistent pages: ") + fam + " gives p = " +
             std::to_string(pf) + ", expected " + std::to_string(p));
      pages_ok = false;
    }
  }
  if (!pages_ok || !r.passed) return r;
  r.note("page genus " + std::to_string(p));

  int k = -1;
  for (int i = 0; i < 3; ++i) {
    const char* fa = kFamilyNames[i];
    const char* fb = kFamilyNames[(i + 1) % 3];
    detail::PairK pk = detail::family_pair_rank(dr, dr.family_members(fa),
                                                dr.family_members(fb));
    r.check(pk.clean, std::string(fa) + "/" + fb +
                          ": intersection matrix reduces to ones and zeros " +
                          pk.factors);
    int ki = g + p + b - 1 - pk.rank;
    r.note(std::string(fa) + "/" + fb + ": k = " + std::to_string(ki));
    if (k == -1) k = ki;
    else if (k != ki)
      r.fail("sector k values disagree");
  }
  if (k >= 0)
    r.check(k - 2 * p - b + 1 >= 0,
            "3-handle count k-2p-b+1 is non-negative (k=" + std::to_string(k) + ")");
  r.note("handlebody conditions checked homologically (necessary conditions only)");
  if (r.passed) {
    d.g = g;
    d.k = k;
    d.p = p;
    d.b = b;
    d.validated = true;
  }
  return r;
}

// Shadow diagram validator; on pass, fills in (g, kid, c, b) where (g,k) come
// from the base trisection and (c,b) are the bridge parameters.
inline Report validate_shadow(ShadowDiagram& d) {
  Report r;
  // The base trisection ignores the bridge data: strip arcs and bridge
  // points before validating it.
  TrisectionDiagram base;
  base.drawing = d.drawing;
  {
    std::vector<int> arcs;
    for (int i = 0; i < base.drawing.num_curves(); ++i) {
      const std::string& f = base.drawing.curve(i).family;
      if (f == kArcFamilyNames[0] || f == kArcFamilyNames[1] || f == kArcFamilyNames[2])
        arcs.push_back(i);
    }
    base.drawing.remove_curves(arcs);
    std::vector<std::string> mark_names;
    for (const auto& [m, f] : base.drawing.surface().marks()) mark_names.push_back(m);
    for (const auto& m : mark_names) base.drawing.surface_mutable().remove_mark(m);
  }
  r.merge("base ", validate_trisection(base));
  if (!r.passed) return r;

  const Drawing& dr = d.drawing;
  const auto& marks = dr.surface().marks();
  int nmarks = static_cast<int>(marks.size());
  r.check(nmarks > 0 && nmarks % 2 == 0,
          "bridge points come in pairs (found " + std::to_string(nmarks) + ")");
  if (!r.passed) return r;
  int b = nmarks / 2;

  // Arc families: b arcs each, endpoints covering every bridge point once.
  bool arcs_ok = true;
  for (const char* fam : kArcFamilyNames) {
    auto members = dr.family_members(fam);
    r.check(static_cast<int>(members.size()) == b,
            std::string(fam) + ": " + std::to_string(b) + " arcs (found " +
                std::to_string(members.size()) + ")");
    std::map<std::string, int> uses;
    for (int i : members) {
      const Curve& c = dr.curve(i);
      if (c.closed) {
        r.fail(std::string(fam) + "/" + c.name + ": expected an arc");
        arcs_ok = false;
        continue;
      }
      try {
        dr.check_curve(c);
      } catch (const Error& e) {
        r.fail(std::string(fam) + "/" + c.name + ": " + e.what());
        arcs_ok = false;
        continue;
      }
      const End& h = c.chords.front().a;
      const End& t = c.chords.back().b;
      if (!h.at_mark || !t.at_mark) {
        r.fail(std::string(fam) + "/" + c.name + ": arc ends must be bridge points");
        arcs_ok = false;
        continue;
      }
      uses[h.mark] += 1;
      uses[t.mark] += 1;
      if (!dr.is_embedded(c)) {
        r.fail(std::string(fam) + "/" + c.name + ": arc is not embedded");
        arcs_ok = false;
      }
    }
    if (static_cast<int>(members.size()) == b && arcs_ok) {
      bool cover = static_cast<int>(uses.size()) == nmarks;
      for (auto& [m, n] : uses)
        if (n != 1) cover = false;
      r.check(cover, std::string(fam) + ": arc endpoints cover each bridge point once");
    }
    for (size_t i = 0; i < members.size(); ++i)
      for (size_t j = i + 1; j < members.size(); ++j) {
        int x = dr.geometric_crossings(dr.curve(members[i]), dr.curve(members[j]));
        if (x != 0) {
          r.fail(std::string(fam) + ": arcs " + dr.curve(members[i]).name + " and " +
                 dr.curve(members[j]).name + " intersect");
          arcs_ok = false;
        }
      }
  }
  if (!r.passed) return r;

  // Loop counts: the union of two arc families is a 2-regular graph on the
  // bridge points; all three pairings must close up into the same number of
  // loops.
  auto loops = [&](const char* fa, const char* fb) {
    std::map<std::string, std::vector<std::string>> adj;
    for (const char* fam : {fa, fb})
      for (int i : dr.family_members(fam)) {
        const Curve& c = dr.curve(i);
        const std::string& u = c.chords.front().a.mark;
        const std::string& v = c.chords.back().b.mark;
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
    std::set<std::string> seen;
    int n = 0;
    for (auto& [m, _] : adj) {
      if (seen.count(m)) continue;
      ++n;
      // walk the component
      std::vector<std::string> stack{m};
      seen.insert(m);
      while (!stack.empty()) {
        std::string u = stack.back();
        stack.pop_back();
        for (const auto& v : adj[u])
          if (seen.insert(v).second) stack.push_back(v);
      }
    }
    return n;
  };
  int c01 = loops(kArcFamilyNames[0], kArcFamilyNames[1]);
  int c12 = loops(kArcFamilyNames[1], kArcFamilyNames[2]);
  int c20 = loops(kArcFamilyNames[2], kArcFamilyNames[0]);
  r.check(c01 == c12 && c12 == c20,
          "all three tangle unions close into the same number of loops (" +
              std::to_string(c01) + "," + std::to_string(c12) + "," +
              std::to_string(c20) + ")");
  if (!r.passed) return r;
  int c = c01;
  r.note("bridge parameters (c,b) = (" + std::to_string(c) + "," + std::to_string(b) +
         "), surface euler characteristic 3c-b = " + std::to_string(3 * c - b));
  if (c != 1) r.note("complement construction requires c = 1");

  d.g = base.g;
  d.k = base.k;
  d.c = c;
  d.b = b;
  d.validated = true;
  return r;
}

// --- parameter accessors (validated diagrams only) ---

inline std::pair<int, int> parameters(const TrisectionDiagram& d) {
  if (!d.validated) throw validation_error("diagram not validated");
  return {d.g, d.k};
}
inline std::array<int, 4> parameters(const RelativeTrisectionDiagram& d) {
  if (!d.validated) throw validation_error("diagram not validated");
  return {d.g, d.k, d.p, d.b};
}
inline std::array<int, 4> parameters(const ShadowDiagram& d) {
  if (!d.validated) throw validation_error("diagram not validated");
  return {d.g, d.k, d.c, d.b};
}

}  // namespace trisect
