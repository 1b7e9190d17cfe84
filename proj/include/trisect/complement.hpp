#pragma once

// Complement of a drawn surface.
//
// A shadow diagram presents a closed surface S sitting over the base
// trisection diagram.  When the drawn surface is connected (c = 1), the
// four-manifold outside a neighborhood of S carries a relative trisection
// whose diagram is produced here by pure surface surgery:
//
//   1. delete an open disk around every bridge point;
//   2. for every used arc, draw the curve encircling a neighborhood of the
//      arc together with its two end holes;
//   3. split each hole circle so every arc end rides its own boundary edge;
//   4. attach one orientation-preserving band along each used arc;
//   5. close every used arc through the core of its band; the closure and
//      the encircling curve of step 2 join the closed-curve family matching
//      the arc's family;
//   6. discard the arcs and validate the result as a relative trisection.
//
// A selection names, per arc family, the arcs that receive bands ("used").
// Exactly one arc per family stays unused.  The automatic modes enumerate
// the candidate selections in lexicographic order, simulate each, and keep
// the first whose complement validates.  The protected-bridge-point mode
// reserves one bridge point no used arc may touch; its hole survives as a
// band-free boundary circle (a meridian of S) and the page comes out planar.

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trisect/curve_ops.hpp"
#include "trisect/diagrams.hpp"
#include "trisect/errors.hpp"
#include "trisect/surgery.hpp"

namespace trisect {

// Arcs chosen to receive bands, listed per family in the order s_alpha,
// s_beta, s_gamma.  `protected_bridge_point`, when set, names a bridge
// point no used arc touches.
struct ArcSelection {
  std::array<std::vector<std::string>, 3> used;
  std::optional<std::string> protected_bridge_point;
};

enum class SelectionMode {
  AutoP0B3,  // protect a bridge point; the page of the result is planar
  AutoAny,   // any selection whose complement validates
};

struct PredictedParameters {
  int g = 0;
  int k = 0;
  int p = 0;
  int b = 0;
};

// Parameter bookkeeping for the complement of a drawn closed surface of
// Euler characteristic `chi` over a (g, k) base.  Given the intended page
// (p_out, b_out), the result satisfies
//
//   k' = k + 3 - chi,   g' = (12 + 2g - 5 chi - b') / 2,
//
// subject to the page constraint 2 p' + b' = 4 - chi; the numerator of g'
// must be even.
inline PredictedParameters predicted_parameters(int g, int k, int chi,
                                                int b_out, int p_out) {
  if (b_out < 1 || p_out < 0)
    throw validation_error(
        "page constraint violated: need b' >= 1 and p' >= 0, got b' = " +
        std::to_string(b_out) + ", p' = " + std::to_string(p_out));
  int num = 12 + 2 * g - 5 * chi - b_out;
  if (num % 2 != 0)
    throw validation_error("parity error: 12 + 2g - 5 chi - b' = " +
                           std::to_string(num) + " is odd");
  if (2 * p_out + b_out != 4 - chi)
    throw validation_error("page constraint violated: 2 p' + b' = " +
                           std::to_string(2 * p_out + b_out) +
                           " but 4 - chi = " + std::to_string(4 - chi));
  PredictedParameters out;
  out.g = num / 2;
  out.k = k + 3 - chi;
  out.p = p_out;
  out.b = b_out;
  if (out.g < out.p)
    throw validation_error("page constraint violated: genus " +
                           std::to_string(out.g) + " below page genus " +
                           std::to_string(out.p));
  return out;
}

namespace cdetail {

inline ShadowDiagram validated_shadow(const ShadowDiagram& sd) {
  ShadowDiagram v = sd;
  if (!v.validated) {
    Report r = validate_shadow(v);
    if (!r.passed)
      throw validation_error("shadow diagram failed validation:\n" + r.text());
  }
  return v;
}

inline void require_connected_surface(const ShadowDiagram& sd) {
  if (sd.c != 1)
    throw unsupported(
        "complement construction requires c = 1 (drawn surface has c = " +
        std::to_string(sd.c) + ")");
}

// Names of one family's arcs, sorted.
inline std::vector<std::string> family_arc_names(const Drawing& d, int fam) {
  std::vector<std::string> out;
  for (const Curve& c : d.curves())
    if (c.family == kArcFamilyNames[fam]) out.push_back(c.name);
  std::sort(out.begin(), out.end());
  return out;
}

inline bool arc_touches_mark(const Curve& arc, const std::string& mark) {
  for (const Chord& ch : arc.chords)
    for (const End* e : {&ch.a, &ch.b})
      if (e->at_mark && e->mark == mark) return true;
  return false;
}

inline bool is_arc_family(const std::string& family) {
  for (const char* f : kArcFamilyNames)
    if (family == f) return true;
  return false;
}

// Structural checks on a selection; build_complement runs them before any
// surgery.
inline void check_selection(const ShadowDiagram& sd, const ArcSelection& sel) {
  const Drawing& d = sd.drawing;
  for (int i = 0; i < 3; ++i) {
    std::vector<std::string> names = family_arc_names(d, i);
    std::set<std::string> all(names.begin(), names.end());
    std::set<std::string> used(sel.used[i].begin(), sel.used[i].end());
    if (used.size() != sel.used[i].size())
      throw validation_error(
          std::string("selection invalid: duplicate used arc in ") +
          kArcFamilyNames[i]);
    for (const std::string& u : sel.used[i])
      if (!all.count(u))
        throw validation_error("selection invalid: no arc named " + u +
                               " in " + kArcFamilyNames[i]);
    if (used.size() + 1 != all.size())
      throw validation_error(
          std::string("selection invalid: ") + kArcFamilyNames[i] +
          " must leave exactly one arc unused (family has " +
          std::to_string(all.size()) + " arcs, " +
          std::to_string(used.size()) + " used)");
  }
  if (sel.protected_bridge_point) {
    const std::string& m = *sel.protected_bridge_point;
    if (!d.surface().marks().count(m)) throw unknown_mark(m);
    for (int i = 0; i < 3; ++i)
      for (const std::string& u : sel.used[i]) {
        const Curve& arc = d.curve(*d.find_curve(kArcFamilyNames[i], u));
        if (arc_touches_mark(arc, m))
          throw validation_error("selection invalid: used arc " + u +
                                 " touches protected bridge point " + m);
      }
  }
}

}  // namespace cdetail

// Build the relative trisection diagram of the complement of the drawn
// surface.  The shadow must have a connected drawn surface (c = 1) and the
// selection must leave exactly one arc per family unused.  Boundary labels
// on the result record which hole survives from which bridge point; a
// protected bridge point keeps its own band-free circle.
inline RelativeTrisectionDiagram build_complement(const ShadowDiagram& shadow,
                                                  const ArcSelection& sel) {
  ShadowDiagram sd = cdetail::validated_shadow(shadow);
  cdetail::require_connected_surface(sd);
  cdetail::check_selection(sd, sel);

  Drawing d = sd.drawing;

  // Delete an open disk around every bridge point.  Arc ends move onto the
  // new hole circles; each hole keeps its bridge point's name as a label.
  std::vector<std::string> marks;
  for (const auto& [m, f] : d.surface().marks()) marks.push_back(m);
  for (const std::string& m : marks) d = delete_marked_disk(d, m);

  // The used arcs, in family order then name order.
  struct UsedArc {
    int fam = 0;
    std::string name;
    std::string band;
  };
  std::vector<UsedArc> used;
  for (int i = 0; i < 3; ++i) {
    std::vector<std::string> names = sel.used[i];
    std::sort(names.begin(), names.end());
    for (const std::string& n : names)
      used.push_back({i, n, std::string("band.") + kFamilyNames[i] + "." + n});
  }

  // Encircle every used arc before the holes are split: the curve runs
  // along the arc and hugs both of its end holes.
  for (const UsedArc& ua : used) {
    int ci = *d.find_curve(kArcFamilyNames[ua.fam], ua.name);
    Curve nb = regular_neighborhood_boundary(d, d.curve(ci), true);
    nb.family = kFamilyNames[ua.fam];
    d.add_curve(std::move(nb));
  }

  // Split every hole circle so each arc end rides its own boundary edge;
  // bands attach along whole edges.
  for (const std::string& m : marks) {
    int hole = d.surface().boundary_labels().at(m);
    int n = d.num_points_on_edge(hole);
    if (n >= 2) {
      std::vector<int> cuts;
      for (int c = 1; c < n; ++c) cuts.push_back(c);
      d = split_boundary_slot(d, hole, cuts);
    }
  }

  // Feet of each band: the hole edges carrying the arc's two ends.
  std::vector<std::pair<int, int>> feet;
  std::set<int> all_feet;
  for (const UsedArc& ua : used) {
    const Curve& arc =
        d.curve(*d.find_curve(kArcFamilyNames[ua.fam], ua.name));
    int f0 = arc.chords.front().a.slot;
    int f1 = arc.chords.back().b.slot;
    feet.push_back({f0, f1});
    all_feet.insert(f0);
    all_feet.insert(f1);
  }

  // Keep each hole's label on a band-free edge of its circle when one
  // exists; a fully banded hole loses its label.
  {
    CombSurface& s = d.surface_mutable();
    const std::map<std::string, int> labels = s.boundary_labels();
    for (const auto& [label, sl] : labels) {
      if (!all_feet.count(sl)) continue;
      int repl = -1;
      for (const auto& circle : s.boundary_circles()) {
        if (std::find(circle.begin(), circle.end(), sl) == circle.end())
          continue;
        for (int cand : circle)
          if (!all_feet.count(cand) && (repl == -1 || cand < repl)) repl = cand;
        break;
      }
      s.remove_boundary_label(label);
      if (repl != -1) s.add_boundary_label(label, repl);
    }
  }

  // Attach one orientation-preserving band per used arc.
  for (size_t i = 0; i < used.size(); ++i)
    d = attach_band(d, feet[i].first, feet[i].second, used[i].band);

  // Close every used arc through the core of its band.
  std::vector<Curve> closures;
  for (const UsedArc& ua : used) {
    const Curve& arc =
        d.curve(*d.find_curve(kArcFamilyNames[ua.fam], ua.name));
    Curve cc = band_core_closure(d, arc, ua.band);
    cc.family = kFamilyNames[ua.fam];
    cc.name = ua.name + ".core";
    closures.push_back(std::move(cc));
  }

  // Drop the arcs.  Unused arcs give up their strand points; used arcs hand
  // theirs to the closures, so only their curve records go.
  {
    std::vector<int> unused_idx;
    for (int i = 0; i < d.num_curves(); ++i) {
      const Curve& c = d.curve(i);
      if (!cdetail::is_arc_family(c.family)) continue;
      bool is_used = false;
      for (const UsedArc& ua : used)
        is_used |= (c.family == kArcFamilyNames[ua.fam] && c.name == ua.name);
      if (!is_used) unused_idx.push_back(i);
    }
    d.remove_curves(std::move(unused_idx));
  }

  Drawing res(d.surface());
  res.reserve_points(d.peek_next_point());
  for (const auto& [rep, pts] : d.edge_tables()) res.set_edge_table(rep, pts);
  for (const Curve& c : d.curves())
    if (!cdetail::is_arc_family(c.family)) res.add_curve(c);
  for (Curve& cc : closures) res.add_curve(std::move(cc));
  res.check_integrity();

  RelativeTrisectionDiagram rd;
  rd.drawing = std::move(res);
  Report r = validate_relative(rd);
  if (!r.passed)
    throw validation_error("complement failed validation:\n" + r.text());
  return rd;
}

// Validate an explicitly given selection: structural checks plus a full
// simulation of the build.  Returns the selection unchanged on success.
inline ArcSelection select_arcs(const ShadowDiagram& shadow,
                                const ArcSelection& sel) {
  ShadowDiagram sd = cdetail::validated_shadow(shadow);
  cdetail::require_connected_surface(sd);
  cdetail::check_selection(sd, sel);
  build_complement(sd, sel);
  return sel;
}

// Search for a selection automatically.  Candidates are enumerated in
// lexicographic order (by protected bridge point, or by the names of the
// arcs left unused), each candidate's complement is built and validated,
// and the first success wins.
inline ArcSelection select_arcs(const ShadowDiagram& shadow,
                                SelectionMode mode) {
  ShadowDiagram sd = cdetail::validated_shadow(shadow);
  cdetail::require_connected_surface(sd);
  const Drawing& d = sd.drawing;
  std::array<std::vector<std::string>, 3> names;
  for (int i = 0; i < 3; ++i) names[i] = cdetail::family_arc_names(d, i);

  std::ostringstream log;
  auto try_candidate = [&](const ArcSelection& cand,
                           const std::string& desc) -> bool {
    try {
      RelativeTrisectionDiagram rd = build_complement(sd, cand);
      if (mode == SelectionMode::AutoP0B3 && rd.p != 0) {
        log << "  " << desc << ": page not planar (p = " << rd.p << ")\n";
        return false;
      }
      return true;
    } catch (const Error& e) {
      log << "  " << desc << ": " << e.what() << "\n";
      return false;
    }
  };

  if (mode == SelectionMode::AutoP0B3) {
    for (const auto& [m, f] : d.surface().marks()) {
      ArcSelection cand;
      cand.protected_bridge_point = m;
      bool ok = true;
      for (int i = 0; i < 3; ++i) {
        for (const std::string& n : names[i]) {
          const Curve& arc = d.curve(*d.find_curve(kArcFamilyNames[i], n));
          if (!cdetail::arc_touches_mark(arc, m)) cand.used[i].push_back(n);
        }
        if (cand.used[i].size() + 1 != names[i].size()) ok = false;
      }
      if (!ok) {
        log << "  protect " << m
            << ": bridge point not touched by exactly one arc per family\n";
        continue;
      }
      if (try_candidate(cand, "protect " + m)) return cand;
    }
  } else {
    for (const std::string& u0 : names[0])
      for (const std::string& u1 : names[1])
        for (const std::string& u2 : names[2]) {
          ArcSelection cand;
          const std::string* unused[3] = {&u0, &u1, &u2};
          for (int i = 0; i < 3; ++i)
            for (const std::string& n : names[i])
              if (n != *unused[i]) cand.used[i].push_back(n);
          if (try_candidate(cand, "leave " + u0 + "|" + u1 + "|" + u2))
            return cand;
        }
  }
  throw validation_error("no valid selection: every candidate failed\n" +
                         log.str());
}

}  // namespace trisect
