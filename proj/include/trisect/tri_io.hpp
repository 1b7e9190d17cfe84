#pragma once

// Plain-text file format for drawings.
//
//   TRI 1
//   FACE <name> <slot-count>
//   GLUE <face>.<slot> <face>.<slot>
//   MARK <name> IN <face>
//   CURVE <family> <name> : <chord>{,<chord>}
//   ARC <family> <name> : <chord>{,<chord>}
//   META <key> <value>
//
// with  chord := <face>[<end>-><end>]  and  end := <slot>.<order> | MARK <name>.
// Slots are local to their face; <order> counts strand points along the slot
// in the slot's own direction.  Face names may contain dots; the slot number
// starts after the last dot.  Boundary labels travel as META boundary.<name>
// entries.  Blank lines and lines starting with '#' are ignored.
//
// Serialization is canonical: faces, marks, curves and META keys are written
// in sorted order, so writing, parsing and writing again reproduces the same
// bytes.

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "trisect/diagrams.hpp"

namespace trisect {

struct TriFile {
  Drawing drawing;
  std::map<std::string, std::string> meta;
};

namespace tri_detail {

inline bool valid_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '.' &&
        c != '-' && c != '+')
      return false;
  return true;
}

inline Error at_line(int line, const std::string& msg) {
  return parse_error("line " + std::to_string(line) + ": " + msg);
}

inline int parse_count(const std::string& tok, const char* what, int line) {
  if (tok.empty() || tok.size() > 9) throw at_line(line, std::string("bad ") + what);
  for (char c : tok)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw at_line(line, std::string("bad ") + what + ": " + tok);
  return std::stoi(tok);
}

// "<face>.<slot>" with the split at the last dot.
inline std::pair<std::string, int> parse_slot_ref(const std::string& tok, int line) {
  auto dot = tok.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == tok.size())
    throw at_line(line, "expected <face>.<slot>: " + tok);
  return {tok.substr(0, dot), parse_count(tok.substr(dot + 1), "slot number", line)};
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

inline std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct PendingEnd {
  bool at_mark = false;
  std::string mark;
  int slot = -1;   // global slot
  int order = -1;  // strand index along that slot side
};

struct PendingChord {
  int face = -1;
  PendingEnd a, b;
};

struct PendingCurve {
  std::string family, name;
  bool closed = true;
  std::vector<PendingChord> chords;
  int line = 0;
};

}  // namespace tri_detail

inline TriFile parse_tri(const std::string& text) {
  using namespace tri_detail;
  struct PendingLabel {
    std::string name, ref;
    int line;
  };
  CombSurface surf;
  std::map<std::string, std::string> meta;
  std::vector<PendingLabel> labels;
  std::vector<PendingCurve> pending;
  std::map<int, std::map<int, int>> refs;  // slot -> order -> use count
  std::set<std::pair<std::string, std::string>> curve_keys;
  bool saw_version = false;
  int lineno = 0;

  std::istringstream is(text);
  std::string raw;
  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = trim(raw);
    if (line.empty() || line[0] == '#') continue;
    if (!saw_version) {
      if (line != "TRI 1") throw at_line(lineno, "expected header TRI 1");
      saw_version = true;
      continue;
    }
    auto tok = split_ws(line);
    const std::string& kw = tok[0];

    if (kw == "FACE") {
      if (tok.size() != 3) throw at_line(lineno, "expected FACE <name> <slots>");
      if (!valid_name(tok[1])) throw at_line(lineno, "bad face name: " + tok[1]);
      if (surf.has_face(tok[1])) throw at_line(lineno, "duplicate face: " + tok[1]);
      int n = parse_count(tok[2], "slot count", lineno);
      if (n <= 0) throw at_line(lineno, "face needs at least one slot");
      surf.add_face(tok[1], n);
    } else if (kw == "GLUE") {
      if (tok.size() != 3) throw at_line(lineno, "expected GLUE <face.slot> <face.slot>");
      int sl[2];
      for (int i = 0; i < 2; ++i) {
        auto [fname, local] = parse_slot_ref(tok[i + 1], lineno);
        if (!surf.has_face(fname)) throw at_line(lineno, "unknown face: " + fname);
        int fi = surf.face_index(fname);
        if (local >= surf.face(fi).nslots)
          throw at_line(lineno, "slot out of range: " + tok[i + 1]);
        sl[i] = surf.slot(fi, local);
      }
      if (sl[0] == sl[1]) throw at_line(lineno, "cannot glue a slot to itself");
      if (!surf.is_boundary(sl[0]) || !surf.is_boundary(sl[1]))
        throw at_line(lineno, "slot glued twice");
      surf.glue(sl[0], sl[1]);
    } else if (kw == "MARK") {
      if (tok.size() != 4 || tok[2] != "IN")
        throw at_line(lineno, "expected MARK <name> IN <face>");
      if (!valid_name(tok[1])) throw at_line(lineno, "bad mark name: " + tok[1]);
      if (surf.has_mark(tok[1])) throw at_line(lineno, "duplicate mark: " + tok[1]);
      if (!surf.has_face(tok[3])) throw at_line(lineno, "unknown face: " + tok[3]);
      surf.add_mark(tok[1], surf.face_index(tok[3]));
    } else if (kw == "CURVE" || kw == "ARC") {
      auto colon = line.find(':');
      if (colon == std::string::npos) throw at_line(lineno, "expected ':' in curve line");
      auto head = split_ws(line.substr(0, colon));
      if (head.size() != 3)
        throw at_line(lineno, "expected " + kw + " <family> <name> :");
      if (!valid_name(head[1]) || !valid_name(head[2]))
        throw at_line(lineno, "bad family or curve name");
      if (!curve_keys.insert({head[1], head[2]}).second)
        throw at_line(lineno, "duplicate curve: " + head[1] + "/" + head[2]);
      PendingCurve pc;
      pc.family = head[1];
      pc.name = head[2];
      pc.closed = (kw == "CURVE");
      pc.line = lineno;

      std::string rest = trim(line.substr(colon + 1));
      if (rest.empty()) throw at_line(lineno, "curve has no chords");
      std::vector<std::string> chunks;
      size_t start = 0;
      while (true) {
        size_t comma = rest.find(',', start);
        chunks.push_back(trim(rest.substr(start, comma - start)));
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      for (const auto& chunk : chunks) {
        auto lb = chunk.find('[');
        if (chunk.empty() || lb == std::string::npos || lb == 0 || chunk.back() != ']')
          throw at_line(lineno, "expected <face>[<end>-><end>]: " + chunk);
        std::string fname = chunk.substr(0, lb);
        if (!surf.has_face(fname)) throw at_line(lineno, "unknown face: " + fname);
        PendingChord ch;
        ch.face = surf.face_index(fname);
        std::string inner = chunk.substr(lb + 1, chunk.size() - lb - 2);
        auto arrow = inner.find("->");
        if (arrow == std::string::npos) throw at_line(lineno, "expected '->': " + chunk);
        std::string es[2] = {trim(inner.substr(0, arrow)), trim(inner.substr(arrow + 2))};
        PendingEnd* pe[2] = {&ch.a, &ch.b};
        for (int i = 0; i < 2; ++i) {
          if (es[i].rfind("MARK ", 0) == 0) {
            pe[i]->at_mark = true;
            pe[i]->mark = trim(es[i].substr(5));
            if (!surf.has_mark(pe[i]->mark))
              throw at_line(lineno, "unknown mark: " + pe[i]->mark);
            if (surf.mark_face(pe[i]->mark) != ch.face)
              throw at_line(lineno, "mark " + pe[i]->mark + " is not in face " + fname);
          } else {
            auto dot = es[i].find('.');
            if (dot == std::string::npos)
              throw at_line(lineno, "expected <slot>.<order>: " + es[i]);
            int local = parse_count(es[i].substr(0, dot), "slot number", lineno);
            int order = parse_count(es[i].substr(dot + 1), "strand order", lineno);
            if (local >= surf.face(ch.face).nslots)
              throw at_line(lineno, "slot out of range: " + es[i]);
            pe[i]->slot = surf.slot(ch.face, local);
            pe[i]->order = order;
            refs[pe[i]->slot][order] += 1;
          }
        }
        pc.chords.push_back(ch);
      }
      pending.push_back(std::move(pc));
    } else if (kw == "META") {
      if (tok.size() < 3) throw at_line(lineno, "expected META <key> <value>");
      auto pos = line.find(tok[1], 4);
      std::string value = trim(line.substr(pos + tok[1].size()));
      if (tok[1].rfind("boundary.", 0) == 0) {
        std::string lname = tok[1].substr(9);
        if (!valid_name(lname)) throw at_line(lineno, "bad boundary label: " + lname);
        labels.push_back({lname, value, lineno});
      } else {
        if (!valid_name(tok[1])) throw at_line(lineno, "bad META key: " + tok[1]);
        if (meta.count(tok[1])) throw at_line(lineno, "duplicate META key: " + tok[1]);
        meta[tok[1]] = value;
      }
    } else {
      throw at_line(lineno, "unknown keyword: " + kw);
    }
  }
  if (!saw_version) throw parse_error("empty file: expected header TRI 1");

  for (const auto& pl : labels) {
    auto [fname, local] = parse_slot_ref(pl.ref, pl.line);
    if (!surf.has_face(fname)) throw at_line(pl.line, "unknown face: " + fname);
    int fi = surf.face_index(fname);
    if (local >= surf.face(fi).nslots)
      throw at_line(pl.line, "boundary label " + pl.name + " slot out of range");
    if (surf.boundary_labels().count(pl.name))
      throw at_line(pl.line, "duplicate boundary label: " + pl.name);
    surf.add_boundary_label(pl.name, surf.slot(fi, local));
  }
  surf.check_valid();

  TriFile out;
  out.drawing = Drawing(std::move(surf));
  out.meta = std::move(meta);
  Drawing& d = out.drawing;
  const CombSurface& s = d.surface();

  // Instantiate strand points edge by edge.  Interior edges must carry the
  // same strand count on both sides; order o on the far side is point n-1-o.
  std::map<int, std::vector<int>> pts;  // slot -> point ids in slot direction
  std::set<int> done;
  for (const auto& [sl, orders] : refs) {
    if (done.count(sl)) continue;
    int mate = s.pair_of(sl);
    int n = orders.rbegin()->first + 1;
    auto check_side = [&](const std::map<int, int>& m, int want) {
      if (static_cast<int>(m.size()) != want) return false;
      for (const auto& [o, cnt] : m)
        if (o < 0 || o >= want || cnt != 1) return false;
      return true;
    };
    if (mate != -1) {
      auto it = refs.find(mate);
      if (it == refs.end() || !check_side(orders, n) || !check_side(it->second, n))
        throw parse_error("strand orders disagree across the edge at " +
                          s.face(s.slot_face(sl)).name + "." +
                          std::to_string(s.slot_local(sl)));
      done.insert(mate);
    } else if (!check_side(orders, n)) {
      throw parse_error("strand orders must be 0..n-1 on " +
                        s.face(s.slot_face(sl)).name + "." +
                        std::to_string(s.slot_local(sl)));
    }
    done.insert(sl);
    std::vector<int> ids(n);
    for (int i = 0; i < n; ++i) ids[i] = d.insert_point_at_end(sl);
    pts[sl] = ids;
    if (mate != -1) {
      std::vector<int> rev(ids.rbegin(), ids.rend());
      pts[mate] = rev;
    }
  }

  for (const auto& pc : pending) {
    Curve c;
    c.family = pc.family;
    c.name = pc.name;
    c.closed = pc.closed;
    for (const auto& ch : pc.chords) {
      auto mk_end = [&](const PendingEnd& pe) {
        if (pe.at_mark) return End::at(pe.mark);
        return End::at_point(pts.at(pe.slot)[pe.order], pe.slot);
      };
      c.chords.push_back({ch.face, mk_end(ch.a), mk_end(ch.b)});
    }
    try {
      d.check_curve(c);
    } catch (const Error& e) {
      throw at_line(pc.line, std::string("bad curve: ") + e.what());
    }
    d.add_curve(c);
  }
  d.check_integrity();
  return out;
}

inline std::string write_tri(const Drawing& d,
                             const std::map<std::string, std::string>& meta) {
  using namespace tri_detail;
  const CombSurface& s = d.surface();
  auto ref = [&](int slot) {
    return s.face(s.slot_face(slot)).name + "." + std::to_string(s.slot_local(slot));
  };
  for (int f = 0; f < s.num_faces(); ++f)
    if (!valid_name(s.face(f).name))
      throw pipeline_error("cannot serialize face name: " + s.face(f).name);

  std::string out = "TRI 1\n";
  std::vector<int> order(s.num_faces());
  for (int i = 0; i < s.num_faces(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return s.face(a).name < s.face(b).name;
  });
  for (int f : order)
    out += "FACE " + s.face(f).name + " " + std::to_string(s.face(f).nslots) + "\n";

  std::vector<std::string> glue_lines;
  for (int sl = 0; sl < s.num_slots(); ++sl) {
    int t = s.pair_of(sl);
    if (t > sl) {
      std::string a = ref(sl), b = ref(t);
      if (b < a) std::swap(a, b);
      glue_lines.push_back("GLUE " + a + " " + b);
    }
  }
  std::sort(glue_lines.begin(), glue_lines.end());
  for (const auto& l : glue_lines) out += l + "\n";

  for (const auto& [m, f] : s.marks()) {
    if (!valid_name(m)) throw pipeline_error("cannot serialize mark name: " + m);
    out += "MARK " + m + " IN " + s.face(f).name + "\n";
  }

  std::vector<int> corder(d.num_curves());
  for (int i = 0; i < d.num_curves(); ++i) corder[i] = i;
  std::sort(corder.begin(), corder.end(), [&](int a, int b) {
    const Curve& ca = d.curve(a);
    const Curve& cb = d.curve(b);
    return std::tie(ca.family, ca.name) < std::tie(cb.family, cb.name);
  });
  for (size_t i = 1; i < corder.size(); ++i) {
    const Curve& ca = d.curve(corder[i - 1]);
    const Curve& cb = d.curve(corder[i]);
    if (ca.family == cb.family && ca.name == cb.name)
      throw pipeline_error("cannot serialize duplicate curve: " + ca.family + "/" + ca.name);
  }
  for (int i : corder) {
    const Curve& c = d.curve(i);
    if (!valid_name(c.family) || !valid_name(c.name))
      throw pipeline_error("cannot serialize curve name: " + c.family + "/" + c.name);
    std::string line = std::string(c.closed ? "CURVE " : "ARC ") + c.family + " " +
                       c.name + " :";
    auto end_str = [&](const End& e) {
      if (e.at_mark) return "MARK " + e.mark;
      return std::to_string(s.slot_local(e.slot)) + "." +
             std::to_string(d.point_index_on_slot(e.slot, e.point));
    };
    for (size_t j = 0; j < c.chords.size(); ++j) {
      line += (j ? "," : " ");
      line += s.face(c.chords[j].face).name + "[" + end_str(c.chords[j].a) + "->" +
              end_str(c.chords[j].b) + "]";
    }
    out += line + "\n";
  }

  std::map<std::string, std::string> mlines = meta;
  for (const auto& [k, v] : meta) {
    if (!valid_name(k) || k.rfind("boundary.", 0) == 0)
      throw pipeline_error("cannot serialize META key: " + k);
    if (v.empty() || v.find('\n') != std::string::npos)
      throw pipeline_error("cannot serialize META value for key: " + k);
  }
  for (const auto& [name, sl] : s.boundary_labels()) {
    if (!valid_name(name)) throw pipeline_error("cannot serialize boundary label: " + name);
    mlines["boundary." + name] = ref(sl);
  }
  for (const auto& [k, v] : mlines) out += "META " + k + " " + v + "\n";
  return out;
}

inline std::string write_tri(const TriFile& f) { return write_tri(f.drawing, f.meta); }

// --- typed loading ---

enum class TriKind { Trisection, Relative, Shadow };

inline TriKind tri_kind(const TriFile& f) {
  auto it = f.meta.find("kind");
  if (it != f.meta.end()) {
    if (it->second == "trisection") return TriKind::Trisection;
    if (it->second == "relative") return TriKind::Relative;
    if (it->second == "shadow") return TriKind::Shadow;
    throw parse_error("unknown kind: " + it->second);
  }
  if (!f.drawing.surface().marks().empty()) return TriKind::Shadow;
  for (int sl = 0; sl < f.drawing.surface().num_slots(); ++sl)
    if (f.drawing.surface().is_boundary(sl)) return TriKind::Relative;
  return TriKind::Trisection;
}

namespace tri_detail {

inline std::vector<int> parse_params(const std::string& v, size_t want) {
  std::vector<int> out;
  std::string cur;
  auto flush = [&]() {
    if (cur.empty()) throw parse_error("bad params value: " + v);
    size_t pos = 0;
    int x = 0;
    try {
      x = std::stoi(cur, &pos);
    } catch (const std::exception&) {
      throw parse_error("bad params value: " + v);
    }
    if (pos != cur.size()) throw parse_error("bad params value: " + v);
    out.push_back(x);
    cur.clear();
  };
  for (char c : v) {
    if (c == ',') flush();
    else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') cur += c;
    else throw parse_error("bad params value: " + v);
  }
  flush();
  if (out.size() != want) throw parse_error("bad params value: " + v);
  return out;
}

}  // namespace tri_detail

struct LoadedTrisection {
  TrisectionDiagram diagram;
  Report report;
};

struct LoadedRelative {
  RelativeTrisectionDiagram diagram;
  Report report;
};

struct LoadedShadow {
  ShadowDiagram diagram;
  Report report;
};

inline LoadedTrisection load_trisection(const TriFile& f) {
  LoadedTrisection out;
  out.diagram.drawing = f.drawing;
  out.report = validate_trisection(out.diagram);
  auto it = f.meta.find("params");
  if (it != f.meta.end() && out.diagram.validated) {
    auto p = tri_detail::parse_params(it->second, 2);
    out.report.check(p[0] == out.diagram.g && p[1] == out.diagram.k,
                     "declared parameters (" + it->second + ") match derived (" +
                         std::to_string(out.diagram.g) + "," +
                         std::to_string(out.diagram.k) + ")");
  }
  return out;
}

inline LoadedRelative load_relative(const TriFile& f) {
  LoadedRelative out;
  out.diagram.drawing = f.drawing;
  out.report = validate_relative(out.diagram);
  auto it = f.meta.find("params");
  if (it != f.meta.end() && out.diagram.validated) {
    auto p = tri_detail::parse_params(it->second, 4);
    bool ok = p[0] == out.diagram.g && p[1] == out.diagram.k &&
              p[2] == out.diagram.p && p[3] == out.diagram.b;
    out.report.check(ok, "declared parameters (" + it->second + ") match derived (" +
                             std::to_string(out.diagram.g) + "," +
                             std::to_string(out.diagram.k) + "," +
                             std::to_string(out.diagram.p) + "," +
                             std::to_string(out.diagram.b) + ")");
  }
  return out;
}

inline LoadedShadow load_shadow(const TriFile& f) {
  LoadedShadow out;
  out.diagram.drawing = f.drawing;
  out.report = validate_shadow(out.diagram);
  auto it = f.meta.find("params");
  if (it != f.meta.end() && out.diagram.validated) {
    auto p = tri_detail::parse_params(it->second, 2);
    out.report.check(p[0] == out.diagram.c && p[1] == out.diagram.b,
                     "declared bridge parameters (" + it->second + ") match derived (" +
                         std::to_string(out.diagram.c) + "," +
                         std::to_string(out.diagram.b) + ")");
  }
  auto ev = f.meta.find("euler_number");
  if (ev != f.meta.end())
    out.diagram.euler_number = tri_detail::parse_params(ev->second, 1)[0];
  return out;
}

}  // namespace trisect
