#pragma once

// Finitely generated abelian groups in invariant-factor form.

#include <string>
#include <vector>

#include "trisect/smith.hpp"

namespace trisect {

// rank copies of Z plus torsion Z/d_1 + ... + Z/d_t with 1 < d_1 | d_2 | ...
struct AbelianGroup {
  int rank = 0;
  std::vector<Int> torsion;

  bool operator==(const AbelianGroup& o) const {
    return rank == o.rank && torsion == o.torsion;
  }
  bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

  bool is_trivial() const { return rank == 0 && torsion.empty(); }
  bool is_finite() const { return rank == 0; }

  // Order of the torsion subgroup (the full order when finite).
  Int torsion_order() const {
    Int n = 1;
    for (const Int& d : torsion) n *= d;
    return n;
  }

  // "0", "Z", "Z^2", "Z/2 + Z/2", "Z + Z/3", ...
  std::string to_string() const {
    if (is_trivial()) return "0";
    std::string s;
    if (rank == 1) s = "Z";
    else if (rank > 1) s = "Z^" + std::to_string(rank);
    for (const Int& d : torsion) {
      if (!s.empty()) s += " + ";
      s += "Z/" + d.str();
    }
    return s;
  }
};

// The cokernel Z^n / (row span of R) for an m x n relation matrix R.
inline AbelianGroup abelian_from_relations(
    const IMat& relations, const std::atomic<bool>* cancel = nullptr) {
  SNFResult f = smith_normal_form(relations, cancel);
  AbelianGroup g;
  g.rank = relations.cols - f.rank;
  for (const Int& d : f.invariant_factors)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

}  // namespace trisect
