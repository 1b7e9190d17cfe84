#pragma once

// Exact integer matrices and Smith normal form.
//
// Everything downstream that touches homology (first homology of diagrams,
// spine presentations, handle counts, the order-of-H1 checks) funnels through
// this file, so the reduction is written for determinism rather than speed:
// pivot selection is "smallest nonzero absolute value, then lowest row, then
// lowest column", and the transforms U, V are tracked explicitly so callers
// can recover coordinates, kernels and quotient maps.  Entries are
// boost::multiprecision::cpp_int; intermediate blowup is a correctness bug we
// refuse to have.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <sstream>
#include <string>
#include <vector>

#include "trisect/errors.hpp"

namespace trisect {

using Int = boost::multiprecision::cpp_int;

inline Int int_abs(const Int& x) { return x < 0 ? Int(-x) : x; }

inline Int int_gcd(Int a, Int b) {
  a = int_abs(a);
  b = int_abs(b);
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// Dense row-major integer matrix.
struct IMat {
  int rows = 0;
  int cols = 0;
  std::vector<Int> a;

  IMat() = default;
  IMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Int(0)) {}

  static IMat identity(int n) {
    IMat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  bool operator==(const IMat& o) const {
    return rows == o.rows && cols == o.cols && a == o.a;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int r = 0; r < rows; ++r) {
      os << (r == 0 ? "[" : " ");
      for (int c = 0; c < cols; ++c) os << (c ? " " : "[") << at(r, c);
      os << "]" << (r + 1 == rows ? "]" : "\n");
    }
    return os.str();
  }
};

inline IMat mat_mul(const IMat& x, const IMat& y) {
  if (x.cols != y.rows) throw pipeline_error("matrix product shape mismatch");
  IMat z(x.rows, y.cols);
  for (int r = 0; r < x.rows; ++r)
    for (int k = 0; k < x.cols; ++k) {
      const Int& v = x.at(r, k);
      if (v == 0) continue;
      for (int c = 0; c < y.cols; ++c) z.at(r, c) += v * y.at(k, c);
    }
  return z;
}

inline IMat mat_transpose(const IMat& x) {
  IMat z(x.cols, x.rows);
  for (int r = 0; r < x.rows; ++r)
    for (int c = 0; c < x.cols; ++c) z.at(c, r) = x.at(r, c);
  return z;
}

// Fraction-free Gaussian elimination (Bareiss).  Used by tests as an
// independent determinant route and by the unimodularity self-check.
inline Int mat_det(IMat m) {
  if (m.rows != m.cols) throw pipeline_error("determinant of non-square matrix");
  int n = m.rows;
  if (n == 0) return 1;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m.at(k, k) == 0) {
      int swap_row = -1;
      for (int r = k + 1; r < n; ++r)
        if (m.at(r, k) != 0) { swap_row = r; break; }
      if (swap_row < 0) return 0;
      for (int c = 0; c < n; ++c) std::swap(m.at(k, c), m.at(swap_row, c));
      sign = -sign;
    }
    for (int r = k + 1; r < n; ++r)
      for (int c = k + 1; c < n; ++c) {
        Int num = m.at(r, c) * m.at(k, k) - m.at(r, k) * m.at(k, c);
        m.at(r, c) = num / prev;  // divides exactly (Bareiss identity)
      }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

// Smith normal form S = U * A * V with U, V unimodular, S diagonal with the
// divisibility chain d_1 | d_2 | ... | d_rank, all d_i > 0.
struct SNFResult {
  IMat s;
  IMat u;
  IMat v;
  int rank = 0;
  std::vector<Int> invariant_factors;  // the nonzero diagonal, in order
};

namespace detail {

struct SnfWork {
  IMat s, u, v;

  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < s.cols; ++c) std::swap(s.at(i, c), s.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < s.rows; ++r) std::swap(s.at(r, i), s.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  // row i += q * row j
  void row_add(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < s.cols; ++c) s.at(i, c) += q * s.at(j, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) += q * u.at(j, c);
  }
  // col i += q * col j
  void col_add(int i, int j, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < s.rows; ++r) s.at(r, i) += q * s.at(r, j);
    for (int r = 0; r < v.rows; ++r) v.at(r, i) += q * v.at(r, j);
  }
  void row_negate(int i) {
    for (int c = 0; c < s.cols; ++c) s.at(i, c) = -s.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
  }
};

// Smallest nonzero |entry| in the submatrix with top-left (k,k); ties broken
// by lowest row then lowest column.  Returns {-1,-1} when the submatrix is 0.
inline std::pair<int, int> snf_pivot(const IMat& s, int k) {
  int br = -1, bc = -1;
  Int best = 0;
  for (int r = k; r < s.rows; ++r)
    for (int c = k; c < s.cols; ++c) {
      const Int& x = s.at(r, c);
      if (x == 0) continue;
      Int ax = int_abs(x);
      if (br < 0 || ax < best) {
        best = ax;
        br = r;
        bc = c;
      }
    }
  return {br, bc};
}

}  // namespace detail

// The optional flag makes long reductions cooperatively interruptible: it is
// polled once per pivot (and once on entry), and raising it aborts the run
// with a Cancelled error.  Pass nullptr to run to completion.
inline SNFResult smith_normal_form(const IMat& input,
                                   const std::atomic<bool>* cancel = nullptr) {
  auto poll = [cancel] {
    if (cancel && cancel->load(std::memory_order_relaxed))
      throw cancelled_error("smith normal form interrupted");
  };
  poll();
  detail::SnfWork w;
  w.s = input;
  w.u = IMat::identity(input.rows);
  w.v = IMat::identity(input.cols);
  const int n = std::min(input.rows, input.cols);

  for (int k = 0; k < n; ++k) {
    poll();
    auto [pr, pc] = detail::snf_pivot(w.s, k);
    if (pr < 0) break;  // submatrix is zero, done
    w.row_swap(k, pr);
    w.col_swap(k, pc);

    // Reduce row k and column k against the pivot until both are clear.
    // The pivot shrinks in absolute value at every remainder step, so this
    // terminates.
    for (;;) {
      bool dirty = false;
      for (int r = k + 1; r < w.s.rows; ++r) {
        if (w.s.at(r, k) == 0) continue;
        Int q = w.s.at(r, k) / w.s.at(k, k);
        w.row_add(r, k, -q);
        if (w.s.at(r, k) != 0) {
          // Remainder became the smaller pivot; promote it.
          w.row_swap(k, r);
          dirty = true;
        }
      }
      for (int c = k + 1; c < w.s.cols; ++c) {
        if (w.s.at(k, c) == 0) continue;
        Int q = w.s.at(k, c) / w.s.at(k, k);
        w.col_add(c, k, -q);
        if (w.s.at(k, c) != 0) {
          w.col_swap(k, c);
          dirty = true;
        }
      }
      if (!dirty) {
        bool row_clear = true, col_clear = true;
        for (int r = k + 1; r < w.s.rows && row_clear; ++r)
          if (w.s.at(r, k) != 0) row_clear = false;
        for (int c = k + 1; c < w.s.cols && col_clear; ++c)
          if (w.s.at(k, c) != 0) col_clear = false;
        if (row_clear && col_clear) break;
      }
    }
    if (w.s.at(k, k) < 0) w.row_negate(k);
  }

  // Enforce the divisibility chain d_i | d_{i+1}.  When it fails, folding
  // column j into column i puts d_j next to d_i in one row, and re-clearing
  // that 2x2 corner leaves gcd/lcm on the diagonal.
  for (;;) {
    poll();
    bool fixed_all = true;
    for (int i = 0; i + 1 < n; ++i) {
      Int a = w.s.at(i, i), b = w.s.at(i + 1, i + 1);
      if (a == 0 && b != 0) {
        // Zero before nonzero: swap them forward.
        w.row_swap(i, i + 1);
        w.col_swap(i, i + 1);
        fixed_all = false;
        continue;
      }
      if (a == 0 || b == 0) continue;
      if (b % a == 0) continue;
      w.col_add(i, i + 1, 1);  // column i gains entry b in row i+1
      // Clear the 2x2 block {i, i+1} x {i, i+1} by Euclid.
      for (;;) {
        if (w.s.at(i + 1, i) != 0) {
          Int q = w.s.at(i + 1, i) / w.s.at(i, i);
          w.row_add(i + 1, i, -q);
          if (w.s.at(i + 1, i) != 0) w.row_swap(i, i + 1);
          continue;
        }
        if (w.s.at(i, i + 1) != 0) {
          Int q = w.s.at(i, i + 1) / w.s.at(i, i);
          w.col_add(i + 1, i, -q);
          if (w.s.at(i, i + 1) != 0) w.col_swap(i, i + 1);
          continue;
        }
        break;
      }
      if (w.s.at(i, i) < 0) w.row_negate(i);
      if (w.s.at(i + 1, i + 1) < 0) w.row_negate(i + 1);
      fixed_all = false;
    }
    if (fixed_all) break;
  }

  SNFResult out;
  out.s = w.s;
  out.u = w.u;
  out.v = w.v;
  for (int i = 0; i < n; ++i) {
    if (w.s.at(i, i) != 0) {
      out.invariant_factors.push_back(w.s.at(i, i));
      out.rank++;
    }
  }
  return out;
}

// Basis of the integer kernel of A (viewed as a map of column vectors
// Z^cols -> Z^rows): the last cols-rank columns of V.
inline IMat kernel_basis(const IMat& a) {
  SNFResult f = smith_normal_form(a);
  IMat k(a.cols, a.cols - f.rank);
  for (int r = 0; r < a.cols; ++r)
    for (int c = f.rank; c < a.cols; ++c) k.at(r, c - f.rank) = f.v.at(r, c);
  return k;
}

// Solve A x = b over the integers.  Returns false when no integral solution
// exists; x gets the particular solution produced by the SNF route (which is
// deterministic, hence stable across runs).
inline bool solve_integer(const IMat& a, const std::vector<Int>& b,
                          std::vector<Int>* x) {
  if (static_cast<int>(b.size()) != a.rows)
    throw pipeline_error("solve_integer: rhs length mismatch");
  SNFResult f = smith_normal_form(a);
  // S = U A V, so A x = b  <=>  S y = U b with x = V y.
  std::vector<Int> ub(a.rows, 0);
  for (int r = 0; r < a.rows; ++r)
    for (int c = 0; c < a.rows; ++c)
      if (f.u.at(r, c) != 0) ub[r] += f.u.at(r, c) * b[c];
  std::vector<Int> y(a.cols, 0);
  for (int r = 0; r < a.rows; ++r) {
    Int d = (r < std::min(a.rows, a.cols)) ? f.s.at(r, r) : Int(0);
    if (d == 0) {
      if (ub[r] != 0) return false;
    } else {
      if (ub[r] % d != 0) return false;
      y[r] = ub[r] / d;
    }
  }
  x->assign(a.cols, 0);
  for (int r = 0; r < a.cols; ++r)
    for (int c = 0; c < a.cols; ++c)
      if (f.v.at(r, c) != 0) (*x)[r] += f.v.at(r, c) * y[c];
  return true;
}

}  // namespace trisect
