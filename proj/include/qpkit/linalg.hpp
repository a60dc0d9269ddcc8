#pragma once

#include <algorithm>
#include <vector>

#include "qpkit/field.hpp"

namespace qpkit {

using RatMatrix = std::vector<std::vector<Rat>>;
using IntMatrix = std::vector<std::vector<Int>>;

inline IntMatrix identity_matrix(int n) {
  IntMatrix I(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

// Basis of the right kernel {v : A v = 0} of a rational matrix, one vector
// per free column of the reduced row echelon form. Deterministic pivoting
// (first nonzero in column order).
inline std::vector<std::vector<Rat>> rational_kernel(RatMatrix a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i)
      if (a[i][c] != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[r]);
    const Rat inv = 1 / a[r][c];
    for (int j = c; j < cols; ++j) a[r][j] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rat f = a[i][c];
      for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col) is_pivot[c] = true;

  std::vector<std::vector<Rat>> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[c] = 1;
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) v[pivot_col[i]] = -a[i][c];
    basis.push_back(std::move(v));
  }
  return basis;
}

inline int rational_rank(const RatMatrix& a) {
  const int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
  return cols - static_cast<int>(rational_kernel(a).size());
}

// U * A * V = D with U, V unimodular and D diagonal (not necessarily with
// the Smith divisibility chain; diagonality is all the kernel and lattice
// computations below need). Diagonal entries are normalized nonnegative.
struct Diagonalization {
  std::vector<Int> diag;  // min(rows, cols) entries
  IntMatrix u;            // rows x rows
  IntMatrix v;            // cols x cols
};

inline Diagonalization diagonalize_integer_matrix(IntMatrix a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  IntMatrix u = identity_matrix(rows);
  IntMatrix v = identity_matrix(cols);

  auto row_op = [&](int dst, int src, const Int& f) {  // row[dst] -= f*row[src]
    for (int j = 0; j < cols; ++j) a[dst][j] -= f * a[src][j];
    for (int j = 0; j < rows; ++j) u[dst][j] -= f * u[src][j];
  };
  auto col_op = [&](int dst, int src, const Int& f) {  // col[dst] -= f*col[src]
    for (int i = 0; i < rows; ++i) a[i][dst] -= f * a[i][src];
    for (int i = 0; i < cols; ++i) v[i][dst] -= f * v[i][src];
  };

  const int t = std::min(rows, cols);
  for (int r = 0; r < t; ++r) {
    for (;;) {
      // Smallest-magnitude nonzero entry of the trailing block becomes the pivot.
      int pi = -1, pj = -1;
      for (int i = r; i < rows; ++i)
        for (int j = r; j < cols; ++j) {
          if (a[i][j] == 0) continue;
          if (pi < 0 || cmp(abs(a[i][j]), abs(a[pi][pj])) < 0) {
            pi = i;
            pj = j;
          }
        }
      if (pi < 0) break;  // trailing block is zero
      if (pi != r) {
        std::swap(a[pi], a[r]);
        std::swap(u[pi], u[r]);
      }
      if (pj != r) {
        for (int i = 0; i < rows; ++i) std::swap(a[i][pj], a[i][r]);
        for (int i = 0; i < cols; ++i) std::swap(v[i][pj], v[i][r]);
      }
      bool clean = true;
      for (int i = r + 1; i < rows; ++i) {
        if (a[i][r] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][r].get_mpz_t(), a[r][r].get_mpz_t());
        row_op(i, r, q);
        if (a[i][r] != 0) clean = false;
      }
      for (int j = r + 1; j < cols; ++j) {
        if (a[r][j] == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), a[r][j].get_mpz_t(), a[r][r].get_mpz_t());
        col_op(j, r, q);
        if (a[r][j] != 0) clean = false;
      }
      if (clean) break;  // row r and column r fully cleared
    }
    if (a[r][r] < 0) {
      for (int j = 0; j < cols; ++j) a[r][j] = -a[r][j];
      for (int j = 0; j < rows; ++j) u[r][j] = -u[r][j];
    }
  }

  Diagonalization out;
  out.diag.reserve(t);
  for (int i = 0; i < t; ++i) out.diag.push_back(a[i][i]);
  out.u = std::move(u);
  out.v = std::move(v);
  return out;
}

// Basis of {v in Z^cols : A v = 0}; the columns of V matching zero diagonal
// entries. The basis spans the full (saturated) kernel lattice since V is
// unimodular.
inline std::vector<std::vector<Int>> integer_kernel(const IntMatrix& a) {
  const int rows = static_cast<int>(a.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  if (rows == 0) {
    std::vector<std::vector<Int>> basis;
    for (int j = 0; j < cols; ++j) {
      std::vector<Int> e(cols, 0);
      e[j] = 1;
      basis.push_back(std::move(e));
    }
    return basis;
  }
  const Diagonalization d = diagonalize_integer_matrix(a);
  std::vector<std::vector<Int>> basis;
  for (int j = 0; j < cols; ++j) {
    const bool in_diag = j < static_cast<int>(d.diag.size());
    if (in_diag && d.diag[j] != 0) continue;
    std::vector<Int> col(cols);
    for (int i = 0; i < cols; ++i) col[i] = d.v[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

}  // namespace qpkit
