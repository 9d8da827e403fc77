#include "fuslim/smith.hpp"

#include <algorithm>

#include "fuslim/errors.hpp"

namespace fuslim {

namespace {

BigInt abs_big(const BigInt& x) { return x < 0 ? BigInt(-x) : x; }

// quotient rounded to nearest, which keeps intermediate entries small
BigInt rounded_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  BigInt r = a - q * b;
  if (2 * abs_big(r) > abs_big(b)) q += (r < 0) == (b < 0) ? 1 : -1;
  return q;
}

struct Worker {
  BigMat a;
  BigMat s, t, tinv;
  int n, m;
  bool keep_s, keep_t, keep_tinv;

  void row_sub(int dst, int src, const BigInt& q) {
    if (q == 0) return;
    for (int j = 0; j < m; ++j) a[dst][j] -= q * a[src][j];
    if (keep_s)
      for (int j = 0; j < n; ++j) s[dst][j] -= q * s[src][j];
  }
  void row_swap(int i, int j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (keep_s) std::swap(s[i], s[j]);
  }
  void row_negate(int i) {
    for (int j = 0; j < m; ++j) a[i][j] = -a[i][j];
    if (keep_s)
      for (int j = 0; j < n; ++j) s[i][j] = -s[i][j];
  }
  void col_sub(int dst, int src, const BigInt& q) {
    if (q == 0) return;
    for (int i = 0; i < n; ++i) a[i][dst] -= q * a[i][src];
    if (keep_t)
      for (int i = 0; i < m; ++i) t[i][dst] -= q * t[i][src];
    if (keep_tinv)
      for (int j = 0; j < m; ++j) tinv[src][j] += q * tinv[dst][j];
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    if (keep_t)
      for (int r = 0; r < m; ++r) std::swap(t[r][i], t[r][j]);
    if (keep_tinv) std::swap(tinv[i], tinv[j]);
  }

  // clears row k and column k down to a single diagonal entry that divides
  // the whole trailing submatrix, assuming earlier rows/columns are clean;
  // the divisibility guarantee is what makes the final diagonal a chain
  void clean_at(int k) {
    while (true) {
      int pi = -1, pj = -1;
      BigInt best = 0;
      for (int i = k; i < n; ++i)
        for (int j = k; j < m; ++j)
          if (a[i][j] != 0) {
            BigInt v = abs_big(a[i][j]);
            if (pi < 0 || v < best) {
              best = v;
              pi = i;
              pj = j;
              if (best == 1) goto found;
            }
          }
      if (pi < 0) return;  // submatrix is zero
    found:
      row_swap(k, pi);
      col_swap(k, pj);
      bool clean = true;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          row_sub(i, k, rounded_div(a[i][k], a[k][k]));
          if (a[i][k] != 0) clean = false;
        }
      for (int j = k + 1; j < m; ++j)
        if (a[k][j] != 0) {
          col_sub(j, k, rounded_div(a[k][j], a[k][k]));
          if (a[k][j] != 0) clean = false;
        }
      if (!clean) continue;
      if (a[k][k] < 0) row_negate(k);
      // pull any entry the pivot misses into row k; the next pass shrinks
      // the pivot to a proper divisor, so this terminates
      for (int i = k + 1; i < n; ++i)
        for (int j = k + 1; j < m; ++j)
          if (a[i][j] % a[k][k] != 0) {
            row_sub(k, i, BigInt(-1));
            goto retry;
          }
      return;
    retry:;
    }
  }
};

}  // namespace

BigMat bigmat_identity(int n) {
  BigMat out(n, std::vector<BigInt>(n, 0));
  for (int i = 0; i < n; ++i) out[i][i] = 1;
  return out;
}

BigMat bigmat_mul(const BigMat& a, const BigMat& b) {
  int n = static_cast<int>(a.size());
  int k = n ? static_cast<int>(a[0].size()) : 0;
  int m = b.empty() ? 0 : static_cast<int>(b[0].size());
  internal_check(static_cast<int>(b.size()) == k, "matrix shape mismatch");
  BigMat out(n, std::vector<BigInt>(m, 0));
  for (int i = 0; i < n; ++i)
    for (int l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (int j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  return out;
}

SmithResult smith_normal_form(BigMat a, unsigned flags) {
  Worker w;
  w.n = static_cast<int>(a.size());
  w.m = w.n ? static_cast<int>(a[0].size()) : 0;
  w.a = std::move(a);
  w.keep_s = flags & kNeedS;
  w.keep_t = flags & kNeedT;
  w.keep_tinv = flags & kNeedTinv;
  if (w.keep_s) w.s = bigmat_identity(w.n);
  if (w.keep_t) w.t = bigmat_identity(w.m);
  if (w.keep_tinv) w.tinv = bigmat_identity(w.m);

  int steps = std::min(w.n, w.m);
  for (int k = 0; k < steps; ++k) w.clean_at(k);

  int rank = 0;
  while (rank < steps && w.a[rank][rank] != 0) ++rank;

  SmithResult out;
  out.rank = rank;
  for (int i = 0; i < rank; ++i) out.invariants.push_back(w.a[i][i]);
  out.d = std::move(w.a);
  out.s = std::move(w.s);
  out.t = std::move(w.t);
  out.tinv = std::move(w.tinv);
  return out;
}

BigMat kernel_basis(const BigMat& a) {
  int n = static_cast<int>(a.size());
  SmithResult f = smith_normal_form(a, kNeedS);
  BigMat out;
  for (int i = f.rank; i < n; ++i) out.push_back(f.s[i]);
  return out;
}

LeftSolver::LeftSolver(BigMat a)
    : rows_(static_cast<int>(a.size())),
      cols_(rows_ ? static_cast<int>(a[0].size()) : 0) {
  f_ = smith_normal_form(std::move(a), kNeedS | kNeedT);
}

std::optional<std::vector<BigInt>> LeftSolver::solve(const std::vector<BigInt>& g) const {
  internal_check(static_cast<int>(g.size()) == cols_, "right-hand side size mismatch");
  // x a = g  <=>  y d = g t with x = y s
  std::vector<BigInt> gt(cols_, 0);
  for (int j = 0; j < cols_; ++j)
    for (int i = 0; i < cols_; ++i)
      if (g[i] != 0) gt[j] += g[i] * f_.t[i][j];
  std::vector<BigInt> y(rows_, 0);
  for (int j = 0; j < cols_; ++j) {
    if (j < f_.rank) {
      if (gt[j] % f_.d[j][j] != 0) return std::nullopt;
      y[j] = gt[j] / f_.d[j][j];
    } else if (gt[j] != 0) {
      return std::nullopt;
    }
  }
  std::vector<BigInt> x(rows_, 0);
  for (int i = 0; i < rows_; ++i)
    if (y[i] != 0)
      for (int j = 0; j < rows_; ++j) x[j] += y[i] * f_.s[i][j];
  return x;
}

LatticeQuotient lattice_quotient(const BigMat& relations, int m) {
  for (const auto& row : relations)
    internal_check(static_cast<int>(row.size()) == m, "relation row size mismatch");
  BigMat rel = relations;
  if (rel.empty()) rel.emplace_back(m, 0);  // keeps the column count honest
  SmithResult f = smith_normal_form(rel, kNeedTinv);
  LatticeQuotient out;
  for (int i = 0; i < f.rank; ++i) {
    if (f.d[i][i] == 1) continue;
    out.invariants.push_back(f.d[i][i]);
    out.witnesses.push_back(f.tinv[i]);
  }
  for (int i = f.rank; i < m; ++i) {
    out.invariants.push_back(0);
    out.witnesses.push_back(f.tinv[i]);
  }
  return out;
}

}  // namespace fuslim
