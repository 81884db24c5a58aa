#include "levelforge/intmat.hpp"

namespace lf {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMat IntMat::operator*(const IntMat& o) const {
  if (cols != o.rows) throw Error("int matrix mul: shape mismatch");
  IntMat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      const Int& v = at(i, k);
      if (v == 0) continue;
      for (int j = 0; j < o.cols; ++j) r.at(i, j) += v * o.at(k, j);
    }
  return r;
}

bool IntMat::is_zero() const {
  for (const Int& v : a)
    if (v != 0) return false;
  return true;
}

Int det(const IntMat& m) {
  if (m.rows != m.cols) throw Error("det: square matrix required");
  int n = m.rows;
  if (n == 0) return 1;
  IntMat w = m;
  Int prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (w.at(k, k) == 0) {
      int pr = -1;
      for (int i = k + 1; i < n; ++i)
        if (w.at(i, k) != 0) { pr = i; break; }
      if (pr < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(w.at(k, j), w.at(pr, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        w.at(i, j) = (w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j)) / prev;
    prev = w.at(k, k);
  }
  return sign > 0 ? w.at(n - 1, n - 1) : -w.at(n - 1, n - 1);
}

namespace {

struct SnfWork {
  IntMat d, u, v;

  void row_swap(int i, int j) {
    for (int c = 0; c < d.cols; ++c) std::swap(d.at(i, c), d.at(j, c));
    for (int c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
  }
  void col_swap(int i, int j) {
    for (int r = 0; r < d.rows; ++r) std::swap(d.at(r, i), d.at(r, j));
    for (int r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
  }
  void row_add(int dst, int src, const Int& f) {  // row[dst] += f*row[src]
    for (int c = 0; c < d.cols; ++c) d.at(dst, c) += f * d.at(src, c);
    for (int c = 0; c < u.cols; ++c) u.at(dst, c) += f * u.at(src, c);
  }
  void col_add(int dst, int src, const Int& f) {
    for (int r = 0; r < d.rows; ++r) d.at(r, dst) += f * d.at(r, src);
    for (int r = 0; r < v.rows; ++r) v.at(r, dst) += f * v.at(r, src);
  }
  void row_neg(int i) {
    for (int c = 0; c < d.cols; ++c) d.at(i, c) = -d.at(i, c);
    for (int c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
  }
};

}  // namespace

SnfResult smith_normal_form(const IntMat& a) {
  SnfWork w;
  w.d = a;
  w.u = IntMat::identity(a.rows);
  w.v = IntMat::identity(a.cols);
  int n = std::min(a.rows, a.cols);

  for (int k = 0; k < n; ++k) {
    // Move a nonzero entry of minimal absolute value into (k,k).
    for (;;) {
      int br = -1, bc = -1;
      Int best = 0;
      for (int i = k; i < w.d.rows; ++i)
        for (int j = k; j < w.d.cols; ++j) {
          const Int& x = w.d.at(i, j);
          if (x == 0) continue;
          Int ax = abs(x);
          if (br < 0 || ax < best) { best = ax; br = i; bc = j; }
        }
      if (br < 0) break;  // all zero: done for this k and beyond
      if (br != k) w.row_swap(br, k);
      if (bc != k) w.col_swap(bc, k);
      bool clean = true;
      for (int i = k + 1; i < w.d.rows; ++i) {
        Int q = w.d.at(i, k) / w.d.at(k, k);
        if (q != 0) w.row_add(i, k, -q);
        if (w.d.at(i, k) != 0) clean = false;
      }
      for (int j = k + 1; j < w.d.cols; ++j) {
        Int q = w.d.at(k, j) / w.d.at(k, k);
        if (q != 0) w.col_add(j, k, -q);
        if (w.d.at(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility: if the pivot fails to divide some lower entry,
      // pull that entry's row in and repeat.
      bool divides = true;
      for (int i = k + 1; i < w.d.rows && divides; ++i)
        for (int j = k + 1; j < w.d.cols && divides; ++j)
          if (w.d.at(i, j) % w.d.at(k, k) != 0) {
            w.row_add(k, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (w.d.at(k, k) < 0) w.row_neg(k);
  }
  return SnfResult{w.u, w.d, w.v};
}

LatticeMembership lattice_membership(const IntMat& basis, const std::vector<Int>& target) {
  if (int(target.size()) != basis.rows) throw Error("lattice_membership: dimension mismatch");
  LatticeMembership out;
  SnfResult s = smith_normal_form(basis);
  // basis = u^-1 d v^-1, solve basis*c = t via d*y = u*t, c = v*y.
  std::vector<Int> ut(std::size_t(basis.rows), 0);
  for (int i = 0; i < basis.rows; ++i)
    for (int j = 0; j < basis.rows; ++j) ut[std::size_t(i)] += s.u.at(i, j) * target[std::size_t(j)];
  int n = std::min(basis.rows, basis.cols);
  std::vector<Int> y(std::size_t(basis.cols), 0);
  for (int i = 0; i < basis.rows; ++i) {
    Int di = i < n ? s.d.at(i, i) : Int(0);
    if (di == 0) {
      if (ut[std::size_t(i)] != 0) {
        out.member = false;
        out.obstruction_index = i;
        out.obstruction_modulus = 0;  // outside the rational span
        return out;
      }
    } else if (ut[std::size_t(i)] % di != 0) {
      out.member = false;
      out.obstruction_index = i;
      out.obstruction_modulus = di;
      return out;
    } else {
      y[std::size_t(i)] = ut[std::size_t(i)] / di;
    }
  }
  out.member = true;
  out.coeffs.assign(std::size_t(basis.cols), 0);
  for (int i = 0; i < basis.cols; ++i)
    for (int j = 0; j < basis.cols; ++j) out.coeffs[std::size_t(i)] += s.v.at(i, j) * y[std::size_t(j)];
  return out;
}

}  // namespace lf
