#include "levelforge/mat.hpp"

namespace lf {

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool Mat::is_zero() const {
  for (Fp v : a)
    if (v) return false;
  return true;
}

Mat Mat::operator+(const Mat& o) const {
  if (rows != o.rows || cols != o.cols) throw Error("matrix add: shape mismatch");
  Mat r(rows, cols);
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = fp::add(a[i], o.a[i]);
  return r;
}

Mat Mat::operator-(const Mat& o) const {
  if (rows != o.rows || cols != o.cols) throw Error("matrix sub: shape mismatch");
  Mat r(rows, cols);
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = fp::sub(a[i], o.a[i]);
  return r;
}

Mat Mat::operator*(const Mat& o) const {
  if (cols != o.rows) throw Error("matrix mul: shape mismatch");
  Mat r(rows, o.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      Fp v = at(i, k);
      if (!v) continue;
      for (int j = 0; j < o.cols; ++j)
        r.at(i, j) = fp::add(r.at(i, j), fp::mul(v, o.at(k, j)));
    }
  return r;
}

Mat Mat::scaled(Fp c) const {
  Mat r(rows, cols);
  for (std::size_t i = 0; i < a.size(); ++i) r.a[i] = fp::mul(a[i], c);
  return r;
}

Mat Mat::transposed() const {
  Mat r(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
  return r;
}

Mat Mat::hstack(const Mat& o) const {
  if (rows != o.rows) throw Error("hstack: row mismatch");
  Mat r(rows, cols + o.cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
    for (int j = 0; j < o.cols; ++j) r.at(i, cols + j) = o.at(i, j);
  }
  return r;
}

Mat Mat::vstack(const Mat& o) const {
  if (cols != o.cols) throw Error("vstack: col mismatch");
  Mat r(rows + o.rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(i, j) = at(i, j);
  for (int i = 0; i < o.rows; ++i)
    for (int j = 0; j < cols; ++j) r.at(rows + i, j) = o.at(i, j);
  return r;
}

Mat Mat::col_slice(int c0, int c1) const { return block(0, c0, rows, c1); }
Mat Mat::row_slice(int r0, int r1) const { return block(r0, 0, r1, cols); }

Mat Mat::block(int r0, int c0, int r1, int c1) const {
  Mat r(r1 - r0, c1 - c0);
  for (int i = r0; i < r1; ++i)
    for (int j = c0; j < c1; ++j) r.at(i - r0, j - c0) = at(i, j);
  return r;
}

std::vector<Fp> Mat::col(int c) const {
  std::vector<Fp> v(rows);
  for (int i = 0; i < rows; ++i) v[i] = at(i, c);
  return v;
}

void Mat::set_col(int c, const std::vector<Fp>& v) {
  for (int i = 0; i < rows; ++i) at(i, c) = v[i];
}

std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int pr = -1;
    for (int i = r; i < m.rows; ++i)
      if (m.at(i, c)) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(pr, j), m.at(r, j));
    Fp iv = fp::inv(m.at(r, c));
    for (int j = c; j < m.cols; ++j) m.at(r, j) = fp::mul(m.at(r, j), iv);
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || !m.at(i, c)) continue;
      Fp f = m.at(i, c);
      for (int j = c; j < m.cols; ++j)
        m.at(i, j) = fp::sub(m.at(i, j), fp::mul(f, m.at(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(const Mat& m) {
  Mat w = m;
  return int(rref(w).size());
}

Mat kernel_basis(const Mat& m) {
  Mat w = m;
  std::vector<int> piv = rref(w);
  std::vector<bool> is_piv(std::size_t(m.cols), false);
  for (int c : piv) is_piv[std::size_t(c)] = true;
  std::vector<int> free;
  for (int c = 0; c < m.cols; ++c)
    if (!is_piv[std::size_t(c)]) free.push_back(c);
  Mat k(m.cols, int(free.size()));
  for (int fi = 0; fi < int(free.size()); ++fi) {
    int fc = free[std::size_t(fi)];
    k.at(fc, fi) = 1;
    for (int pi = 0; pi < int(piv.size()); ++pi)
      k.at(piv[std::size_t(pi)], fi) = fp::neg(w.at(pi, fc));
  }
  return k;
}

SolveResult linear_solve(const Mat& m, const Mat& b) {
  if (m.rows != b.rows) throw Error("linear_solve: shape mismatch");
  SolveResult res;
  Mat aug = m.hstack(b);
  std::vector<int> piv;
  {
    // RREF restricted to pivoting within the first m.cols columns.
    int r = 0;
    for (int c = 0; c < m.cols && r < aug.rows; ++c) {
      int pr = -1;
      for (int i = r; i < aug.rows; ++i)
        if (aug.at(i, c)) { pr = i; break; }
      if (pr < 0) continue;
      if (pr != r)
        for (int j = 0; j < aug.cols; ++j) std::swap(aug.at(pr, j), aug.at(r, j));
      Fp iv = fp::inv(aug.at(r, c));
      for (int j = c; j < aug.cols; ++j) aug.at(r, j) = fp::mul(aug.at(r, j), iv);
      for (int i = 0; i < aug.rows; ++i) {
        if (i == r || !aug.at(i, c)) continue;
        Fp f = aug.at(i, c);
        for (int j = c; j < aug.cols; ++j)
          aug.at(i, j) = fp::sub(aug.at(i, j), fp::mul(f, aug.at(r, j)));
      }
      piv.push_back(c);
      ++r;
    }
    // Consistency: no nonzero rhs entries below the pivot rows.
    for (int i = int(piv.size()); i < aug.rows; ++i)
      for (int j = m.cols; j < aug.cols; ++j)
        if (aug.at(i, j)) { res.solvable = false; res.kernel = kernel_basis(m); return res; }
  }
  res.solvable = true;
  res.particular = Mat(m.cols, b.cols);
  for (int pi = 0; pi < int(piv.size()); ++pi)
    for (int j = 0; j < b.cols; ++j)
      res.particular.at(piv[std::size_t(pi)], j) = aug.at(pi, m.cols + j);
  res.kernel = kernel_basis(m);
  return res;
}

std::optional<Mat> inverse(const Mat& m) {
  if (m.rows != m.cols) return std::nullopt;
  SolveResult s = linear_solve(m, Mat::identity(m.rows));
  if (!s.solvable || s.kernel.cols != 0) return std::nullopt;
  return s.particular;
}

Mat column_space_basis(const Mat& m) {
  Mat w = m;
  std::vector<int> piv = rref(w);
  Mat b(m.rows, int(piv.size()));
  for (int i = 0; i < int(piv.size()); ++i)
    for (int r = 0; r < m.rows; ++r) b.at(r, i) = m.at(r, piv[std::size_t(i)]);
  return b;
}

std::vector<int> complement_indices(const Mat& v) {
  // Pivot row indices of v = pivot column indices of v^T.
  Mat t = v.transposed();
  std::vector<int> piv = rref(t);
  std::vector<bool> hit(std::size_t(v.rows), false);
  for (int c : piv) hit[std::size_t(c)] = true;
  std::vector<int> out;
  for (int i = 0; i < v.rows; ++i)
    if (!hit[std::size_t(i)]) out.push_back(i);
  return out;
}

Mat coordinates_in_basis(const Mat& b, const Mat& x) {
  SolveResult s = linear_solve(b, x);
  if (!s.solvable) throw Error("coordinates_in_basis: vector outside span");
  return s.particular;
}

}  // namespace lf
