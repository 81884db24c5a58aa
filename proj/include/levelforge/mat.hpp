#pragma once

#include <optional>
#include <vector>

#include "levelforge/fp.hpp"

namespace lf {

/* Dense matrix over the session prime field. Row-major storage.
 * All elimination routines pivot deterministically: columns are scanned
 * left to right, and within a column the topmost unused row wins. */
struct Mat {
  int rows = 0, cols = 0;
  std::vector<Fp> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0) {}

  Fp& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
  Fp at(int r, int c) const { return a[std::size_t(r) * cols + c]; }

  static Mat identity(int n);
  static Mat zero(int r, int c) { return Mat(r, c); }

  bool operator==(const Mat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool is_zero() const;

  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator*(const Mat& o) const;
  Mat scaled(Fp c) const;
  Mat negated() const { return scaled(fp::neg(1)); }
  Mat transposed() const;

  Mat hstack(const Mat& o) const;
  Mat vstack(const Mat& o) const;
  Mat col_slice(int c0, int c1) const;
  Mat row_slice(int r0, int r1) const;
  Mat block(int r0, int c0, int r1, int c1) const;
  std::vector<Fp> col(int c) const;
  void set_col(int c, const std::vector<Fp>& v);
};

/* Reduced row echelon form in place; returns pivot column indices. */
std::vector<int> rref(Mat& m);

int rank(const Mat& m);

/* Columns form the canonical reduced basis of the kernel: one column per
 * free variable, unit in the free slot, pivot slots filled from the RREF. */
Mat kernel_basis(const Mat& m);

struct SolveResult {
  bool solvable = false;
  Mat particular;  // cols(m) x cols(b); valid when solvable
  Mat kernel;      // kernel basis of m
};

/* Solve m*x = b column by column. Free variables are set to zero, so the
 * particular solution is the lexicographically first one. */
SolveResult linear_solve(const Mat& m, const Mat& b);

std::optional<Mat> inverse(const Mat& m);

/* Deterministic basis of the column space: the columns of m at the pivot
 * indices of its RREF. */
Mat column_space_basis(const Mat& m);

/* Given a matrix v with independent columns inside k^n, return indices of
 * standard basis vectors completing it to a basis of k^n. */
std::vector<int> complement_indices(const Mat& v);

/* Coordinates of each column of x in the column basis b (b must have
 * independent columns and contain x's columns in its span). */
Mat coordinates_in_basis(const Mat& b, const Mat& x);

}  // namespace lf
