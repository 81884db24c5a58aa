#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "levelforge/fp.hpp"

namespace lf {

using Int = boost::multiprecision::cpp_int;

struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, 0) {}

  Int& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[std::size_t(r) * cols + c]; }

  static IntMat identity(int n);
  bool operator==(const IntMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }

  IntMat operator*(const IntMat& o) const;
  bool is_zero() const;
};

/* Fraction-free determinant (Bareiss). */
Int det(const IntMat& m);

struct SnfResult {
  IntMat u, d, v;  // u*a*v = d, u and v unimodular, diagonal divisibility chain
};

/* Smith normal form with transforms. Diagonal entries are non-negative and
 * each divides the next. */
SnfResult smith_normal_form(const IntMat& a);

struct LatticeMembership {
  bool member = false;
  std::vector<Int> coeffs;      // basis coefficients when member
  int obstruction_index = -1;   // invariant factor index violated, or -1
  Int obstruction_modulus = 0;  // the offending invariant factor (0 = outside span)
};

/* Decide whether target lies in the integer column span of basis. */
LatticeMembership lattice_membership(const IntMat& basis, const std::vector<Int>& target);

}  // namespace lf
