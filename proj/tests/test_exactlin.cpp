#include <random>

#include "doctest.h"
#include "levelforge/intmat.hpp"
#include "levelforge/mat.hpp"

using namespace lf;

namespace {

Mat random_mat(std::mt19937_64& rng, int r, int c, int density_pct = 70) {
  Mat m(r, c);
  std::uniform_int_distribution<int> coin(0, 99);
  std::uniform_int_distribution<Fp> val(0, fp::prime() - 1);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j)
      if (coin(rng) < density_pct) m.at(i, j) = val(rng);
  return m;
}

IntMat random_int_mat(std::mt19937_64& rng, int r, int c, int bound) {
  IntMat m(r, c);
  std::uniform_int_distribution<int> val(-bound, bound);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m.at(i, j) = val(rng);
  return m;
}

}  // namespace

TEST_CASE("field arithmetic basics") {
  CHECK(fp::prime() == 32003);
  CHECK(fp::add(32000, 10) == 7);
  CHECK(fp::mul(fp::inv(17), 17) == 1);
  CHECK(fp::neg(0) == 0);
  CHECK(fp::reduce(-1) == 32002);
}

TEST_CASE("identity matrix has full rank") {
  CHECK(rank(Mat::identity(5)) == 5);
  Mat z(4, 7);
  CHECK(rank(z) == 0);
  CHECK(kernel_basis(z).cols == 7);
}

TEST_CASE("solve on invertible system reproduces rhs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a = random_mat(rng, 5, 5);
    if (rank(a) < 5) continue;
    Mat b = random_mat(rng, 5, 2);
    SolveResult s = linear_solve(a, b);
    REQUIRE(s.solvable);
    CHECK(a * s.particular == b);
    CHECK(s.kernel.cols == 0);
  }
}

TEST_CASE("solve verifies exactly and kernel is reduced") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    int r = 3 + int(rng() % 4), c = 3 + int(rng() % 4);
    Mat a = random_mat(rng, r, c, 55);
    Mat x = random_mat(rng, c, 1);
    Mat b = a * x;
    SolveResult s = linear_solve(a, b);
    REQUIRE(s.solvable);
    CHECK(a * s.particular == b);
    CHECK(rank(a) + s.kernel.cols == c);
    if (s.kernel.cols > 0) CHECK((a * s.kernel).is_zero());
  }
}

TEST_CASE("inconsistent system reports unsolvable") {
  Mat a(2, 1);
  a.at(0, 0) = 1;
  Mat b(2, 1);
  b.at(0, 0) = 1;
  b.at(1, 0) = 1;
  CHECK_FALSE(linear_solve(a, b).solvable);
}

TEST_CASE("shape mismatch raises") {
  Mat a(2, 2), b(3, 1);
  CHECK_THROWS_AS(linear_solve(a, b), Error);
  CHECK_THROWS_AS(a * b, Error);
}

TEST_CASE("smith normal form of diag(2,3)") {
  IntMat a(2, 2);
  a.at(0, 0) = 2;
  a.at(1, 1) = 3;
  SnfResult s = smith_normal_form(a);
  CHECK(s.d.at(0, 0) == 1);
  CHECK(s.d.at(1, 1) == 6);
  CHECK(s.u * a * s.v == s.d);
  CHECK(abs(det(s.u)) == 1);
  CHECK(abs(det(s.v)) == 1);
}

TEST_CASE("smith normal form invariants on random integer matrices") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 60; ++trial) {
    int r = 1 + int(rng() % 4), c = 1 + int(rng() % 4);
    IntMat a = random_int_mat(rng, r, c, 9);
    SnfResult s = smith_normal_form(a);
    CHECK(s.u * a * s.v == s.d);
    CHECK(abs(det(s.u)) == 1);
    CHECK(abs(det(s.v)) == 1);
    int n = std::min(r, c);
    for (int i = 0; i + 1 < n; ++i) {
      CHECK(s.d.at(i, i) >= 0);
      if (s.d.at(i, i) != 0) {
        CHECK(s.d.at(i + 1, i + 1) % s.d.at(i, i) == 0);
      } else {
        CHECK(s.d.at(i + 1, i + 1) == 0);
      }
    }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j)
        if (i != j) CHECK(s.d.at(i, j) == 0);
  }
}

TEST_CASE("lattice membership with obstruction") {
  IntMat basis(2, 1);
  basis.at(0, 0) = 2;
  std::vector<Int> t1{Int(1), Int(0)};
  LatticeMembership m1 = lattice_membership(basis, t1);
  CHECK_FALSE(m1.member);
  CHECK(m1.obstruction_modulus == 2);
  std::vector<Int> t2{Int(4), Int(0)};
  LatticeMembership m2 = lattice_membership(basis, t2);
  REQUIRE(m2.member);
  CHECK(m2.coeffs[0] == 2);
  std::vector<Int> t3{Int(0), Int(1)};
  LatticeMembership m3 = lattice_membership(basis, t3);
  CHECK_FALSE(m3.member);
  CHECK(m3.obstruction_modulus == 0);
}

TEST_CASE("deterministic pivoting gives reproducible kernels") {
  std::mt19937_64 rng(44);
  Mat a = random_mat(rng, 4, 6, 50);
  Mat k1 = kernel_basis(a);
  Mat k2 = kernel_basis(a);
  CHECK(k1 == k2);
}
