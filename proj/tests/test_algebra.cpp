#include "doctest.h"
#include "levelforge/rep.hpp"

using namespace lf;

TEST_CASE("linear A2 path algebra basis") {
  FinDimAlgebra alg = builtin_algebra("kA2");
  CHECK(alg.dim() == 3);  // e1, e2, a
  CHECK(alg.nverts() == 2);
  Module p1 = projective_module(alg, 0);
  Module p2 = projective_module(alg, 1);
  CHECK(p1.dims == std::vector<int>{1, 1});
  CHECK(p2.dims == std::vector<int>{0, 1});
}

TEST_CASE("associativity holds exhaustively on built-ins") {
  for (const char* name : {"kA2", "kA3", "kxx", "kronecker", "kA3zero"}) {
    FinDimAlgebra alg = builtin_algebra(name);
    int n = alg.dim();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          AlgElem ij_k = alg.mult(alg.mult_table[std::size_t(i)][std::size_t(j)],
                                  AlgElem{{k, 1}});
          AlgElem i_jk = alg.mult(AlgElem{{i, 1}},
                                  alg.mult_table[std::size_t(j)][std::size_t(k)]);
          CHECK(ij_k == i_jk);
        }
  }
}

TEST_CASE("idempotents decompose the identity") {
  FinDimAlgebra alg = builtin_algebra("kA3");
  for (int v = 0; v < alg.nverts(); ++v) {
    AlgElem e = alg.idem_elem(v);
    CHECK(alg.mult(e, e) == e);
  }
}

TEST_CASE("relations act as zero on standard modules") {
  FinDimAlgebra alg = builtin_algebra("kxx");
  CHECK(alg.dim() == 2);  // e, x with x^2 = 0
  Module p = projective_module(alg, 0);
  CHECK(p.dims == std::vector<int>{2});
  validate_module(alg, p);
  Mat x2 = p.act[0] * p.act[0];
  CHECK(x2.is_zero());
}

TEST_CASE("dimension cap exceeded names an offending path") {
  QuiverPresentation pres;  // free loop: infinite-dimensional
  pres.quiver.vertices = {"1"};
  pres.quiver.arrows.push_back(Arrow{0, 0, "x"});
  CHECK_THROWS_WITH_AS(path_algebra(pres, 3), doctest::Contains("path length cap"), Error);
}

TEST_CASE("hom from projective has dimension of the target vertex space") {
  for (const char* name : {"kA2", "kA3", "kA3zero", "kronecker"}) {
    FinDimAlgebra alg = builtin_algebra(name);
    StandardModules sm = standard_modules(alg);
    for (int v = 0; v < alg.nverts(); ++v)
      for (const Module& m : sm.projectives)
        CHECK(hom_dim(alg, sm.projectives[std::size_t(v)], m) == m.dims[std::size_t(v)]);
    for (int v = 0; v < alg.nverts(); ++v)
      for (const Module& m : sm.simples)
        CHECK(hom_dim(alg, sm.projectives[std::size_t(v)], m) == m.dims[std::size_t(v)]);
  }
}

TEST_CASE("hom between simples over linear A2") {
  FinDimAlgebra alg = builtin_algebra("kA2");
  StandardModules sm = standard_modules(alg);
  CHECK(hom_dim(alg, sm.projectives[0], sm.simples[0]) == 1);
  CHECK(hom_dim(alg, sm.simples[0], sm.projectives[0]) == 0);
  CHECK(hom_dim(alg, sm.simples[0], sm.simples[1]) == 0);
}

TEST_CASE("relation ideal reduces the basis") {
  FinDimAlgebra alg = builtin_algebra("kA3zero");
  CHECK(alg.dim() == 5);  // three idempotents + two arrows, path ba killed
  Module p1 = projective_module(alg, 0);
  CHECK(p1.dims == std::vector<int>{1, 1, 0});
}

TEST_CASE("enveloping presentation of linear A2 is nine-dimensional") {
  // dim(A (x) A^op) = dim(A)^2.
  FinDimAlgebra env = path_algebra(enveloping_presentation(builtin_presentation("kA2")), 12);
  CHECK(env.dim() == 9);
  FinDimAlgebra env2 = path_algebra(enveloping_presentation(builtin_presentation("kxx")), 12);
  CHECK(env2.dim() == 4);
}

TEST_CASE("cartan matrix of linear A3") {
  FinDimAlgebra alg = builtin_algebra("kA3");
  IntMat c = cartan_matrix(alg);
  // column v = dimension vector of P_v
  CHECK(c.at(0, 0) == 1);
  CHECK(c.at(1, 0) == 1);
  CHECK(c.at(2, 0) == 1);
  CHECK(c.at(0, 1) == 0);
  CHECK(c.at(1, 1) == 1);
  CHECK(c.at(2, 1) == 1);
  CHECK(c.at(2, 2) == 1);
}

TEST_CASE("sub quotient and radical machinery") {
  FinDimAlgebra alg = builtin_algebra("kA2");
  Module p1 = projective_module(alg, 0);
  auto rad = radical_bases(alg, p1);
  CHECK(rad[0].cols == 0);
  CHECK(rad[1].cols == 1);
  SubModule s = sub_module(alg, p1, rad);
  CHECK(s.sub.dims == std::vector<int>{0, 1});  // socle S2
  QuotientModule t = top_of(alg, p1);
  CHECK(t.quot.dims == std::vector<int>{1, 0});  // top S1
  validate_map(alg, p1, t.quot, t.projection);
}

TEST_CASE("kernel and image of a module map") {
  FinDimAlgebra alg = builtin_algebra("kA2");
  Module p1 = projective_module(alg, 0);
  Module s1 = simple_module(alg, 0);
  auto maps = hom_space(alg, p1, s1);
  REQUIRE(maps.size() == 1);
  SubModule k = kernel_of(alg, p1, s1, maps[0]);
  CHECK(k.sub.dims == std::vector<int>{0, 1});
  SubModule im = image_of(alg, p1, s1, maps[0]);
  CHECK(im.sub.dims == std::vector<int>{1, 0});
}
