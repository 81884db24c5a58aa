#pragma once

#include <string>

#include "levelforge/proj.hpp"

namespace lf {

/* Constructive membership witness for the thick-subcategory filtration
 * generated by a finite set of perfect complexes. The witnessed object is
 * rebuilt bottom-up; cones carry their attaching maps, summand nodes carry
 * an explicit section/retraction pair. */
enum class CertKind { Leaf, DirectSum, Cone, Summand };

struct LevelCertificate {
  CertKind kind = CertKind::Leaf;
  /* Leaf: mult copies of gens[gen] shifted by shift. */
  int gen = 0, shift = 0, mult = 1;
  /* DirectSum: any number of children; Cone: children = {left, right};
   * Summand: children = {child}. */
  std::vector<LevelCertificate> children;
  /* Cone: attach maps right[-1] -> left (shift 0); the node's object is its cone. */
  ProjChainMap attach;
  /* Summand: part is the witnessed object, sec: part -> child, ret: child -> part,
   * with ret∘sec homotopic to the identity. */
  ProjComplex part;
  ProjChainMap sec, ret;
};

using GeneratorSet = std::vector<ProjComplex>;

/* Cone nodes add the levels of their sides; sums and summands take the max. */
int certificate_level(const LevelCertificate& cert);
int certificate_size(const LevelCertificate& cert);  // node count

/* Rebuild the object described by cert. Throws on structural defects (bad
 * indices, wrong child counts, attach/sec/ret shape mismatches). */
ProjComplex realize_certificate(const FinDimAlgebra& alg, const LevelCertificate& cert,
                                const GeneratorSet& gens);

struct VerifyReport {
  bool pass = false;
  int level = 0;
  int size = 0;
  int hom_fwd = 0, hom_bwd = 0;  // dim Hom(x, Y), dim Hom(Y, x)
  std::vector<Fp> witness;       // factoring coefficients, (fwd x bwd) grid, row-major
  std::string reason;            // set on failure
};

/* Checks every summand node and then solves for coefficients c with
 * sum c_ij r_j∘s_i ≃ id_x over the hom-class bases; a solution factors the
 * identity of x through a finite sum of copies of the rebuilt object. */
VerifyReport verify_certificate(const FinDimAlgebra& alg, const ProjComplex& x,
                                const LevelCertificate& cert, const GeneratorSet& gens);

/* Hoist a summand node out of the left side of a cone: input witnesses a cone
 * over a summand of A, output witnesses a summand of a cone over A itself.
 * Cone count is preserved. Throws if the root is not Cone(Summand(...), ...)
 * or the summand data does not split. */
LevelCertificate star_rewrite_smd(const FinDimAlgebra& alg, const LevelCertificate& cert,
                                  const GeneratorSet& gens);

/* Pad with a trivial cone: same object, level + 1. */
LevelCertificate pad_certificate(const FinDimAlgebra& alg, const LevelCertificate& cert,
                                 const GeneratorSet& gens);

struct LevelBound {
  bool known = false;  // false: no certificate found within the cap
  int level = 0;       // valid when known; otherwise the cap that was searched
  LevelCertificate cert;
};

/* Best verified upper bound found: a window of shifted generators at level 1,
 * and when some generator is a shifted free module, homology-splitting and
 * term-by-term rebuild certificates. Verdicts are upper bounds only. */
LevelBound level_upper_bound(const FinDimAlgebra& alg, const ProjComplex& x,
                             const GeneratorSet& gens, int search_cap);

struct OrthTable {
  int window = 0;
  std::vector<std::vector<int>> dims;  // dims[i][n + window] = dim Hom(E_i[n], x)
  bool orthogonal = true;
  int first_gen = -1, first_shift = 0;  // first nonzero entry when not orthogonal
};

OrthTable right_orthogonal_check(const FinDimAlgebra& alg, const GeneratorSet& gens,
                                 const ProjComplex& x, int window);

struct DiagonalBound {
  int bound = 0;  // bimodule projective dimension + 1
  FinDimAlgebra env;
  Module diagonal;
  Resolution witness;
};

/* Generation bound from a projective bimodule resolution of the algebra over
 * its enveloping algebra. Throws when the resolution exceeds the cap. */
DiagonalBound diagonal_strong_generation_bound(const FinDimAlgebra& alg);

/* The algebra as a module over its enveloping algebra: the fibre over the
 * product vertex (u,v) is spanned by the basis paths v -> u. */
Module diagonal_bimodule(const FinDimAlgebra& alg, const FinDimAlgebra& env);

}  // namespace lf
