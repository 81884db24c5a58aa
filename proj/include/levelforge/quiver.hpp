#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "levelforge/intmat.hpp"
#include "levelforge/mat.hpp"

namespace lf {

struct Arrow {
  int src = 0, tgt = 0;
  std::string label;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  int vertex_index(const std::string& name) const;
  int arrow_index(const std::string& label) const;
};

/* A path stores its arrows in application order: arrows[0] acts first.
 * src = source of arrows[0]; for the empty path src identifies the vertex. */
struct PathWord {
  int src = 0;
  std::vector<int> arrows;
};

struct RelTerm {
  Fp coeff = 1;
  PathWord path;
};
using Relation = std::vector<RelTerm>;

struct QuiverPresentation {
  Quiver quiver;
  std::vector<Relation> relations;
};

/* Sparse element of the path algebra quotient: (basis index, coefficient),
 * sorted by index. */
using AlgElem = std::vector<std::pair<int, Fp>>;

AlgElem elem_add(const AlgElem& x, const AlgElem& y);
AlgElem elem_scale(const AlgElem& x, Fp c);
inline AlgElem elem_neg(const AlgElem& x) { return elem_scale(x, fp::neg(1)); }
inline bool elem_is_zero(const AlgElem& x) { return x.empty(); }

/* Basic finite-dimensional quotient of a path algebra. The basis consists of
 * the rewrite-irreducible paths, ordered by length then lexicographically by
 * arrow indices. */
struct FinDimAlgebra {
  QuiverPresentation pres;
  std::vector<PathWord> basis;
  std::vector<int> basis_src, basis_tgt;
  std::vector<int> idem;  // basis index of the length-0 path at each vertex
  std::vector<std::vector<AlgElem>> mult_table;  // [i][j] = (path i) after (path j)

  int nverts() const { return int(pres.quiver.vertices.size()); }
  int narrows() const { return int(pres.quiver.arrows.size()); }
  int dim() const { return int(basis.size()); }
  int vtx_of_arrow_src(int a) const { return pres.quiver.arrows[std::size_t(a)].src; }
  int vtx_of_arrow_tgt(int a) const { return pres.quiver.arrows[std::size_t(a)].tgt; }

  /* Basis index of a single arrow viewed as an algebra element. */
  int arrow_basis_index(int a) const;

  AlgElem mult(const AlgElem& x, const AlgElem& y) const;
  AlgElem idem_elem(int v) const { return {{idem[std::size_t(v)], 1}}; }
  AlgElem arrow_elem(int a) const { return {{arrow_basis_index(a), 1}}; }

  /* Indices of basis paths of length >= 1 (the arrow-ideal basis). For the
   * reduced presentations built here the arrow ideal is nilpotent, so this
   * is the radical. */
  std::vector<int> radical_basis() const;

  /* Multiply out a word given by arrow indices in application order. */
  AlgElem word_elem(int src, const std::vector<int>& word) const;
};

/* Build the quotient algebra. Fails with an error naming an offending path
 * when an irreducible path longer than path_length_cap survives. */
FinDimAlgebra path_algebra(const QuiverPresentation& pres, int path_length_cap = 12);

/* The enveloping algebra A (x) A^op as a quiver presentation on the product
 * quiver, with lifted relations on both sides and commutation relations. */
QuiverPresentation enveloping_presentation(const QuiverPresentation& pres);

/* Cartan matrix: entry (u,v) = number of basis paths from v to u, i.e. the
 * dimension of vertex u in the projective cover of the simple at v. */
IntMat cartan_matrix(const FinDimAlgebra& alg);

/* Built-ins: "k", "kA2", "kA3", "kA4", "kronecker", "kxx" (dual numbers),
 * "kA3zero" (linear A3 with the length-2 path killed). */
QuiverPresentation builtin_presentation(const std::string& name);
FinDimAlgebra builtin_algebra(const std::string& name, int path_length_cap = 12);

}  // namespace lf
