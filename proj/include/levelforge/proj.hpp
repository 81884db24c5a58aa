#pragma once

#include <optional>

#include "levelforge/complex.hpp"

namespace lf {

/* Matrix over the path algebra. Entry (r,c) encodes a map P[cols_v[c]] -> P[rows_v[r]]
 * acting by right multiplication; its basis paths run rows_v[r] -> cols_v[c].
 * Composition rule: if x encodes f and y encodes g then g∘f is encoded by mult(x, y). */
struct AlgMat {
  std::vector<int> rows_v, cols_v;
  std::vector<AlgElem> e;

  int rows() const { return int(rows_v.size()); }
  int cols() const { return int(cols_v.size()); }
  AlgElem& at(int r, int c) { return e[size_t(r) * cols_v.size() + size_t(c)]; }
  const AlgElem& at(int r, int c) const { return e[size_t(r) * cols_v.size() + size_t(c)]; }
  bool is_zero() const;

  static AlgMat zero(std::vector<int> rv, std::vector<int> cv);
  static AlgMat identity(const FinDimAlgebra& alg, std::vector<int> verts);
};

AlgMat algmat_add(const AlgMat& a, const AlgMat& b);
AlgMat algmat_sub(const AlgMat& a, const AlgMat& b);
AlgMat algmat_scale(const AlgMat& a, Fp c);
/* f after g */
AlgMat algmat_compose(const FinDimAlgebra& alg, const AlgMat& f, const AlgMat& g);
bool algmat_equal(const AlgMat& a, const AlgMat& b);

/* Bounded complex of projectives, terms given as summand vertex lists. */
struct ProjComplex {
  int lo = 0;
  std::vector<std::vector<int>> terms;
  std::vector<AlgMat> diffs;

  int hi() const { return lo + int(terms.size()) - 1; }
  bool in_range(int k) const { return k >= lo && k <= hi(); }
  std::vector<int> term_at(int k) const { return in_range(k) ? terms[size_t(k - lo)] : std::vector<int>{}; }
  AlgMat diff_at(int k) const;
  int width() const;
  int summand_count() const;
  int total_dim(const FinDimAlgebra& alg) const;
};

ProjComplex proj_single(const FinDimAlgebra& alg, int vertex, int degree);
ProjComplex proj_generator(const FinDimAlgebra& alg, int degree = 0);
void validate_proj(const FinDimAlgebra& alg, const ProjComplex& x);
ProjComplex proj_trim(const ProjComplex& x);
ProjComplex proj_shift(const ProjComplex& x, int n);
ProjComplex proj_direct_sum(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b);
bool proj_is_minimal(const FinDimAlgebra& alg, const ProjComplex& x);

/* Chain map between projective complexes; comps[i] maps a.term(lo+i) into b,
 * possibly with a fixed shift: comps[i] : A^{a.lo+i} -> B^{a.lo+i+n}. */
struct ProjChainMap {
  std::vector<AlgMat> comps;
};

AlgMat chain_comp_at(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b,
                     const ProjChainMap& f, int n, int k);
ProjChainMap proj_chain_zero(const FinDimAlgebra& alg, const ProjComplex& a,
                             const ProjComplex& b, int n);
ProjChainMap proj_chain_identity(const FinDimAlgebra& alg, const ProjComplex& a);
void validate_proj_chain(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b,
                         const ProjChainMap& f, int n);
ProjChainMap proj_chain_add(const ProjChainMap& f, const ProjChainMap& g);
ProjChainMap proj_chain_sub(const ProjChainMap& f, const ProjChainMap& g);
ProjChainMap proj_chain_scale(const ProjChainMap& f, Fp c);
bool proj_chain_is_zero(const ProjChainMap& f);
/* (g: A->B[m]) after (f: Z->A[n]), giving Z -> B[n+m]. */
ProjChainMap proj_chain_compose(const FinDimAlgebra& alg, const ProjComplex& z,
                                const ProjComplex& a, const ProjComplex& b,
                                const ProjChainMap& f, int n, const ProjChainMap& g, int m);

ProjComplex proj_cone(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b,
                      const ProjChainMap& f);

/* Expansion to explicit modules. */
struct ExpandInfo {
  /* layout[u] lists (summand index, algebra basis index) giving the expanded basis at vertex u */
  std::vector<std::vector<std::pair<int, int>>> layout;
  std::vector<int> gen_pos;  // position of the summand generator e_v inside layout[v]
  int position(int u, int summand, int basis_idx) const;
};

Module expand_term(const FinDimAlgebra& alg, const std::vector<int>& verts,
                   ExpandInfo* info = nullptr);
ModuleMap expand_algmat(const FinDimAlgebra& alg, const AlgMat& m);
ModCplx expand_proj(const FinDimAlgebra& alg, const ProjComplex& x);
ModChainMap expand_proj_chain(const FinDimAlgebra& alg, const ProjComplex& a,
                              const ProjComplex& b, const ProjChainMap& f);

/* Recover the algebra form of a module map between expanded projective terms. */
AlgMat algmat_of_module_map(const FinDimAlgebra& alg, const std::vector<int>& src_verts,
                            const std::vector<int>& tgt_verts, const ModuleMap& f);

/* Flattened coordinates on Hom(⊕P_cols, ⊕P_rows) at the algebra level. */
struct AlgHomLayout {
  std::vector<int> rows_v, cols_v;
  struct Slot {
    int r, c, path;
  };
  std::vector<Slot> slots;
  int dim() const { return int(slots.size()); }
};
AlgHomLayout alg_hom_layout(const FinDimAlgebra& alg, const std::vector<int>& cols_v,
                            const std::vector<int>& rows_v);
std::vector<Fp> algmat_flatten(const AlgHomLayout& l, const AlgMat& m);
AlgMat algmat_unflatten(const AlgHomLayout& l, const std::vector<Fp>& v);
/* coordinates of f |-> g∘f, where g: rows(src) -> rows(dst) and cols agree */
Mat post_compose_op(const FinDimAlgebra& alg, const AlgMat& g, const AlgHomLayout& src,
                    const AlgHomLayout& dst);
/* coordinates of f |-> f∘g, where g: cols(dst) -> cols(src) and rows agree */
Mat pre_compose_op(const FinDimAlgebra& alg, const AlgMat& g, const AlgHomLayout& src,
                   const AlgHomLayout& dst);

/* Hom in the homotopy category between projective complexes, one shift at a time:
 * elements are chain maps a -> b[n] modulo homotopy. */
struct HomProj {
  int n = 0;
  int dim = 0;
  std::vector<ProjChainMap> reps;  // comps indexed by a's degrees, A^i -> B^{i+n}
  std::vector<int> block_deg;      // flattening layout: degree of each block
  std::vector<AlgHomLayout> block_layout;
  std::vector<int> block_offset;
  int flat_dim = 0;
  Mat solver;  // [boundary basis | representative cycles]
  std::vector<Fp> flatten(const ProjComplex& a, const ProjChainMap& f) const;
  std::vector<Fp> classify(const std::vector<Fp>& flat) const;
  std::vector<Fp> classify_map(const ProjComplex& a, const ProjChainMap& f) const;
};
HomProj hom_k_proj(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b, int n);

/* Same, with an explicit module complex target: elements are chain maps
 * expand(a) -> b[n] modulo homotopy (valid because a has projective terms). */
struct HomMod {
  int n = 0;
  int dim = 0;
  std::vector<ModChainMap> reps;  // comps indexed by a's degrees, expand(A^i) -> B^{i+n}
  struct Block {
    int deg;
    std::vector<int> verts;
    std::vector<int> summand_offset;
    int dim;
  };
  std::vector<Block> blocks;
  std::vector<int> block_offset;
  int flat_dim = 0;
  Mat solver;
  std::vector<Fp> flatten(const FinDimAlgebra& alg, const ProjComplex& a, const ModCplx& b,
                          const ModChainMap& f) const;
  std::vector<Fp> classify(const std::vector<Fp>& flat) const;
};
HomMod hom_k_mod(const FinDimAlgebra& alg, const ProjComplex& a, const ModCplx& b, int n);

/* Null-homotopy of a degree-0 chain map f: a -> b: comps H_i : A^i -> B^{i-1}
 * with f = d_B H + H d_A; nullopt if f is not null-homotopic. */
std::optional<ProjChainMap> chain_nullhomotopy(const FinDimAlgebra& alg, const ProjComplex& a,
                                               const ProjComplex& b, const ProjChainMap& f);
bool chain_homotopic(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b,
                     const ProjChainMap& f, const ProjChainMap& g);

/* Gaussian elimination on scalar entries; to_min/from_min are mutually inverse
 * homotopy equivalences. */
struct Minimalized {
  ProjComplex min;
  ProjChainMap to_min, from_min;
};
Minimalized minimalize(const FinDimAlgebra& alg, const ProjComplex& x);

/* Minimal projective resolution of a module, placed in degrees [-length, 0]. */
struct Resolution {
  ProjComplex p;
  ModuleMap aug;  // expand(p at degree 0) -> m
  bool finite = true;
  int length = 0;
};
Resolution projective_resolution(const FinDimAlgebra& alg, const Module& m, int cap);

int projective_dimension(const FinDimAlgebra& alg, const Module& m, int cap);  // -1 if > cap
int global_dimension(const FinDimAlgebra& alg, int cap);                       // -1 if > cap

/* Complex of projectives quasi-isomorphic to x (resolve each term, twist). */
struct ProjModel {
  ProjComplex total;
  ModChainMap aug;  // expand(total) -> x, a quasi-isomorphism
};
ProjModel projective_model(const FinDimAlgebra& alg, const ModCplx& x, int cap);

/* Split a homotopy idempotent e on q: returns complexes with q ≅ part_one ⊕ part_two,
 * part_one the image. idem is the strict idempotent chain map used. */
struct SplitResult {
  ProjComplex part_one, part_two;
  ProjChainMap idem;
};
SplitResult split_homotopy_idempotent(const FinDimAlgebra& alg, const ProjComplex& q,
                                      const ProjChainMap& e);

/* Iterated cone on central elements; supported in degrees [-n, 0]. */
ProjComplex koszul_complex(const FinDimAlgebra& alg, const std::vector<AlgElem>& elems);

}  // namespace lf
