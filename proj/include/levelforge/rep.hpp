#pragma once

#include "levelforge/quiver.hpp"

namespace lf {

/* A finite-dimensional left module, stored as a representation: one space
 * per vertex, one matrix per arrow (shape dims[tgt] x dims[src]). */
struct Module {
  std::vector<int> dims;
  std::vector<Mat> act;

  int total_dim() const;
  bool is_zero() const { return total_dim() == 0; }
  bool operator==(const Module& o) const { return dims == o.dims && act == o.act; }
};

/* A morphism of modules: one matrix per vertex (shape N.dims[v] x M.dims[v]). */
struct ModuleMap {
  std::vector<Mat> f;
  bool is_zero() const;
};

Module zero_module(const FinDimAlgebra& alg);
Module direct_sum(const FinDimAlgebra& alg, const Module& a, const Module& b);

/* Validity checks; throw on failure. */
void validate_module(const FinDimAlgebra& alg, const Module& m);
void validate_map(const FinDimAlgebra& alg, const Module& m, const Module& n, const ModuleMap& f);

Mat path_action(const FinDimAlgebra& alg, const Module& m, const PathWord& p);
/* Action of an algebra element whose terms all run src_v -> tgt_v. */
Mat elem_action(const FinDimAlgebra& alg, const Module& m, const AlgElem& x, int src_v, int tgt_v);

ModuleMap zero_map(const Module& m, const Module& n);
ModuleMap identity_map(const Module& m);
ModuleMap compose(const ModuleMap& g, const ModuleMap& f);  // g after f
ModuleMap map_add(const ModuleMap& a, const ModuleMap& b);
ModuleMap map_sub(const ModuleMap& a, const ModuleMap& b);
ModuleMap map_scale(const ModuleMap& a, Fp c);

/* Indecomposable projective P_v = (path algebra) * e_v and the simple S_v.
 * The basis of (P_v)_u is the set of algebra basis paths v -> u in basis
 * order; projective_vertex_basis exposes the global basis indices used. */
Module projective_module(const FinDimAlgebra& alg, int v);
std::vector<std::vector<int>> projective_vertex_basis(const FinDimAlgebra& alg, int v);
Module simple_module(const FinDimAlgebra& alg, int v);
Module free_module(const FinDimAlgebra& alg);  // sum of all P_v

struct StandardModules {
  std::vector<Module> projectives, simples;
};
StandardModules standard_modules(const FinDimAlgebra& alg);

/* Basis of Hom(M,N) as module maps, deterministic. */
std::vector<ModuleMap> hom_space(const FinDimAlgebra& alg, const Module& m, const Module& n);
int hom_dim(const FinDimAlgebra& alg, const Module& m, const Module& n);

struct SubModule {
  Module sub;
  ModuleMap inclusion;
};
/* One basis matrix per vertex; columns must be independent and the family
 * arrow-invariant. */
SubModule sub_module(const FinDimAlgebra& alg, const Module& m, const std::vector<Mat>& bases);

struct QuotientModule {
  Module quot;
  ModuleMap projection;  // M -> Q
  std::vector<Mat> section;  // Q -> M, vertexwise lift (not a module map in general)
};
QuotientModule quotient_module(const FinDimAlgebra& alg, const Module& m,
                               const std::vector<Mat>& sub_bases);

SubModule kernel_of(const FinDimAlgebra& alg, const Module& m, const Module& n,
                    const ModuleMap& f);
SubModule image_of(const FinDimAlgebra& alg, const Module& m, const Module& n,
                   const ModuleMap& f);

/* Radical and top of a module. */
std::vector<Mat> radical_bases(const FinDimAlgebra& alg, const Module& m);
QuotientModule top_of(const FinDimAlgebra& alg, const Module& m);

}  // namespace lf
