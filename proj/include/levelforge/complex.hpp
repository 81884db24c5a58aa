#pragma once

#include "levelforge/rep.hpp"

namespace lf {

/* Bounded cochain complex of modules; diffs[i]: terms[i] -> terms[i+1].
 * Degree k term = terms[k - lo]. */
struct ModCplx {
  int lo = 0;
  std::vector<Module> terms;
  std::vector<ModuleMap> diffs;  // size = terms.size() - 1 (or 0)

  int hi() const { return lo + int(terms.size()) - 1; }
  bool in_range(int k) const { return k >= lo && k <= hi(); }
  const Module& term(int k) const;
  const ModuleMap& diff(int k) const;  // valid for lo <= k < hi
  int total_dim() const;
};

ModCplx module_complex(const FinDimAlgebra& alg, const Module& m, int degree);
ModCplx zero_complex(const FinDimAlgebra& alg);

void validate_complex(const FinDimAlgebra& alg, const ModCplx& x);

/* Drop zero terms at both ends. */
ModCplx trim(const FinDimAlgebra& alg, const ModCplx& x);

ModCplx shift(const FinDimAlgebra& alg, const ModCplx& x, int n);
ModCplx cplx_direct_sum(const FinDimAlgebra& alg, const ModCplx& a, const ModCplx& b);

/* Chain map of complexes (degree 0); comps indexed like the source. */
struct ModChainMap {
  std::vector<ModuleMap> comps;
};

ModuleMap chain_comp(const FinDimAlgebra& alg, const ModCplx& a, const ModCplx& b,
                     const ModChainMap& f, int k);
void validate_chain_map(const FinDimAlgebra& alg, const ModCplx& a, const ModCplx& b,
                        const ModChainMap& f);

ModCplx cone(const FinDimAlgebra& alg, const ModCplx& a, const ModCplx& b,
             const ModChainMap& f);

struct Triangle {
  ModCplx a, b, c;       // c = cone(f)
  ModChainMap f;         // a -> b
  ModChainMap inclusion; // b -> c
  ModChainMap projection;  // c -> a[1]
};
Triangle triangle_of(const FinDimAlgebra& alg, const ModCplx& a, const ModCplx& b,
                     const ModChainMap& f);

/* Homology in one degree, with explicit representative vectors so maps can
 * be transported. reps[v] columns live in term(i) at vertex v; classify
 * sends a vertex vector to its class coordinates. */
struct HomologyData {
  Module h;
  std::vector<Mat> reps;
  std::vector<Mat> bnd;       // image basis of the incoming differential
  std::vector<Mat> solver;    // [bnd | reps] per vertex
  std::vector<Fp> classify(const FinDimAlgebra& alg, int v, const std::vector<Fp>& vec) const;
};

HomologyData homology(const FinDimAlgebra& alg, const ModCplx& x, int i);
std::vector<int> homology_dims_at(const FinDimAlgebra& alg, const ModCplx& x, int i);

ModuleMap induced_on_homology(const FinDimAlgebra& alg, const ModCplx& x, const ModCplx& y,
                              const ModChainMap& f, int i, const HomologyData& hx,
                              const HomologyData& hy);

/* Exactness check of the homology sequence of a mapping cone. */
bool long_exact_sequence_ok(const FinDimAlgebra& alg, const Triangle& t);

}  // namespace lf
