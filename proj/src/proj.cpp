#include "levelforge/proj.hpp"

#include <algorithm>
#include <map>

namespace lf {

namespace {

Fp coeff_of(const AlgElem& e, int basis_idx) {
  for (auto& [i, c] : e)
    if (i == basis_idx) return c;
  return 0;
}

}  // namespace

bool AlgMat::is_zero() const {
  for (auto& x : e)
    if (!elem_is_zero(x)) return false;
  return true;
}

AlgMat AlgMat::zero(std::vector<int> rv, std::vector<int> cv) {
  AlgMat m;
  m.rows_v = std::move(rv);
  m.cols_v = std::move(cv);
  m.e.assign(m.rows_v.size() * m.cols_v.size(), {});
  return m;
}

AlgMat AlgMat::identity(const FinDimAlgebra& alg, std::vector<int> verts) {
  AlgMat m = zero(verts, verts);
  for (int i = 0; i < m.rows(); ++i) m.at(i, i) = alg.idem_elem(verts[size_t(i)]);
  return m;
}

AlgMat algmat_add(const AlgMat& a, const AlgMat& b) {
  if (a.rows_v != b.rows_v || a.cols_v != b.cols_v) throw Error("algmat add shape mismatch");
  AlgMat m = a;
  for (size_t i = 0; i < m.e.size(); ++i) m.e[i] = elem_add(m.e[i], b.e[i]);
  return m;
}

AlgMat algmat_sub(const AlgMat& a, const AlgMat& b) {
  return algmat_add(a, algmat_scale(b, fp::neg(1)));
}

AlgMat algmat_scale(const AlgMat& a, Fp c) {
  AlgMat m = a;
  for (auto& x : m.e) x = elem_scale(x, c);
  return m;
}

AlgMat algmat_compose(const FinDimAlgebra& alg, const AlgMat& f, const AlgMat& g) {
  if (f.cols_v != g.rows_v) throw Error("algmat compose shape mismatch");
  AlgMat m = AlgMat::zero(f.rows_v, g.cols_v);
  for (int r = 0; r < f.rows(); ++r)
    for (int c = 0; c < g.cols(); ++c) {
      AlgElem acc;
      for (int k = 0; k < f.cols(); ++k)
        acc = elem_add(acc, alg.mult(g.at(k, c), f.at(r, k)));
      m.at(r, c) = acc;
    }
  return m;
}

bool algmat_equal(const AlgMat& a, const AlgMat& b) {
  return a.rows_v == b.rows_v && a.cols_v == b.cols_v && algmat_sub(a, b).is_zero();
}

AlgMat ProjComplex::diff_at(int k) const {
  if (k >= lo && k < hi()) return diffs[size_t(k - lo)];
  return AlgMat::zero(term_at(k + 1), term_at(k));
}

int ProjComplex::width() const {
  int w = 0;
  for (auto& t : terms)
    if (!t.empty()) ++w;
  return w;
}

int ProjComplex::summand_count() const {
  int n = 0;
  for (auto& t : terms) n += int(t.size());
  return n;
}

int ProjComplex::total_dim(const FinDimAlgebra& alg) const {
  int n = 0;
  for (auto& t : terms)
    for (int v : t) n += projective_module(alg, v).total_dim();
  return n;
}

ProjComplex proj_single(const FinDimAlgebra& alg, int vertex, int degree) {
  if (vertex < 0 || vertex >= alg.nverts()) throw Error("vertex out of range");
  ProjComplex x;
  x.lo = degree;
  x.terms = {{vertex}};
  return x;
}

ProjComplex proj_generator(const FinDimAlgebra& alg, int degree) {
  ProjComplex x;
  x.lo = degree;
  std::vector<int> all;
  for (int v = 0; v < alg.nverts(); ++v) all.push_back(v);
  x.terms = {all};
  return x;
}

void validate_proj(const FinDimAlgebra& alg, const ProjComplex& x) {
  if (x.terms.empty()) throw Error("projective complex has no terms");
  if (x.diffs.size() + 1 != x.terms.size()) throw Error("projective complex differential count mismatch");
  for (auto& t : x.terms)
    for (int v : t)
      if (v < 0 || v >= alg.nverts()) throw Error("projective complex vertex out of range");
  for (size_t i = 0; i < x.diffs.size(); ++i) {
    const AlgMat& d = x.diffs[i];
    if (d.cols_v != x.terms[i] || d.rows_v != x.terms[i + 1])
      throw Error("projective complex differential shape mismatch");
    for (int r = 0; r < d.rows(); ++r)
      for (int c = 0; c < d.cols(); ++c)
        for (auto& [p, cf] : d.at(r, c)) {
          (void)cf;
          if (alg.basis_src[size_t(p)] != d.rows_v[size_t(r)] ||
              alg.basis_tgt[size_t(p)] != d.cols_v[size_t(c)])
            throw Error("projective complex entry has wrong support");
        }
  }
  for (size_t i = 0; i + 1 < x.diffs.size(); ++i)
    if (!algmat_compose(alg, x.diffs[i + 1], x.diffs[i]).is_zero())
      throw Error("projective complex differential does not square to zero");
}

ProjComplex proj_trim(const ProjComplex& x) {
  int a = x.lo, b = x.hi();
  while (a < b && x.term_at(a).empty()) ++a;
  while (b > a && x.term_at(b).empty()) --b;
  ProjComplex y;
  y.lo = a;
  for (int k = a; k <= b; ++k) y.terms.push_back(x.term_at(k));
  for (int k = a; k < b; ++k) y.diffs.push_back(x.diff_at(k));
  return y;
}

ProjComplex proj_shift(const ProjComplex& x, int n) {
  ProjComplex y = x;
  y.lo -= n;
  if (n % 2 != 0)
    for (auto& d : y.diffs) d = algmat_scale(d, fp::neg(1));
  return y;
}

ProjComplex proj_direct_sum(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b) {
  ProjComplex y;
  y.lo = std::min(a.lo, b.lo);
  int top = std::max(a.hi(), b.hi());
  for (int k = y.lo; k <= top; ++k) {
    std::vector<int> t = a.term_at(k);
    for (int v : b.term_at(k)) t.push_back(v);
    y.terms.push_back(t);
  }
  for (int k = y.lo; k < top; ++k) {
    AlgMat da = a.diff_at(k), db = b.diff_at(k);
    AlgMat d = AlgMat::zero(y.terms[size_t(k + 1 - y.lo)], y.terms[size_t(k - y.lo)]);
    for (int r = 0; r < da.rows(); ++r)
      for (int c = 0; c < da.cols(); ++c) d.at(r, c) = da.at(r, c);
    int ro = da.rows(), co = da.cols();
    for (int r = 0; r < db.rows(); ++r)
      for (int c = 0; c < db.cols(); ++c) d.at(ro + r, co + c) = db.at(r, c);
    y.diffs.push_back(d);
  }
  return y;
}

bool proj_is_minimal(const FinDimAlgebra& alg, const ProjComplex& x) {
  for (auto& d : x.diffs)
    for (int r = 0; r < d.rows(); ++r)
      for (int c = 0; c < d.cols(); ++c) {
        if (d.rows_v[size_t(r)] != d.cols_v[size_t(c)]) continue;
        if (coeff_of(d.at(r, c), alg.idem[size_t(d.rows_v[size_t(r)])]) != 0) return false;
      }
  return true;
}

AlgMat chain_comp_at(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b,
                     const ProjChainMap& f, int n, int k) {
  (void)alg;
  if (a.in_range(k) && size_t(k - a.lo) < f.comps.size()) return f.comps[size_t(k - a.lo)];
  return AlgMat::zero(b.term_at(k + n), a.term_at(k));
}

ProjChainMap proj_chain_zero(const FinDimAlgebra& alg, const ProjComplex& a,
                             const ProjComplex& b, int n) {
  (void)alg;
  ProjChainMap f;
  for (int k = a.lo; k <= a.hi(); ++k)
    f.comps.push_back(AlgMat::zero(b.term_at(k + n), a.term_at(k)));
  return f;
}

ProjChainMap proj_chain_identity(const FinDimAlgebra& alg, const ProjComplex& a) {
  ProjChainMap f;
  for (int k = a.lo; k <= a.hi(); ++k) f.comps.push_back(AlgMat::identity(alg, a.term_at(k)));
  return f;
}

void validate_proj_chain(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b,
                         const ProjChainMap& f, int n) {
  if (f.comps.size() != a.terms.size()) throw Error("chain map component count mismatch");
  for (int k = a.lo; k <= a.hi(); ++k) {
    const AlgMat& m = f.comps[size_t(k - a.lo)];
    if (m.cols_v != a.term_at(k) || m.rows_v != b.term_at(k + n))
      throw Error("chain map component shape mismatch");
  }
  Fp sign = (n % 2 == 0) ? 1 : fp::neg(1);
  for (int k = a.lo - 1; k <= a.hi(); ++k) {
    // d_B f_k = (-1)^n f_{k+1} d_A
    AlgMat lhs = algmat_compose(alg, b.diff_at(k + n), chain_comp_at(alg, a, b, f, n, k));
    AlgMat rhs = algmat_scale(
        algmat_compose(alg, chain_comp_at(alg, a, b, f, n, k + 1), a.diff_at(k)), sign);
    if (!algmat_equal(lhs, rhs)) throw Error("chain map does not commute with differentials");
  }
}

ProjChainMap proj_chain_add(const ProjChainMap& f, const ProjChainMap& g) {
  if (f.comps.size() != g.comps.size()) throw Error("chain map add mismatch");
  ProjChainMap h;
  for (size_t i = 0; i < f.comps.size(); ++i) h.comps.push_back(algmat_add(f.comps[i], g.comps[i]));
  return h;
}

ProjChainMap proj_chain_sub(const ProjChainMap& f, const ProjChainMap& g) {
  return proj_chain_add(f, proj_chain_scale(g, fp::neg(1)));
}

ProjChainMap proj_chain_scale(const ProjChainMap& f, Fp c) {
  ProjChainMap h = f;
  for (auto& m : h.comps) m = algmat_scale(m, c);
  return h;
}

bool proj_chain_is_zero(const ProjChainMap& f) {
  for (auto& m : f.comps)
    if (!m.is_zero()) return false;
  return true;
}

ProjChainMap proj_chain_compose(const FinDimAlgebra& alg, const ProjComplex& z,
                                const ProjComplex& a, const ProjComplex& b,
                                const ProjChainMap& f, int n, const ProjChainMap& g, int m) {
  ProjChainMap h;
  for (int k = z.lo; k <= z.hi(); ++k)
    h.comps.push_back(algmat_compose(alg, chain_comp_at(alg, a, b, g, m, k + n),
                                     chain_comp_at(alg, z, a, f, n, k)));
  return h;
}

ProjComplex proj_cone(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b,
                      const ProjChainMap& f) {
  ProjComplex c;
  c.lo = std::min(a.lo - 1, b.lo);
  int top = std::max(a.hi() - 1, b.hi());
  for (int k = c.lo; k <= top; ++k) {
    std::vector<int> t = a.term_at(k + 1);
    for (int v : b.term_at(k)) t.push_back(v);
    c.terms.push_back(t);
  }
  for (int k = c.lo; k < top; ++k) {
    AlgMat da = a.diff_at(k + 1), db = b.diff_at(k);
    AlgMat fk = chain_comp_at(alg, a, b, f, 0, k + 1);
    AlgMat d = AlgMat::zero(c.terms[size_t(k + 1 - c.lo)], c.terms[size_t(k - c.lo)]);
    for (int r = 0; r < da.rows(); ++r)
      for (int cc = 0; cc < da.cols(); ++cc) d.at(r, cc) = elem_neg(da.at(r, cc));
    int ro = da.rows(), co = da.cols();
    for (int r = 0; r < fk.rows(); ++r)
      for (int cc = 0; cc < fk.cols(); ++cc) d.at(ro + r, cc) = fk.at(r, cc);
    for (int r = 0; r < db.rows(); ++r)
      for (int cc = 0; cc < db.cols(); ++cc) d.at(ro + r, co + cc) = db.at(r, cc);
    c.diffs.push_back(d);
  }
  return c;
}

int ExpandInfo::position(int u, int summand, int basis_idx) const {
  const auto& lay = layout[size_t(u)];
  for (int p = 0; p < int(lay.size()); ++p)
    if (lay[size_t(p)].first == summand && lay[size_t(p)].second == basis_idx) return p;
  throw Error("expanded basis position not found");
}

Module expand_term(const FinDimAlgebra& alg, const std::vector<int>& verts, ExpandInfo* info) {
  Module m = zero_module(alg);
  ExpandInfo inf;
  inf.layout.resize(size_t(alg.nverts()));
  inf.gen_pos.assign(verts.size(), -1);
  for (int s = 0; s < int(verts.size()); ++s) {
    auto per = projective_vertex_basis(alg, verts[size_t(s)]);
    for (int u = 0; u < alg.nverts(); ++u)
      for (int b : per[size_t(u)]) {
        if (b == alg.idem[size_t(verts[size_t(s)])])
          inf.gen_pos[size_t(s)] = int(inf.layout[size_t(u)].size());
        inf.layout[size_t(u)].push_back({s, b});
      }
  }
  for (int u = 0; u < alg.nverts(); ++u) m.dims[size_t(u)] = int(inf.layout[size_t(u)].size());
  m.act.resize(size_t(alg.narrows()));
  for (int a = 0; a < alg.narrows(); ++a) {
    int sv = alg.pres.quiver.arrows[size_t(a)].src;
    int tv = alg.pres.quiver.arrows[size_t(a)].tgt;
    Mat act = Mat::zero(m.dims[size_t(tv)], m.dims[size_t(sv)]);
    AlgElem ar = alg.arrow_elem(a);
    for (int c = 0; c < m.dims[size_t(sv)]; ++c) {
      auto [s, b] = inf.layout[size_t(sv)][size_t(c)];
      AlgElem img = alg.mult(ar, alg.word_elem(alg.basis[size_t(b)].src, alg.basis[size_t(b)].arrows));
      for (auto& [w, cf] : img) act.at(inf.position(tv, s, w), c) = cf;
    }
    m.act[size_t(a)] = act;
  }
  if (info) *info = inf;
  return m;
}

ModuleMap expand_algmat(const FinDimAlgebra& alg, const AlgMat& m) {
  ExpandInfo si, ti;
  Module src = expand_term(alg, m.cols_v, &si);
  Module tgt = expand_term(alg, m.rows_v, &ti);
  ModuleMap f = zero_map(src, tgt);
  for (int u = 0; u < alg.nverts(); ++u) {
    for (int c = 0; c < src.dims[size_t(u)]; ++c) {
      auto [s, z] = si.layout[size_t(u)][size_t(c)];
      AlgElem ze = alg.word_elem(alg.basis[size_t(z)].src, alg.basis[size_t(z)].arrows);
      for (int r = 0; r < m.rows(); ++r) {
        AlgElem img = alg.mult(ze, m.at(r, s));
        for (auto& [w, cf] : img) f.f[size_t(u)].at(ti.position(u, r, w), c) = cf;
      }
    }
  }
  return f;
}

ModCplx expand_proj(const FinDimAlgebra& alg, const ProjComplex& x) {
  ModCplx y;
  y.lo = x.lo;
  for (auto& t : x.terms) y.terms.push_back(expand_term(alg, t));
  for (auto& d : x.diffs) y.diffs.push_back(expand_algmat(alg, d));
  return y;
}

ModChainMap expand_proj_chain(const FinDimAlgebra& alg, const ProjComplex& a,
                              const ProjComplex& b, const ProjChainMap& f) {
  ModChainMap g;
  for (int k = a.lo; k <= a.hi(); ++k)
    g.comps.push_back(expand_algmat(alg, chain_comp_at(alg, a, b, f, 0, k)));
  return g;
}

AlgMat algmat_of_module_map(const FinDimAlgebra& alg, const std::vector<int>& src_verts,
                            const std::vector<int>& tgt_verts, const ModuleMap& f) {
  ExpandInfo si, ti;
  expand_term(alg, src_verts, &si);
  expand_term(alg, tgt_verts, &ti);
  AlgMat m = AlgMat::zero(tgt_verts, src_verts);
  for (int c = 0; c < int(src_verts.size()); ++c) {
    int v = src_verts[size_t(c)];
    int pos = si.gen_pos[size_t(c)];
    const Mat& fv = f.f[size_t(v)];
    for (int q = 0; q < fv.rows; ++q) {
      Fp cf = fv.at(q, pos);
      if (cf == 0) continue;
      auto [r, w] = ti.layout[size_t(v)][size_t(q)];
      m.at(r, c) = elem_add(m.at(r, c), {{w, cf}});
    }
  }
  return m;
}

AlgHomLayout alg_hom_layout(const FinDimAlgebra& alg, const std::vector<int>& cols_v,
                            const std::vector<int>& rows_v) {
  AlgHomLayout l;
  l.rows_v = rows_v;
  l.cols_v = cols_v;
  for (int r = 0; r < int(rows_v.size()); ++r)
    for (int c = 0; c < int(cols_v.size()); ++c)
      for (int p = 0; p < alg.dim(); ++p)
        if (alg.basis_src[size_t(p)] == rows_v[size_t(r)] &&
            alg.basis_tgt[size_t(p)] == cols_v[size_t(c)])
          l.slots.push_back({r, c, p});
  return l;
}

namespace {

int layout_slot(const AlgHomLayout& l, int r, int c, int p) {
  for (int i = 0; i < int(l.slots.size()); ++i)
    if (l.slots[size_t(i)].r == r && l.slots[size_t(i)].c == c && l.slots[size_t(i)].path == p)
      return i;
  return -1;
}

}  // namespace

std::vector<Fp> algmat_flatten(const AlgHomLayout& l, const AlgMat& m) {
  if (m.rows_v != l.rows_v || m.cols_v != l.cols_v) throw Error("flatten shape mismatch");
  std::vector<Fp> v(l.slots.size(), 0);
  for (size_t i = 0; i < l.slots.size(); ++i)
    v[i] = coeff_of(m.at(l.slots[i].r, l.slots[i].c), l.slots[i].path);
  return v;
}

AlgMat algmat_unflatten(const AlgHomLayout& l, const std::vector<Fp>& v) {
  if (v.size() != l.slots.size()) throw Error("unflatten size mismatch");
  AlgMat m = AlgMat::zero(l.rows_v, l.cols_v);
  for (size_t i = 0; i < l.slots.size(); ++i)
    if (v[i] != 0)
      m.at(l.slots[i].r, l.slots[i].c) =
          elem_add(m.at(l.slots[i].r, l.slots[i].c), {{l.slots[i].path, v[i]}});
  return m;
}

Mat post_compose_op(const FinDimAlgebra& alg, const AlgMat& g, const AlgHomLayout& src,
                    const AlgHomLayout& dst) {
  if (g.cols_v != src.rows_v || g.rows_v != dst.rows_v || src.cols_v != dst.cols_v)
    throw Error("post compose shape mismatch");
  Mat m = Mat::zero(dst.dim(), src.dim());
  for (int i = 0; i < src.dim(); ++i) {
    auto& sl = src.slots[size_t(i)];
    AlgElem pe = {{sl.path, 1}};
    for (int r2 = 0; r2 < int(dst.rows_v.size()); ++r2) {
      AlgElem comp = alg.mult(pe, g.at(r2, sl.r));  // (f-entry then g-entry)
      for (auto& [w, cf] : comp) {
        int j = layout_slot(dst, r2, sl.c, w);
        if (j < 0) throw Error("post compose slot missing");
        m.at(j, i) = fp::add(m.at(j, i), cf);
      }
    }
  }
  return m;
}

Mat pre_compose_op(const FinDimAlgebra& alg, const AlgMat& g, const AlgHomLayout& src,
                   const AlgHomLayout& dst) {
  if (g.rows_v != src.cols_v || g.cols_v != dst.cols_v || src.rows_v != dst.rows_v)
    throw Error("pre compose shape mismatch");
  Mat m = Mat::zero(dst.dim(), src.dim());
  for (int i = 0; i < src.dim(); ++i) {
    auto& sl = src.slots[size_t(i)];
    AlgElem pe = {{sl.path, 1}};
    for (int c2 = 0; c2 < int(dst.cols_v.size()); ++c2) {
      AlgElem comp = alg.mult(g.at(sl.c, c2), pe);  // (g-entry then f-entry)
      for (auto& [w, cf] : comp) {
        int j = layout_slot(dst, sl.r, c2, w);
        if (j < 0) throw Error("pre compose slot missing");
        m.at(j, i) = fp::add(m.at(j, i), cf);
      }
    }
  }
  return m;
}

namespace {

/* Shared homology-of-a-two-step-sequence extraction: given D_out (cycles = its kernel)
 * and D_in (boundaries = its image), produce representative columns and the solver. */
struct FlatHomology {
  int dim = 0;
  Mat reps;    // flat_dim x dim
  Mat solver;  // [boundary basis | reps]
};

FlatHomology flat_homology(const Mat& d_out, const Mat& d_in) {
  FlatHomology h;
  Mat z = kernel_basis(d_out);
  Mat b = column_space_basis(d_in);
  Mat both = b.hstack(z);
  Mat r = both;
  std::vector<int> piv = rref(r);
  std::vector<int> sel;
  for (int p : piv)
    if (p >= b.cols) sel.push_back(p - b.cols);
  h.dim = int(sel.size());
  h.reps = Mat::zero(z.rows, h.dim);
  for (int j = 0; j < h.dim; ++j)
    for (int rr = 0; rr < z.rows; ++rr) h.reps.at(rr, j) = z.at(rr, sel[size_t(j)]);
  h.solver = b.hstack(h.reps);
  return h;
}

std::vector<Fp> classify_in(const Mat& solver, int dim, const std::vector<Fp>& flat) {
  if (dim == 0) return {};
  Mat rhs(solver.rows, 1);
  if (int(flat.size()) != solver.rows) throw Error("classify dimension mismatch");
  for (int r = 0; r < solver.rows; ++r) rhs.at(r, 0) = flat[size_t(r)];
  SolveResult sol = linear_solve(solver, rhs);
  if (!sol.solvable) throw Error("classify: not a cycle");
  std::vector<Fp> out(size_t(dim), 0);
  for (int j = 0; j < dim; ++j) out[size_t(j)] = sol.particular.at(solver.cols - dim + j, 0);
  return out;
}

}  // namespace

std::vector<Fp> HomProj::flatten(const ProjComplex& a, const ProjChainMap& f) const {
  std::vector<Fp> v(size_t(flat_dim), 0);
  for (size_t b = 0; b < block_deg.size(); ++b) {
    int k = block_deg[b];
    if (!a.in_range(k) || size_t(k - a.lo) >= f.comps.size()) continue;
    std::vector<Fp> part = algmat_flatten(block_layout[b], f.comps[size_t(k - a.lo)]);
    for (size_t i = 0; i < part.size(); ++i) v[size_t(block_offset[b]) + i] = part[i];
  }
  return v;
}

std::vector<Fp> HomProj::classify(const std::vector<Fp>& flat) const {
  return classify_in(solver, dim, flat);
}

std::vector<Fp> HomProj::classify_map(const ProjComplex& a, const ProjChainMap& f) const {
  return classify(flatten(a, f));
}

namespace {

struct ProjHomLevel {
  std::vector<int> degs;
  std::vector<AlgHomLayout> layouts;
  std::vector<int> offsets;
  int dim = 0;
};

ProjHomLevel proj_hom_level(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b,
                            int m) {
  ProjHomLevel l;
  for (int k = a.lo; k <= a.hi(); ++k) {
    l.degs.push_back(k);
    l.layouts.push_back(alg_hom_layout(alg, a.term_at(k), b.term_at(k + m)));
    l.offsets.push_back(l.dim);
    l.dim += l.layouts.back().dim();
  }
  return l;
}

/* D(f) = d_B ∘ f - (-1)^m f ∘ d_A as a matrix from level m to level m+1 */
Mat proj_hom_differential(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b,
                          int m, const ProjHomLevel& src, const ProjHomLevel& dst) {
  Mat d = Mat::zero(dst.dim, src.dim);
  Fp pre_sign = (m % 2 == 0) ? fp::neg(1) : 1;
  for (size_t bi = 0; bi < src.degs.size(); ++bi) {
    int k = src.degs[bi];
    if (src.layouts[bi].dim() > 0 && dst.layouts[bi].dim() > 0) {
      Mat post = post_compose_op(alg, b.diff_at(k + m), src.layouts[bi], dst.layouts[bi]);
      for (int r = 0; r < post.rows; ++r)
        for (int c = 0; c < post.cols; ++c)
          d.at(dst.offsets[bi] + r, src.offsets[bi] + c) =
              fp::add(d.at(dst.offsets[bi] + r, src.offsets[bi] + c), post.at(r, c));
    }
    if (bi + 1 < src.degs.size() && src.layouts[bi + 1].dim() > 0 && dst.layouts[bi].dim() > 0) {
      Mat pre = pre_compose_op(alg, a.diff_at(k), src.layouts[bi + 1], dst.layouts[bi]);
      for (int r = 0; r < pre.rows; ++r)
        for (int c = 0; c < pre.cols; ++c)
          d.at(dst.offsets[bi] + r, src.offsets[bi + 1] + c) =
              fp::add(d.at(dst.offsets[bi] + r, src.offsets[bi + 1] + c),
                      fp::mul(pre_sign, pre.at(r, c)));
    }
  }
  return d;
}

}  // namespace

HomProj hom_k_proj(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b, int n) {
  HomProj h;
  h.n = n;
  ProjHomLevel ln = proj_hom_level(alg, a, b, n);
  ProjHomLevel lnp = proj_hom_level(alg, a, b, n + 1);
  ProjHomLevel lnm = proj_hom_level(alg, a, b, n - 1);
  Mat d_out = proj_hom_differential(alg, a, b, n, ln, lnp);
  Mat d_in = proj_hom_differential(alg, a, b, n - 1, lnm, ln);
  FlatHomology fh = flat_homology(d_out, d_in);
  h.dim = fh.dim;
  h.block_deg = ln.degs;
  h.block_layout = ln.layouts;
  h.block_offset = ln.offsets;
  h.flat_dim = ln.dim;
  h.solver = fh.solver;
  for (int j = 0; j < fh.dim; ++j) {
    ProjChainMap f;
    for (size_t bi = 0; bi < ln.degs.size(); ++bi) {
      std::vector<Fp> part(size_t(ln.layouts[bi].dim()), 0);
      for (int i = 0; i < int(part.size()); ++i)
        part[size_t(i)] = fh.reps.at(ln.offsets[bi] + i, j);
      f.comps.push_back(algmat_unflatten(ln.layouts[bi], part));
    }
    h.reps.push_back(f);
  }
  return h;
}

namespace {

struct ModHomLevel {
  std::vector<HomMod::Block> blocks;
  std::vector<int> offsets;
  int dim = 0;
};

ModHomLevel mod_hom_level(const FinDimAlgebra& alg, const ProjComplex& a, const ModCplx& b,
                          int m) {
  ModHomLevel l;
  for (int k = a.lo; k <= a.hi(); ++k) {
    HomMod::Block blk;
    blk.deg = k;
    blk.verts = a.term_at(k);
    blk.dim = 0;
    for (int v : blk.verts) {
      blk.summand_offset.push_back(blk.dim);
      blk.dim += b.in_range(k + m) ? b.term(k + m).dims[size_t(v)] : 0;
    }
    l.offsets.push_back(l.dim);
    l.dim += blk.dim;
    l.blocks.push_back(blk);
  }
  return l;
}

Mat mod_hom_differential(const FinDimAlgebra& alg, const ProjComplex& a, const ModCplx& b, int m,
                         const ModHomLevel& src, const ModHomLevel& dst) {
  Mat d = Mat::zero(dst.dim, src.dim);
  Fp pre_sign = (m % 2 == 0) ? fp::neg(1) : 1;
  for (size_t bi = 0; bi < src.blocks.size(); ++bi) {
    int k = src.blocks[bi].deg;
    // post-composition with d_B, summand by summand
    if (b.in_range(k + m) && k + m < b.hi()) {
      const ModuleMap& db = b.diff(k + m);
      for (size_t s = 0; s < src.blocks[bi].verts.size(); ++s) {
        int v = src.blocks[bi].verts[s];
        const Mat& blockmat = db.f[size_t(v)];
        for (int r = 0; r < blockmat.rows; ++r)
          for (int c = 0; c < blockmat.cols; ++c)
            d.at(dst.offsets[bi] + dst.blocks[bi].summand_offset[s] + r,
                 src.offsets[bi] + src.blocks[bi].summand_offset[s] + c) =
                fp::add(d.at(dst.offsets[bi] + dst.blocks[bi].summand_offset[s] + r,
                             src.offsets[bi] + src.blocks[bi].summand_offset[s] + c),
                        blockmat.at(r, c));
      }
    }
    // pre-composition with d_A: from block k+1 into block k
    if (bi + 1 < src.blocks.size() && b.in_range(k + 1 + m)) {
      const Module& mod = b.term(k + 1 + m);
      AlgMat da = a.diff_at(k);
      for (size_t s = 0; s < src.blocks[bi + 1].verts.size(); ++s) {
        int vs = src.blocks[bi + 1].verts[s];
        for (size_t c = 0; c < dst.blocks[bi].verts.size(); ++c) {
          int vc = dst.blocks[bi].verts[c];
          const AlgElem& x = da.at(int(s), int(c));
          if (elem_is_zero(x)) continue;
          Mat act = elem_action(alg, mod, x, vs, vc);
          for (int r = 0; r < act.rows; ++r)
            for (int cc = 0; cc < act.cols; ++cc)
              d.at(dst.offsets[bi] + dst.blocks[bi].summand_offset[c] + r,
                   src.offsets[bi + 1] + src.blocks[bi + 1].summand_offset[s] + cc) =
                  fp::add(d.at(dst.offsets[bi] + dst.blocks[bi].summand_offset[c] + r,
                               src.offsets[bi + 1] + src.blocks[bi + 1].summand_offset[s] + cc),
                          fp::mul(pre_sign, act.at(r, cc)));
        }
      }
    }
  }
  return d;
}

/* Λ-map expand(⊕P_verts) -> M from generator images. */
ModuleMap map_from_gen_images(const FinDimAlgebra& alg, const std::vector<int>& verts,
                              const Module& m, const std::vector<std::vector<Fp>>& gens) {
  ExpandInfo info;
  Module src = expand_term(alg, verts, &info);
  ModuleMap f = zero_map(src, m);
  for (int u = 0; u < alg.nverts(); ++u) {
    for (int c = 0; c < src.dims[size_t(u)]; ++c) {
      auto [s, z] = info.layout[size_t(u)][size_t(c)];
      int vs = verts[size_t(s)];
      Mat act = elem_action(alg, m, alg.word_elem(alg.basis[size_t(z)].src, alg.basis[size_t(z)].arrows), vs, u);
      for (int r = 0; r < act.rows; ++r) {
        Fp acc = 0;
        for (int q = 0; q < act.cols; ++q)
          acc = fp::add(acc, fp::mul(act.at(r, q), gens[s][size_t(q)]));
        f.f[size_t(u)].at(r, c) = acc;
      }
    }
  }
  return f;
}

}  // namespace

std::vector<Fp> HomMod::flatten(const FinDimAlgebra& alg, const ProjComplex& a, const ModCplx& b,
                                const ModChainMap& f) const {
  std::vector<Fp> v(size_t(flat_dim), 0);
  for (size_t bi = 0; bi < blocks.size(); ++bi) {
    int k = blocks[bi].deg;
    if (!a.in_range(k) || size_t(k - a.lo) >= f.comps.size()) continue;
    const ModuleMap& comp = f.comps[size_t(k - a.lo)];
    if (!b.in_range(k + n)) continue;
    ExpandInfo info;
    expand_term(alg, blocks[bi].verts, &info);
    for (size_t s = 0; s < blocks[bi].verts.size(); ++s) {
      int vs = blocks[bi].verts[s];
      int pos = info.gen_pos[s];
      for (int r = 0; r < b.term(k + n).dims[size_t(vs)]; ++r)
        v[size_t(block_offset[bi] + blocks[bi].summand_offset[s] + r)] =
            comp.f[size_t(vs)].at(r, pos);
    }
  }
  return v;
}

std::vector<Fp> HomMod::classify(const std::vector<Fp>& flat) const {
  return classify_in(solver, dim, flat);
}

HomMod hom_k_mod(const FinDimAlgebra& alg, const ProjComplex& a, const ModCplx& b, int n) {
  HomMod h;
  h.n = n;
  ModHomLevel ln = mod_hom_level(alg, a, b, n);
  ModHomLevel lnp = mod_hom_level(alg, a, b, n + 1);
  ModHomLevel lnm = mod_hom_level(alg, a, b, n - 1);
  Mat d_out = mod_hom_differential(alg, a, b, n, ln, lnp);
  Mat d_in = mod_hom_differential(alg, a, b, n - 1, lnm, ln);
  FlatHomology fh = flat_homology(d_out, d_in);
  h.dim = fh.dim;
  h.blocks = ln.blocks;
  h.block_offset = ln.offsets;
  h.flat_dim = ln.dim;
  h.solver = fh.solver;
  for (int j = 0; j < fh.dim; ++j) {
    ModChainMap f;
    for (size_t bi = 0; bi < ln.blocks.size(); ++bi) {
      int k = ln.blocks[bi].deg;
      Module tgt = b.in_range(k + n) ? b.term(k + n) : zero_module(alg);
      std::vector<std::vector<Fp>> gens;
      for (size_t s = 0; s < ln.blocks[bi].verts.size(); ++s) {
        int vs = ln.blocks[bi].verts[s];
        std::vector<Fp> g(size_t(tgt.dims[size_t(vs)]), 0);
        for (int r = 0; r < int(g.size()); ++r)
          g[size_t(r)] = fh.reps.at(ln.offsets[bi] + ln.blocks[bi].summand_offset[s] + r, j);
        gens.push_back(g);
      }
      f.comps.push_back(map_from_gen_images(alg, ln.blocks[bi].verts, tgt, gens));
    }
    h.reps.push_back(f);
  }
  return h;
}

std::optional<ProjChainMap> chain_nullhomotopy(const FinDimAlgebra& alg, const ProjComplex& a,
                                               const ProjComplex& b, const ProjChainMap& f) {
  // unknown H_k : A^k -> B^{k-1}; equations f_k = d_B H_k + H_{k+1} d_A
  ProjHomLevel lh = proj_hom_level(alg, a, b, -1);
  ProjHomLevel le = proj_hom_level(alg, a, b, 0);
  Mat sys = Mat::zero(le.dim, lh.dim);
  for (size_t bi = 0; bi < lh.degs.size(); ++bi) {
    int k = lh.degs[bi];
    if (lh.layouts[bi].dim() > 0 && le.layouts[bi].dim() > 0) {
      Mat post = post_compose_op(alg, b.diff_at(k - 1), lh.layouts[bi], le.layouts[bi]);
      for (int r = 0; r < post.rows; ++r)
        for (int c = 0; c < post.cols; ++c)
          sys.at(le.offsets[bi] + r, lh.offsets[bi] + c) =
              fp::add(sys.at(le.offsets[bi] + r, lh.offsets[bi] + c), post.at(r, c));
    }
    if (bi + 1 < lh.degs.size() && lh.layouts[bi + 1].dim() > 0 && le.layouts[bi].dim() > 0) {
      Mat pre = pre_compose_op(alg, a.diff_at(k), lh.layouts[bi + 1], le.layouts[bi]);
      for (int r = 0; r < pre.rows; ++r)
        for (int c = 0; c < pre.cols; ++c)
          sys.at(le.offsets[bi] + r, lh.offsets[bi + 1] + c) =
              fp::add(sys.at(le.offsets[bi] + r, lh.offsets[bi + 1] + c), pre.at(r, c));
    }
  }
  std::vector<Fp> rhs(size_t(le.dim), 0);
  for (size_t bi = 0; bi < le.degs.size(); ++bi) {
    int k = le.degs[bi];
    std::vector<Fp> part = algmat_flatten(le.layouts[bi], chain_comp_at(alg, a, b, f, 0, k));
    for (size_t i = 0; i < part.size(); ++i) rhs[size_t(le.offsets[bi]) + i] = part[i];
  }
  Mat rm(le.dim, 1);
  for (int r = 0; r < le.dim; ++r) rm.at(r, 0) = rhs[size_t(r)];
  SolveResult sol = linear_solve(sys, rm);
  if (!sol.solvable) return std::nullopt;
  ProjChainMap h;
  for (size_t bi = 0; bi < lh.degs.size(); ++bi) {
    std::vector<Fp> part(size_t(lh.layouts[bi].dim()), 0);
    for (int i = 0; i < int(part.size()); ++i)
      part[size_t(i)] = sol.particular.at(lh.offsets[bi] + i, 0);
    h.comps.push_back(algmat_unflatten(lh.layouts[bi], part));
  }
  return h;
}

bool chain_homotopic(const FinDimAlgebra& alg, const ProjComplex& a, const ProjComplex& b,
                     const ProjChainMap& f, const ProjChainMap& g) {
  return chain_nullhomotopy(alg, a, b, proj_chain_sub(f, g)).has_value();
}

namespace {

AlgElem elem_inverse_local(const FinDimAlgebra& alg, const AlgElem& u, int v) {
  Fp c = coeff_of(u, alg.idem[size_t(v)]);
  if (c == 0) throw Error("element is not invertible");
  AlgElem ev = alg.idem_elem(v);
  AlgElem nil = elem_add(u, elem_scale(ev, fp::neg(c)));
  Fp cinv = fp::inv(c);
  AlgElem m = elem_scale(nil, fp::neg(cinv));
  AlgElem acc = ev;
  AlgElem term = m;
  int guard = 0;
  while (!elem_is_zero(term)) {
    acc = elem_add(acc, term);
    term = alg.mult(term, m);
    if (++guard > alg.dim() + 2) throw Error("inverse series did not terminate");
  }
  AlgElem inv = elem_scale(acc, cinv);
  AlgElem check = alg.mult(u, inv);
  if (!elem_is_zero(elem_add(check, elem_scale(ev, fp::neg(1))))) throw Error("inverse check failed");
  return inv;
}

}  // namespace

Minimalized minimalize(const FinDimAlgebra& alg, const ProjComplex& x) {
  ProjComplex cur = x;
  std::vector<AlgMat> to_min, from_min;
  for (int k = x.lo; k <= x.hi(); ++k) {
    to_min.push_back(AlgMat::identity(alg, x.term_at(k)));
    from_min.push_back(AlgMat::identity(alg, x.term_at(k)));
  }
  for (;;) {
    bool found = false;
    int pk = 0, pr = -1, pc = -1;
    for (int k = cur.lo; k < cur.hi() && !found; ++k) {
      const AlgMat& d = cur.diffs[size_t(k - cur.lo)];
      for (int r = 0; r < d.rows() && !found; ++r)
        for (int c = 0; c < d.cols(); ++c) {
          if (d.rows_v[size_t(r)] != d.cols_v[size_t(c)]) continue;
          if (coeff_of(d.at(r, c), alg.idem[size_t(d.rows_v[size_t(r)])]) != 0) {
            found = true;
            pk = k;
            pr = r;
            pc = c;
            break;
          }
        }
    }
    if (!found) break;
    const AlgMat d = cur.diffs[size_t(pk - cur.lo)];
    int v = d.rows_v[size_t(pr)];
    AlgElem u = d.at(pr, pc);
    AlgElem uinv = elem_inverse_local(alg, u, v);

    std::vector<int> new_src, new_tgt;
    std::vector<int> keep_c, keep_r;
    for (int c = 0; c < d.cols(); ++c)
      if (c != pc) {
        keep_c.push_back(c);
        new_src.push_back(d.cols_v[size_t(c)]);
      }
    for (int r = 0; r < d.rows(); ++r)
      if (r != pr) {
        keep_r.push_back(r);
        new_tgt.push_back(d.rows_v[size_t(r)]);
      }

    // corrected middle differential: alpha - beta u^{-1} gamma
    AlgMat nd = AlgMat::zero(new_tgt, new_src);
    for (size_t ri = 0; ri < keep_r.size(); ++ri)
      for (size_t ci = 0; ci < keep_c.size(); ++ci) {
        // gamma then uinv then beta
        AlgElem corr = alg.mult(alg.mult(d.at(pr, keep_c[ci]), uinv), d.at(keep_r[ri], pc));
        nd.at(int(ri), int(ci)) = elem_add(d.at(keep_r[ri], keep_c[ci]), elem_neg(corr));
      }

    // step maps: fk drops the source summand, fk1 corrects and drops the target one
    AlgMat fk = AlgMat::zero(new_src, d.cols_v);
    for (size_t ci = 0; ci < keep_c.size(); ++ci)
      fk.at(int(ci), keep_c[ci]) = alg.idem_elem(new_src[ci]);
    AlgMat fk1 = AlgMat::zero(new_tgt, d.rows_v);
    for (size_t ri = 0; ri < keep_r.size(); ++ri) {
      fk1.at(int(ri), keep_r[ri]) = alg.idem_elem(new_tgt[ri]);
      // T-column: -(uinv then beta)
      fk1.at(int(ri), pr) = elem_neg(alg.mult(uinv, d.at(keep_r[ri], pc)));
    }
    AlgMat gk = AlgMat::zero(d.cols_v, new_src);
    for (size_t ci = 0; ci < keep_c.size(); ++ci) {
      gk.at(keep_c[ci], int(ci)) = alg.idem_elem(new_src[ci]);
      // S-row: -(gamma then uinv)
      gk.at(pc, int(ci)) = elem_neg(alg.mult(d.at(pr, keep_c[ci]), uinv));
    }
    AlgMat gk1 = AlgMat::zero(d.rows_v, new_tgt);
    for (size_t ri = 0; ri < keep_r.size(); ++ri)
      gk1.at(keep_r[ri], int(ri)) = alg.idem_elem(new_tgt[ri]);

    int ik = pk - cur.lo;
    // adjacent differentials lose the corresponding row / column
    if (ik - 1 >= 0) {
      const AlgMat& prev = cur.diffs[size_t(ik - 1)];
      AlgMat np = AlgMat::zero(new_src, prev.cols_v);
      for (size_t ri = 0; ri < keep_c.size(); ++ri)
        for (int c = 0; c < prev.cols(); ++c) np.at(int(ri), c) = prev.at(keep_c[ri], c);
      cur.diffs[size_t(ik - 1)] = np;
    }
    if (ik + 1 < int(cur.diffs.size())) {
      const AlgMat& next = cur.diffs[size_t(ik + 1)];
      AlgMat nn = AlgMat::zero(next.rows_v, new_tgt);
      for (int r = 0; r < next.rows(); ++r)
        for (size_t ci = 0; ci < keep_r.size(); ++ci) nn.at(r, int(ci)) = next.at(r, keep_r[ci]);
      cur.diffs[size_t(ik + 1)] = nn;
    }
    cur.diffs[size_t(ik)] = nd;
    cur.terms[size_t(ik)] = new_src;
    cur.terms[size_t(ik + 1)] = new_tgt;

    to_min[size_t(ik)] = algmat_compose(alg, fk, to_min[size_t(ik)]);
    to_min[size_t(ik + 1)] = algmat_compose(alg, fk1, to_min[size_t(ik + 1)]);
    from_min[size_t(ik)] = algmat_compose(alg, from_min[size_t(ik)], gk);
    from_min[size_t(ik + 1)] = algmat_compose(alg, from_min[size_t(ik + 1)], gk1);
  }
  Minimalized out;
  out.min = proj_trim(cur);
  out.to_min.comps = to_min;
  for (int k = out.min.lo; k <= out.min.hi(); ++k)
    out.from_min.comps.push_back(from_min[size_t(k - x.lo)]);
  return out;
}

Resolution projective_resolution(const FinDimAlgebra& alg, const Module& m, int cap) {
  Resolution res;
  std::vector<std::vector<int>> rterms;
  std::vector<AlgMat> rdiffs;  // rdiffs[j]: term j+1 -> term j
  Module cur = m;
  ModuleMap prev_incl;  // inclusion of current kernel into previous expanded term
  bool have_incl = false;
  int steps = 0;
  for (;;) {
    if (cur.is_zero()) {
      res.finite = true;
      break;
    }
    if (steps > cap) {
      res.finite = false;
      break;
    }
    // minimal generators: complement of the radical, vertex by vertex
    std::vector<int> verts;
    std::vector<std::vector<Fp>> gens;
    std::vector<Mat> rad = radical_bases(alg, cur);
    for (int v = 0; v < alg.nverts(); ++v) {
      std::vector<int> comp = complement_indices(rad[size_t(v)]);
      for (int idx : comp) {
        verts.push_back(v);
        std::vector<Fp> g(size_t(cur.dims[size_t(v)]), 0);
        g[size_t(idx)] = 1;
        gens.push_back(g);
      }
    }
    ModuleMap cover = map_from_gen_images(alg, verts, cur, gens);
    Module pterm = expand_term(alg, verts);
    for (int v = 0; v < alg.nverts(); ++v)
      if (rank(cover.f[size_t(v)]) != cur.dims[size_t(v)])
        throw Error("projective cover is not surjective");
    if (have_incl) {
      // differential = inclusion ∘ cover, rewritten over the algebra
      ModuleMap d;
      d.f.resize(size_t(alg.nverts()));
      for (int v = 0; v < alg.nverts(); ++v)
        d.f[size_t(v)] = prev_incl.f[size_t(v)] * cover.f[size_t(v)];
      rdiffs.push_back(algmat_of_module_map(alg, verts, rterms.back(), d));
    } else {
      res.aug = cover;
    }
    rterms.push_back(verts);
    SubModule ker = kernel_of(alg, pterm, cur, cover);
    cur = ker.sub;
    prev_incl = ker.inclusion;
    have_incl = true;
    ++steps;
  }
  res.length = int(rterms.size()) - 1;
  if (rterms.empty()) {
    rterms.push_back({});
    res.length = 0;
    res.aug = zero_map(expand_term(alg, {}), m);
  }
  res.p.lo = -res.length;
  for (int i = int(rterms.size()) - 1; i >= 0; --i) res.p.terms.push_back(rterms[size_t(i)]);
  for (int i = int(rdiffs.size()) - 1; i >= 0; --i) res.p.diffs.push_back(rdiffs[size_t(i)]);
  return res;
}

int projective_dimension(const FinDimAlgebra& alg, const Module& m, int cap) {
  Resolution r = projective_resolution(alg, m, cap);
  return r.finite ? r.length : -1;
}

int global_dimension(const FinDimAlgebra& alg, int cap) {
  int g = 0;
  for (int v = 0; v < alg.nverts(); ++v) {
    int pd = projective_dimension(alg, simple_module(alg, v), cap);
    if (pd < 0) return -1;
    g = std::max(g, pd);
  }
  return g;
}

namespace {

struct ModelColumns {
  std::vector<Resolution> res;  // indexed by degree - lo
  int lo = 0, hi = 0;
  const std::vector<int>& term(int i, int j) const {
    static const std::vector<int> empty;
    if (i < lo || i > hi) return empty;
    const ProjComplex& p = res[size_t(i - lo)].p;
    int deg = -j;
    if (!p.in_range(deg)) return empty;
    return p.terms[size_t(deg - p.lo)];
  }
  AlgMat delta(int i, int j) const {  // P_{i,j} -> P_{i,j-1}
    const ProjComplex& p = res[size_t(i - lo)].p;
    return p.diff_at(-j);
  }
  int len(int i) const { return res[size_t(i - lo)].length; }
};

}  // namespace

ProjModel projective_model(const FinDimAlgebra& alg, const ModCplx& x_in, int cap) {
  ModCplx x = trim(alg, x_in);
  ModelColumns cols;
  cols.lo = x.lo;
  cols.hi = x.hi();
  for (int i = x.lo; i <= x.hi(); ++i) {
    Resolution r = projective_resolution(alg, x.term(i), cap);
    if (!r.finite)
      throw Error("projective resolution did not terminate: infinite global dimension");
    cols.res.push_back(r);
  }
  // h maps: h[r][{i,j}] : P_{i,j} -> P_{i+1+r, j+r}
  std::vector<std::map<std::pair<int, int>, AlgMat>> h;
  h.emplace_back();
  // h_0, resolution index 0: lift through the augmentations
  for (int i = x.lo; i < x.hi(); ++i) {
    const std::vector<int>& src = cols.term(i, 0);
    const std::vector<int>& tgt = cols.term(i + 1, 0);
    AlgHomLayout lay = alg_hom_layout(alg, src, tgt);
    const ModuleMap& eps_t = cols.res[size_t(i + 1 - x.lo)].aug;
    const ModuleMap& eps_s = cols.res[size_t(i - x.lo)].aug;
    // generator-image coordinates of eps_t ∘ H and of d_X ∘ eps_s
    int nrows = 0;
    std::vector<int> roff;
    for (int c = 0; c < int(src.size()); ++c) {
      roff.push_back(nrows);
      nrows += x.term(i + 1).dims[size_t(src[size_t(c)])];
    }
    Mat sys = Mat::zero(nrows, lay.dim());
    ExpandInfo ti;
    expand_term(alg, tgt, &ti);
    for (int s = 0; s < lay.dim(); ++s) {
      auto& sl = lay.slots[size_t(s)];
      int vc = src[size_t(sl.c)];
      int pos = ti.position(vc, sl.r, sl.path);
      for (int r = 0; r < x.term(i + 1).dims[size_t(vc)]; ++r)
        sys.at(roff[size_t(sl.c)] + r, s) = eps_t.f[size_t(vc)].at(r, pos);
    }
    Mat rhs(nrows, 1);
    ExpandInfo si;
    expand_term(alg, src, &si);
    for (int c = 0; c < int(src.size()); ++c) {
      int vc = src[size_t(c)];
      int pos = si.gen_pos[size_t(c)];
      const Mat& dxv = x.diff(i).f[size_t(vc)];
      for (int r = 0; r < x.term(i + 1).dims[size_t(vc)]; ++r) {
        Fp acc = 0;
        for (int q = 0; q < dxv.cols; ++q)
          acc = fp::add(acc, fp::mul(dxv.at(r, q), eps_s.f[size_t(vc)].at(q, pos)));
        rhs.at(roff[size_t(c)] + r, 0) = acc;
      }
    }
    SolveResult sol = linear_solve(sys, rhs);
    if (!sol.solvable) throw Error("model lift failed at augmentation level");
    std::vector<Fp> flat(size_t(lay.dim()), 0);
    for (int s = 0; s < lay.dim(); ++s) flat[size_t(s)] = sol.particular.at(s, 0);
    h[0][{i, 0}] = algmat_unflatten(lay, flat);
  }
  // h_0, higher resolution indices: delta H = h_0 delta
  auto h_at = [&](int r, int i, int j) -> AlgMat {
    if (r < int(h.size())) {
      auto it = h[size_t(r)].find({i, j});
      if (it != h[size_t(r)].end()) return it->second;
    }
    return AlgMat::zero(cols.term(i + 1 + r, j + r), cols.term(i, j));
  };
  for (int j = 1;; ++j) {
    bool any = false;
    for (int i = x.lo; i < x.hi(); ++i) {
      if (int(cols.term(i, j).size()) == 0) continue;
      any = true;
      AlgMat rhs = algmat_compose(alg, h_at(0, i, j - 1), cols.delta(i, j));
      const std::vector<int>& tgt = cols.term(i + 1, j);
      AlgHomLayout lay = alg_hom_layout(alg, cols.term(i, j), tgt);
      if (lay.dim() == 0) {
        if (!rhs.is_zero()) throw Error("model lift obstruction");
        continue;
      }
      AlgHomLayout elay = alg_hom_layout(alg, cols.term(i, j), cols.term(i + 1, j - 1));
      Mat sys = post_compose_op(alg, cols.delta(i + 1, j), lay, elay);
      std::vector<Fp> rflat = algmat_flatten(elay, rhs);
      Mat rm(elay.dim(), 1);
      for (int r = 0; r < elay.dim(); ++r) rm.at(r, 0) = rflat[size_t(r)];
      SolveResult sol = linear_solve(sys, rm);
      if (!sol.solvable) throw Error("model lift failed");
      std::vector<Fp> flat(size_t(lay.dim()), 0);
      for (int s = 0; s < lay.dim(); ++s) flat[size_t(s)] = sol.particular.at(s, 0);
      h[0][{i, j}] = algmat_unflatten(lay, flat);
    }
    if (!any) break;
  }
  // higher corrections, grade by grade: delta' h_{g+1} + h_{g+1} delta' = - sum h_a h_b
  for (int g = 0; x.lo + g + 2 <= x.hi(); ++g) {
    h.emplace_back();
    // unknown blocks: h_{g+1}^{i,j}
    std::vector<std::tuple<int, int, AlgHomLayout, int>> unk;  // (i, j, layout, offset)
    int udim = 0;
    for (int i = x.lo; i + g + 2 <= x.hi(); ++i)
      for (int j = 0; j <= cols.len(i); ++j) {
        if (cols.term(i, j).empty()) continue;
        AlgHomLayout lay = alg_hom_layout(alg, cols.term(i, j), cols.term(i + g + 2, j + g + 1));
        unk.push_back({i, j, lay, udim});
        udim += lay.dim();
      }
    std::vector<std::tuple<int, int, AlgHomLayout, int>> eqs;
    int edim = 0;
    for (int i = x.lo; i + g + 2 <= x.hi(); ++i)
      for (int j = 0; j <= cols.len(i); ++j) {
        if (cols.term(i, j).empty() || cols.term(i + g + 2, j + g).empty()) continue;
        AlgHomLayout lay = alg_hom_layout(alg, cols.term(i, j), cols.term(i + g + 2, j + g));
        eqs.push_back({i, j, lay, edim});
        edim += lay.dim();
      }
    Mat sys = Mat::zero(edim, udim);
    Mat rhs = Mat::zero(edim, 1);
    auto unk_lookup = [&](int i, int j) -> const std::tuple<int, int, AlgHomLayout, int>* {
      for (auto& t : unk)
        if (std::get<0>(t) == i && std::get<1>(t) == j) return &t;
      return nullptr;
    };
    for (auto& [i, j, elay, eoff] : eqs) {
      // N = sum_{a+b=g} h_a ∘ h_b, component (i,j) -> (i+g+2, j+g)
      AlgMat n = AlgMat::zero(cols.term(i + g + 2, j + g), cols.term(i, j));
      for (int b = 0; b <= g; ++b) {
        int a = g - b;
        AlgMat hb = h_at(b, i, j);
        AlgMat ha = h_at(a, i + 1 + b, j + b);
        n = algmat_add(n, algmat_compose(alg, ha, hb));
      }
      std::vector<Fp> nf = algmat_flatten(elay, n);
      for (int r = 0; r < elay.dim(); ++r) rhs.at(eoff + r, 0) = fp::neg(nf[size_t(r)]);
      // delta' ∘ h_{g+1}^{i,j}, sign (-1)^{i+g+2} = (-1)^{i+g}
      if (auto* t = unk_lookup(i, j)) {
        Mat post = post_compose_op(alg, cols.delta(i + g + 2, j + g + 1), std::get<2>(*t), elay);
        Fp sgn = ((i + g) % 2 == 0) ? 1 : fp::neg(1);
        for (int r = 0; r < post.rows; ++r)
          for (int c = 0; c < post.cols; ++c)
            sys.at(eoff + r, std::get<3>(*t) + c) =
                fp::add(sys.at(eoff + r, std::get<3>(*t) + c), fp::mul(sgn, post.at(r, c)));
      }
      // h_{g+1}^{i,j-1} ∘ delta', sign (-1)^i
      if (j >= 1) {
        if (auto* t = unk_lookup(i, j - 1)) {
          Mat pre = pre_compose_op(alg, cols.delta(i, j), std::get<2>(*t), elay);
          Fp sgn = (i % 2 == 0) ? 1 : fp::neg(1);
          for (int r = 0; r < pre.rows; ++r)
            for (int c = 0; c < pre.cols; ++c)
              sys.at(eoff + r, std::get<3>(*t) + c) =
                  fp::add(sys.at(eoff + r, std::get<3>(*t) + c), fp::mul(sgn, pre.at(r, c)));
        }
      }
    }
    SolveResult sol = linear_solve(sys, rhs);
    if (!sol.solvable) throw Error("model correction solve failed");
    for (auto& [i, j, lay, off] : unk) {
      std::vector<Fp> flat(size_t(lay.dim()), 0);
      for (int s = 0; s < lay.dim(); ++s) flat[size_t(s)] = sol.particular.at(off + s, 0);
      h[size_t(g + 1)][{i, j}] = algmat_unflatten(lay, flat);
    }
  }
  // assemble the total complex
  int n_min = x.hi();
  for (int i = x.lo; i <= x.hi(); ++i) n_min = std::min(n_min, i - cols.len(i));
  int n_max = x.hi();
  ProjModel out;
  out.total.lo = n_min;
  // blocks at degree n: (i, j=i-n) for ascending i
  auto blocks_at = [&](int n) {
    std::vector<std::pair<int, int>> bl;  // (i, summand offset)
    int off = 0;
    for (int i = std::max(x.lo, n); i <= x.hi(); ++i) {
      int j = i - n;
      if (j < 0 || j > cols.len(i) || cols.term(i, j).empty()) continue;
      bl.push_back({i, off});
      off += int(cols.term(i, j).size());
    }
    return bl;
  };
  for (int n = n_min; n <= n_max; ++n) {
    std::vector<int> t;
    for (auto& [i, off] : blocks_at(n)) {
      (void)off;
      for (int v : cols.term(i, i - n)) t.push_back(v);
    }
    out.total.terms.push_back(t);
  }
  for (int n = n_min; n < n_max; ++n) {
    AlgMat d = AlgMat::zero(out.total.terms[size_t(n + 1 - n_min)], out.total.terms[size_t(n - n_min)]);
    for (auto& [i, coff] : blocks_at(n)) {
      int j = i - n;
      for (auto& [i2, roff] : blocks_at(n + 1)) {
        AlgMat blk;
        if (i2 == i) {
          blk = cols.delta(i, j);
          if (i % 2 != 0) blk = algmat_scale(blk, fp::neg(1));
        } else if (i2 > i) {
          blk = h_at(i2 - i - 1, i, j);
        } else {
          continue;
        }
        for (int r = 0; r < blk.rows(); ++r)
          for (int c = 0; c < blk.cols(); ++c) d.at(roff + r, coff + c) = blk.at(r, c);
      }
    }
    out.total.diffs.push_back(d);
  }
  // augmentation: on the (i=n, j=0) block it is the resolution augmentation
  for (int n = n_min; n <= n_max; ++n) {
    Module tgt = x.in_range(n) ? x.term(n) : zero_module(alg);
    ExpandInfo info;
    Module src = expand_term(alg, out.total.terms[size_t(n - n_min)], &info);
    ModuleMap f = zero_map(src, tgt);
    for (auto& [i, off] : blocks_at(n)) {
      if (i != n || i - n != 0) continue;
      const std::vector<int>& bverts = cols.term(i, 0);
      ExpandInfo binfo;
      expand_term(alg, bverts, &binfo);
      const ModuleMap& eps = cols.res[size_t(i - x.lo)].aug;
      for (int u = 0; u < alg.nverts(); ++u)
        for (int p = 0; p < src.dims[size_t(u)]; ++p) {
          auto [s, w] = info.layout[size_t(u)][size_t(p)];
          if (s < off || s >= off + int(bverts.size())) continue;
          int bp = binfo.position(u, s - off, w);
          for (int r = 0; r < tgt.dims[size_t(u)]; ++r)
            f.f[size_t(u)].at(r, p) = eps.f[size_t(u)].at(r, bp);
        }
    }
    out.aug.comps.push_back(f);
  }
  return out;
}

namespace {

using Poly = std::vector<Fp>;  // coefficients, ascending; normalized (no trailing zeros)

Poly poly_trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = fp::add(c[i + j], fp::mul(a[i], b[j]));
  return poly_trim(c);
}

/* division with remainder */
std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b) {
  if (b.empty()) throw Error("polynomial division by zero");
  Poly q(a.size(), 0);
  Fp linv = fp::inv(b.back());
  a = poly_trim(a);
  while (a.size() >= b.size()) {
    size_t shift = a.size() - b.size();
    Fp f = fp::mul(a.back(), linv);
    q[shift] = fp::add(q[shift], f);
    for (size_t i = 0; i < b.size(); ++i)
      a[shift + i] = fp::sub(a[shift + i], fp::mul(f, b[i]));
    a = poly_trim(a);
  }
  return {poly_trim(q), a};
}

Fp poly_eval(const Poly& p, Fp x) {
  Fp r = 0;
  for (size_t i = p.size(); i-- > 0;) r = fp::add(fp::mul(r, x), p[i]);
  return r;
}

/* inverse of a modulo m in F_p[x], via extended euclid */
Poly poly_inv_mod(const Poly& a, const Poly& m) {
  Poly r0 = m, r1 = poly_divmod(a, m).second;
  Poly s0 = {}, s1 = {1};
  while (!r1.empty()) {
    auto [q, r2] = poly_divmod(r0, r1);
    Poly s2 = s0;
    Poly qs = poly_mul(q, s1);
    s2.resize(std::max(s2.size(), qs.size()), 0);
    for (size_t i = 0; i < qs.size(); ++i) s2[i] = fp::sub(i < s0.size() ? s0[i] : 0, qs[i]);
    s2 = poly_trim(s2);
    r0 = r1;
    r1 = r2;
    s0 = s1;
    s1 = s2;
  }
  if (r0.size() != 1) throw Error("polynomial not invertible modulo m");
  Fp inv = fp::inv(r0[0]);
  Poly out = s0;
  for (auto& c : out) c = fp::mul(c, inv);
  return poly_divmod(out, m).second;
}

}  // namespace

SplitResult split_homotopy_idempotent(const FinDimAlgebra& alg, const ProjComplex& q,
                                      const ProjChainMap& e) {
  validate_proj_chain(alg, q, q, e, 0);
  ProjChainMap ee = proj_chain_compose(alg, q, q, q, e, 0, e, 0);
  if (!chain_nullhomotopy(alg, q, q, proj_chain_sub(ee, e)).has_value())
    throw Error("map is not a homotopy idempotent");

  // flatten endomorphisms to find the minimal polynomial of e as a strict chain map
  ProjHomLevel lay = proj_hom_level(alg, q, q, 0);
  SplitResult out;
  if (lay.dim == 0) {
    ProjComplex z;
    z.lo = 0;
    z.terms = {{}};
    out.part_one = z;
    out.part_two = z;
    out.idem = e;
    return out;
  }
  auto flatten_map = [&](const ProjChainMap& f) {
    std::vector<Fp> v(size_t(lay.dim), 0);
    for (size_t bi = 0; bi < lay.degs.size(); ++bi) {
      std::vector<Fp> part =
          algmat_flatten(lay.layouts[bi], chain_comp_at(alg, q, q, f, 0, lay.degs[bi]));
      for (size_t i = 0; i < part.size(); ++i) v[size_t(lay.offsets[bi]) + i] = part[i];
    }
    return v;
  };
  std::vector<ProjChainMap> powers = {proj_chain_identity(alg, q)};
  std::vector<std::vector<Fp>> flats = {flatten_map(powers[0])};
  Poly minpoly;
  for (;;) {
    ProjChainMap nxt = proj_chain_compose(alg, q, q, q, powers.back(), 0, e, 0);
    std::vector<Fp> fl = flatten_map(nxt);
    Mat basis(lay.dim, int(powers.size()));
    for (int c = 0; c < int(powers.size()); ++c)
      for (int r = 0; r < lay.dim; ++r) basis.at(r, c) = flats[size_t(c)][size_t(r)];
    Mat rhs(lay.dim, 1);
    for (int r = 0; r < lay.dim; ++r) rhs.at(r, 0) = fl[size_t(r)];
    SolveResult sol = linear_solve(basis, rhs);
    if (sol.solvable) {
      minpoly.assign(powers.size() + 1, 0);
      for (size_t i = 0; i < powers.size(); ++i) minpoly[i] = fp::neg(sol.particular.at(int(i), 0));
      minpoly[powers.size()] = 1;
      break;
    }
    powers.push_back(nxt);
    flats.push_back(fl);
    if (int(powers.size()) > lay.dim + 1) throw Error("minimal polynomial search overran");
  }

  // split off the x and (x-1) parts without factoring the middle
  Poly f = minpoly;
  int alpha = 0, beta = 0;
  while (!f.empty() && f[0] == 0) {
    f.erase(f.begin());
    ++alpha;
  }
  Poly xm1 = {fp::neg(1), 1};
  while (!f.empty() && poly_eval(f, 1) == 0) {
    f = poly_divmod(f, xm1).first;
    ++beta;
  }
  Poly w = f;  // w(0) != 0, w(1) != 0
  Poly cpoly;
  if (beta == 0) {
    cpoly = {};
  } else {
    Poly a = w;  // A = x^alpha * w
    a.insert(a.begin(), size_t(alpha), 0);
    a = poly_trim(a);
    if (a.size() == 1) {
      Fp c0 = fp::inv(a[0]);
      cpoly = {fp::mul(a[0], c0)};  // = 1
    } else {
      Poly b = {1};
      for (int i = 0; i < beta; ++i) b = poly_mul(b, xm1);
      Poly s = poly_inv_mod(a, b);
      cpoly = poly_divmod(poly_mul(a, s), minpoly).second;
    }
  }

  // strict idempotent c(e)
  ProjChainMap c = proj_chain_zero(alg, q, q, 0);
  for (size_t i = cpoly.size(); i-- > 0;) {
    c = proj_chain_compose(alg, q, q, q, c, 0, e, 0);
    ProjChainMap idm = proj_chain_scale(proj_chain_identity(alg, q), cpoly[i]);
    c = proj_chain_add(c, idm);
  }
  ProjChainMap cc = proj_chain_compose(alg, q, q, q, c, 0, c, 0);
  if (!proj_chain_is_zero(proj_chain_sub(cc, c)))
    throw Error("idempotent correction failed to be strict");
  if (!chain_nullhomotopy(alg, q, q, proj_chain_sub(c, e)).has_value())
    throw Error("idempotent correction drifted from the original map");

  // split the expanded complex degreewise and rebuild projective models
  ModCplx qx = expand_proj(alg, q);
  ModChainMap cx = expand_proj_chain(alg, q, q, c);
  auto build_part = [&](bool image) {
    ModCplx part;
    part.lo = qx.lo;
    std::vector<SubModule> subs;
    for (int k = qx.lo; k <= qx.hi(); ++k) {
      const ModuleMap& ck = cx.comps[size_t(k - qx.lo)];
      std::vector<Mat> bases(size_t(alg.nverts()));
      for (int v = 0; v < alg.nverts(); ++v)
        bases[size_t(v)] = image ? column_space_basis(ck.f[size_t(v)]) : kernel_basis(ck.f[size_t(v)]);
      subs.push_back(sub_module(alg, qx.term(k), bases));
      part.terms.push_back(subs.back().sub);
    }
    for (int k = qx.lo; k < qx.hi(); ++k) {
      const ModuleMap& d = qx.diff(k);
      ModuleMap dd;
      dd.f.resize(size_t(alg.nverts()));
      for (int v = 0; v < alg.nverts(); ++v) {
        Mat rhs = d.f[size_t(v)] * subs[size_t(k - qx.lo)].inclusion.f[size_t(v)];
        SolveResult sol = linear_solve(subs[size_t(k + 1 - qx.lo)].inclusion.f[size_t(v)], rhs);
        if (!sol.solvable) throw Error("split part differential does not restrict");
        dd.f[size_t(v)] = sol.particular;
      }
      part.diffs.push_back(dd);
    }
    return part;
  };
  ModCplx im = build_part(true);
  ModCplx ker = build_part(false);
  int cap = 2 * alg.dim() + q.width() + 4;
  out.part_one = proj_trim(minimalize(alg, projective_model(alg, im, cap).total).min);
  out.part_two = proj_trim(minimalize(alg, projective_model(alg, ker, cap).total).min);
  out.idem = c;
  return out;
}

ProjComplex koszul_complex(const FinDimAlgebra& alg, const std::vector<AlgElem>& elems) {
  for (auto& f : elems)
    for (int b = 0; b < alg.dim(); ++b) {
      AlgElem be = alg.word_elem(alg.basis[size_t(b)].src, alg.basis[size_t(b)].arrows);
      if (!elem_is_zero(elem_add(alg.mult(f, be), elem_neg(alg.mult(be, f)))))
        throw Error("koszul element is not central");
    }
  ProjComplex k = proj_generator(alg, 0);
  for (auto& f : elems) {
    ProjChainMap mf;
    for (int d = k.lo; d <= k.hi(); ++d) {
      const std::vector<int>& t = k.term_at(d);
      AlgMat m = AlgMat::zero(t, t);
      for (int r = 0; r < int(t.size()); ++r)
        for (int c = 0; c < int(t.size()); ++c) {
          AlgElem x = alg.mult(alg.idem_elem(t[size_t(c)]), alg.mult(f, alg.idem_elem(t[size_t(r)])));
          m.at(r, c) = x;
        }
      mf.comps.push_back(m);
    }
    validate_proj_chain(alg, k, k, mf, 0);
    k = proj_cone(alg, k, k, mf);
  }
  return k;
}

}  // namespace lf
