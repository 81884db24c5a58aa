#include "levelforge/complex.hpp"

namespace lf {

const Module& ModCplx::term(int k) const {
  if (!in_range(k)) throw Error("complex term out of range");
  return terms[size_t(k - lo)];
}

const ModuleMap& ModCplx::diff(int k) const {
  if (k < lo || k >= hi()) throw Error("complex differential out of range");
  return diffs[size_t(k - lo)];
}

int ModCplx::total_dim() const {
  int t = 0;
  for (auto& m : terms) t += m.total_dim();
  return t;
}

namespace {

Module term_or_zero(const FinDimAlgebra& alg, const ModCplx& x, int k) {
  if (x.in_range(k)) return x.term(k);
  return zero_module(alg);
}

ModuleMap diff_or_zero(const FinDimAlgebra& alg, const ModCplx& x, int k) {
  if (k >= x.lo && k < x.hi()) return x.diff(k);
  return zero_map(term_or_zero(alg, x, k), term_or_zero(alg, x, k + 1));
}

ModuleMap block_diag_map(const FinDimAlgebra& alg, const Module& a, const Module& ap,
                         const ModuleMap& f, const Module& b, const Module& bp,
                         const ModuleMap& g) {
  ModuleMap h;
  h.f.resize(size_t(alg.nverts()));
  for (int v = 0; v < alg.nverts(); ++v) {
    Mat top = f.f[size_t(v)].hstack(Mat::zero(ap.dims[size_t(v)], b.dims[size_t(v)]));
    Mat bot = Mat::zero(bp.dims[size_t(v)], a.dims[size_t(v)]).hstack(g.f[size_t(v)]);
    h.f[size_t(v)] = top.vstack(bot);
  }
  return h;
}

}  // namespace

ModCplx module_complex(const FinDimAlgebra& alg, const Module& m, int degree) {
  (void)alg;
  ModCplx x;
  x.lo = degree;
  x.terms = {m};
  return x;
}

ModCplx zero_complex(const FinDimAlgebra& alg) {
  ModCplx x;
  x.lo = 0;
  x.terms = {zero_module(alg)};
  return x;
}

void validate_complex(const FinDimAlgebra& alg, const ModCplx& x) {
  if (x.terms.empty()) throw Error("complex has no terms");
  if (x.diffs.size() + 1 != x.terms.size()) throw Error("complex differential count mismatch");
  for (auto& m : x.terms) validate_module(alg, m);
  for (size_t i = 0; i < x.diffs.size(); ++i)
    validate_map(alg, x.terms[i], x.terms[i + 1], x.diffs[i]);
  for (size_t i = 0; i + 1 < x.diffs.size(); ++i) {
    ModuleMap dd = compose(x.diffs[i + 1], x.diffs[i]);
    if (!dd.is_zero()) throw Error("complex differential does not square to zero");
  }
}

ModCplx trim(const FinDimAlgebra& alg, const ModCplx& x) {
  int a = x.lo, b = x.hi();
  while (a < b && x.term(a).is_zero()) ++a;
  while (b > a && x.term(b).is_zero()) --b;
  if (a == b && x.term(a).is_zero()) return zero_complex(alg);
  ModCplx y;
  y.lo = a;
  for (int k = a; k <= b; ++k) y.terms.push_back(x.term(k));
  for (int k = a; k < b; ++k) y.diffs.push_back(x.diff(k));
  return y;
}

ModCplx shift(const FinDimAlgebra& alg, const ModCplx& x, int n) {
  (void)alg;
  ModCplx y;
  y.lo = x.lo - n;
  y.terms = x.terms;
  y.diffs = x.diffs;
  if (n % 2 != 0)
    for (auto& d : y.diffs)
      for (auto& m : d.f) m = m.negated();
  return y;
}

ModCplx cplx_direct_sum(const FinDimAlgebra& alg, const ModCplx& a, const ModCplx& b) {
  ModCplx y;
  y.lo = std::min(a.lo, b.lo);
  int top = std::max(a.hi(), b.hi());
  for (int k = y.lo; k <= top; ++k)
    y.terms.push_back(direct_sum(alg, term_or_zero(alg, a, k), term_or_zero(alg, b, k)));
  for (int k = y.lo; k < top; ++k)
    y.diffs.push_back(block_diag_map(alg, term_or_zero(alg, a, k), term_or_zero(alg, a, k + 1),
                                     diff_or_zero(alg, a, k), term_or_zero(alg, b, k),
                                     term_or_zero(alg, b, k + 1), diff_or_zero(alg, b, k)));
  return y;
}

ModuleMap chain_comp(const FinDimAlgebra& alg, const ModCplx& a, const ModCplx& b,
                     const ModChainMap& f, int k) {
  if (a.in_range(k) && !f.comps.empty() && k - a.lo < int(f.comps.size()))
    return f.comps[size_t(k - a.lo)];
  return zero_map(term_or_zero(alg, a, k), term_or_zero(alg, b, k));
}

void validate_chain_map(const FinDimAlgebra& alg, const ModCplx& a, const ModCplx& b,
                        const ModChainMap& f) {
  if (f.comps.size() != a.terms.size()) throw Error("chain map component count mismatch");
  for (int k = a.lo; k <= a.hi(); ++k)
    validate_map(alg, a.term(k), term_or_zero(alg, b, k), f.comps[size_t(k - a.lo)]);
  for (int k = a.lo; k < a.hi(); ++k) {
    // d_B f = f d_A
    ModuleMap lhs = compose(diff_or_zero(alg, b, k), chain_comp(alg, a, b, f, k));
    ModuleMap rhs = compose(chain_comp(alg, a, b, f, k + 1), a.diff(k));
    if (!map_sub(lhs, rhs).is_zero()) throw Error("chain map does not commute with differentials");
  }
}

ModCplx cone(const FinDimAlgebra& alg, const ModCplx& a, const ModCplx& b,
             const ModChainMap& f) {
  ModCplx c;
  c.lo = std::min(a.lo - 1, b.lo);
  int top = std::max(a.hi() - 1, b.hi());
  for (int k = c.lo; k <= top; ++k)
    c.terms.push_back(direct_sum(alg, term_or_zero(alg, a, k + 1), term_or_zero(alg, b, k)));
  for (int k = c.lo; k < top; ++k) {
    Module a1 = term_or_zero(alg, a, k + 1), a2 = term_or_zero(alg, a, k + 2);
    Module b1 = term_or_zero(alg, b, k), b2 = term_or_zero(alg, b, k + 1);
    ModuleMap da = diff_or_zero(alg, a, k + 1);
    ModuleMap db = diff_or_zero(alg, b, k);
    ModuleMap fk = chain_comp(alg, a, b, f, k + 1);
    ModuleMap d;
    d.f.resize(size_t(alg.nverts()));
    for (int v = 0; v < alg.nverts(); ++v) {
      Mat top_row = da.f[size_t(v)].negated().hstack(Mat::zero(a2.dims[size_t(v)], b1.dims[size_t(v)]));
      Mat bot_row = fk.f[size_t(v)].hstack(db.f[size_t(v)]);
      d.f[size_t(v)] = top_row.vstack(bot_row);
    }
    c.diffs.push_back(d);
  }
  return c;
}

Triangle triangle_of(const FinDimAlgebra& alg, const ModCplx& a, const ModCplx& b,
                     const ModChainMap& f) {
  Triangle t;
  t.a = a;
  t.b = b;
  t.f = f;
  t.c = cone(alg, a, b, f);
  for (int k = t.b.lo; k <= t.b.hi(); ++k) {
    Module a1 = term_or_zero(alg, a, k + 1);
    Module bk = b.term(k);
    ModuleMap inc;
    inc.f.resize(size_t(alg.nverts()));
    for (int v = 0; v < alg.nverts(); ++v) {
      Mat m = Mat::zero(a1.dims[size_t(v)] + bk.dims[size_t(v)], bk.dims[size_t(v)]);
      for (int r = 0; r < bk.dims[size_t(v)]; ++r) m.at(a1.dims[size_t(v)] + r, r) = 1;
      inc.f[size_t(v)] = m;
    }
    t.inclusion.comps.push_back(inc);
  }
  ModCplx a_sh = shift(alg, a, 1);
  for (int k = t.c.lo; k <= t.c.hi(); ++k) {
    Module a1 = term_or_zero(alg, a, k + 1);
    Module bk = term_or_zero(alg, b, k);
    Module target = term_or_zero(alg, a_sh, k);
    ModuleMap pr;
    pr.f.resize(size_t(alg.nverts()));
    for (int v = 0; v < alg.nverts(); ++v) {
      Mat m = Mat::zero(target.dims[size_t(v)], a1.dims[size_t(v)] + bk.dims[size_t(v)]);
      for (int r = 0; r < target.dims[size_t(v)]; ++r) m.at(r, r) = 1;
      pr.f[size_t(v)] = m;
    }
    t.projection.comps.push_back(pr);
  }
  return t;
}

std::vector<Fp> HomologyData::classify(const FinDimAlgebra& alg, int v,
                                       const std::vector<Fp>& vec) const {
  (void)alg;
  const Mat& s = solver[size_t(v)];
  Mat rhs(s.rows, 1);
  if (int(vec.size()) != s.rows) throw Error("classify: vector dimension mismatch");
  for (int r = 0; r < s.rows; ++r) rhs.at(r, 0) = vec[size_t(r)];
  SolveResult sol = linear_solve(s, rhs);
  if (!sol.solvable) throw Error("classify: vector is not a cycle");
  int hdim = reps[size_t(v)].cols;
  std::vector<Fp> out(size_t(hdim), 0);
  for (int j = 0; j < hdim; ++j) out[size_t(j)] = sol.particular.at(s.cols - hdim + j, 0);
  return out;
}

HomologyData homology(const FinDimAlgebra& alg, const ModCplx& x, int i) {
  Module mi = term_or_zero(alg, x, i);
  ModuleMap dout = diff_or_zero(alg, x, i);
  ModuleMap din = diff_or_zero(alg, x, i - 1);
  HomologyData hd;
  hd.reps.resize(size_t(alg.nverts()));
  hd.bnd.resize(size_t(alg.nverts()));
  hd.solver.resize(size_t(alg.nverts()));
  hd.h.dims.assign(size_t(alg.nverts()), 0);
  std::vector<Mat> cycle(size_t(alg.nverts()));
  for (int v = 0; v < alg.nverts(); ++v) {
    Mat z = kernel_basis(dout.f[size_t(v)]);
    Mat b = column_space_basis(din.f[size_t(v)]);
    // extend the boundary basis to a basis of cycles; extra columns represent homology
    Mat both = b.hstack(z);
    Mat r = both;
    std::vector<int> piv = rref(r);
    std::vector<int> sel;
    for (int p : piv)
      if (p >= b.cols) sel.push_back(p - b.cols);
    Mat reps(mi.dims[size_t(v)], int(sel.size()));
    for (int j = 0; j < int(sel.size()); ++j)
      for (int rr = 0; rr < reps.rows; ++rr) reps.at(rr, j) = z.at(rr, sel[size_t(j)]);
    hd.h.dims[size_t(v)] = reps.cols;
    hd.reps[size_t(v)] = reps;
    hd.bnd[size_t(v)] = b;
    hd.solver[size_t(v)] = b.hstack(reps);
    cycle[size_t(v)] = z;
  }
  hd.h.act.resize(size_t(alg.narrows()));
  for (int a = 0; a < alg.narrows(); ++a) {
    int sv = alg.pres.quiver.arrows[size_t(a)].src;
    int tv = alg.pres.quiver.arrows[size_t(a)].tgt;
    Mat m(hd.h.dims[size_t(tv)], hd.h.dims[size_t(sv)]);
    for (int j = 0; j < hd.h.dims[size_t(sv)]; ++j) {
      std::vector<Fp> vec(size_t(mi.dims[size_t(sv)]), 0);
      for (int r = 0; r < int(vec.size()); ++r) vec[size_t(r)] = hd.reps[size_t(sv)].at(r, j);
      Mat col(mi.dims[size_t(sv)], 1);
      for (int r = 0; r < col.rows; ++r) col.at(r, 0) = vec[size_t(r)];
      Mat img = mi.act[size_t(a)] * col;
      std::vector<Fp> iv(size_t(img.rows));
      for (int r = 0; r < img.rows; ++r) iv[size_t(r)] = img.at(r, 0);
      std::vector<Fp> cls = hd.classify(alg, tv, iv);
      for (int r = 0; r < m.rows; ++r) m.at(r, j) = cls[size_t(r)];
    }
    hd.h.act[size_t(a)] = m;
  }
  return hd;
}

std::vector<int> homology_dims_at(const FinDimAlgebra& alg, const ModCplx& x, int i) {
  return homology(alg, x, i).h.dims;
}

ModuleMap induced_on_homology(const FinDimAlgebra& alg, const ModCplx& x, const ModCplx& y,
                              const ModChainMap& f, int i, const HomologyData& hx,
                              const HomologyData& hy) {
  ModuleMap g;
  g.f.resize(size_t(alg.nverts()));
  ModuleMap fi = chain_comp(alg, x, y, f, i);
  for (int v = 0; v < alg.nverts(); ++v) {
    Mat m(hy.h.dims[size_t(v)], hx.h.dims[size_t(v)]);
    for (int j = 0; j < hx.h.dims[size_t(v)]; ++j) {
      Mat col(hx.reps[size_t(v)].rows, 1);
      for (int r = 0; r < col.rows; ++r) col.at(r, 0) = hx.reps[size_t(v)].at(r, j);
      Mat img = fi.f[size_t(v)] * col;
      std::vector<Fp> iv(size_t(img.rows));
      for (int r = 0; r < img.rows; ++r) iv[size_t(r)] = img.at(r, 0);
      std::vector<Fp> cls = hy.classify(alg, v, iv);
      for (int r = 0; r < m.rows; ++r) m.at(r, j) = cls[size_t(r)];
    }
    g.f[size_t(v)] = m;
  }
  return g;
}

bool long_exact_sequence_ok(const FinDimAlgebra& alg, const Triangle& t) {
  ModCplx a_sh = shift(alg, t.a, 1);
  ModCplx b_sh = shift(alg, t.b, 1);
  // f also represents a chain map A[1] -> B[1] with the same components
  ModChainMap f_sh = t.f;
  int lo = std::min(std::min(t.a.lo, t.b.lo), t.c.lo) - 1;
  int hi = std::max(std::max(t.a.hi(), t.b.hi()), t.c.hi()) + 1;
  // at each degree check exactness of H(A) -> H(B) -> H(C) -> H(A[1]) -> H(B[1]) vertexwise
  for (int i = lo; i <= hi; ++i) {
    HomologyData ha = homology(alg, t.a, i);
    HomologyData hb = homology(alg, t.b, i);
    HomologyData hc = homology(alg, t.c, i);
    HomologyData ha1 = homology(alg, a_sh, i);
    HomologyData hb1 = homology(alg, b_sh, i);
    ModuleMap m1 = induced_on_homology(alg, t.a, t.b, t.f, i, ha, hb);
    ModuleMap m2 = induced_on_homology(alg, t.b, t.c, t.inclusion, i, hb, hc);
    ModuleMap m3 = induced_on_homology(alg, t.c, a_sh, t.projection, i, hc, ha1);
    ModuleMap m4 = induced_on_homology(alg, a_sh, b_sh, f_sh, i, ha1, hb1);
    for (int v = 0; v < alg.nverts(); ++v) {
      // exact at H^i(B): rank m1 + rank m2 = dim and m2 m1 = 0
      if (!(m2.f[size_t(v)] * m1.f[size_t(v)]).is_zero()) return false;
      if (rank(m1.f[size_t(v)]) + rank(m2.f[size_t(v)]) != hb.h.dims[size_t(v)]) return false;
      if (!(m3.f[size_t(v)] * m2.f[size_t(v)]).is_zero()) return false;
      if (rank(m2.f[size_t(v)]) + rank(m3.f[size_t(v)]) != hc.h.dims[size_t(v)]) return false;
      if (!(m4.f[size_t(v)] * m3.f[size_t(v)]).is_zero()) return false;
      if (rank(m3.f[size_t(v)]) + rank(m4.f[size_t(v)]) != ha1.h.dims[size_t(v)]) return false;
    }
  }
  return true;
}

}  // namespace lf
