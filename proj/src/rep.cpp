#include "levelforge/rep.hpp"

namespace lf {

int Module::total_dim() const {
  int t = 0;
  for (int d : dims) t += d;
  return t;
}

bool ModuleMap::is_zero() const {
  for (const Mat& m : f)
    if (!m.is_zero()) return false;
  return true;
}

Module zero_module(const FinDimAlgebra& alg) {
  Module m;
  m.dims.assign(std::size_t(alg.nverts()), 0);
  for (int a = 0; a < alg.narrows(); ++a) m.act.push_back(Mat(0, 0));
  return m;
}

Module direct_sum(const FinDimAlgebra& alg, const Module& a, const Module& b) {
  Module m;
  for (int v = 0; v < alg.nverts(); ++v)
    m.dims.push_back(a.dims[std::size_t(v)] + b.dims[std::size_t(v)]);
  for (int ar = 0; ar < alg.narrows(); ++ar) {
    int s = alg.vtx_of_arrow_src(ar), t = alg.vtx_of_arrow_tgt(ar);
    Mat blk(m.dims[std::size_t(t)], m.dims[std::size_t(s)]);
    const Mat& A = a.act[std::size_t(ar)];
    const Mat& B = b.act[std::size_t(ar)];
    for (int i = 0; i < A.rows; ++i)
      for (int j = 0; j < A.cols; ++j) blk.at(i, j) = A.at(i, j);
    for (int i = 0; i < B.rows; ++i)
      for (int j = 0; j < B.cols; ++j) blk.at(A.rows + i, A.cols + j) = B.at(i, j);
    m.act.push_back(std::move(blk));
  }
  return m;
}

void validate_module(const FinDimAlgebra& alg, const Module& m) {
  if (int(m.dims.size()) != alg.nverts() || int(m.act.size()) != alg.narrows())
    throw Error("module data has wrong arity");
  for (int a = 0; a < alg.narrows(); ++a) {
    const Mat& mat = m.act[std::size_t(a)];
    if (mat.rows != m.dims[std::size_t(alg.vtx_of_arrow_tgt(a))] ||
        mat.cols != m.dims[std::size_t(alg.vtx_of_arrow_src(a))])
      throw Error("arrow action has wrong shape");
  }
  for (const Relation& rel : alg.pres.relations) {
    if (rel.empty()) continue;
    int src = rel.front().path.src;
    int tgt = src;
    for (int a : rel.front().path.arrows) tgt = alg.vtx_of_arrow_tgt(a);
    Mat acc(m.dims[std::size_t(tgt)], m.dims[std::size_t(src)]);
    for (const RelTerm& t : rel)
      acc = acc + path_action(alg, m, t.path).scaled(t.coeff);
    if (!acc.is_zero()) throw Error("relation does not act by zero");
  }
}

void validate_map(const FinDimAlgebra& alg, const Module& m, const Module& n,
                  const ModuleMap& f) {
  if (int(f.f.size()) != alg.nverts()) throw Error("module map has wrong arity");
  for (int v = 0; v < alg.nverts(); ++v)
    if (f.f[std::size_t(v)].rows != n.dims[std::size_t(v)] ||
        f.f[std::size_t(v)].cols != m.dims[std::size_t(v)])
      throw Error("module map has wrong shape");
  for (int a = 0; a < alg.narrows(); ++a) {
    int s = alg.vtx_of_arrow_src(a), t = alg.vtx_of_arrow_tgt(a);
    Mat lhs = f.f[std::size_t(t)] * m.act[std::size_t(a)];
    Mat rhs = n.act[std::size_t(a)] * f.f[std::size_t(s)];
    if (!(lhs == rhs)) throw Error("module map does not commute with an arrow");
  }
}

Mat path_action(const FinDimAlgebra& alg, const Module& m, const PathWord& p) {
  int cur = p.src;
  Mat acc = Mat::identity(m.dims[std::size_t(cur)]);
  for (int a : p.arrows) {
    acc = m.act[std::size_t(a)] * acc;
    cur = alg.vtx_of_arrow_tgt(a);
  }
  return acc;
}

Mat elem_action(const FinDimAlgebra& alg, const Module& m, const AlgElem& x, int src_v,
                int tgt_v) {
  Mat acc(m.dims[std::size_t(tgt_v)], m.dims[std::size_t(src_v)]);
  for (auto& [i, c] : x) {
    if (alg.basis_src[std::size_t(i)] != src_v || alg.basis_tgt[std::size_t(i)] != tgt_v)
      throw Error("element action: basis path outside (src,tgt) block");
    acc = acc + path_action(alg, m, alg.basis[std::size_t(i)]).scaled(c);
  }
  return acc;
}

ModuleMap zero_map(const Module& m, const Module& n) {
  ModuleMap f;
  for (std::size_t v = 0; v < m.dims.size(); ++v)
    f.f.push_back(Mat(n.dims[v], m.dims[v]));
  return f;
}

ModuleMap identity_map(const Module& m) {
  ModuleMap f;
  for (int d : m.dims) f.f.push_back(Mat::identity(d));
  return f;
}

ModuleMap compose(const ModuleMap& g, const ModuleMap& f) {
  ModuleMap r;
  for (std::size_t v = 0; v < f.f.size(); ++v) r.f.push_back(g.f[v] * f.f[v]);
  return r;
}

ModuleMap map_add(const ModuleMap& a, const ModuleMap& b) {
  ModuleMap r;
  for (std::size_t v = 0; v < a.f.size(); ++v) r.f.push_back(a.f[v] + b.f[v]);
  return r;
}

ModuleMap map_sub(const ModuleMap& a, const ModuleMap& b) {
  ModuleMap r;
  for (std::size_t v = 0; v < a.f.size(); ++v) r.f.push_back(a.f[v] - b.f[v]);
  return r;
}

ModuleMap map_scale(const ModuleMap& a, Fp c) {
  ModuleMap r;
  for (std::size_t v = 0; v < a.f.size(); ++v) r.f.push_back(a.f[v].scaled(c));
  return r;
}

std::vector<std::vector<int>> projective_vertex_basis(const FinDimAlgebra& alg, int v) {
  std::vector<std::vector<int>> per(std::size_t(alg.nverts()));
  for (int i = 0; i < alg.dim(); ++i)
    if (alg.basis_src[std::size_t(i)] == v) per[std::size_t(alg.basis_tgt[std::size_t(i)])].push_back(i);
  return per;
}

Module projective_module(const FinDimAlgebra& alg, int v) {
  auto per = projective_vertex_basis(alg, v);
  Module m;
  for (auto& lst : per) m.dims.push_back(int(lst.size()));
  for (int a = 0; a < alg.narrows(); ++a) {
    int s = alg.vtx_of_arrow_src(a), t = alg.vtx_of_arrow_tgt(a);
    Mat mat(m.dims[std::size_t(t)], m.dims[std::size_t(s)]);
    for (int j = 0; j < int(per[std::size_t(s)].size()); ++j) {
      AlgElem prod = alg.mult(alg.arrow_elem(a), AlgElem{{per[std::size_t(s)][std::size_t(j)], 1}});
      for (auto& [bi, c] : prod) {
        auto& lst = per[std::size_t(t)];
        for (int i = 0; i < int(lst.size()); ++i)
          if (lst[std::size_t(i)] == bi) mat.at(i, j) = c;
      }
    }
    m.act.push_back(std::move(mat));
  }
  return m;
}

Module simple_module(const FinDimAlgebra& alg, int v) {
  Module m;
  m.dims.assign(std::size_t(alg.nverts()), 0);
  m.dims[std::size_t(v)] = 1;
  for (int a = 0; a < alg.narrows(); ++a) {
    int s = alg.vtx_of_arrow_src(a), t = alg.vtx_of_arrow_tgt(a);
    m.act.push_back(Mat(m.dims[std::size_t(t)], m.dims[std::size_t(s)]));
  }
  return m;
}

Module free_module(const FinDimAlgebra& alg) {
  Module m = zero_module(alg);
  for (int v = 0; v < alg.nverts(); ++v) m = direct_sum(alg, m, projective_module(alg, v));
  return m;
}

StandardModules standard_modules(const FinDimAlgebra& alg) {
  StandardModules s;
  for (int v = 0; v < alg.nverts(); ++v) {
    s.projectives.push_back(projective_module(alg, v));
    s.simples.push_back(simple_module(alg, v));
  }
  return s;
}

std::vector<ModuleMap> hom_space(const FinDimAlgebra& alg, const Module& m, const Module& n) {
  int nv = alg.nverts();
  std::vector<int> off(std::size_t(nv) + 1, 0);
  for (int v = 0; v < nv; ++v)
    off[std::size_t(v) + 1] = off[std::size_t(v)] + n.dims[std::size_t(v)] * m.dims[std::size_t(v)];
  int unknowns = off[std::size_t(nv)];
  int eqs = 0;
  for (int a = 0; a < alg.narrows(); ++a)
    eqs += n.dims[std::size_t(alg.vtx_of_arrow_tgt(a))] * m.dims[std::size_t(alg.vtx_of_arrow_src(a))];
  Mat sys(eqs, unknowns);
  int row = 0;
  for (int a = 0; a < alg.narrows(); ++a) {
    int s = alg.vtx_of_arrow_src(a), t = alg.vtx_of_arrow_tgt(a);
    const Mat& A = m.act[std::size_t(a)];  // m_t x m_s
    const Mat& B = n.act[std::size_t(a)];  // n_t x n_s
    for (int r = 0; r < n.dims[std::size_t(t)]; ++r)
      for (int c = 0; c < m.dims[std::size_t(s)]; ++c, ++row) {
        // (f_t * A)(r,c) - (B * f_s)(r,c) = 0
        for (int k = 0; k < m.dims[std::size_t(t)]; ++k)
          if (A.at(k, c))
            sys.at(row, off[std::size_t(t)] + r * m.dims[std::size_t(t)] + k) =
                fp::add(sys.at(row, off[std::size_t(t)] + r * m.dims[std::size_t(t)] + k), A.at(k, c));
        for (int k = 0; k < n.dims[std::size_t(s)]; ++k)
          if (B.at(r, k))
            sys.at(row, off[std::size_t(s)] + k * m.dims[std::size_t(s)] + c) =
                fp::sub(sys.at(row, off[std::size_t(s)] + k * m.dims[std::size_t(s)] + c), B.at(r, k));
      }
  }
  Mat ker = kernel_basis(sys);
  std::vector<ModuleMap> out;
  for (int j = 0; j < ker.cols; ++j) {
    ModuleMap f;
    for (int v = 0; v < nv; ++v) {
      Mat blk(n.dims[std::size_t(v)], m.dims[std::size_t(v)]);
      for (int r = 0; r < blk.rows; ++r)
        for (int c = 0; c < blk.cols; ++c)
          blk.at(r, c) = ker.at(off[std::size_t(v)] + r * blk.cols + c, j);
      f.f.push_back(std::move(blk));
    }
    out.push_back(std::move(f));
  }
  return out;
}

int hom_dim(const FinDimAlgebra& alg, const Module& m, const Module& n) {
  return int(hom_space(alg, m, n).size());
}

SubModule sub_module(const FinDimAlgebra& alg, const Module& m, const std::vector<Mat>& bases) {
  SubModule s;
  for (int v = 0; v < alg.nverts(); ++v) s.sub.dims.push_back(bases[std::size_t(v)].cols);
  for (int a = 0; a < alg.narrows(); ++a) {
    int sv = alg.vtx_of_arrow_src(a), tv = alg.vtx_of_arrow_tgt(a);
    Mat rhs = m.act[std::size_t(a)] * bases[std::size_t(sv)];
    SolveResult sol = linear_solve(bases[std::size_t(tv)], rhs);
    if (!sol.solvable) throw Error("sub_module: family not arrow-invariant");
    s.sub.act.push_back(sol.particular);
  }
  s.inclusion.f = bases;
  return s;
}

QuotientModule quotient_module(const FinDimAlgebra& alg, const Module& m,
                               const std::vector<Mat>& sub_bases) {
  QuotientModule q;
  std::vector<Mat> proj(std::size_t(alg.nverts()));
  std::vector<Mat> sect(std::size_t(alg.nverts()));
  for (int v = 0; v < alg.nverts(); ++v) {
    const Mat& s = sub_bases[std::size_t(v)];
    std::vector<int> comp = complement_indices(s);
    Mat cmat(m.dims[std::size_t(v)], int(comp.size()));
    for (int j = 0; j < int(comp.size()); ++j) cmat.at(comp[std::size_t(j)], j) = 1;
    Mat full = s.hstack(cmat);
    std::optional<Mat> inv = inverse(full);
    if (!inv) throw Error("quotient_module: basis completion failed");
    proj[std::size_t(v)] = inv->row_slice(s.cols, full.cols);
    sect[std::size_t(v)] = cmat;
    q.quot.dims.push_back(int(comp.size()));
  }
  for (int a = 0; a < alg.narrows(); ++a) {
    int sv = alg.vtx_of_arrow_src(a), tv = alg.vtx_of_arrow_tgt(a);
    q.quot.act.push_back(proj[std::size_t(tv)] * m.act[std::size_t(a)] * sect[std::size_t(sv)]);
  }
  q.projection.f = proj;
  q.section = sect;
  return q;
}

SubModule kernel_of(const FinDimAlgebra& alg, const Module& m, const Module& n,
                    const ModuleMap& f) {
  std::vector<Mat> bases;
  for (int v = 0; v < alg.nverts(); ++v) bases.push_back(kernel_basis(f.f[std::size_t(v)]));
  (void)n;
  return sub_module(alg, m, bases);
}

SubModule image_of(const FinDimAlgebra& alg, const Module& m, const Module& n,
                   const ModuleMap& f) {
  std::vector<Mat> bases;
  for (int v = 0; v < alg.nverts(); ++v) bases.push_back(column_space_basis(f.f[std::size_t(v)]));
  (void)m;
  return sub_module(alg, n, bases);
}

std::vector<Mat> radical_bases(const FinDimAlgebra& alg, const Module& m) {
  // rad M is spanned vertexwise by the images of all arrow actions.
  std::vector<Mat> out;
  for (int v = 0; v < alg.nverts(); ++v) {
    Mat acc(m.dims[std::size_t(v)], 0);
    for (int a = 0; a < alg.narrows(); ++a)
      if (alg.vtx_of_arrow_tgt(a) == v) acc = acc.hstack(m.act[std::size_t(a)]);
    out.push_back(column_space_basis(acc));
  }
  return out;
}

QuotientModule top_of(const FinDimAlgebra& alg, const Module& m) {
  return quotient_module(alg, m, radical_bases(alg, m));
}

}  // namespace lf
