#include "levelforge/levels.hpp"

#include <algorithm>

#include "levelforge/complex.hpp"

namespace lf {

namespace {

ProjComplex zero_proj() {
  ProjComplex z;
  z.lo = 0;
  z.terms = {{}};
  return z;
}

/* Rebuild the object; when check is non-null, test every summand node and
 * record the first failure instead of throwing. */
ProjComplex realize_impl(const FinDimAlgebra& alg, const LevelCertificate& cert,
                         const GeneratorSet& gens, std::string* check) {
  switch (cert.kind) {
    case CertKind::Leaf: {
      if (cert.gen < 0 || cert.gen >= int(gens.size()))
        throw Error("certificate leaf generator index out of range");
      if (cert.mult < 0) throw Error("certificate leaf multiplicity negative");
      ProjComplex g = proj_shift(gens[size_t(cert.gen)], cert.shift);
      ProjComplex out = zero_proj();
      for (int i = 0; i < cert.mult; ++i) out = proj_direct_sum(alg, out, g);
      return out;
    }
    case CertKind::DirectSum: {
      ProjComplex out = zero_proj();
      for (const auto& ch : cert.children)
        out = proj_direct_sum(alg, out, realize_impl(alg, ch, gens, check));
      return out;
    }
    case CertKind::Cone: {
      if (cert.children.size() != 2) throw Error("cone certificate needs two children");
      ProjComplex left = realize_impl(alg, cert.children[0], gens, check);
      ProjComplex right = realize_impl(alg, cert.children[1], gens, check);
      ProjComplex rs = proj_shift(right, -1);
      validate_proj_chain(alg, rs, left, cert.attach, 0);
      return proj_cone(alg, rs, left, cert.attach);
    }
    case CertKind::Summand: {
      if (cert.children.size() != 1) throw Error("summand certificate needs one child");
      ProjComplex child = realize_impl(alg, cert.children[0], gens, check);
      validate_proj(alg, cert.part);
      validate_proj_chain(alg, cert.part, child, cert.sec, 0);
      validate_proj_chain(alg, child, cert.part, cert.ret, 0);
      if (check && check->empty()) {
        ProjChainMap rs =
            proj_chain_compose(alg, cert.part, child, cert.part, cert.sec, 0, cert.ret, 0);
        if (!chain_homotopic(alg, cert.part, cert.part, rs,
                             proj_chain_identity(alg, cert.part)))
          *check = "summand node: retraction after section is not homotopic to the identity";
      }
      return cert.part;
    }
  }
  throw Error("certificate node kind unknown");
}

}  // namespace

int certificate_level(const LevelCertificate& cert) {
  switch (cert.kind) {
    case CertKind::Leaf:
      return 1;
    case CertKind::DirectSum: {
      int l = 1;
      for (const auto& ch : cert.children) l = std::max(l, certificate_level(ch));
      return l;
    }
    case CertKind::Cone:
      return certificate_level(cert.children[0]) + certificate_level(cert.children[1]);
    case CertKind::Summand:
      return certificate_level(cert.children[0]);
  }
  return 1;
}

int certificate_size(const LevelCertificate& cert) {
  int n = 1;
  for (const auto& ch : cert.children) n += certificate_size(ch);
  return n;
}

ProjComplex realize_certificate(const FinDimAlgebra& alg, const LevelCertificate& cert,
                                const GeneratorSet& gens) {
  return realize_impl(alg, cert, gens, nullptr);
}

VerifyReport verify_certificate(const FinDimAlgebra& alg, const ProjComplex& x,
                                const LevelCertificate& cert, const GeneratorSet& gens) {
  VerifyReport rep;
  rep.level = certificate_level(cert);
  rep.size = certificate_size(cert);

  std::string check;
  ProjComplex y = realize_impl(alg, cert, gens, &check);
  if (!check.empty()) {
    rep.reason = check;
    return rep;
  }

  HomProj fwd = hom_k_proj(alg, x, y, 0);
  HomProj bwd = hom_k_proj(alg, y, x, 0);
  HomProj endo = hom_k_proj(alg, x, x, 0);
  rep.hom_fwd = fwd.dim;
  rep.hom_bwd = bwd.dim;

  /* One column per pair (s_i, r_j): the class of r_j∘s_i in Hom(x,x). A
   * solution c of sys·c = [id] factors id_x through a direct sum of copies
   * of y, with s = (s_i)_i and r = sum of scaled r_j per column. */
  Mat sys = Mat::zero(endo.dim, fwd.dim * bwd.dim);
  for (int i = 0; i < fwd.dim; ++i)
    for (int j = 0; j < bwd.dim; ++j) {
      ProjChainMap comp = proj_chain_compose(alg, x, y, x, fwd.reps[size_t(i)], 0,
                                             bwd.reps[size_t(j)], 0);
      sys.set_col(i * bwd.dim + j, endo.classify_map(x, comp));
    }
  Mat rhs = Mat::zero(endo.dim, 1);
  rhs.set_col(0, endo.classify_map(x, proj_chain_identity(alg, x)));

  SolveResult sol = linear_solve(sys, rhs);
  if (!sol.solvable) {
    rep.reason = "identity does not factor through the rebuilt object";
    return rep;
  }
  rep.pass = true;
  rep.witness.resize(size_t(fwd.dim * bwd.dim));
  for (int k = 0; k < fwd.dim * bwd.dim; ++k) rep.witness[size_t(k)] = sol.particular.at(k, 0);
  return rep;
}

LevelCertificate star_rewrite_smd(const FinDimAlgebra& alg, const LevelCertificate& cert,
                                  const GeneratorSet& gens) {
  if (cert.kind != CertKind::Cone || cert.children.size() != 2 ||
      cert.children[0].kind != CertKind::Summand)
    throw Error("rewrite needs a cone whose left side is a summand node");
  const LevelCertificate& smd = cert.children[0];
  const LevelCertificate& right = cert.children[1];

  ProjComplex a = realize_certificate(alg, smd.children[0], gens);
  ProjComplex robj = realize_certificate(alg, right, gens);
  ProjComplex rs = proj_shift(robj, -1);
  const ProjComplex& s_obj = smd.part;

  /* homotopy h with ret∘sec - id = d h + h d */
  ProjChainMap retsec = proj_chain_compose(alg, s_obj, a, s_obj, smd.sec, 0, smd.ret, 0);
  ProjChainMap dev = proj_chain_sub(retsec, proj_chain_identity(alg, s_obj));
  auto h = chain_nullhomotopy(alg, s_obj, s_obj, dev);
  if (!h) throw Error("summand witness does not split");

  ProjChainMap psi = proj_chain_compose(alg, rs, s_obj, a, cert.attach, 0, smd.sec, 0);
  ProjComplex x = proj_cone(alg, rs, s_obj, cert.attach);
  ProjComplex cone_a = proj_cone(alg, rs, a, psi);
  ProjChainMap hphi = proj_chain_compose(alg, rs, s_obj, s_obj, cert.attach, 0, *h, -1);

  /* section diag(id, sec) and retraction [[id, 0], [h∘attach, ret]] between
   * the two cones; both are strict chain maps and compose to something
   * homotopic to the identity of x. */
  ProjChainMap sec, ret;
  for (int k = x.lo; k <= x.hi(); ++k) {
    std::vector<int> xa = rs.term_at(k + 1);
    int na = int(xa.size());
    AlgMat sk = chain_comp_at(alg, s_obj, a, smd.sec, 0, k);
    AlgMat rk = chain_comp_at(alg, a, s_obj, smd.ret, 0, k);
    AlgMat hk = chain_comp_at(alg, rs, s_obj, hphi, -1, k + 1);

    AlgMat u = AlgMat::zero(cone_a.term_at(k), x.term_at(k));
    AlgMat v = AlgMat::zero(x.term_at(k), cone_a.term_at(k));
    for (int i = 0; i < na; ++i) {
      u.at(i, i) = alg.idem_elem(xa[size_t(i)]);
      v.at(i, i) = alg.idem_elem(xa[size_t(i)]);
    }
    for (int r = 0; r < sk.rows(); ++r)
      for (int c = 0; c < sk.cols(); ++c) u.at(na + r, na + c) = sk.at(r, c);
    for (int r = 0; r < rk.rows(); ++r)
      for (int c = 0; c < rk.cols(); ++c) v.at(na + r, na + c) = rk.at(r, c);
    for (int r = 0; r < hk.rows(); ++r)
      for (int c = 0; c < hk.cols(); ++c) v.at(na + r, c) = hk.at(r, c);
    sec.comps.push_back(u);
    ret.comps.push_back(v);
  }
  validate_proj_chain(alg, x, cone_a, sec, 0);
  validate_proj_chain(alg, cone_a, x, ret, 0);

  LevelCertificate out;
  out.kind = CertKind::Summand;
  out.part = x;
  out.sec = sec;
  out.ret = ret;
  LevelCertificate cone;
  cone.kind = CertKind::Cone;
  cone.children = {smd.children[0], right};
  cone.attach = psi;
  out.children = {cone};
  return out;
}

LevelCertificate pad_certificate(const FinDimAlgebra& alg, const LevelCertificate& cert,
                                 const GeneratorSet& gens) {
  ProjComplex obj = realize_certificate(alg, cert, gens);
  LevelCertificate zero;
  zero.kind = CertKind::DirectSum;
  LevelCertificate out;
  out.kind = CertKind::Cone;
  out.children = {cert, zero};
  out.attach = proj_chain_zero(alg, proj_shift(zero_proj(), -1), obj, 0);
  return out;
}

namespace {

bool covers_all_vertices(const FinDimAlgebra& alg, const ProjComplex& g) {
  if (g.terms.size() != 1) return false;
  std::vector<bool> seen(size_t(alg.nverts()), false);
  for (int v : g.terms[0]) seen[size_t(v)] = true;
  for (bool b : seen)
    if (!b) return false;
  return true;
}

/* Summand node picking one single-degree term out of copies of the free
 * generator: strict section/retraction, no homotopy needed. */
LevelCertificate free_term_cert(const FinDimAlgebra& alg, const std::vector<int>& verts,
                                int degree, int lam, const ProjComplex& g) {
  const std::vector<int>& gv = g.terms[0];
  std::vector<int> first_pos(size_t(alg.nverts()), -1);
  for (int i = 0; i < int(gv.size()); ++i)
    if (first_pos[size_t(gv[size_t(i)])] < 0) first_pos[size_t(gv[size_t(i)])] = i;

  std::vector<int> count(size_t(alg.nverts()), 0);
  std::vector<int> copy_of(verts.size());
  int mult = 0;
  for (size_t j = 0; j < verts.size(); ++j) {
    copy_of[j] = count[size_t(verts[j])]++;
    mult = std::max(mult, copy_of[j] + 1);
  }

  LevelCertificate leaf;
  leaf.kind = CertKind::Leaf;
  leaf.gen = lam;
  leaf.shift = g.lo - degree;
  leaf.mult = mult;

  std::vector<int> leaf_verts;
  for (int c = 0; c < mult; ++c)
    for (int v : gv) leaf_verts.push_back(v);

  LevelCertificate out;
  out.kind = CertKind::Summand;
  out.children = {leaf};
  out.part.lo = degree;
  out.part.terms = {verts};
  AlgMat s = AlgMat::zero(leaf_verts, verts);
  AlgMat r = AlgMat::zero(verts, leaf_verts);
  for (size_t j = 0; j < verts.size(); ++j) {
    int row = copy_of[j] * int(gv.size()) + first_pos[size_t(verts[j])];
    s.at(row, int(j)) = alg.idem_elem(verts[j]);
    r.at(int(j), row) = alg.idem_elem(verts[j]);
  }
  out.sec.comps = {s};
  out.ret.comps = {r};
  return out;
}

/* Chain of cones rebuilding p term by term from the top; the realized object
 * equals p (with trailing empty degrees), so the level is the number of
 * nonzero terms. */
LevelCertificate term_chain_cert(const FinDimAlgebra& alg, const ProjComplex& p, int lam,
                                 const ProjComplex& g) {
  int top = p.hi();
  while (top > p.lo && p.term_at(top).empty()) --top;
  if (p.term_at(top).empty()) {
    LevelCertificate zero;
    zero.kind = CertKind::DirectSum;
    return zero;
  }
  LevelCertificate cert = free_term_cert(alg, p.term_at(top), top, lam, g);
  for (int k = top - 1; k >= p.lo; --k) {
    if (p.term_at(k).empty()) continue;
    LevelCertificate cone;
    cone.kind = CertKind::Cone;
    cone.children = {cert, free_term_cert(alg, p.term_at(k), k, lam, g)};
    cone.attach.comps = {p.diff_at(k)};
    cert = cone;
  }
  return cert;
}

int nonzero_terms(const ProjComplex& p) {
  int n = 0;
  for (const auto& t : p.terms)
    if (!t.empty()) ++n;
  return n;
}

}  // namespace

LevelBound level_upper_bound(const FinDimAlgebra& alg, const ProjComplex& x,
                             const GeneratorSet& gens, int search_cap) {
  LevelBound out;
  out.level = search_cap;

  /* level 1: a window of shifted generators wide enough for any hom class */
  LevelCertificate window;
  window.kind = CertKind::DirectSum;
  for (int i = 0; i < int(gens.size()); ++i) {
    const ProjComplex& g = gens[size_t(i)];
    for (int n = g.lo - x.hi(); n <= g.hi() - x.lo; ++n) {
      LevelCertificate leaf;
      leaf.kind = CertKind::Leaf;
      leaf.gen = i;
      leaf.shift = n;
      leaf.mult = 1;
      window.children.push_back(leaf);
    }
  }
  if (search_cap >= 1 && verify_certificate(alg, x, window, gens).pass) {
    out.known = true;
    out.level = 1;
    out.cert = window;
    return out;
  }

  int lam = -1;
  for (int i = 0; i < int(gens.size()); ++i)
    if (covers_all_vertices(alg, gens[size_t(i)])) {
      lam = i;
      break;
    }
  if (lam < 0) return out;
  const ProjComplex& g = gens[size_t(lam)];
  int rescap = 2 * alg.dim() + x.width() + 8;

  std::vector<LevelCertificate> cands;

  /* split into shifted homology, each rebuilt from its minimal resolution */
  {
    ModCplx xx = expand_proj(alg, x);
    LevelCertificate split;
    split.kind = CertKind::DirectSum;
    bool ok = true;
    for (int i = xx.lo; i <= xx.hi(); ++i) {
      Module h = homology(alg, xx, i).h;
      if (h.is_zero()) continue;
      Resolution r = projective_resolution(alg, h, rescap);
      if (!r.finite) {
        ok = false;
        break;
      }
      split.children.push_back(term_chain_cert(alg, proj_shift(r.p, -i), lam, g));
    }
    if (ok) cands.push_back(split);
  }

  /* rebuild a minimal model term by term: level = number of nonzero terms */
  {
    ModCplx xx = expand_proj(alg, x);
    ProjComplex mm = minimalize(alg, projective_model(alg, xx, rescap).total).min;
    cands.push_back(term_chain_cert(alg, mm, lam, g));
  }

  std::stable_sort(cands.begin(), cands.end(),
                   [](const LevelCertificate& a, const LevelCertificate& b) {
                     return certificate_level(a) < certificate_level(b);
                   });
  for (const auto& c : cands) {
    int lvl = certificate_level(c);
    if (lvl > search_cap) continue;
    if (verify_certificate(alg, x, c, gens).pass) {
      out.known = true;
      out.level = lvl;
      out.cert = c;
      return out;
    }
  }
  return out;
}

OrthTable right_orthogonal_check(const FinDimAlgebra& alg, const GeneratorSet& gens,
                                 const ProjComplex& x, int window) {
  OrthTable t;
  t.window = window;
  t.dims.assign(gens.size(), std::vector<int>(size_t(2 * window + 1), 0));
  for (int i = 0; i < int(gens.size()); ++i)
    for (int n = -window; n <= window; ++n) {
      int d = hom_k_proj(alg, gens[size_t(i)], x, -n).dim;
      t.dims[size_t(i)][size_t(n + window)] = d;
      if (d != 0 && t.orthogonal) {
        t.orthogonal = false;
        t.first_gen = i;
        t.first_shift = n;
      }
    }
  return t;
}

Module diagonal_bimodule(const FinDimAlgebra& alg, const FinDimAlgebra& env) {
  int nv = alg.nverts();
  int na = alg.narrows();
  auto pv = [&](int u, int v) { return u * nv + v; };

  /* fibre over (u,v): basis paths v -> u, in global basis order */
  std::vector<std::vector<int>> fibre(size_t(nv * nv));
  std::vector<int> pos_in_fibre(size_t(alg.dim()), -1);
  for (int p = 0; p < alg.dim(); ++p) {
    auto& f = fibre[size_t(pv(alg.basis_tgt[size_t(p)], alg.basis_src[size_t(p)]))];
    pos_in_fibre[size_t(p)] = int(f.size());
    f.push_back(p);
  }

  Module m;
  m.dims.resize(size_t(env.nverts()));
  for (int w = 0; w < env.nverts(); ++w) m.dims[size_t(w)] = int(fibre[size_t(w)].size());
  m.act.resize(size_t(env.narrows()));
  for (int ea = 0; ea < env.narrows(); ++ea) {
    int src_w = env.vtx_of_arrow_src(ea), tgt_w = env.vtx_of_arrow_tgt(ea);
    Mat a = Mat::zero(m.dims[size_t(tgt_w)], m.dims[size_t(src_w)]);
    bool left = ea < na * nv;
    AlgElem arr = alg.arrow_elem(left ? ea / nv : (ea - na * nv) / nv);
    for (int j = 0; j < m.dims[size_t(src_w)]; ++j) {
      AlgElem b = {{fibre[size_t(src_w)][size_t(j)], 1}};
      AlgElem prod = left ? alg.mult(arr, b) : alg.mult(b, arr);
      for (auto& [p, coef] : prod) a.at(pos_in_fibre[size_t(p)], j) = coef;
    }
    m.act[size_t(ea)] = a;
  }
  validate_module(env, m);
  return m;
}

DiagonalBound diagonal_strong_generation_bound(const FinDimAlgebra& alg) {
  DiagonalBound out;
  out.env = path_algebra(enveloping_presentation(alg.pres));
  out.diagonal = diagonal_bimodule(alg, out.env);
  out.witness = projective_resolution(out.env, out.diagonal, 2 * out.env.dim() + 4);
  if (!out.witness.finite) throw Error("diagonal bimodule resolution cap exceeded");
  out.bound = out.witness.length + 1;
  return out;
}

}  // namespace lf
