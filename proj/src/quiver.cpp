#include "levelforge/quiver.hpp"

#include <algorithm>
#include <sstream>

namespace lf {

int Quiver::vertex_index(const std::string& name) const {
  for (int i = 0; i < int(vertices.size()); ++i)
    if (vertices[std::size_t(i)] == name) return i;
  throw Error("unknown vertex: " + name);
}

int Quiver::arrow_index(const std::string& label) const {
  for (int i = 0; i < int(arrows.size()); ++i)
    if (arrows[std::size_t(i)].label == label) return i;
  throw Error("unknown arrow: " + label);
}

AlgElem elem_add(const AlgElem& x, const AlgElem& y) {
  AlgElem r;
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j >= y.size() || (i < x.size() && x[i].first < y[j].first)) {
      r.push_back(x[i++]);
    } else if (i >= x.size() || y[j].first < x[i].first) {
      r.push_back(y[j++]);
    } else {
      Fp c = fp::add(x[i].second, y[j].second);
      if (c) r.emplace_back(x[i].first, c);
      ++i;
      ++j;
    }
  }
  return r;
}

AlgElem elem_scale(const AlgElem& x, Fp c) {
  AlgElem r;
  if (!c) return r;
  for (auto& [i, v] : x) {
    Fp w = fp::mul(v, c);
    if (w) r.emplace_back(i, w);
  }
  return r;
}

namespace {

/* Word-level machinery shared by the algebra builder. Words live inside one
 * (src,tgt) pair during any reduction, so only arrow sequences matter. */

using Word = std::vector<int>;

struct WordOrder {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using Lin = std::map<Word, Fp, WordOrder>;  // linear combination of words

struct Rule {
  Word lhs;
  Lin rhs;
};

void lin_add(Lin& acc, const Word& w, Fp c) {
  if (!c) return;
  auto it = acc.find(w);
  if (it == acc.end()) {
    acc.emplace(w, c);
  } else {
    it->second = fp::add(it->second, c);
    if (!it->second) acc.erase(it);
  }
}

bool word_valid(const Quiver& q, int src, const Word& w, int* tgt_out) {
  int cur = src;
  for (int a : w) {
    if (a < 0 || a >= int(q.arrows.size())) return false;
    if (q.arrows[std::size_t(a)].src != cur) return false;
    cur = q.arrows[std::size_t(a)].tgt;
  }
  if (tgt_out) *tgt_out = cur;
  return true;
}

/* First rule match scanning positions left to right, rules in order. */
bool find_match(const std::vector<Rule>& rules, const Word& w, std::size_t* pos, std::size_t* ri) {
  for (std::size_t p = 0; p < w.size(); ++p)
    for (std::size_t r = 0; r < rules.size(); ++r) {
      const Word& l = rules[r].lhs;
      if (l.empty() || p + l.size() > w.size()) continue;
      if (std::equal(l.begin(), l.end(), w.begin() + long(p))) {
        *pos = p;
        *ri = r;
        return true;
      }
    }
  return false;
}

Lin reduce_word(const std::vector<Rule>& rules, const Word& w0, Fp c0) {
  Lin pending;
  lin_add(pending, w0, c0);
  Lin done;
  long guard = 0;
  while (!pending.empty()) {
    if (++guard > 2000000) throw Error("path rewriting failed to terminate");
    auto it = std::prev(pending.end());  // largest first
    Word w = it->first;
    Fp c = it->second;
    pending.erase(it);
    std::size_t pos = 0, ri = 0;
    if (!find_match(rules, w, &pos, &ri)) {
      lin_add(done, w, c);
      continue;
    }
    const Rule& rule = rules[ri];
    for (auto& [tail, tc] : rule.rhs) {
      Word nw;
      nw.reserve(w.size() - rule.lhs.size() + tail.size());
      nw.insert(nw.end(), w.begin(), w.begin() + long(pos));
      nw.insert(nw.end(), tail.begin(), tail.end());
      nw.insert(nw.end(), w.begin() + long(pos + rule.lhs.size()), w.end());
      lin_add(pending, nw, fp::mul(c, tc));
    }
  }
  return done;
}

std::string word_string(const Quiver& q, int src, const Word& w) {
  std::ostringstream os;
  os << q.vertices[std::size_t(src)];
  for (int a : w) os << " -" << q.arrows[std::size_t(a)].label << "->";
  return os.str();
}

}  // namespace

FinDimAlgebra path_algebra(const QuiverPresentation& pres, int path_length_cap) {
  const Quiver& q = pres.quiver;
  if (q.vertices.empty()) throw Error("quiver needs at least one vertex");

  // Turn relations into rewrite rules; leading word is the largest.
  std::vector<Rule> rules;
  for (const Relation& rel : pres.relations) {
    if (rel.empty()) continue;
    int src = rel.front().path.src, tgt = -1;
    if (!word_valid(q, src, rel.front().path.arrows, &tgt))
      throw Error("relation contains an invalid path");
    Lin comb;
    for (const RelTerm& t : rel) {
      int tt = -1;
      if (t.path.src != src || !word_valid(q, t.path.src, t.path.arrows, &tt) || tt != tgt)
        throw Error("relation terms must share source and target");
      if (t.path.arrows.empty()) throw Error("relations must lie in the arrow ideal");
      lin_add(comb, t.path.arrows, t.coeff);
    }
    if (comb.empty()) continue;
    auto lead = std::prev(comb.end());
    Rule r;
    r.lhs = lead->first;
    Fp ic = fp::inv(lead->second);
    for (auto it = comb.begin(); it != lead; ++it)
      r.rhs.emplace(it->first, fp::neg(fp::mul(it->second, ic)));
    rules.push_back(std::move(r));
  }

  // Reduce rule tails (and detect collapsing leads) against the other rules.
  for (int pass = 0; pass < 64; ++pass) {
    bool changed = false;
    for (std::size_t i = 0; i < rules.size(); ++i) {
      std::vector<Rule> others;
      for (std::size_t j = 0; j < rules.size(); ++j)
        if (j != i) others.push_back(rules[j]);
      Lin nrhs;
      for (auto& [w, c] : rules[i].rhs) {
        Lin red = reduce_word(others, w, c);
        for (auto& [rw, rc] : red) lin_add(nrhs, rw, rc);
      }
      if (nrhs != rules[i].rhs) {
        rules[i].rhs = std::move(nrhs);
        changed = true;
      }
    }
    if (!changed) break;
  }

  FinDimAlgebra alg;
  alg.pres = pres;

  // Enumerate irreducible words by length, per start vertex.
  struct Key {
    int src;
    Word w;
    bool operator<(const Key& o) const {
      if (src != o.src) return src < o.src;
      if (w.size() != o.w.size()) return w.size() < o.w.size();
      return w < o.w;
    }
  };
  std::vector<std::pair<Key, int>> frontier;  // (key, tgt)
  for (int v = 0; v < int(q.vertices.size()); ++v) frontier.push_back({{v, {}}, v});

  std::vector<PathWord> basis;
  std::vector<int> bsrc, btgt;
  auto emit = [&](const Key& k, int tgt) {
    basis.push_back(PathWord{k.src, k.w});
    bsrc.push_back(k.src);
    btgt.push_back(tgt);
  };
  for (auto& [k, t] : frontier) emit(k, t);

  for (int len = 1; len <= path_length_cap + 1; ++len) {
    std::vector<std::pair<Key, int>> next;
    for (auto& [k, t] : frontier) {
      for (int a = 0; a < int(q.arrows.size()); ++a) {
        if (q.arrows[std::size_t(a)].src != t) continue;
        Key nk{k.src, k.w};
        nk.w.push_back(a);
        std::size_t pos = 0, ri = 0;
        if (find_match(rules, nk.w, &pos, &ri)) continue;  // reducible
        next.push_back({nk, q.arrows[std::size_t(a)].tgt});
      }
    }
    std::sort(next.begin(), next.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    if (!next.empty() && len == path_length_cap + 1) {
      const auto& bad = next.front().first;
      throw Error("path length cap " + std::to_string(path_length_cap) +
                  " exceeded by irreducible path: " + word_string(q, bad.src, bad.w));
    }
    for (auto& [k, t] : next) emit(k, t);
    frontier = std::move(next);
    if (frontier.empty()) break;
  }

  // Sort the basis globally by (length, src, word) and build the index.
  std::vector<int> order(basis.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = int(i);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    const PathWord &a = basis[std::size_t(x)], &b = basis[std::size_t(y)];
    if (a.arrows.size() != b.arrows.size()) return a.arrows.size() < b.arrows.size();
    if (a.src != b.src) return a.src < b.src;
    return a.arrows < b.arrows;
  });
  alg.basis.resize(basis.size());
  alg.basis_src.resize(basis.size());
  alg.basis_tgt.resize(basis.size());
  std::map<std::pair<int, Word>, int> index;
  for (std::size_t i = 0; i < order.size(); ++i) {
    alg.basis[i] = basis[std::size_t(order[i])];
    alg.basis_src[i] = bsrc[std::size_t(order[i])];
    alg.basis_tgt[i] = btgt[std::size_t(order[i])];
    index[{alg.basis[i].src, alg.basis[i].arrows}] = int(i);
  }
  alg.idem.resize(q.vertices.size());
  for (int v = 0; v < int(q.vertices.size()); ++v) {
    auto it = index.find({v, {}});
    if (it == index.end()) throw Error("internal: missing idempotent path");
    alg.idem[std::size_t(v)] = it->second;
  }

  // Multiplication table: (path i) after (path j), i.e. word j ++ word i.
  int n = alg.dim();
  alg.mult_table.assign(std::size_t(n), std::vector<AlgElem>(std::size_t(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (alg.basis_tgt[std::size_t(j)] != alg.basis_src[std::size_t(i)]) continue;
      Word w = alg.basis[std::size_t(j)].arrows;
      w.insert(w.end(), alg.basis[std::size_t(i)].arrows.begin(),
               alg.basis[std::size_t(i)].arrows.end());
      Lin red = reduce_word(rules, w, 1);
      AlgElem e;
      for (auto& [rw, rc] : red) {
        auto it = index.find({alg.basis[std::size_t(j)].src, rw});
        if (it == index.end()) throw Error("internal: irreducible word missing from basis");
        e.emplace_back(it->second, rc);
      }
      std::sort(e.begin(), e.end());
      alg.mult_table[std::size_t(i)][std::size_t(j)] = std::move(e);
    }
  return alg;
}

int FinDimAlgebra::arrow_basis_index(int a) const {
  for (int i = 0; i < dim(); ++i)
    if (basis[std::size_t(i)].arrows.size() == 1 && basis[std::size_t(i)].arrows[0] == a)
      return i;
  throw Error("arrow killed by relations: " + pres.quiver.arrows[std::size_t(a)].label);
}

AlgElem FinDimAlgebra::mult(const AlgElem& x, const AlgElem& y) const {
  AlgElem acc;
  for (auto& [i, ci] : x)
    for (auto& [j, cj] : y)
      acc = elem_add(acc, elem_scale(mult_table[std::size_t(i)][std::size_t(j)], fp::mul(ci, cj)));
  return acc;
}

std::vector<int> FinDimAlgebra::radical_basis() const {
  std::vector<int> out;
  for (int i = 0; i < dim(); ++i)
    if (!basis[std::size_t(i)].arrows.empty()) out.push_back(i);
  return out;
}

AlgElem FinDimAlgebra::word_elem(int src, const std::vector<int>& word) const {
  AlgElem acc = idem_elem(src);
  for (int a : word) acc = mult(arrow_elem(a), acc);
  return acc;
}

QuiverPresentation enveloping_presentation(const QuiverPresentation& pres) {
  const Quiver& q = pres.quiver;
  int nv = int(q.vertices.size());
  QuiverPresentation out;
  auto pv = [&](int u, int v) { return u * nv + v; };
  for (int u = 0; u < nv; ++u)
    for (int v = 0; v < nv; ++v)
      out.quiver.vertices.push_back(q.vertices[std::size_t(u)] + "|" + q.vertices[std::size_t(v)]);

  // Left copies first, indexed a*nv+v; right copies follow, indexed b*nv+u.
  int na = int(q.arrows.size());
  for (int a = 0; a < na; ++a)
    for (int v = 0; v < nv; ++v) {
      const Arrow& ar = q.arrows[std::size_t(a)];
      out.quiver.arrows.push_back(
          Arrow{pv(ar.src, v), pv(ar.tgt, v), "L:" + ar.label + "|" + q.vertices[std::size_t(v)]});
    }
  for (int b = 0; b < na; ++b)
    for (int u = 0; u < nv; ++u) {
      const Arrow& ar = q.arrows[std::size_t(b)];
      out.quiver.arrows.push_back(
          Arrow{pv(u, ar.tgt), pv(u, ar.src), "R:" + q.vertices[std::size_t(u)] + "|" + ar.label});
    }
  auto larr = [&](int a, int v) { return a * nv + v; };
  auto rarr = [&](int b, int u) { return na * nv + b * nv + u; };

  // Lifted left relations at every right vertex.
  for (const Relation& rel : pres.relations)
    for (int v = 0; v < nv; ++v) {
      Relation nr;
      for (const RelTerm& t : rel) {
        RelTerm nt;
        nt.coeff = t.coeff;
        nt.path.src = pv(t.path.src, v);
        for (int a : t.path.arrows) nt.path.arrows.push_back(larr(a, v));
        nr.push_back(std::move(nt));
      }
      out.relations.push_back(std::move(nr));
    }
  // Lifted right relations (arrow order reversed) at every left vertex.
  for (const Relation& rel : pres.relations)
    for (int u = 0; u < nv; ++u) {
      Relation nr;
      for (const RelTerm& t : rel) {
        int tgt = t.path.src;
        for (int a : t.path.arrows) tgt = q.arrows[std::size_t(a)].tgt;
        RelTerm nt;
        nt.coeff = t.coeff;
        nt.path.src = pv(u, tgt);
        for (auto it = t.path.arrows.rbegin(); it != t.path.arrows.rend(); ++it)
          nt.path.arrows.push_back(rarr(*it, u));
        nr.push_back(std::move(nt));
      }
      out.relations.push_back(std::move(nr));
    }
  // Commutation of left and right copies.
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      const Arrow& aa = q.arrows[std::size_t(a)];
      const Arrow& ab = q.arrows[std::size_t(b)];
      Relation rel;
      RelTerm t1;  // left then right
      t1.coeff = 1;
      t1.path.src = pv(aa.src, ab.tgt);
      t1.path.arrows = {larr(a, ab.tgt), rarr(b, aa.tgt)};
      RelTerm t2;  // right then left
      t2.coeff = fp::neg(1);
      t2.path.src = pv(aa.src, ab.tgt);
      t2.path.arrows = {rarr(b, aa.src), larr(a, ab.src)};
      rel.push_back(std::move(t1));
      rel.push_back(std::move(t2));
      out.relations.push_back(std::move(rel));
    }
  return out;
}

IntMat cartan_matrix(const FinDimAlgebra& alg) {
  IntMat c(alg.nverts(), alg.nverts());
  for (int i = 0; i < alg.dim(); ++i)
    c.at(alg.basis_tgt[std::size_t(i)], alg.basis_src[std::size_t(i)]) += 1;
  return c;
}

QuiverPresentation builtin_presentation(const std::string& name) {
  QuiverPresentation p;
  auto linear = [&](int n, bool kill_paths) {
    for (int i = 1; i <= n; ++i) p.quiver.vertices.push_back(std::to_string(i));
    for (int i = 0; i + 1 < n; ++i)
      p.quiver.arrows.push_back(Arrow{i, i + 1, std::string(1, char('a' + i))});
    if (kill_paths)
      for (int i = 0; i + 2 < n; ++i) {
        Relation r;
        RelTerm t;
        t.coeff = 1;
        t.path.src = i;
        t.path.arrows = {i, i + 1};
        r.push_back(t);
        p.relations.push_back(r);
      }
  };
  if (name == "k") {
    p.quiver.vertices = {"1"};
  } else if (name == "kA2") {
    linear(2, false);
  } else if (name == "kA3") {
    linear(3, false);
  } else if (name == "kA4") {
    linear(4, false);
  } else if (name == "kA3zero") {
    linear(3, true);
  } else if (name == "kronecker") {
    p.quiver.vertices = {"1", "2"};
    p.quiver.arrows.push_back(Arrow{0, 1, "a"});
    p.quiver.arrows.push_back(Arrow{0, 1, "b"});
  } else if (name == "kxx") {
    p.quiver.vertices = {"1"};
    p.quiver.arrows.push_back(Arrow{0, 0, "x"});
    Relation r;
    RelTerm t;
    t.coeff = 1;
    t.path.src = 0;
    t.path.arrows = {0, 0};
    r.push_back(t);
    p.relations.push_back(r);
  } else {
    throw Error("unknown builtin algebra: " + name);
  }
  return p;
}

FinDimAlgebra builtin_algebra(const std::string& name, int path_length_cap) {
  return path_algebra(builtin_presentation(name), path_length_cap);
}

}  // namespace lf
