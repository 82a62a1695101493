#include "torhom/weyl.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace torhom {

namespace {

ElementMatrix identity_matrix(int rank) {
  ElementMatrix m(static_cast<std::size_t>(rank) * rank, 0);
  for (int i = 0; i < rank; ++i) m[static_cast<std::size_t>(i) * rank + i] = 1;
  return m;
}

ElementMatrix mat_mult(const ElementMatrix& a, const ElementMatrix& b, int rank) {
  ElementMatrix c(static_cast<std::size_t>(rank) * rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int k = 0; k < rank; ++k) {
      long long aik = a[static_cast<std::size_t>(i) * rank + k];
      if (aik == 0) continue;
      for (int j = 0; j < rank; ++j) c[static_cast<std::size_t>(i) * rank + j] += aik * b[static_cast<std::size_t>(k) * rank + j];
    }
  return c;
}

ElementMatrix simple_reflection_matrix(const CoxeterDiagram& finite, int pos) {
  const int n = finite.n;
  ElementMatrix m = identity_matrix(n);
  for (int c = 0; c < n; ++c) m[static_cast<std::size_t>(pos) * n + c] -= finite.cartan[pos][c];
  return m;
}

}  // namespace

int WeylGroup::mult(int a, int b) const {
  return index_of(mat_mult(elements[a], elements[b], rank));
}

int WeylGroup::index_of(const ElementMatrix& m) const {
  auto it = index_.find(m);
  if (it == index_.end()) throw BuildError("element not in group (broken closure)");
  return it->second;
}

std::shared_ptr<const WeylGroup> enumerate_weyl_group(const CoxeterDiagram& finite, std::uint64_t order_bound) {
  if (finite.affine()) throw UsageError("enumerate_weyl_group needs a finite diagram");
  const std::uint64_t expected = weyl_order(finite.tag);
  if (expected > order_bound)
    throw UsageError("group order " + std::to_string(expected) + " exceeds bound " + std::to_string(order_bound));

  auto wg = std::make_shared<WeylGroup>();
  WeylGroup& w = *wg;
  w.diagram = finite;
  w.rank = finite.n;
  const int n = finite.n;

  std::vector<ElementMatrix> gens(n);
  for (int i = 0; i < n; ++i) gens[i] = simple_reflection_matrix(finite, i);

  // breadth-first closure; depth = Coxeter length
  w.elements.push_back(identity_matrix(n));
  w.index_[w.elements[0]] = 0;
  w.length.push_back(0);
  std::vector<int> frontier{0};
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int idx : frontier) {
      for (int g = 0; g < n; ++g) {
        ElementMatrix m = mat_mult(w.elements[idx], gens[g], n);
        auto [it, inserted] = w.index_.try_emplace(m, static_cast<int>(w.elements.size()));
        if (inserted) {
          w.elements.push_back(std::move(m));
          w.length.push_back(w.length[idx] + 1);
          next.push_back(it->second);
          if (w.elements.size() > expected) throw BuildError("closure exceeds abstract order");
        }
      }
    }
    frontier = std::move(next);
  }
  if (w.elements.size() != expected) throw BuildError("enumerated order mismatch");

  const std::size_t sz = w.elements.size();
  auto fill_tables = [&]() {
    w.rmult_.assign(sz * n, -1);
    w.lmult_.assign(sz * n, -1);
    for (std::size_t e = 0; e < sz; ++e)
      for (int g = 0; g < n; ++g) {
        w.rmult_[e * n + g] = w.index_of(mat_mult(w.elements[e], gens[g], n));
        w.lmult_[e * n + g] = w.index_of(mat_mult(gens[g], w.elements[e], n));
      }
  };
  fill_tables();

  // lex-least reduced word: repeatedly take the smallest left descent
  auto compute_words = [&]() {
    w.words.assign(sz, {});
    std::vector<std::size_t> by_len(sz);
    std::iota(by_len.begin(), by_len.end(), 0);
    std::stable_sort(by_len.begin(), by_len.end(), [&](auto a, auto b) { return w.length[a] < w.length[b]; });
    for (std::size_t e : by_len) {
      if (w.length[e] == 0) continue;
      for (int g = 0; g < n; ++g) {
        int pred = w.lmult_[e * n + g];
        if (w.length[pred] < w.length[e]) {
          w.words[e].reserve(w.words[pred].size() + 1);
          w.words[e].push_back(g);
          w.words[e].insert(w.words[e].end(), w.words[pred].begin(), w.words[pred].end());
          break;
        }
      }
    }
  };
  compute_words();

  // canonical order: (length, lex-least word)
  std::vector<int> order(sz);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (w.length[a] != w.length[b]) return w.length[a] < w.length[b];
    return w.words[a] < w.words[b];
  });
  std::vector<int> newpos(sz);
  for (std::size_t i = 0; i < sz; ++i) newpos[order[i]] = static_cast<int>(i);

  WeylGroup out;
  out.diagram = w.diagram;
  out.rank = w.rank;
  out.elements.resize(sz);
  out.length.resize(sz);
  out.words.resize(sz);
  out.rmult_.assign(sz * n, -1);
  out.lmult_.assign(sz * n, -1);
  for (std::size_t i = 0; i < sz; ++i) {
    int src = order[i];
    out.elements[i] = w.elements[src];
    out.length[i] = w.length[src];
    out.words[i] = w.words[src];
    out.index_[out.elements[i]] = static_cast<int>(i);
  }
  for (std::size_t i = 0; i < sz; ++i) {
    int src = order[i];
    for (int g = 0; g < n; ++g) {
      out.rmult_[i * n + g] = newpos[w.rmult_[static_cast<std::size_t>(src) * n + g]];
      out.lmult_[i * n + g] = newpos[w.lmult_[static_cast<std::size_t>(src) * n + g]];
    }
  }
  out.gen_index_.resize(n);
  for (int g = 0; g < n; ++g) out.gen_index_[g] = out.rmult_[static_cast<std::size_t>(0) * n + g];

  // inverse by reversed reduced word
  out.inverse.assign(sz, 0);
  for (std::size_t e = 0; e < sz; ++e) {
    int idx = 0;
    const auto& word = out.words[e];
    for (auto it = word.rbegin(); it != word.rend(); ++it) idx = out.rmult_[static_cast<std::size_t>(idx) * n + *it];
    out.inverse[e] = idx;
  }

  // sanity: l(ws) = l(w) +- 1, longest element length = #positive roots
  int maxlen = 0;
  for (std::size_t e = 0; e < sz; ++e) {
    maxlen = std::max(maxlen, out.length[e]);
    for (int g = 0; g < n; ++g) {
      int d = out.length[out.rmult_[e * n + g]] - out.length[e];
      if (d != 1 && d != -1) throw BuildError("length function broken");
    }
  }
  if (maxlen != positive_root_count(finite.tag)) throw BuildError("longest element length mismatch");

  *wg = std::move(out);
  return wg;
}

ElementMatrix reflection_in_root(const CoxeterDiagram& finite, const std::vector<long long>& root) {
  const int n = finite.n;
  // (root, alpha_j) and (root, root) from the symmetrized Cartan data
  std::vector<long long> pair_j(n, 0);
  for (int j = 0; j < n; ++j) {
    long long acc = 0;
    for (int i = 0; i < n; ++i) acc += root[i] * finite.dvec[i] * finite.cartan[i][j];
    pair_j[j] = acc;
  }
  long long norm = 0;
  for (int j = 0; j < n; ++j) norm += root[j] * pair_j[j];
  ElementMatrix m = identity_matrix(n);
  // s_root(alpha_j) = alpha_j - (2(alpha_j,root)/(root,root)) root
  for (int j = 0; j < n; ++j) {
    long long num = 2 * pair_j[j];
    if (num % norm != 0) throw BuildError("non-integral reflection coefficient");
    long long c = num / norm;
    for (int r = 0; r < n; ++r) m[static_cast<std::size_t>(r) * n + j] -= c * root[r];
  }
  return m;
}

int project_affine_generator(const CoxeterDiagram& affine, int gen_label, const WeylGroup& w) {
  if (!affine.affine()) throw UsageError("project_affine_generator needs an affine diagram");
  if (gen_label < 0 || gen_label > affine.finite_rank()) throw UsageError("generator label out of range");
  if (gen_label >= 1) return w.generator(gen_label - 1);
  RootSystem rs = enumerate_roots(w.diagram);
  return w.index_of(reflection_in_root(w.diagram, rs.highest));
}

int SubgroupTable::pos_of(int parent_idx) const {
  auto it = member_pos.find(parent_idx);
  if (it == member_pos.end()) throw BuildError("element not in subgroup");
  return it->second;
}

SubgroupTable reflection_subgroup(const WeylGroup& w, const std::vector<int>& gen_labels,
                                  const std::vector<int>& images, std::uint64_t expected_order) {
  assert(gen_labels.size() == images.size());
  SubgroupTable t;
  t.parent = &w;
  t.gen_labels = gen_labels;
  t.images = images;
  t.abstract_order = expected_order;

  for (int img : images) {
    if (img == w.identity() || w.mult(img, img) != w.identity())
      throw UsageError("subgroup image is not an involution");
  }

  const int ng = static_cast<int>(images.size());
  std::unordered_map<int, int> dist;
  std::vector<int> frontier{w.identity()};
  dist[w.identity()] = 0;
  while (!frontier.empty()) {
    std::vector<int> next;
    for (int u : frontier) {
      for (int g = 0; g < ng; ++g) {
        int v = w.mult(u, images[g]);
        if (dist.emplace(v, dist[u] + 1).second) {
          next.push_back(v);
          if (dist.size() > expected_order) throw BuildError("subgroup closure exceeds abstract order");
        }
      }
    }
    frontier = std::move(next);
  }
  if (dist.size() != expected_order) throw BuildError("subgroup order mismatch (projection not injective)");

  t.members.reserve(dist.size());
  for (const auto& [idx, len] : dist) t.members.push_back(idx);
  std::sort(t.members.begin(), t.members.end(), [&](int a, int b) {
    if (dist[a] != dist[b]) return dist[a] < dist[b];
    return a < b;
  });
  t.glen.resize(t.members.size());
  for (std::size_t i = 0; i < t.members.size(); ++i) {
    t.glen[i] = dist[t.members[i]];
    t.member_pos[t.members[i]] = static_cast<int>(i);
  }
  t.rmul_.assign(t.members.size() * ng, -1);
  for (std::size_t i = 0; i < t.members.size(); ++i)
    for (int g = 0; g < ng; ++g) t.rmul_[i * ng + g] = t.pos_of(w.mult(t.members[i], images[g]));
  return t;
}

std::vector<int> min_coset_representatives(const SubgroupTable& t, const std::vector<int>& ascent_gens) {
  std::vector<int> out;
  for (int i = 0; i < t.size(); ++i) {
    bool ok = true;
    for (int g : ascent_gens) {
      if (t.glen[t.right_mult_pos(i, g)] <= t.glen[i]) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(t.members[i]);
  }
  return out;
}

std::pair<int, int> CosetDecomposition::factor_of(int element) const {
  auto it = factor.find(element);
  if (it == factor.end()) throw BuildError("element outside coset decomposition carrier");
  return it->second;
}

CosetDecomposition coset_decomposition_of(const WeylGroup& w, const std::vector<int>& carrier,
                                          const SubgroupTable& sub) {
  CosetDecomposition d;
  d.factor.reserve(carrier.size());
  for (int e : carrier) {
    if (d.factor.count(e)) continue;
    int rep_pos = static_cast<int>(d.reps.size());
    d.reps.push_back(e);
    for (int mpos = 0; mpos < sub.size(); ++mpos) {
      int v = w.mult(e, sub.members[mpos]);
      auto [it, inserted] = d.factor.emplace(v, std::make_pair(rep_pos, mpos));
      if (!inserted) throw BuildError("coset decomposition collision");
    }
  }
  if (d.factor.size() != carrier.size()) throw BuildError("carrier not closed under the subgroup");
  return d;
}

CosetDecomposition coset_decomposition(const WeylGroup& w, const SubgroupTable& sub) {
  std::vector<int> all(w.size());
  std::iota(all.begin(), all.end(), 0);
  return coset_decomposition_of(w, all, sub);
}

}  // namespace torhom
