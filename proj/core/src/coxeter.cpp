#include "torhom/coxeter.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <set>

namespace torhom {

namespace {

int bond_from_cartan(long long aij, long long aji) {
  long long p = aij * aji;
  switch (p) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    case 4: return 0;  // infinite bond
    default: throw BuildError("cartan product out of range: " + std::to_string(p));
  }
}

void fill_coxeter_from_cartan(CoxeterDiagram& d) {
  d.coxeter.assign(d.n, std::vector<int>(d.n, 2));
  for (int i = 0; i < d.n; ++i) {
    d.coxeter[i][i] = 1;
    for (int j = i + 1; j < d.n; ++j) {
      int m = bond_from_cartan(d.cartan[i][j], d.cartan[j][i]);
      d.coxeter[i][j] = d.coxeter[j][i] = m;
    }
  }
}

// Finite Cartan matrix and root lengths, Bourbaki numbering.
void fill_finite_cartan(CoxeterDiagram& d) {
  const char fam = d.tag.family;
  const int m = d.tag.rank;
  d.cartan.assign(m, std::vector<long long>(m, 0));
  d.dvec.assign(m, 1);
  for (int i = 0; i < m; ++i) d.cartan[i][i] = 2;

  auto simple_bond = [&](int i, int j) { d.cartan[i][j] = d.cartan[j][i] = -1; };

  switch (fam) {
    case 'A':
      for (int i = 0; i + 1 < m; ++i) simple_bond(i, i + 1);
      break;
    case 'B':
      // alpha_m short: (alpha_{m-1}, alpha_m) = -2, d = (2,...,2,1)
      for (int i = 0; i + 1 < m; ++i) simple_bond(i, i + 1);
      d.cartan[m - 2][m - 1] = -1;
      d.cartan[m - 1][m - 2] = -2;
      for (int i = 0; i < m - 1; ++i) d.dvec[i] = 2;
      d.dvec[m - 1] = 1;
      break;
    case 'C':
      // alpha_m long
      for (int i = 0; i + 1 < m; ++i) simple_bond(i, i + 1);
      d.cartan[m - 2][m - 1] = -2;
      d.cartan[m - 1][m - 2] = -1;
      for (int i = 0; i < m - 1; ++i) d.dvec[i] = 1;
      d.dvec[m - 1] = 2;
      break;
    case 'D':
      for (int i = 0; i + 1 < m - 1; ++i) simple_bond(i, i + 1);
      simple_bond(m - 3, m - 1);
      break;
    case 'E':
      // chain 1-3-4-5-6(-7-8), node 2 hangs off node 4
      simple_bond(0, 2);
      for (int i = 2; i + 1 < m; ++i) simple_bond(i, i + 1);
      simple_bond(1, 3);
      break;
    case 'F':
      // alpha_1, alpha_2 long; alpha_3, alpha_4 short
      simple_bond(0, 1);
      simple_bond(2, 3);
      d.cartan[1][2] = -1;
      d.cartan[2][1] = -2;
      d.dvec = {2, 2, 1, 1};
      break;
    case 'G':
      // alpha_1 short, alpha_2 long
      d.cartan[0][1] = -3;
      d.cartan[1][0] = -1;
      d.dvec = {1, 3};
      break;
    default:
      throw UsageError("unsupported family");
  }
}

std::vector<long long> apply_reflection(const CoxeterDiagram& d, int i, const std::vector<long long>& v) {
  // s_i(v) = v - <v, alpha_i^vee> alpha_i with <alpha_j, alpha_i^vee> = cartan[i][j]
  long long pairing = 0;
  for (int j = 0; j < d.n; ++j) pairing += d.cartan[i][j] * v[j];
  auto out = v;
  out[i] -= pairing;
  return out;
}

}  // namespace

CoxeterDiagram CoxeterDiagram::finite_part() const {
  if (!affine()) return *this;
  return coxeter_diagram(TypeTag{tag.family, tag.rank, false});
}

int CoxeterDiagram::position_of_label(int label) const {
  for (int i = 0; i < n; ++i)
    if (labels[i] == label) return i;
  return -1;
}

RootSystem enumerate_roots(const CoxeterDiagram& finite) {
  assert(!finite.affine());
  RootSystem rs;
  std::set<std::vector<long long>> seen;
  std::vector<std::vector<long long>> frontier;
  for (int i = 0; i < finite.n; ++i) {
    std::vector<long long> e(finite.n, 0);
    e[i] = 1;
    seen.insert(e);
    frontier.push_back(e);
  }
  while (!frontier.empty()) {
    std::vector<std::vector<long long>> next;
    for (const auto& r : frontier) {
      for (int i = 0; i < finite.n; ++i) {
        auto r2 = apply_reflection(finite, i, r);
        if (seen.insert(r2).second) next.push_back(r2);
      }
    }
    frontier = std::move(next);
  }
  rs.roots.assign(seen.begin(), seen.end());

  long long best_height = 0;
  int best = -1, best_count = 0;
  for (int k = 0; k < static_cast<int>(rs.roots.size()); ++k) {
    const auto& r = rs.roots[k];
    if (std::any_of(r.begin(), r.end(), [](long long c) { return c < 0; })) continue;
    ++rs.positive_count;
    long long h = std::accumulate(r.begin(), r.end(), 0LL);
    if (best < 0 || h > best_height) {
      best_height = h;
      best = k;
      best_count = 1;
    } else if (h == best_height) {
      ++best_count;
    }
  }
  if (best < 0 || best_count != 1) throw BuildError("highest root not unique");
  rs.highest = rs.roots[best];
  return rs;
}

CoxeterDiagram coxeter_diagram(const TypeTag& tag) {
  if (!type_supported(tag)) throw UsageError("unsupported type tag: " + tag.str());
  const int m = tag.rank;

  CoxeterDiagram fin;
  fin.tag = TypeTag{tag.family, m, false};
  fin.n = m;
  fin.labels.resize(m);
  std::iota(fin.labels.begin(), fin.labels.end(), 1);
  fill_finite_cartan(fin);
  fill_coxeter_from_cartan(fin);
  if (!tag.affine) return fin;

  // Affine node: alpha_0 = -theta up to the null direction, so the pairings
  // against the finite simple roots are the negated theta pairings.
  RootSystem rs = enumerate_roots(fin);
  const auto& theta = rs.highest;
  auto inner = [&](int j) {  // (theta, alpha_j)
    long long acc = 0;
    for (int i = 0; i < m; ++i) acc += theta[i] * fin.dvec[i] * fin.cartan[i][j];
    return acc;
  };
  long long theta_sq = 0;  // (theta, theta)
  for (int j = 0; j < m; ++j) theta_sq += theta[j] * inner(j);

  CoxeterDiagram aff;
  aff.tag = tag;
  aff.n = m + 1;
  aff.labels.resize(m + 1);
  std::iota(aff.labels.begin(), aff.labels.end(), 0);
  aff.cartan.assign(m + 1, std::vector<long long>(m + 1, 0));
  aff.dvec.assign(m + 1, 1);
  aff.cartan[0][0] = 2;
  if (theta_sq % 2 != 0) throw BuildError("odd highest-root norm");
  aff.dvec[0] = theta_sq / 2;
  for (int j = 0; j < m; ++j) {
    long long tj = inner(j);
    if ((2 * tj) % theta_sq != 0 || (2 * tj) % (2 * fin.dvec[j]) != 0)
      throw BuildError("non-integral affine cartan entry");
    aff.cartan[0][j + 1] = -(2 * tj) / theta_sq;
    aff.cartan[j + 1][0] = -tj / fin.dvec[j];
    aff.dvec[j + 1] = fin.dvec[j];
    for (int k = 0; k < m; ++k) aff.cartan[j + 1][k + 1] = fin.cartan[j][k];
  }
  fill_coxeter_from_cartan(aff);
  return aff;
}

bool diagram_invariants_hold(const CoxeterDiagram& d, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (static_cast<int>(d.labels.size()) != d.n) return fail("label count mismatch");
  for (int i = 0; i < d.n; ++i) {
    if (d.coxeter[i][i] != 1) return fail("diagonal bond != 1");
    if (d.cartan[i][i] != 2) return fail("cartan diagonal != 2");
    if (d.dvec[i] <= 0) return fail("nonpositive root norm");
    for (int j = 0; j < d.n; ++j) {
      if (d.coxeter[i][j] != d.coxeter[j][i]) return fail("bond matrix not symmetric");
      if (i != j) {
        int b = d.coxeter[i][j];
        if (b != 0 && (b < 2 || (b != 2 && b != 3 && b != 4 && b != 6)))
          return fail("bond out of range");
        if (b == 0 && !(d.tag.affine && d.tag.family == 'A' && d.tag.rank == 1))
          return fail("infinite bond outside A~1");
        if (d.cartan[i][j] > 0) return fail("positive off-diagonal cartan entry");
        if (d.dvec[i] * d.cartan[i][j] != d.dvec[j] * d.cartan[j][i])
          return fail("cartan/norm symmetry broken");
      }
    }
  }
  // ordering is fixed and total: labels strictly increase with position
  for (int i = 0; i + 1 < d.n; ++i)
    if (d.labels[i] >= d.labels[i + 1]) return fail("labels not increasing");
  if (d.affine() && d.labels[0] != 0) return fail("affine diagram must start at s_0");
  return true;
}

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw BuildError("subgroup order overflow");
  return r;
}

std::uint64_t factorial_u64(int n) {
  std::uint64_t r = 1;
  for (int i = 2; i <= n; ++i) r = checked_mul(r, static_cast<std::uint64_t>(i));
  return r;
}

// Order of one connected component, classified by shape.
std::uint64_t component_order(const CoxeterDiagram& d, const std::vector<int>& nodes) {
  const int k = static_cast<int>(nodes.size());
  if (k == 1) return 2;

  std::map<int, std::vector<int>> adj;
  int count4 = 0, count6 = 0;
  for (int a : nodes)
    for (int b : nodes) {
      if (a >= b) continue;
      int m = d.coxeter[a][b];
      if (m == 0) throw BuildError("subdiagram has an infinite bond");
      if (m >= 3) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        if (m == 4) ++count4;
        if (m == 6) ++count6;
      }
    }

  int deg3 = -1;
  for (int a : nodes) {
    auto it = adj.find(a);
    int deg = it == adj.end() ? 0 : static_cast<int>(it->second.size());
    if (deg > 3) throw BuildError("subdiagram not of finite type (degree > 3)");
    if (deg == 3) {
      if (deg3 >= 0) throw BuildError("subdiagram not of finite type (two branch nodes)");
      deg3 = a;
    }
  }

  if (count6 > 0) {
    if (k == 2 && count6 == 1) return 12;  // G2
    throw BuildError("subdiagram not of finite type (bad 6-bond)");
  }

  if (count4 > 0) {
    if (count4 > 1 || deg3 >= 0) throw BuildError("subdiagram not of finite type (bad 4-bond)");
    // walk the path and locate the 4-bond
    int start = -1;
    for (int a : nodes)
      if (static_cast<int>(adj[a].size()) == 1) {
        start = a;
        break;
      }
    if (start < 0) throw BuildError("subdiagram not of finite type (cycle)");
    std::vector<int> path{start};
    int prev = -1, cur = start;
    while (static_cast<int>(path.size()) < k) {
      int nxt = -1;
      for (int b : adj[cur])
        if (b != prev) nxt = b;
      if (nxt < 0) throw BuildError("subdiagram not connected as expected");
      path.push_back(nxt);
      prev = cur;
      cur = nxt;
    }
    int p4 = -1;
    for (int i = 0; i + 1 < k; ++i)
      if (d.coxeter[path[i]][path[i + 1]] == 4) p4 = i;
    if (p4 == 0 || p4 == k - 2) return checked_mul(std::uint64_t{1} << k, factorial_u64(k));  // B/C
    if (k == 4 && p4 == 1) return 1152;                                                       // F4
    throw BuildError("subdiagram not of finite type (interior 4-bond)");
  }

  // simply laced
  if (deg3 < 0) {
    // must be a path (a cycle would have all degrees 2 and no endpoint)
    int endpoints = 0;
    for (int a : nodes)
      if (static_cast<int>(adj[a].size()) == 1) ++endpoints;
    if (endpoints != 2) throw BuildError("subdiagram not of finite type (cycle)");
    return factorial_u64(k + 1);  // A_k
  }
  // three arms off the branch node
  std::vector<int> arms;
  for (int b : adj[deg3]) {
    int len = 1, prev = deg3, cur = b;
    for (;;) {
      int nxt = -1;
      for (int c : adj[cur])
        if (c != prev) nxt = c;
      if (nxt < 0) break;
      prev = cur;
      cur = nxt;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return checked_mul(std::uint64_t{1} << (k - 1), factorial_u64(k));  // D_k
  if (arms == std::vector<int>{1, 2, 2}) return 51840;                                                  // E6
  if (arms == std::vector<int>{1, 2, 3}) return 2903040;                                                // E7
  if (arms == std::vector<int>{1, 2, 4}) return 696729600;                                              // E8
  throw BuildError("subdiagram not of finite type (bad branch arms)");
}

}  // namespace

std::uint64_t subdiagram_order(const CoxeterDiagram& d, std::uint32_t mask) {
  std::vector<int> nodes;
  for (int i = 0; i < d.n; ++i)
    if (mask & (1u << i)) nodes.push_back(i);
  if (nodes.empty()) return 1;

  // split into connected components
  std::vector<int> comp(d.n, -1);
  int ncomp = 0;
  for (int v : nodes) {
    if (comp[v] >= 0) continue;
    std::vector<int> stack{v};
    comp[v] = ncomp;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : nodes) {
        if (comp[y] >= 0) continue;
        int m = d.coxeter[x][y];
        if (m == 0) throw BuildError("subdiagram has an infinite bond");
        if (m >= 3) {
          comp[y] = ncomp;
          stack.push_back(y);
        }
      }
    }
    ++ncomp;
  }
  std::uint64_t order = 1;
  for (int c = 0; c < ncomp; ++c) {
    std::vector<int> cn;
    for (int v : nodes)
      if (comp[v] == c) cn.push_back(v);
    order = checked_mul(order, component_order(d, cn));
  }
  return order;
}

}  // namespace torhom
