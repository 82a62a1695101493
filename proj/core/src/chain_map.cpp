#include "torhom/chain_map.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>

#include "torhom/snf.hpp"

namespace torhom {

namespace {

const SparseMat kEmpty{};

// Number of `added` labels at or below each generator of `universe`; -1 when
// that count is not uniform. Appending a label set below the source universe
// shifts every mu-count by its size, which costs a degree-parity sign.
int uniform_below_count(const CoxeterDiagram& d, std::uint32_t added, std::uint32_t universe) {
  int below = -1;
  for (int p = 0; p < d.n; ++p) {
    if (!(universe & (1u << p))) continue;
    int cnt = 0;
    for (int q = 0; q < d.n; ++q)
      if ((added & (1u << q)) && d.labels[q] <= d.labels[p]) ++cnt;
    if (below < 0) below = cnt;
    if (cnt != below) return -1;
  }
  return below < 0 ? 0 : below;
}

}  // namespace

const SparseMat& ChainMap::mat(int source_degree) const {
  if (source_degree < 0 || source_degree >= static_cast<int>(mats.size())) return kEmpty;
  return mats[source_degree];
}

IMatrix ChainMap::dense(int source_degree) const {
  const int rows = target->dim(source_degree + shift);
  const int cols = source->dim(source_degree);
  if (source_degree < 0 || source_degree >= static_cast<int>(mats.size())) return IMatrix(rows, cols);
  IMatrix m = IMatrix::from_sparse(mats[source_degree]);
  assert(m.rows() == rows && m.cols() == cols);
  return m;
}

bool ChainMap::is_chain_map(std::string* why) const {
  for (int d = 0; d <= source->top_degree(); ++d) {
    // target boundary at degree d+shift applied after f_d, versus
    // f_{d-1} applied after the source boundary at degree d
    const int td = d + shift;
    IMatrix lhs;
    if (td >= 1 && td <= target->top_degree()) {
      lhs = IMatrix::from_sparse(target->boundary[td]) * dense(d);
    } else {
      lhs = IMatrix(target->dim(td - 1), source->dim(d));
    }
    IMatrix rhs;
    if (d >= 1) {
      rhs = dense(d - 1) * IMatrix::from_sparse(source->boundary[d]);
    } else {
      rhs = IMatrix(target->dim(td - 1), source->dim(d));
    }
    if (!(lhs == rhs)) {
      if (why) {
        for (int i = 0; i < lhs.rows(); ++i)
          for (int j = 0; j < lhs.cols(); ++j)
            if (lhs.at(i, j) != rhs.at(i, j)) {
              *why = name + ": boundary commutation fails at source degree " + std::to_string(d) + ", entry (" +
                     std::to_string(i) + "," + std::to_string(j) + "): " + lhs.at(i, j).get_str() + " vs " +
                     rhs.at(i, j).get_str();
              return false;
            }
      }
      return false;
    }
  }
  return true;
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  if (g.source.get() != f.target.get()) throw UsageError("compose: maps not composable");
  ChainMap h;
  h.source = f.source;
  h.target = g.target;
  h.shift = f.shift + g.shift;
  h.name = g.name + "o" + f.name;
  h.mats.resize(f.source->top_degree() + 1);
  for (int d = 0; d <= f.source->top_degree(); ++d) {
    IMatrix m = g.dense(d + f.shift) * f.dense(d);
    SparseMat s;
    s.rows = m.rows();
    s.cols = m.cols();
    for (int i = 0; i < m.rows(); ++i)
      for (int j = 0; j < m.cols(); ++j)
        if (m.at(i, j) != 0) {
          if (!m.at(i, j).fits_slong_p()) throw BuildError("composition entry too large for sparse storage");
          s.push(i, j, m.at(i, j).get_si());
        }
    h.mats[d] = std::move(s);
  }
  return h;
}

ChainMap identity_map(std::shared_ptr<const ChainComplex> c) {
  ChainMap m;
  m.source = c;
  m.target = c;
  m.name = "id(" + c->name + ")";
  m.mats.resize(c->top_degree() + 1);
  for (int d = 0; d <= c->top_degree(); ++d) {
    m.mats[d].rows = m.mats[d].cols = c->dim(d);
    for (int i = 0; i < c->dim(d); ++i) m.mats[d].push(i, i, 1);
  }
  return m;
}

ChainMap quotient_map(std::shared_ptr<const ChainComplex> from, std::shared_ptr<const ChainComplex> to) {
  ChainMap m;
  m.source = from;
  m.target = to;
  m.name = "j(" + from->name + "->" + to->name + ")";
  m.mats.resize(from->top_degree() + 1);
  for (int d = 0; d <= from->top_degree(); ++d) {
    m.mats[d].rows = to->dim(d);
    m.mats[d].cols = from->dim(d);
    for (int i = 0; i < from->dim(d); ++i) {
      const Cell& c = from->cells[d][i];
      int t = to->find(d, c.copy, c.element, c.gamma);
      if (t >= 0) m.mats[d].push(t, i, 1);
    }
  }
  return m;
}

ChainMap key_inclusion(std::shared_ptr<const ChainComplex> sub, std::shared_ptr<const ChainComplex> super) {
  ChainMap m;
  m.source = sub;
  m.target = super;
  m.name = "i(" + sub->name + "->" + super->name + ")";
  m.mats.resize(sub->top_degree() + 1);
  for (int d = 0; d <= sub->top_degree(); ++d) {
    m.mats[d].rows = super->dim(d);
    m.mats[d].cols = sub->dim(d);
    for (int i = 0; i < sub->dim(d); ++i) {
      const Cell& c = sub->cells[d][i];
      int t = super->find(d, c.copy, c.element, c.gamma);
      if (t < 0) throw BuildError("key_inclusion: cell of " + sub->name + " missing in " + super->name);
      m.mats[d].push(t, i, 1);
    }
  }
  return m;
}

SubcomplexPair kernel_subcomplex(std::shared_ptr<const ChainComplex> from, std::uint32_t extra) {
  auto sub = std::make_shared<ChainComplex>();
  sub->name = "ker(" + from->name + "->+req)";
  sub->construction = from->construction;
  sub->type_tag = from->type_tag;
  sub->ctx = from->ctx;
  sub->universe_labels = from->universe_labels;
  sub->gen_mask = from->gen_mask;
  sub->required = from->required;
  sub->proper_only = from->proper_only;
  sub->copies = from->copies;
  sub->mu = from->mu;

  std::vector<std::vector<int>> keep(from->cells.size());
  sub->cells.resize(from->cells.size());
  for (int k = 0; k <= from->top_degree(); ++k) {
    keep[k].assign(from->dim(k), -1);
    for (int i = 0; i < from->dim(k); ++i) {
      if ((from->cells[k][i].gamma & extra) != extra) {
        keep[k][i] = static_cast<int>(sub->cells[k].size());
        sub->cells[k].push_back(from->cells[k][i]);
      }
    }
  }
  while (!sub->cells.empty() && sub->cells.back().empty()) sub->cells.pop_back();
  sub->rebuild_lookup();
  sub->boundary.resize(sub->cells.size());
  if (!sub->cells.empty()) sub->boundary[0] = SparseMat{0, sub->dim(0), {}};
  for (int k = 1; k <= sub->top_degree(); ++k) {
    sub->boundary[k].rows = sub->dim(k - 1);
    sub->boundary[k].cols = sub->dim(k);
    for (const Triplet& t : from->boundary[k].entries) {
      int nc = keep[k][t.col];
      if (nc < 0) continue;
      int nr = keep[k - 1][t.row];
      if (nr < 0) throw BuildError("kernel cells do not span a subcomplex of " + from->name);
      sub->boundary[k].push(nr, nc, t.val);
    }
  }
  std::string why;
  if (!boundary_squares_to_zero(*sub, &why)) throw BuildError("kernel subcomplex broken: " + why);

  SubcomplexPair out;
  out.inclusion = key_inclusion(sub, from);
  out.sub = std::move(sub);
  return out;
}

InclusionResult build_inclusion_map(std::shared_ptr<const ChainComplex> target_stage, int peeled_pos,
                                    const ComplexBuildOptions& opt) {
  const auto& ctx = target_stage->ctx;
  if (!ctx) throw UsageError("inclusion map needs a complex with group context");
  const std::uint32_t peeled = 1u << peeled_pos;
  if (target_stage->required & peeled) throw UsageError("peeled generator already required");
  const std::uint32_t amask = target_stage->gen_mask & ~target_stage->required & ~peeled;

  InclusionResult res;
  res.base = std::make_shared<ChainComplex>(build_subgroup_complex(ctx, amask, 0, opt));
  const SubgroupTable& t = ctx->table(amask);
  res.cosets = coset_decomposition(*ctx->group, t);
  res.source = std::make_shared<ChainComplex>(direct_sum(*res.base, res.cosets.copies()));

  ChainMap m;
  m.source = res.source;
  m.target = target_stage;
  m.shift = std::popcount(target_stage->required);
  m.name = "i[" + std::to_string(res.cosets.copies()) + "x" + res.base->name + "->" + target_stage->name + "]";
  m.mats.resize(res.source->top_degree() + 1);
  const WeylGroup& w = *ctx->group;
  const int below = uniform_below_count(ctx->diagram, target_stage->required, amask);
  const bool twist = below > 0 && below % 2 == 1;
  for (int d = 0; d <= res.source->top_degree(); ++d) {
    const int td = d + m.shift;
    const long long sign = (twist && d % 2 == 1) ? -1 : 1;
    m.mats[d].rows = target_stage->dim(td);
    m.mats[d].cols = res.source->dim(d);
    for (int i = 0; i < res.source->dim(d); ++i) {
      const Cell& c = res.source->cells[d][i];
      int elem = w.mult(res.cosets.reps[c.copy], c.element);
      int tpos = target_stage->find(td, 0, elem, c.gamma | target_stage->required);
      if (tpos < 0) throw BuildError("inclusion image cell missing in " + target_stage->name);
      m.mats[d].push(tpos, i, sign);
    }
  }
  res.map = std::move(m);
  return res;
}

CosetDecomposition nested_frame(const GroupContext& ctx, std::uint32_t outer_mask, std::uint32_t inner_mask) {
  if ((inner_mask & outer_mask) != inner_mask) throw UsageError("nested_frame: inner not inside outer");
  const SubgroupTable& outer = ctx.table(outer_mask);
  const SubgroupTable& inner = ctx.table(inner_mask);
  const WeylGroup& w = *ctx.group;
  CosetDecomposition outer_cosets = coset_decomposition(w, outer);
  CosetDecomposition inner_cosets = coset_decomposition_of(w, outer.members, inner);

  CosetDecomposition flat;
  const int n2 = inner_cosets.copies();
  for (int j1 = 0; j1 < outer_cosets.copies(); ++j1)
    for (int j2 = 0; j2 < n2; ++j2) flat.reps.push_back(w.mult(outer_cosets.reps[j1], inner_cosets.reps[j2]));
  for (std::size_t e = 0; e < w.size(); ++e) {
    auto [j1, mpos_outer] = outer_cosets.factor_of(static_cast<int>(e));
    auto [j2, mpos_inner] = inner_cosets.factor_of(outer.members[mpos_outer]);
    flat.factor.emplace(static_cast<int>(e), std::make_pair(j1 * n2 + j2, mpos_inner));
  }
  return flat;
}

namespace {

ChainMap delta_into(std::shared_ptr<const ChainComplex> stage, std::uint32_t strip,
                    std::shared_ptr<const ChainComplex> target, const CosetDecomposition& frame,
                    int peeled_pos) {
  const auto& ctx = stage->ctx;
  if (!ctx) throw UsageError("delta map needs a complex with group context");
  if ((strip & stage->required) != strip) throw UsageError("strip set must be part of the stage's required set");
  if (strip == 0) throw UsageError("delta map needs a nonempty strip set");
  const CoxeterDiagram& d = ctx->diagram;
  const WeylGroup& w = *ctx->group;
  const int sstar = peeled_pos >= 0 ? peeled_pos : std::countr_zero(strip);
  if (!(strip & (1u << sstar))) throw UsageError("peeled generator not in the strip set");

  // mu-count offset of the stage against the target
  const std::uint32_t amask = stage->gen_mask & ~strip;
  const int below = uniform_below_count(d, strip, amask);
  if (below < 0) throw BuildError("strip set interleaves the remaining generators");
  const bool twist = below > 0 && (below % 2 == 1);

  ChainMap m;
  m.source = stage;
  m.target = target;
  m.shift = -std::popcount(strip);
  m.name = "Delta(" + stage->name + ")";
  m.mats.resize(stage->top_degree() + 1);
  for (int sd = 0; sd <= stage->top_degree(); ++sd) {
    const int td = sd + m.shift;
    m.mats[sd].rows = target->dim(td);
    m.mats[sd].cols = stage->dim(sd);
    if (stage->dim(sd) == 0) continue;

    std::map<std::uint32_t, std::vector<std::pair<int, int>>> reps_cache;
    for (int i = 0; i < stage->dim(sd); ++i) {
      const Cell& c = stage->cells[sd][i];
      auto it = reps_cache.find(c.gamma);
      if (it == reps_cache.end()) {
        const SubgroupTable& t = ctx->table(c.gamma);
        std::vector<int> ascents;
        for (std::size_t gi = 0; gi < t.gen_labels.size(); ++gi)
          if (t.gen_labels[gi] != d.labels[sstar]) ascents.push_back(static_cast<int>(gi));
        std::vector<int> reps = min_coset_representatives(t, ascents);
        std::vector<std::pair<int, int>> rl;
        for (int r : reps) rl.emplace_back(r, t.glen_of_parent(r));
        it = reps_cache.emplace(c.gamma, std::move(rl)).first;
      }
      const std::uint32_t tgamma = c.gamma & ~strip;
      const int degree_sign = (twist && (sd % 2 == 1)) ? -1 : 1;
      for (const auto& [beta, blen] : it->second) {
        int v = w.mult(c.element, beta);
        auto [copy, mpos] = frame.factor_of(v);
        const SubgroupTable& tt = ctx->table(target->gen_mask);
        int u = tt.members[mpos];
        int tpos = target->find(td, copy, u, tgamma);
        if (tpos < 0) throw BuildError("delta image cell missing in " + target->name);
        m.mats[sd].push(tpos, i, ((blen % 2 == 0) ? 1 : -1) * degree_sign);
      }
    }
  }
  return m;
}

}  // namespace

DeltaResult build_delta_map(std::shared_ptr<const ChainComplex> stage, std::uint32_t strip, int peeled_pos,
                            const ComplexBuildOptions& opt) {
  const auto& ctx = stage->ctx;
  if (!ctx) throw UsageError("delta map needs a complex with group context");
  DeltaResult res;
  const std::uint32_t amask = stage->gen_mask & ~strip;
  res.base = std::make_shared<ChainComplex>(
      build_subgroup_complex(ctx, amask, stage->required & ~strip, opt));
  res.frame = coset_decomposition(*ctx->group, ctx->table(amask));
  res.target = std::make_shared<ChainComplex>(direct_sum(*res.base, res.frame.copies()));
  res.map = delta_into(stage, strip, res.target, res.frame, peeled_pos);
  return res;
}

ChainMap build_delta_map_into(std::shared_ptr<const ChainComplex> stage, std::uint32_t strip,
                              std::shared_ptr<const ChainComplex> target, const CosetDecomposition& frame,
                              int peeled_pos) {
  return delta_into(stage, strip, target, frame, peeled_pos);
}

ChainMap nested_inclusion(std::shared_ptr<const ChainComplex> src_sum,
                          std::shared_ptr<const ChainComplex> tgt_sum, const GroupContext& ctx,
                          std::uint32_t outer_mask, std::uint32_t inner_mask) {
  const WeylGroup& w = *ctx.group;
  const SubgroupTable& outer = ctx.table(outer_mask);
  CosetDecomposition inner_cosets = coset_decomposition_of(w, outer.members, ctx.table(inner_mask));
  const int n2 = inner_cosets.copies();
  if (src_sum->copies != tgt_sum->copies * n2)
    throw UsageError("nested_inclusion: copy counts do not match");

  ChainMap m;
  m.source = src_sum;
  m.target = tgt_sum;
  m.shift = std::popcount(tgt_sum->required);
  m.name = "i[nested " + src_sum->name + "->" + tgt_sum->name + "]";
  m.mats.resize(src_sum->top_degree() + 1);
  const int below = uniform_below_count(ctx.diagram, tgt_sum->required, src_sum->gen_mask);
  const bool twist = below > 0 && below % 2 == 1;
  for (int d = 0; d <= src_sum->top_degree(); ++d) {
    const int td = d + m.shift;
    const long long sign = (twist && d % 2 == 1) ? -1 : 1;
    m.mats[d].rows = tgt_sum->dim(td);
    m.mats[d].cols = src_sum->dim(d);
    for (int i = 0; i < src_sum->dim(d); ++i) {
      const Cell& c = src_sum->cells[d][i];
      const int j1 = c.copy / n2;
      const int j2 = c.copy % n2;
      int elem = w.mult(inner_cosets.reps[j2], c.element);
      int tpos = tgt_sum->find(td, j1, elem, c.gamma | tgt_sum->required);
      if (tpos < 0) throw BuildError("nested inclusion image cell missing in " + tgt_sum->name);
      m.mats[d].push(tpos, i, sign);
    }
  }
  return m;
}

bool ShortExactReport::ok() const {
  if (!i_chain_map || !j_chain_map) return false;
  for (const auto& n : nodes)
    if (!(n.i_injective && n.j_surjective && n.composite_zero && n.ranks_exact && n.image_saturated)) return false;
  return true;
}

std::string ShortExactReport::first_failure() const {
  if (!i_chain_map) return "i is not a chain map";
  if (!j_chain_map) return "j is not a chain map";
  for (const auto& n : nodes) {
    if (!n.i_injective) return "i not injective in degree " + std::to_string(n.degree);
    if (!n.j_surjective) return "j not surjective in degree " + std::to_string(n.degree);
    if (!n.composite_zero) return "j o i nonzero in degree " + std::to_string(n.degree);
    if (!n.ranks_exact) return "rank gap at degree " + std::to_string(n.degree);
    if (!n.image_saturated) return "image of i not saturated in degree " + std::to_string(n.degree);
  }
  return "";
}

ShortExactReport verify_short_exact(const ChainMap& i, const ChainMap& j) {
  if (i.target.get() != j.source.get()) throw UsageError("verify_short_exact: i.target != j.source");
  ShortExactReport rep;
  rep.i_chain_map = i.is_chain_map();
  rep.j_chain_map = j.is_chain_map();
  const ChainComplex& mid = *i.target;
  for (int d = 0; d <= mid.top_degree(); ++d) {
    ShortExactReport::Node n;
    n.degree = d;
    const int sd = d - i.shift;  // source degree of i landing here
    IMatrix im = i.dense(sd);
    IMatrix jm = j.dense(d);
    auto snf_i = smith_normal_form(im);
    auto snf_j = smith_normal_form(jm);
    n.i_injective = snf_i.rank() == im.cols();
    n.j_surjective = snf_j.rank() == jm.rows();
    n.composite_zero = (jm * im).is_zero();
    n.ranks_exact = snf_i.rank() + snf_j.rank() == mid.dim(d);
    n.image_saturated = true;
    for (const auto& f : snf_i.diag)
      if (f != 1) n.image_saturated = false;
    rep.nodes.push_back(n);
  }
  return rep;
}

bool verify_square_commutes(const ChainMap& top, const ChainMap& left, const ChainMap& right,
                            const ChainMap& bottom, std::string* why) {
  if (top.source.get() != left.source.get() || top.target.get() != right.source.get() ||
      left.target.get() != bottom.source.get() || right.target.get() != bottom.target.get())
    throw UsageError("verify_square_commutes: corners do not match");
  if (top.shift + right.shift != left.shift + bottom.shift)
    throw UsageError("verify_square_commutes: shifts do not balance");
  for (int d = 0; d <= top.source->top_degree(); ++d) {
    IMatrix a = right.dense(d + top.shift) * top.dense(d);
    IMatrix b = bottom.dense(d + left.shift) * left.dense(d);
    if (!(a == b)) {
      if (why)
        *why = "square fails at source degree " + std::to_string(d) + " (" + top.name + "," + right.name + " vs " +
               left.name + "," + bottom.name + ")";
      return false;
    }
  }
  return true;
}

}  // namespace torhom
