#include "torhom/complex.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <numeric>
#include <sstream>

namespace torhom {

const char* mu_convention_name(MuConvention mu) {
  return mu == MuConvention::Index ? "index" : "position";
}

MuConvention parse_mu_convention(const std::string& name) {
  if (name == "index") return MuConvention::Index;
  if (name == "position") return MuConvention::Position;
  throw UsageError("unknown mu convention: '" + name + "' (expected index|position)");
}

std::uint32_t GroupContext::mask_of_labels(const std::vector<int>& labels) const {
  std::uint32_t m = 0;
  for (int l : labels) {
    int p = diagram.position_of_label(l);
    if (p < 0) throw UsageError("generator s" + std::to_string(l) + " not in diagram " + diagram.tag.str());
    m |= 1u << p;
  }
  return m;
}

std::vector<int> GroupContext::labels_of_mask(std::uint32_t mask) const {
  std::vector<int> out;
  for (int p = 0; p < diagram.n; ++p)
    if (mask & (1u << p)) out.push_back(diagram.labels[p]);
  return out;
}

const SubgroupTable& GroupContext::table(std::uint32_t mask) const {
  auto it = cache_.find(mask);
  if (it != cache_.end()) return *it->second;
  std::vector<int> labels, imgs;
  for (int p = 0; p < diagram.n; ++p) {
    if (mask & (1u << p)) {
      labels.push_back(diagram.labels[p]);
      imgs.push_back(images[p]);
    }
  }
  std::uint64_t expected = subdiagram_order(diagram, mask);
  auto t = std::make_unique<SubgroupTable>(reflection_subgroup(*group, labels, imgs, expected));
  return *cache_.emplace(mask, std::move(t)).first->second;
}

std::shared_ptr<const GroupContext> make_group_context(const TypeTag& tag, std::uint64_t order_bound) {
  auto ctx = std::make_shared<GroupContext>();
  ctx->diagram = coxeter_diagram(tag);
  std::string why;
  if (!diagram_invariants_hold(ctx->diagram, &why)) throw BuildError("diagram invariants: " + why);
  ctx->group = enumerate_weyl_group(ctx->diagram.finite_part(), order_bound);
  ctx->images.resize(ctx->diagram.n);
  if (tag.affine) {
    for (int p = 0; p < ctx->diagram.n; ++p)
      ctx->images[p] = project_affine_generator(ctx->diagram, ctx->diagram.labels[p], *ctx->group);
  } else {
    for (int p = 0; p < ctx->diagram.n; ++p) ctx->images[p] = ctx->group->generator(p);
  }
  return ctx;
}

namespace {

std::uint64_t cell_key(int copy, int element, std::uint32_t gamma) {
  assert(element >= 0 && element < (1 << 24) && copy >= 0 && copy < (1 << 20) && gamma < (1u << 16));
  return (static_cast<std::uint64_t>(copy) << 40) | (static_cast<std::uint64_t>(element) << 16) | gamma;
}

// #{s_i in Gamma : label(i) <= label(j)}, the literal label-count reading.
int mu_index(const CoxeterDiagram& d, std::uint32_t gamma, int sigma_pos) {
  int count = 0;
  for (int p = 0; p < d.n; ++p)
    if ((gamma & (1u << p)) && d.labels[p] <= d.labels[sigma_pos]) ++count;
  return count;
}

// 1-based ordinal position of sigma within Gamma listed in diagram order.
int mu_position(std::uint32_t gamma, int sigma_pos) {
  int ord = 0;
  for (int p = 0; p <= sigma_pos; ++p)
    if (gamma & (1u << p)) ++ord;
  return ord;
}

int mu_value(const CoxeterDiagram& d, MuConvention mu, std::uint32_t gamma, int sigma_pos) {
  return mu == MuConvention::Index ? mu_index(d, gamma, sigma_pos) : mu_position(gamma, sigma_pos);
}

}  // namespace

int ChainComplex::dim(int k) const {
  if (k < 0 || k > top_degree()) return 0;
  return static_cast<int>(cells[k].size());
}

long long ChainComplex::total_cells() const {
  long long n = 0;
  for (const auto& deg : cells) n += static_cast<long long>(deg.size());
  return n;
}

long long ChainComplex::euler_characteristic() const {
  long long e = 0;
  for (int k = 0; k <= top_degree(); ++k) e += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(cells[k].size());
  return e;
}

void ChainComplex::rebuild_lookup() {
  lookup_.assign(cells.size(), {});
  for (std::size_t k = 0; k < cells.size(); ++k) {
    lookup_[k].reserve(cells[k].size() * 2);
    for (std::size_t i = 0; i < cells[k].size(); ++i) {
      const Cell& c = cells[k][i];
      auto [it, inserted] = lookup_[k].emplace(cell_key(c.copy, c.element, c.gamma), static_cast<int>(i));
      if (!inserted) throw BuildError("duplicate cell in complex " + name);
    }
  }
}

int ChainComplex::find(int degree, int copy, int element, std::uint32_t gamma) const {
  if (degree < 0 || degree >= static_cast<int>(lookup_.size())) return -1;
  auto it = lookup_[degree].find(cell_key(copy, element, gamma));
  return it == lookup_[degree].end() ? -1 : it->second;
}

bool boundary_squares_to_zero(const ChainComplex& c, std::string* why) {
  for (int k = 2; k <= c.top_degree(); ++k) {
    IMatrix a = IMatrix::from_sparse(c.boundary[k - 1]);
    IMatrix b = IMatrix::from_sparse(c.boundary[k]);
    IMatrix p = a * b;
    if (!p.is_zero()) {
      if (why) {
        for (int i = 0; i < p.rows(); ++i)
          for (int j = 0; j < p.cols(); ++j)
            if (p.at(i, j) != 0) {
              *why = "boundary[" + std::to_string(k - 1) + "]*boundary[" + std::to_string(k) + "] has entry " +
                     p.at(i, j).get_str() + " at (" + std::to_string(i) + "," + std::to_string(j) + ")";
              return false;
            }
      }
      return false;
    }
  }
  return true;
}

ChainComplex build_cell_complex(std::shared_ptr<const GroupContext> ctx, std::vector<int> carrier,
                                std::uint32_t gen_mask, std::uint32_t required, bool proper_only,
                                const ComplexBuildOptions& opt, std::string name) {
  const CoxeterDiagram& d = ctx->diagram;
  const std::uint32_t full = ctx->full_mask();
  if ((required & gen_mask) != required) throw UsageError("required set not contained in the generator set");

  ChainComplex c;
  c.name = std::move(name);
  c.type_tag = d.tag.str();
  c.ctx = ctx;
  c.universe_labels = d.labels;
  c.gen_mask = gen_mask;
  c.required = required;
  c.proper_only = proper_only;
  c.mu = opt.mu;

  // admissible generator subsets, grouped by cardinality, ascending bitmask
  std::vector<std::vector<std::uint32_t>> gammas;
  for (std::uint32_t g = 0;; ++g) {
    if ((g & gen_mask) == g && (g & required) == required && !(proper_only && g == full)) {
      int k = std::popcount(g);
      if (k >= static_cast<int>(gammas.size())) gammas.resize(k + 1);
      gammas[k].push_back(g);
    }
    if (g == gen_mask) break;
  }

  std::size_t cell_count = 0;
  for (const auto& degree : gammas) cell_count += degree.size() * carrier.size();
  if (cell_count > opt.max_cells)
    throw UsageError("complex would have " + std::to_string(cell_count) + " cells (cap " +
                     std::to_string(opt.max_cells) + ")");

  c.cells.resize(gammas.size());
  for (std::size_t k = 0; k < gammas.size(); ++k) {
    c.cells[k].reserve(gammas[k].size() * carrier.size());
    for (int w : carrier)
      for (std::uint32_t g : gammas[k]) c.cells[k].push_back(Cell{w, g, 0});
    std::sort(c.cells[k].begin(), c.cells[k].end(), [](const Cell& a, const Cell& b) {
      if (a.element != b.element) return a.element < b.element;
      return a.gamma < b.gamma;
    });
  }
  c.rebuild_lookup();

  const WeylGroup& w = *ctx->group;
  c.boundary.resize(c.cells.size());
  if (!c.cells.empty()) c.boundary[0] = SparseMat{0, c.dim(0), {}};
  for (int k = 1; k <= c.top_degree(); ++k) {
    SparseMat& bd = c.boundary[k];
    bd.rows = c.dim(k - 1);
    bd.cols = c.dim(k);

    // per-Gamma data: minimal coset representatives for every removable sigma
    struct SigmaReps {
      int sigma_pos;
      int mu;
      std::vector<std::pair<int, int>> reps;  // (parent element, gamma-length)
    };
    std::map<std::uint32_t, std::vector<SigmaReps>> per_gamma;
    for (std::uint32_t g : gammas[k]) {
      const SubgroupTable& t = ctx->table(g);
      std::vector<SigmaReps> list;
      for (int p = 0; p < d.n; ++p) {
        if (!(g & (1u << p))) continue;
        if (required & (1u << p)) continue;  // dropped by the filtration
        std::uint32_t g2 = g & ~(1u << p);
        std::vector<int> ascents;
        for (std::size_t gi = 0; gi < t.gen_labels.size(); ++gi)
          if (t.gen_labels[gi] != d.labels[p]) ascents.push_back(static_cast<int>(gi));
        std::vector<int> reps = min_coset_representatives(t, ascents);
        std::uint64_t expect = t.abstract_order / subdiagram_order(d, g2);
        if (reps.size() != expect)
          throw BuildError("coset representative count mismatch for Gamma in " + c.name);
        SigmaReps sr;
        sr.sigma_pos = p;
        sr.mu = mu_value(d, opt.mu, g, p);
        for (int r : reps) sr.reps.emplace_back(r, t.glen_of_parent(r));
        list.push_back(std::move(sr));
      }
      per_gamma.emplace(g, std::move(list));
    }

    for (int col = 0; col < c.dim(k); ++col) {
      const Cell& cell = c.cells[k][col];
      for (const SigmaReps& sr : per_gamma.at(cell.gamma)) {
        std::uint32_t g2 = cell.gamma & ~(1u << sr.sigma_pos);
        for (const auto& [beta, blen] : sr.reps) {
          int v = w.mult(cell.element, beta);
          int row = c.find(k - 1, cell.copy, v, g2);
          if (row < 0) throw BuildError("boundary target cell missing in " + c.name);
          long long sign = ((blen + sr.mu) % 2 == 0) ? 1 : -1;
          bd.push(row, col, sign);
        }
      }
    }

    // unit coefficients, no collisions
    std::vector<Triplet> sorted = bd.entries;
    std::sort(sorted.begin(), sorted.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.col, a.row) < std::tie(b.col, b.row);
    });
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i].val != 1 && sorted[i].val != -1) throw BuildError("non-unit boundary coefficient");
      if (i > 0 && sorted[i].col == sorted[i - 1].col && sorted[i].row == sorted[i - 1].row)
        throw BuildError("colliding boundary terms in " + c.name);
    }
  }

  if (opt.verify_boundary) {
    std::string why;
    if (!boundary_squares_to_zero(c, &why))
      throw BuildError("boundary does not square to zero in " + c.name + " (mu convention " +
                       mu_convention_name(opt.mu) + "): " + why);
  }
  return c;
}

ChainComplex build_salvetti_complex(std::shared_ptr<const GroupContext> ctx, const ComplexBuildOptions& opt) {
  if (ctx->diagram.affine()) throw UsageError("salvetti complex needs a finite context");
  std::vector<int> carrier(ctx->group->size());
  std::iota(carrier.begin(), carrier.end(), 0);
  ChainComplex c = build_cell_complex(ctx, std::move(carrier), ctx->full_mask(), 0, false, opt,
                                      "C(" + ctx->diagram.tag.str() + ")");
  c.construction = "salvetti";
  return c;
}

ChainComplex build_toric_complex(std::shared_ptr<const GroupContext> ctx, const ComplexBuildOptions& opt) {
  if (!ctx->diagram.affine()) throw UsageError("toric complex needs an affine context");
  std::vector<int> carrier(ctx->group->size());
  std::iota(carrier.begin(), carrier.end(), 0);
  ChainComplex c = build_cell_complex(ctx, std::move(carrier), ctx->full_mask(), 0, true, opt,
                                      "T(" + ctx->diagram.tag.str() + ")");
  c.construction = "toric";
  return c;
}

ChainComplex build_subgroup_complex(std::shared_ptr<const GroupContext> ctx, std::uint32_t gen_mask,
                                    std::uint32_t required, const ComplexBuildOptions& opt) {
  const SubgroupTable& t = ctx->table(gen_mask);
  std::ostringstream nm;
  nm << "C(W[";
  for (std::size_t i = 0; i < t.gen_labels.size(); ++i) nm << (i ? "," : "") << "s" << t.gen_labels[i];
  nm << "])";
  if (required) nm << "|req";
  return build_cell_complex(ctx, t.members, gen_mask, required, false, opt, nm.str());
}

ChainComplex filtration_quotient(const ChainComplex& c, const FiltrationSpec& spec,
                                 const ComplexBuildOptions& opt) {
  ChainComplex q;
  q.name = c.name + "/req{";
  if (c.ctx) {
    auto labels = c.ctx->labels_of_mask(spec.required);
    for (std::size_t i = 0; i < labels.size(); ++i) q.name += (i ? ",s" : "s") + std::to_string(labels[i]);
  }
  q.name += "}";
  q.construction = "filtration";
  q.type_tag = c.type_tag;
  q.ctx = c.ctx;
  q.universe_labels = c.universe_labels;
  q.gen_mask = c.gen_mask;
  q.required = c.required | spec.required;
  q.proper_only = c.proper_only;
  q.copies = c.copies;
  q.mu = c.mu;

  q.cells.resize(c.cells.size());
  std::vector<std::vector<int>> keep(c.cells.size());
  for (int k = 0; k <= c.top_degree(); ++k) {
    keep[k].assign(c.dim(k), -1);
    for (int i = 0; i < c.dim(k); ++i) {
      if ((c.cells[k][i].gamma & spec.required) == spec.required) {
        keep[k][i] = static_cast<int>(q.cells[k].size());
        q.cells[k].push_back(c.cells[k][i]);
      }
    }
  }
  // trim empty top degrees
  while (!q.cells.empty() && q.cells.back().empty()) q.cells.pop_back();
  q.rebuild_lookup();

  q.boundary.resize(q.cells.size());
  if (!q.cells.empty()) q.boundary[0] = SparseMat{0, q.dim(0), {}};
  for (int k = 1; k <= q.top_degree(); ++k) {
    q.boundary[k].rows = q.dim(k - 1);
    q.boundary[k].cols = q.dim(k);
    for (const Triplet& t : c.boundary[k].entries) {
      int nr = keep[k - 1][t.row];
      int nc = keep[k][t.col];
      if (nr >= 0 && nc >= 0) q.boundary[k].push(nr, nc, t.val);
    }
  }

  if (opt.verify_boundary) {
    std::string why;
    if (!boundary_squares_to_zero(q, &why))
      throw BuildError("induced boundary does not square to zero in " + q.name + ": " + why);
  }
  return q;
}

ChainComplex direct_sum(const ChainComplex& c, int copies) {
  if (copies < 0) throw UsageError("negative copy count");
  ChainComplex s;
  s.name = std::to_string(copies) + "x" + c.name;
  s.construction = c.construction;
  s.type_tag = c.type_tag;
  s.ctx = c.ctx;
  s.universe_labels = c.universe_labels;
  s.gen_mask = c.gen_mask;
  s.required = c.required;
  s.proper_only = c.proper_only;
  s.copies = copies;
  s.mu = c.mu;
  s.cells.resize(c.cells.size());
  s.boundary.resize(c.boundary.size());
  for (int k = 0; k <= c.top_degree(); ++k) {
    s.cells[k].reserve(static_cast<std::size_t>(c.dim(k)) * copies);
    for (int j = 0; j < copies; ++j)
      for (const Cell& cell : c.cells[k]) s.cells[k].push_back(Cell{cell.element, cell.gamma, j});
    s.boundary[k].rows = c.boundary[k].rows * copies;
    s.boundary[k].cols = c.boundary[k].cols * copies;
    for (int j = 0; j < copies; ++j)
      for (const Triplet& t : c.boundary[k].entries)
        s.boundary[k].push(t.row + j * c.boundary[k].rows, t.col + j * c.boundary[k].cols, t.val);
  }
  s.rebuild_lookup();
  return s;
}

}  // namespace torhom
