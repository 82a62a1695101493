#include "torhom/homology.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace torhom {

std::string HomologyGroup::str() const {
  std::ostringstream os;
  if (betti == 0 && torsion.empty()) {
    os << "0";
  } else {
    if (betti == 1) os << "Z";
    if (betti > 1) os << "Z^" << betti;
    for (std::size_t i = 0; i < torsion.size(); ++i) os << (betti || i ? " + " : "") << "Z/" << torsion[i].get_str();
  }
  return os.str();
}

ComplexHomology::ComplexHomology(std::shared_ptr<const ChainComplex> c) : c_(std::move(c)) {
  const int top = c_->top_degree();
  deg_.resize(top + 1);
  for (int k = 0; k <= top; ++k) {
    DegreeData& dd = deg_[k];
    dd.n = c_->dim(k);

    IMatrix out = (k >= 1) ? IMatrix::from_sparse(c_->boundary[k]) : IMatrix(0, dd.n);
    dd.snf_out = smith_normal_form(out);
    const int r = dd.snf_out.rank();
    dd.kernel_dim = dd.n - r;

    IMatrix inc = (k + 1 <= top) ? IMatrix::from_sparse(c_->boundary[k + 1]) : IMatrix(dd.n, 0);
    // incoming boundary in kernel coordinates: the lower rows of Vinv * inc
    IMatrix vinc = dd.snf_out.Vinv * inc;
    IMatrix b = vinc.row_slice(r, dd.n);
    dd.snf_in_kernel = smith_normal_form(b);

    // class basis: kernel columns of V composed with the inverse row
    // transform of the inner decomposition
    IMatrix kernel_basis(dd.n, dd.kernel_dim);
    for (int j = 0; j < dd.kernel_dim; ++j)
      for (int i = 0; i < dd.n; ++i) kernel_basis.at(i, j) = dd.snf_out.V.at(i, r + j);
    dd.class_basis = kernel_basis * dd.snf_in_kernel.Uinv;

    const int rb = dd.snf_in_kernel.rank();
    for (int j = 0; j < dd.kernel_dim; ++j) {
      if (j < rb) {
        if (dd.snf_in_kernel.diag[j] != 1) {
          dd.torsion_cols.push_back(j);
          dd.torsion_orders.push_back(dd.snf_in_kernel.diag[j]);
        }
      } else {
        dd.free_cols.push_back(j);
      }
    }
  }
}

HomologyGroup ComplexHomology::group(int k) const {
  HomologyGroup g;
  g.degree = k;
  if (k < 0 || k > c_->top_degree()) return g;
  g.betti = static_cast<int>(deg_[k].free_cols.size());
  g.torsion = deg_[k].torsion_orders;
  return g;
}

std::vector<HomologyGroup> ComplexHomology::table() const {
  std::vector<HomologyGroup> out;
  for (int k = 0; k <= c_->top_degree(); ++k) out.push_back(group(k));
  return out;
}

IMatrix ComplexHomology::free_representatives(int k) const {
  if (k < 0 || k > c_->top_degree()) return IMatrix(0, 0);
  return deg_[k].class_basis.columns(deg_[k].free_cols);
}

std::pair<IMatrix, std::vector<mpz_class>> ComplexHomology::torsion_representatives(int k) const {
  if (k < 0 || k > c_->top_degree()) return {IMatrix(0, 0), {}};
  return {deg_[k].class_basis.columns(deg_[k].torsion_cols), deg_[k].torsion_orders};
}

bool ComplexHomology::is_cycle(int k, const IMatrix& col) const {
  if (k < 0 || k > c_->top_degree()) return col.rows() == 0;
  if (k == 0) return true;
  return (IMatrix::from_sparse(c_->boundary[k]) * col).is_zero();
}

ComplexHomology::ReducedClass ComplexHomology::reduce(int k, const IMatrix& z) const {
  if (k < 0 || k > c_->top_degree()) {
    if (z.rows() != 0) throw UsageError("reduce: degree out of range");
    return {};
  }
  const DegreeData& dd = deg_[k];
  assert(z.rows() == dd.n && z.cols() == 1);
  IMatrix y = dd.snf_out.Vinv * z;
  const int r = dd.snf_out.rank();
  for (int i = 0; i < r; ++i)
    if (y.at(i, 0) != 0) throw UsageError("reduce: input vector is not a cycle");

  // coordinates in the kernel basis, then through the inner row transform
  IMatrix yk(dd.kernel_dim, 1);
  for (int i = 0; i < dd.kernel_dim; ++i) yk.at(i, 0) = y.at(r + i, 0);
  IMatrix cvec = dd.snf_in_kernel.U * yk;

  ReducedClass rc;
  rc.is_boundary = true;
  const int rb = dd.snf_in_kernel.rank();
  for (int j = 0; j < dd.kernel_dim; ++j) {
    if (j < rb) {
      const mpz_class& d = dd.snf_in_kernel.diag[j];
      mpz_class rem;
      mpz_mod(rem.get_mpz_t(), cvec.at(j, 0).get_mpz_t(), d.get_mpz_t());
      if (d != 1) rc.torsion_coords.push_back(rem);
      if (rem != 0) rc.is_boundary = false;
    } else {
      rc.free_coords.push_back(cvec.at(j, 0));
      if (cvec.at(j, 0) != 0) rc.is_boundary = false;
    }
  }
  return rc;
}

InducedMap induced_map_on_homology(const ChainMap& f, const ComplexHomology& hsrc, const ComplexHomology& htgt,
                                   int k) {
  if (hsrc.complex_ptr().get() != f.source.get() || htgt.complex_ptr().get() != f.target.get())
    throw UsageError("induced_map_on_homology: homology data does not match the map");
  InducedMap out;
  out.source_degree = k;
  out.target_degree = k + f.shift;

  const HomologyGroup gs = hsrc.group(k);
  const HomologyGroup gt = htgt.group(out.target_degree);
  out.free = IMatrix(gt.betti, gs.betti);
  out.torsion = IMatrix(static_cast<int>(gt.torsion.size()), static_cast<int>(gs.torsion.size()));

  IMatrix fm = f.dense(k);
  IMatrix src_free = hsrc.free_representatives(k);
  for (int j = 0; j < gs.betti; ++j) {
    IMatrix img = fm * src_free.column(j);
    if (!htgt.is_cycle(out.target_degree, img))
      throw BuildError("image of a cycle is not a cycle under " + f.name);
    auto rc = htgt.reduce(out.target_degree, img);
    for (int i = 0; i < gt.betti; ++i) out.free.at(i, j) = rc.free_coords[i];
  }
  auto [src_tors, orders] = hsrc.torsion_representatives(k);
  for (int j = 0; j < src_tors.cols(); ++j) {
    IMatrix img = fm * src_tors.column(j);
    auto rc = htgt.reduce(out.target_degree, img);
    for (int i = 0; i < static_cast<int>(gt.torsion.size()); ++i) out.torsion.at(i, j) = rc.torsion_coords[i];
  }
  return out;
}

IMatrix connecting_homomorphism(const ChainMap& i, const ChainMap& j, const ComplexHomology& ha,
                                const ComplexHomology& hb, const ComplexHomology& hc, int k) {
  if (i.target.get() != j.source.get()) throw UsageError("connecting_homomorphism: not a composable pair");
  if (ha.complex_ptr().get() != i.source.get() || hb.complex_ptr().get() != i.target.get() ||
      hc.complex_ptr().get() != j.target.get())
    throw UsageError("connecting_homomorphism: homology data mismatch");
  if (j.shift != 0) throw UsageError("connecting_homomorphism: quotient map must have shift 0");

  const int adeg = k - 1 - i.shift;
  const HomologyGroup gc = hc.group(k);
  const HomologyGroup ga = ha.group(adeg);
  IMatrix out(ga.betti, gc.betti);
  if (gc.betti == 0) return out;

  const ChainComplex& b = *i.target;
  IMatrix jden = j.dense(k);
  auto snf_j = smith_normal_form(jden);
  IMatrix iden = i.dense(k - 1 - i.shift);
  auto snf_i = smith_normal_form(iden);
  IMatrix bd = (k >= 1 && k <= b.top_degree()) ? IMatrix::from_sparse(b.boundary[k]) : IMatrix(b.dim(k - 1), b.dim(k));

  IMatrix reps = hc.free_representatives(k);
  for (int col = 0; col < gc.betti; ++col) {
    auto lift = solve_integer(snf_j, reps.column(col));
    if (!lift) throw BuildError("connecting homomorphism: quotient cycle does not lift");
    IMatrix bvec(b.dim(k), 1);
    for (int r = 0; r < b.dim(k); ++r) bvec.at(r, 0) = (*lift)[r];
    IMatrix dbv = bd * bvec;
    auto pull = solve_integer(snf_i, dbv);
    if (!pull) throw BuildError("connecting homomorphism: boundary of lift is not in the image of i");
    IMatrix avec(i.source->dim(adeg), 1);
    for (int r = 0; r < avec.rows(); ++r) avec.at(r, 0) = (*pull)[r];
    auto rc = ha.reduce(adeg, avec);
    for (int r = 0; r < ga.betti; ++r) out.at(r, col) = rc.free_coords[r];

    // lift independence: shift the lift by an element of the image of i
    if (i.source->dim(k - i.shift) > 0) {
      IMatrix shift_chain(i.source->dim(k - i.shift), 1);
      for (int r = 0; r < shift_chain.rows(); ++r) shift_chain.at(r, 0) = (r % 3 == 0) ? 1 : (r % 3 == 1 ? -1 : 2);
      IMatrix bvec2 = bvec + i.dense(k - i.shift) * shift_chain;
      IMatrix dbv2 = bd * bvec2;
      auto pull2 = solve_integer(snf_i, dbv2);
      if (!pull2) throw BuildError("connecting homomorphism: shifted lift fails to pull back");
      IMatrix avec2(i.source->dim(adeg), 1);
      for (int r = 0; r < avec2.rows(); ++r) avec2.at(r, 0) = (*pull2)[r];
      auto rc2 = ha.reduce(adeg, avec2);
      for (int r = 0; r < ga.betti; ++r)
        if (rc2.free_coords[r] != rc.free_coords[r])
          throw BuildError("connecting homomorphism depends on the lift choice");
    }
  }
  return out;
}

bool LongExactReport::ok() const {
  for (const auto& n : nodes)
    if (!(n.composite_zero && n.ranks_exact && n.saturated)) return false;
  return true;
}

std::string LongExactReport::first_failure() const {
  for (const auto& n : nodes) {
    if (!n.composite_zero) return "composite nonzero at " + n.where;
    if (!n.ranks_exact) return "rank gap at " + n.where;
    if (!n.saturated) return "image not saturated at " + n.where;
  }
  return "";
}

namespace {

// exactness of  in: X -> N,  out: N -> Y  at N. Ranks give exactness over
// the rationals; saturation of the incoming image upgrades it to integer
// exactness, which is only claimed when the surrounding groups are free.
LongExactReport::Node check_node(const std::string& where, const IMatrix& in, const IMatrix& out, int betti,
                                 bool torsion_free_context) {
  LongExactReport::Node n;
  n.where = where;
  n.betti = betti;
  auto snf_in = smith_normal_form(in);
  auto snf_out = smith_normal_form(out);
  n.rank_in = snf_in.rank();
  n.rank_out = snf_out.rank();
  n.composite_zero = (out * in).is_zero();
  n.ranks_exact = n.rank_in + n.rank_out == betti;
  n.saturation_checked = torsion_free_context;
  n.saturated = true;
  if (torsion_free_context) {
    for (const auto& d : snf_in.diag)
      if (d != 1) n.saturated = false;
  }
  return n;
}

}  // namespace

LongExactReport verify_long_exact(const ChainMap& i, const ChainMap& j, const ComplexHomology& ha,
                                  const ComplexHomology& hb, const ComplexHomology& hc) {
  LongExactReport rep;
  const int s = i.shift;
  const int btop = hb.complex().top_degree();
  const int ctop = hc.complex().top_degree();
  const int atop = ha.complex().top_degree();

  // induced maps per degree of the middle complex
  auto istar = [&](int d) {  // H_{d-s}(A) -> H_d(B)
    return induced_map_on_homology(i, ha, hb, d - s).free;
  };
  auto jstar = [&](int d) {  // H_d(B) -> H_d(C)
    return induced_map_on_homology(j, hb, hc, d).free;
  };
  auto conn = [&](int d) {  // H_d(C) -> H_{d-1-s}(A)
    return connecting_homomorphism(i, j, ha, hb, hc, d);
  };

  bool all_free = true;
  for (int d = 0; d <= atop; ++d) all_free = all_free && ha.group(d).torsion_free();
  for (int d = 0; d <= btop; ++d) all_free = all_free && hb.group(d).torsion_free();
  for (int d = 0; d <= ctop; ++d) all_free = all_free && hc.group(d).torsion_free();

  const int dmax = std::max({btop, ctop, atop + s}) + 1;
  for (int d = dmax; d >= 0; --d) {
    // node H_d(B): in = i_*, out = j_*
    if (hb.group(d).betti || d <= btop)
      rep.nodes.push_back(check_node("H_" + std::to_string(d) + "(" + hb.complex().name + ")", istar(d), jstar(d),
                                     hb.group(d).betti, all_free));
    // node H_d(C): in = j_*, out = connecting
    if (hc.group(d).betti || d <= ctop)
      rep.nodes.push_back(check_node("H_" + std::to_string(d) + "(" + hc.complex().name + ")", jstar(d), conn(d),
                                     hc.group(d).betti, all_free));
    // node H_{d-1-s}(A): in = connecting from degree d, out = i_* into degree d-1
    const int ad = d - 1 - s;
    if (ad >= 0 && ad <= atop)
      rep.nodes.push_back(check_node("H_" + std::to_string(ad) + "(" + ha.complex().name + ")", conn(d),
                                     istar(d - 1), ha.group(ad).betti, all_free));
  }
  return rep;
}

}  // namespace torhom
