#pragma once

#include <cstdint>
#include <vector>

#include "torhom/types.hpp"

namespace torhom {

/// Coxeter diagram of a finite or affine Weyl type, with the crystallographic
/// data needed to realize the group by integer matrices.
///
/// Generators are stored in a fixed total order: positions 0..n-1 carry
/// labels 1..m for finite types and 0..m for affine types (the affine node
/// s_0 comes first). This ordering is what the sign rule
/// mu(Gamma, s_j) = #{s_i in Gamma : i <= j} refers to.
///
/// cartan[i][j] = 2(alpha_i, alpha_j)/(alpha_i, alpha_i); the simple
/// reflection acts by s_i(alpha_j) = alpha_j - cartan[i][j] alpha_i.
/// dvec[i] = (alpha_i, alpha_i)/2, so (alpha_i, alpha_j) = dvec[i]*cartan[i][j].
/// coxeter[i][j] is the bond order m(i,j); 0 encodes an infinite bond
/// (only A~1 has one).
struct CoxeterDiagram {
  TypeTag tag;
  int n = 0;
  std::vector<int> labels;
  std::vector<std::vector<int>> coxeter;
  std::vector<std::vector<long long>> cartan;
  std::vector<long long> dvec;

  bool affine() const { return tag.affine; }
  /// Rank of the finite part (= n for finite diagrams, n-1 for affine ones).
  int finite_rank() const { return tag.rank; }
  /// Drops the affine node s_0.
  CoxeterDiagram finite_part() const;
  /// Position of the generator with the given label, -1 if absent.
  int position_of_label(int label) const;
};

/// Builds the diagram for a supported type from Bourbaki data; affine
/// diagrams are derived from the finite Cartan matrix and the highest root.
CoxeterDiagram coxeter_diagram(const TypeTag& tag);
inline CoxeterDiagram coxeter_diagram(const std::string& tag) { return coxeter_diagram(parse_type_tag(tag)); }

/// Structural invariants: symmetric bond matrix, unit diagonal, off-diagonal
/// bonds in {2,3,4,6} (or 0 = infinity on affine A~1), Cartan sign pattern.
bool diagram_invariants_hold(const CoxeterDiagram& d, std::string* why = nullptr);

/// Roots of a finite diagram in simple-root coordinates.
struct RootSystem {
  std::vector<std::vector<long long>> roots;
  std::vector<long long> highest;  // the highest root theta
  int positive_count = 0;
};
RootSystem enumerate_roots(const CoxeterDiagram& finite);

/// Order of the (necessarily finite) Coxeter group generated by the
/// sub-diagram selected by `mask`, computed by classifying its connected
/// components. Throws BuildError when a component is not of finite Weyl type.
std::uint64_t subdiagram_order(const CoxeterDiagram& d, std::uint32_t mask);

}  // namespace torhom
