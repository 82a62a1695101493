#pragma once

#include <map>
#include <memory>
#include <string>

#include "torhom/matrix.hpp"
#include "torhom/weyl.hpp"

namespace torhom {

/// Sign rule for the boundary operator. Both conventions compute
/// mu(Gamma, s_j); for s_j in Gamma the label-count reading (#{s_i in Gamma :
/// i <= j}) and the ordinal-position reading coincide, so they produce
/// identical complexes. Both are kept as independent code paths and the
/// boundary check reports which convention it was run under.
enum class MuConvention { Index, Position };

const char* mu_convention_name(MuConvention mu);
MuConvention parse_mu_convention(const std::string& name);

/// Shared group data behind a family of complexes: the diagram whose
/// generators index cell subsets, the finite Weyl group realizing all
/// elements, and the projected generator images (identity projection for
/// finite diagrams, s_0 -> s_theta for affine ones).
struct GroupContext {
  CoxeterDiagram diagram;
  std::shared_ptr<const WeylGroup> group;
  std::vector<int> images;  // per diagram position

  std::uint32_t full_mask() const { return (1u << diagram.n) - 1; }
  std::uint32_t mask_of_labels(const std::vector<int>& labels) const;
  std::vector<int> labels_of_mask(std::uint32_t mask) const;

  /// Subgroup table for the reflection subgroup generated by the images of
  /// the selected generators, cached per mask. The expected order comes from
  /// classifying the subdiagram.
  const SubgroupTable& table(std::uint32_t mask) const;

 private:
  mutable std::map<std::uint32_t, std::unique_ptr<SubgroupTable>> cache_;
};

std::shared_ptr<const GroupContext> make_group_context(const TypeTag& tag,
                                                       std::uint64_t order_bound = kDefaultOrderBound);

/// One cell E(w, Gamma) (or E([w], Gamma) in a toric complex): an element
/// index, a generator subset as a bitmask over diagram positions, and a copy
/// index when the complex is a direct sum.
struct Cell {
  int element = 0;
  std::uint32_t gamma = 0;
  int copy = 0;
};

/// Filtration constraint: every cell's Gamma must contain this set.
struct FiltrationSpec {
  std::uint32_t required = 0;
};

struct ComplexBuildOptions {
  MuConvention mu = MuConvention::Index;
  bool verify_boundary = true;
  std::size_t max_cells = 200000;
};

/// A finite chain complex of free Z-modules with a distinguished cell basis
/// per degree and sparse integer boundary matrices. boundary[k] maps degree k
/// to degree k-1; all coefficients are +-1 by construction.
struct ChainComplex {
  std::string name;
  std::string construction = "other";  // salvetti | toric | filtration | other
  std::string type_tag;                // e.g. "A2", "A~2"; empty when unknown
  std::shared_ptr<const GroupContext> ctx;  // null for complexes loaded from files
  std::vector<int> universe_labels;
  std::uint32_t gen_mask = 0;   // generator positions cells may use
  std::uint32_t required = 0;   // filtration constraint already applied
  bool proper_only = false;     // toric complexes: Gamma is a proper subset
  int copies = 1;
  MuConvention mu = MuConvention::Index;

  std::vector<std::vector<Cell>> cells;  // per degree
  std::vector<SparseMat> boundary;       // boundary[k] : C_k -> C_{k-1}

  int top_degree() const { return static_cast<int>(cells.size()) - 1; }
  int dim(int k) const;
  long long total_cells() const;
  long long euler_characteristic() const;
  int find(int degree, int copy, int element, std::uint32_t gamma) const;  // -1 when absent
  const Cell& cell(int degree, int i) const { return cells[degree][i]; }

  void rebuild_lookup();

 private:
  std::vector<std::unordered_map<std::uint64_t, int>> lookup_;
};

/// Verifies that consecutive boundaries compose to zero (exact arithmetic).
bool boundary_squares_to_zero(const ChainComplex& c, std::string* why = nullptr);

/// Cells E(w, Gamma) for all w in the carrier and Gamma within gen_mask
/// subject to the constraints; boundary per the Salvetti sign rule with the
/// beta sum over minimal coset representatives in the Gamma-subgroup,
/// signed by Gamma-length plus mu.
ChainComplex build_cell_complex(std::shared_ptr<const GroupContext> ctx, std::vector<int> carrier,
                                std::uint32_t gen_mask, std::uint32_t required, bool proper_only,
                                const ComplexBuildOptions& opt, std::string name);

/// Salvetti complex of the full finite group: cells E(w, Gamma), Gamma over
/// all subsets of the generator set.
ChainComplex build_salvetti_complex(std::shared_ptr<const GroupContext> ctx,
                                    const ComplexBuildOptions& opt = {});

/// Toric Salvetti complex of an affine context: classes [w] are represented
/// by the elements of the finite quotient, Gamma runs over proper subsets of
/// the affine generator set.
ChainComplex build_toric_complex(std::shared_ptr<const GroupContext> ctx,
                                 const ComplexBuildOptions& opt = {});

/// Salvetti complex of the reflection subgroup generated by the images of
/// `gen_mask`, with cells indexed by parent element indices; optionally a
/// filtration stage of it.
ChainComplex build_subgroup_complex(std::shared_ptr<const GroupContext> ctx, std::uint32_t gen_mask,
                                    std::uint32_t required = 0, const ComplexBuildOptions& opt = {});

/// Keeps the cells whose Gamma contains the required set; the induced
/// boundary drops every term that leaves the span. The result is verified to
/// be a complex again.
ChainComplex filtration_quotient(const ChainComplex& c, const FiltrationSpec& spec,
                                 const ComplexBuildOptions& opt = {});

/// Direct sum of `copies` copies of a complex, copy-major cell order.
ChainComplex direct_sum(const ChainComplex& c, int copies);

}  // namespace torhom
