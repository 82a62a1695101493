#pragma once

#include "torhom/complex.hpp"

namespace torhom {

/// Degree-preserving (possibly shifted) map of chain complexes: source degree
/// d lands in target degree d + shift. Matrices are stored per source degree.
struct ChainMap {
  std::shared_ptr<const ChainComplex> source, target;
  int shift = 0;
  std::string name;
  std::vector<SparseMat> mats;  // index d: dim target(d+shift) x dim source(d)

  const SparseMat& mat(int source_degree) const;
  IMatrix dense(int source_degree) const;

  /// Exact check of boundary commutation in every degree.
  bool is_chain_map(std::string* why = nullptr) const;
};

/// g after f; shifts add. Composition entries are checked to fit the sparse
/// integer storage.
ChainMap compose(const ChainMap& g, const ChainMap& f);

ChainMap identity_map(std::shared_ptr<const ChainComplex> c);

/// Projection onto a filtration quotient: cells present in the quotient map
/// to themselves, all others to zero.
ChainMap quotient_map(std::shared_ptr<const ChainComplex> from, std::shared_ptr<const ChainComplex> to);

/// Cell-identity inclusion of a complex whose cells form a subset of the
/// target's cells (matched by copy/element/gamma keys).
ChainMap key_inclusion(std::shared_ptr<const ChainComplex> sub, std::shared_ptr<const ChainComplex> super);

/// The kernel of a filtration quotient as a genuine subcomplex: the cells of
/// `from` that the quotient kills, with the induced boundary (verified to be
/// closed), plus the inclusion map.
struct SubcomplexPair {
  std::shared_ptr<const ChainComplex> sub;
  ChainMap inclusion;
};
SubcomplexPair kernel_subcomplex(std::shared_ptr<const ChainComplex> from,
                                 std::uint32_t quotient_extra_required);

/// The coset-indexed inclusion of shifted copies of the smaller complex into
/// a filtration stage: the j-th copy's cell E(u, Gamma) goes to
/// E(rep_j * u, Gamma united with the stage's required set). The peeled
/// generator is the one the next quotient adds.
struct InclusionResult {
  std::shared_ptr<const ChainComplex> source;  // direct sum of copies
  std::shared_ptr<const ChainComplex> base;    // one copy
  CosetDecomposition cosets;
  ChainMap map;
};
InclusionResult build_inclusion_map(std::shared_ptr<const ChainComplex> target_stage, int peeled_pos,
                                    const ComplexBuildOptions& opt = {});

/// Splitting map of a filtration stage onto coset-indexed copies of the
/// complex over the generators outside `strip`:
///   E(w, Gamma u strip) -> sum over beta of (-1)^(len beta) E(w beta, Gamma),
/// beta running over the minimal coset representatives of the subgroup of
/// Gamma u strip with no descent outside the peeled generator (the one the
/// matching short exact sequence quotients by; the lowest-label generator of
/// the strip when peeling from the top). Each w beta is factored through the
/// frame (a coset decomposition) to pick the copy.
///
/// When the strip consists of labels below the remaining generators, the
/// stage's mu-counts all shift by |strip| against the target's, so for odd
/// strips the coefficients carry an extra (-1)^degree to commute with the
/// boundaries.
struct DeltaResult {
  std::shared_ptr<const ChainComplex> target;  // direct sum of copies
  std::shared_ptr<const ChainComplex> base;
  CosetDecomposition frame;
  ChainMap map;
};
DeltaResult build_delta_map(std::shared_ptr<const ChainComplex> stage, std::uint32_t strip,
                            int peeled_pos = -1, const ComplexBuildOptions& opt = {});
/// Same, but reusing a caller-provided target complex and frame (so that two
/// maps into the same direct sum share one basis).
ChainMap build_delta_map_into(std::shared_ptr<const ChainComplex> stage, std::uint32_t strip,
                              std::shared_ptr<const ChainComplex> target, const CosetDecomposition& frame,
                              int peeled_pos = -1);

/// The frame whose copies are indexed by pairs (coset of W_outer in W, coset
/// of W_inner within W_outer), flattened outer-major, with frame elements
/// rep_outer * rep_inner.
CosetDecomposition nested_frame(const GroupContext& ctx, std::uint32_t outer_mask, std::uint32_t inner_mask);

/// Block map between direct sums, outer-major: copy (j1, j2) of the source
/// (over inner_mask) embeds into copy j1 of the target (a stage over
/// outer_mask) through left translation by the j2-th inner coset
/// representative and union with the target's required set.
ChainMap nested_inclusion(std::shared_ptr<const ChainComplex> src_sum,
                          std::shared_ptr<const ChainComplex> tgt_sum, const GroupContext& ctx,
                          std::uint32_t outer_mask, std::uint32_t inner_mask);

/// Per-degree exactness data for a pair (i, j) with i.target == j.source.
struct ShortExactReport {
  struct Node {
    int degree;                 // degree in the middle complex
    bool i_injective;
    bool j_surjective;
    bool composite_zero;
    bool ranks_exact;           // rank i + rank j == dim middle
    bool image_saturated;       // all invariant factors of i equal 1
  };
  std::vector<Node> nodes;
  bool i_chain_map = false, j_chain_map = false;
  bool ok() const;
  std::string first_failure() const;
};
ShortExactReport verify_short_exact(const ChainMap& i, const ChainMap& j);

/// right o top == bottom o left as integer matrices in every degree.
bool verify_square_commutes(const ChainMap& top, const ChainMap& left, const ChainMap& right,
                            const ChainMap& bottom, std::string* why = nullptr);

}  // namespace torhom
