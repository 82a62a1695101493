#pragma once

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "torhom/coxeter.hpp"

namespace torhom {

/// Default cap on |W| for exact enumeration (the order of E6).
inline constexpr std::uint64_t kDefaultOrderBound = 51840;

/// One group element: its matrix in the simple-root basis, flattened row
/// major. Every column of such a matrix is a root, so entries stay tiny.
using ElementMatrix = std::vector<long long>;

struct ElementMatrixHash {
  std::size_t operator()(const ElementMatrix& m) const {
    std::size_t h = 1469598103934665603ull;
    for (long long v : m) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

/// A finite Weyl group, fully enumerated.
///
/// Elements are listed in the canonical order (length, then lexicographically
/// smallest reduced word); index 0 is the identity and indices 1..m are the
/// simple reflections s_1..s_m in diagram order.
class WeylGroup {
 public:
  CoxeterDiagram diagram;  // finite
  int rank = 0;            // matrix dimension

  std::vector<ElementMatrix> elements;
  std::vector<int> length;
  std::vector<std::vector<int>> words;  // lex-least reduced word, generator positions
  std::vector<int> inverse;

  std::size_t size() const { return elements.size(); }
  int identity() const { return 0; }
  int generator(int pos) const { return gen_index_[pos]; }

  int right_mult(int w, int gen_pos) const { return rmult_[static_cast<std::size_t>(w) * rank + gen_pos]; }
  int left_mult(int gen_pos, int w) const { return lmult_[static_cast<std::size_t>(w) * rank + gen_pos]; }

  /// General product by matrix multiplication plus index lookup.
  int mult(int a, int b) const;
  int index_of(const ElementMatrix& m) const;

  bool right_descent(int w, int gen_pos) const { return length[right_mult(w, gen_pos)] < length[w]; }

  // filled by enumerate_weyl_group
  std::vector<int> rmult_, lmult_, gen_index_;
  std::unordered_map<ElementMatrix, int, ElementMatrixHash> index_;
};

/// Breadth-first enumeration from the identity over the generator matrices.
/// Canonical order (length, lex-least word); length = BFS depth. Throws
/// UsageError when the type order exceeds `order_bound`.
std::shared_ptr<const WeylGroup> enumerate_weyl_group(const CoxeterDiagram& finite,
                                                      std::uint64_t order_bound = kDefaultOrderBound);

/// Matrix of the reflection in the given root (simple-root coordinates).
ElementMatrix reflection_in_root(const CoxeterDiagram& finite, const std::vector<long long>& root);

/// Image of an affine generator under W~/Lambda ~= W: generators s_1..s_m map
/// to themselves, the affine node s_0 maps to the reflection in the highest
/// root. Returns an element index of W.
int project_affine_generator(const CoxeterDiagram& affine, int gen_label, const WeylGroup& w);

/// A reflection subgroup given by involutive generator images, together with
/// the word-length metric over those images (BFS distance in the Cayley
/// graph). For parabolic images this coincides with the restriction of the
/// ambient length function.
struct SubgroupTable {
  const WeylGroup* parent = nullptr;
  std::vector<int> gen_labels;  // labels of the generating set
  std::vector<int> images;      // parent element index per generator
  std::uint64_t abstract_order = 1;

  std::vector<int> members;  // parent indices, sorted by (gamma-length, index)
  std::vector<int> glen;     // per member position
  std::unordered_map<int, int> member_pos;

  int size() const { return static_cast<int>(members.size()); }
  int pos_of(int parent_idx) const;
  int right_mult_pos(int member_position, int gen) const { return rmul_[static_cast<std::size_t>(member_position) * images.size() + gen]; }
  int glen_of_parent(int parent_idx) const { return glen[pos_of(parent_idx)]; }

  std::vector<int> rmul_;  // members x generators -> member position
};

/// BFS closure over the images. `expected_order` is the abstract order of the
/// Coxeter group of the subdiagram; a closure exceeding it (or a final
/// mismatch) signals a broken projection and raises BuildError.
SubgroupTable reflection_subgroup(const WeylGroup& w, const std::vector<int>& gen_labels,
                                  const std::vector<int>& images, std::uint64_t expected_order);

/// Members without a descent at any generator listed in `ascents`:
/// {u in W_Gamma : l(u s) > l(u) for all s in ascents}. Returned as parent
/// indices in member order. These are the minimal coset representatives of
/// the corresponding standard subgroup.
std::vector<int> min_coset_representatives(const SubgroupTable& t, const std::vector<int>& ascent_gens);

/// Left-coset decomposition of a carrier set by a subgroup: one minimal
/// representative per coset (first occurrence in carrier order, which is the
/// canonical order for a whole group), and the factorization
/// w = reps[rep_of(w)] * members[part_of(w)].
struct CosetDecomposition {
  std::vector<int> reps;
  std::unordered_map<int, std::pair<int, int>> factor;  // element -> (rep position, member position)

  int copies() const { return static_cast<int>(reps.size()); }
  std::pair<int, int> factor_of(int element) const;
};

CosetDecomposition coset_decomposition(const WeylGroup& w, const SubgroupTable& sub);
/// Decomposition of an arbitrary carrier (e.g. the members of a larger
/// subgroup) by a subgroup contained in it.
CosetDecomposition coset_decomposition_of(const WeylGroup& w, const std::vector<int>& carrier,
                                          const SubgroupTable& sub);

}  // namespace torhom
