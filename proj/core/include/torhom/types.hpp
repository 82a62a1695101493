#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace torhom {

/// Raised when a mathematical consistency check fails during construction
/// (a boundary that does not square to zero, a subgroup closure that
/// overflows its abstract order, a map that is not a chain map).
struct BuildError : std::runtime_error {
  explicit BuildError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised on unsupported type tags, out-of-bounds ranks and similar misuse.
struct UsageError : std::runtime_error {
  explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

/// Weyl type tag: family letter, rank, finite or affine.
/// Affine tags are written with a tilde after the letter: "A~2".
struct TypeTag {
  char family = 'A';  // 'A'..'G'
  int rank = 1;
  bool affine = false;

  std::string str() const;
  bool operator==(const TypeTag&) const = default;
};

/// Parses "A2", "B3", "A~2", "G~2" (case-insensitive letter).
/// Accepts "B~2" as an alias of "C~2" (the rank-2 affine diagrams coincide).
TypeTag parse_type_tag(const std::string& text);

/// True when (family, rank, affine) names a supported crystallographic type.
bool type_supported(const TypeTag& tag);

/// Order of the finite Weyl group of this type (the finite quotient for
/// affine tags). Throws UsageError for unsupported tags.
std::uint64_t weyl_order(const TypeTag& tag);

/// Exponents e_1 <= ... <= e_m of the finite type; the Poincare polynomial
/// of the reflection-arrangement complement factors as prod (1 + e_i t).
std::vector<int> weyl_exponents(const TypeTag& tag);

/// Number of positive roots (= sum of exponents = length of the longest
/// element).
int positive_root_count(const TypeTag& tag);

/// All finite tags supported at desk scale, in a fixed listing order.
std::vector<TypeTag> supported_finite_types();
/// All affine tags supported at desk scale.
std::vector<TypeTag> supported_affine_types();

}  // namespace torhom
