#pragma once

#include <string>

#include "torhom/chain_map.hpp"
#include "torhom/homology.hpp"

namespace torhom {

/// JSON interchange. Schemas are versioned under "torhom/..."; all integer
/// values that can grow beyond machine words (boundary coefficients, torsion
/// coefficients, group orders) are encoded as decimal strings. Output is
/// byte-stable for fixed inputs and tool version (keys are emitted sorted).
std::string complex_to_json(const ChainComplex& c);
ChainComplex complex_from_json(const std::string& text);

std::string chain_map_to_json(const ChainMap& m);
/// Rebuilds the map together with fresh copies of its endpoint complexes.
struct LoadedChainMap {
  std::shared_ptr<const ChainComplex> source, target;
  ChainMap map;
};
LoadedChainMap chain_map_from_json(const std::string& text);

std::string homology_table_to_json(const ChainComplex& c, const std::vector<HomologyGroup>& groups);
std::string homology_table_to_text(const std::vector<HomologyGroup>& groups);

}  // namespace torhom
