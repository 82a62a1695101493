#include "torhom/types.hpp"

#include <algorithm>
#include <cctype>

namespace torhom {

std::string TypeTag::str() const {
  std::string s(1, family);
  if (affine) s += '~';
  s += std::to_string(rank);
  return s;
}

TypeTag parse_type_tag(const std::string& text) {
  if (text.size() < 2) throw UsageError("bad type tag: '" + text + "'");
  TypeTag tag;
  tag.family = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  std::size_t i = 1;
  if (text[i] == '~') {
    tag.affine = true;
    ++i;
  }
  if (i >= text.size()) throw UsageError("bad type tag: '" + text + "'");
  try {
    std::size_t used = 0;
    tag.rank = std::stoi(text.substr(i), &used);
    if (i + used != text.size()) throw UsageError("bad type tag: '" + text + "'");
  } catch (const std::invalid_argument&) {
    throw UsageError("bad type tag: '" + text + "'");
  } catch (const std::out_of_range&) {
    throw UsageError("bad type tag: '" + text + "'");
  }
  // The affine rank-2 B diagram is the C one; normalize the alias.
  if (tag.affine && tag.family == 'B' && tag.rank == 2) tag.family = 'C';
  if (!type_supported(tag)) throw UsageError("unsupported type tag: '" + text + "'");
  return tag;
}

bool type_supported(const TypeTag& tag) {
  const int m = tag.rank;
  switch (tag.family) {
    case 'A': return m >= 1 && m <= 9;
    case 'B': return tag.affine ? (m >= 3 && m <= 9) : (m >= 2 && m <= 9);
    case 'C': return m >= 2 && m <= 9;
    case 'D': return m >= 4 && m <= 9;
    case 'E': return m >= 6 && m <= 8;
    case 'F': return m == 4;
    case 'G': return m == 2;
    default: return false;
  }
}

std::uint64_t weyl_order(const TypeTag& tag) {
  if (!type_supported(tag)) throw UsageError("unsupported type tag: " + tag.str());
  const int m = tag.rank;
  auto fact = [](int n) {
    std::uint64_t r = 1;
    for (int i = 2; i <= n; ++i) r *= static_cast<std::uint64_t>(i);
    return r;
  };
  switch (tag.family) {
    case 'A': return fact(m + 1);
    case 'B':
    case 'C': return (std::uint64_t{1} << m) * fact(m);
    case 'D': return (std::uint64_t{1} << (m - 1)) * fact(m);
    case 'E':
      if (m == 6) return 51840;
      if (m == 7) return 2903040;
      return 696729600;
    case 'F': return 1152;
    case 'G': return 12;
  }
  throw UsageError("unsupported type tag: " + tag.str());
}

std::vector<int> weyl_exponents(const TypeTag& tag) {
  if (!type_supported(tag)) throw UsageError("unsupported type tag: " + tag.str());
  const int m = tag.rank;
  std::vector<int> e;
  switch (tag.family) {
    case 'A':
      for (int i = 1; i <= m; ++i) e.push_back(i);
      return e;
    case 'B':
    case 'C':
      for (int i = 1; i <= m; ++i) e.push_back(2 * i - 1);
      return e;
    case 'D':
      for (int i = 1; i < m; ++i) e.push_back(2 * i - 1);
      e.push_back(m - 1);
      std::sort(e.begin(), e.end());
      return e;
    case 'E':
      if (m == 6) return {1, 4, 5, 7, 8, 11};
      if (m == 7) return {1, 5, 7, 9, 11, 13, 17};
      return {1, 7, 11, 13, 17, 19, 23, 29};
    case 'F': return {1, 5, 7, 11};
    case 'G': return {1, 5};
  }
  throw UsageError("unsupported type tag: " + tag.str());
}

int positive_root_count(const TypeTag& tag) {
  int n = 0;
  for (int e : weyl_exponents(tag)) n += e;
  return n;
}

std::vector<TypeTag> supported_finite_types() {
  std::vector<TypeTag> out;
  for (int m = 1; m <= 9; ++m) out.push_back({'A', m, false});
  for (int m = 2; m <= 9; ++m) out.push_back({'B', m, false});
  for (int m = 2; m <= 9; ++m) out.push_back({'C', m, false});
  for (int m = 4; m <= 9; ++m) out.push_back({'D', m, false});
  out.push_back({'E', 6, false});
  out.push_back({'E', 7, false});
  out.push_back({'E', 8, false});
  out.push_back({'F', 4, false});
  out.push_back({'G', 2, false});
  return out;
}

std::vector<TypeTag> supported_affine_types() {
  std::vector<TypeTag> out;
  for (int m = 1; m <= 9; ++m) out.push_back({'A', m, true});
  for (int m = 3; m <= 9; ++m) out.push_back({'B', m, true});
  for (int m = 2; m <= 9; ++m) out.push_back({'C', m, true});
  for (int m = 4; m <= 9; ++m) out.push_back({'D', m, true});
  out.push_back({'E', 6, true});
  out.push_back({'E', 7, true});
  out.push_back({'E', 8, true});
  out.push_back({'F', 4, true});
  out.push_back({'G', 2, true});
  return out;
}

}  // namespace torhom
