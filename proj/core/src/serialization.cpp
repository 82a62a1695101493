#include "torhom/serialization.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "torhom/version.hpp"

namespace torhom {

using nlohmann::json;

namespace {

json tool_block() { return json{{"name", kToolName}, {"version", kToolVersion}}; }

json complex_to_json_obj(const ChainComplex& c) {
  json degrees = json::array();
  for (int k = 0; k <= c.top_degree(); ++k) {
    json cells = json::array();
    for (const Cell& cell : c.cells[k]) cells.push_back(json::array({cell.copy, cell.element, cell.gamma}));
    json bd = json::array();
    auto entries = c.boundary[k].entries;
    std::sort(entries.begin(), entries.end(),
              [](const Triplet& a, const Triplet& b) { return std::tie(a.col, a.row) < std::tie(b.col, b.row); });
    for (const Triplet& t : entries) bd.push_back(json::array({t.row, t.col, std::to_string(t.val)}));
    degrees.push_back(json{{"dim", c.dim(k)}, {"cells", cells}, {"boundary", bd}});
  }
  return json{
      {"schema", "torhom/chain-complex/v1"},
      {"tool", tool_block()},
      {"name", c.name},
      {"construction", c.construction},
      {"type", c.type_tag},
      {"mu_convention", mu_convention_name(c.mu)},
      {"universe_labels", c.universe_labels},
      {"gen_mask", c.gen_mask},
      {"required", c.required},
      {"proper_only", c.proper_only},
      {"copies", c.copies},
      {"degrees", degrees},
  };
}

ChainComplex complex_from_json_obj(const json& j) {
  if (j.at("schema").get<std::string>() != "torhom/chain-complex/v1")
    throw UsageError("not a torhom chain-complex file");
  ChainComplex c;
  c.name = j.at("name").get<std::string>();
  c.construction = j.value("construction", "other");
  c.type_tag = j.value("type", "");
  c.mu = parse_mu_convention(j.value("mu_convention", "index"));
  c.universe_labels = j.at("universe_labels").get<std::vector<int>>();
  c.gen_mask = j.at("gen_mask").get<std::uint32_t>();
  c.required = j.at("required").get<std::uint32_t>();
  c.proper_only = j.value("proper_only", false);
  c.copies = j.value("copies", 1);
  const json& degrees = j.at("degrees");
  c.cells.resize(degrees.size());
  c.boundary.resize(degrees.size());
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    const json& deg = degrees[k];
    for (const auto& cell : deg.at("cells"))
      c.cells[k].push_back(Cell{cell.at(1).get<int>(), cell.at(2).get<std::uint32_t>(), cell.at(0).get<int>()});
    if (static_cast<int>(c.cells[k].size()) != deg.at("dim").get<int>())
      throw UsageError("cell count does not match dim in degree " + std::to_string(k));
    SparseMat& b = c.boundary[k];
    b.cols = static_cast<int>(c.cells[k].size());
    b.rows = k == 0 ? 0 : static_cast<int>(c.cells[k - 1].size());
    for (const auto& t : deg.at("boundary")) {
      long long v = std::stoll(t.at(2).get<std::string>());
      int r = t.at(0).get<int>();
      int cc = t.at(1).get<int>();
      if (r < 0 || r >= b.rows || cc < 0 || cc >= b.cols) throw UsageError("boundary entry out of range");
      b.push(r, cc, v);
    }
  }
  c.rebuild_lookup();
  return c;
}

json chain_map_to_json_obj(const ChainMap& m) {
  json mats = json::array();
  for (int d = 0; d <= m.source->top_degree(); ++d) {
    json entries = json::array();
    auto sorted = m.mat(d).entries;
    std::sort(sorted.begin(), sorted.end(),
              [](const Triplet& a, const Triplet& b) { return std::tie(a.col, a.row) < std::tie(b.col, b.row); });
    for (const Triplet& t : sorted) entries.push_back(json::array({t.row, t.col, std::to_string(t.val)}));
    mats.push_back(json{{"source_degree", d}, {"entries", entries}});
  }
  return json{
      {"schema", "torhom/chain-map/v1"}, {"tool", tool_block()},          {"name", m.name},
      {"shift", m.shift},                {"source", complex_to_json_obj(*m.source)},
      {"target", complex_to_json_obj(*m.target)},
      {"matrices", mats},
  };
}

}  // namespace

std::string complex_to_json(const ChainComplex& c) { return complex_to_json_obj(c).dump(1) + "\n"; }

ChainComplex complex_from_json(const std::string& text) {
  return complex_from_json_obj(json::parse(text));
}

std::string chain_map_to_json(const ChainMap& m) { return chain_map_to_json_obj(m).dump(1) + "\n"; }

LoadedChainMap chain_map_from_json(const std::string& text) {
  json j = json::parse(text);
  if (j.at("schema").get<std::string>() != "torhom/chain-map/v1") throw UsageError("not a torhom chain-map file");
  LoadedChainMap out;
  out.source = std::make_shared<ChainComplex>(complex_from_json_obj(j.at("source")));
  out.target = std::make_shared<ChainComplex>(complex_from_json_obj(j.at("target")));
  out.map.source = out.source;
  out.map.target = out.target;
  out.map.name = j.at("name").get<std::string>();
  out.map.shift = j.at("shift").get<int>();
  out.map.mats.resize(out.source->top_degree() + 1);
  for (const auto& mj : j.at("matrices")) {
    int d = mj.at("source_degree").get<int>();
    SparseMat& m = out.map.mats.at(d);
    m.rows = out.target->dim(d + out.map.shift);
    m.cols = out.source->dim(d);
    for (const auto& t : mj.at("entries"))
      m.push(t.at(0).get<int>(), t.at(1).get<int>(), std::stoll(t.at(2).get<std::string>()));
  }
  return out;
}

std::string homology_table_to_json(const ChainComplex& c, const std::vector<HomologyGroup>& groups) {
  json rows = json::array();
  for (const auto& g : groups) {
    json tors = json::array();
    for (const auto& t : g.torsion) tors.push_back(t.get_str());
    rows.push_back(json{{"degree", g.degree}, {"betti", g.betti}, {"torsion", tors}});
  }
  json out{
      {"schema", "torhom/homology/v1"},
      {"tool", tool_block()},
      {"complex", c.name},
      {"type", c.type_tag},
      {"groups", rows},
  };
  return out.dump(1) + "\n";
}

std::string homology_table_to_text(const std::vector<HomologyGroup>& groups) {
  std::ostringstream os;
  os << "degree  betti  torsion\n";
  for (const auto& g : groups) {
    os << g.degree << "       " << g.betti << "      ";
    if (g.torsion.empty()) {
      os << "-";
    } else {
      for (std::size_t i = 0; i < g.torsion.size(); ++i) os << (i ? "," : "") << g.torsion[i].get_str();
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace torhom
