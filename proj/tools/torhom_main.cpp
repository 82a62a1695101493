// torhom: build Salvetti and toric Salvetti complexes for Weyl types, compute
// exact integer homology, and run the structural verification campaigns.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 usage or
// input error.

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "torhom/homology.hpp"
#include "torhom/report.hpp"
#include "torhom/serialization.hpp"
#include "torhom/version.hpp"

namespace {

using namespace torhom;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::uint32_t parse_require(const GroupContext& ctx, const std::vector<std::string>& items) {
  std::vector<int> labels;
  for (const auto& raw : items) {
    std::string s = raw;
    if (!s.empty() && (s[0] == 's' || s[0] == 'S')) s = s.substr(1);
    try {
      labels.push_back(std::stoi(s));
    } catch (const std::exception&) {
      throw UsageError("bad generator name '" + raw + "' (expected e.g. s2)");
    }
  }
  return ctx.mask_of_labels(labels);
}

int cmd_list_types() {
  std::cout << "finite types:\n";
  for (const auto& t : supported_finite_types()) {
    std::cout << "  " << t.str() << "  |W| = " << weyl_order(t);
    if (weyl_order(t) > kDefaultOrderBound) std::cout << "  (diagram only: order exceeds default bound)";
    std::cout << "\n";
  }
  std::cout << "affine types (finite quotient shown):\n";
  for (const auto& t : supported_affine_types()) {
    std::cout << "  " << t.str() << "  |W| = " << weyl_order(t);
    if (weyl_order(t) > kDefaultOrderBound) std::cout << "  (diagram only: order exceeds default bound)";
    std::cout << "\n";
  }
  std::cout << "\nnote: B~2 is accepted as an alias of C~2 (the diagrams coincide).\n";
  return 0;
}

int cmd_build(const std::string& type, const std::string& construction, const std::vector<std::string>& require,
              const std::string& mu_name, const std::string& out_path) {
  TypeTag tag = parse_type_tag(type);
  ComplexBuildOptions opt;
  opt.mu = parse_mu_convention(mu_name);
  auto ctx = make_group_context(tag);

  ChainComplex c;
  if (construction == "salvetti") {
    if (tag.affine) throw UsageError("salvetti construction needs a finite type (got " + type + ")");
    c = build_salvetti_complex(ctx, opt);
  } else if (construction == "toric") {
    if (!tag.affine) throw UsageError("toric construction needs an affine type (got " + type + ")");
    c = build_toric_complex(ctx, opt);
  } else if (construction == "filtration") {
    std::uint32_t mask = parse_require(*ctx, require);
    ChainComplex total = tag.affine ? build_toric_complex(ctx, opt) : build_salvetti_complex(ctx, opt);
    c = filtration_quotient(total, FiltrationSpec{mask}, opt);
  } else {
    throw UsageError("unknown construction '" + construction + "' (expected salvetti|toric|filtration)");
  }

  std::string text = complex_to_json(c);
  if (out_path.empty()) {
    std::cout << text;
  } else {
    write_file(out_path, text);
    std::cout << c.name << ": " << c.total_cells() << " cells -> " << out_path << "\n";
  }
  return 0;
}

int cmd_homology(const std::string& in_path, const std::string& out_path) {
  ChainComplex c = complex_from_json(read_file(in_path));
  std::string why;
  if (!boundary_squares_to_zero(c, &why)) throw BuildError("input complex is not a complex: " + why);
  ComplexHomology h(std::make_shared<ChainComplex>(std::move(c)));
  auto groups = h.table();
  std::cout << homology_table_to_text(groups);
  if (!out_path.empty()) write_file(out_path, homology_table_to_json(h.complex(), groups));
  return 0;
}

int cmd_verify(const std::vector<std::string>& types, const std::vector<std::string>& suites,
               const std::string& mu_name, int jobs, const std::string& out_path) {
  CampaignSpec spec;
  spec.mu = parse_mu_convention(mu_name);
  spec.jobs = jobs;
  if (types.empty()) {
    spec.types = default_campaign_types();
  } else {
    for (const auto& t : types) spec.types.push_back(parse_type_tag(t));
  }
  auto known = suite_names();
  for (const auto& s : suites) {
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw UsageError("unknown suite '" + s + "'");
  }
  spec.suites = suites.empty() ? known : suites;

  VerificationReport report = run_campaign(spec);
  std::cout << report.to_text();
  if (!out_path.empty()) write_file(out_path, report.to_json());
  return report.all_passed() ? 0 : 1;
}

int cmd_report(const std::string& in_path) {
  VerificationReport r = VerificationReport::from_json(read_file(in_path));
  std::cout << "tool: " << r.tool_name << " " << r.tool_version << "\n";
  std::cout << "types:";
  for (const auto& s : r.subjects) std::cout << " " << s;
  std::cout << "\nsuites:";
  for (const auto& s : r.suites) std::cout << " " << s;
  std::cout << "\nmu convention: " << r.mu_convention << "\n\n";
  std::cout << r.to_text();
  return r.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact homology of Salvetti and toric Salvetti complexes for Weyl arrangements"};
  app.set_version_flag("--version", std::string(torhom::kToolVersion));
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list-types", "list supported Weyl types");

  std::string type, construction, out_path, mu_name = "index";
  std::vector<std::string> require;
  auto* build = app.add_subcommand("build", "build a complex and write it as JSON");
  build->add_option("type", type, "Weyl type tag, e.g. A2 or A~2")->required();
  build->add_option("construction", construction, "salvetti | toric | filtration")->required();
  build->add_option("--require", require, "generators the cells must contain, e.g. --require s2");
  build->add_option("--mu-convention", mu_name, "index | position")->capture_default_str();
  build->add_option("--out", out_path, "output file (stdout when omitted)");

  std::string hom_in, hom_out;
  auto* hom = app.add_subcommand("homology", "betti numbers and torsion of a complex file");
  hom->add_option("complex", hom_in, "complex JSON file")->required();
  hom->add_option("--out", hom_out, "also write the table as JSON");

  std::vector<std::string> vtypes, vsuites;
  std::string vmu = "index", vout;
  int vjobs = 0;
  auto* verify = app.add_subcommand("verify", "run verification campaigns");
  verify->add_option("--type", vtypes, "types to verify (defaults to the standard campaign set)");
  verify->add_option("--suite", vsuites, "suites: finite-salvetti filtration toric exactness one-free");
  verify->add_option("--mu-convention", vmu, "index | position")->capture_default_str();
  verify->add_option("--jobs", vjobs, "worker pool size (0 = auto)")->capture_default_str();
  verify->add_option("--out", vout, "write the JSON report here");

  std::string rep_in;
  auto* rep = app.add_subcommand("report", "pretty-print a verification report");
  rep->add_option("report", rep_in, "report JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (list->parsed()) return cmd_list_types();
    if (build->parsed()) return cmd_build(type, construction, require, mu_name, out_path);
    if (hom->parsed()) return cmd_homology(hom_in, hom_out);
    if (verify->parsed()) return cmd_verify(vtypes, vsuites, vmu, vjobs, vout);
    if (rep->parsed()) return cmd_report(rep_in);
  } catch (const torhom::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
