#pragma once

#include "torhom/complex.hpp"

namespace torhom {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;  // mandatory on failure, informative otherwise
  long long millis = 0;
};

/// Which verification suites to run over which types.
struct CampaignSpec {
  std::vector<TypeTag> types;
  std::vector<std::string> suites;  // subset of suite_names()
  MuConvention mu = MuConvention::Index;
  int jobs = 0;  // 0 = pick from hardware
  std::uint64_t order_bound = kDefaultOrderBound;
  std::size_t max_cells = 200000;
};

std::vector<std::string> suite_names();       // all five suites
std::vector<TypeTag> default_campaign_types();

struct VerificationReport {
  std::string tool_name, tool_version;
  std::vector<std::string> subjects;
  std::vector<std::string> suites;
  std::string mu_convention;
  std::vector<CheckResult> checks;

  int failed_count() const;
  bool all_passed() const { return failed_count() == 0; }
  std::string to_json() const;
  std::string to_text() const;
  static VerificationReport from_json(const std::string& text);
};

/// Runs the campaign in a bounded work pool; the report ordering is
/// deterministic regardless of completion order.
VerificationReport run_campaign(const CampaignSpec& spec);

}  // namespace torhom
