#pragma once

#include <string>
#include <vector>

namespace kz {

// One residual against its tolerance; exact checks use residual = number of
// mismatches and tolerance 0.
struct Check {
  std::string name;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
};

struct CriterionReport {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  bool pass = false;
  double seconds = 0;
  std::string error;  // set when the run threw
};

enum class VerifySuite { exact, identities, all };

VerifySuite parse_suite(const std::string& s);  // throws std::invalid_argument
std::string to_string(VerifySuite s);
std::vector<int> suite_criteria(VerifySuite s);

constexpr int kCriterionCount = 10;
std::string criterion_title(int id);

// jobs > 1 spreads independent grid and ladder points over threads.
CriterionReport run_criterion(int id, unsigned jobs = 1);
std::vector<CriterionReport> run_suite(VerifySuite s, unsigned jobs = 1);

}  // namespace kz
