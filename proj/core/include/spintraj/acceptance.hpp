#ifndef SPINTRAJ_ACCEPTANCE_HPP
#define SPINTRAJ_ACCEPTANCE_HPP

#include <string>
#include <vector>

namespace spintraj {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
};

inline constexpr int kNumCriteria = 11;

/// Runs one acceptance criterion (1-based id). Every tolerance is pinned in
/// the implementation; results are deterministic (fixed seeds).
CriterionResult run_criterion(int id);

/// Runs the listed criteria (all of them when empty), printing one PASS/FAIL
/// line per criterion to stdout as it goes.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {});

}  // namespace spintraj

#endif
