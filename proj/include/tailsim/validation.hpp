#pragma once

// The acceptance suite: numerical oracles and closed-loop properties, shared by
// the acceptance test binary and `sim validate`.

#include <functional>
#include <string>
#include <vector>

namespace tailsim {

struct CheckResult {
  int id{0};
  std::string name;
  bool pass{false};
  std::string detail;
  double seconds{0};
};

struct ValidationOptions {
  int mc_runs{20};
  int threads{0};
  std::vector<int> only;  // empty = all criteria
};

CheckResult check_field_jacobians();
CheckResult check_exponential_stability();
CheckResult check_gain_equivalence();
CheckResult check_flatness_roundtrip();
CheckResult check_wind_equivariance();
CheckResult check_peak_acceleration();
CheckResult check_nominal_error();
CheckResult check_initial_error();
CheckResult check_wind_campaign(int runs, int threads);
CheckResult check_dryden_statistics();
CheckResult check_determinism_and_order();

std::vector<CheckResult> run_acceptance(const ValidationOptions& opt,
                                        const std::function<void(const CheckResult&)>& on_result = {});

std::string format_result(const CheckResult& r);

}  // namespace tailsim
