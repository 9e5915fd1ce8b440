#pragma once

#include <string>
#include <vector>

namespace sixdelta::cli {

struct CheckResult {
  std::string name;
  double max_err = 0.0;
  double tolerance = 0.0;
  double wall_time = 0.0;
  std::string note;
  bool passed() const { return max_err < tolerance; }
};

enum class Level { quick, full };

/// Cross-checks of every closed form against its independent oracle.
/// quick uses reduced grids and sample counts; Monte Carlo checks then compare
/// against four standard errors instead of a fixed relative tolerance.
std::vector<CheckResult> run_verify(Level level, unsigned long long seed);

}  // namespace sixdelta::cli
