#ifndef FORMA_BATTERY_HPP
#define FORMA_BATTERY_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace forma {

struct BatteryItem {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;              // one-line summary, includes witnesses on failure
  std::vector<std::string> notes;  // caveats and reported counts
};

struct BatteryResult {
  std::vector<BatteryItem> items;
  bool pass = true;
};

/// Runs the full acceptance battery (the reproducibility checks for the
/// dichotomy, synthesis, bicategory, census, law-suite, duality, pointed and
/// optimality properties) and prints one pass/fail line per criterion.
BatteryResult run_battery(std::ostream& out, const std::string& cache_dir = "");

}  // namespace forma

#endif
