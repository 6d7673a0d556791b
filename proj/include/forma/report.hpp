#ifndef FORMA_REPORT_HPP
#define FORMA_REPORT_HPP

#include <deque>
#include <string>
#include <utility>
#include <vector>

namespace forma {

/// A single counterexample: which law broke and the ids involved.
struct Witness {
  std::string law;
  std::vector<std::pair<std::string, std::string>> refs;  // e.g. {"morphism","f3"}, {"cluster","S2/1"}
  std::string detail;
};

/// Status of one named check (an axiom, a law family, a derived assertion).
struct CheckItem {
  std::string name;
  bool pass = true;
  std::vector<Witness> witnesses;  // first witnesses only, capped

  void fail(Witness w);
  /// Attaches a witness without flipping the verdict (e.g. chosen factorization pairs).
  void info(Witness w);
};

/// Verdict plus per-item breakdown. `notes` carries caveats (e.g. truncated
/// categories) that do not affect the verdict.
struct CheckReport {
  bool pass = true;
  std::deque<CheckItem> items;  // deque: item() references stay valid as items are added
  std::vector<std::string> notes;

  CheckItem& item(const std::string& name);
  const CheckItem* find(const std::string& name) const;
  bool item_passed(const std::string& name) const;
  void merge(const CheckReport& other);
  void recompute_verdict();
  std::string summary() const;
};

inline constexpr int kMaxWitnessesPerItem = 8;

}  // namespace forma

#endif
