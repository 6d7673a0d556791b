#ifndef FORMA_POSET_HPP
#define FORMA_POSET_HPP

#include <optional>
#include <vector>

#include "forma/report.hpp"

namespace forma {

/// Finite poset over elements 0..n-1 given by a reflexive-transitive-
/// antisymmetric boolean matrix.
struct FinPoset {
  int n = 0;
  std::vector<uint8_t> leq_;  // n*n, row-major: leq_[a*n+b] = (a <= b)

  FinPoset() = default;
  explicit FinPoset(int size) : n(size), leq_(static_cast<size_t>(size) * size, 0) {}
  bool leq(int a, int b) const { return leq_[static_cast<size_t>(a) * n + b] != 0; }
  void set(int a, int b, bool v) { leq_[static_cast<size_t>(a) * n + b] = v ? 1 : 0; }
};

CheckReport validate_poset(const FinPoset& p);

/// Bounded-lattice data extracted from a poset: unique top/bottom and total
/// meet/join tables.
struct LatticeData {
  int top = -1, bot = -1;
  std::vector<int> join_, meet_;  // n*n tables
  int n = 0;
  int join(int a, int b) const { return join_[static_cast<size_t>(a) * n + b]; }
  int meet(int a, int b) const { return meet_[static_cast<size_t>(a) * n + b]; }
};

/// Poset-law violations are reported under "poset"; lattice failures (missing
/// top/bottom, missing binary meet/join) under "lattice". `data` present only
/// on a full pass.
struct LatticeCheck {
  CheckReport report;
  std::optional<LatticeData> data;
};
LatticeCheck check_bounded_lattice(const FinPoset& p);

/// Minimum of `subset` (an element of it below all others in it), if any.
/// A merely minimal element is not a minimum; absence of a minimum is
/// reported as nullopt either way.
std::optional<int> least_of(const FinPoset& p, const std::vector<int>& subset);
std::optional<int> greatest_of(const FinPoset& p, const std::vector<int>& subset);

}  // namespace forma

#endif
