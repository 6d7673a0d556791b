#ifndef FORMA_FORM_HPP
#define FORMA_FORM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "forma/fincat.hpp"
#include "forma/poset.hpp"
#include "forma/report.hpp"

namespace forma {

using ClusterId = int;

/// Dense boolean matrix.
class BoolMat {
 public:
  BoolMat() = default;
  BoolMat(int rows, int cols)
      : rows_(rows), cols_(cols), bits_(static_cast<size_t>(rows) * cols, 0) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const { return bits_[static_cast<size_t>(r) * cols_ + c] != 0; }
  void set(int r, int c, bool v) { bits_[static_cast<size_t>(r) * cols_ + c] = v ? 1 : 0; }
  bool operator==(const BoolMat&) const = default;

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<uint8_t> bits_;
};

/// A cluster system over a finite base category: per-object cluster lists and,
/// for every morphism f (composites included), the relation  B ≥_f A  as a
/// boolean matrix over clusters(cod f) × clusters(dom f).
struct Form {
  CatPtr base;
  std::vector<std::vector<std::string>> clusters;  // per object: cluster names
  std::vector<BoolMat> rel;                        // per morphism
  std::string label;

  int fiber_size(ObjId x) const { return static_cast<int>(clusters[x].size()); }
  bool geq(MorId f, ClusterId b, ClusterId a) const { return rel[f].get(b, a); }
  /// Fiber order at x: a <= b.
  bool leq(ObjId x, ClusterId a, ClusterId b) const {
    return rel[base->identity[x]].get(b, a);
  }
  FinPoset fiber_poset(ObjId x) const;
  std::string cluster_ref(ObjId x, ClusterId a) const;
};

/// Per-object cluster map between two forms over the same base.
struct Operator {
  const Form* src = nullptr;
  const Form* dst = nullptr;
  std::vector<std::vector<ClusterId>> assign;  // per object, per src cluster

  ClusterId at(ObjId x, ClusterId a) const { return assign[x][a]; }
  bool operator==(const Operator& o) const { return assign == o.assign; }
};

struct OperatorFlags {
  bool shape_ok = false;  // assignment stays inside the fibers
  bool valid = false;     // monotone across every base morphism
  bool full = false;
  bool injective = false;
  bool idempotent = false;  // meaningful only when src == dst (same tables)
};

/// Per-object bijection witnessing F ≅ G over the same base.
struct FormIso {
  std::vector<std::vector<ClusterId>> map;  // per object: src cluster -> dst cluster
};

/// (F1) reflexivity at identities, (F2) composition closure, (F3) antisymmetry
/// at identities. Shape errors (matrix size mismatches) come first and
/// suppress the law checks.
CheckReport validate_form(const Form& f);

/// Form over the opposite base: rel^op(f) = transpose of rel(f).
Form dual_form(const Form& f, CatPtr opposite_base);
Form dual_form(const Form& f);

/// Restriction to a per-object cluster selection. (F1)/(F3) are inherited but
/// (F2) is not; the result is re-validated and a failing selection reports
/// "F2-broken-selection".
struct SubformResult {
  CheckReport report;
  std::optional<Form> form;
  std::vector<std::vector<ClusterId>> kept;  // per object: original ids kept
};
SubformResult subform(const Form& f, const std::vector<std::vector<ClusterId>>& selection);

/// Product form: clusters are pairs (index = a1 * |fib2| + a2), relation is the
/// conjunction of the component relations.
Form product(const Form& f1, const Form& f2);
ClusterId pair_index(const Form& f2, ObjId x, ClusterId a1, ClusterId a2);
std::pair<ClusterId, ClusterId> unpair_index(const Form& f2, ObjId x, ClusterId p);
Operator product_projection(const Form& prod, const Form& f1, const Form& f2, int which);

OperatorFlags validate_operator(const Operator& t);
Operator identity_operator(const Form& f);
Operator compose_operators(const Operator& second, const Operator& first);

bool validate_form_iso(const Form& f, const Form& g, const FormIso& iso);

struct IsoSearchResult {
  enum class Status { found, refuted, budget_exhausted };
  Status status = Status::refuted;
  std::optional<FormIso> iso;
  std::uint64_t nodes = 0;
};

/// Backtracking search for a relation-preserving per-object bijection.
/// Pre-filters on fiber sizes and fiber order profiles; reports the
/// lexicographically least isomorphism. Exceeding `budget` search nodes gives
/// an explicit budget_exhausted status, distinct from refutation.
IsoSearchResult find_isomorphism(const Form& f, const Form& g,
                                 std::uint64_t budget = 10'000'000);

/// Like find_isomorphism but per-object injections with the two-sided
/// (fullness) condition; witnesses that f embeds as a subform of g.
IsoSearchResult find_full_injective_operator(const Form& f, const Form& g,
                                             std::uint64_t budget = 10'000'000);

}  // namespace forma

#endif
