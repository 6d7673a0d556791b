#ifndef FORMA_FACTORIZATION_HPP
#define FORMA_FACTORIZATION_HPP

#include <optional>
#include <vector>

#include "forma/orean.hpp"

namespace forma {

/// A conormal orean form and a normal orean form over the same base through
/// which every morphism factors (embedding ∘ quotient). Carries the derived
/// morphism classes and the canonical operators between the two sides.
struct OreanFactorization {
  const OreanForm* fs = nullptr;  // conormal side
  const OreanForm* fe = nullptr;  // normal side
  std::vector<char> in_M;         // fs-embeddings
  std::vector<char> in_E;         // fe-quotients
  std::vector<std::vector<ClusterId>> alpha;  // per object: fs cluster -> fe cluster
  std::vector<std::vector<ClusterId>> beta;   // per object: fe cluster -> fs cluster
};

struct FactorizationCheck {
  CheckReport report;
  std::optional<OreanFactorization> fac;
};

/// Verifies polarity of the two sides, the factorization of every morphism,
/// the kernel/image characterization of the classes, closure under
/// composition, proper-factorization-system laws, the round-trip
/// isomorphisms with the categorical subobject/quotient forms, and
/// materializes the image/kernel transfer operators.
FactorizationCheck check_orean_factorization(const OreanForm& fs, const OreanForm& fe);

/// (π_R ·ˢ A) ·ˢ π_R for the least quotient representative of R.
ClusterId wyler_join(const OreanFactorization& fac, ObjId x, ClusterId a, ClusterId r);
/// ι_A ·ᵉ (R ·ᵉ ι_A), the order dual.
ClusterId wyler_meet(const OreanFactorization& fac, ObjId x, ClusterId a, ClusterId r);

/// Representative independence, the unit/idempotence/bottom laws, the
/// bottom-saturation description of beta and its join formula, and
/// monotonicity of (A,R) -> A∗R as an operator on the product form.
CheckReport check_wyler_laws(const OreanFactorization& fac);

struct ExactnessFlags {
  bool semiexact = false, left_exact = false, right_exact = false, biexact = false;
};
/// Existence of an image-preserving operator fs -> fe and a kernel-preserving
/// operator fe -> fs (forced formulas; unique when they exist), and whether
/// they invert each other on either side.
ExactnessFlags pair_exactness(const OreanForm& fs, const OreanForm& fe);

/// The condition battery for synthesizing a join-decomposed noetherian form:
/// N1 on the normal side, the saturation laws, meet/bottom preservation of
/// alpha, plus the derived law families and cross-route equivalences.
CheckReport check_synthesis_conditions(const OreanFactorization& fac);

struct SynthesisResult {
  CheckReport report;
  std::optional<Form> g;
  std::vector<std::vector<ClusterId>> kept;  // product cluster ids per object
};

/// The subform of fs x fe on pairs (A,R) with A∗R = A and alpha(A) <= R;
/// computed both as a filtered subform and as the fixed points of the closure
/// (A,R) -> (A∗R, alpha(A) ∨ R), which are asserted equal. The result is
/// verified noetherian with the expected conormal/normal cluster shapes.
SynthesisResult construct_join_noetherian(const OreanFactorization& fac);

}  // namespace forma

#endif
