#ifndef FORMA_DECOMPOSITION_HPP
#define FORMA_DECOMPOSITION_HPP

#include <optional>
#include <vector>

#include "forma/factorization.hpp"
#include "forma/orean.hpp"

namespace forma {

/// Binary lattice terms through which a pair of idempotent operators can
/// recover every cluster.
enum class DecompTerm { top, bottom, first, second, meet, join };

const char* to_string(DecompTerm t);

/// A decomposition candidate: the satisfied-term set is computed, never
/// requested, and several terms can hold at once.
struct Decomposition {
  Operator ks, ke;
  std::vector<DecompTerm> terms;
  bool valid = false;      // D1 + at least one decomposing term
  bool semiexact = false;  // projections binormal and the side pair semiexact
  bool exact = false;      // additionally the subform inclusions conormal/normal
  CheckReport report;
  std::vector<std::vector<ClusterId>> sel_s, sel_e;  // closed clusters per side
};

/// Full classification of the pair (ks, ke) on an orean form.
Decomposition check_decomposition(const OreanForm& of, const Operator& ks, const Operator& ke);

/// Tests the three join-decomposability conditions directly (largest
/// conormal/normal clusters below every cluster, join recovery,
/// inverse-image and direct-image compatibility); on pass builds the unique
/// exact join decomposition and asserts its closure consequences.
struct ExactBinaryCheck {
  CheckReport report;
  std::optional<Decomposition> decomposition;
};
ExactBinaryCheck exact_join_check(const OreanForm& of);
ExactBinaryCheck exact_meet_check(const OreanForm& of);

/// The canonical join decomposition of fs x fe with parts fs x fe^⊥ and
/// fs^⊥ x fe; asserts the semiexactness and exactness biconditionals and the
/// binormality of the projections.
struct CanonicalJoinResult {
  CheckReport report;
  Form prod;
  std::optional<Decomposition> decomposition;
};
CanonicalJoinResult canonical_join_decomposition(const OreanForm& fs, const OreanForm& fe);

/// Searches nullary, left/right unary, join and meet exact decompositions in
/// that order; cross-checks uniqueness when several routes succeed and the
/// characterization theorems that apply to the found decomposition.
struct ExactDecompositionSearch {
  CheckReport report;
  std::optional<Decomposition> decomposition;
};
ExactDecompositionSearch find_exact_decomposition(const OreanForm& of);

/// Law battery for a noetherian form with an exact join decomposition:
/// Wyler-join fixed-point identities for the projections, reconstruction of
/// saturated pairs, inverse-image distribution, closure of the two sides
/// under binary meets and joins, and meet preservation of the four canonical
/// operators.
CheckReport join_decomposition_laws(const OreanForm& of);

}  // namespace forma

#endif
