#ifndef FORMA_BICATEGORY_HPP
#define FORMA_BICATEGORY_HPP

#include <optional>
#include <vector>

#include "forma/catforms.hpp"
#include "forma/fincat.hpp"
#include "forma/form.hpp"
#include "forma/report.hpp"

namespace forma {

/// A category with designated right (E) and left (M) morphism classes, plus
/// caches for the structural morphisms the axiom battery keeps reaching for.
struct Bicategory {
  CatPtr cat;
  std::vector<char> in_E, in_M;
  std::vector<std::vector<MorId>> initial_lefts;    // per codomain object
  std::vector<std::vector<MorId>> terminal_rights;  // per domain object
  std::vector<char> left_trivial, right_trivial;    // by the all-morphisms characterization

  bool right(MorId f) const { return in_E[f] != 0; }
  bool left(MorId f) const { return in_M[f] != 0; }
  std::vector<MorId> E_list() const;
  std::vector<MorId> M_list() const;
};

Bicategory make_bicategory(CatPtr cat, const std::vector<MorId>& E, const std::vector<MorId>& M);

/// (C^op, M, E): right and left classes swap.
Bicategory dual_bicategory(const Bicategory& b);

enum class BicatAxiom { B0, B1, B1a, B1p, B2, B2p, B3, B4, B5, B5p };
const char* to_string(BicatAxiom a);

/// Exhaustive enumeration of every diagram instance of the axiom's shape.
/// The dual variant evaluates the direct checker on the dual bicategory.
CheckReport check_axiom(const Bicategory& b, BicatAxiom which, bool dual = false);

/// B1 <-> B1' and B5 <-> B5' under B0, B2 <-> B2' under B0; the verdicts are
/// computed independently and compared.
CheckReport check_axiom_equivalences(const Bicategory& b);

struct TrivialObjects {
  std::vector<ObjId> left_trivial, right_trivial;
  CheckReport report;  // characterization agreement + terminal/initial analysis
};
TrivialObjects trivial_objects(const Bicategory& b);

struct BicatSynthesis {
  CheckReport report;
  std::optional<Form> form;
  // subquotient representatives of the kept clusters, per object
  std::vector<std::vector<std::pair<MorId, MorId>>> reps;
};

/// The subform of (E,M)-subquotients on classes [e,m] whose pushout of m
/// along e is an initial left morphism; verified noetherian with exact meet
/// decomposition.
BicatSynthesis synthesize_emd_form(const Bicategory& b);
/// Dual construction; verified noetherian with exact join decomposition.
BicatSynthesis synthesize_ejd_form(const Bicategory& b);

struct LeftExactAnalysis {
  bool left_exact = false;
  CheckReport report;
  // evaluated condition sets
  bool b2 = false, b4_dual = false;
  bool pointed = false;
  bool b1_star = false, b2_star = false, b5_star = false;
};
/// Left exactness through both routes (axioms and the transfer-operator pair),
/// the regular-epi/mono identifications when an initial object exists, and
/// the pointed reformulations of the remaining axioms when a zero object
/// exists.
LeftExactAnalysis left_exact_bicat_check(const Bicategory& b);

}  // namespace forma

#endif
