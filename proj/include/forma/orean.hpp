#ifndef FORMA_OREAN_HPP
#define FORMA_OREAN_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "forma/form.hpp"
#include "forma/poset.hpp"

namespace forma {

/// A validated orean form: bounded-lattice fibers plus total direct/inverse
/// image tables, with the cluster classification (images, kernels, interiors,
/// exteriors, embeddings, quotients) computed eagerly. Immutable.
struct OreanForm {
  std::shared_ptr<const Form> form_ptr;
  std::vector<LatticeData> lat;                 // per object
  std::vector<std::vector<ClusterId>> dimg;     // per morphism: S -> f·S
  std::vector<std::vector<ClusterId>> iimg;     // per morphism: T -> T·f
  std::vector<char> mor_mono, mor_epi, mor_iso;

  std::vector<std::vector<char>> conormal, normal;            // per object/cluster
  std::vector<std::vector<MorId>> conormal_wit, normal_wit;   // -1 when not
  std::vector<std::vector<std::vector<MorId>>> embeddings;    // per object/cluster
  std::vector<std::vector<std::vector<MorId>>> quotients;
  // interiors/exteriors; -1 records genuine absence of the extremum
  std::vector<std::vector<int>> cint, cext, nint, next;

  const Form& form() const { return *form_ptr; }
  const FinCategory& cat() const { return *form().base; }
  ClusterId top(ObjId x) const { return lat[x].top; }
  ClusterId bot(ObjId x) const { return lat[x].bot; }
  ClusterId join(ObjId x, ClusterId a, ClusterId b) const { return lat[x].join(a, b); }
  ClusterId meet(ObjId x, ClusterId a, ClusterId b) const { return lat[x].meet(a, b); }
  bool leq(ObjId x, ClusterId a, ClusterId b) const { return form().leq(x, a, b); }
  ClusterId di(MorId f, ClusterId s) const { return dimg[f][s]; }
  ClusterId ii(MorId f, ClusterId t) const { return iimg[f][t]; }
  ClusterId image(MorId f) const { return di(f, top(cat().dom(f))); }
  ClusterId kernel(MorId f) const { return ii(f, bot(cat().cod(f))); }
  /// Least embedding id of a conormal cluster, or -1.
  MorId embedding_of(ObjId x, ClusterId a) const {
    return embeddings[x][a].empty() ? -1 : embeddings[x][a].front();
  }
  MorId quotient_of(ObjId x, ClusterId s) const {
    return quotients[x][s].empty() ? -1 : quotients[x][s].front();
  }
};

struct OreanCheck {
  CheckReport report;
  std::optional<OreanForm> orean;
};

/// (O1) bounded-lattice fibers, (O2) relation splitting, (O3) direct/inverse
/// images, the Galois-connection laws, and the identity/isomorphism action
/// laws. `orean` present only when everything passes.
OreanCheck check_orean(const Form& f);

/// Classification packaged per cluster (conormal/normal + witnessing morphism,
/// interiors/exteriors; absent extrema recorded as nullopt).
struct ClusterClassification {
  std::vector<std::vector<char>> conormal, normal;
  std::vector<std::vector<MorId>> conormal_wit, normal_wit;
  std::vector<std::vector<int>> conormal_interior, conormal_exterior;
  std::vector<std::vector<int>> normal_interior, normal_exterior;
};
ClusterClassification classify(const OreanForm& of);

/// All embeddings of cluster `a` in object `x` (monomorphism pre-filter plus
/// exhaustive universal-property verification), ascending ids.
std::vector<MorId> find_embeddings(const OreanForm& of, ObjId x, ClusterId a);
std::vector<MorId> find_quotients(const OreanForm& of, ObjId x, ClusterId s);

struct HullResult {
  CheckReport report;          // subform validity + lattice-formula assertions
  std::optional<OreanForm> hull;
  std::vector<std::vector<ClusterId>> kept;  // original cluster ids per object
  bool orean = false;
};

/// Subform of conormal clusters. When it is orean, the interior/exterior
/// formulas for its bounds, meets, joins and images are verified against the
/// ambient form, and the existence conditions are cross-checked.
HullResult hull_conormal(const OreanForm& of);
HullResult hull_normal(const OreanForm& of);

struct StronglyOreanResult {
  bool strongly_orean = false;
  HullResult conormal_hull, normal_hull;
};
StronglyOreanResult check_strongly_orean(const OreanForm& of);

/// Independent verdicts for N1-join, N1-meet, N2 and N3, the reduced-form
/// (lattice-isomorphism) equivalences, and the restricted modular law when N1
/// holds.
CheckReport check_noetherian(const OreanForm& of);

struct ClosureValidation {
  OperatorFlags flags;
  bool inflationary = false;  // deflation for co-closure
  CheckReport report;
};
ClosureValidation validate_closure(const OreanForm& of, const Operator& t, bool co = false);

struct ClosedSubformResult {
  CheckReport report;
  std::optional<OreanForm> closed;
  std::vector<std::vector<ClusterId>> kept;
};
/// F_κ for an idempotent closure κ, with the derived orean structure
/// (closure of joins/direct images, inherited meets/inverse images) verified.
ClosedSubformResult closed_subform(const OreanForm& of, const Operator& t, bool co = false);

struct ClosureCensus {
  std::vector<Operator> operators;       // assignment tables; src/dst left null
  std::vector<char> idempotent;
  bool budget_exhausted = false;
  std::uint64_t nodes = 0;
};
/// Every operator with κS >= S (or <= for co=true); idempotency is not
/// required but is flagged. Backtracking with a node budget; exhaustion is an
/// explicit outcome distinct from a complete census.
ClosureCensus enumerate_closure_operators(const OreanForm& of, bool co = false,
                                          std::uint64_t budget = 100'000'000);

struct OperatorNormality {
  bool conormal = false, normal = false, binormal = false;
  CheckReport side_conditions;  // preservation of bounds; uniqueness on conormal sources
};
OperatorNormality operator_normality(const Operator& t, const OreanForm& src,
                                     const OreanForm& dst);

/// The unique candidate conormal operator src -> dst (defined by images) when
/// the source form is conormal; nullopt when the formula is ill-defined or
/// not monotone.
std::optional<Operator> forced_conormal_operator(const OreanForm& src, const OreanForm& dst);
std::optional<Operator> forced_normal_operator(const OreanForm& src, const OreanForm& dst);

struct SpecialPredicates {
  bool conormal_form = false, normal_form = false, binormal = false;
  bool antinormal = false, anticonormal = false, antibinormal = false;
  bool isoform = false;
  CheckReport report;  // equivalence battery + bottom/top subform isoform checks
};
SpecialPredicates special_predicates(const OreanForm& of);

/// Selection subforms on bottom (resp. top) clusters.
SubformResult bottom_subform(const OreanForm& of);
SubformResult top_subform(const OreanForm& of);

}  // namespace forma

#endif
