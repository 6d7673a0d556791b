#ifndef FORMA_ZOO_HPP
#define FORMA_ZOO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "forma/fincat.hpp"
#include "forma/form.hpp"

namespace forma::zoo {

// Deterministic generators for the example catalogue. Carriers are {0..k-1},
// base points are element 0, and ids follow generation order, so the same
// call always produces identical tables.

/// Skeleton of finite sets: objects are cardinalities 0..n, morphisms all
/// functions. Morphism payloads are decoded in `name` ("S2->S3:[0,2]").
CatPtr finset_skeleton(int n);

/// Pointed sets of sizes 1..n with base point 0; morphisms fix the base point.
CatPtr pointed_finset_skeleton(int n);

/// One representative per isomorphism class of groups of order <= max_order
/// (max_order <= 4: 1, Z2, Z3, Z4, V4), with all homomorphisms. When
/// `cache_dir` is nonempty the morphism tables are read from / written to
/// "<cache_dir>/groups<max_order>.json".
CatPtr groups_category(int max_order, const std::string& cache_dir = "");

/// The k-chain 0 -> 1 -> ... -> k as a category.
CatPtr chain_category(int k);

// ---- forms over finset skeleta -------------------------------------------

/// Clusters in a k-set: subsets (bitmask order); B >=_f A iff f(A) ⊆ B.
Form subsets_form(CatPtr finset);

/// Clusters: equivalence relations (set partitions, deterministic order);
/// B >=_f A iff xAy implies f(x)Bf(y).
Form equivrel_form(CatPtr finset);

/// Clusters: pairs (A,R) with R an equivalence relation and A either empty or
/// one of R's classes; (B,S) >=_f (A,R) iff f(A) ⊆ B and xRy implies f(x)Sf(y).
Form class_pairs_form(CatPtr finset);

/// Clusters: palettes (nonempty antichains of subsets);
/// Q >=_f P iff every A in P has f(A) ⊆ B for some B in Q.
Form palettes_form(CatPtr finset);

/// Quotients of pointed sets, presented as equivalence relations on the
/// carrier with the congruence relation.
Form quotients_form(CatPtr pointed_finset);

/// Subgroups of each group, ordered by inclusion of element sets;
/// B >=_f A iff f(A) ⊆ B.
Form subgroup_form(CatPtr groups);

// ---- payload decoders ------------------------------------------------------

std::string subset_name(int k, std::uint32_t mask);
std::vector<std::uint32_t> subsets_of(int k);                  // bitmask order
std::vector<std::vector<int>> partitions_of(int k);            // class index per element
std::string partition_name(const std::vector<int>& part);

// ---- two-chain structures ---------------------------------------------------

struct TwoChainStructure {
  CatPtr cat;
  std::vector<MorId> E, M;  // bicategory classes
  Form form;                // the displayed noetherian form (fibers 1,2,3 / 1,3,2)
};

/// The two bicategory structures on the 2-chain together with their displayed
/// forms; the forms have fiber sizes (1,2,3) and (1,3,2) and are not
/// isomorphic.
std::pair<TwoChainStructure, TwoChainStructure> two_chain_structures();

/// All monomorphisms / epimorphisms / surjective-on-payload classes.
std::vector<MorId> all_monos(const FinCategory& c);
std::vector<MorId> all_epis(const FinCategory& c);
std::vector<MorId> all_isos(const FinCategory& c);

}  // namespace forma::zoo

#endif
