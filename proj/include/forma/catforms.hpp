#ifndef FORMA_CATFORMS_HPP
#define FORMA_CATFORMS_HPP

#include <vector>

#include "forma/fincat.hpp"
#include "forma/form.hpp"

namespace forma {

/// Class preconditions for the constructions below: monos (epis) containing
/// the isomorphisms and closed under composition with them.
CheckReport validate_mono_class(const FinCategory& c, const std::vector<MorId>& M);
CheckReport validate_epi_class(const FinCategory& c, const std::vector<MorId>& E);

/// Form of M-subobjects: clusters in X are equivalence classes of M-morphisms
/// into X under mutual factorization; [t] >=_f [s] iff t u = f s for some u.
/// Representatives are the least morphism ids; `reps[x][k]` gives them.
struct CatFormResult {
  Form form;
  std::vector<std::vector<MorId>> reps;  // subobject/quotient representative
};
CatFormResult m_subobjects_form(CatPtr c, const std::vector<MorId>& M);
CatFormResult e_quotients_form(CatPtr c, const std::vector<MorId>& E);

/// Form of (E,M)-subquotients: clusters in X are classes [e,m] of pairs with a
/// common domain, cod m = X; the relation and the equivalence are by mutual
/// factorization squares. Representatives canonicalized by least (e,m).
struct SubquotientsResult {
  Form form;
  std::vector<std::vector<std::pair<MorId, MorId>>> reps;  // (e, m) per cluster
};
SubquotientsResult subquotients_form(CatPtr c, const std::vector<MorId>& E,
                                     const std::vector<MorId>& M);

}  // namespace forma

#endif
