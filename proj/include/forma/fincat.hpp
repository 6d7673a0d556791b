#ifndef FORMA_FINCAT_HPP
#define FORMA_FINCAT_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "forma/report.hpp"

namespace forma {

using ObjId = int;
using MorId = int;

/// A finite category as explicit tables. Objects and morphisms are dense ids;
/// composition is a flat table so every lookup is O(1). Immutable once built.
struct FinCategory {
  struct Mor {
    ObjId dom = -1;
    ObjId cod = -1;
    std::string name;  // free-form, used in witnesses and JSON
  };

  std::vector<std::string> objects;
  std::vector<Mor> morphisms;
  std::vector<MorId> identity;                  // per object
  std::vector<std::vector<MorId>> compose_tab;  // [g][f] = g∘f, -1 off composable pairs

  int n_objects() const { return static_cast<int>(objects.size()); }
  int n_morphisms() const { return static_cast<int>(morphisms.size()); }
  ObjId dom(MorId f) const { return morphisms[f].dom; }
  ObjId cod(MorId f) const { return morphisms[f].cod; }
  bool composable(MorId g, MorId f) const { return dom(g) == cod(f); }
  MorId compose(MorId g, MorId f) const { return compose_tab[g][f]; }

  /// Morphisms from a to b, ascending ids. Built lazily by finalize().
  const std::vector<MorId>& hom(ObjId a, ObjId b) const { return hom_[a][b]; }
  const std::vector<MorId>& into(ObjId b) const { return into_[b]; }
  const std::vector<MorId>& out_of(ObjId a) const { return out_[a]; }

  /// Populates hom caches; call after the tables are filled.
  void finalize();

  bool structurally_equal(const FinCategory& other) const;

 private:
  std::vector<std::vector<std::vector<MorId>>> hom_;
  std::vector<std::vector<MorId>> into_, out_;
};

using CatPtr = std::shared_ptr<const FinCategory>;

enum class SquareKind { plain, pullback, pushout };

/// Commutative square: compose(right, top) == compose(bottom, left).
///
///        top
///     P −−−−→ B
///  left|       |right
///     v       v
///     A −−−−→ C
///       bottom
struct CommutativeSquare {
  MorId top = -1, bottom = -1, left = -1, right = -1;
  SquareKind kind = SquareKind::plain;
};

/// Dangling-id and law (identity/associativity) checks; malformed tables are
/// reported under "table" items, law violations under their own names.
CheckReport validate_category(const FinCategory& c);

/// Reverses all morphisms; compose'(f,g) = compose(g,f). Involution.
FinCategory opposite(const FinCategory& c);
CatPtr opposite(const CatPtr& c);

struct MorphismFlags {
  bool mono = false, epi = false, split_mono = false, split_epi = false, iso = false;
};

/// Exhaustive cancellation / one-sided-inverse classification.
MorphismFlags morphism_flags(const FinCategory& c, MorId f);

bool is_mono(const FinCategory& c, MorId f);
bool is_epi(const FinCategory& c, MorId f);
bool is_iso(const FinCategory& c, MorId f);
std::optional<MorId> inverse_of(const FinCategory& c, MorId f);

/// True iff the commuting square (top,bottom,left,right) has the pullback
/// universal property against every cone in c.
bool is_pullback(const FinCategory& c, const CommutativeSquare& s);
bool is_pushout(const FinCategory& c, const CommutativeSquare& s);

/// Pullback of the cospan f: A→C, g: B→C. Returns the square with bottom=f,
/// right=g; deterministic (least apex object id, then least leg ids).
std::optional<CommutativeSquare> pullback(const FinCategory& c, MorId f, MorId g);

/// Pushout of the span f: C→A, g: C→B. Returns the square with left=f, top=g
/// (span vertex at the top-left corner); legs are bottom (out of A) and right
/// (out of B). Deterministic (least colimit object id, then least leg ids).
std::optional<CommutativeSquare> pushout(const FinCategory& c, MorId f, MorId g);

std::optional<ObjId> initial_object(const FinCategory& c);
std::optional<ObjId> terminal_object(const FinCategory& c);
std::optional<ObjId> zero_object(const FinCategory& c);

/// e is a coequalizer of some parallel pair (regular epimorphism).
bool is_regular_epi(const FinCategory& c, MorId e);
bool is_regular_mono(const FinCategory& c, MorId m);

}  // namespace forma

#endif
