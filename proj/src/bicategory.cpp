#include "forma/bicategory.hpp"

#include <algorithm>
#include <sstream>

#include "forma/decomposition.hpp"
#include "forma/factorization.hpp"
#include "forma/orean.hpp"

namespace forma {

namespace {

std::string mref(const FinCategory& c, MorId f) {
  std::ostringstream os;
  os << f;
  if (!c.morphisms[f].name.empty()) os << " (" << c.morphisms[f].name << ")";
  return os.str();
}

}  // namespace

std::vector<MorId> Bicategory::E_list() const {
  std::vector<MorId> out;
  for (MorId f = 0; f < static_cast<MorId>(in_E.size()); ++f) {
    if (in_E[f]) out.push_back(f);
  }
  return out;
}

std::vector<MorId> Bicategory::M_list() const {
  std::vector<MorId> out;
  for (MorId f = 0; f < static_cast<MorId>(in_M.size()); ++f) {
    if (in_M[f]) out.push_back(f);
  }
  return out;
}

Bicategory make_bicategory(CatPtr cat, const std::vector<MorId>& E, const std::vector<MorId>& M) {
  Bicategory b;
  b.cat = std::move(cat);
  const FinCategory& c = *b.cat;
  b.in_E.assign(c.n_morphisms(), 0);
  b.in_M.assign(c.n_morphisms(), 0);
  for (MorId f : E) b.in_E[f] = 1;
  for (MorId f : M) b.in_M[f] = 1;

  b.initial_lefts.resize(c.n_objects());
  b.terminal_rights.resize(c.n_objects());
  for (MorId m = 0; m < c.n_morphisms(); ++m) {
    if (b.in_M[m]) {
      ObjId y = c.cod(m);
      bool ok = true;
      for (MorId m2 : c.into(y)) {
        if (!b.in_M[m2]) continue;
        int found = 0;
        for (MorId u : c.hom(c.dom(m), c.dom(m2))) {
          if (c.compose(m2, u) == m) ++found;
        }
        if (found != 1) {
          ok = false;
          break;
        }
      }
      if (ok) b.initial_lefts[y].push_back(m);
    }
    if (b.in_E[m]) {
      // terminal = the largest quotient: it factors through every other right
      // morphism out of the same object, uniquely
      ObjId x = c.dom(m);
      bool ok = true;
      for (MorId e2 : c.out_of(x)) {
        if (!b.in_E[e2]) continue;
        int found = 0;
        for (MorId u : c.hom(c.cod(e2), c.cod(m))) {
          if (c.compose(u, e2) == m) ++found;
        }
        if (found != 1) {
          ok = false;
          break;
        }
      }
      if (ok) b.terminal_rights[x].push_back(m);
    }
  }

  b.left_trivial.assign(c.n_objects(), 0);
  b.right_trivial.assign(c.n_objects(), 0);
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    bool lt = true, rt = true;
    for (MorId f : c.into(x)) {
      if (!b.in_E[f]) lt = false;
    }
    for (MorId f : c.out_of(x)) {
      if (!b.in_M[f]) rt = false;
    }
    b.left_trivial[x] = lt ? 1 : 0;
    b.right_trivial[x] = rt ? 1 : 0;
  }
  return b;
}

Bicategory dual_bicategory(const Bicategory& b) {
  std::vector<MorId> E, M;
  for (MorId f = 0; f < static_cast<MorId>(b.in_E.size()); ++f) {
    if (b.in_M[f]) E.push_back(f);
    if (b.in_E[f]) M.push_back(f);
  }
  return make_bicategory(opposite(b.cat), E, M);
}

const char* to_string(BicatAxiom a) {
  switch (a) {
    case BicatAxiom::B0: return "B0";
    case BicatAxiom::B1: return "B1";
    case BicatAxiom::B1a: return "B1a";
    case BicatAxiom::B1p: return "B1'";
    case BicatAxiom::B2: return "B2";
    case BicatAxiom::B2p: return "B2'";
    case BicatAxiom::B3: return "B3";
    case BicatAxiom::B4: return "B4";
    case BicatAxiom::B5: return "B5";
    case BicatAxiom::B5p: return "B5'";
  }
  return "?";
}

namespace {

CheckReport check_b0(const Bicategory& b) {
  CheckReport rep;
  const FinCategory& c = *b.cat;
  std::vector<MorId> E = b.E_list(), M = b.M_list();

  rep.merge(validate_mono_class(c, M));
  rep.merge(validate_epi_class(c, E));

  CheckItem& comp = rep.item("composition-closure");
  for (MorId g = 0; g < c.n_morphisms(); ++g) {
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      if (!c.composable(g, f)) continue;
      if (b.in_M[g] && b.in_M[f] && !b.in_M[c.compose(g, f)]) {
        comp.fail({"M", {{"g", mref(c, g)}, {"f", mref(c, f)}}, "left class not closed under composition"});
      }
      if (b.in_E[g] && b.in_E[f] && !b.in_E[c.compose(g, f)]) {
        comp.fail({"E", {{"g", mref(c, g)}, {"f", mref(c, f)}}, "right class not closed under composition"});
      }
    }
  }

  CheckItem& fact = rep.item("factorization");
  CheckItem& uniq = rep.item("factorization-uniqueness");
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    std::vector<std::pair<MorId, MorId>> facs;
    for (MorId e : c.out_of(c.dom(f))) {
      if (!b.in_E[e]) continue;
      for (MorId m : c.hom(c.cod(e), c.cod(f))) {
        if (b.in_M[m] && c.compose(m, e) == f) facs.push_back({e, m});
      }
    }
    if (facs.empty()) {
      fact.fail({"exists", {{"f", mref(c, f)}}, "no (right, left) factorization"});
      continue;
    }
    for (const auto& [e1, m1] : facs) {
      for (const auto& [e2, m2] : facs) {
        bool linked = false;
        for (MorId u : c.hom(c.cod(e1), c.cod(e2))) {
          if (is_iso(c, u) && c.compose(u, e1) == e2 && c.compose(m2, u) == m1) linked = true;
        }
        if (!linked) {
          uniq.fail({"unique", {{"f", mref(c, f)}}, "factorizations not linked by an isomorphism"});
        }
      }
    }
  }

  CheckItem& forms = rep.item("class-forms-orean");
  {
    CatFormResult msub = m_subobjects_form(b.cat, M);
    CatFormResult equo = e_quotients_form(b.cat, E);
    if (!check_orean(msub.form).report.pass) {
      forms.fail({"m-subobjects", {}, "form of M-subobjects is not orean (lattice/image structure missing)"});
    }
    if (!check_orean(equo.form).report.pass) {
      forms.fail({"e-quotients", {}, "form of E-quotients is not orean"});
    }
  }

  CheckItem& lims = rep.item("limits");
  for (MorId m : M) {
    for (MorId f : c.into(c.cod(m))) {
      if (!pullback(c, f, m)) {
        lims.fail({"pullback", {{"m", mref(c, m)}, {"f", mref(c, f)}},
                   "pullback of a left morphism along a morphism is missing"});
      }
    }
  }
  for (MorId e : E) {
    for (MorId f : c.out_of(c.dom(e))) {
      if (!pushout(c, e, f)) {
        lims.fail({"pushout", {{"e", mref(c, e)}, {"f", mref(c, f)}},
                   "pushout of a right morphism along a morphism is missing"});
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

CheckReport check_b1a(const Bicategory& b) {
  CheckReport rep;
  const FinCategory& c = *b.cat;
  CheckItem& it = rep.item("B1a");
  for (MorId m = 0; m < c.n_morphisms(); ++m) {
    if (!b.in_M[m]) continue;
    for (MorId e : c.into(c.cod(m))) {
      if (!b.in_E[e]) continue;
      auto sq = pullback(c, m, e);  // bottom=m, right=e; left leg = pulled-back e
      if (sq && !b.in_E[sq->left]) {
        it.fail({"B1a", {{"m", mref(c, m)}, {"e", mref(c, e)}},
                 "pullback of a right morphism along a left morphism is not right"});
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

CheckReport check_b1(const Bicategory& b) {
  CheckReport rep = check_b1a(b);
  const FinCategory& c = *b.cat;
  CheckItem& it = rep.item("B1");
  for (MorId e = 0; e < c.n_morphisms(); ++e) {
    if (!b.in_E[e]) continue;
    ObjId X = c.dom(e), Y = c.cod(e);
    for (MorId i : b.initial_lefts[Y]) {
      // all pullback squares of i along e
      for (ObjId w = 0; w < c.n_objects(); ++w) {
        for (MorId n : c.hom(w, X)) {
          for (MorId r : c.hom(w, c.dom(i))) {
            if (c.compose(e, n) != c.compose(i, r)) continue;
            CommutativeSquare base{r, e, n, i, SquareKind::plain};
            if (!is_pullback(c, base)) continue;
            // every left m through which n factors
            for (MorId m : c.into(X)) {
              if (!b.in_M[m]) continue;
              bool factors = false;
              for (MorId u : c.hom(w, c.dom(m))) {
                if (c.compose(m, u) == n) factors = true;
              }
              if (!factors) continue;
              // every (E, M) factorization of e∘m must be a pullback square
              MorId em = c.compose(e, m);
              for (MorId ep : c.out_of(c.dom(m))) {
                if (!b.in_E[ep]) continue;
                for (MorId mp : c.hom(c.cod(ep), Y)) {
                  if (!b.in_M[mp] || c.compose(mp, ep) != em) continue;
                  CommutativeSquare sq{ep, e, m, mp, SquareKind::plain};
                  if (!is_pullback(c, sq)) {
                    it.fail({"B1", {{"e", mref(c, e)}, {"m", mref(c, m)}},
                             "image square over a kernel-containing subobject is not a pullback"});
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

CheckReport check_b1p(const Bicategory& b) {
  CheckReport rep = check_b1a(b);
  const FinCategory& c = *b.cat;
  CheckItem& it = rep.item("B1'");
  // two horizontally composable squares with right verticals and left horizontals
  for (MorId m1 = 0; m1 < c.n_morphisms(); ++m1) {
    if (!b.in_M[m1]) continue;
    for (MorId m2 : c.out_of(c.cod(m1))) {
      if (!b.in_M[m2]) continue;
      for (MorId e1 = 0; e1 < c.n_morphisms(); ++e1) {
        if (!b.in_E[e1] || c.cod(e1) != c.dom(m1)) continue;
        for (MorId l1 : c.out_of(c.dom(e1))) {
          if (!b.in_M[l1]) continue;
          for (MorId e2 : c.out_of(c.cod(l1))) {
            if (!b.in_E[e2] || c.cod(e2) != c.cod(m1)) continue;
            if (c.compose(e2, l1) != c.compose(m1, e1)) continue;
            for (MorId l2 : c.out_of(c.cod(l1))) {
              if (!b.in_M[l2]) continue;
              for (MorId e3 : c.out_of(c.cod(l2))) {
                if (!b.in_E[e3] || c.cod(e3) != c.cod(m2)) continue;
                if (c.compose(e3, l2) != c.compose(m2, e2)) continue;
                CommutativeSquare right{l2, m2, e2, e3, SquareKind::plain};
                CommutativeSquare outer{c.compose(l2, l1), c.compose(m2, m1), e1, e3,
                                        SquareKind::plain};
                if (is_pullback(c, outer) && !is_pullback(c, right)) {
                  it.fail({"B1'", {{"m1", mref(c, m1)}, {"m2", mref(c, m2)}},
                           "outer rectangle a pullback but the right square is not"});
                }
              }
            }
          }
        }
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

CheckReport check_b2(const Bicategory& b, bool starred) {
  CheckReport rep;
  const FinCategory& c = *b.cat;
  CheckItem& it = rep.item(starred ? "B2" : "B2'");
  for (MorId i = 0; i < c.n_morphisms(); ++i) {
    if (!b.in_M[i]) continue;
    if (starred) {
      const auto& il = b.initial_lefts[c.cod(i)];
      if (std::find(il.begin(), il.end(), i) == il.end()) continue;
    }
    for (MorId e1 = 0; e1 < c.n_morphisms(); ++e1) {
      if (!b.in_E[e1] || c.cod(e1) != c.dom(i)) continue;
      for (MorId m1 : c.out_of(c.dom(e1))) {
        if (!b.in_M[m1]) continue;
        for (MorId e2 : c.out_of(c.cod(m1))) {
          if (!b.in_E[e2] || c.cod(e2) != c.cod(i)) continue;
          if (c.compose(e2, m1) != c.compose(i, e1)) continue;
          CommutativeSquare sq{m1, i, e1, e2, SquareKind::plain};
          if (is_pullback(c, sq) && !is_pushout(c, sq)) {
            it.fail({starred ? "B2" : "B2'",
                     {{"e", mref(c, e1)}, {"m", mref(c, m1)}},
                     "pullback of the required shape is not a pushout"});
          }
        }
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

CheckReport check_b3(const Bicategory& b) {
  CheckReport rep;
  const FinCategory& c = *b.cat;
  CheckItem& it = rep.item("B3");
  for (MorId m = 0; m < c.n_morphisms(); ++m) {
    if (!b.in_M[m]) continue;
    for (MorId e1 : c.out_of(c.dom(m))) {
      if (!b.in_E[e1]) continue;
      ObjId X = c.cod(e1);
      for (MorId e2 : c.out_of(c.cod(m))) {
        if (!b.in_E[e2]) continue;
        for (MorId u : c.hom(X, c.cod(e2))) {
          if (c.compose(u, e1) != c.compose(e2, m)) continue;
          CommutativeSquare sq{m, u, e1, e2, SquareKind::plain};
          if (!is_pushout(c, sq)) continue;
          for (MorId i : b.initial_lefts[X]) {
            if (!b.in_M[c.compose(u, i)]) {
              it.fail({"B3", {{"u", mref(c, u)}, {"i", mref(c, i)}},
                       "composite through the initial left morphism is not left"});
            }
          }
        }
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

CheckReport check_b4(const Bicategory& b) {
  CheckReport rep;
  const FinCategory& c = *b.cat;
  CheckItem& it = rep.item("B4");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    if (b.right_trivial[x] && !b.left_trivial[x]) {
      it.fail({"B4", {{"object", c.objects[x]}}, "right trivial object is not left trivial"});
    }
  }
  rep.recompute_verdict();
  return rep;
}

/// Shared enumeration for B5/B5': left diamond pullback + pushout trapezium +
/// a completed right diamond. In B5 the right diamond is required to be a
/// pullback and the top arrow arbitrary, in B5' the top arrow is right.
CheckReport check_b5(const Bicategory& b, bool primed) {
  CheckReport rep;
  const FinCategory& c = *b.cat;
  CheckItem& it = rep.item(primed ? "B5'" : "B5");
  for (MorId r1 = 0; r1 < c.n_morphisms(); ++r1) {
    if (!b.in_E[r1]) continue;
    ObjId A = c.dom(r1), L = c.cod(r1);
    for (MorId i1 = 0; i1 < c.n_morphisms(); ++i1) {
      if (c.dom(i1) != L) continue;
      const auto& ilE = b.initial_lefts[c.cod(i1)];
      if (std::find(ilE.begin(), ilE.end(), i1) == ilE.end()) continue;
      ObjId Eo = c.cod(i1);
      for (MorId m1 : c.out_of(A)) {
        if (!b.in_M[m1]) continue;
        ObjId C = c.cod(m1);
        for (MorId s1 : c.hom(C, Eo)) {
          if (!b.in_E[s1]) continue;
          if (c.compose(i1, r1) != c.compose(s1, m1)) continue;
          CommutativeSquare left_diamond{m1, i1, r1, s1, SquareKind::plain};
          if (!is_pullback(c, left_diamond)) continue;
          for (MorId cc : c.out_of(C)) {
            if (!b.in_E[cc]) continue;
            ObjId D = c.cod(cc);
            for (MorId e : c.out_of(Eo)) {
              if (!b.in_E[e]) continue;
              ObjId F = c.cod(e);
              for (MorId d2 : c.hom(D, F)) {
                if (!b.in_E[d2]) continue;
                if (c.compose(e, s1) != c.compose(d2, cc)) continue;
                CommutativeSquare trap{cc, e, s1, d2, SquareKind::plain};
                if (!is_pushout(c, trap)) continue;
                // top arrow and right diamond
                for (MorId t : c.out_of(A)) {
                  if (primed && !b.in_E[t]) continue;
                  ObjId B = c.cod(t);
                  for (MorId m2 : c.hom(B, D)) {
                    if (!b.in_M[m2] || c.compose(m2, t) != c.compose(cc, m1)) continue;
                    for (MorId r2 : c.out_of(B)) {
                      if (!b.in_E[r2]) continue;
                      for (MorId i2 = 0; i2 < c.n_morphisms(); ++i2) {
                        if (c.dom(i2) != c.cod(r2) || c.cod(i2) != F) continue;
                        const auto& ilF = b.initial_lefts[F];
                        if (std::find(ilF.begin(), ilF.end(), i2) == ilF.end()) continue;
                        if (c.compose(i2, r2) != c.compose(d2, m2)) continue;
                        CommutativeSquare right_diamond{r2, d2, m2, i2, SquareKind::plain};
                        if (primed) {
                          if (!is_pullback(c, right_diamond)) {
                            it.fail({"B5'", {{"t", mref(c, t)}},
                                     "right diamond fails to be a pullback"});
                          }
                        } else {
                          if (is_pullback(c, right_diamond) && !b.in_E[t]) {
                            it.fail({"B5", {{"t", mref(c, t)}},
                                     "top arrow of the double-diamond diagram is not right"});
                          }
                        }
                      }
                    }
                  }
                }
              }
            }
          }
        }
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

}  // namespace

CheckReport check_axiom(const Bicategory& b, BicatAxiom which, bool dual) {
  if (dual) return check_axiom(dual_bicategory(b), which, false);
  switch (which) {
    case BicatAxiom::B0: return check_b0(b);
    case BicatAxiom::B1: return check_b1(b);
    case BicatAxiom::B1a: return check_b1a(b);
    case BicatAxiom::B1p: return check_b1p(b);
    case BicatAxiom::B2: return check_b2(b, true);
    case BicatAxiom::B2p: return check_b2(b, false);
    case BicatAxiom::B3: return check_b3(b);
    case BicatAxiom::B4: return check_b4(b);
    case BicatAxiom::B5: return check_b5(b, false);
    case BicatAxiom::B5p: return check_b5(b, true);
  }
  return {};
}

CheckReport check_axiom_equivalences(const Bicategory& b) {
  CheckReport rep;
  bool b0 = check_axiom(b, BicatAxiom::B0).pass;
  CheckItem& it = rep.item("axiom-equivalences");
  if (!b0) {
    rep.notes.push_back("B0 fails; the stated equivalences are conditional on it");
    rep.recompute_verdict();
    return rep;
  }
  bool b1 = check_axiom(b, BicatAxiom::B1).pass;
  bool b1p = check_axiom(b, BicatAxiom::B1p).pass;
  bool b2 = check_axiom(b, BicatAxiom::B2).pass;
  bool b2p = check_axiom(b, BicatAxiom::B2p).pass;
  bool b5 = check_axiom(b, BicatAxiom::B5).pass;
  bool b5p = check_axiom(b, BicatAxiom::B5p).pass;
  if (b1 != b1p) it.fail({"B1-B1'", {}, "B1 and B1' disagree under B0"});
  if (b2 != b2p) it.fail({"B2-B2'", {}, "B2 and B2' disagree under B0"});
  if (b5 != b5p) it.fail({"B5-B5'", {}, "B5 and B5' disagree under B0"});
  rep.recompute_verdict();
  return rep;
}

TrivialObjects trivial_objects(const Bicategory& b) {
  TrivialObjects out;
  const FinCategory& c = *b.cat;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    if (b.left_trivial[x]) out.left_trivial.push_back(x);
    if (b.right_trivial[x]) out.right_trivial.push_back(x);
  }

  // agreement with the initial-left / terminal-right characterizations
  CheckItem& agree = out.report.item("characterization-agreement");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    bool has_init_left = false;
    for (ObjId y = 0; y < c.n_objects(); ++y) {
      for (MorId m : b.initial_lefts[y]) {
        if (c.dom(m) == x) has_init_left = true;
      }
    }
    if (has_init_left != (b.left_trivial[x] != 0)) {
      agree.fail({"left-trivial", {{"object", c.objects[x]}},
                  "domain-of-initial-left and all-morphisms-right characterizations disagree"});
    }
    bool has_term_right = false;
    for (ObjId y = 0; y < c.n_objects(); ++y) {
      for (MorId e : b.terminal_rights[y]) {
        if (c.cod(e) == x) has_term_right = true;
      }
    }
    if (has_term_right != (b.right_trivial[x] != 0)) {
      agree.fail({"right-trivial", {{"object", c.objects[x]}},
                  "codomain-of-terminal-right and all-morphisms-left characterizations disagree"});
    }
    // a left morphism into a left trivial object must be an isomorphism
    if (b.left_trivial[x]) {
      for (MorId m : c.into(x)) {
        if (b.in_M[m] && !is_iso(c, m)) {
          agree.fail({"left-iso", {{"object", c.objects[x]}},
                      "left morphism into a left trivial object is not an isomorphism"});
        }
      }
    }
  }

  // terminal-object analysis
  auto T = terminal_object(c);
  if (T) {
    CheckItem& term = out.report.item("terminal-analysis");
    if (!b.right_trivial[*T]) {
      term.fail({"terminal-right-trivial", {{"object", c.objects[*T]}},
                 "a terminal object must be right trivial"});
    }
    bool b4 = check_axiom(b, BicatAxiom::B4).pass;
    bool all_terminals_left_trivial = true;
    bool into_terminal_right = true;
    bool right_trivial_is_terminal = true;
    for (ObjId x = 0; x < c.n_objects(); ++x) {
      bool terminal_here = true;
      for (ObjId y = 0; y < c.n_objects(); ++y) {
        if (c.hom(y, x).size() != 1) terminal_here = false;
      }
      if (terminal_here && !b.left_trivial[x]) all_terminals_left_trivial = false;
      if (terminal_here) {
        for (MorId f : c.into(x)) {
          if (!b.in_E[f]) into_terminal_right = false;
        }
      }
      if (b.right_trivial[x] && !terminal_here) right_trivial_is_terminal = false;
    }
    if (!(b4 == all_terminals_left_trivial && b4 == into_terminal_right &&
          b4 == right_trivial_is_terminal)) {
      term.fail({"equivalences", {}, "the terminal-object reformulations of B4 disagree"});
    }
  }
  auto I = initial_object(c);
  if (I) {
    CheckItem& init = out.report.item("initial-factorization");
    // factoring the unique morphism from the initial object through (E, M)
    // produces an initial left morphism
    for (ObjId y = 0; y < c.n_objects(); ++y) {
      MorId i = c.hom(*I, y).empty() ? -1 : c.hom(*I, y)[0];
      if (i < 0) continue;
      bool found_factor = false;
      for (MorId e : c.out_of(*I)) {
        if (!b.in_E[e]) continue;
        for (MorId m : c.hom(c.cod(e), y)) {
          if (!b.in_M[m] || c.compose(m, e) != i) continue;
          found_factor = true;
          const auto& il = b.initial_lefts[y];
          if (std::find(il.begin(), il.end(), m) == il.end()) {
            init.fail({"initial-left", {{"object", c.objects[y]}},
                       "the left part of the initial factorization is not an initial left morphism"});
          }
        }
      }
      if (!found_factor) {
        init.fail({"factorization", {{"object", c.objects[y]}},
                   "the morphism out of the initial object does not factor through (E, M)"});
      }
    }
  }
  out.report.recompute_verdict();
  return out;
}

BicatSynthesis synthesize_emd_form(const Bicategory& b) {
  BicatSynthesis out;
  const FinCategory& c = *b.cat;
  SubquotientsResult subq = subquotients_form(b.cat, b.E_list(), b.M_list());

  std::vector<std::vector<ClusterId>> sel(c.n_objects());
  out.reps.resize(c.n_objects());
  CheckItem& filt = out.report.item("pushout-filter");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (size_t k = 0; k < subq.reps[x].size(); ++k) {
      auto [e, m] = subq.reps[x][k];
      auto po = pushout(c, e, m);  // span (e: D->Q, m: D->X); bottom = pushed-forward m
      if (!po) {
        filt.fail({"pushout-missing", {{"e", mref(c, e)}, {"m", mref(c, m)}},
                   "pushout of the subquotient span is missing"});
        continue;
      }
      const auto& il = b.initial_lefts[c.cod(po->bottom)];
      if (std::find(il.begin(), il.end(), po->bottom) != il.end()) {
        sel[x].push_back(static_cast<ClusterId>(k));
        out.reps[x].push_back(subq.reps[x][k]);
      }
    }
  }
  SubformResult sub = subform(subq.form, sel);
  out.report.merge(sub.report);
  if (!sub.form) {
    out.report.recompute_verdict();
    return out;
  }
  sub.form->label = "emd-synthesis";

  auto oc = check_orean(*sub.form);
  CheckItem& ver = out.report.item("result-verification");
  if (!oc.orean) {
    ver.fail({"orean", {}, "synthesized subquotient form is not orean: " + oc.report.summary()});
  } else {
    if (!check_noetherian(*oc.orean).pass) {
      ver.fail({"noetherian", {}, "synthesized form is not noetherian"});
    }
    ExactBinaryCheck mc = exact_meet_check(*oc.orean);
    if (!mc.report.pass || !mc.decomposition || !mc.decomposition->exact) {
      ver.fail({"exact-meet", {}, "synthesized form lacks an exact meet decomposition"});
    }
  }
  out.report.recompute_verdict();
  out.form = std::move(*sub.form);
  return out;
}

BicatSynthesis synthesize_ejd_form(const Bicategory& b) {
  Bicategory bop = dual_bicategory(b);
  BicatSynthesis dual = synthesize_emd_form(bop);
  BicatSynthesis out;
  out.report = std::move(dual.report);
  out.reps = std::move(dual.reps);
  if (dual.form) {
    Form g = dual_form(*dual.form, b.cat);
    g.label = "ejd-synthesis";
    // re-verify on the direct side: noetherian with exact join decomposition
    auto oc = check_orean(g);
    CheckItem& ver = out.report.item("direct-side-verification");
    if (!oc.orean) {
      ver.fail({"orean", {}, "dualized synthesis is not orean"});
    } else {
      if (!check_noetherian(*oc.orean).pass) {
        ver.fail({"noetherian", {}, "dualized synthesis is not noetherian"});
      }
      ExactBinaryCheck jc = exact_join_check(*oc.orean);
      if (!jc.report.pass || !jc.decomposition || !jc.decomposition->exact) {
        ver.fail({"exact-join", {}, "dualized synthesis lacks an exact join decomposition"});
      }
    }
    out.report.recompute_verdict();
    out.form = std::move(g);
  }
  return out;
}

LeftExactAnalysis left_exact_bicat_check(const Bicategory& b) {
  LeftExactAnalysis out;
  const FinCategory& c = *b.cat;

  out.b2 = check_axiom(b, BicatAxiom::B2).pass;
  out.b4_dual = check_axiom(b, BicatAxiom::B4, true).pass;
  bool b0 = check_axiom(b, BicatAxiom::B0).pass;
  bool axiom_route = b0 && out.b2 && out.b4_dual;

  // operator route through the class forms
  CheckItem& routes = out.report.item("route-agreement");
  bool form_route = false;
  {
    CatFormResult msub = m_subobjects_form(b.cat, b.M_list());
    CatFormResult equo = e_quotients_form(b.cat, b.E_list());
    auto os = check_orean(msub.form);
    auto oe = check_orean(equo.form);
    if (b0 && os.orean && oe.orean) {
      FactorizationCheck fc = check_orean_factorization(*os.orean, *oe.orean);
      if (fc.fac) {
        form_route = pair_exactness(*os.orean, *oe.orean).left_exact;
      }
    }
  }
  if (axiom_route != form_route) {
    routes.fail({"routes", {}, "axiom route (B0 ∧ B2 ∧ dual B4) disagrees with the operator route"});
  }
  out.left_exact = axiom_route;

  if (out.left_exact && initial_object(c)) {
    CheckItem& cls = out.report.item("class-identification");
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      if ((b.in_E[f] != 0) != is_regular_epi(c, f)) {
        cls.fail({"regular-epi", {{"f", mref(c, f)}},
                  "right morphisms must be exactly the regular epimorphisms"});
      }
      if ((b.in_M[f] != 0) != is_mono(c, f)) {
        cls.fail({"mono", {{"f", mref(c, f)}}, "left morphisms must be exactly the monomorphisms"});
      }
    }
  }

  // noetherian-subobjects equivalence: left exact + B1 + B5 iff the
  // M-subobjects form is noetherian
  if (out.left_exact) {
    CheckItem& nq = out.report.item("noetherian-equivalence");
    bool b1 = check_axiom(b, BicatAxiom::B1).pass;
    bool b5 = check_axiom(b, BicatAxiom::B5).pass;
    CatFormResult msub = m_subobjects_form(b.cat, b.M_list());
    auto os = check_orean(msub.form);
    bool noeth = os.orean && check_noetherian(*os.orean).pass;
    if ((b1 && b5) != noeth) {
      nq.fail({"noetherian", {}, "B1 ∧ B5 must match noetherian-ness of the subobjects form"});
    }
  }

  // pointed reformulations with monomorphisms as left and regular
  // epimorphisms as right morphisms
  auto Z = zero_object(c);
  out.pointed = Z.has_value();
  if (out.pointed) {
    std::vector<char> re(c.n_morphisms(), 0), mo(c.n_morphisms(), 0);
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      re[f] = is_regular_epi(c, f) ? 1 : 0;
      mo[f] = is_mono(c, f) ? 1 : 0;
    }
    auto zero_mor = [&](ObjId x, ObjId y) {
      MorId xz = c.hom(x, *Z)[0], zy = c.hom(*Z, y)[0];
      return c.compose(zy, xz);
    };
    auto kernel_of = [&](MorId f) -> std::optional<MorId> {
      // equalizer of f and the zero morphism: the largest mono k with f∘k zero
      ObjId X = c.dom(f), Y = c.cod(f);
      for (ObjId w = 0; w < c.n_objects(); ++w) {
        for (MorId k : c.hom(w, X)) {
          if (c.compose(f, k) != zero_mor(w, Y)) continue;
          bool universal = true;
          for (ObjId v = 0; v < c.n_objects() && universal; ++v) {
            for (MorId g : c.hom(v, X)) {
              if (c.compose(f, g) != zero_mor(v, Y)) continue;
              int found = 0;
              for (MorId u : c.hom(v, w)) {
                if (c.compose(k, u) == g) ++found;
              }
              if (found != 1) {
                universal = false;
                break;
              }
            }
          }
          if (universal) return k;
        }
      }
      return std::nullopt;
    };
    auto is_kernel_mor = [&](MorId m) {
      for (MorId f : c.out_of(c.cod(m))) {
        auto k = kernel_of(f);
        if (!k) continue;
        // same subobject?
        bool fwd = false, bwd = false;
        for (MorId u : c.hom(c.dom(m), c.dom(*k))) {
          if (c.compose(*k, u) == m) fwd = true;
        }
        for (MorId u : c.hom(c.dom(*k), c.dom(m))) {
          if (c.compose(m, u) == *k) bwd = true;
        }
        if (fwd && bwd) return true;
      }
      return false;
    };

    out.b1_star = true;
    out.b2_star = true;
    out.b5_star = true;
    // B1*: pullbacks of regular epis along monos are regular epis; a commuting
    // (mono, regular-epi) square whose kernel factors through the left mono is
    // a pullback
    for (MorId m = 0; m < c.n_morphisms(); ++m) {
      if (!mo[m]) continue;
      for (MorId e : c.into(c.cod(m))) {
        if (!re[e]) continue;
        auto sq = pullback(c, m, e);
        if (sq && !re[sq->left]) out.b1_star = false;
      }
    }
    for (MorId m = 0; m < c.n_morphisms(); ++m) {
      if (!mo[m]) continue;
      for (MorId etop : c.out_of(c.dom(m))) {
        if (!re[etop]) continue;
        for (MorId mp : c.out_of(c.cod(etop))) {
          if (!mo[mp]) continue;
          for (MorId e : c.hom(c.cod(m), c.cod(mp))) {
            if (!re[e] || c.compose(mp, etop) != c.compose(e, m)) continue;
            auto k = kernel_of(e);
            if (!k) continue;
            bool k_through_m = false;
            for (MorId u : c.hom(c.dom(*k), c.dom(m))) {
              if (c.compose(m, u) == *k) k_through_m = true;
            }
            if (!k_through_m) continue;
            CommutativeSquare sq{etop, e, m, mp, SquareKind::plain};
            if (!is_pullback(c, sq)) out.b1_star = false;
          }
        }
      }
    }
    // B2*: every regular epi is a cokernel of its kernel
    for (MorId e = 0; e < c.n_morphisms(); ++e) {
      if (!re[e]) continue;
      auto k = kernel_of(e);
      if (!k) {
        out.b2_star = false;
        continue;
      }
      ObjId X = c.dom(e);
      for (ObjId w = 0; w < c.n_objects(); ++w) {
        for (MorId g : c.hom(X, w)) {
          if (c.compose(g, *k) != zero_mor(c.dom(*k), w)) continue;
          int found = 0;
          for (MorId h : c.hom(c.cod(e), w)) {
            if (c.compose(h, e) == g) ++found;
          }
          if (found != 1) out.b2_star = false;
        }
      }
    }
    // B5*: in a commuting (mono, regular-epi) square, the right mono is a
    // kernel whenever the left one is
    for (MorId m = 0; m < c.n_morphisms(); ++m) {
      if (!mo[m] || !is_kernel_mor(m)) continue;
      for (MorId etop : c.out_of(c.dom(m))) {
        if (!re[etop]) continue;
        for (MorId mp : c.out_of(c.cod(etop))) {
          if (!mo[mp]) continue;
          for (MorId e : c.hom(c.cod(m), c.cod(mp))) {
            if (!re[e] || c.compose(mp, etop) != c.compose(e, m)) continue;
            if (!is_kernel_mor(mp)) out.b5_star = false;
          }
        }
      }
    }
  }

  out.report.recompute_verdict();
  return out;
}

}  // namespace forma
