#include "forma/factorization.hpp"

#include <algorithm>
#include <sstream>

#include "forma/catforms.hpp"

namespace forma {

namespace {

std::string mref(const FinCategory& c, MorId f) {
  std::ostringstream os;
  os << f;
  if (!c.morphisms[f].name.empty()) os << " (" << c.morphisms[f].name << ")";
  return os.str();
}

bool is_embedding_of_image(const OreanForm& of, MorId f) {
  const auto& embs = of.embeddings[of.cat().cod(f)][of.image(f)];
  return std::find(embs.begin(), embs.end(), f) != embs.end();
}

bool is_quotient_of_kernel(const OreanForm& of, MorId f) {
  const auto& quos = of.quotients[of.cat().dom(f)][of.kernel(f)];
  return std::find(quos.begin(), quos.end(), f) != quos.end();
}

}  // namespace

FactorizationCheck check_orean_factorization(const OreanForm& fs, const OreanForm& fe) {
  FactorizationCheck out;
  CheckReport& rep = out.report;
  const FinCategory& c = fs.cat();
  if (!fe.cat().structurally_equal(c)) {
    rep.item("base").fail({"base-mismatch", {}, "the two forms live over different categories"});
    rep.recompute_verdict();
    return out;
  }

  CheckItem& polarity = rep.item("polarity");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < fs.form().fiber_size(x); ++a) {
      if (!fs.conormal[x][a]) {
        polarity.fail({"fs-conormal", {{"cluster", fs.form().cluster_ref(x, a)}},
                       "left side must be a conormal form"});
      }
    }
    for (ClusterId r = 0; r < fe.form().fiber_size(x); ++r) {
      if (!fe.normal[x][r]) {
        polarity.fail({"fe-normal", {{"cluster", fe.form().cluster_ref(x, r)}},
                       "right side must be a normal form"});
      }
    }
  }

  CheckItem& facz = rep.item("factorization");
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    const auto& embs = fs.embeddings[c.cod(f)][fs.image(f)];
    const auto& quos = fe.quotients[c.dom(f)][fe.kernel(f)];
    bool ok = false;
    for (MorId m : embs) {
      for (MorId q : quos) {
        if (c.cod(q) == c.dom(m) && c.compose(m, q) == f) {
          ok = true;
          break;
        }
      }
      if (ok) break;
    }
    if (!ok) {
      facz.fail({"decompose", {{"f", mref(c, f)}},
                 "f does not factor as an fs-embedding after an fe-quotient"});
    }
  }

  OreanFactorization fac;
  fac.fs = &fs;
  fac.fe = &fe;
  fac.in_M.assign(c.n_morphisms(), 0);
  fac.in_E.assign(c.n_morphisms(), 0);
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    fac.in_M[f] = is_embedding_of_image(fs, f) ? 1 : 0;
    fac.in_E[f] = is_quotient_of_kernel(fe, f) ? 1 : 0;
  }

  // membership characterization: M by trivial fe-kernel, E by full fs-image
  CheckItem& chr = rep.item("class-characterization");
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    bool kbot = fe.kernel(f) == fe.bot(c.dom(f));
    bool itop = fs.image(f) == fs.top(c.cod(f));
    if (kbot != (fac.in_M[f] != 0)) {
      chr.fail({"M-kernel", {{"f", mref(c, f)}},
                "fs-embedding iff fe-kernel is a bottom cluster fails"});
    }
    if (itop != (fac.in_E[f] != 0)) {
      chr.fail({"E-image", {{"f", mref(c, f)}},
                "fe-quotient iff fs-image is a top cluster fails"});
    }
  }

  CheckItem& cls = rep.item("classes");
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    if (fac.in_M[f] && !fs.mor_mono[f]) {
      cls.fail({"M-mono", {{"f", mref(c, f)}}, "embedding that is not a monomorphism"});
    }
    if (fac.in_E[f] && !fe.mor_epi[f]) {
      cls.fail({"E-epi", {{"f", mref(c, f)}}, "quotient that is not an epimorphism"});
    }
    bool both = fac.in_M[f] && fac.in_E[f];
    if (both != (fs.mor_iso[f] != 0)) {
      cls.fail({"iso-intersection", {{"f", mref(c, f)}}, "E ∩ M must be the isomorphisms"});
    }
  }
  for (MorId g = 0; g < c.n_morphisms(); ++g) {
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      if (!c.composable(g, f)) continue;
      if (fac.in_M[g] && fac.in_M[f] && !fac.in_M[c.compose(g, f)]) {
        cls.fail({"M-compose", {{"g", mref(c, g)}, {"f", mref(c, f)}},
                  "embeddings not closed under composition"});
      }
      if (fac.in_E[g] && fac.in_E[f] && !fac.in_E[c.compose(g, f)]) {
        cls.fail({"E-compose", {{"g", mref(c, g)}, {"f", mref(c, f)}},
                  "quotients not closed under composition"});
      }
    }
  }

  // essential uniqueness of the (E, M) factorization
  CheckItem& uniq = rep.item("factorization-uniqueness");
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    std::vector<std::pair<MorId, MorId>> facs;  // (q, m)
    for (MorId q : c.out_of(c.dom(f))) {
      if (!fac.in_E[q]) continue;
      for (MorId m : c.hom(c.cod(q), c.cod(f))) {
        if (fac.in_M[m] && c.compose(m, q) == f) facs.push_back({q, m});
      }
    }
    for (const auto& [q1, m1] : facs) {
      for (const auto& [q2, m2] : facs) {
        bool linked = false;
        for (MorId u : c.hom(c.cod(q1), c.cod(q2))) {
          if (fs.mor_iso[u] && c.compose(u, q1) == q2 && c.compose(m2, u) == m1) linked = true;
        }
        if (!linked) {
          uniq.fail({"uniqueness", {{"f", mref(c, f)}},
                     "two (E,M)-factorizations not linked by an isomorphism"});
        }
      }
    }
  }

  // N1 restricted to the classes (in the matching form)
  CheckItem& n1cls = rep.item("N1-on-classes");
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    if (fac.in_M[f]) {
      for (ClusterId s = 0; s < fs.form().fiber_size(d); ++s) {
        if (fs.ii(f, fs.di(f, s)) != fs.join(d, s, fs.kernel(f))) {
          n1cls.fail({"embedding-join", {{"f", mref(c, f)}}, "N1-join fails for an embedding in fs"});
        }
      }
      for (ClusterId t = 0; t < fs.form().fiber_size(cd); ++t) {
        if (fs.di(f, fs.ii(f, t)) != fs.meet(cd, t, fs.image(f))) {
          n1cls.fail({"embedding-meet", {{"f", mref(c, f)}}, "N1-meet fails for an embedding in fs"});
        }
      }
      if (fs.kernel(f) != fs.bot(d)) {
        n1cls.fail({"embedding-kernel", {{"f", mref(c, f)}}, "fs-kernel of an embedding is not bottom"});
      }
    }
    if (fac.in_E[f]) {
      for (ClusterId s = 0; s < fe.form().fiber_size(d); ++s) {
        if (fe.ii(f, fe.di(f, s)) != fe.join(d, s, fe.kernel(f))) {
          n1cls.fail({"quotient-join", {{"f", mref(c, f)}}, "N1-join fails for a quotient in fe"});
        }
      }
      for (ClusterId t = 0; t < fe.form().fiber_size(cd); ++t) {
        if (fe.di(f, fe.ii(f, t)) != fe.meet(cd, t, fe.image(f))) {
          n1cls.fail({"quotient-meet", {{"f", mref(c, f)}}, "N1-meet fails for a quotient in fe"});
        }
      }
      if (fe.image(f) != fe.top(cd)) {
        n1cls.fail({"quotient-image", {{"f", mref(c, f)}}, "fe-image of a quotient is not top"});
      }
    }
  }

  // round trip through the categorical constructions
  CheckItem& round = rep.item("class-form-round-trip");
  {
    std::vector<MorId> M, E;
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      if (fac.in_M[f]) M.push_back(f);
      if (fac.in_E[f]) E.push_back(f);
    }
    CatFormResult msub = m_subobjects_form(fs.form_ptr->base, M);
    CatFormResult equo = e_quotients_form(fs.form_ptr->base, E);
    if (find_isomorphism(msub.form, fs.form()).status != IsoSearchResult::Status::found) {
      round.fail({"m-subobjects", {}, "form of M-subobjects is not isomorphic to fs"});
    }
    if (find_isomorphism(equo.form, fe.form()).status != IsoSearchResult::Status::found) {
      round.fail({"e-quotients", {}, "form of E-quotients is not isomorphic to fe"});
    }
  }

  // alpha / beta via images of embeddings / kernels of quotients,
  // representative independence included
  CheckItem& ab = rep.item("alpha-beta");
  fac.alpha.resize(c.n_objects());
  fac.beta.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    fac.alpha[x].assign(fs.form().fiber_size(x), -1);
    fac.beta[x].assign(fe.form().fiber_size(x), -1);
    for (ClusterId a = 0; a < fs.form().fiber_size(x); ++a) {
      for (MorId m : fs.embeddings[x][a]) {
        ClusterId v = fe.image(m);
        if (fac.alpha[x][a] == -1) {
          fac.alpha[x][a] = v;
        } else if (fac.alpha[x][a] != v) {
          ab.fail({"alpha-representative", {{"cluster", fs.form().cluster_ref(x, a)}},
                   "alpha depends on the chosen embedding"});
        }
      }
      if (fac.alpha[x][a] == -1) {
        ab.fail({"alpha-total", {{"cluster", fs.form().cluster_ref(x, a)}},
                 "conormal cluster without embedding"});
      }
    }
    for (ClusterId r = 0; r < fe.form().fiber_size(x); ++r) {
      for (MorId q : fe.quotients[x][r]) {
        ClusterId v = fs.kernel(q);
        if (fac.beta[x][r] == -1) {
          fac.beta[x][r] = v;
        } else if (fac.beta[x][r] != v) {
          ab.fail({"beta-representative", {{"cluster", fe.form().cluster_ref(x, r)}},
                   "beta depends on the chosen quotient"});
        }
      }
      if (fac.beta[x][r] == -1) {
        ab.fail({"beta-total", {{"cluster", fe.form().cluster_ref(x, r)}},
                 "normal cluster without quotient"});
      }
    }
  }
  if (ab.pass) {
    Operator alpha;
    alpha.src = &fs.form();
    alpha.dst = &fe.form();
    alpha.assign = fac.alpha;
    Operator beta;
    beta.src = &fe.form();
    beta.dst = &fs.form();
    beta.assign = fac.beta;
    if (!validate_operator(alpha).valid) {
      ab.fail({"alpha-operator", {}, "alpha is not monotone"});
    } else if (!operator_normality(alpha, fs, fe).conormal) {
      ab.fail({"alpha-conormal", {}, "alpha does not preserve images"});
    }
    if (!validate_operator(beta).valid) {
      ab.fail({"beta-operator", {}, "beta is not monotone"});
    } else if (!operator_normality(beta, fe, fs).normal) {
      ab.fail({"beta-normal", {}, "beta does not preserve kernels"});
    }
  }

  rep.recompute_verdict();
  if (rep.pass) out.fac = std::move(fac);
  return out;
}

ClusterId wyler_join(const OreanFactorization& fac, ObjId x, ClusterId a, ClusterId r) {
  const OreanForm& fs = *fac.fs;
  const OreanForm& fe = *fac.fe;
  MorId q = fe.quotients[x][r].front();
  return fs.ii(q, fs.di(q, a));
}

ClusterId wyler_meet(const OreanFactorization& fac, ObjId x, ClusterId a, ClusterId r) {
  const OreanForm& fs = *fac.fs;
  const OreanForm& fe = *fac.fe;
  MorId m = fs.embeddings[x][a].front();
  return fe.di(m, fe.ii(m, r));
}

CheckReport check_wyler_laws(const OreanFactorization& fac) {
  CheckReport rep;
  const OreanForm& fs = *fac.fs;
  const OreanForm& fe = *fac.fe;
  const FinCategory& c = fs.cat();

  CheckItem& indep = rep.item("wyler/representative-independence");
  CheckItem& unit = rep.item("wyler/unit");
  CheckItem& idem = rep.item("wyler/idempotent");
  CheckItem& wbot = rep.item("wyler/bottom");
  CheckItem& wbeta = rep.item("wyler/beta");
  CheckItem& bjoin = rep.item("wyler/beta-join");

  for (ObjId x = 0; x < c.n_objects(); ++x) {
    const int ns = fs.form().fiber_size(x), ne = fe.form().fiber_size(x);
    for (ClusterId r = 0; r < ne; ++r) {
      for (ClusterId a = 0; a < ns; ++a) {
        ClusterId w = wyler_join(fac, x, a, r);
        for (MorId q : fe.quotients[x][r]) {
          if (fs.ii(q, fs.di(q, a)) != w) {
            indep.fail({"join-representative",
                        {{"A", fs.form().cluster_ref(x, a)}, {"R", fe.form().cluster_ref(x, r)}},
                        "Wyler join depends on the chosen quotient"});
          }
        }
        if (!fs.leq(x, a, w)) {
          unit.fail({"unit", {{"A", fs.form().cluster_ref(x, a)},
                              {"R", fe.form().cluster_ref(x, r)}}, "A∗R >= A fails"});
        }
        if (wyler_join(fac, x, w, r) != w) {
          idem.fail({"idempotent", {{"A", fs.form().cluster_ref(x, a)},
                                    {"R", fe.form().cluster_ref(x, r)}},
                     "(A∗R)∗R = A∗R fails"});
        }
      }
      for (ClusterId a = 0; a < ns; ++a) {
        ClusterId w = wyler_meet(fac, x, a, r);
        for (MorId m : fs.embeddings[x][a]) {
          if (fe.di(m, fe.ii(m, r)) != w) {
            indep.fail({"meet-representative",
                        {{"A", fs.form().cluster_ref(x, a)}, {"R", fe.form().cluster_ref(x, r)}},
                        "Wyler meet depends on the chosen embedding"});
          }
        }
        // order duals of the unit/idempotence laws
        if (!fe.leq(x, w, r)) {
          unit.fail({"meet-unit", {{"A", fs.form().cluster_ref(x, a)},
                                   {"R", fe.form().cluster_ref(x, r)}}, "A⊛R <= R fails"});
        }
        if (wyler_meet(fac, x, a, w) != w) {
          idem.fail({"meet-idempotent", {{"A", fs.form().cluster_ref(x, a)},
                                         {"R", fe.form().cluster_ref(x, r)}},
                     "A⊛(A⊛R) = A⊛R fails"});
        }
      }
      ClusterId br = fac.beta[x][r];
      if (wyler_join(fac, x, fs.bot(x), r) != br) {
        wbeta.fail({"beta-bottom", {{"R", fe.form().cluster_ref(x, r)}}, "beta(R) != ⊥∗R"});
      }
      if (wyler_join(fac, x, br, r) != br) {
        wbeta.fail({"beta-fixed", {{"R", fe.form().cluster_ref(x, r)}}, "beta(R)∗R != beta(R)"});
      }
      for (ClusterId s = 0; s < ne; ++s) {
        ClusterId rs = fe.join(x, r, s);
        ClusterId lhs = wyler_join(fac, x, fs.join(x, br, fac.beta[x][s]), rs);
        if (lhs != fac.beta[x][rs]) {
          bjoin.fail({"beta-join", {{"R", fe.form().cluster_ref(x, r)},
                                    {"S", fe.form().cluster_ref(x, s)}},
                      "(beta(R) ∨ beta(S)) ∗ (R∨S) != beta(R∨S)"});
        }
      }
    }
    for (ClusterId a = 0; a < ns; ++a) {
      if (wyler_join(fac, x, a, fe.bot(x)) != a) {
        wbot.fail({"bottom", {{"A", fs.form().cluster_ref(x, a)}}, "A∗⊥ != A"});
      }
      // the meet-side duals: ⊤ˢ⊛R = R and A⊛⊤ᵉ = alpha(A)
      if (wyler_meet(fac, x, a, fe.top(x)) != fac.alpha[x][a]) {
        wbeta.fail({"alpha-top", {{"A", fs.form().cluster_ref(x, a)}}, "A⊛⊤ != alpha(A)"});
      }
    }
    for (ClusterId r = 0; r < ne; ++r) {
      if (wyler_meet(fac, x, fs.top(x), r) != r) {
        wbot.fail({"meet-top", {{"R", fe.form().cluster_ref(x, r)}}, "⊤⊛R != R"});
      }
    }
  }

  // (A,R) -> A∗R is an operator on the product form
  CheckItem& oper = rep.item("wyler/operator");
  {
    Form prod = product(fs.form(), fe.form());
    Operator star;
    star.src = &prod;
    star.dst = &fs.form();
    star.assign.resize(c.n_objects());
    for (ObjId x = 0; x < c.n_objects(); ++x) {
      for (ClusterId p = 0; p < prod.fiber_size(x); ++p) {
        auto [a, r] = unpair_index(fe.form(), x, p);
        star.assign[x].push_back(wyler_join(fac, x, a, r));
      }
    }
    if (!validate_operator(star).valid) {
      oper.fail({"monotone", {}, "(A,R) -> A∗R is not monotone on fs x fe"});
    }
  }
  rep.recompute_verdict();
  return rep;
}

ExactnessFlags pair_exactness(const OreanForm& fs, const OreanForm& fe) {
  ExactnessFlags fl;
  auto alpha = forced_conormal_operator(fs, fe);
  auto beta = forced_normal_operator(fe, fs);
  if (!alpha || !beta) return fl;
  fl.semiexact = true;
  const FinCategory& c = fs.cat();
  fl.left_exact = true;
  fl.right_exact = true;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId r = 0; r < fe.form().fiber_size(x); ++r) {
      if (alpha->at(x, beta->at(x, r)) != r) fl.left_exact = false;
    }
    for (ClusterId a = 0; a < fs.form().fiber_size(x); ++a) {
      if (beta->at(x, alpha->at(x, a)) != a) fl.right_exact = false;
    }
  }
  fl.biexact = fl.left_exact && fl.right_exact;
  return fl;
}

CheckReport check_synthesis_conditions(const OreanFactorization& fac) {
  CheckReport rep;
  const OreanForm& fs = *fac.fs;
  const OreanForm& fe = *fac.fe;
  const FinCategory& c = fs.cat();

  auto alpha = [&](ObjId x, ClusterId a) { return fac.alpha[x][a]; };
  auto beta = [&](ObjId x, ClusterId r) { return fac.beta[x][r]; };

  // N1 on the normal side
  CheckItem& n1e = rep.item("N1(fe)");
  bool n1e_join = true, n1e_meet = true;
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    for (ClusterId s = 0; s < fe.form().fiber_size(d); ++s) {
      if (fe.ii(f, fe.di(f, s)) != fe.join(d, s, fe.kernel(f))) {
        n1e_join = false;
        n1e.fail({"join", {{"f", mref(c, f)}}, "N1-join fails on fe"});
      }
    }
    for (ClusterId t = 0; t < fe.form().fiber_size(cd); ++t) {
      if (fe.di(f, fe.ii(f, t)) != fe.meet(cd, t, fe.image(f))) {
        n1e_meet = false;
        n1e.fail({"meet", {{"f", mref(c, f)}}, "N1-meet fails on fe"});
      }
    }
  }

  // meet half of N1 on the conormal side (sufficient-route condition)
  CheckItem& n1sm = rep.item("N1-meet(fs)");
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId cd = c.cod(f);
    for (ClusterId t = 0; t < fs.form().fiber_size(cd); ++t) {
      if (fs.di(f, fs.ii(f, t)) != fs.meet(cd, t, fs.image(f))) {
        n1sm.fail({"meet", {{"f", mref(c, f)}}, "N1-meet fails on fs"});
      }
    }
  }

  // saturation stability under restriction along any morphism
  CheckItem& sat = rep.item("saturation-restriction");
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    (void)d;
    for (ClusterId a = 0; a < fs.form().fiber_size(cd); ++a) {
      for (ClusterId r = 0; r < fe.form().fiber_size(cd); ++r) {
        if (wyler_join(fac, cd, a, r) != a) continue;
        if (!fe.leq(cd, alpha(cd, a), r)) continue;
        if (!fs.leq(cd, a, fs.image(f))) continue;
        if (!fe.leq(cd, r, fe.image(f))) continue;
        if (wyler_join(fac, cd, fs.di(f, fs.ii(f, a)), r) != a) {
          sat.fail({"restriction", {{"f", mref(c, f)}, {"A", fs.form().cluster_ref(cd, a)},
                                    {"R", fe.form().cluster_ref(cd, r)}},
                    "(f·(A·f))∗R != A"});
        }
      }
    }
  }

  // projection form of the same condition
  CheckItem& psat = rep.item("projection-saturation");
  for (MorId e = 0; e < c.n_morphisms(); ++e) {
    if (!fac.in_E[e]) continue;
    ObjId cd = c.cod(e);
    for (ClusterId a = 0; a < fs.form().fiber_size(cd); ++a) {
      ClusterId al = alpha(cd, a);
      ClusterId sat1 = wyler_join(fac, cd, a, al);
      ClusterId sat2 = wyler_join(fac, cd, fs.di(e, fs.ii(e, a)), al);
      if (sat1 != a || sat2 != a) {
        psat.fail({"projection", {{"e", mref(c, e)}, {"A", fs.form().cluster_ref(cd, a)}},
                   "(e·(A·e))∗alpha(A) = A∗alpha(A) = A fails"});
      }
    }
  }

  // alpha preserves binary meets and bottoms
  CheckItem& am = rep.item("alpha-meets");
  CheckItem& abot = rep.item("alpha-bottoms");
  bool alpha_meets = true;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < fs.form().fiber_size(x); ++a) {
      for (ClusterId b = 0; b < fs.form().fiber_size(x); ++b) {
        if (alpha(x, fs.meet(x, a, b)) != fe.meet(x, alpha(x, a), alpha(x, b))) {
          alpha_meets = false;
          am.fail({"meet", {{"A", fs.form().cluster_ref(x, a)}, {"B", fs.form().cluster_ref(x, b)}},
                   "alpha(A∧B) != alpha(A) ∧ alpha(B)"});
        }
      }
    }
    if (alpha(x, fs.bot(x)) != fe.bot(x)) {
      abot.fail({"bottom", {{"object", c.objects[x]}}, "alpha(⊥) != ⊥"});
    }
  }

  // self-saturation law and the alpha-beta inflation law
  CheckItem& selfsat = rep.item("self-saturation");
  CheckItem& abinf = rep.item("alpha-beta-inflation");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < fs.form().fiber_size(x); ++a) {
      if (wyler_join(fac, x, a, alpha(x, a)) != a) {
        selfsat.fail({"self", {{"A", fs.form().cluster_ref(x, a)}}, "A∗alpha(A) != A"});
      }
    }
    for (ClusterId r = 0; r < fe.form().fiber_size(x); ++r) {
      if (!fe.leq(x, alpha(x, beta(x, r)), r)) {
        abinf.fail({"inflation", {{"R", fe.form().cluster_ref(x, r)}}, "R >= alpha(beta(R)) fails"});
      }
    }
  }

  // derived law families
  CheckItem& aeq = rep.item("alpha-star/equivalence");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < fs.form().fiber_size(x); ++a) {
      for (ClusterId r = 0; r < fe.form().fiber_size(x); ++r) {
        bool lhs = fe.leq(x, alpha(x, a), r);
        bool rhs = fe.leq(x, alpha(x, wyler_join(fac, x, a, r)), r);
        if (lhs != rhs) {
          aeq.fail({"equivalence", {{"A", fs.form().cluster_ref(x, a)},
                                    {"R", fe.form().cluster_ref(x, r)}},
                    "R >= alpha(A) iff R >= alpha(A∗R) fails"});
        }
      }
    }
  }
  if (n1e_join) {
    CheckItem& ajoin = rep.item("alpha-star/join");
    bool law_self = true, law_absorb = true;
    for (ObjId x = 0; x < c.n_objects(); ++x) {
      for (ClusterId a = 0; a < fs.form().fiber_size(x); ++a) {
        if (wyler_join(fac, x, a, alpha(x, a)) != a) law_self = false;
        for (ClusterId r = 0; r < fe.form().fiber_size(x); ++r) {
          ClusterId w = wyler_join(fac, x, a, r);
          if (fe.join(x, alpha(x, a), r) != fe.join(x, alpha(x, w), r)) {
            ajoin.fail({"join", {{"A", fs.form().cluster_ref(x, a)},
                                 {"R", fe.form().cluster_ref(x, r)}},
                        "alpha(A)∨R != alpha(A∗R)∨R"});
          }
          if (wyler_join(fac, x, a, fe.join(x, alpha(x, a), r)) != w) law_absorb = false;
        }
      }
    }
    CheckItem& laweq = rep.item("alpha-star/law-equivalence");
    if (law_self != law_absorb) {
      laweq.fail({"law-equivalence", {},
                  "B = B∗alpha(B) for all B must be equivalent to A∗R = A∗(alpha(A)∨R) for all A,R"});
    }
  }
  if (n1e_join && n1e_meet) {
    CheckItem& ainv = rep.item("alpha-star/inverse-image");
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      ObjId d = c.dom(f);
      for (ClusterId a = 0; a < fs.form().fiber_size(d); ++a) {
        for (ClusterId r = 0; r < fe.form().fiber_size(d); ++r) {
          if (!fe.leq(d, fe.kernel(f), r)) continue;
          ClusterId lhs = fs.ii(f, wyler_join(fac, c.cod(f), fs.di(f, a), fe.di(f, r)));
          if (lhs != wyler_join(fac, d, a, r)) {
            ainv.fail({"inverse-image", {{"f", mref(c, f)}}, "((f·A)∗(f·R))·f != A∗R"});
          }
        }
      }
    }
  }

  // meet-preservation equivalences (pullback formulations), requires N1(fe)
  if (n1e_join && n1e_meet) {
    CheckItem& mpe = rep.item("meet-preservation-equivalences");
    bool cond_b = true, cond_c = true, cond_d = true;
    for (MorId cm = 0; cm < c.n_morphisms(); ++cm) {
      if (!fac.in_M[cm]) continue;
      for (MorId dm = 0; dm < c.n_morphisms(); ++dm) {
        if (!fac.in_M[dm] || c.cod(dm) != c.cod(cm)) continue;
        auto sq = pullback(c, cm, dm);  // bottom=cm, right=dm, legs left/top
        if (!sq) continue;
        MorId a = sq->left, b = sq->top;
        ObjId X = c.dom(cm);
        for (ClusterId r = 0; r < fe.form().fiber_size(X); ++r) {
          if (fe.di(b, fe.ii(a, r)) != fe.ii(dm, fe.di(cm, r))) {
            cond_b = false;
            if (r == fe.top(X)) cond_c = false;
          }
        }
      }
    }
    // (d): alpha preserves inverse images along embeddings
    for (MorId dm = 0; dm < c.n_morphisms(); ++dm) {
      if (!fac.in_M[dm]) continue;
      ObjId Y = c.dom(dm), Z = c.cod(dm);
      for (ClusterId cc = 0; cc < fs.form().fiber_size(Z); ++cc) {
        if (fac.alpha[Y][fs.ii(dm, cc)] != fe.ii(dm, fac.alpha[Z][cc])) cond_d = false;
      }
    }
    if (!(alpha_meets == cond_b && cond_b == cond_c && cond_c == cond_d)) {
      mpe.fail({"equivalences", {},
                "meet preservation, pullback transfer, top transfer and inverse-image "
                "preservation must agree"});
    }
  }

  rep.recompute_verdict();
  return rep;
}

SynthesisResult construct_join_noetherian(const OreanFactorization& fac) {
  SynthesisResult out;
  CheckReport conds = check_synthesis_conditions(fac);
  if (!conds.pass) {
    out.report.item("pre/conditions")
        .fail({"conditions-not-verified", {}, "synthesis conditions fail: " + conds.summary()});
    out.report.recompute_verdict();
    return out;
  }
  const OreanForm& fs = *fac.fs;
  const OreanForm& fe = *fac.fe;
  const FinCategory& c = fs.cat();

  Form prod = product(fs.form(), fe.form());

  // closure route: (A,R) -> (A∗R, alpha(A) ∨ R)
  Operator kappa;
  kappa.src = &prod;
  kappa.dst = &prod;
  kappa.assign.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId p = 0; p < prod.fiber_size(x); ++p) {
      auto [a, r] = unpair_index(fe.form(), x, p);
      ClusterId a2 = wyler_join(fac, x, a, r);
      ClusterId r2 = fe.join(x, fac.alpha[x][a], r);
      kappa.assign[x].push_back(pair_index(fe.form(), x, a2, r2));
    }
  }
  CheckItem& kap = out.report.item("kappa-closure");
  OperatorFlags kfl = validate_operator(kappa);
  if (!kfl.valid) kap.fail({"operator", {}, "kappa is not monotone on the product"});
  if (!kfl.idempotent) kap.fail({"idempotent", {}, "kappa is not idempotent"});
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId p = 0; p < prod.fiber_size(x); ++p) {
      if (!prod.leq(x, p, kappa.at(x, p))) {
        kap.fail({"inflation", {{"cluster", prod.cluster_ref(x, p)}}, "kappa(P) >= P fails"});
      }
    }
  }

  // filter route: pairs with A∗R = A and alpha(A) <= R
  std::vector<std::vector<ClusterId>> sel(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId p = 0; p < prod.fiber_size(x); ++p) {
      auto [a, r] = unpair_index(fe.form(), x, p);
      if (wyler_join(fac, x, a, r) == a && fe.leq(x, fac.alpha[x][a], r)) sel[x].push_back(p);
    }
  }
  CheckItem& agree = out.report.item("kappa-agrees-with-filter");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    std::vector<ClusterId> fixed;
    for (ClusterId p = 0; p < prod.fiber_size(x); ++p) {
      if (kappa.at(x, p) == p) fixed.push_back(p);
    }
    if (fixed != sel[x]) {
      agree.fail({"agreement", {{"object", c.objects[x]}},
                  "kappa fixed points differ from the filtered pairs"});
    }
  }
  out.kept = sel;

  SubformResult sub = subform(prod, sel);
  out.report.merge(sub.report);
  if (!sub.form) {
    out.report.recompute_verdict();
    return out;
  }
  sub.form->label = "join-synthesis(" + fs.form().label + "," + fe.form().label + ")";

  OreanCheck oc = check_orean(*sub.form);
  CheckItem& orean_item = out.report.item("result-orean");
  if (!oc.report.pass) {
    orean_item.fail({"orean", {}, "synthesized form fails the orean battery: " + oc.report.summary()});
    out.report.recompute_verdict();
    return out;
  }
  const OreanForm& g = *oc.orean;
  CheckItem& noeth = out.report.item("result-noetherian");
  CheckReport nr = check_noetherian(g);
  if (!nr.pass) {
    noeth.fail({"noetherian", {}, "synthesized form fails the noetherian battery: " + nr.summary()});
  }

  // conormal clusters are (A, alpha(A)); normal clusters are (beta(R), R)
  CheckItem& shapes = out.report.item("cluster-shapes");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (size_t k = 0; k < sel[x].size(); ++k) {
      auto [a, r] = unpair_index(fe.form(), x, sel[x][k]);
      bool conormal_shape = (r == fac.alpha[x][a]);
      bool normal_shape = (a == fac.beta[x][r]);
      if (g.conormal[x][static_cast<int>(k)] != (conormal_shape ? 1 : 0)) {
        shapes.fail({"conormal-shape", {{"cluster", sub.form->cluster_ref(x, static_cast<int>(k))}},
                     "conormal clusters must be exactly the pairs (A, alpha(A))"});
      }
      if (g.normal[x][static_cast<int>(k)] != (normal_shape ? 1 : 0)) {
        shapes.fail({"normal-shape", {{"cluster", sub.form->cluster_ref(x, static_cast<int>(k))}},
                     "normal clusters must be exactly the pairs (beta(R), R)"});
      }
    }
  }

  out.report.recompute_verdict();
  out.g = std::move(*sub.form);
  return out;
}

}  // namespace forma
