#include "forma/orean.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace forma {

namespace {

std::string mref(const FinCategory& c, MorId f) {
  std::ostringstream os;
  os << f;
  if (!c.morphisms[f].name.empty()) os << " (" << c.morphisms[f].name << ")";
  return os.str();
}

std::vector<MorId> embeddings_impl(const OreanForm& of, ObjId x, ClusterId a) {
  const FinCategory& c = of.cat();
  std::vector<MorId> out;
  for (MorId f : c.into(x)) {
    if (of.image(f) != a || !of.mor_mono[f]) continue;
    bool ok = true;
    for (MorId f2 : c.into(x)) {
      if (!of.leq(x, of.image(f2), a)) continue;
      int found = 0;
      for (MorId g : c.hom(c.dom(f2), c.dom(f))) {
        if (c.compose(f, g) == f2) ++found;
      }
      if (found != 1) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(f);
  }
  return out;
}

std::vector<MorId> quotients_impl(const OreanForm& of, ObjId x, ClusterId s) {
  const FinCategory& c = of.cat();
  std::vector<MorId> out;
  for (MorId f : c.out_of(x)) {
    if (of.kernel(f) != s || !of.mor_epi[f]) continue;
    bool ok = true;
    for (MorId f2 : c.out_of(x)) {
      if (!of.leq(x, s, of.kernel(f2))) continue;
      int found = 0;
      for (MorId g : c.hom(c.cod(f), c.cod(f2))) {
        if (c.compose(g, f) == f2) ++found;
      }
      if (found != 1) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(f);
  }
  return out;
}

}  // namespace

std::vector<MorId> find_embeddings(const OreanForm& of, ObjId x, ClusterId a) {
  return embeddings_impl(of, x, a);
}

std::vector<MorId> find_quotients(const OreanForm& of, ObjId x, ClusterId s) {
  return quotients_impl(of, x, s);
}

OreanCheck check_orean(const Form& F) {
  OreanCheck out;
  CheckReport& rep = out.report;

  CheckReport pre = validate_form(F);
  if (!pre.pass) {
    rep.item("pre/form").fail({"pre", {}, "validate_form failed: " + pre.summary()});
    rep.recompute_verdict();
    return out;
  }

  const FinCategory& c = *F.base;
  OreanForm of;
  of.form_ptr = std::make_shared<Form>(F);
  const Form& FF = *of.form_ptr;

  // O1: every fiber a bounded lattice
  CheckItem& o1 = rep.item("O1");
  bool o1ok = true;
  of.lat.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    LatticeCheck lc = check_bounded_lattice(FF.fiber_poset(x));
    if (!lc.data) {
      o1ok = false;
      for (const auto& it : lc.report.items) {
        for (const auto& w : it.witnesses) {
          Witness ww = w;
          ww.refs.push_back({"object", c.objects[x]});
          ww.law = it.name + "/" + ww.law;
          o1.fail(ww);
        }
      }
    } else {
      of.lat[x] = *lc.data;
    }
  }

  // O2: C >=_gf A implies a mediating cluster exists
  CheckItem& o2 = rep.item("O2");
  for (MorId g = 0; g < c.n_morphisms(); ++g) {
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      if (!c.composable(g, f)) continue;
      MorId gf = c.compose(g, f);
      for (ClusterId a = 0; a < FF.fiber_size(c.dom(f)); ++a) {
        for (ClusterId cc = 0; cc < FF.fiber_size(c.cod(g)); ++cc) {
          if (!FF.geq(gf, cc, a)) continue;
          bool found = false;
          for (ClusterId b = 0; b < FF.fiber_size(c.cod(f)); ++b) {
            if (FF.geq(g, cc, b) && FF.geq(f, b, a)) {
              found = true;
              break;
            }
          }
          if (!found) {
            o2.fail({"O2",
                     {{"g", mref(c, g)}, {"f", mref(c, f)},
                      {"C", FF.cluster_ref(c.cod(g), cc)}, {"A", FF.cluster_ref(c.dom(f), a)}},
                     "C >=_gf A with no mediating cluster"});
          }
        }
      }
    }
  }

  // O3: direct and inverse images exist (minimum, not merely minimal)
  CheckItem& o3 = rep.item("O3");
  bool o3ok = true;
  of.dimg.assign(c.n_morphisms(), {});
  of.iimg.assign(c.n_morphisms(), {});
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    FinPoset pc = FF.fiber_poset(cd), pd = FF.fiber_poset(d);
    of.dimg[f].assign(FF.fiber_size(d), -1);
    of.iimg[f].assign(FF.fiber_size(cd), -1);
    for (ClusterId s = 0; s < FF.fiber_size(d); ++s) {
      std::vector<int> up;
      for (ClusterId t = 0; t < FF.fiber_size(cd); ++t) {
        if (FF.geq(f, t, s)) up.push_back(t);
      }
      auto mn = least_of(pc, up);
      if (!mn) {
        o3ok = false;
        o3.fail({"O3/direct", {{"f", mref(c, f)}, {"S", FF.cluster_ref(d, s)}},
                 up.empty() ? "no cluster T with T >=_f S"
                            : "minimal candidates exist but no minimum"});
      } else {
        of.dimg[f][s] = *mn;
      }
    }
    for (ClusterId t = 0; t < FF.fiber_size(cd); ++t) {
      std::vector<int> down;
      for (ClusterId s = 0; s < FF.fiber_size(d); ++s) {
        if (FF.geq(f, t, s)) down.push_back(s);
      }
      auto mx = greatest_of(pd, down);
      if (!mx) {
        o3ok = false;
        o3.fail({"O3/inverse", {{"f", mref(c, f)}, {"T", FF.cluster_ref(cd, t)}},
                 down.empty() ? "no cluster S with T >=_f S"
                              : "maximal candidates exist but no maximum"});
      } else {
        of.iimg[f][t] = *mx;
      }
    }
  }

  rep.recompute_verdict();
  if (!o1ok || !o3ok || !rep.pass) {
    rep.recompute_verdict();
    return out;
  }

  // Galois connection laws (derived, but re-checked rather than assumed)
  CheckItem& adj = rep.item("galois/adjunction");
  CheckItem& unit = rep.item("galois/unit");
  CheckItem& mono = rep.item("galois/monotone");
  CheckItem& gbot = rep.item("galois/bottom");
  CheckItem& gtop = rep.item("galois/top");
  CheckItem& gjoin = rep.item("galois/join");
  CheckItem& gmeet = rep.item("galois/meet");
  CheckItem& ident = rep.item("identity-action");
  CheckItem& isoact = rep.item("iso-action");

  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    const int nd = FF.fiber_size(d), nc = FF.fiber_size(cd);
    for (ClusterId s = 0; s < nd; ++s) {
      for (ClusterId t = 0; t < nc; ++t) {
        bool r = FF.geq(f, t, s);
        bool viaDi = FF.leq(cd, of.dimg[f][s], t);
        bool viaIi = FF.leq(d, s, of.iimg[f][t]);
        if (r != viaDi || r != viaIi) {
          adj.fail({"adjunction", {{"f", mref(c, f)}, {"S", FF.cluster_ref(d, s)},
                                   {"T", FF.cluster_ref(cd, t)}},
                    "T >= f·S, T >=_f S, T·f >= S disagree"});
        }
      }
      if (!FF.leq(d, s, of.iimg[f][of.dimg[f][s]])) {
        unit.fail({"unit", {{"f", mref(c, f)}, {"S", FF.cluster_ref(d, s)}}, "(f·S)·f >= S fails"});
      }
      for (ClusterId s2 = 0; s2 < nd; ++s2) {
        if (FF.leq(d, s, s2) && !FF.leq(cd, of.dimg[f][s], of.dimg[f][s2])) {
          mono.fail({"direct-monotone", {{"f", mref(c, f)}}, "direct image not monotone"});
        }
        if (of.dimg[f][of.lat[d].join(s, s2)] !=
            of.lat[cd].join(of.dimg[f][s], of.dimg[f][s2])) {
          gjoin.fail({"join", {{"f", mref(c, f)}, {"S", FF.cluster_ref(d, s)},
                               {"S'", FF.cluster_ref(d, s2)}},
                      "f·(S∨S') != f·S ∨ f·S'"});
        }
      }
    }
    for (ClusterId t = 0; t < nc; ++t) {
      if (!FF.leq(cd, of.dimg[f][of.iimg[f][t]], t)) {
        unit.fail({"counit", {{"f", mref(c, f)}, {"T", FF.cluster_ref(cd, t)}},
                   "T >= f·(T·f) fails"});
      }
      for (ClusterId t2 = 0; t2 < nc; ++t2) {
        if (FF.leq(cd, t, t2) && !FF.leq(d, of.iimg[f][t], of.iimg[f][t2])) {
          mono.fail({"inverse-monotone", {{"f", mref(c, f)}}, "inverse image not monotone"});
        }
        if (of.iimg[f][of.lat[cd].meet(t, t2)] !=
            of.lat[d].meet(of.iimg[f][t], of.iimg[f][t2])) {
          gmeet.fail({"meet", {{"f", mref(c, f)}, {"T", FF.cluster_ref(cd, t)},
                               {"T'", FF.cluster_ref(cd, t2)}},
                      "(T∧T')·f != T·f ∧ T'·f"});
        }
      }
    }
    if (of.dimg[f][of.lat[d].bot] != of.lat[cd].bot) {
      gbot.fail({"bottom", {{"f", mref(c, f)}}, "f·⊥ != ⊥"});
    }
    if (of.iimg[f][of.lat[cd].top] != of.lat[d].top) {
      gtop.fail({"top", {{"f", mref(c, f)}}, "⊤·f != ⊤"});
    }
  }
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    MorId idm = c.identity[x];
    for (ClusterId s = 0; s < FF.fiber_size(x); ++s) {
      if (of.dimg[idm][s] != s || of.iimg[idm][s] != s) {
        ident.fail({"identity", {{"cluster", FF.cluster_ref(x, s)}}, "1·S = S = S·1 fails"});
      }
    }
  }

  of.mor_mono.resize(c.n_morphisms());
  of.mor_epi.resize(c.n_morphisms());
  of.mor_iso.resize(c.n_morphisms());
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    of.mor_mono[f] = is_mono(c, f);
    of.mor_epi[f] = is_epi(c, f);
    of.mor_iso[f] = is_iso(c, f);
    if (of.mor_iso[f]) {
      MorId inv = *inverse_of(c, f);
      ObjId d = c.dom(f);
      for (ClusterId s = 0; s < FF.fiber_size(d); ++s) {
        if (of.iimg[f][of.dimg[f][s]] != s || of.dimg[f][s] != of.iimg[inv][s]) {
          isoact.fail({"iso", {{"f", mref(c, f)}, {"S", FF.cluster_ref(d, s)}},
                       "(f·S)·f = S or f·S = S·f⁻¹ fails for an isomorphism"});
        }
      }
    }
  }

  rep.recompute_verdict();
  if (!rep.pass) return out;

  // classification: images, kernels, embeddings, quotients, interiors/exteriors
  of.conormal.resize(c.n_objects());
  of.normal.resize(c.n_objects());
  of.conormal_wit.resize(c.n_objects());
  of.normal_wit.resize(c.n_objects());
  of.embeddings.resize(c.n_objects());
  of.quotients.resize(c.n_objects());
  of.cint.resize(c.n_objects());
  of.cext.resize(c.n_objects());
  of.nint.resize(c.n_objects());
  of.next.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    const int n = FF.fiber_size(x);
    of.conormal[x].assign(n, 0);
    of.normal[x].assign(n, 0);
    of.conormal_wit[x].assign(n, -1);
    of.normal_wit[x].assign(n, -1);
    for (MorId f : c.into(x)) {
      ClusterId im = of.image(f);
      if (!of.conormal[x][im]) {
        of.conormal[x][im] = 1;
        of.conormal_wit[x][im] = f;
      }
    }
    for (MorId f : c.out_of(x)) {
      ClusterId k = of.kernel(f);
      if (!of.normal[x][k]) {
        of.normal[x][k] = 1;
        of.normal_wit[x][k] = f;
      }
    }
    of.cint[x].assign(n, -1);
    of.cext[x].assign(n, -1);
    of.nint[x].assign(n, -1);
    of.next[x].assign(n, -1);
    FinPoset p = FF.fiber_poset(x);
    for (ClusterId a = 0; a < n; ++a) {
      std::vector<int> cb, ca, nb, na;
      for (ClusterId b = 0; b < n; ++b) {
        if (of.conormal[x][b] && p.leq(b, a)) cb.push_back(b);
        if (of.conormal[x][b] && p.leq(a, b)) ca.push_back(b);
        if (of.normal[x][b] && p.leq(b, a)) nb.push_back(b);
        if (of.normal[x][b] && p.leq(a, b)) na.push_back(b);
      }
      if (auto v = greatest_of(p, cb)) of.cint[x][a] = *v;
      if (auto v = least_of(p, ca)) of.cext[x][a] = *v;
      if (auto v = greatest_of(p, nb)) of.nint[x][a] = *v;
      if (auto v = least_of(p, na)) of.next[x][a] = *v;
    }
  }
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    const int n = FF.fiber_size(x);
    of.embeddings[x].resize(n);
    of.quotients[x].resize(n);
    for (ClusterId a = 0; a < n; ++a) {
      if (of.conormal[x][a]) of.embeddings[x][a] = embeddings_impl(of, x, a);
      if (of.normal[x][a]) of.quotients[x][a] = quotients_impl(of, x, a);
    }
  }

  out.orean = std::move(of);
  return out;
}

ClusterClassification classify(const OreanForm& of) {
  ClusterClassification cl;
  cl.conormal = of.conormal;
  cl.normal = of.normal;
  cl.conormal_wit = of.conormal_wit;
  cl.normal_wit = of.normal_wit;
  cl.conormal_interior = of.cint;
  cl.conormal_exterior = of.cext;
  cl.normal_interior = of.nint;
  cl.normal_exterior = of.next;
  return cl;
}

namespace {

HullResult hull_impl(const OreanForm& of, bool conormal_side) {
  HullResult out;
  const FinCategory& c = of.cat();
  const Form& F = of.form();
  std::vector<std::vector<ClusterId>> sel(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < F.fiber_size(x); ++a) {
      if ((conormal_side ? of.conormal[x][a] : of.normal[x][a]) != 0) sel[x].push_back(a);
    }
  }
  out.kept = sel;
  SubformResult sub = subform(F, sel);
  out.report.merge(sub.report);
  if (!sub.form) return out;
  sub.form->label = F.label + (conormal_side ? "_c" : "_n");

  OreanCheck oc = check_orean(*sub.form);
  out.orean = oc.report.pass;

  // extremum-existence conditions, cross-checked against the orean verdict
  bool exists_ok = true;
  const auto& interior = conormal_side ? of.cint : of.nint;
  const auto& exterior = conormal_side ? of.cext : of.next;
  const auto& flags = conormal_side ? of.conormal : of.normal;
  for (ObjId x = 0; x < c.n_objects() && exists_ok; ++x) {
    ClusterId extreme = conormal_side ? of.bot(x) : of.top(x);
    if (exterior[x][extreme] < 0 && conormal_side) exists_ok = false;
    if (interior[x][extreme] < 0 && !conormal_side) exists_ok = false;
    for (ClusterId a = 0; a < F.fiber_size(x) && exists_ok; ++a) {
      if (!flags[x][a]) continue;
      for (ClusterId b = 0; b < F.fiber_size(x); ++b) {
        if (!flags[x][b]) continue;
        if (conormal_side) {
          if (exterior[x][of.join(x, a, b)] < 0 || interior[x][of.meet(x, a, b)] < 0) {
            exists_ok = false;
            break;
          }
        } else {
          if (interior[x][of.meet(x, a, b)] < 0 || exterior[x][of.join(x, a, b)] < 0) {
            exists_ok = false;
            break;
          }
        }
      }
    }
  }
  for (MorId f = 0; f < c.n_morphisms() && exists_ok; ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    for (ClusterId a = 0; a < F.fiber_size(cd); ++a) {
      if (!flags[cd][a]) continue;
      if (conormal_side && interior[d][of.ii(f, a)] < 0) {
        exists_ok = false;
        break;
      }
      if (!conormal_side) {
        // dual construction: normal exterior of direct images of normal clusters
        (void)d;
      }
    }
    if (!conormal_side) {
      for (ClusterId a = 0; a < F.fiber_size(d); ++a) {
        if (!flags[d][a]) continue;
        if (exterior[cd][of.di(f, a)] < 0) {
          exists_ok = false;
          break;
        }
      }
    }
  }
  CheckItem& iff = out.report.item("hull/orean-iff-constructions");
  if (exists_ok != out.orean) {
    iff.fail({"hull-iff", {}, "the interior/exterior constructions exist but the hull orean verdict disagrees"});
  }

  if (!oc.orean) {
    out.report.recompute_verdict();
    return out;
  }
  OreanForm h = std::move(*oc.orean);

  // formula verification against the ambient form (conormal side shown; the
  // normal side is the order dual)
  CheckItem& formulas = out.report.item("hull/formulas");
  std::vector<std::vector<int>> back(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) back[x] = sel[x];
  auto amb = [&](ObjId x, ClusterId hc) { return back[x][hc]; };
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    if (conormal_side) {
      if (amb(x, h.top(x)) != of.top(x)) {
        formulas.fail({"top", {{"object", c.objects[x]}}, "hull top differs from ambient top"});
      }
      if (amb(x, h.bot(x)) != of.cext[x][of.bot(x)]) {
        formulas.fail({"bottom", {{"object", c.objects[x]}}, "hull bottom != conormal exterior of ⊥"});
      }
    } else {
      if (amb(x, h.bot(x)) != of.bot(x)) {
        formulas.fail({"bottom", {{"object", c.objects[x]}}, "hull bottom differs from ambient bottom"});
      }
      if (amb(x, h.top(x)) != of.nint[x][of.top(x)]) {
        formulas.fail({"top", {{"object", c.objects[x]}}, "hull top != normal interior of ⊤"});
      }
    }
    const int n = h.form().fiber_size(x);
    for (ClusterId a = 0; a < n; ++a) {
      for (ClusterId b = 0; b < n; ++b) {
        if (conormal_side) {
          if (amb(x, h.meet(x, a, b)) != of.cint[x][of.meet(x, amb(x, a), amb(x, b))]) {
            formulas.fail({"meet", {{"object", c.objects[x]}}, "hull meet != interior of ambient meet"});
          }
          if (amb(x, h.join(x, a, b)) != of.cext[x][of.join(x, amb(x, a), amb(x, b))]) {
            formulas.fail({"join", {{"object", c.objects[x]}}, "hull join != exterior of ambient join"});
          }
        } else {
          if (amb(x, h.join(x, a, b)) != of.next[x][of.join(x, amb(x, a), amb(x, b))]) {
            formulas.fail({"join", {{"object", c.objects[x]}}, "hull join != exterior of ambient join"});
          }
          if (amb(x, h.meet(x, a, b)) != of.nint[x][of.meet(x, amb(x, a), amb(x, b))]) {
            formulas.fail({"meet", {{"object", c.objects[x]}}, "hull meet != interior of ambient meet"});
          }
        }
      }
    }
  }
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    for (ClusterId a = 0; a < h.form().fiber_size(cd); ++a) {
      ClusterId expect = conormal_side ? of.cint[d][of.ii(f, amb(cd, a))] : of.ii(f, amb(cd, a));
      if (amb(d, h.ii(f, a)) != expect) {
        formulas.fail({"inverse-image", {{"f", mref(c, f)}}, "hull inverse image formula fails"});
      }
    }
    for (ClusterId a = 0; a < h.form().fiber_size(d); ++a) {
      ClusterId expect = conormal_side ? of.di(f, amb(d, a)) : of.next[cd][of.di(f, amb(d, a))];
      if (amb(cd, h.di(f, a)) != expect) {
        formulas.fail({"direct-image", {{"f", mref(c, f)}}, "hull direct image formula fails"});
      }
    }
  }
  out.report.recompute_verdict();
  out.hull = std::move(h);
  return out;
}

}  // namespace

HullResult hull_conormal(const OreanForm& of) { return hull_impl(of, true); }
HullResult hull_normal(const OreanForm& of) { return hull_impl(of, false); }

StronglyOreanResult check_strongly_orean(const OreanForm& of) {
  StronglyOreanResult r;
  r.conormal_hull = hull_conormal(of);
  r.normal_hull = hull_normal(of);
  r.strongly_orean = r.conormal_hull.orean && r.normal_hull.orean;
  return r;
}

CheckReport check_noetherian(const OreanForm& of) {
  CheckReport rep;
  const FinCategory& c = of.cat();
  const Form& F = of.form();

  CheckItem& n1j = rep.item("N1-join");
  CheckItem& n1m = rep.item("N1-meet");
  CheckItem& n2 = rep.item("N2");
  CheckItem& n3 = rep.item("N3");

  bool n1j_reduced = true, n1m_reduced = true;
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    ClusterId kf = of.kernel(f), imf = of.image(f);
    for (ClusterId s = 0; s < F.fiber_size(d); ++s) {
      if (of.ii(f, of.di(f, s)) != of.join(d, s, kf)) {
        n1j.fail({"N1-join", {{"f", mref(c, f)}, {"S", F.cluster_ref(d, s)}},
                  "(f·S)·f != S ∨ Ker f"});
      }
      if (of.leq(d, kf, s) && of.ii(f, of.di(f, s)) != s) n1j_reduced = false;
    }
    for (ClusterId t = 0; t < F.fiber_size(cd); ++t) {
      if (of.di(f, of.ii(f, t)) != of.meet(cd, t, imf)) {
        n1m.fail({"N1-meet", {{"f", mref(c, f)}, {"T", F.cluster_ref(cd, t)}},
                  "f·(T·f) != T ∧ Im f"});
      }
      if (of.leq(cd, t, imf) && of.di(f, of.ii(f, t)) != t) n1m_reduced = false;
    }
  }
  // lattice-isomorphism reduced forms must agree with the full formulas
  CheckItem& red = rep.item("N1/reduced-forms-agree");
  if (n1j_reduced != n1j.pass) {
    red.fail({"N1-join-reduced", {}, "restricted form of N1-join disagrees with the full formula"});
  }
  if (n1m_reduced != n1m.pass) {
    red.fail({"N1-meet-reduced", {}, "restricted form of N1-meet disagrees with the full formula"});
  }

  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    const auto& embs = of.embeddings[cd][of.image(f)];
    const auto& quos = of.quotients[d][of.kernel(f)];
    bool ok = false;
    for (MorId m : embs) {
      for (MorId q : quos) {
        if (c.cod(q) == c.dom(m) && c.compose(m, q) == f) {
          ok = true;
          n2.info({"factorization",
                   {{"f", mref(c, f)}, {"quotient", mref(c, q)}, {"embedding", mref(c, m)}},
                   "f = embedding ∘ quotient"});
          break;
        }
      }
      if (ok) break;
    }
    if (!ok) {
      n2.fail({"N2", {{"f", mref(c, f)}},
               embs.empty()   ? "image has no embedding"
               : quos.empty() ? "kernel has no quotient"
                              : "no embedding/quotient pair composes to f"});
    }
  }

  for (ObjId x = 0; x < c.n_objects(); ++x) {
    const int n = F.fiber_size(x);
    for (ClusterId a = 0; a < n; ++a) {
      for (ClusterId b = a; b < n; ++b) {
        if (of.normal[x][a] && of.normal[x][b] && !of.normal[x][of.join(x, a, b)]) {
          n3.fail({"N3/normal-join", {{"a", F.cluster_ref(x, a)}, {"b", F.cluster_ref(x, b)}},
                   "join of normal clusters not normal"});
        }
        if (of.conormal[x][a] && of.conormal[x][b] && !of.conormal[x][of.meet(x, a, b)]) {
          n3.fail({"N3/conormal-meet", {{"a", F.cluster_ref(x, a)}, {"b", F.cluster_ref(x, b)}},
                   "meet of conormal clusters not conormal"});
        }
      }
    }
  }

  // alternative N3 reading under N1+N2: quotient images of normal clusters stay normal
  if (n1j.pass && n1m.pass && n2.pass) {
    bool alt = true;
    for (ObjId x = 0; x < c.n_objects() && alt; ++x) {
      for (ClusterId s = 0; s < F.fiber_size(x) && alt; ++s) {
        if (!of.normal[x][s]) continue;
        for (ClusterId k = 0; k < F.fiber_size(x) && alt; ++k) {
          if (!of.normal[x][k]) continue;
          for (MorId q : of.quotients[x][k]) {
            if (!of.normal[c.cod(q)][of.di(q, s)]) {
              alt = false;
              break;
            }
          }
        }
      }
    }
    // the dual half: embeddings pull conormal clusters to conormal ones is not
    // part of the reformulation; only the quotient-image direction is stated
    CheckItem& remd = rep.item("N3/quotient-image-agrees");
    if (alt != n3.pass) {
      remd.fail({"N3-alt", {}, "quotient-image reformulation of N3 disagrees with N3"});
    }
  }

  if (n1j.pass && n1m.pass) {
    CheckItem& rml = rep.item("restricted-modular");
    for (ObjId x = 0; x < c.n_objects(); ++x) {
      const int n = F.fiber_size(x);
      for (ClusterId X = 0; X < n; ++X) {
        for (ClusterId Z = 0; Z < n; ++Z) {
          if (!of.leq(x, X, Z)) continue;
          for (ClusterId Y = 0; Y < n; ++Y) {
            bool applicable = (of.normal[x][X] && of.conormal[x][Y]) ||
                              (of.normal[x][Y] && of.conormal[x][Z]);
            if (!applicable) continue;
            if (of.meet(x, of.join(x, X, Y), Z) != of.join(x, X, of.meet(x, Y, Z))) {
              rml.fail({"restricted-modular",
                        {{"X", F.cluster_ref(x, X)}, {"Y", F.cluster_ref(x, Y)},
                         {"Z", F.cluster_ref(x, Z)}},
                        "(X∨Y)∧Z != X∨(Y∧Z)"});
            }
          }
        }
      }
    }
  }

  rep.recompute_verdict();
  return rep;
}

ClosureValidation validate_closure(const OreanForm& of, const Operator& t, bool co) {
  ClosureValidation v;
  v.flags = validate_operator(t);
  CheckItem& it = v.report.item(co ? "co-closure" : "closure");
  if (!v.flags.shape_ok || !v.flags.valid) {
    it.fail({"operator", {}, "not a valid operator (shape or monotonicity)"});
    v.report.recompute_verdict();
    return v;
  }
  v.inflationary = true;
  const FinCategory& c = of.cat();
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId s = 0; s < of.form().fiber_size(x); ++s) {
      bool ok = co ? of.leq(x, t.at(x, s), s) : of.leq(x, s, t.at(x, s));
      if (!ok) {
        v.inflationary = false;
        it.fail({co ? "deflation" : "inflation", {{"cluster", of.form().cluster_ref(x, s)}},
                 co ? "S >= κS fails" : "κS >= S fails"});
      }
    }
  }
  v.report.recompute_verdict();
  return v;
}

ClosedSubformResult closed_subform(const OreanForm& of, const Operator& t, bool co) {
  ClosedSubformResult out;
  ClosureValidation v = validate_closure(of, t, co);
  if (!v.report.pass || !v.flags.idempotent) {
    out.report.merge(v.report);
    out.report.item("closed-subform/pre")
        .fail({"pre", {}, "input is not an idempotent (co-)closure operator"});
    out.report.recompute_verdict();
    return out;
  }
  const FinCategory& c = of.cat();
  const Form& F = of.form();
  std::vector<std::vector<ClusterId>> sel(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
      if (t.at(x, s) == s) sel[x].push_back(s);
    }
  }
  out.kept = sel;
  SubformResult sub = subform(F, sel);
  out.report.merge(sub.report);
  if (!sub.form) return out;
  sub.form->label = F.label + (co ? "_co-closed" : "_closed");
  OreanCheck oc = check_orean(*sub.form);
  out.report.item("closed-subform/orean").pass = oc.report.pass;
  if (!oc.report.pass) {
    out.report.item("closed-subform/orean")
        .fail({"orean", {}, "closed subform fails the orean battery: " + oc.report.summary()});
    out.report.recompute_verdict();
    return out;
  }
  OreanForm h = std::move(*oc.orean);

  // derived structure: joins and direct images close (dually for co-closure),
  // meets and inverse images are inherited
  CheckItem& formulas = out.report.item("closed-subform/formulas");
  auto amb = [&](ObjId x, ClusterId a) { return sel[x][a]; };
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    const int n = h.form().fiber_size(x);
    for (ClusterId a = 0; a < n; ++a) {
      for (ClusterId b = 0; b < n; ++b) {
        ClusterId jo = amb(x, h.join(x, a, b)), me = amb(x, h.meet(x, a, b));
        ClusterId aj = of.join(x, amb(x, a), amb(x, b)), am = of.meet(x, amb(x, a), amb(x, b));
        if (!co) {
          if (jo != t.at(x, aj)) formulas.fail({"join", {{"object", c.objects[x]}}, "join^κ != κ(join)"});
          if (me != am) formulas.fail({"meet", {{"object", c.objects[x]}}, "meet not inherited"});
        } else {
          if (me != t.at(x, am)) formulas.fail({"meet", {{"object", c.objects[x]}}, "meet^κ != κ(meet)"});
          if (jo != aj) formulas.fail({"join", {{"object", c.objects[x]}}, "join not inherited"});
        }
      }
    }
  }
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    for (ClusterId a = 0; a < h.form().fiber_size(d); ++a) {
      ClusterId di = amb(cd, h.di(f, a));
      ClusterId expect = co ? of.di(f, amb(d, a)) : t.at(cd, of.di(f, amb(d, a)));
      if (di != expect) formulas.fail({"direct-image", {{"f", mref(c, f)}}, "f·^κ formula fails"});
    }
    for (ClusterId a = 0; a < h.form().fiber_size(cd); ++a) {
      ClusterId ii = amb(d, h.ii(f, a));
      ClusterId expect = co ? t.at(d, of.ii(f, amb(cd, a))) : of.ii(f, amb(cd, a));
      if (ii != expect) formulas.fail({"inverse-image", {{"f", mref(c, f)}}, "·^κ f formula fails"});
    }
  }
  out.report.recompute_verdict();
  out.closed = std::move(h);
  return out;
}

ClosureCensus enumerate_closure_operators(const OreanForm& of, bool co, std::uint64_t budget) {
  ClosureCensus census;
  const FinCategory& c = of.cat();
  const Form& F = of.form();

  struct Slot {
    ObjId x;
    ClusterId s;
    std::vector<ClusterId> candidates;
  };
  std::vector<Slot> slots;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
      Slot sl{x, s, {}};
      for (ClusterId t = 0; t < F.fiber_size(x); ++t) {
        if (co ? of.leq(x, t, s) : of.leq(x, s, t)) sl.candidates.push_back(t);
      }
      slots.push_back(std::move(sl));
    }
  }
  std::vector<std::vector<int>> asg(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) asg[x].assign(F.fiber_size(x), -1);

  // consistency of slot (x,s)=t against all already-assigned slots
  auto consistent = [&](ObjId x, ClusterId s, ClusterId img) {
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      ObjId d = c.dom(f), cd = c.cod(f);
      if (d == x) {
        for (ClusterId b = 0; b < F.fiber_size(cd); ++b) {
          ClusterId bi = (cd == x && b == s) ? img : asg[cd][b];
          if (bi < 0) continue;
          if (F.geq(f, b, s) && !F.geq(f, bi, img)) return false;
        }
      }
      if (cd == x) {
        for (ClusterId a = 0; a < F.fiber_size(d); ++a) {
          ClusterId ai = (d == x && a == s) ? img : asg[d][a];
          if (ai < 0) continue;
          if (F.geq(f, s, a) && !F.geq(f, img, ai)) return false;
        }
      }
    }
    return true;
  };

  std::function<void(size_t)> rec = [&](size_t i) {
    if (census.budget_exhausted) return;
    if (i == slots.size()) {
      Operator t;
      t.assign = asg;
      census.operators.push_back(std::move(t));
      return;
    }
    const Slot& sl = slots[i];
    for (ClusterId img : sl.candidates) {
      if (++census.nodes > budget) {
        census.budget_exhausted = true;
        return;
      }
      if (!consistent(sl.x, sl.s, img)) continue;
      asg[sl.x][sl.s] = img;
      rec(i + 1);
      asg[sl.x][sl.s] = -1;
      if (census.budget_exhausted) return;
    }
  };
  rec(0);

  for (auto& t : census.operators) {
    bool idem = true;
    for (ObjId x = 0; x < c.n_objects() && idem; ++x) {
      for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
        if (t.assign[x][t.assign[x][s]] != t.assign[x][s]) {
          idem = false;
          break;
        }
      }
    }
    census.idempotent.push_back(idem ? 1 : 0);
  }
  return census;
}

std::optional<Operator> forced_conormal_operator(const OreanForm& src, const OreanForm& dst) {
  const FinCategory& c = src.cat();
  Operator t;
  t.src = &src.form();
  t.dst = &dst.form();
  t.assign.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    t.assign[x].assign(src.form().fiber_size(x), -1);
  }
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId cd = c.cod(f);
    ClusterId a = src.image(f), b = dst.image(f);
    if (t.assign[cd][a] == -1) {
      t.assign[cd][a] = b;
    } else if (t.assign[cd][a] != b) {
      return std::nullopt;  // formula ill-defined
    }
  }
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < src.form().fiber_size(x); ++a) {
      if (t.assign[x][a] == -1) return std::nullopt;  // source not conormal
    }
  }
  OperatorFlags fl = validate_operator(t);
  if (!fl.valid) return std::nullopt;
  return t;
}

std::optional<Operator> forced_normal_operator(const OreanForm& src, const OreanForm& dst) {
  const FinCategory& c = src.cat();
  Operator t;
  t.src = &src.form();
  t.dst = &dst.form();
  t.assign.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    t.assign[x].assign(src.form().fiber_size(x), -1);
  }
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f);
    ClusterId a = src.kernel(f), b = dst.kernel(f);
    if (t.assign[d][a] == -1) {
      t.assign[d][a] = b;
    } else if (t.assign[d][a] != b) {
      return std::nullopt;
    }
  }
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < src.form().fiber_size(x); ++a) {
      if (t.assign[x][a] == -1) return std::nullopt;
    }
  }
  OperatorFlags fl = validate_operator(t);
  if (!fl.valid) return std::nullopt;
  return t;
}

OperatorNormality operator_normality(const Operator& t, const OreanForm& src,
                                     const OreanForm& dst) {
  OperatorNormality on;
  const FinCategory& c = src.cat();
  on.conormal = true;
  on.normal = true;
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    if (t.at(c.cod(f), src.image(f)) != dst.image(f)) on.conormal = false;
    if (t.at(c.dom(f), src.kernel(f)) != dst.kernel(f)) on.normal = false;
  }
  on.binormal = on.conormal && on.normal;

  CheckItem& remn = on.side_conditions.item("bound-preservation");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    if (on.conormal && t.at(x, src.top(x)) != dst.top(x)) {
      remn.fail({"top", {{"object", c.objects[x]}}, "conormal operator must preserve tops"});
    }
    if (on.normal && t.at(x, src.bot(x)) != dst.bot(x)) {
      remn.fail({"bottom", {{"object", c.objects[x]}}, "normal operator must preserve bottoms"});
    }
  }

  bool src_conormal = true;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < src.form().fiber_size(x); ++a) {
      if (!src.conormal[x][a]) src_conormal = false;
    }
  }
  if (src_conormal && on.conormal) {
    CheckItem& uniq = on.side_conditions.item("conormal-source-uniqueness");
    auto forced = forced_conormal_operator(src, dst);
    if (!forced || !(t == *forced)) {
      uniq.fail({"uniqueness", {}, "conormal operator differs from the image-forced formula"});
    }
    CheckItem& pres = on.side_conditions.item("direct-image-preservation");
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      ObjId d = c.dom(f), cd = c.cod(f);
      for (ClusterId a = 0; a < src.form().fiber_size(d); ++a) {
        if (t.at(cd, src.di(f, a)) != dst.di(f, t.at(d, a))) {
          pres.fail({"direct-image", {{"f", mref(c, f)}},
                     "conormal operator from conormal source must preserve direct images"});
        }
      }
    }
  }
  on.side_conditions.recompute_verdict();
  return on;
}

SubformResult bottom_subform(const OreanForm& of) {
  std::vector<std::vector<ClusterId>> sel(of.cat().n_objects());
  for (ObjId x = 0; x < of.cat().n_objects(); ++x) sel[x] = {of.bot(x)};
  return subform(of.form(), sel);
}

SubformResult top_subform(const OreanForm& of) {
  std::vector<std::vector<ClusterId>> sel(of.cat().n_objects());
  for (ObjId x = 0; x < of.cat().n_objects(); ++x) sel[x] = {of.top(x)};
  return subform(of.form(), sel);
}

SpecialPredicates special_predicates(const OreanForm& of) {
  SpecialPredicates sp;
  const FinCategory& c = of.cat();
  const Form& F = of.form();

  sp.conormal_form = true;
  sp.normal_form = true;
  sp.antinormal = true;
  sp.anticonormal = true;
  sp.isoform = true;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    if (F.fiber_size(x) != 1) sp.isoform = false;
    for (ClusterId a = 0; a < F.fiber_size(x); ++a) {
      if (!of.conormal[x][a]) sp.conormal_form = false;
      if (!of.normal[x][a]) sp.normal_form = false;
      if (of.normal[x][a] != (a == of.bot(x) ? 1 : 0)) sp.antinormal = false;
      if (of.conormal[x][a] != (a == of.top(x) ? 1 : 0)) sp.anticonormal = false;
    }
  }
  sp.binormal = sp.conormal_form && sp.normal_form;
  sp.antibinormal = sp.antinormal && sp.anticonormal;

  // isoform equivalence battery
  CheckItem& eq = sp.report.item("isoform-equivalences");
  bool top_is_bot = true;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    if (of.top(x) != of.bot(x)) top_is_bot = false;
  }
  bool v1 = sp.isoform;
  bool v2 = top_is_bot;
  bool v3 = sp.conormal_form && sp.anticonormal;
  bool v4 = sp.normal_form && sp.antinormal;
  bool v5 = sp.binormal && sp.antibinormal;
  if (!(v1 == v2 && v2 == v3 && v3 == v4 && v4 == v5)) {
    eq.fail({"isoform-equivalence", {}, "the isoform characterizations disagree"});
  }

  // bottom and top selections must be isoforms
  CheckItem& lemr = sp.report.item("bound-subforms-isoform");
  for (bool topside : {false, true}) {
    SubformResult sub = topside ? top_subform(of) : bottom_subform(of);
    if (!sub.form) {
      lemr.fail({"bound-subform", {}, topside ? "top selection is not a subform"
                                              : "bottom selection is not a subform"});
      continue;
    }
    OreanCheck oc = check_orean(*sub.form);
    bool iso = oc.report.pass;
    for (ObjId x = 0; x < c.n_objects(); ++x) {
      if (sub.form->fiber_size(x) != 1) iso = false;
    }
    if (!iso) {
      lemr.fail({"bound-subform", {},
                 topside ? "top subform is not an isoform" : "bottom subform is not an isoform"});
    }
  }
  sp.report.recompute_verdict();
  return sp;
}

}  // namespace forma
