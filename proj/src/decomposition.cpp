#include "forma/decomposition.hpp"

#include <algorithm>
#include <sstream>

namespace forma {

namespace {

std::string mref(const FinCategory& c, MorId f) {
  std::ostringstream os;
  os << f;
  if (!c.morphisms[f].name.empty()) os << " (" << c.morphisms[f].name << ")";
  return os.str();
}

ClusterId eval_term(DecompTerm t, const OreanForm& of, ObjId x, ClusterId a, ClusterId b) {
  switch (t) {
    case DecompTerm::top: return of.top(x);
    case DecompTerm::bottom: return of.bot(x);
    case DecompTerm::first: return a;
    case DecompTerm::second: return b;
    case DecompTerm::meet: return of.meet(x, a, b);
    case DecompTerm::join: return of.join(x, a, b);
  }
  return -1;
}

/// Index of an ambient cluster inside a kept-selection, or -1.
int sel_index(const std::vector<ClusterId>& sel, ClusterId a) {
  auto it = std::lower_bound(sel.begin(), sel.end(), a);
  if (it != sel.end() && *it == a) return static_cast<int>(it - sel.begin());
  return -1;
}

Operator make_identity_assign(const Form& f) {
  Operator t;
  t.src = &f;
  t.dst = &f;
  t.assign.resize(f.base->n_objects());
  for (ObjId x = 0; x < f.base->n_objects(); ++x) {
    for (int a = 0; a < f.fiber_size(x); ++a) t.assign[x].push_back(a);
  }
  return t;
}

}  // namespace

const char* to_string(DecompTerm t) {
  switch (t) {
    case DecompTerm::top: return "top";
    case DecompTerm::bottom: return "bottom";
    case DecompTerm::first: return "first";
    case DecompTerm::second: return "second";
    case DecompTerm::meet: return "meet";
    case DecompTerm::join: return "join";
  }
  return "?";
}

Decomposition check_decomposition(const OreanForm& of, const Operator& ks, const Operator& ke) {
  Decomposition d;
  d.ks = ks;
  d.ke = ke;
  const FinCategory& c = of.cat();
  const Form& F = of.form();

  CheckItem& pre = d.report.item("pre/idempotent-operators");
  for (const Operator* t : {&ks, &ke}) {
    Operator probe = *t;
    probe.src = &F;
    probe.dst = &F;
    OperatorFlags fl = validate_operator(probe);
    if (!fl.valid || !fl.idempotent) {
      pre.fail({"operator", {}, "decomposition requires valid idempotent operators"});
    }
  }
  if (!pre.pass) {
    d.report.recompute_verdict();
    return d;
  }

  // D1: closed clusters of ks form a conormal orean form, of ke a normal one
  d.sel_s.resize(c.n_objects());
  d.sel_e.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < F.fiber_size(x); ++a) {
      if (ks.at(x, a) == a) d.sel_s[x].push_back(a);
      if (ke.at(x, a) == a) d.sel_e[x].push_back(a);
    }
  }
  CheckItem& d1 = d.report.item("D1");
  SubformResult subs = subform(F, d.sel_s);
  SubformResult sube = subform(F, d.sel_e);
  std::optional<OreanForm> ofs, ofe;
  if (!subs.form) {
    d1.fail({"Fs-subform", {}, "closed clusters of ks do not form a subform"});
  } else {
    auto oc = check_orean(*subs.form);
    if (!oc.orean) {
      d1.fail({"Fs-orean", {}, "ks-side is not orean"});
    } else {
      ofs = std::move(oc.orean);
      for (ObjId x = 0; x < c.n_objects(); ++x) {
        for (ClusterId a = 0; a < ofs->form().fiber_size(x); ++a) {
          if (!ofs->conormal[x][a]) {
            d1.fail({"Fs-conormal", {{"cluster", ofs->form().cluster_ref(x, a)}},
                     "ks-side must be a conormal form"});
          }
        }
      }
    }
  }
  if (!sube.form) {
    d1.fail({"Fe-subform", {}, "closed clusters of ke do not form a subform"});
  } else {
    auto oc = check_orean(*sube.form);
    if (!oc.orean) {
      d1.fail({"Fe-orean", {}, "ke-side is not orean"});
    } else {
      ofe = std::move(oc.orean);
      for (ObjId x = 0; x < c.n_objects(); ++x) {
        for (ClusterId a = 0; a < ofe->form().fiber_size(x); ++a) {
          if (!ofe->normal[x][a]) {
            d1.fail({"Fe-normal", {{"cluster", ofe->form().cluster_ref(x, a)}},
                     "ke-side must be a normal form"});
          }
        }
      }
    }
  }

  // D2: which terms recover every cluster
  CheckItem& d2 = d.report.item("D2");
  for (DecompTerm t : {DecompTerm::top, DecompTerm::bottom, DecompTerm::first,
                       DecompTerm::second, DecompTerm::meet, DecompTerm::join}) {
    bool ok = true;
    for (ObjId x = 0; x < c.n_objects() && ok; ++x) {
      for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
        if (eval_term(t, of, x, ks.at(x, s), ke.at(x, s)) != s) {
          ok = false;
          break;
        }
      }
    }
    if (ok) d.terms.push_back(t);
  }
  if (d.terms.empty()) {
    d2.fail({"D2", {}, "no lattice term recovers the clusters from (ks S, ke S)"});
  }
  d.report.recompute_verdict();
  d.valid = d.report.pass;
  if (!d.valid || !ofs || !ofe) return d;

  // decomposition projections and subform inclusions
  Operator taus, taue, incs, ince;
  taus.src = &F;
  taus.dst = &ofs->form();
  taue.src = &F;
  taue.dst = &ofe->form();
  incs.src = &ofs->form();
  incs.dst = &F;
  ince.src = &ofe->form();
  ince.dst = &F;
  taus.assign.resize(c.n_objects());
  taue.assign.resize(c.n_objects());
  incs.assign = d.sel_s;
  ince.assign = d.sel_e;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
      taus.assign[x].push_back(sel_index(d.sel_s[x], ks.at(x, s)));
      taue.assign[x].push_back(sel_index(d.sel_e[x], ke.at(x, s)));
    }
  }

  OperatorNormality ns = operator_normality(taus, of, *ofs);
  OperatorNormality ne = operator_normality(taue, of, *ofe);
  ExactnessFlags pe = pair_exactness(*ofs, *ofe);
  d.semiexact = ns.binormal && ne.binormal && pe.semiexact;

  OperatorNormality nis = operator_normality(incs, *ofs, of);
  OperatorNormality nie = operator_normality(ince, *ofe, of);
  d.exact = ns.binormal && ne.binormal && nis.conormal && nie.normal;

  CheckItem& info = d.report.item("classification");
  std::ostringstream os;
  os << "terms:";
  for (DecompTerm t : d.terms) os << " " << to_string(t);
  os << (d.exact ? "; exact" : d.semiexact ? "; semiexact" : "; plain");
  info.info({"classification", {}, os.str()});
  return d;
}

namespace {

ExactBinaryCheck exact_binary_check(const OreanForm& of, bool join_side) {
  ExactBinaryCheck out;
  const FinCategory& c = of.cat();
  const Form& F = of.form();
  // join side: largest conormal/normal clusters *below*; meet side: smallest *above*
  const auto& sside = join_side ? of.cint : of.cext;
  const auto& eside = join_side ? of.nint : of.next;

  CheckItem& c1 = out.report.item(join_side ? "join-recovery" : "meet-recovery");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
      ClusterId cs = sside[x][s], ns = eside[x][s];
      if (cs < 0 || ns < 0) {
        c1.fail({"extremum", {{"cluster", F.cluster_ref(x, s)}},
                 join_side ? "largest conormal/normal cluster below is missing"
                           : "smallest conormal/normal cluster above is missing"});
        continue;
      }
      ClusterId rec = join_side ? of.join(x, cs, ns) : of.meet(x, cs, ns);
      if (rec != s) {
        c1.fail({"recovery", {{"cluster", F.cluster_ref(x, s)}},
                 join_side ? "S != (largest conormal below) ∨ (largest normal below)"
                           : "S != (smallest conormal above) ∧ (smallest normal above)"});
      }
    }
  }

  CheckItem& c2 = out.report.item(join_side ? "inverse-image-compatibility"
                                            : "direct-image-compatibility");
  CheckItem& c3 = out.report.item(join_side ? "image-of-largest-normal"
                                            : "kernel-of-smallest-conormal");
  if (c1.pass) {
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      ObjId d = c.dom(f), cd = c.cod(f);
      if (join_side) {
        for (ClusterId s = 0; s < F.fiber_size(cd); ++s) {
          if (of.ii(f, eside[cd][s]) != eside[d][of.ii(f, s)]) {
            c2.fail({"inverse-image", {{"f", mref(c, f)}, {"S", F.cluster_ref(cd, s)}},
                     "(largest normal below S)·f != largest normal below S·f"});
          }
        }
        if (of.di(f, eside[d][of.top(d)]) != eside[cd][of.image(f)]) {
          c3.fail({"direct-image", {{"f", mref(c, f)}},
                   "image of the largest normal cluster is not the largest normal below Im f"});
        }
      } else {
        for (ClusterId s = 0; s < F.fiber_size(d); ++s) {
          if (of.di(f, sside[d][s]) != sside[cd][of.di(f, s)]) {
            c2.fail({"direct-image", {{"f", mref(c, f)}, {"S", F.cluster_ref(d, s)}},
                     "f·(smallest conormal above S) != smallest conormal above f·S"});
          }
        }
        if (of.ii(f, sside[cd][of.bot(cd)]) != sside[d][of.kernel(f)]) {
          c3.fail({"inverse-image", {{"f", mref(c, f)}},
                   "kernel of the smallest conormal cluster is not the smallest conormal above Ker f"});
        }
      }
    }
  }
  out.report.recompute_verdict();
  if (!out.report.pass) return out;

  Operator ks = make_identity_assign(F), ke = make_identity_assign(F);
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
      ks.assign[x][s] = sside[x][s];
      ke.assign[x][s] = eside[x][s];
    }
  }
  Decomposition d = check_decomposition(of, ks, ke);
  CheckItem& built = out.report.item("decomposition");
  DecompTerm want = join_side ? DecompTerm::join : DecompTerm::meet;
  if (!d.valid || std::find(d.terms.begin(), d.terms.end(), want) == d.terms.end()) {
    built.fail({"term", {}, "constructed pair does not satisfy the binary term"});
  }
  if (!d.exact) {
    built.fail({"exact", {}, "constructed decomposition is not exact"});
  }

  // closure consequences on the two classes
  CheckItem& cons = out.report.item("closure-consequences");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    const int n = F.fiber_size(x);
    for (ClusterId a = 0; a < n; ++a) {
      for (ClusterId b = 0; b < n; ++b) {
        if (join_side) {
          if (of.normal[x][a] && of.normal[x][b] && !of.normal[x][of.join(x, a, b)]) {
            cons.fail({"normal-join", {{"object", c.objects[x]}}, "normal clusters not closed under joins"});
          }
          if (of.conormal[x][a] && of.conormal[x][b] && !of.conormal[x][of.join(x, a, b)]) {
            cons.fail({"conormal-join", {{"object", c.objects[x]}}, "conormal clusters not closed under joins"});
          }
        } else {
          if (of.conormal[x][a] && of.conormal[x][b] && !of.conormal[x][of.meet(x, a, b)]) {
            cons.fail({"conormal-meet", {{"object", c.objects[x]}}, "conormal clusters not closed under meets"});
          }
          if (of.normal[x][a] && of.normal[x][b] && !of.normal[x][of.meet(x, a, b)]) {
            cons.fail({"normal-meet", {{"object", c.objects[x]}}, "normal clusters not closed under meets"});
          }
        }
      }
    }
  }
  if (join_side) {
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      ObjId d2 = c.dom(f), cd = c.cod(f);
      for (ClusterId s = 0; s < F.fiber_size(d2); ++s) {
        if (of.normal[d2][s] && !of.normal[cd][of.di(f, s)]) {
          cons.fail({"normal-direct-image", {{"f", mref(c, f)}},
                     "direct images of normal clusters must stay normal"});
        }
      }
    }
  } else {
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      ObjId d2 = c.dom(f), cd = c.cod(f);
      for (ClusterId s = 0; s < F.fiber_size(cd); ++s) {
        if (of.conormal[cd][s] && !of.conormal[d2][of.ii(f, s)]) {
          cons.fail({"conormal-inverse-image", {{"f", mref(c, f)}},
                     "inverse images of conormal clusters must stay conormal"});
        }
      }
    }
  }
  out.report.recompute_verdict();
  out.decomposition = std::move(d);
  return out;
}

}  // namespace

ExactBinaryCheck exact_join_check(const OreanForm& of) { return exact_binary_check(of, true); }
ExactBinaryCheck exact_meet_check(const OreanForm& of) { return exact_binary_check(of, false); }

CanonicalJoinResult canonical_join_decomposition(const OreanForm& fs, const OreanForm& fe) {
  CanonicalJoinResult out;
  const FinCategory& c = fs.cat();
  out.prod = product(fs.form(), fe.form());
  auto oc = check_orean(out.prod);
  CheckItem& pre = out.report.item("pre/product-orean");
  if (!oc.orean) {
    pre.fail({"product", {}, "product of the two orean forms is not orean"});
    out.report.recompute_verdict();
    return out;
  }
  const OreanForm& op = *oc.orean;

  Operator ks = make_identity_assign(out.prod);
  Operator ke = make_identity_assign(out.prod);
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId p = 0; p < out.prod.fiber_size(x); ++p) {
      auto [a, r] = unpair_index(fe.form(), x, p);
      ks.assign[x][p] = pair_index(fe.form(), x, a, fe.bot(x));
      ke.assign[x][p] = pair_index(fe.form(), x, fs.bot(x), r);
    }
  }
  Decomposition d = check_decomposition(op, ks, ke);
  CheckItem& shape = out.report.item("canonical-join");
  if (!d.valid || std::find(d.terms.begin(), d.terms.end(), DecompTerm::join) == d.terms.end()) {
    shape.fail({"join-term", {}, "canonical pair is not a join decomposition"});
  }

  // biconditionals
  CheckItem& bi = out.report.item("biconditionals");
  ExactnessFlags pe = pair_exactness(fs, fe);
  if (d.semiexact != pe.semiexact) {
    bi.fail({"semiexact", {}, "canonical decomposition semiexact iff the pair is semiexact"});
  }
  SpecialPredicates sp_fe = special_predicates(fe);
  SpecialPredicates sp_fs = special_predicates(fs);
  bool expect_exact = sp_fe.isoform && sp_fs.antinormal;
  if (d.exact != expect_exact) {
    bi.fail({"exact", {}, "canonical decomposition exact iff fe is an isoform and fs antinormal"});
  }

  // the projections are always binormal
  CheckItem& proj = out.report.item("projections-binormal");
  {
    SubformResult subs = subform(out.prod, d.sel_s);
    SubformResult sube = subform(out.prod, d.sel_e);
    if (subs.form && sube.form) {
      auto os = check_orean(*subs.form);
      auto oe = check_orean(*sube.form);
      if (os.orean && oe.orean) {
        Operator taus, taue;
        taus.src = &out.prod;
        taus.dst = &os.orean->form();
        taue.src = &out.prod;
        taue.dst = &oe.orean->form();
        taus.assign.resize(c.n_objects());
        taue.assign.resize(c.n_objects());
        for (ObjId x = 0; x < c.n_objects(); ++x) {
          for (ClusterId p = 0; p < out.prod.fiber_size(x); ++p) {
            taus.assign[x].push_back(sel_index(d.sel_s[x], ks.at(x, p)));
            taue.assign[x].push_back(sel_index(d.sel_e[x], ke.at(x, p)));
          }
        }
        if (!operator_normality(taus, op, *os.orean).binormal ||
            !operator_normality(taue, op, *oe.orean).binormal) {
          proj.fail({"binormal", {}, "canonical projections must be binormal"});
        }
      }
    }
  }
  out.report.recompute_verdict();
  out.decomposition = std::move(d);
  return out;
}

ExactDecompositionSearch find_exact_decomposition(const OreanForm& of) {
  ExactDecompositionSearch out;
  const FinCategory& c = of.cat();
  const Form& F = of.form();
  std::vector<std::pair<std::string, Decomposition>> found;

  // nullary: isoforms decompose through constant terms
  SpecialPredicates sp = special_predicates(of);
  if (sp.isoform) {
    Decomposition d = check_decomposition(of, make_identity_assign(F), make_identity_assign(F));
    if (d.valid && d.exact) found.push_back({"nullary", std::move(d)});
  }

  // left unary: ks = identity, ke = inclusion after the forced operator onto
  // the normal hull (requires a conormal form)
  auto try_unary = [&](bool left) {
    HullResult hull = left ? hull_normal(of) : hull_conormal(of);
    if (!hull.orean || !hull.hull) return;
    const OreanForm& side = *hull.hull;
    auto forced = left ? forced_conormal_operator(of, side) : forced_normal_operator(of, side);
    if (!forced) return;
    Operator kap = make_identity_assign(F);
    for (ObjId x = 0; x < c.n_objects(); ++x) {
      for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
        kap.assign[x][s] = hull.kept[x][forced->at(x, s)];
      }
    }
    Decomposition d = left ? check_decomposition(of, make_identity_assign(F), kap)
                           : check_decomposition(of, kap, make_identity_assign(F));
    if (d.valid && d.exact) found.push_back({left ? "left" : "right", std::move(d)});
  };
  try_unary(true);
  try_unary(false);

  ExactBinaryCheck jc = exact_join_check(of);
  if (jc.report.pass && jc.decomposition && jc.decomposition->exact) {
    found.push_back({"join", std::move(*jc.decomposition)});
  }
  ExactBinaryCheck mc = exact_meet_check(of);
  if (mc.report.pass && mc.decomposition && mc.decomposition->exact) {
    found.push_back({"meet", std::move(*mc.decomposition)});
  }

  // all successful routes must agree (uniqueness of exact decompositions)
  CheckItem& uniq = out.report.item("uniqueness");
  for (size_t i = 1; i < found.size(); ++i) {
    if (!(found[i].second.ks.assign == found[0].second.ks.assign &&
          found[i].second.ke.assign == found[0].second.ke.assign)) {
      uniq.fail({"uniqueness", {{"first", found[0].first}, {"second", found[i].first}},
                 "two distinct exact decompositions found"});
    }
  }

  // characterization cross-checks on noetherian forms
  CheckReport noeth = check_noetherian(of);
  if (noeth.pass) {
    StronglyOreanResult so = check_strongly_orean(of);
    bool conormal_form = sp.conormal_form;

    bool has_left_exact = false, has_left_join = false, has_left_meet = false;
    for (const auto& [kind, d] : found) {
      bool left_shape = true;
      for (ObjId x = 0; x < c.n_objects() && left_shape; ++x) {
        for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
          if (d.ks.at(x, s) != s) left_shape = false;
        }
      }
      if (!left_shape) continue;
      has_left_exact = true;
      if (std::find(d.terms.begin(), d.terms.end(), DecompTerm::join) != d.terms.end()) {
        has_left_join = true;
      }
      if (std::find(d.terms.begin(), d.terms.end(), DecompTerm::meet) != d.terms.end()) {
        has_left_meet = true;
      }
    }

    // left exact decomposition iff strongly orean conormal
    CheckItem& ah = out.report.item("left-exact-characterization");
    if (has_left_exact != (so.strongly_orean && conormal_form)) {
      ah.fail({"left-exact", {}, "left exact decomposition iff strongly orean conormal fails"});
    }

    // left exact join decomposition iff conormal with normal direct images
    bool normal_di = true;
    for (MorId f = 0; f < c.n_morphisms() && normal_di; ++f) {
      for (ClusterId s = 0; s < F.fiber_size(c.dom(f)); ++s) {
        if (of.normal[c.dom(f)][s] && !of.normal[c.cod(f)][of.di(f, s)]) {
          normal_di = false;
          break;
        }
      }
    }
    CheckItem& al = out.report.item("left-join-characterization");
    if (has_left_join != (so.strongly_orean && conormal_form && normal_di)) {
      al.fail({"left-join", {},
               "left exact join decomposition iff strongly orean conormal with normal direct "
               "images fails"});
    }
    if (has_left_join) {
      CheckItem& below = out.report.item("clusters-below-normal");
      for (ObjId x = 0; x < c.n_objects(); ++x) {
        for (ClusterId n = 0; n < F.fiber_size(x); ++n) {
          if (!of.normal[x][n]) continue;
          for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
            if (of.leq(x, s, n) && !of.normal[x][s]) {
              below.fail({"below-normal", {{"cluster", F.cluster_ref(x, s)}},
                          "cluster below a normal cluster must be normal"});
            }
          }
        }
      }
    }

    // left exact meet decomposition iff conormal with all normal exteriors
    bool all_next = true;
    for (ObjId x = 0; x < c.n_objects() && all_next; ++x) {
      for (ClusterId s = 0; s < F.fiber_size(x); ++s) {
        if (of.next[x][s] < 0) {
          all_next = false;
          break;
        }
      }
    }
    CheckItem& q = out.report.item("left-meet-characterization");
    if (has_left_meet != (conormal_form && all_next)) {
      q.fail({"left-meet", {}, "left exact meet decomposition iff conormal with normal exteriors fails"});
    }
  }

  out.report.recompute_verdict();
  if (!found.empty()) out.decomposition = std::move(found.front().second);
  return out;
}

CheckReport join_decomposition_laws(const OreanForm& of) {
  CheckReport rep;
  const FinCategory& c = of.cat();
  const Form& F = of.form();

  CheckReport noeth = check_noetherian(of);
  ExactBinaryCheck jc = exact_join_check(of);
  if (!noeth.pass || !jc.report.pass) {
    rep.item("pre").fail({"pre", {}, "requires a noetherian form with exact join decomposition"});
    rep.recompute_verdict();
    return rep;
  }

  HullResult hc = hull_conormal(of);
  HullResult hn = hull_normal(of);
  if (!hc.hull || !hn.hull) {
    rep.item("pre").fail({"pre", {}, "hulls must be orean"});
    rep.recompute_verdict();
    return rep;
  }
  FactorizationCheck fc = check_orean_factorization(*hc.hull, *hn.hull);
  CheckItem& facit = rep.item("hull-factorization");
  if (!fc.fac) {
    facit.fail({"factorization", {}, "the two hulls do not form an orean factorization"});
    rep.recompute_verdict();
    return rep;
  }
  const OreanFactorization& fac = *fc.fac;

  // ambient <-> hull index translation
  auto s_idx = [&](ObjId x, ClusterId amb) { return sel_index(hc.kept[x], amb); };
  auto e_idx = [&](ObjId x, ClusterId amb) { return sel_index(hn.kept[x], amb); };
  auto star = [&](ObjId x, ClusterId a_amb, ClusterId r_amb) {
    return hc.kept[x][wyler_join(fac, x, s_idx(x, a_amb), e_idx(x, r_amb))];
  };
  auto alpha_amb = [&](ObjId x, ClusterId a_amb) {
    return hn.kept[x][fac.alpha[x][s_idx(x, a_amb)]];
  };
  auto beta_amb = [&](ObjId x, ClusterId r_amb) {
    return hc.kept[x][fac.beta[x][e_idx(x, r_amb)]];
  };
  // projections: interiors
  auto taus = [&](ObjId x, ClusterId s) { return of.cint[x][s]; };
  auto taue = [&](ObjId x, ClusterId s) { return of.nint[x][s]; };

  // (i) fixed-point identities of the projections
  CheckItem& i1 = rep.item("projection-saturation");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId k = 0; k < F.fiber_size(x); ++k) {
      if (star(x, taus(x, k), taue(x, k)) != taus(x, k)) {
        i1.fail({"saturation", {{"K", F.cluster_ref(x, k)}}, "taus K != (taus K) ∗ (taue K)"});
      }
      if (!of.leq(x, alpha_amb(x, taus(x, k)), taue(x, k))) {
        i1.fail({"inflation", {{"K", F.cluster_ref(x, k)}}, "taue K >= alpha(taus K) fails"});
      }
    }
  }

  // (ii) reconstruction of saturated pairs
  CheckItem& i2 = rep.item("reconstruction");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < F.fiber_size(x); ++a) {
      if (!of.conormal[x][a]) continue;
      for (ClusterId r = 0; r < F.fiber_size(x); ++r) {
        if (!of.normal[x][r]) continue;
        if (star(x, a, r) != a || !of.leq(x, alpha_amb(x, a), r)) continue;
        ClusterId j = of.join(x, a, r);
        if (taus(x, j) != a || taue(x, j) != r) {
          i2.fail({"reconstruction", {{"A", F.cluster_ref(x, a)}, {"R", F.cluster_ref(x, r)}},
                   "taus(A∨R) = A and taue(A∨R) = R fail"});
        }
      }
    }
  }

  // (iii) inverse-image distribution over saturated pairs
  CheckItem& i3 = rep.item("inverse-image-distribution");
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    for (ClusterId a = 0; a < F.fiber_size(cd); ++a) {
      if (!of.conormal[cd][a]) continue;
      for (ClusterId r = 0; r < F.fiber_size(cd); ++r) {
        if (!of.normal[cd][r]) continue;
        if (star(cd, a, r) != a || !of.leq(cd, alpha_amb(cd, a), r)) continue;
        // A·^s f computed in the conormal hull, R·^e f in the normal hull
        ClusterId as = hc.kept[d][hc.hull->ii(f, s_idx(cd, a))];
        ClusterId re = hn.kept[d][hn.hull->ii(f, e_idx(cd, r))];
        if (of.ii(f, of.join(cd, a, r)) != of.join(d, as, re)) {
          i3.fail({"distribution", {{"f", mref(c, f)}, {"A", F.cluster_ref(cd, a)},
                                    {"R", F.cluster_ref(cd, r)}},
                   "(A∨R)·f != (A·ˢf) ∨ (R·ᵉf)"});
        }
      }
    }
  }

  // (iv) closure of the two sides under binary meets and joins; meets with a
  // normal cluster are normal
  CheckItem& i4 = rep.item("side-closure");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    const int n = F.fiber_size(x);
    for (ClusterId a = 0; a < n; ++a) {
      for (ClusterId b = 0; b < n; ++b) {
        if (of.conormal[x][a] && of.conormal[x][b]) {
          if (!of.conormal[x][of.meet(x, a, b)] || !of.conormal[x][of.join(x, a, b)]) {
            i4.fail({"conormal-closure", {{"object", c.objects[x]}},
                     "conormal clusters not closed under meet/join"});
          }
        }
        if (of.normal[x][a] && of.normal[x][b]) {
          if (!of.normal[x][of.meet(x, a, b)] || !of.normal[x][of.join(x, a, b)]) {
            i4.fail({"normal-closure", {{"object", c.objects[x]}},
                     "normal clusters not closed under meet/join"});
          }
        }
        if (of.normal[x][a] && !of.normal[x][of.meet(x, a, b)]) {
          i4.fail({"normal-meet", {{"object", c.objects[x]}},
                   "meet with a normal cluster must be normal"});
        }
      }
    }
  }

  // (v) the four canonical operators preserve binary meets
  CheckItem& i5 = rep.item("meet-preservation");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    const int n = F.fiber_size(x);
    for (ClusterId a = 0; a < n; ++a) {
      for (ClusterId b = 0; b < n; ++b) {
        ClusterId m = of.meet(x, a, b);
        if (taus(x, m) != of.meet(x, taus(x, a), taus(x, b))) {
          i5.fail({"taus", {{"object", c.objects[x]}}, "taus does not preserve binary meets"});
        }
        if (taue(x, m) != of.meet(x, taue(x, a), taue(x, b))) {
          i5.fail({"taue", {{"object", c.objects[x]}}, "taue does not preserve binary meets"});
        }
        if (of.conormal[x][a] && of.conormal[x][b]) {
          if (alpha_amb(x, m) != of.meet(x, alpha_amb(x, a), alpha_amb(x, b))) {
            i5.fail({"alpha", {{"object", c.objects[x]}}, "alpha does not preserve binary meets"});
          }
        }
        if (of.normal[x][a] && of.normal[x][b]) {
          if (beta_amb(x, m) != of.meet(x, beta_amb(x, a), beta_amb(x, b))) {
            i5.fail({"beta", {{"object", c.objects[x]}}, "beta does not preserve binary meets"});
          }
        }
      }
    }
  }

  // saturation equals the conormal interior of the join (strongly orean route)
  CheckItem& iil = rep.item("interior-formula");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < F.fiber_size(x); ++a) {
      if (!of.conormal[x][a]) continue;
      for (ClusterId r = 0; r < F.fiber_size(x); ++r) {
        if (!of.normal[x][r]) continue;
        if (star(x, a, r) != of.cint[x][of.join(x, a, r)]) {
          iil.fail({"interior", {{"A", F.cluster_ref(x, a)}, {"R", F.cluster_ref(x, r)}},
                    "A∗R != conormal interior of A∨R"});
        }
      }
    }
  }
  // order reflection on decomposed pairs
  CheckItem& refl = rep.item("order-reflection");
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    std::vector<std::pair<ClusterId, ClusterId>> pairs;
    for (ClusterId a = 0; a < F.fiber_size(x); ++a) {
      if (!of.conormal[x][a]) continue;
      for (ClusterId r = 0; r < F.fiber_size(x); ++r) {
        if (!of.normal[x][r]) continue;
        if (star(x, a, r) == a && of.leq(x, alpha_amb(x, a), r)) pairs.push_back({a, r});
      }
    }
    for (auto [a, r] : pairs) {
      for (auto [b, s] : pairs) {
        if (of.leq(x, of.join(x, a, r), of.join(x, b, s))) {
          if (!of.leq(x, a, b) || !of.leq(x, r, s)) {
            refl.fail({"reflection", {{"object", c.objects[x]}},
                       "A∨R <= B∨S must force A <= B and R <= S on saturated pairs"});
          }
        }
      }
    }
  }

  rep.recompute_verdict();
  return rep;
}

}  // namespace forma
