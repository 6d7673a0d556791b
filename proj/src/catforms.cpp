#include "forma/catforms.hpp"

#include <algorithm>

namespace forma {

namespace {

std::string mname(const FinCategory& c, MorId f) {
  return c.morphisms[f].name.empty() ? std::to_string(f) : c.morphisms[f].name;
}

CheckReport validate_class(const FinCategory& c, const std::vector<MorId>& cls, bool mono_side) {
  CheckReport rep;
  CheckItem& it = rep.item(mono_side ? "mono-class" : "epi-class");
  std::vector<char> in(c.n_morphisms(), 0);
  for (MorId m : cls) in[m] = 1;
  for (MorId m : cls) {
    bool ok = mono_side ? is_mono(c, m) : is_epi(c, m);
    if (!ok) {
      it.fail({mono_side ? "not-mono" : "not-epi", {{"morphism", mname(c, m)}},
               mono_side ? "class member is not a monomorphism"
                         : "class member is not an epimorphism"});
    }
  }
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    if (is_iso(c, f) && !in[f]) {
      it.fail({"missing-iso", {{"morphism", mname(c, f)}}, "class must contain all isomorphisms"});
    }
  }
  for (MorId m : cls) {
    for (MorId i = 0; i < c.n_morphisms(); ++i) {
      if (!is_iso(c, i)) continue;
      if (c.composable(m, i) && !in[c.compose(m, i)]) {
        it.fail({"iso-composition", {{"m", mname(c, m)}, {"i", mname(c, i)}},
                 "class not closed under composition with isomorphisms"});
      }
      if (c.composable(i, m) && !in[c.compose(i, m)]) {
        it.fail({"iso-composition", {{"m", mname(c, m)}, {"i", mname(c, i)}},
                 "class not closed under composition with isomorphisms"});
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

bool factors_through(const FinCategory& c, MorId m, MorId mp) {
  // exists u with mp ∘ u = m (m, mp into the same object)
  for (MorId u : c.hom(c.dom(m), c.dom(mp))) {
    if (c.compose(mp, u) == m) return true;
  }
  return false;
}

bool cofactors_through(const FinCategory& c, MorId e, MorId ep) {
  // exists u with u ∘ ep = e (e, ep out of the same object)
  for (MorId u : c.hom(c.cod(ep), c.cod(e))) {
    if (c.compose(u, ep) == e) return true;
  }
  return false;
}

}  // namespace

CheckReport validate_mono_class(const FinCategory& c, const std::vector<MorId>& M) {
  return validate_class(c, M, true);
}

CheckReport validate_epi_class(const FinCategory& c, const std::vector<MorId>& E) {
  return validate_class(c, E, false);
}

CatFormResult m_subobjects_form(CatPtr c, const std::vector<MorId>& M) {
  const FinCategory& cat = *c;
  CatFormResult out;
  out.form.base = c;
  out.form.label = "m-subobjects";
  out.form.clusters.resize(cat.n_objects());
  out.reps.resize(cat.n_objects());
  std::vector<std::vector<std::vector<MorId>>> classes(cat.n_objects());
  for (ObjId x = 0; x < cat.n_objects(); ++x) {
    for (MorId m : M) {
      if (cat.cod(m) != x) continue;
      bool placed = false;
      for (auto& cl : classes[x]) {
        if (factors_through(cat, m, cl.front()) && factors_through(cat, cl.front(), m)) {
          cl.push_back(m);
          placed = true;
          break;
        }
      }
      if (!placed) classes[x].push_back({m});
    }
    std::sort(classes[x].begin(), classes[x].end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (const auto& cl : classes[x]) {
      out.reps[x].push_back(cl.front());
      out.form.clusters[x].push_back("[" + mname(cat, cl.front()) + "]");
    }
  }
  out.form.rel.resize(cat.n_morphisms());
  for (MorId f = 0; f < cat.n_morphisms(); ++f) {
    ObjId d = cat.dom(f), cd = cat.cod(f);
    BoolMat mat(static_cast<int>(out.reps[cd].size()), static_cast<int>(out.reps[d].size()));
    for (size_t b = 0; b < out.reps[cd].size(); ++b) {
      for (size_t a = 0; a < out.reps[d].size(); ++a) {
        // [t] >=_f [s]  iff  t u = f s for some u
        MorId t = out.reps[cd][b], s = out.reps[d][a];
        mat.set(static_cast<int>(b), static_cast<int>(a),
                factors_through(cat, cat.compose(f, s), t));
      }
    }
    out.form.rel[f] = std::move(mat);
  }
  return out;
}

CatFormResult e_quotients_form(CatPtr c, const std::vector<MorId>& E) {
  const FinCategory& cat = *c;
  CatFormResult out;
  out.form.base = c;
  out.form.label = "e-quotients";
  out.form.clusters.resize(cat.n_objects());
  out.reps.resize(cat.n_objects());
  std::vector<std::vector<std::vector<MorId>>> classes(cat.n_objects());
  for (ObjId x = 0; x < cat.n_objects(); ++x) {
    for (MorId e : E) {
      if (cat.dom(e) != x) continue;
      bool placed = false;
      for (auto& cl : classes[x]) {
        if (cofactors_through(cat, e, cl.front()) && cofactors_through(cat, cl.front(), e)) {
          cl.push_back(e);
          placed = true;
          break;
        }
      }
      if (!placed) classes[x].push_back({e});
    }
    std::sort(classes[x].begin(), classes[x].end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (const auto& cl : classes[x]) {
      out.reps[x].push_back(cl.front());
      out.form.clusters[x].push_back("[" + mname(cat, cl.front()) + "]");
    }
  }
  out.form.rel.resize(cat.n_morphisms());
  for (MorId f = 0; f < cat.n_morphisms(); ++f) {
    ObjId d = cat.dom(f), cd = cat.cod(f);
    BoolMat mat(static_cast<int>(out.reps[cd].size()), static_cast<int>(out.reps[d].size()));
    for (size_t b = 0; b < out.reps[cd].size(); ++b) {
      for (size_t a = 0; a < out.reps[d].size(); ++a) {
        // [t] >=_f [s]  iff  u s = t f for some u  (congruence reading)
        MorId t = out.reps[cd][b], s = out.reps[d][a];
        mat.set(static_cast<int>(b), static_cast<int>(a),
                cofactors_through(cat, cat.compose(t, f), s));
      }
    }
    out.form.rel[f] = std::move(mat);
  }
  return out;
}

namespace {

/// [e',m'] >=_f [e,m]: a mutual square  m'u = f m  and  e'u = s e.
bool subq_geq(const FinCategory& c, MorId f, std::pair<MorId, MorId> em,
              std::pair<MorId, MorId> epmp) {
  auto [e, m] = em;
  auto [ep, mp] = epmp;
  MorId fm = c.compose(f, m);
  for (MorId u : c.hom(c.dom(m), c.dom(mp))) {
    if (c.compose(mp, u) != fm) continue;
    MorId epu = c.compose(ep, u);
    for (MorId s : c.hom(c.cod(e), c.cod(ep))) {
      if (c.compose(s, e) == epu) return true;
    }
  }
  return false;
}

bool subq_equiv(const FinCategory& c, std::pair<MorId, MorId> p1, std::pair<MorId, MorId> p2) {
  if (c.cod(p1.second) != c.cod(p2.second)) return false;
  MorId idc = c.identity[c.cod(p1.second)];
  return subq_geq(c, idc, p1, p2) && subq_geq(c, idc, p2, p1);
}

}  // namespace

SubquotientsResult subquotients_form(CatPtr c, const std::vector<MorId>& E,
                                     const std::vector<MorId>& M) {
  const FinCategory& cat = *c;
  SubquotientsResult out;
  out.form.base = c;
  out.form.label = "subquotients";
  out.form.clusters.resize(cat.n_objects());
  out.reps.resize(cat.n_objects());
  std::vector<std::vector<std::vector<std::pair<MorId, MorId>>>> classes(cat.n_objects());
  for (MorId e : E) {
    for (MorId m : M) {
      if (cat.dom(e) != cat.dom(m)) continue;
      ObjId x = cat.cod(m);
      std::pair<MorId, MorId> p{e, m};
      bool placed = false;
      for (auto& cl : classes[x]) {
        if (subq_equiv(cat, p, cl.front())) {
          cl.push_back(p);
          placed = true;
          break;
        }
      }
      if (!placed) classes[x].push_back({p});
    }
  }
  for (ObjId x = 0; x < cat.n_objects(); ++x) {
    for (auto& cl : classes[x]) std::sort(cl.begin(), cl.end());
    std::sort(classes[x].begin(), classes[x].end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    for (const auto& cl : classes[x]) {
      auto [e, m] = cl.front();
      out.reps[x].push_back(cl.front());
      out.form.clusters[x].push_back("[" + mname(cat, e) + ";" + mname(cat, m) + "]");
    }
  }
  out.form.rel.resize(cat.n_morphisms());
  for (MorId f = 0; f < cat.n_morphisms(); ++f) {
    ObjId d = cat.dom(f), cd = cat.cod(f);
    BoolMat mat(static_cast<int>(out.reps[cd].size()), static_cast<int>(out.reps[d].size()));
    for (size_t b = 0; b < out.reps[cd].size(); ++b) {
      for (size_t a = 0; a < out.reps[d].size(); ++a) {
        mat.set(static_cast<int>(b), static_cast<int>(a),
                subq_geq(cat, f, out.reps[d][a], out.reps[cd][b]));
      }
    }
    out.form.rel[f] = std::move(mat);
  }
  return out;
}

}  // namespace forma
