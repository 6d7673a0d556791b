#include "forma/form.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace forma {

FinPoset Form::fiber_poset(ObjId x) const {
  const int n = fiber_size(x);
  FinPoset p(n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) p.set(a, b, leq(x, a, b));
  }
  return p;
}

std::string Form::cluster_ref(ObjId x, ClusterId a) const {
  std::ostringstream os;
  os << base->objects[x] << "/" << clusters[x][a];
  return os.str();
}

namespace {

std::string mref(const FinCategory& c, MorId f) {
  std::ostringstream os;
  os << f;
  if (!c.morphisms[f].name.empty()) os << " (" << c.morphisms[f].name << ")";
  return os.str();
}

bool shapes_ok(const Form& F, CheckItem& shape) {
  const FinCategory& c = *F.base;
  if (static_cast<int>(F.clusters.size()) != c.n_objects()) {
    shape.fail({"cluster-table-size", {}, "one cluster list per object required"});
    return false;
  }
  if (static_cast<int>(F.rel.size()) != c.n_morphisms()) {
    shape.fail({"rel-table-size", {}, "one relation matrix per morphism required"});
    return false;
  }
  bool ok = true;
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    if (F.rel[f].rows() != F.fiber_size(c.cod(f)) || F.rel[f].cols() != F.fiber_size(c.dom(f))) {
      shape.fail({"rel-shape", {{"morphism", mref(c, f)}}, "matrix must be |fib(cod)| x |fib(dom)|"});
      ok = false;
    }
  }
  return ok;
}

}  // namespace

CheckReport validate_form(const Form& F) {
  CheckReport rep;
  CheckItem& shape = rep.item("shape");
  if (!shapes_ok(F, shape)) {
    rep.recompute_verdict();
    return rep;
  }
  const FinCategory& c = *F.base;
  CheckItem& f1 = rep.item("F1");
  CheckItem& f2 = rep.item("F2");
  CheckItem& f3 = rep.item("F3");

  for (ObjId x = 0; x < c.n_objects(); ++x) {
    MorId idm = c.identity[x];
    const int n = F.fiber_size(x);
    for (ClusterId a = 0; a < n; ++a) {
      if (!F.geq(idm, a, a)) {
        f1.fail({"F1", {{"cluster", F.cluster_ref(x, a)}}, "S >= S fails at the identity"});
      }
      for (ClusterId b = a + 1; b < n; ++b) {
        if (F.geq(idm, a, b) && F.geq(idm, b, a)) {
          f3.fail({"F3", {{"s", F.cluster_ref(x, a)}, {"t", F.cluster_ref(x, b)}},
                   "distinct clusters related both ways at the identity"});
        }
      }
    }
  }

  for (MorId g = 0; g < c.n_morphisms(); ++g) {
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      if (!c.composable(g, f)) continue;
      MorId gf = c.compose(g, f);
      const int nd = F.fiber_size(c.dom(f));
      const int nm = F.fiber_size(c.cod(f));
      const int nc = F.fiber_size(c.cod(g));
      for (ClusterId a = 0; a < nd; ++a) {
        for (ClusterId cc = 0; cc < nc; ++cc) {
          if (F.geq(gf, cc, a)) continue;
          for (ClusterId b = 0; b < nm; ++b) {
            if (F.geq(g, cc, b) && F.geq(f, b, a)) {
              f2.fail({"F2",
                       {{"g", mref(c, g)},
                        {"f", mref(c, f)},
                        {"C", F.cluster_ref(c.cod(g), cc)},
                        {"B", F.cluster_ref(c.cod(f), b)},
                        {"A", F.cluster_ref(c.dom(f), a)}},
                       "C >=_g B >=_f A but not C >=_gf A"});
              break;
            }
          }
        }
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

Form dual_form(const Form& F, CatPtr opposite_base) {
  Form d;
  d.base = std::move(opposite_base);
  d.clusters = F.clusters;
  d.label = F.label.empty() ? "" : F.label + "^op";
  d.rel.resize(F.rel.size());
  const FinCategory& c = *F.base;
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    BoolMat m(F.rel[f].cols(), F.rel[f].rows());
    for (int r = 0; r < F.rel[f].rows(); ++r) {
      for (int cc = 0; cc < F.rel[f].cols(); ++cc) m.set(cc, r, F.rel[f].get(r, cc));
    }
    d.rel[f] = std::move(m);
  }
  return d;
}

Form dual_form(const Form& F) { return dual_form(F, opposite(F.base)); }

SubformResult subform(const Form& F, const std::vector<std::vector<ClusterId>>& selection) {
  SubformResult out;
  const FinCategory& c = *F.base;
  if (static_cast<int>(selection.size()) != c.n_objects()) {
    throw std::invalid_argument("subform: selection must cover every object");
  }
  Form s;
  s.base = F.base;
  s.label = F.label.empty() ? "subform" : F.label + "|sub";
  s.clusters.resize(c.n_objects());
  out.kept = selection;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a : selection[x]) {
      if (a < 0 || a >= F.fiber_size(x)) {
        throw std::invalid_argument("subform: selection id out of range");
      }
      s.clusters[x].push_back(F.clusters[x][a]);
    }
  }
  s.rel.resize(c.n_morphisms());
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    const auto& selc = selection[c.cod(f)];
    const auto& seld = selection[c.dom(f)];
    BoolMat m(static_cast<int>(selc.size()), static_cast<int>(seld.size()));
    for (size_t r = 0; r < selc.size(); ++r) {
      for (size_t cc = 0; cc < seld.size(); ++cc) {
        m.set(static_cast<int>(r), static_cast<int>(cc), F.geq(f, selc[r], seld[cc]));
      }
    }
    s.rel[f] = std::move(m);
  }
  out.report = validate_form(s);
  if (!out.report.item_passed("F2")) {
    out.report.item("F2-broken-selection")
        .fail({"F2-broken-selection", {}, "restricted relations violate composition closure"});
    out.report.recompute_verdict();
  }
  if (out.report.pass) out.form = std::move(s);
  return out;
}

ClusterId pair_index(const Form& f2, ObjId x, ClusterId a1, ClusterId a2) {
  return a1 * f2.fiber_size(x) + a2;
}

std::pair<ClusterId, ClusterId> unpair_index(const Form& f2, ObjId x, ClusterId p) {
  const int n2 = f2.fiber_size(x);
  return {p / n2, p % n2};
}

Form product(const Form& F1, const Form& F2) {
  if (F1.base.get() != F2.base.get() && !F1.base->structurally_equal(*F2.base)) {
    throw std::invalid_argument("product: forms must share a base category");
  }
  const FinCategory& c = *F1.base;
  Form p;
  p.base = F1.base;
  p.label = "(" + F1.label + ")x(" + F2.label + ")";
  p.clusters.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (int a = 0; a < F1.fiber_size(x); ++a) {
      for (int b = 0; b < F2.fiber_size(x); ++b) {
        p.clusters[x].push_back("(" + F1.clusters[x][a] + "," + F2.clusters[x][b] + ")");
      }
    }
  }
  p.rel.resize(c.n_morphisms());
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    BoolMat m(p.fiber_size(cd), p.fiber_size(d));
    for (int b1 = 0; b1 < F1.fiber_size(cd); ++b1) {
      for (int b2 = 0; b2 < F2.fiber_size(cd); ++b2) {
        for (int a1 = 0; a1 < F1.fiber_size(d); ++a1) {
          for (int a2 = 0; a2 < F2.fiber_size(d); ++a2) {
            m.set(pair_index(F2, cd, b1, b2), pair_index(F2, d, a1, a2),
                  F1.geq(f, b1, a1) && F2.geq(f, b2, a2));
          }
        }
      }
    }
    p.rel[f] = std::move(m);
  }
  return p;
}

Operator product_projection(const Form& prod, const Form& f1, const Form& f2, int which) {
  Operator t;
  t.src = &prod;
  t.dst = which == 1 ? &f1 : &f2;
  const FinCategory& c = *prod.base;
  t.assign.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (int p = 0; p < prod.fiber_size(x); ++p) {
      auto [a1, a2] = unpair_index(f2, x, p);
      t.assign[x].push_back(which == 1 ? a1 : a2);
    }
  }
  return t;
}

OperatorFlags validate_operator(const Operator& t) {
  OperatorFlags fl;
  if (t.src == nullptr || t.dst == nullptr) return fl;
  const FinCategory& c = *t.src->base;
  if (static_cast<int>(t.assign.size()) != c.n_objects()) return fl;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    if (static_cast<int>(t.assign[x].size()) != t.src->fiber_size(x)) return fl;
    for (ClusterId a : t.assign[x]) {
      if (a < 0 || a >= t.dst->fiber_size(x)) return fl;
    }
  }
  fl.shape_ok = true;

  fl.valid = true;
  fl.full = true;
  for (MorId f = 0; f < c.n_morphisms() && (fl.valid || fl.full); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    for (ClusterId a = 0; a < t.src->fiber_size(d); ++a) {
      for (ClusterId b = 0; b < t.src->fiber_size(cd); ++b) {
        bool srel = t.src->geq(f, b, a);
        bool drel = t.dst->geq(f, t.at(cd, b), t.at(d, a));
        if (srel && !drel) fl.valid = false;
        if (drel && !srel) fl.full = false;
      }
    }
  }
  if (!fl.valid) fl.full = false;

  fl.injective = true;
  for (ObjId x = 0; x < c.n_objects() && fl.injective; ++x) {
    std::vector<ClusterId> seen(t.dst->fiber_size(x), -1);
    for (ClusterId a = 0; a < t.src->fiber_size(x); ++a) {
      if (seen[t.at(x, a)] != -1) {
        fl.injective = false;
        break;
      }
      seen[t.at(x, a)] = a;
    }
  }

  if (t.src == t.dst || (t.src->clusters == t.dst->clusters && t.src->rel == t.dst->rel)) {
    fl.idempotent = true;
    for (ObjId x = 0; x < c.n_objects() && fl.idempotent; ++x) {
      for (ClusterId a = 0; a < t.src->fiber_size(x); ++a) {
        if (t.at(x, t.at(x, a)) != t.at(x, a)) {
          fl.idempotent = false;
          break;
        }
      }
    }
  }
  return fl;
}

Operator identity_operator(const Form& f) {
  Operator t;
  t.src = &f;
  t.dst = &f;
  t.assign.resize(f.base->n_objects());
  for (ObjId x = 0; x < f.base->n_objects(); ++x) {
    for (int a = 0; a < f.fiber_size(x); ++a) t.assign[x].push_back(a);
  }
  return t;
}

Operator compose_operators(const Operator& second, const Operator& first) {
  if (first.dst != second.src) {
    throw std::invalid_argument("compose_operators: middle forms must match");
  }
  Operator t;
  t.src = first.src;
  t.dst = second.dst;
  t.assign.resize(first.assign.size());
  for (size_t x = 0; x < first.assign.size(); ++x) {
    for (ClusterId a : first.assign[x]) t.assign[x].push_back(second.assign[x][a]);
  }
  return t;
}

bool validate_form_iso(const Form& f, const Form& g, const FormIso& iso) {
  const FinCategory& c = *f.base;
  if (static_cast<int>(iso.map.size()) != c.n_objects()) return false;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    if (f.fiber_size(x) != g.fiber_size(x)) return false;
    if (static_cast<int>(iso.map[x].size()) != f.fiber_size(x)) return false;
    std::vector<char> hit(g.fiber_size(x), 0);
    for (ClusterId a : iso.map[x]) {
      if (a < 0 || a >= g.fiber_size(x) || hit[a]) return false;
      hit[a] = 1;
    }
  }
  for (MorId m = 0; m < c.n_morphisms(); ++m) {
    ObjId d = c.dom(m), cd = c.cod(m);
    for (ClusterId a = 0; a < f.fiber_size(d); ++a) {
      for (ClusterId b = 0; b < f.fiber_size(cd); ++b) {
        if (f.geq(m, b, a) != g.geq(m, iso.map[cd][b], iso.map[d][a])) return false;
      }
    }
  }
  return true;
}

namespace {

/// (|downset|, |upset|) per cluster; sorted multiset is an iso invariant of
/// the fiber order.
std::vector<std::pair<int, int>> order_profile(const Form& F, ObjId x) {
  std::vector<std::pair<int, int>> prof;
  const int n = F.fiber_size(x);
  for (int a = 0; a < n; ++a) {
    int down = 0, up = 0;
    for (int b = 0; b < n; ++b) {
      if (F.leq(x, b, a)) ++down;
      if (F.leq(x, a, b)) ++up;
    }
    prof.push_back({down, up});
  }
  std::sort(prof.begin(), prof.end());
  return prof;
}

struct MapSearch {
  const Form& f;
  const Form& g;
  bool require_bijection;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  bool exhausted = false;
  std::vector<std::vector<ClusterId>> map;   // f cluster -> g cluster, -1 unset
  std::vector<std::vector<char>> used;       // per object, g side (bijection mode)

  MapSearch(const Form& ff, const Form& gg, bool bij, std::uint64_t bud)
      : f(ff), g(gg), require_bijection(bij), budget(bud) {
    const FinCategory& c = *f.base;
    map.resize(c.n_objects());
    used.resize(c.n_objects());
    for (ObjId x = 0; x < c.n_objects(); ++x) {
      map[x].assign(f.fiber_size(x), -1);
      used[x].assign(g.fiber_size(x), 0);
    }
  }

  bool consistent(ObjId x, ClusterId a, ClusterId img) const {
    const FinCategory& c = *f.base;
    // all morphisms touching x against already-assigned clusters
    for (MorId m = 0; m < c.n_morphisms(); ++m) {
      ObjId d = c.dom(m), cd = c.cod(m);
      if (d == x) {
        for (ClusterId b = 0; b < f.fiber_size(cd); ++b) {
          ClusterId bi = (cd == x && b == a) ? img : map[cd][b];
          if (bi < 0) continue;
          if (f.geq(m, b, a) != g.geq(m, bi, img)) return false;
        }
      }
      if (cd == x) {
        for (ClusterId b = 0; b < f.fiber_size(d); ++b) {
          ClusterId bi = (d == x && b == a) ? img : map[d][b];
          if (bi < 0) continue;
          if (f.geq(m, a, b) != g.geq(m, img, bi)) return false;
        }
      }
    }
    return true;
  }

  bool run(size_t slot, const std::vector<std::pair<ObjId, ClusterId>>& slots) {
    if (slot == slots.size()) return true;
    if (++nodes > budget) {
      exhausted = true;
      return false;
    }
    auto [x, a] = slots[slot];
    for (ClusterId img = 0; img < g.fiber_size(x); ++img) {
      if (require_bijection && used[x][img]) continue;
      if (!require_bijection) {
        bool clash = false;  // keep injectivity in embedding mode too
        for (ClusterId b = 0; b < a; ++b) {
          if (map[x][b] == img) {
            clash = true;
            break;
          }
        }
        if (clash) continue;
      }
      if (!consistent(x, a, img)) continue;
      map[x][a] = img;
      used[x][img] = 1;
      if (run(slot + 1, slots)) return true;
      map[x][a] = -1;
      used[x][img] = 0;
      if (exhausted) return false;
    }
    return false;
  }
};

IsoSearchResult search_map(const Form& f, const Form& g, bool bijection, std::uint64_t budget) {
  IsoSearchResult res;
  const FinCategory& c = *f.base;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    if (bijection) {
      if (f.fiber_size(x) != g.fiber_size(x)) return res;  // refuted by fiber sizes
      if (order_profile(f, x) != order_profile(g, x)) return res;  // refuted by order type
    } else {
      if (f.fiber_size(x) > g.fiber_size(x)) return res;
    }
  }
  MapSearch s(f, g, bijection, budget);
  std::vector<std::pair<ObjId, ClusterId>> slots;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    for (ClusterId a = 0; a < f.fiber_size(x); ++a) slots.push_back({x, a});
  }
  bool found = s.run(0, slots);
  res.nodes = s.nodes;
  if (found) {
    res.status = IsoSearchResult::Status::found;
    FormIso iso;
    iso.map = s.map;
    res.iso = std::move(iso);
  } else if (s.exhausted) {
    res.status = IsoSearchResult::Status::budget_exhausted;
  }
  return res;
}

}  // namespace

IsoSearchResult find_isomorphism(const Form& f, const Form& g, std::uint64_t budget) {
  return search_map(f, g, true, budget);
}

IsoSearchResult find_full_injective_operator(const Form& f, const Form& g, std::uint64_t budget) {
  return search_map(f, g, false, budget);
}

}  // namespace forma
