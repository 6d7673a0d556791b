#include "forma/fincat.hpp"

#include <algorithm>
#include <sstream>

namespace forma {

namespace {

std::string mor_ref(const FinCategory& c, MorId f) {
  std::ostringstream os;
  os << f;
  if (f >= 0 && f < c.n_morphisms() && !c.morphisms[f].name.empty()) {
    os << " (" << c.morphisms[f].name << ")";
  }
  return os.str();
}

}  // namespace

void FinCategory::finalize() {
  const int no = n_objects();
  hom_.assign(no, std::vector<std::vector<MorId>>(no));
  into_.assign(no, {});
  out_.assign(no, {});
  for (MorId f = 0; f < n_morphisms(); ++f) {
    const Mor& m = morphisms[f];
    hom_[m.dom][m.cod].push_back(f);
    into_[m.cod].push_back(f);
    out_[m.dom].push_back(f);
  }
}

bool FinCategory::structurally_equal(const FinCategory& other) const {
  if (objects.size() != other.objects.size()) return false;
  if (morphisms.size() != other.morphisms.size()) return false;
  for (size_t i = 0; i < morphisms.size(); ++i) {
    if (morphisms[i].dom != other.morphisms[i].dom) return false;
    if (morphisms[i].cod != other.morphisms[i].cod) return false;
  }
  return identity == other.identity && compose_tab == other.compose_tab;
}

CheckReport validate_category(const FinCategory& c) {
  CheckReport rep;
  CheckItem& table = rep.item("table");
  CheckItem& ident = rep.item("identity-laws");
  CheckItem& assoc = rep.item("associativity");

  const int no = c.n_objects();
  const int nm = c.n_morphisms();

  for (MorId f = 0; f < nm; ++f) {
    const auto& m = c.morphisms[f];
    if (m.dom < 0 || m.dom >= no || m.cod < 0 || m.cod >= no) {
      table.fail({"dangling-object", {{"morphism", mor_ref(c, f)}}, "dom/cod out of range"});
    }
  }
  if (static_cast<int>(c.identity.size()) != no) {
    table.fail({"identity-table-size", {}, "identity table must have one entry per object"});
  } else {
    for (ObjId x = 0; x < no; ++x) {
      MorId i = c.identity[x];
      if (i < 0 || i >= nm) {
        table.fail({"dangling-identity", {{"object", c.objects[x]}}, "identity id out of range"});
      } else if (c.dom(i) != x || c.cod(i) != x) {
        table.fail({"identity-endpoints", {{"object", c.objects[x]}, {"morphism", mor_ref(c, i)}},
                    "identity must be an endomorphism of its object"});
      }
    }
  }
  if (static_cast<int>(c.compose_tab.size()) != nm) {
    table.fail({"compose-table-size", {}, "compose table must be |mor| x |mor|"});
  } else {
    for (MorId g = 0; g < nm; ++g) {
      if (static_cast<int>(c.compose_tab[g].size()) != nm) {
        table.fail({"compose-table-size", {{"morphism", mor_ref(c, g)}}, "row size mismatch"});
        continue;
      }
      for (MorId f = 0; f < nm; ++f) {
        MorId gf = c.compose_tab[g][f];
        bool comp = c.composable(g, f);
        if (!comp && gf != -1) {
          table.fail({"compose-off-domain", {{"g", mor_ref(c, g)}, {"f", mor_ref(c, f)}},
                      "defined on a non-composable pair"});
        }
        if (comp) {
          if (gf < 0 || gf >= nm) {
            table.fail({"dangling-composite", {{"g", mor_ref(c, g)}, {"f", mor_ref(c, f)}},
                        "composite id out of range"});
          } else if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g)) {
            table.fail({"composite-endpoints", {{"g", mor_ref(c, g)}, {"f", mor_ref(c, f)}},
                        "composite must land in hom(dom f, cod g)"});
          }
        }
      }
    }
  }
  if (!table.pass) {
    rep.recompute_verdict();
    return rep;  // laws are meaningless over a malformed table
  }

  for (MorId f = 0; f < nm; ++f) {
    if (c.compose(c.identity[c.cod(f)], f) != f || c.compose(f, c.identity[c.dom(f)]) != f) {
      ident.fail({"identity-law", {{"morphism", mor_ref(c, f)}}, "id∘f or f∘id differs from f"});
    }
  }
  for (MorId h = 0; h < nm; ++h) {
    for (MorId g = 0; g < nm; ++g) {
      if (!c.composable(h, g)) continue;
      for (MorId f = 0; f < nm; ++f) {
        if (!c.composable(g, f)) continue;
        if (c.compose(h, c.compose(g, f)) != c.compose(c.compose(h, g), f)) {
          assoc.fail({"associativity",
                      {{"h", mor_ref(c, h)}, {"g", mor_ref(c, g)}, {"f", mor_ref(c, f)}},
                      "h∘(g∘f) differs from (h∘g)∘f"});
        }
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

FinCategory opposite(const FinCategory& c) {
  FinCategory o;
  o.objects = c.objects;
  o.morphisms.reserve(c.morphisms.size());
  for (const auto& m : c.morphisms) o.morphisms.push_back({m.cod, m.dom, m.name});
  o.identity = c.identity;
  const int nm = c.n_morphisms();
  o.compose_tab.assign(nm, std::vector<MorId>(nm, -1));
  for (MorId g = 0; g < nm; ++g) {
    for (MorId f = 0; f < nm; ++f) {
      if (c.composable(g, f)) o.compose_tab[f][g] = c.compose_tab[g][f];
    }
  }
  o.finalize();
  return o;
}

CatPtr opposite(const CatPtr& c) { return std::make_shared<FinCategory>(opposite(*c)); }

bool is_mono(const FinCategory& c, MorId f) {
  for (ObjId w = 0; w < c.n_objects(); ++w) {
    const auto& hs = c.hom(w, c.dom(f));
    for (size_t i = 0; i < hs.size(); ++i) {
      for (size_t j = i + 1; j < hs.size(); ++j) {
        if (c.compose(f, hs[i]) == c.compose(f, hs[j])) return false;
      }
    }
  }
  return true;
}

bool is_epi(const FinCategory& c, MorId f) {
  for (ObjId w = 0; w < c.n_objects(); ++w) {
    const auto& hs = c.hom(c.cod(f), w);
    for (size_t i = 0; i < hs.size(); ++i) {
      for (size_t j = i + 1; j < hs.size(); ++j) {
        if (c.compose(hs[i], f) == c.compose(hs[j], f)) return false;
      }
    }
  }
  return true;
}

std::optional<MorId> inverse_of(const FinCategory& c, MorId f) {
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    if (c.compose(g, f) == c.identity[c.dom(f)] && c.compose(f, g) == c.identity[c.cod(f)]) {
      return g;
    }
  }
  return std::nullopt;
}

bool is_iso(const FinCategory& c, MorId f) { return inverse_of(c, f).has_value(); }

MorphismFlags morphism_flags(const FinCategory& c, MorId f) {
  MorphismFlags fl;
  fl.mono = is_mono(c, f);
  fl.epi = is_epi(c, f);
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    if (c.compose(g, f) == c.identity[c.dom(f)]) fl.split_mono = true;
    if (c.compose(f, g) == c.identity[c.cod(f)]) fl.split_epi = true;
  }
  fl.iso = inverse_of(c, f).has_value();
  return fl;
}

bool is_pullback(const FinCategory& c, const CommutativeSquare& s) {
  // square: top: P→B, left: P→A, bottom: A→C, right: B→C
  if (c.compose(s.right, s.top) != c.compose(s.bottom, s.left)) return false;
  ObjId P = c.dom(s.top);
  for (ObjId w = 0; w < c.n_objects(); ++w) {
    for (MorId a : c.hom(w, c.dom(s.bottom))) {
      for (MorId b : c.hom(w, c.dom(s.right))) {
        if (c.compose(s.bottom, a) != c.compose(s.right, b)) continue;
        int found = 0;
        for (MorId h : c.hom(w, P)) {
          if (c.compose(s.left, h) == a && c.compose(s.top, h) == b) ++found;
        }
        if (found != 1) return false;
      }
    }
  }
  return true;
}

bool is_pushout(const FinCategory& c, const CommutativeSquare& s) {
  if (c.compose(s.right, s.top) != c.compose(s.bottom, s.left)) return false;
  ObjId Q = c.cod(s.bottom);
  for (ObjId w = 0; w < c.n_objects(); ++w) {
    for (MorId a : c.hom(c.cod(s.left), w)) {
      for (MorId b : c.hom(c.cod(s.top), w)) {
        if (c.compose(a, s.left) != c.compose(b, s.top)) continue;
        int found = 0;
        for (MorId h : c.hom(Q, w)) {
          if (c.compose(h, s.bottom) == a && c.compose(h, s.right) == b) ++found;
        }
        if (found != 1) return false;
      }
    }
  }
  return true;
}

std::optional<CommutativeSquare> pullback(const FinCategory& c, MorId f, MorId g) {
  if (c.cod(f) != c.cod(g)) return std::nullopt;
  for (ObjId p = 0; p < c.n_objects(); ++p) {
    for (MorId left : c.hom(p, c.dom(f))) {
      for (MorId top : c.hom(p, c.dom(g))) {
        if (c.compose(f, left) != c.compose(g, top)) continue;
        CommutativeSquare s{top, f, left, g, SquareKind::plain};
        if (is_pullback(c, s)) {
          s.kind = SquareKind::pullback;
          return s;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<CommutativeSquare> pushout(const FinCategory& c, MorId f, MorId g) {
  if (c.dom(f) != c.dom(g)) return std::nullopt;
  for (ObjId q = 0; q < c.n_objects(); ++q) {
    for (MorId bottom : c.hom(c.cod(f), q)) {
      for (MorId right : c.hom(c.cod(g), q)) {
        if (c.compose(bottom, f) != c.compose(right, g)) continue;
        CommutativeSquare s{g, bottom, f, right, SquareKind::plain};
        if (is_pushout(c, s)) {
          s.kind = SquareKind::pushout;
          return s;
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<ObjId> initial_object(const FinCategory& c) {
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    bool ok = true;
    for (ObjId y = 0; y < c.n_objects() && ok; ++y) {
      if (c.hom(x, y).size() != 1) ok = false;
    }
    if (ok) return x;
  }
  return std::nullopt;
}

std::optional<ObjId> terminal_object(const FinCategory& c) {
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    bool ok = true;
    for (ObjId y = 0; y < c.n_objects() && ok; ++y) {
      if (c.hom(y, x).size() != 1) ok = false;
    }
    if (ok) return x;
  }
  return std::nullopt;
}

std::optional<ObjId> zero_object(const FinCategory& c) {
  auto i = initial_object(c);
  auto t = terminal_object(c);
  if (i && t && *i == *t) return i;
  // any initial object isomorphic to a terminal one also qualifies
  if (i && t) {
    for (MorId f : c.hom(*i, *t)) {
      if (is_iso(c, f)) return i;
    }
  }
  return std::nullopt;
}

bool is_regular_epi(const FinCategory& c, MorId e) {
  ObjId X = c.dom(e);
  for (ObjId w = 0; w < c.n_objects(); ++w) {
    for (MorId u : c.hom(w, X)) {
      for (MorId v : c.hom(w, X)) {
        if (c.compose(e, u) != c.compose(e, v)) continue;
        // is e the coequalizer of (u, v)?
        bool ok = true;
        for (ObjId z = 0; z < c.n_objects() && ok; ++z) {
          for (MorId g : c.hom(X, z)) {
            if (c.compose(g, u) != c.compose(g, v)) continue;
            int found = 0;
            for (MorId h : c.hom(c.cod(e), z)) {
              if (c.compose(h, e) == g) ++found;
            }
            if (found != 1) {
              ok = false;
              break;
            }
          }
        }
        if (ok) return true;
      }
    }
  }
  return false;
}

bool is_regular_mono(const FinCategory& c, MorId m) { return is_regular_epi(opposite(c), m); }

}  // namespace forma
