#include "forma/poset.hpp"

#include <string>

namespace forma {

namespace {
std::string el(int a) { return std::to_string(a); }
}  // namespace

CheckReport validate_poset(const FinPoset& p) {
  CheckReport rep;
  CheckItem& it = rep.item("poset");
  for (int a = 0; a < p.n; ++a) {
    if (!p.leq(a, a)) it.fail({"reflexivity", {{"element", el(a)}}, "a <= a fails"});
  }
  for (int a = 0; a < p.n; ++a) {
    for (int b = 0; b < p.n; ++b) {
      if (a != b && p.leq(a, b) && p.leq(b, a)) {
        it.fail({"antisymmetry", {{"a", el(a)}, {"b", el(b)}}, "mutual <= of distinct elements"});
      }
      if (!p.leq(a, b)) continue;
      for (int c = 0; c < p.n; ++c) {
        if (p.leq(b, c) && !p.leq(a, c)) {
          it.fail({"transitivity", {{"a", el(a)}, {"b", el(b)}, {"c", el(c)}}, "a<=b<=c but not a<=c"});
        }
      }
    }
  }
  rep.recompute_verdict();
  return rep;
}

LatticeCheck check_bounded_lattice(const FinPoset& p) {
  LatticeCheck out;
  out.report = validate_poset(p);
  if (!out.report.pass) {
    out.report.item("lattice").fail({"skipped", {}, "poset laws fail; lattice check not meaningful"});
    out.report.recompute_verdict();
    return out;
  }
  CheckItem& lat = out.report.item("lattice");
  LatticeData d;
  d.n = p.n;
  d.join_.assign(static_cast<size_t>(p.n) * p.n, -1);
  d.meet_.assign(static_cast<size_t>(p.n) * p.n, -1);

  for (int t = 0; t < p.n; ++t) {
    bool top = true, bot = true;
    for (int a = 0; a < p.n; ++a) {
      if (!p.leq(a, t)) top = false;
      if (!p.leq(t, a)) bot = false;
    }
    if (top) d.top = t;
    if (bot) d.bot = t;
  }
  if (p.n == 0) lat.fail({"empty", {}, "empty carrier has no top/bottom"});
  if (d.top < 0) lat.fail({"no-top", {}, "no greatest element"});
  if (d.bot < 0) lat.fail({"no-bottom", {}, "no least element"});

  for (int a = 0; a < p.n; ++a) {
    for (int b = a; b < p.n; ++b) {
      std::vector<int> ub, lb;
      for (int u = 0; u < p.n; ++u) {
        if (p.leq(a, u) && p.leq(b, u)) ub.push_back(u);
        if (p.leq(u, a) && p.leq(u, b)) lb.push_back(u);
      }
      auto j = least_of(p, ub);
      auto m = greatest_of(p, lb);
      if (!j) lat.fail({"no-join", {{"a", el(a)}, {"b", el(b)}}, "no least upper bound"});
      if (!m) lat.fail({"no-meet", {{"a", el(a)}, {"b", el(b)}}, "no greatest lower bound"});
      if (j) {
        d.join_[static_cast<size_t>(a) * p.n + b] = *j;
        d.join_[static_cast<size_t>(b) * p.n + a] = *j;
      }
      if (m) {
        d.meet_[static_cast<size_t>(a) * p.n + b] = *m;
        d.meet_[static_cast<size_t>(b) * p.n + a] = *m;
      }
    }
  }
  out.report.recompute_verdict();
  if (out.report.pass) out.data = std::move(d);
  return out;
}

std::optional<int> least_of(const FinPoset& p, const std::vector<int>& subset) {
  for (int a : subset) {
    bool ok = true;
    for (int b : subset) {
      if (!p.leq(a, b)) {
        ok = false;
        break;
      }
    }
    if (ok) return a;  // unique by antisymmetry
  }
  return std::nullopt;
}

std::optional<int> greatest_of(const FinPoset& p, const std::vector<int>& subset) {
  for (int a : subset) {
    bool ok = true;
    for (int b : subset) {
      if (!p.leq(b, a)) {
        ok = false;
        break;
      }
    }
    if (ok) return a;
  }
  return std::nullopt;
}

}  // namespace forma
