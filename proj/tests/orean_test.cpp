#include "doctest.h"

#include <algorithm>
#include <set>

#include "forma/orean.hpp"
#include "forma/zoo.hpp"

using namespace forma;

namespace {

std::vector<int> images_of(const FinCategory& c, MorId f) {
  const std::string& nm = c.morphisms[f].name;
  std::vector<int> img;
  auto lb = nm.find('[');
  int cur = -1;
  for (size_t i = lb + 1; i < nm.size() && nm[i] != ']'; ++i) {
    if (nm[i] == ',') {
      img.push_back(cur);
      cur = -1;
    } else {
      if (cur < 0) cur = 0;
      cur = cur * 10 + (nm[i] - '0');
    }
  }
  if (cur >= 0) img.push_back(cur);
  return img;
}

struct Fixture {
  CatPtr c3 = zoo::finset_skeleton(3);
  Form S, E, Q, P;
  OreanForm oS, oE, oQ, oP;
  Fixture() {
    S = zoo::subsets_form(c3);
    E = zoo::equivrel_form(c3);
    Q = zoo::class_pairs_form(c3);
    P = zoo::palettes_form(c3);
    oS = std::move(*check_orean(S).orean);
    oE = std::move(*check_orean(E).orean);
    oQ = std::move(*check_orean(Q).orean);
    oP = std::move(*check_orean(P).orean);
  }
};

Fixture& fx() {
  static Fixture f;
  return f;
}

// independent oracle: f·S and T·f recomputed via least_of/greatest_of
void check_images_against_bruteforce(const OreanForm& of) {
  const FinCategory& c = of.cat();
  const Form& F = of.form();
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    ObjId d = c.dom(f), cd = c.cod(f);
    FinPoset pc = F.fiber_poset(cd), pd = F.fiber_poset(d);
    for (ClusterId s = 0; s < F.fiber_size(d); ++s) {
      std::vector<int> up;
      for (ClusterId t = 0; t < F.fiber_size(cd); ++t) {
        if (F.geq(f, t, s)) up.push_back(t);
      }
      REQUIRE(least_of(pc, up) == of.di(f, s));
    }
    for (ClusterId t = 0; t < F.fiber_size(cd); ++t) {
      std::vector<int> down;
      for (ClusterId s = 0; s < F.fiber_size(d); ++s) {
        if (F.geq(f, t, s)) down.push_back(s);
      }
      REQUIRE(greatest_of(pd, down) == of.ii(f, t));
    }
  }
}

}  // namespace

TEST_CASE("subsets_form is orean; direct image = pointwise image, inverse = preimage") {
  const auto& f = fx();
  check_images_against_bruteforce(f.oS);
  const FinCategory& c = *f.c3;
  for (MorId m = 0; m < c.n_morphisms(); ++m) {
    auto img = images_of(c, m);
    for (int s = 0; s < f.S.fiber_size(c.dom(m)); ++s) {
      std::uint32_t fwd = 0;
      for (size_t i = 0; i < img.size(); ++i) {
        if (s & (1 << i)) fwd |= 1u << img[i];
      }
      CHECK(f.oS.di(m, s) == static_cast<int>(fwd));
    }
    for (int t = 0; t < f.S.fiber_size(c.cod(m)); ++t) {
      std::uint32_t pre = 0;
      for (size_t i = 0; i < img.size(); ++i) {
        if (t & (1 << img[i])) pre |= 1u << i;
      }
      CHECK(f.oS.ii(m, t) == static_cast<int>(pre));
    }
  }
}

TEST_CASE("equivrel_form is orean; bottom is the diagonal, top the total relation") {
  const auto& f = fx();
  check_images_against_bruteforce(f.oE);
  // partitions_of order: index 0 is the single-block partition (top);
  // the all-singletons partition (bottom) is the last index
  for (ObjId x = 0; x < f.c3->n_objects(); ++x) {
    CHECK(f.oE.top(x) == 0);
    CHECK(f.oE.bot(x) == f.E.fiber_size(x) - 1);
  }
}

TEST_CASE("palettes_form is orean and realizes the listed constants") {
  const auto& f = fx();
  const FinCategory& c = *f.c3;
  // bottom = {∅}, top = {X}
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    CHECK(f.P.clusters[x][f.oP.bot(x)] == "{{}}");
    std::string full = "{" + zoo::subset_name(x, (1u << x) - 1) + "}";
    CHECK(f.P.clusters[x][f.oP.top(x)] == full);
  }
}

TEST_CASE("images and kernels: identity, S2->S1, kernel pairs") {
  const auto& f = fx();
  const FinCategory& c = *f.c3;
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    MorId idm = c.identity[x];
    CHECK(f.oS.image(idm) == f.oS.top(x));
    CHECK(f.oS.kernel(idm) == f.oS.bot(x));
  }
  MorId s21 = c.hom(2, 1).at(0);
  CHECK(f.oS.image(s21) == f.oS.top(1));  // Im = {0} = top of S1's fiber
  CHECK(f.oS.kernel(s21) == 0);           // Ker = empty subset

  // equivrel kernel = kernel-pair relation of f (oracle on payloads)
  for (MorId m = 0; m < c.n_morphisms(); ++m) {
    auto img = images_of(c, m);
    ClusterId k = f.oE.kernel(m);
    auto parts = zoo::partitions_of(c.dom(m) /* object size == id payload length */);
    const auto& part = parts[k];
    for (size_t i = 0; i < img.size(); ++i) {
      for (size_t j = 0; j < img.size(); ++j) {
        CHECK((part[i] == part[j]) == (img[i] == img[j]));
      }
    }
  }
}

TEST_CASE("classification: subsets all conormal / only empty normal; equivrel dual") {
  const auto& f = fx();
  ClusterClassification cs = classify(f.oS);
  for (ObjId x = 0; x < f.c3->n_objects(); ++x) {
    for (int a = 0; a < f.S.fiber_size(x); ++a) {
      CHECK(cs.conormal[x][a] == 1);
      CHECK(cs.normal[x][a] == (a == 0 ? 1 : 0));  // only the empty subset
    }
  }
  ClusterClassification ce = classify(f.oE);
  auto parts3 = zoo::partitions_of(3);
  for (ObjId x = 0; x < f.c3->n_objects(); ++x) {
    for (int a = 0; a < f.E.fiber_size(x); ++a) {
      CHECK(ce.normal[x][a] == 1);
      // conormal iff at most one non-singleton class
      auto part = zoo::partitions_of(x)[a];
      int nc = part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
      int nonsingleton = 0;
      for (int cl = 0; cl < nc; ++cl) {
        if (std::count(part.begin(), part.end(), cl) > 1) ++nonsingleton;
      }
      CHECK(ce.conormal[x][a] == (nonsingleton <= 1 ? 1 : 0));
    }
  }
}

TEST_CASE("classify on the dual swaps conormal/normal and interiors/exteriors") {
  const auto& f = fx();
  Form D = dual_form(f.S);
  auto od = check_orean(D);
  REQUIRE(od.orean.has_value());
  ClusterClassification a = classify(f.oS);
  ClusterClassification b = classify(*od.orean);
  CHECK(a.conormal == b.normal);
  CHECK(a.normal == b.conormal);
  // interior of one polarity pairs with the exterior of the other
  CHECK(a.conormal_interior == b.normal_exterior);
  CHECK(a.conormal_exterior == b.normal_interior);
  CHECK(a.normal_interior == b.conormal_exterior);
  CHECK(a.normal_exterior == b.conormal_interior);
}

TEST_CASE("class-pairs fiber over S2: conormal and normal clusters as expected") {
  const auto& f = fx();
  // fiber over S2 has 5 clusters; 4 conormal (images), 2 normal (kernels)
  CHECK(f.Q.fiber_size(2) == 5);
  int ncon = 0, nnor = 0;
  for (int a = 0; a < 5; ++a) {
    ncon += f.oQ.conormal[2][a];
    nnor += f.oQ.normal[2][a];
  }
  CHECK(ncon == 4);
  CHECK(nnor == 2);
  // oracle: enumerate Im m over all m into S2
  std::set<int> ims, kers;
  for (MorId m : f.c3->into(2)) ims.insert(f.oQ.image(m));
  for (MorId m : f.c3->out_of(2)) kers.insert(f.oQ.kernel(m));
  CHECK(static_cast<int>(ims.size()) == ncon);
  CHECK(static_cast<int>(kers.size()) == nnor);
}

TEST_CASE("embeddings: identity embeds the top; injections embed subsets") {
  const auto& f = fx();
  const FinCategory& c = *f.c3;
  // the identity is an embedding of the top cluster
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    auto embs = find_embeddings(f.oS, x, f.oS.top(x));
    CHECK(std::find(embs.begin(), embs.end(), c.identity[x]) != embs.end());
    // and every embedding of the top is an isomorphism
    for (MorId m : embs) CHECK(f.oS.mor_iso[m]);
    // dually the identity is a quotient of the bottom
    auto quos = find_quotients(f.oS, x, f.oS.bot(x));
    CHECK(std::find(quos.begin(), quos.end(), c.identity[x]) != quos.end());
  }
  // A = {0} in S2: least embedding is the injection S1 -> S2 hitting 0
  MorId e = f.oS.embedding_of(2, 0b01);
  REQUIRE(e >= 0);
  CHECK(c.dom(e) == 1);
  CHECK(images_of(c, e) == std::vector<int>{0});
  // any two embeddings of the same cluster differ by an isomorphism
  auto embs = find_embeddings(f.oS, 2, 0b01);
  for (MorId m1 : embs) {
    for (MorId m2 : embs) {
      bool linked = false;
      for (MorId i : c.hom(c.dom(m1), c.dom(m2))) {
        if (f.oS.mor_iso[i] && c.compose(m2, i) == m1) linked = true;
      }
      CHECK(linked);
    }
  }
}

TEST_CASE("quotients: equivrel quotient of {{0,1},{2}} collapses 0 and 1") {
  const auto& f = fx();
  const FinCategory& c = *f.c3;
  auto parts = zoo::partitions_of(3);
  int target = -1;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] == std::vector<int>{0, 0, 1}) target = static_cast<int>(i);
  }
  REQUIRE(target >= 0);
  MorId q = f.oE.quotient_of(3, target);
  REQUIRE(q >= 0);
  CHECK(c.cod(q) == 2);
  auto img = images_of(c, q);
  CHECK(img[0] == img[1]);
  CHECK(img[0] != img[2]);
}

TEST_CASE("noetherian dichotomy: subsets vs equivrel vs class-pairs") {
  const auto& f = fx();

  CheckReport rs = check_noetherian(f.oS);
  CHECK_FALSE(rs.pass);
  CHECK_FALSE(rs.item_passed("N1-join"));
  CHECK(rs.item_passed("N1-meet"));
  CHECK_FALSE(rs.item_passed("N2"));
  CHECK(rs.item_passed("N3"));
  CHECK_FALSE(rs.find("N1-join")->witnesses.empty());
  CHECK_FALSE(rs.find("N2")->witnesses.empty());

  CheckReport re = check_noetherian(f.oE);
  CHECK(re.item_passed("N1-join"));
  CHECK(re.item_passed("N1-meet"));
  CHECK_FALSE(re.item_passed("N2"));
  CHECK(re.item_passed("N3"));

  CheckReport rq = check_noetherian(f.oQ);
  CHECK(rq.pass);
  CHECK(rq.item_passed("restricted-modular"));
}

TEST_CASE("noetherian battery is stable under duality (join <-> meet)") {
  const auto& f = fx();
  Form D = dual_form(f.S);
  auto od = check_orean(D);
  REQUIRE(od.orean.has_value());
  CheckReport r = check_noetherian(f.oS);
  CheckReport rd = check_noetherian(*od.orean);
  CHECK(r.item_passed("N1-join") == rd.item_passed("N1-meet"));
  CHECK(r.item_passed("N1-meet") == rd.item_passed("N1-join"));
  CHECK(r.item_passed("N2") == rd.item_passed("N2"));
  CHECK(r.item_passed("N3") == rd.item_passed("N3"));
}

TEST_CASE("hulls: conormal hull of subsets is subsets; strongly orean checks") {
  const auto& f = fx();
  HullResult hc = hull_conormal(f.oS);
  REQUIRE(hc.orean);
  // every cluster conormal: the hull is the whole form
  CHECK(hc.hull->form().rel == f.S.rel);

  StronglyOreanResult so = check_strongly_orean(f.oS);
  CHECK(so.strongly_orean);  // normal hull = bottom clusters only, an isoform
  StronglyOreanResult soe = check_strongly_orean(f.oE);
  CHECK(soe.strongly_orean);
  StronglyOreanResult soq = check_strongly_orean(f.oQ);
  CHECK(soq.strongly_orean);
}

TEST_CASE("closure census over finset(3): frozen counts and named members") {
  const auto& f = fx();

  ClosureCensus cs = enumerate_closure_operators(f.oS, false);
  REQUIRE_FALSE(cs.budget_exhausted);
  CHECK(cs.operators.size() == 3);

  // independent oracle: dumb product enumeration over inflationary choices
  {
    const FinCategory& c = *f.c3;
    long long count = 0;
    std::vector<std::pair<ObjId, ClusterId>> slots;
    for (ObjId x = 0; x < c.n_objects(); ++x) {
      for (int s = 0; s < f.S.fiber_size(x); ++s) slots.push_back({x, s});
    }
    std::vector<std::vector<int>> asg(c.n_objects());
    for (ObjId x = 0; x < c.n_objects(); ++x) asg[x].assign(f.S.fiber_size(x), -1);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == slots.size()) {
        for (MorId m = 0; m < c.n_morphisms(); ++m) {
          for (int a = 0; a < f.S.fiber_size(c.dom(m)); ++a) {
            for (int b = 0; b < f.S.fiber_size(c.cod(m)); ++b) {
              if (f.S.geq(m, b, a) && !f.S.geq(m, asg[c.cod(m)][b], asg[c.dom(m)][a])) return;
            }
          }
        }
        ++count;
        return;
      }
      auto [x, s] = slots[i];
      for (int t = 0; t < f.S.fiber_size(x); ++t) {
        if (!f.S.leq(x, s, t)) continue;
        asg[x][s] = t;
        rec(i + 1);
        asg[x][s] = -1;
      }
    };
    rec(0);
    CHECK(count == 3);
  }

  // the three named closure operators are members
  auto is_identity = [&](const Operator& t) {
    for (ObjId x = 0; x < f.c3->n_objects(); ++x) {
      for (int s = 0; s < f.S.fiber_size(x); ++s) {
        if (t.assign[x][s] != s) return false;
      }
    }
    return true;
  };
  auto is_const_top = [&](const Operator& t) {
    for (ObjId x = 0; x < f.c3->n_objects(); ++x) {
      for (int s = 0; s < f.S.fiber_size(x); ++s) {
        if (t.assign[x][s] != f.oS.top(x)) return false;
      }
    }
    return true;
  };
  auto is_empty_fixed = [&](const Operator& t) {
    for (ObjId x = 0; x < f.c3->n_objects(); ++x) {
      for (int s = 0; s < f.S.fiber_size(x); ++s) {
        int expect = (s == 0) ? 0 : f.oS.top(x);
        if (t.assign[x][s] != expect) return false;
      }
    }
    return true;
  };
  int found_id = 0, found_top = 0, found_ef = 0;
  for (const auto& t : cs.operators) {
    found_id += is_identity(t);
    found_top += is_const_top(t);
    found_ef += is_empty_fixed(t);
  }
  CHECK(found_id == 1);
  CHECK(found_top == 1);
  CHECK(found_ef == 1);
  for (char i : cs.idempotent) CHECK(i == 1);

  ClosureCensus cos = enumerate_closure_operators(f.oS, true);
  CHECK(cos.operators.size() == 2);  // identity and constant-bottom

  ClosureCensus ce = enumerate_closure_operators(f.oE, false);
  CHECK(ce.operators.size() == 2);  // identity and constant-top
  ClosureCensus coe = enumerate_closure_operators(f.oE, true);
  CHECK(coe.operators.size() == 2);
}

TEST_CASE("closed subform of the empty-fixed closure verifies derived structure") {
  const auto& f = fx();
  ClosureCensus cs = enumerate_closure_operators(f.oS, false);
  for (auto t : cs.operators) {
    t.src = &f.oS.form();
    t.dst = &f.oS.form();
    ClosedSubformResult r = closed_subform(f.oS, t);
    REQUIRE(r.report.pass);
    REQUIRE(r.closed.has_value());
  }
}

TEST_CASE("operator normality: collapse operator and constant-bottom") {
  const auto& f = fx();
  const FinCategory& c = *f.c3;

  // subsets -> equivrel, S |-> relation collapsing S (conormal, not normal)
  Operator tau;
  tau.src = &f.S;
  tau.dst = &f.E;
  tau.assign.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    auto parts = zoo::partitions_of(x);
    for (int s = 0; s < f.S.fiber_size(x); ++s) {
      // partition: members of s in one class, everything else singletons
      std::vector<int> want(x, -1);
      int next_class = 0;
      int sclass = -1;
      for (int i = 0; i < x; ++i) {
        if (s & (1 << i)) {
          if (sclass < 0) sclass = next_class++;
          want[i] = sclass;
        } else {
          want[i] = next_class++;
        }
      }
      int index = -1;
      for (size_t p = 0; p < parts.size(); ++p) {
        if (parts[p] == want) index = static_cast<int>(p);
      }
      REQUIRE(index >= 0);
      tau.assign[x].push_back(index);
    }
  }
  REQUIRE(validate_operator(tau).valid);
  OperatorNormality on = operator_normality(tau, f.oS, f.oE);
  CHECK(on.conormal);
  CHECK_FALSE(on.normal);
  CHECK(on.side_conditions.pass);

  // equivrel -> subsets, constant bottom (normal, not conormal)
  Operator bot;
  bot.src = &f.E;
  bot.dst = &f.S;
  bot.assign.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) bot.assign[x].assign(f.E.fiber_size(x), 0);
  REQUIRE(validate_operator(bot).valid);
  OperatorNormality on2 = operator_normality(bot, f.oE, f.oS);
  CHECK(on2.normal);
  CHECK_FALSE(on2.conormal);
}

TEST_CASE("special predicates across the zoo") {
  const auto& f = fx();
  SpecialPredicates ps = special_predicates(f.oS);
  CHECK(ps.conormal_form);
  CHECK(ps.antinormal);
  CHECK_FALSE(ps.normal_form);
  CHECK_FALSE(ps.isoform);
  CHECK(ps.report.pass);

  SpecialPredicates pp = special_predicates(f.oP);
  CHECK(pp.antinormal);
  CHECK_FALSE(pp.conormal_form);
  CHECK(pp.report.pass);

  SpecialPredicates pe = special_predicates(f.oE);
  CHECK(pe.normal_form);
  // not anticonormal: the diagonal is conormal (image of any injection) yet
  // is not the top cluster
  CHECK_FALSE(pe.anticonormal);

  // top subform of any orean form is an isoform
  SubformResult tops = top_subform(f.oS);
  REQUIRE(tops.form.has_value());
  auto oc = check_orean(*tops.form);
  REQUIRE(oc.orean.has_value());
  SpecialPredicates pt = special_predicates(*oc.orean);
  CHECK(pt.isoform);
}

TEST_CASE("palette operators: union-collapse is a closure, merge is idempotent") {
  // ω on palettes (merge overlapping blocks) is a valid idempotent operator;
  // needs a 3-set to exhibit non-injectivity ({{0,1},{1,2}} and {{0,1,2}}
  // both merge to {{0,1,2}})
  const Form& P2 = fx().P;
  auto c2 = fx().c3;

  // decode palettes and build ω by payload
  auto decode = [&](ObjId x, int a) {
    std::vector<std::uint32_t> masks;
    const std::string& nm = P2.clusters[x][a];
    std::uint32_t cur = 0;
    bool in = false;
    for (size_t i = 1; i + 1 < nm.size(); ++i) {
      char ch = nm[i];
      if (ch == '{') {
        in = true;
        cur = 0;
      } else if (ch == '}') {
        if (in) masks.push_back(cur);
        in = false;
      } else if (ch >= '0' && ch <= '9') {
        cur |= 1u << (ch - '0');
      }
    }
    return masks;
  };
  auto encode = [&](ObjId x, std::vector<std::uint32_t> masks) {
    std::sort(masks.begin(), masks.end());
    for (int a = 0; a < P2.fiber_size(x); ++a) {
      auto d = decode(x, a);
      std::sort(d.begin(), d.end());
      if (d == masks) return a;
    }
    return -1;
  };
  Operator omega;
  omega.src = &P2;
  omega.dst = &P2;
  omega.assign.resize(c2->n_objects());
  for (ObjId x = 0; x < c2->n_objects(); ++x) {
    for (int a = 0; a < P2.fiber_size(x); ++a) {
      auto masks = decode(x, a);
      // merge overlapping blocks until separated
      bool merged = true;
      while (merged) {
        merged = false;
        for (size_t i = 0; i < masks.size() && !merged; ++i) {
          for (size_t j = i + 1; j < masks.size(); ++j) {
            if (masks[i] & masks[j]) {
              masks[i] |= masks[j];
              masks.erase(masks.begin() + j);
              merged = true;
              break;
            }
          }
        }
      }
      int idx = encode(x, masks);
      REQUIRE(idx >= 0);
      omega.assign[x].push_back(idx);
    }
  }
  OperatorFlags fl = validate_operator(omega);
  CHECK(fl.valid);
  CHECK(fl.idempotent);
  CHECK_FALSE(fl.injective);
}

TEST_CASE("orean failure modes are reported under distinct items") {
  // O1 failure: a two-element antichain fiber over the one-object category
  {
    auto one = std::make_shared<FinCategory>();
    one->objects = {"*"};
    one->morphisms = {{0, 0, "id"}};
    one->identity = {0};
    one->compose_tab = {{0}};
    one->finalize();
    Form F;
    F.base = one;
    F.clusters = {{"a", "b"}};
    BoolMat m(2, 2);
    m.set(0, 0, true);
    m.set(1, 1, true);
    F.rel = {m};
    REQUIRE(validate_form(F).pass);
    OreanCheck oc = check_orean(F);
    CHECK_FALSE(oc.report.pass);
    CHECK_FALSE(oc.report.item_passed("O1"));
    CHECK_FALSE(oc.orean.has_value());
  }
  // O2 failure with F2 intact: a composite related without a mediator
  {
    auto chain = zoo::chain_category(2);
    MorId f = -1, g = -1, gf = -1;
    for (MorId m = 0; m < chain->n_morphisms(); ++m) {
      if (chain->dom(m) == 0 && chain->cod(m) == 1) f = m;
      if (chain->dom(m) == 1 && chain->cod(m) == 2) g = m;
      if (chain->dom(m) == 0 && chain->cod(m) == 2) gf = m;
    }
    Form F;
    F.base = chain;
    F.clusters = {{"c"}, {"c"}, {"c"}};
    F.rel.resize(chain->n_morphisms());
    for (MorId m = 0; m < chain->n_morphisms(); ++m) {
      BoolMat mat(1, 1);
      bool ident = chain->dom(m) == chain->cod(m);
      mat.set(0, 0, ident || m == gf);  // relate only the long composite
      F.rel[m] = mat;
    }
    (void)f;
    (void)g;
    REQUIRE(validate_form(F).pass);  // F2's premise is vacuous here
    OreanCheck oc = check_orean(F);
    CHECK_FALSE(oc.report.pass);
    CHECK_FALSE(oc.report.item_passed("O2"));
    // O3 also fails: no cluster above along f
    CHECK_FALSE(oc.report.item_passed("O3"));
  }
}
