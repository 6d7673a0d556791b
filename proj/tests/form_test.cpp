#include "doctest.h"

#include "forma/form.hpp"
#include "forma/orean.hpp"
#include "forma/zoo.hpp"

using namespace forma;

namespace {

CatPtr one_object() {
  auto c = std::make_shared<FinCategory>();
  c->objects = {"*"};
  c->morphisms = {{0, 0, "id"}};
  c->identity = {0};
  c->compose_tab = {{0}};
  c->finalize();
  return c;
}

/// Poset-as-form over the one-object category: rel(id) = leq transposed.
Form poset_form(const FinPoset& p) {
  Form F;
  F.base = one_object();
  F.label = "poset";
  F.clusters.resize(1);
  for (int i = 0; i < p.n; ++i) F.clusters[0].push_back("e" + std::to_string(i));
  BoolMat m(p.n, p.n);
  for (int a = 0; a < p.n; ++a) {
    for (int b = 0; b < p.n; ++b) m.set(b, a, p.leq(a, b));
  }
  F.rel = {m};
  return F;
}

}  // namespace

TEST_CASE("a partial order over the one-object category is a form") {
  FinPoset p(3);
  for (int a = 0; a < 3; ++a) {
    for (int b = a; b < 3; ++b) p.set(a, b, true);  // chain
  }
  Form F = poset_form(p);
  CHECK(validate_form(F).pass);

  // breaking antisymmetry breaks F3
  Form bad = F;
  bad.rel[0].set(0, 1, true);  // now 0 <= 1 and 1 <= 0
  CheckReport rep = validate_form(bad);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.item_passed("F3"));
}

TEST_CASE("zoo forms over finset(3) validate") {
  auto c = zoo::finset_skeleton(3);
  CHECK(validate_form(zoo::subsets_form(c)).pass);
  CHECK(validate_form(zoo::equivrel_form(c)).pass);
  CHECK(validate_form(zoo::class_pairs_form(c)).pass);
  CHECK(validate_form(zoo::palettes_form(c)).pass);
}

TEST_CASE("deleting one composite relation entry breaks F2 with a witness") {
  auto c = zoo::finset_skeleton(2);
  Form F = zoo::equivrel_form(c);
  // find a composite gf with a related pair through a mediator, then cut it
  bool mutated = false;
  for (MorId g = 0; g < c->n_morphisms() && !mutated; ++g) {
    for (MorId f = 0; f < c->n_morphisms() && !mutated; ++f) {
      if (!c->composable(g, f)) continue;
      MorId gf = c->compose(g, f);
      if (gf == g || gf == f) continue;  // avoid mutating a factor
      for (int b = 0; b < F.fiber_size(c->cod(g)) && !mutated; ++b) {
        for (int a = 0; a < F.fiber_size(c->dom(f)); ++a) {
          if (F.geq(gf, b, a) && gf != c->identity[c->dom(f)]) {
            bool mediated = false;
            for (int mid = 0; mid < F.fiber_size(c->cod(f)); ++mid) {
              if (F.geq(g, b, mid) && F.geq(f, mid, a)) mediated = true;
            }
            if (mediated) {
              F.rel[gf].set(b, a, false);
              mutated = true;
              break;
            }
          }
        }
      }
    }
  }
  REQUIRE(mutated);
  CheckReport rep = validate_form(F);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.item_passed("F2"));
  REQUIRE_FALSE(rep.find("F2")->witnesses.empty());
}

TEST_CASE("shape errors are reported separately from law failures") {
  auto c = zoo::finset_skeleton(1);
  Form F = zoo::subsets_form(c);
  F.rel[0] = BoolMat(1, 7);
  CheckReport rep = validate_form(F);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.item_passed("shape"));
}

TEST_CASE("dual form transposes relations and is an involution") {
  auto c = zoo::finset_skeleton(2);
  Form F = zoo::subsets_form(c);
  Form D = dual_form(F);
  CHECK(validate_form(D).pass);  // axioms are self-dual
  Form DD = dual_form(D);
  CHECK(DD.rel == F.rel);
  CHECK(DD.clusters == F.clusters);
  CHECK(DD.base->structurally_equal(*F.base));

  // dual of a poset-form is the order-reversed poset
  FinPoset p(2);
  p.set(0, 0, true);
  p.set(1, 1, true);
  p.set(0, 1, true);
  Form P = poset_form(p);
  Form DP = dual_form(P);
  CHECK(DP.geq(0, 0, 1));       // 0 >=_id 1 after reversal
  CHECK_FALSE(DP.geq(0, 1, 0));
}

TEST_CASE("kernels of F equal images of dual(F) on every morphism") {
  auto c = zoo::finset_skeleton(2);
  Form F = zoo::subsets_form(c);
  auto ocF = check_orean(F);
  REQUIRE(ocF.orean.has_value());
  Form D = dual_form(F);
  auto ocD = check_orean(D);
  REQUIRE(ocD.orean.has_value());
  for (MorId f = 0; f < c->n_morphisms(); ++f) {
    CHECK(ocF.orean->kernel(f) == ocD.orean->image(f));
    CHECK(ocF.orean->image(f) == ocD.orean->kernel(f));
  }
}

TEST_CASE("subform: full selection is the form itself") {
  auto c = zoo::finset_skeleton(2);
  Form F = zoo::subsets_form(c);
  std::vector<std::vector<ClusterId>> all(c->n_objects());
  for (ObjId x = 0; x < c->n_objects(); ++x) {
    for (int a = 0; a < F.fiber_size(x); ++a) all[x].push_back(a);
  }
  SubformResult r = subform(F, all);
  REQUIRE(r.form.has_value());
  CHECK(r.form->rel == F.rel);
}

TEST_CASE("product of forms: fibers multiply, projections are valid operators") {
  auto c = zoo::finset_skeleton(2);
  Form S = zoo::subsets_form(c);
  Form E = zoo::equivrel_form(c);
  Form P = product(S, E);
  CHECK(validate_form(P).pass);
  CHECK(P.fiber_size(2) == 8);  // 4 subsets x 2 equivalence relations on a 2-set
  for (ObjId x = 0; x < c->n_objects(); ++x) {
    CHECK(P.fiber_size(x) == S.fiber_size(x) * E.fiber_size(x));
  }
  Operator p1 = product_projection(P, S, E, 1);
  Operator p2 = product_projection(P, S, E, 2);
  CHECK(validate_operator(p1).valid);
  CHECK(validate_operator(p2).valid);
}

TEST_CASE("product with a one-cluster isoform: first projection is an iso") {
  auto c = zoo::finset_skeleton(2);
  Form S = zoo::subsets_form(c);
  auto oc = check_orean(S);
  REQUIRE(oc.orean.has_value());
  SubformResult bots = bottom_subform(*oc.orean);
  REQUIRE(bots.form.has_value());
  Form P = product(S, *bots.form);
  auto iso = find_isomorphism(P, S);
  CHECK(iso.status == IsoSearchResult::Status::found);
}

TEST_CASE("operator validation flags") {
  auto c = zoo::finset_skeleton(2);
  Form S = zoo::subsets_form(c);

  Operator id = identity_operator(S);
  OperatorFlags fl = validate_operator(id);
  CHECK(fl.valid);
  CHECK(fl.full);
  CHECK(fl.injective);
  CHECK(fl.idempotent);

  // union operator: palettes -> subsets, P |-> ∪P (valid, not injective)
  Form Pal = zoo::palettes_form(c);
  Operator gamma;
  gamma.src = &Pal;
  gamma.dst = &S;
  gamma.assign.resize(c->n_objects());
  for (ObjId x = 0; x < c->n_objects(); ++x) {
    for (int a = 0; a < Pal.fiber_size(x); ++a) {
      // decode the palette payload from its name "{...},{...}": union of masks
      const std::string& nm = Pal.clusters[x][a];
      std::uint32_t mask = 0;
      int cur = -1;
      for (char ch : nm) {
        if (ch >= '0' && ch <= '9') cur = ch - '0';
        if ((ch == ',' || ch == '}') && cur >= 0) {
          mask |= 1u << cur;
          cur = -1;
        }
      }
      gamma.assign[x].push_back(static_cast<ClusterId>(mask));
    }
  }
  OperatorFlags gfl = validate_operator(gamma);
  CHECK(gfl.valid);
  CHECK_FALSE(gfl.injective);
  CHECK_FALSE(gfl.full);  // full would imply injective

  // composition of valid operators is valid
  Operator idS = identity_operator(S);
  Operator comp = compose_operators(idS, gamma);
  CHECK(validate_operator(comp).valid);
}

TEST_CASE("find_isomorphism: identity, symmetry, refutation") {
  auto c = zoo::finset_skeleton(2);
  Form S = zoo::subsets_form(c);
  Form E = zoo::equivrel_form(c);

  auto self = find_isomorphism(S, S);
  REQUIRE(self.status == IsoSearchResult::Status::found);
  CHECK(validate_form_iso(S, S, *self.iso));

  auto se = find_isomorphism(S, E);
  auto es = find_isomorphism(E, S);
  CHECK(se.status == IsoSearchResult::Status::refuted);
  CHECK(es.status == IsoSearchResult::Status::refuted);
}

TEST_CASE("two 2-chain forms are not isomorphic (fiber sizes 1,2,3 vs 1,3,2)") {
  auto [s1, s2] = zoo::two_chain_structures();
  CHECK(validate_form(s1.form).pass);
  CHECK(validate_form(s2.form).pass);
  CHECK(s1.form.fiber_size(1) == 2);
  CHECK(s1.form.fiber_size(2) == 3);
  CHECK(s2.form.fiber_size(1) == 3);
  CHECK(s2.form.fiber_size(2) == 2);
  auto r = find_isomorphism(s1.form, s2.form);
  CHECK(r.status == IsoSearchResult::Status::refuted);
  auto rr = find_isomorphism(s2.form, s1.form);
  CHECK(rr.status == IsoSearchResult::Status::refuted);
}

TEST_CASE("budget exhaustion is reported distinctly") {
  auto c = zoo::finset_skeleton(2);
  Form S = zoo::subsets_form(c);
  auto r = find_isomorphism(S, S, /*budget=*/1);
  CHECK(r.status == IsoSearchResult::Status::budget_exhausted);
}

TEST_CASE("full injective operator search embeds a subform") {
  auto c = zoo::finset_skeleton(2);
  Form S = zoo::subsets_form(c);
  // the bottom-cluster subform embeds into S
  auto oc = check_orean(S);
  REQUIRE(oc.orean.has_value());
  SubformResult bots = bottom_subform(*oc.orean);
  REQUIRE(bots.form.has_value());
  auto r = find_full_injective_operator(*bots.form, S);
  REQUIRE(r.status == IsoSearchResult::Status::found);
}
