#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <set>

#include "forma/catforms.hpp"
#include "forma/decomposition.hpp"
#include "forma/orean.hpp"
#include "forma/zoo.hpp"

using namespace forma;

TEST_CASE("skeleton hom-set sizes") {
  auto c3 = zoo::finset_skeleton(3);
  CHECK(c3->hom(2, 3).size() == 9);  // 3^2
  CHECK(c3->hom(0, 0).size() == 1);
  CHECK(c3->hom(3, 0).size() == 0);
  CHECK(validate_category(*c3).pass);

  auto p = zoo::pointed_finset_skeleton(2);
  CHECK(p->hom(1, 1).size() == 2);  // pointed maps of a 2-element pointed set
  CHECK(validate_category(*p).pass);

  auto g = zoo::groups_category(4);
  CHECK(g->objects == std::vector<std::string>{"1", "Z2", "Z3", "Z4", "V4"});
  CHECK(g->hom(3, 1).size() == 2);  // Z4 -> Z2
  CHECK(validate_category(*g).pass);

  auto ch = zoo::chain_category(2);
  CHECK(ch->n_morphisms() == 6);
  CHECK(validate_category(*ch).pass);
}

TEST_CASE("groups category cache round-trips") {
  namespace fs = std::filesystem;
  std::string dir = (fs::temp_directory_path() / "forma-zoo-cache").string();
  fs::remove_all(dir);
  auto fresh = zoo::groups_category(4, dir);
  CHECK(fs::exists(fs::path(dir) / "groups4.json"));
  auto cached = zoo::groups_category(4, dir);
  CHECK(fresh->structurally_equal(*cached));
  auto uncached = zoo::groups_category(4);
  CHECK(fresh->structurally_equal(*uncached));
  fs::remove_all(dir);
}

TEST_CASE("every zoo form validates") {
  auto c2 = zoo::finset_skeleton(2);
  auto p2 = zoo::pointed_finset_skeleton(2);
  auto g4 = zoo::groups_category(4);
  CHECK(validate_form(zoo::subsets_form(c2)).pass);
  CHECK(validate_form(zoo::equivrel_form(c2)).pass);
  CHECK(validate_form(zoo::class_pairs_form(c2)).pass);
  CHECK(validate_form(zoo::palettes_form(c2)).pass);
  CHECK(validate_form(zoo::quotients_form(p2)).pass);
  CHECK(validate_form(zoo::subgroup_form(g4)).pass);
}

TEST_CASE("class-pairs fiber sizes over sizes 0..3 are 1, 2, 5, 15") {
  auto c3 = zoo::finset_skeleton(3);
  Form q = zoo::class_pairs_form(c3);
  CHECK(q.fiber_size(0) == 1);
  CHECK(q.fiber_size(1) == 2);
  CHECK(q.fiber_size(2) == 5);
  CHECK(q.fiber_size(3) == 15);
}

TEST_CASE("palette census against an independent antichain oracle") {
  auto c2 = zoo::finset_skeleton(2);
  Form p = zoo::palettes_form(c2);
  // oracle: enumerate all nonempty families of subsets, filter antichains
  auto count_antichains = [](int k) {
    const std::uint32_t nsub = 1u << k;
    long long count = 0;
    for (std::uint64_t fam = 1; fam < (1ull << nsub); ++fam) {
      std::vector<std::uint32_t> mem;
      for (std::uint32_t s = 0; s < nsub; ++s) {
        if (fam & (1ull << s)) mem.push_back(s);
      }
      bool ok = true;
      for (size_t i = 0; i < mem.size() && ok; ++i) {
        for (size_t j = 0; j < mem.size(); ++j) {
          if (i != j && (mem[i] & mem[j]) == mem[i]) {
            ok = false;
            break;
          }
        }
      }
      if (ok) ++count;
    }
    return count;
  };
  CHECK(p.fiber_size(2) == count_antichains(2));
  CHECK(p.fiber_size(2) == 5);  // the palette {∅} counts too
  auto c3 = zoo::finset_skeleton(3);
  Form p3 = zoo::palettes_form(c3);
  CHECK(p3.fiber_size(3) == count_antichains(3));
}

TEST_CASE("subgroup fiber over V4 has 5 subgroups") {
  auto g4 = zoo::groups_category(4);
  Form sg = zoo::subgroup_form(g4);
  CHECK(sg.fiber_size(4) == 5);  // V4: trivial, three Z2's, V4
  CHECK(sg.fiber_size(0) == 1);
  CHECK(sg.fiber_size(1) == 2);
  CHECK(sg.fiber_size(2) == 2);
  CHECK(sg.fiber_size(3) == 3);
}

TEST_CASE("m-subobjects with all monos is isomorphic to the subsets form") {
  auto c2 = zoo::finset_skeleton(2);
  CatFormResult msub = m_subobjects_form(c2, zoo::all_monos(*c2));
  CHECK(validate_mono_class(*c2, zoo::all_monos(*c2)).pass);
  CHECK(validate_form(msub.form).pass);
  Form s = zoo::subsets_form(c2);
  CHECK(find_isomorphism(msub.form, s).status == IsoSearchResult::Status::found);
}

TEST_CASE("e-quotients with all epis is isomorphic to the equivrel form") {
  auto c2 = zoo::finset_skeleton(2);
  CatFormResult equo = e_quotients_form(c2, zoo::all_epis(*c2));
  CHECK(validate_form(equo.form).pass);
  Form e = zoo::equivrel_form(c2);
  CHECK(find_isomorphism(equo.form, e).status == IsoSearchResult::Status::found);
}

TEST_CASE("subquotients degenerate to subobjects / quotients at trivial classes") {
  auto c2 = zoo::finset_skeleton(2);
  std::vector<MorId> ids;
  for (ObjId x = 0; x < c2->n_objects(); ++x) ids.push_back(c2->identity[x]);
  std::vector<MorId> isos = zoo::all_isos(*c2);

  SubquotientsResult sq_e = subquotients_form(c2, isos, zoo::all_monos(*c2));
  CatFormResult msub = m_subobjects_form(c2, zoo::all_monos(*c2));
  CHECK(find_isomorphism(sq_e.form, msub.form).status == IsoSearchResult::Status::found);

  SubquotientsResult sq_m = subquotients_form(c2, zoo::all_epis(*c2), isos);
  CatFormResult equo = e_quotients_form(c2, zoo::all_epis(*c2));
  CHECK(find_isomorphism(sq_m.form, equo.form).status == IsoSearchResult::Status::found);
}

TEST_CASE("two-chain structures: displayed forms pass their batteries") {
  auto [s1, s2] = zoo::two_chain_structures();
  CHECK(validate_form(s1.form).pass);
  CHECK(validate_form(s2.form).pass);

  for (const auto* st : {&s1, &s2}) {
    auto oc = check_orean(st->form);
    REQUIRE(oc.orean.has_value());
    CHECK(check_noetherian(*oc.orean).pass);
    ExactBinaryCheck jc = exact_join_check(*oc.orean);
    CHECK(jc.report.pass);
    REQUIRE(jc.decomposition.has_value());
    CHECK(jc.decomposition->exact);
  }
  // fiber multisets {1,2,3} vs {1,3,2}
  CHECK(s1.form.fiber_size(0) == 1);
  CHECK(s1.form.fiber_size(1) == 2);
  CHECK(s1.form.fiber_size(2) == 3);
  CHECK(s2.form.fiber_size(1) == 3);
  CHECK(s2.form.fiber_size(2) == 2);
  CHECK(find_isomorphism(s1.form, s2.form).status == IsoSearchResult::Status::refuted);
}

TEST_CASE("payload decoders round-trip") {
  CHECK(zoo::subset_name(3, 0b101) == "{0,2}");
  CHECK(zoo::subset_name(2, 0) == "{}");
  auto parts = zoo::partitions_of(3);
  CHECK(parts.size() == 5);
  std::set<std::string> names;
  for (const auto& p : parts) names.insert(zoo::partition_name(p));
  CHECK(names.size() == 5);  // decoding is injective on the cluster set
}
