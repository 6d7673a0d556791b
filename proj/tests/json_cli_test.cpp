#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "forma/cli.hpp"
#include "forma/json_io.hpp"
#include "forma/orean.hpp"
#include "forma/zoo.hpp"

using namespace forma;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / "forma-cli-test";
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

int run(const std::vector<std::string>& args, std::string* out_text = nullptr) {
  std::ostringstream out, err;
  int code = cli_run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("category and form JSON round-trips are bit-exact") {
  auto c = zoo::finset_skeleton(2);
  Json j1 = category_to_json(*c);
  CatPtr c2 = category_from_json(j1);
  CHECK(c2->structurally_equal(*c));
  CHECK(dump_canonical(category_to_json(*c2)) == dump_canonical(j1));

  Form f = zoo::subsets_form(c);
  Json jf = form_to_json(f);
  Form f2 = form_from_json(jf);
  CHECK(f2.rel == f.rel);
  CHECK(f2.clusters == f.clusters);
  CHECK(dump_canonical(form_to_json(f2)) == dump_canonical(jf));
}

TEST_CASE("schema mismatches raise schema errors") {
  Json j;
  j["schema"] = "form/2";
  CHECK_THROWS_AS(form_from_json(j), SchemaError);
  Json k;
  k["no-schema"] = 1;
  CHECK_THROWS_AS(schema_of(k), SchemaError);
}

TEST_CASE("bicategory documents round-trip") {
  auto c = zoo::finset_skeleton(2);
  Bicategory b = make_bicategory(c, zoo::all_epis(*c), zoo::all_monos(*c));
  Json j = bicategory_to_json(b);
  Bicategory b2 = bicategory_from_json(j);
  CHECK(b2.in_E == b.in_E);
  CHECK(b2.in_M == b.in_M);
  CHECK(dump_canonical(bicategory_to_json(b2)) == dump_canonical(j));
}

TEST_CASE("cli: zoo-emit then validate, with stable bytes across runs") {
  TempDir t;
  std::string path = t.file("subsets.json");
  CHECK(run({"zoo-emit", "subsets", "--size", "2", "-o", path}) == 0);
  std::string first = slurp(path);
  CHECK(run({"zoo-emit", "subsets", "--size", "2", "-o", path}) == 0);
  CHECK(slurp(path) == first);

  std::string report1, report2;
  CHECK(run({"validate", path}, &report1) == 0);
  CHECK(run({"validate", path}, &report2) == 0);
  CHECK(report1 == report2);  // byte-identical reports for identical inputs
}

TEST_CASE("cli: exit codes separate failures from usage errors") {
  TempDir t;
  std::string s2 = t.file("s2.json");
  std::string e2 = t.file("e2.json");
  REQUIRE(run({"zoo-emit", "subsets", "--size", "2", "-o", s2}) == 0);
  REQUIRE(run({"zoo-emit", "equivrel", "--size", "2", "-o", e2}) == 0);

  // a failed check is exit 1
  CHECK(run({"check", s2, "--axioms", "noetherian"}) == 1);
  // a passing check is exit 0
  CHECK(run({"check", s2, "--axioms", "orean"}) == 0);
  // unknown file is a usage/input error
  CHECK(run({"check", t.file("missing.json")}) == 2);
  // unknown zoo name
  CHECK(run({"zoo-emit", "nonsense"}) == 2);
  // schema mismatch: passing a form to a bicategory-only axiom list
  CHECK(run({"check", s2, "--axioms", "B0"}) == 2);
}

TEST_CASE("cli: compare distinguishes refutation from budget exhaustion") {
  TempDir t;
  std::string a = t.file("a.json"), b = t.file("b.json");
  REQUIRE(run({"zoo-emit", "twochain-form-1", "-o", a}) == 0);
  REQUIRE(run({"zoo-emit", "twochain-form-2", "-o", b}) == 0);
  std::string text;
  CHECK(run({"compare", a, b}, &text) == 1);
  CHECK(text.find("\"reason\": \"refuted\"") != std::string::npos);
  CHECK(text.find("fiber-sizes") != std::string::npos);

  std::string s2 = t.file("s2.json");
  REQUIRE(run({"zoo-emit", "subsets", "--size", "2", "-o", s2}) == 0);
  CHECK(run({"compare", s2, s2, "--budget", "1"}, &text) == 1);
  CHECK(text.find("budget-exhausted") != std::string::npos);
  CHECK(run({"compare", s2, s2}, &text) == 0);
}

TEST_CASE("cli: synthesize emits a form document that reloads and passes") {
  TempDir t;
  std::string s2 = t.file("s2.json"), e2 = t.file("e2.json"), g = t.file("g.json");
  REQUIRE(run({"zoo-emit", "subsets", "--size", "2", "-o", s2}) == 0);
  REQUIRE(run({"zoo-emit", "equivrel", "--size", "2", "-o", e2}) == 0);
  CHECK(run({"synthesize", s2, e2, "-o", g}) == 0);
  CHECK(run({"check", g, "--axioms", "noetherian"}) == 0);
  std::string q = t.file("q.json");
  REQUIRE(run({"zoo-emit", "classpairs", "--size", "2", "-o", q}) == 0);
  CHECK(run({"compare", g, q}) == 0);
}

TEST_CASE("cli: bicategory axiom selection with dual suffix") {
  TempDir t;
  std::string b = t.file("bicat.json");
  REQUIRE(run({"zoo-emit", "bicat-finset", "--size", "2", "-o", b}) == 0);
  CHECK(run({"check", b, "--axioms", "B0:dual,B1:dual,B2:dual,B3:dual,B4:dual,B5:dual"}) == 0);
  // direct-side B4 fails on finset
  CHECK(run({"check", b, "--axioms", "B4"}) == 1);
  CHECK(run({"check", b, "--axioms", "B17"}) == 2);
}

TEST_CASE("cli: malformed JSON is an input error") {
  TempDir t;
  std::string bad = t.file("bad.json");
  std::ofstream(bad) << "{ not json";
  CHECK(run({"validate", bad}) == 2);
}

TEST_CASE("documents with lawless base categories are schema errors") {
  auto c = zoo::finset_skeleton(1);
  Form f = zoo::subsets_form(c);
  Json j = form_to_json(f);
  j["base"]["compose"][0][2] = 999;  // dangling composite id
  CHECK_THROWS_AS(form_from_json(j), SchemaError);

  Bicategory b = make_bicategory(c, zoo::all_epis(*c), zoo::all_monos(*c));
  Json jb = bicategory_to_json(b);
  jb["base"]["compose"][0][2] = 999;
  CHECK_THROWS_AS(bicategory_from_json(jb), SchemaError);
}
