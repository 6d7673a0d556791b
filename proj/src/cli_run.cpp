#include "forma/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "forma/battery.hpp"
#include "forma/bicategory.hpp"
#include "forma/decomposition.hpp"
#include "forma/factorization.hpp"
#include "forma/json_io.hpp"
#include "forma/orean.hpp"
#include "forma/zoo.hpp"

namespace forma {

namespace {

void print_report(const CheckReport& rep, const std::string& format, std::ostream& out) {
  if (format == "pretty") {
    out << "verdict: " << (rep.pass ? "pass" : "fail") << "\n";
    for (const auto& it : rep.items) {
      out << "  [" << (it.pass ? "ok" : "FAIL") << "] " << it.name << "\n";
      for (const auto& w : it.witnesses) {
        out << "       " << w.law;
        for (const auto& [k, v] : w.refs) out << " " << k << "=" << v;
        if (!w.detail.empty()) out << " — " << w.detail;
        out << "\n";
      }
    }
    for (const auto& n : rep.notes) out << "  note: " << n << "\n";
  } else {
    out << dump_canonical(report_to_json(rep));
  }
}

std::string cache_dir_from_env(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("FORMA_CACHE_DIR");
  return env ? env : "";
}

/// Orean + noetherian pipeline for a loaded form; merges the reports with
/// prefixed item names.
CheckReport form_axiom_battery(const Form& f, const std::string& which) {
  CheckReport rep;
  CheckReport vf = validate_form(f);
  for (auto& it : vf.items) rep.item("form/" + it.name) = CheckItem{"form/" + it.name, it.pass, it.witnesses};
  rep.recompute_verdict();
  if (which == "form" || !vf.pass) return rep;

  OreanCheck oc = check_orean(f);
  for (auto& it : oc.report.items) {
    rep.item("orean/" + it.name) = CheckItem{"orean/" + it.name, it.pass, it.witnesses};
  }
  rep.recompute_verdict();
  if (which == "orean" || !oc.orean) return rep;

  CheckReport noeth = check_noetherian(*oc.orean);
  for (auto& it : noeth.items) {
    rep.item("noetherian/" + it.name) = CheckItem{"noetherian/" + it.name, it.pass, it.witnesses};
  }
  rep.recompute_verdict();
  return rep;
}

std::optional<BicatAxiom> axiom_by_name(const std::string& s) {
  static const std::map<std::string, BicatAxiom> table = {
      {"B0", BicatAxiom::B0},   {"B1", BicatAxiom::B1},  {"B1a", BicatAxiom::B1a},
      {"B1'", BicatAxiom::B1p}, {"B1p", BicatAxiom::B1p}, {"B2", BicatAxiom::B2},
      {"B2'", BicatAxiom::B2p}, {"B2p", BicatAxiom::B2p}, {"B3", BicatAxiom::B3},
      {"B4", BicatAxiom::B4},   {"B5", BicatAxiom::B5},  {"B5'", BicatAxiom::B5p},
      {"B5p", BicatAxiom::B5p}};
  auto it = table.find(s);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

int emit_zoo(const std::string& name, int size, const std::string& out_path,
             const std::string& cache_dir, std::ostream& out, std::ostream& err) {
  // set-like skeleta grow super-exponentially; sizes beyond 4 are allowed but
  // get a soft warning
  if (size > 4 && name != "chain") {
    err << "warning: size " << size << " exceeds the advisory cap of 4; generation may be slow\n";
  }
  Json doc;
  auto form_doc = [&](Form f) { doc = form_to_json(f); };
  if (name == "finset") {
    doc = category_to_json(*zoo::finset_skeleton(size));
  } else if (name == "pointed") {
    doc = category_to_json(*zoo::pointed_finset_skeleton(size));
  } else if (name == "groups") {
    doc = category_to_json(*zoo::groups_category(size, cache_dir));
  } else if (name == "chain") {
    doc = category_to_json(*zoo::chain_category(size));
  } else if (name == "subsets") {
    form_doc(zoo::subsets_form(zoo::finset_skeleton(size)));
  } else if (name == "equivrel") {
    form_doc(zoo::equivrel_form(zoo::finset_skeleton(size)));
  } else if (name == "classpairs") {
    form_doc(zoo::class_pairs_form(zoo::finset_skeleton(size)));
  } else if (name == "palettes") {
    form_doc(zoo::palettes_form(zoo::finset_skeleton(size)));
  } else if (name == "quotients") {
    form_doc(zoo::quotients_form(zoo::pointed_finset_skeleton(size)));
  } else if (name == "subgroups") {
    form_doc(zoo::subgroup_form(zoo::groups_category(size, cache_dir)));
  } else if (name == "msub-finset") {
    auto c = zoo::finset_skeleton(size);
    form_doc(m_subobjects_form(c, zoo::all_monos(*c)).form);
  } else if (name == "equot-finset") {
    auto c = zoo::finset_skeleton(size);
    form_doc(e_quotients_form(c, zoo::all_epis(*c)).form);
  } else if (name == "subq-finset") {
    auto c = zoo::finset_skeleton(size);
    form_doc(subquotients_form(c, zoo::all_epis(*c), zoo::all_monos(*c)).form);
  } else if (name == "bicat-finset") {
    auto c = zoo::finset_skeleton(size);
    doc = bicategory_to_json(make_bicategory(c, zoo::all_epis(*c), zoo::all_monos(*c)));
  } else if (name == "bicat-pointed") {
    auto c = zoo::pointed_finset_skeleton(size);
    doc = bicategory_to_json(make_bicategory(c, zoo::all_epis(*c), zoo::all_monos(*c)));
  } else if (name == "bicat-groups") {
    auto c = zoo::groups_category(size, cache_dir);
    doc = bicategory_to_json(make_bicategory(c, zoo::all_epis(*c), zoo::all_monos(*c)));
  } else if (name == "twochain-form-1" || name == "twochain-form-2") {
    auto [s1, s2] = zoo::two_chain_structures();
    form_doc(name.back() == '1' ? s1.form : s2.form);
  } else if (name == "twochain-1" || name == "twochain-2") {
    auto [s1, s2] = zoo::two_chain_structures();
    const auto& st = name.back() == '1' ? s1 : s2;
    doc = bicategory_to_json(make_bicategory(st.cat, st.E, st.M));
  } else {
    err << "unknown zoo name: " << name
        << " (try: finset, pointed, groups, chain, subsets, equivrel, classpairs, palettes, "
           "quotients, subgroups, msub-finset, equot-finset, subq-finset, bicat-finset, "
           "bicat-pointed, bicat-groups, twochain-1, twochain-2, twochain-form-1, "
           "twochain-form-2)\n";
    return 2;
  }
  if (out_path.empty()) {
    out << dump_canonical(doc);
  } else {
    save_json_file(out_path, doc);
  }
  return 0;
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"forma — finite forms, factorizations and their axiom batteries"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::uint64_t budget = 10'000'000;
  std::string cache_flag;
  app.add_option("--format", format)->check(CLI::IsMember({"json", "pretty"}));
  app.add_option("--budget", budget, "node budget for searches");
  app.add_option("--seed-cache", cache_flag, "cache directory for generated categories");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "validate a fincat/1 or form/1 document");
  validate->fallthrough();
  validate->add_option("file", validate_path)->required();

  std::string check_path, check_axioms = "all";
  auto* check = app.add_subcommand("check", "run axiom batteries on a form or bicategory");
  check->fallthrough();
  check->add_option("file", check_path)->required();
  check->add_option("--axioms", check_axioms,
                    "form|orean|noetherian|all or a comma list of B-axioms (suffix :dual)");

  std::string classify_path;
  auto* classify_cmd = app.add_subcommand("classify", "cluster classification of an orean form");
  classify_cmd->fallthrough();
  classify_cmd->add_option("file", classify_path)->required();

  std::string decompose_path;
  auto* decompose = app.add_subcommand("decompose", "search for the exact decomposition");
  decompose->fallthrough();
  decompose->add_option("file", decompose_path)->required();

  std::string synth_fs, synth_fe, synth_out;
  auto* synthesize = app.add_subcommand("synthesize", "join-form synthesis from a factorization");
  synthesize->fallthrough();
  synthesize->add_option("fs", synth_fs)->required();
  synthesize->add_option("fe", synth_fe)->required();
  synthesize->add_option("-o,--output", synth_out);

  std::string cmp_a, cmp_b;
  auto* compare = app.add_subcommand("compare", "isomorphism search between two forms");
  compare->fallthrough();
  compare->add_option("a", cmp_a)->required();
  compare->add_option("b", cmp_b)->required();

  std::string zoo_name, zoo_out;
  int zoo_size = 3;
  auto* zoo_emit = app.add_subcommand("zoo-emit", "emit a generated category/form/bicategory");
  zoo_emit->fallthrough();
  zoo_emit->add_option("name", zoo_name)->required();
  zoo_emit->add_option("--size", zoo_size);
  zoo_emit->add_option("-o,--output", zoo_out);

  auto* battery = app.add_subcommand("battery", "run the full acceptance battery");
  battery->fallthrough();

  std::vector<const char*> argv;
  std::string prog = "forma";
  argv.push_back(prog.c_str());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << e.what() << "\n";
    return 2;
  }

  std::string cache_dir = cache_dir_from_env(cache_flag);

  try {
    if (*validate) {
      Json j = load_json_file(validate_path);
      std::string schema = schema_of(j);
      CheckReport rep;
      if (schema == "fincat/1") {
        rep = validate_category(*category_from_json(j));
      } else if (schema == "form/1") {
        rep = validate_form(form_from_json(j));
      } else {
        err << "validate: unsupported schema " << schema << "\n";
        return 2;
      }
      print_report(rep, format, out);
      return rep.pass ? 0 : 1;
    }

    if (*check) {
      Json j = load_json_file(check_path);
      std::string schema = schema_of(j);
      if (schema == "form/1") {
        Form f = form_from_json(j);
        if (check_axioms != "form" && check_axioms != "orean" && check_axioms != "noetherian" &&
            check_axioms != "all") {
          err << "check: --axioms for forms must be form|orean|noetherian|all\n";
          return 2;
        }
        std::string which = check_axioms == "all" ? "noetherian" : check_axioms;
        CheckReport rep = form_axiom_battery(f, which);
        print_report(rep, format, out);
        return rep.pass ? 0 : 1;
      }
      if (schema == "bicat/1") {
        Bicategory b = bicategory_from_json(j);
        std::vector<std::pair<BicatAxiom, bool>> todo;
        if (check_axioms == "all") {
          for (BicatAxiom a : {BicatAxiom::B0, BicatAxiom::B1, BicatAxiom::B1a, BicatAxiom::B1p,
                               BicatAxiom::B2, BicatAxiom::B2p, BicatAxiom::B3, BicatAxiom::B4,
                               BicatAxiom::B5, BicatAxiom::B5p}) {
            todo.push_back({a, false});
            todo.push_back({a, true});
          }
        } else {
          std::stringstream ss(check_axioms);
          std::string tok;
          while (std::getline(ss, tok, ',')) {
            bool dual = false;
            auto colon = tok.find(":dual");
            if (colon != std::string::npos) {
              dual = true;
              tok = tok.substr(0, colon);
            }
            auto ax = axiom_by_name(tok);
            if (!ax) {
              err << "check: unknown axiom " << tok << "\n";
              return 2;
            }
            todo.push_back({*ax, dual});
          }
        }
        CheckReport rep;
        for (auto [a, dual] : todo) {
          CheckReport one = check_axiom(b, a, dual);
          std::string prefix = std::string(to_string(a)) + (dual ? ":dual" : "");
          CheckItem& item = rep.item(prefix);
          item.pass = one.pass;
          for (const auto& it : one.items) {
            for (const auto& w : it.witnesses) {
              if (static_cast<int>(item.witnesses.size()) < kMaxWitnessesPerItem) {
                item.witnesses.push_back(w);
              }
            }
          }
        }
        rep.recompute_verdict();
        print_report(rep, format, out);
        return rep.pass ? 0 : 1;
      }
      err << "check: unsupported schema " << schema << "\n";
      return 2;
    }

    if (*classify_cmd) {
      Form f = form_from_json(load_json_file(classify_path));
      OreanCheck oc = check_orean(f);
      if (!oc.orean) {
        print_report(oc.report, format, out);
        return 1;
      }
      const OreanForm& of = *oc.orean;
      ClusterClassification cl = classify(of);
      SpecialPredicates sp = special_predicates(of);
      Json j;
      j["schema"] = "report/1";
      j["verdict"] = sp.report.pass ? "pass" : "fail";
      Json preds;
      preds["conormal-form"] = sp.conormal_form;
      preds["normal-form"] = sp.normal_form;
      preds["binormal"] = sp.binormal;
      preds["antinormal"] = sp.antinormal;
      preds["anticonormal"] = sp.anticonormal;
      preds["antibinormal"] = sp.antibinormal;
      preds["isoform"] = sp.isoform;
      j["predicates"] = std::move(preds);
      Json clusters = Json::array();
      const FinCategory& c = of.cat();
      for (ObjId x = 0; x < c.n_objects(); ++x) {
        for (ClusterId a = 0; a < of.form().fiber_size(x); ++a) {
          Json e;
          e["cluster"] = of.form().cluster_ref(x, a);
          e["conormal"] = cl.conormal[x][a] != 0;
          e["normal"] = cl.normal[x][a] != 0;
          auto put = [&](const char* key, int v) {
            if (v >= 0) {
              e[key] = of.form().clusters[x][v];
            } else {
              e[key] = nullptr;
            }
          };
          put("conormal-interior", cl.conormal_interior[x][a]);
          put("conormal-exterior", cl.conormal_exterior[x][a]);
          put("normal-interior", cl.normal_interior[x][a]);
          put("normal-exterior", cl.normal_exterior[x][a]);
          clusters.push_back(std::move(e));
        }
      }
      j["clusters"] = std::move(clusters);
      if (format == "pretty") {
        out << "isoform=" << sp.isoform << " conormal=" << sp.conormal_form
            << " normal=" << sp.normal_form << " antinormal=" << sp.antinormal << "\n";
      } else {
        out << dump_canonical(j);
      }
      return sp.report.pass ? 0 : 1;
    }

    if (*decompose) {
      Form f = form_from_json(load_json_file(decompose_path));
      OreanCheck oc = check_orean(f);
      if (!oc.orean) {
        print_report(oc.report, format, out);
        return 1;
      }
      ExactDecompositionSearch s = find_exact_decomposition(*oc.orean);
      Json j;
      j["schema"] = "report/1";
      j["verdict"] = s.report.pass ? "pass" : "fail";
      j["exact-decomposition-found"] = s.decomposition.has_value();
      if (s.decomposition) {
        Json terms = Json::array();
        for (DecompTerm t : s.decomposition->terms) terms.push_back(to_string(t));
        j["terms"] = std::move(terms);
        j["semiexact"] = s.decomposition->semiexact;
        j["exact"] = s.decomposition->exact;
      }
      j["report"] = report_to_json(s.report);
      out << dump_canonical(j);
      return s.report.pass ? 0 : 1;
    }

    if (*synthesize) {
      Form fs = form_from_json(load_json_file(synth_fs));
      Form fe = form_from_json(load_json_file(synth_fe));
      OreanCheck os = check_orean(fs);
      OreanCheck oe = check_orean(fe);
      if (!os.orean || !oe.orean) {
        err << "synthesize: both inputs must be orean forms\n";
        print_report(!os.orean ? os.report : oe.report, format, out);
        return 1;
      }
      FactorizationCheck fc = check_orean_factorization(*os.orean, *oe.orean);
      if (!fc.fac) {
        print_report(fc.report, format, out);
        return 1;
      }
      SynthesisResult res = construct_join_noetherian(*fc.fac);
      if (!res.g) {
        print_report(res.report, format, out);
        return 1;
      }
      Json doc = form_to_json(*res.g);
      if (synth_out.empty()) {
        out << dump_canonical(doc);
      } else {
        save_json_file(synth_out, doc);
        print_report(res.report, format, out);
      }
      return 0;
    }

    if (*compare) {
      Form a = form_from_json(load_json_file(cmp_a));
      Form b = form_from_json(load_json_file(cmp_b));
      if (!a.base->structurally_equal(*b.base)) {
        err << "compare: the two forms have different base categories\n";
        return 2;
      }
      IsoSearchResult r = find_isomorphism(a, b, budget);
      Json j;
      j["schema"] = "report/1";
      if (r.status == IsoSearchResult::Status::found) {
        j["verdict"] = "pass";
        j["isomorphic"] = true;
        Json maps = Json::object();
        for (ObjId x = 0; x < a.base->n_objects(); ++x) {
          Json m = Json::array();
          for (ClusterId cl : r.iso->map[x]) m.push_back(b.clusters[x][cl]);
          maps[a.base->objects[x]] = std::move(m);
        }
        j["isomorphism"] = std::move(maps);
      } else if (r.status == IsoSearchResult::Status::refuted) {
        j["verdict"] = "fail";
        j["isomorphic"] = false;
        j["reason"] = "refuted";
        Json sizes = Json::object();
        for (ObjId x = 0; x < a.base->n_objects(); ++x) {
          sizes[a.base->objects[x]] = Json::array({a.fiber_size(x), b.fiber_size(x)});
        }
        j["fiber-sizes"] = std::move(sizes);
      } else {
        j["verdict"] = "fail";
        j["isomorphic"] = false;
        j["reason"] = "budget-exhausted";
        j["nodes"] = r.nodes;
      }
      out << dump_canonical(j);
      return r.status == IsoSearchResult::Status::found ? 0 : 1;
    }

    if (*zoo_emit) {
      return emit_zoo(zoo_name, zoo_size, zoo_out, cache_dir, out, err);
    }

    if (*battery) {
      BatteryResult res = run_battery(out, cache_dir);
      return res.pass ? 0 : 1;
    }
  } catch (const SchemaError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace forma
