#include "forma/json_io.hpp"

#include <fstream>

namespace forma {

Json category_to_json(const FinCategory& c) {
  Json j;
  j["schema"] = "fincat/1";
  j["objects"] = c.objects;
  Json mors = Json::array();
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    Json m;
    m["id"] = f;
    m["dom"] = c.objects[c.dom(f)];
    m["cod"] = c.objects[c.cod(f)];
    if (!c.morphisms[f].name.empty()) m["name"] = c.morphisms[f].name;
    mors.push_back(std::move(m));
  }
  j["morphisms"] = std::move(mors);
  Json ident = Json::object();
  for (ObjId x = 0; x < c.n_objects(); ++x) ident[c.objects[x]] = c.identity[x];
  j["identity"] = std::move(ident);
  Json comp = Json::array();
  for (MorId g = 0; g < c.n_morphisms(); ++g) {
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      if (c.composable(g, f)) comp.push_back(Json::array({g, f, c.compose_tab[g][f]}));
    }
  }
  j["compose"] = std::move(comp);
  return j;
}

CatPtr category_from_json(const Json& j) {
  if (schema_of(j) != "fincat/1") throw SchemaError("expected schema fincat/1");
  auto c = std::make_shared<FinCategory>();
  c->objects = j.at("objects").get<std::vector<std::string>>();
  auto obj_index = [&](const std::string& name) {
    for (size_t i = 0; i < c->objects.size(); ++i) {
      if (c->objects[i] == name) return static_cast<ObjId>(i);
    }
    throw SchemaError("unknown object name: " + name);
  };
  const auto& mors = j.at("morphisms");
  c->morphisms.resize(mors.size());
  for (const auto& m : mors) {
    MorId id = m.at("id").get<MorId>();
    if (id < 0 || id >= static_cast<MorId>(mors.size())) throw SchemaError("morphism id out of range");
    FinCategory::Mor mor;
    mor.dom = obj_index(m.at("dom").get<std::string>());
    mor.cod = obj_index(m.at("cod").get<std::string>());
    if (m.contains("name")) mor.name = m.at("name").get<std::string>();
    c->morphisms[id] = std::move(mor);
  }
  c->identity.assign(c->objects.size(), -1);
  for (const auto& [name, mid] : j.at("identity").items()) {
    c->identity[obj_index(name)] = mid.get<MorId>();
  }
  const int nm = c->n_morphisms();
  c->compose_tab.assign(nm, std::vector<MorId>(nm, -1));
  for (const auto& triple : j.at("compose")) {
    MorId g = triple.at(0).get<MorId>(), f = triple.at(1).get<MorId>(), gf = triple.at(2).get<MorId>();
    if (g < 0 || g >= nm || f < 0 || f >= nm) throw SchemaError("compose triple out of range");
    c->compose_tab[g][f] = gf;
  }
  c->finalize();
  return c;
}

Json form_to_json(const Form& f) {
  Json j;
  j["schema"] = "form/1";
  j["label"] = f.label;
  j["base"] = category_to_json(*f.base);
  Json clusters = Json::object();
  for (ObjId x = 0; x < f.base->n_objects(); ++x) clusters[f.base->objects[x]] = f.clusters[x];
  j["clusters"] = std::move(clusters);
  Json rel = Json::object();
  for (MorId m = 0; m < f.base->n_morphisms(); ++m) {
    Json mat = Json::array();
    for (int b = 0; b < f.rel[m].rows(); ++b) {
      Json row = Json::array();
      for (int a = 0; a < f.rel[m].cols(); ++a) row.push_back(f.rel[m].get(b, a) ? 1 : 0);
      mat.push_back(std::move(row));
    }
    rel[std::to_string(m)] = std::move(mat);
  }
  j["rel"] = std::move(rel);
  return j;
}

Form form_from_json(const Json& j) {
  if (schema_of(j) != "form/1") throw SchemaError("expected schema form/1");
  Form f;
  f.base = category_from_json(j.at("base"));
  if (!validate_category(*f.base).pass) {
    throw SchemaError("form/1 base category violates the category laws");
  }
  f.label = j.value("label", "");
  f.clusters.resize(f.base->n_objects());
  for (ObjId x = 0; x < f.base->n_objects(); ++x) {
    f.clusters[x] = j.at("clusters").at(f.base->objects[x]).get<std::vector<std::string>>();
  }
  f.rel.resize(f.base->n_morphisms());
  for (MorId m = 0; m < f.base->n_morphisms(); ++m) {
    const Json& mat = j.at("rel").at(std::to_string(m));
    const int rows = f.fiber_size(f.base->cod(m));
    const int cols = f.fiber_size(f.base->dom(m));
    if (static_cast<int>(mat.size()) != rows) throw SchemaError("rel matrix row count mismatch");
    BoolMat bm(rows, cols);
    for (int b = 0; b < rows; ++b) {
      if (static_cast<int>(mat.at(b).size()) != cols) throw SchemaError("rel matrix column count mismatch");
      for (int a = 0; a < cols; ++a) bm.set(b, a, mat.at(b).at(a).get<int>() != 0);
    }
    f.rel[m] = std::move(bm);
  }
  return f;
}

Json bicategory_to_json(const Bicategory& b) {
  Json j;
  j["schema"] = "bicat/1";
  j["base"] = category_to_json(*b.cat);
  j["E"] = b.E_list();
  j["M"] = b.M_list();
  return j;
}

Bicategory bicategory_from_json(const Json& j) {
  if (schema_of(j) != "bicat/1") throw SchemaError("expected schema bicat/1");
  CatPtr cat = category_from_json(j.at("base"));
  if (!validate_category(*cat).pass) {
    throw SchemaError("bicat/1 base category violates the category laws");
  }
  auto E = j.at("E").get<std::vector<MorId>>();
  auto M = j.at("M").get<std::vector<MorId>>();
  for (MorId f : E) {
    if (f < 0 || f >= cat->n_morphisms()) throw SchemaError("E id out of range");
  }
  for (MorId f : M) {
    if (f < 0 || f >= cat->n_morphisms()) throw SchemaError("M id out of range");
  }
  return make_bicategory(cat, E, M);
}

Json report_to_json(const CheckReport& r) {
  Json j;
  j["schema"] = "report/1";
  j["verdict"] = r.pass ? "pass" : "fail";
  Json items = Json::array();
  for (const auto& it : r.items) {
    Json ji;
    ji["name"] = it.name;
    ji["status"] = it.pass ? "pass" : "fail";
    Json ws = Json::array();
    for (const auto& w : it.witnesses) {
      Json jw;
      jw["law"] = w.law;
      Json refs = Json::array();
      for (const auto& [k, v] : w.refs) refs.push_back(Json::array({k, v}));
      jw["refs"] = std::move(refs);
      jw["detail"] = w.detail;
      ws.push_back(std::move(jw));
    }
    ji["witnesses"] = std::move(ws);
    items.push_back(std::move(ji));
  }
  j["items"] = std::move(items);
  j["notes"] = r.notes;
  return j;
}

std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

std::string schema_of(const Json& j) {
  if (!j.is_object() || !j.contains("schema")) throw SchemaError("document has no schema field");
  return j.at("schema").get<std::string>();
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot write " + path);
  out << dump_canonical(j);
}

}  // namespace forma
