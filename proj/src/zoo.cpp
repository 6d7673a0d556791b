#include "forma/zoo.hpp"

#include <algorithm>
#include <functional>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace forma::zoo {

namespace {

std::string fn_name(const std::string& from, const std::string& to, const std::vector<int>& img) {
  std::ostringstream os;
  os << from << "->" << to << ":[";
  for (size_t i = 0; i < img.size(); ++i) os << (i ? "," : "") << img[i];
  os << "]";
  return os.str();
}

/// Shared builder for function-like categories: objects carry a size, a
/// morphism is a vector of images, composition is table lookup.
struct FnCat {
  std::vector<int> sizes;
  std::vector<std::string> obj_names;
  std::vector<std::tuple<int, int, std::vector<int>>> mors;  // dom, cod, images
  std::map<std::tuple<int, int, std::vector<int>>, MorId> index;

  void add(int d, int c, std::vector<int> img) {
    index[{d, c, img}] = static_cast<MorId>(mors.size());
    mors.push_back({d, c, std::move(img)});
  }

  CatPtr build() const {
    auto cat = std::make_shared<FinCategory>();
    cat->objects = obj_names;
    for (const auto& [d, c, img] : mors) {
      cat->morphisms.push_back({d, c, fn_name(obj_names[d], obj_names[c], img)});
    }
    cat->identity.resize(sizes.size());
    for (size_t x = 0; x < sizes.size(); ++x) {
      std::vector<int> id(sizes[x]);
      for (int i = 0; i < sizes[x]; ++i) id[i] = i;
      cat->identity[x] = index.at({static_cast<int>(x), static_cast<int>(x), id});
    }
    const int nm = static_cast<int>(mors.size());
    cat->compose_tab.assign(nm, std::vector<MorId>(nm, -1));
    for (MorId g = 0; g < nm; ++g) {
      const auto& [gd, gc, gi] = mors[g];
      for (MorId f = 0; f < nm; ++f) {
        const auto& [fd, fc, fi] = mors[f];
        if (fc != gd) continue;
        std::vector<int> comp(fi.size());
        for (size_t i = 0; i < fi.size(); ++i) comp[i] = gi[fi[i]];
        cat->compose_tab[g][f] = index.at({fd, gc, comp});
      }
    }
    cat->finalize();
    return cat;
  }
};

void enumerate_functions(int a, int b, const std::function<void(std::vector<int>&)>& emit) {
  std::vector<int> img(a, 0);
  if (a == 0) {
    emit(img);
    return;
  }
  if (b == 0) return;  // no functions into the empty set from a nonempty one
  while (true) {
    emit(img);
    int i = a - 1;
    while (i >= 0 && img[i] == b - 1) img[i--] = 0;
    if (i < 0) break;
    ++img[i];
  }
}

}  // namespace

CatPtr finset_skeleton(int n) {
  FnCat fc;
  for (int k = 0; k <= n; ++k) {
    fc.sizes.push_back(k);
    fc.obj_names.push_back("S" + std::to_string(k));
  }
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; b <= n; ++b) {
      enumerate_functions(a, b, [&](std::vector<int>& img) { fc.add(a, b, img); });
    }
  }
  return fc.build();
}

CatPtr pointed_finset_skeleton(int n) {
  if (n < 1) throw std::invalid_argument("pointed_finset_skeleton: need n >= 1");
  FnCat fc;
  for (int k = 1; k <= n; ++k) {
    fc.sizes.push_back(k);
    fc.obj_names.push_back("P" + std::to_string(k));
  }
  for (int a = 1; a <= n; ++a) {
    for (int b = 1; b <= n; ++b) {
      enumerate_functions(a, b, [&](std::vector<int>& img) {
        if (img[0] == 0) fc.add(a - 1, b - 1, img);
      });
    }
  }
  return fc.build();
}

CatPtr chain_category(int k) {
  auto cat = std::make_shared<FinCategory>();
  for (int i = 0; i <= k; ++i) cat->objects.push_back(std::to_string(i));
  std::map<std::pair<int, int>, MorId> idx;
  for (int a = 0; a <= k; ++a) {
    for (int b = a; b <= k; ++b) {
      idx[{a, b}] = static_cast<MorId>(cat->morphisms.size());
      cat->morphisms.push_back({a, b, std::to_string(a) + "<=" + std::to_string(b)});
    }
  }
  cat->identity.resize(k + 1);
  for (int i = 0; i <= k; ++i) cat->identity[i] = idx[{i, i}];
  const int nm = cat->n_morphisms();
  cat->compose_tab.assign(nm, std::vector<MorId>(nm, -1));
  for (MorId g = 0; g < nm; ++g) {
    for (MorId f = 0; f < nm; ++f) {
      if (cat->morphisms[f].cod == cat->morphisms[g].dom) {
        cat->compose_tab[g][f] = idx[{cat->morphisms[f].dom, cat->morphisms[g].cod}];
      }
    }
  }
  cat->finalize();
  return cat;
}

// ---- groups ----------------------------------------------------------------

namespace {

struct GroupTable {
  std::string name;
  int order;
  std::vector<std::vector<int>> mul;  // mul[a][b]
  std::vector<int> gens;              // generating set used for hom search
};

std::vector<GroupTable> group_zoo(int max_order) {
  if (max_order > 4) {
    throw std::invalid_argument("groups_category: only orders <= 4 are built in");
  }
  std::vector<GroupTable> gs;
  auto cyclic = [](int n, std::string name) {
    GroupTable g{std::move(name), n, {}, {}};
    g.mul.assign(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) g.mul[a][b] = (a + b) % n;
    }
    if (n > 1) g.gens = {1};
    return g;
  };
  if (max_order >= 1) gs.push_back(cyclic(1, "1"));
  if (max_order >= 2) gs.push_back(cyclic(2, "Z2"));
  if (max_order >= 3) gs.push_back(cyclic(3, "Z3"));
  if (max_order >= 4) {
    gs.push_back(cyclic(4, "Z4"));
    GroupTable v{"V4", 4, {}, {1, 2}};
    v.mul = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};  // xor
    gs.push_back(v);
  }
  return gs;
}

/// Extends generator images to a full map by closing words; returns empty on
/// inconsistency. Identity maps to identity.
std::vector<int> hom_from_gens(const GroupTable& a, const GroupTable& b,
                               const std::vector<int>& gen_img) {
  std::vector<int> img(a.order, -1);
  img[0] = 0;
  for (size_t i = 0; i < a.gens.size(); ++i) img[a.gens[i]] = gen_img[i];
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < a.order; ++x) {
      if (img[x] < 0) continue;
      for (int y = 0; y < a.order; ++y) {
        if (img[y] < 0) continue;
        int z = a.mul[x][y];
        int w = b.mul[img[x]][img[y]];
        if (img[z] < 0) {
          img[z] = w;
          changed = true;
        } else if (img[z] != w) {
          return {};
        }
      }
    }
  }
  for (int x = 0; x < a.order; ++x) {
    if (img[x] < 0) return {};  // generators failed to generate
  }
  return img;
}

std::vector<std::vector<int>> homs_between(const GroupTable& a, const GroupTable& b) {
  std::vector<std::vector<int>> out;
  const int k = static_cast<int>(a.gens.size());
  std::vector<int> gi(k, 0);
  auto emit = [&]() {
    auto h = hom_from_gens(a, b, gi);
    if (!h.empty() && std::find(out.begin(), out.end(), h) == out.end()) out.push_back(h);
  };
  if (k == 0) {
    emit();
  } else {
    while (true) {
      emit();
      int i = k - 1;
      while (i >= 0 && gi[i] == b.order - 1) gi[i--] = 0;
      if (i < 0) break;
      ++gi[i];
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

CatPtr groups_category(int max_order, const std::string& cache_dir) {
  namespace fs = std::filesystem;
  std::string cache_file;
  if (!cache_dir.empty()) {
    cache_file = (fs::path(cache_dir) / ("groups" + std::to_string(max_order) + ".json")).string();
  }
  auto gs = group_zoo(max_order);
  FnCat fc;
  for (const auto& g : gs) {
    fc.sizes.push_back(g.order);
    fc.obj_names.push_back(g.name);
  }
  bool loaded = false;
  if (!cache_file.empty() && fs::exists(cache_file)) {
    std::ifstream in(cache_file);
    nlohmann::json j;
    in >> j;
    for (const auto& m : j["morphisms"]) {
      fc.add(m[0].get<int>(), m[1].get<int>(), m[2].get<std::vector<int>>());
    }
    loaded = true;
  }
  if (!loaded) {
    for (size_t a = 0; a < gs.size(); ++a) {
      for (size_t b = 0; b < gs.size(); ++b) {
        for (auto& h : homs_between(gs[a], gs[b])) {
          fc.add(static_cast<int>(a), static_cast<int>(b), h);
        }
      }
    }
    if (!cache_file.empty()) {
      nlohmann::json j;
      j["morphisms"] = nlohmann::json::array();
      for (const auto& [d, c, img] : fc.mors) j["morphisms"].push_back({d, c, img});
      fs::create_directories(cache_dir);
      std::ofstream out(cache_file);
      out << j.dump(1) << "\n";
    }
  }
  return fc.build();
}

// ---- payload helpers ---------------------------------------------------------

std::string subset_name(int k, std::uint32_t mask) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int i = 0; i < k; ++i) {
    if (mask & (1u << i)) {
      os << (first ? "" : ",") << i;
      first = false;
    }
  }
  os << "}";
  return os.str();
}

std::vector<std::uint32_t> subsets_of(int k) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t m = 0; m < (1u << k); ++m) out.push_back(m);
  return out;
}

std::vector<std::vector<int>> partitions_of(int k) {
  // restricted growth strings, lexicographic
  std::vector<std::vector<int>> out;
  std::vector<int> rgs(k, 0);
  if (k == 0) {
    out.push_back({});
    return out;
  }
  std::function<void(int, int)> rec = [&](int i, int maxc) {
    if (i == k) {
      out.push_back(rgs);
      return;
    }
    for (int c = 0; c <= maxc + 1 && c <= i; ++c) {
      rgs[i] = c;
      rec(i + 1, std::max(maxc, c));
    }
  };
  rec(0, -1);
  return out;
}

std::string partition_name(const std::vector<int>& part) {
  int nc = part.empty() ? 0 : *std::max_element(part.begin(), part.end()) + 1;
  std::ostringstream os;
  os << "{";
  for (int c = 0; c < nc; ++c) {
    os << (c ? "|" : "");
    bool first = true;
    for (size_t i = 0; i < part.size(); ++i) {
      if (part[i] == c) {
        os << (first ? "" : " ") << i;
        first = false;
      }
    }
  }
  os << "}";
  return os.str();
}

// ---- forms -------------------------------------------------------------------

namespace {

/// Reads the images vector back out of a generated morphism name.
std::vector<int> mor_images(const FinCategory& c, MorId f) {
  const std::string& nm = c.morphisms[f].name;
  auto lb = nm.find('[');
  std::vector<int> img;
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

int object_size(const FinCategory& c, ObjId x) {
  // sizes encoded by identity payload length
  return static_cast<int>(mor_images(c, c.identity[x]).size());
}

Form make_form(CatPtr base, std::string label,
               const std::function<std::vector<std::string>(ObjId)>& fiber,
               const std::function<bool(MorId, ClusterId, ClusterId)>& geq) {
  Form F;
  F.base = std::move(base);
  F.label = std::move(label);
  const FinCategory& c = *F.base;
  F.clusters.resize(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) F.clusters[x] = fiber(x);
  F.rel.resize(c.n_morphisms());
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    BoolMat m(F.fiber_size(c.cod(f)), F.fiber_size(c.dom(f)));
    for (int b = 0; b < m.rows(); ++b) {
      for (int a = 0; a < m.cols(); ++a) m.set(b, a, geq(f, b, a));
    }
    F.rel[f] = std::move(m);
  }
  return F;
}

}  // namespace

Form subsets_form(CatPtr finset) {
  const FinCategory& c = *finset;
  std::vector<int> size(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) size[x] = object_size(c, x);
  return make_form(
      finset, "subsets",
      [&](ObjId x) {
        std::vector<std::string> names;
        for (auto m : subsets_of(size[x])) names.push_back(subset_name(size[x], m));
        return names;
      },
      [&, finset](MorId f, ClusterId b, ClusterId a) {
        auto img = mor_images(*finset, f);
        std::uint32_t A = static_cast<std::uint32_t>(a), B = static_cast<std::uint32_t>(b);
        for (size_t i = 0; i < img.size(); ++i) {
          if ((A & (1u << i)) && !(B & (1u << img[i]))) return false;
        }
        return true;
      });
}

namespace {

bool congruence_geq(const std::vector<int>& S, const std::vector<int>& R,
                    const std::vector<int>& img) {
  // x R y implies img(x) S img(y)
  for (size_t i = 0; i < R.size(); ++i) {
    for (size_t j = i + 1; j < R.size(); ++j) {
      if (R[i] == R[j] && S[img[i]] != S[img[j]]) return false;
    }
  }
  return true;
}

Form partitions_based_form(CatPtr base, std::string label) {
  const FinCategory& c = *base;
  std::vector<int> size(c.n_objects());
  std::vector<std::vector<std::vector<int>>> parts(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    size[x] = object_size(c, x);
    parts[x] = partitions_of(size[x]);
  }
  return make_form(
      base, std::move(label),
      [&](ObjId x) {
        std::vector<std::string> names;
        for (const auto& p : parts[x]) names.push_back(partition_name(p));
        return names;
      },
      [&, base](MorId f, ClusterId b, ClusterId a) {
        auto img = mor_images(*base, f);
        return congruence_geq(parts[base->cod(f)][b], parts[base->dom(f)][a], img);
      });
}

}  // namespace

Form equivrel_form(CatPtr finset) { return partitions_based_form(std::move(finset), "equivrel"); }

Form quotients_form(CatPtr pointed_finset) {
  return partitions_based_form(std::move(pointed_finset), "pointed-quotients");
}

Form class_pairs_form(CatPtr finset) {
  const FinCategory& c = *finset;
  std::vector<int> size(c.n_objects());
  // fiber: list of (class index or -1 for empty, partition index)
  std::vector<std::vector<std::vector<int>>> parts(c.n_objects());
  std::vector<std::vector<std::pair<int, int>>> fib(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    size[x] = object_size(c, x);
    parts[x] = partitions_of(size[x]);
    for (size_t p = 0; p < parts[x].size(); ++p) {
      fib[x].push_back({-1, static_cast<int>(p)});
      int nc = parts[x][p].empty() ? 0 : *std::max_element(parts[x][p].begin(), parts[x][p].end()) + 1;
      for (int cl = 0; cl < nc; ++cl) fib[x].push_back({cl, static_cast<int>(p)});
    }
  }
  auto class_mask = [&](ObjId x, int pi, int cl) {
    std::uint32_t m = 0;
    if (cl >= 0) {
      for (size_t i = 0; i < parts[x][pi].size(); ++i) {
        if (parts[x][pi][i] == cl) m |= 1u << i;
      }
    }
    return m;
  };
  return make_form(
      finset, "class-pairs",
      [&](ObjId x) {
        std::vector<std::string> names;
        for (auto [cl, pi] : fib[x]) {
          names.push_back("(" + subset_name(size[x], class_mask(x, pi, cl)) + "," +
                          partition_name(parts[x][pi]) + ")");
        }
        return names;
      },
      [&, finset](MorId f, ClusterId b, ClusterId a) {
        const FinCategory& cc = *finset;
        auto img = mor_images(cc, f);
        auto [acl, api] = fib[cc.dom(f)][a];
        auto [bcl, bpi] = fib[cc.cod(f)][b];
        if (!congruence_geq(parts[cc.cod(f)][bpi], parts[cc.dom(f)][api], img)) return false;
        std::uint32_t A = class_mask(cc.dom(f), api, acl);
        std::uint32_t B = class_mask(cc.cod(f), bpi, bcl);
        for (size_t i = 0; i < img.size(); ++i) {
          if ((A & (1u << i)) && !(B & (1u << img[i]))) return false;
        }
        return true;
      });
}

Form palettes_form(CatPtr finset) {
  const FinCategory& c = *finset;
  std::vector<int> size(c.n_objects());
  std::vector<std::vector<std::vector<std::uint32_t>>> pals(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    size[x] = object_size(c, x);
    // nonempty antichains of subsets, enumerated over all nonempty families
    const std::uint32_t nsub = 1u << size[x];
    for (std::uint64_t fam = 1; fam < (1ull << nsub); ++fam) {
      std::vector<std::uint32_t> mem;
      for (std::uint32_t s = 0; s < nsub; ++s) {
        if (fam & (1ull << s)) mem.push_back(s);
      }
      bool antichain = true;
      for (size_t i = 0; i < mem.size() && antichain; ++i) {
        for (size_t j = 0; j < mem.size(); ++j) {
          if (i != j && (mem[i] & mem[j]) == mem[i]) {  // mem[i] ⊆ mem[j]
            antichain = false;
            break;
          }
        }
      }
      if (antichain) pals[x].push_back(mem);
    }
  }
  return make_form(
      finset, "palettes",
      [&](ObjId x) {
        std::vector<std::string> names;
        for (const auto& p : pals[x]) {
          std::ostringstream os;
          os << "{";
          for (size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << subset_name(size[x], p[i]);
          os << "}";
          names.push_back(os.str());
        }
        return names;
      },
      [&, finset](MorId f, ClusterId b, ClusterId a) {
        const FinCategory& cc = *finset;
        auto img = mor_images(cc, f);
        const auto& P = pals[cc.dom(f)][a];
        const auto& Q = pals[cc.cod(f)][b];
        for (std::uint32_t A : P) {
          std::uint32_t fA = 0;
          for (size_t i = 0; i < img.size(); ++i) {
            if (A & (1u << i)) fA |= 1u << img[i];
          }
          bool covered = false;
          for (std::uint32_t B : Q) {
            if ((fA & B) == fA) {
              covered = true;
              break;
            }
          }
          if (!covered) return false;
        }
        return true;
      });
}

Form subgroup_form(CatPtr groups) {
  const FinCategory& c = *groups;
  // reconstruct multiplication via identity payload size + hom composition is
  // not available here; recompute tables from the builder instead
  auto gs = group_zoo(c.n_objects() <= 3 ? 3 : 4);
  while (static_cast<int>(gs.size()) > c.n_objects()) gs.pop_back();
  std::vector<std::vector<std::uint32_t>> subs(c.n_objects());
  for (ObjId x = 0; x < c.n_objects(); ++x) {
    const auto& g = gs[x];
    for (std::uint32_t m = 1; m < (1u << g.order); ++m) {
      if (!(m & 1u)) continue;  // must contain the identity element 0
      bool closed = true;
      for (int a = 0; a < g.order && closed; ++a) {
        if (!(m & (1u << a))) continue;
        for (int b = 0; b < g.order; ++b) {
          if ((m & (1u << b)) && !(m & (1u << g.mul[a][b]))) {
            closed = false;
            break;
          }
        }
      }
      if (closed) subs[x].push_back(m);  // finite: closure under mul implies inverses
    }
  }
  return make_form(
      groups, "subgroups",
      [&](ObjId x) {
        std::vector<std::string> names;
        for (auto m : subs[x]) names.push_back(subset_name(gs[x].order, m));
        return names;
      },
      [&, groups](MorId f, ClusterId b, ClusterId a) {
        const FinCategory& cc = *groups;
        auto img = mor_images(cc, f);
        std::uint32_t A = subs[cc.dom(f)][a], B = subs[cc.cod(f)][b];
        for (size_t i = 0; i < img.size(); ++i) {
          if ((A & (1u << i)) && !(B & (1u << img[i]))) return false;
        }
        return true;
      });
}

std::vector<MorId> all_monos(const FinCategory& c) {
  std::vector<MorId> out;
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    if (is_mono(c, f)) out.push_back(f);
  }
  return out;
}

std::vector<MorId> all_epis(const FinCategory& c) {
  std::vector<MorId> out;
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    if (is_epi(c, f)) out.push_back(f);
  }
  return out;
}

std::vector<MorId> all_isos(const FinCategory& c) {
  std::vector<MorId> out;
  for (MorId f = 0; f < c.n_morphisms(); ++f) {
    if (is_iso(c, f)) out.push_back(f);
  }
  return out;
}

std::pair<TwoChainStructure, TwoChainStructure> two_chain_structures() {
  CatPtr chain = chain_category(2);
  const FinCategory& c = *chain;
  auto mor = [&](int a, int b) {
    for (MorId f = 0; f < c.n_morphisms(); ++f) {
      if (c.dom(f) == a && c.cod(f) == b) return f;
    }
    throw std::logic_error("two_chain_structures: missing morphism");
  };
  MorId f01 = mor(0, 1), g12 = mor(1, 2), gf = mor(0, 2);
  std::vector<MorId> ids = {c.identity[0], c.identity[1], c.identity[2]};

  // direct-image maps determine the relations: B >=_h A  iff  B >= h·A
  auto chain_form = [&](std::vector<int> sizes,
                        std::map<MorId, std::vector<int>> dimg) {
    Form F;
    F.base = chain;
    F.clusters.resize(3);
    for (ObjId x = 0; x < 3; ++x) {
      for (int i = 0; i < sizes[x]; ++i) F.clusters[x].push_back("c" + std::to_string(i));
    }
    F.rel.resize(c.n_morphisms());
    for (ObjId x = 0; x < 3; ++x) {
      std::vector<int> id(sizes[x]);
      for (int i = 0; i < sizes[x]; ++i) id[i] = i;
      dimg[c.identity[x]] = id;
    }
    dimg[gf] = {dimg[g12][dimg[f01][0]]};
    for (MorId h = 0; h < c.n_morphisms(); ++h) {
      BoolMat m(sizes[c.cod(h)], sizes[c.dom(h)]);
      for (int b = 0; b < m.rows(); ++b) {
        for (int a = 0; a < m.cols(); ++a) m.set(b, a, dimg[h][a] <= b);  // fibers are chains
      }
      F.rel[h] = std::move(m);
    }
    return F;
  };

  TwoChainStructure s1;
  s1.cat = chain;
  s1.E = ids;
  s1.M = {ids[0], ids[1], ids[2], f01, g12, gf};
  std::sort(s1.M.begin(), s1.M.end());
  s1.form = chain_form({1, 2, 3}, {{f01, {0}}, {g12, {0, 1}}});
  s1.form.label = "two-chain-1";

  TwoChainStructure s2;
  s2.cat = chain;
  s2.E = {ids[0], ids[1], ids[2], g12};
  s2.M = {ids[0], ids[1], ids[2], f01, gf};
  std::sort(s2.E.begin(), s2.E.end());
  std::sort(s2.M.begin(), s2.M.end());
  s2.form = chain_form({1, 3, 2}, {{f01, {0}}, {g12, {0, 0, 1}}});
  s2.form.label = "two-chain-2";

  return {s1, s2};
}

}  // namespace forma::zoo
