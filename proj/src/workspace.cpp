#include "sigmacolim/workspace.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "sigmacolim/filtered.hpp"

namespace sigmacolim {

namespace {

std::string position_message(int line, int column, const std::string& what) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
}

std::string join_issues(const std::vector<std::string>& issues) {
  std::string out = "workspace has " + std::to_string(issues.size()) + " problem(s)";
  for (const auto& i : issues) out += "\n  " + i;
  return out;
}

// Field access with a path for error messages.
const ojson& field(const ojson& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path + ": missing field '" + key + "'");
  return *it;
}

std::string str(const ojson& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path + ": expected a string");
  return j.get<std::string>();
}

std::string str_field(const ojson& j, const std::string& key, const std::string& path) {
  return str(field(j, key, path), path + "." + key);
}

const ojson& list(const ojson& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path + ": expected an array");
  return j;
}

const ojson* optional_field(const ojson& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() ? nullptr : &*it;
}

std::map<std::string, std::string> string_map(const ojson& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path + ": expected an object");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) out[k] = str(v, path + "." + k);
  return out;
}

std::array<std::string, 3> triple(const ojson& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) throw InputError(path + ": expected [left, right, result]");
  return {str(j[0], path), str(j[1], path), str(j[2], path)};
}

template <typename T>
T pick(const std::map<std::string, T>& m, const std::string& name, const std::string& what) {
  auto it = m.find(name);
  if (it == m.end()) throw InputError("unknown " + what + " '" + name + "'");
  return it->second;
}

CatRef parse_category(const ojson& j, const std::string& path) {
  FinCategory::Builder b;
  std::map<std::string, std::string> ids;
  if (auto* i = optional_field(j, "identities")) ids = string_map(*i, path + ".identities");
  for (const auto& o : list(field(j, "objects", path), path + ".objects")) {
    auto name = str(o, path + ".objects");
    if (ids.count(name)) {
      b.add_bare_object(name);
      b.set_identity(name, ids[name]);
    } else {
      b.add_object(name);
    }
  }
  for (const auto& a : list(field(j, "arrows", path), path + ".arrows"))
    b.add_arrow(str_field(a, "name", path + ".arrows"), str_field(a, "source", path + ".arrows"),
                str_field(a, "target", path + ".arrows"));
  if (auto* c = optional_field(j, "compose"))
    for (const auto& t : list(*c, path + ".compose")) {
      auto [g, f, gf] = triple(t, path + ".compose");
      b.set_compose(g, f, gf);
    }
  return b.build_shared();
}

TwoCatRef parse_2category(const ojson& j, const std::string& path) {
  Fin2Category::Builder b;
  std::map<std::string, std::string> id1, id2;
  if (auto* i = optional_field(j, "id1")) id1 = string_map(*i, path + ".id1");
  if (auto* i = optional_field(j, "id2")) id2 = string_map(*i, path + ".id2");
  for (const auto& o : list(field(j, "objects", path), path + ".objects")) {
    auto name = str(o, path + ".objects");
    if (id1.count(name)) {
      b.add_bare_object(name);
      b.set_id1(name, id1[name]);
    } else {
      b.add_object(name);
    }
  }
  for (const auto& c : list(field(j, "cells1", path), path + ".cells1")) {
    auto name = str_field(c, "name", path + ".cells1");
    auto s = str_field(c, "source", path + ".cells1");
    auto t = str_field(c, "target", path + ".cells1");
    if (id2.count(name)) {
      b.add_bare_cell1(name, s, t);
      b.set_id2(name, id2[name]);
    } else {
      b.add_cell1(name, s, t);
    }
  }
  if (auto* c2 = optional_field(j, "cells2"))
    for (const auto& c : list(*c2, path + ".cells2"))
      b.add_cell2(str_field(c, "name", path + ".cells2"), str_field(c, "source", path + ".cells2"),
                  str_field(c, "target", path + ".cells2"));
  auto table = [&](const char* key, auto set) {
    if (auto* t = optional_field(j, key))
      for (const auto& e : list(*t, path + "." + key)) {
        auto [l, r, res] = triple(e, path + "." + key);
        (b.*set)(l, r, res);
      }
  };
  table("hcompose1", &Fin2Category::Builder::set_hcompose1);
  table("vcompose", &Fin2Category::Builder::set_vcompose);
  table("hcompose2", &Fin2Category::Builder::set_hcompose2);
  return b.build_shared();
}

Functor parse_functor(const ojson& j, const CatRef& dom, const CatRef& cod,
                      const std::string& path) {
  std::map<std::string, std::string> arrows;
  if (auto* a = optional_field(j, "arrows")) arrows = string_map(*a, path + ".arrows");
  return make_functor(dom, cod, string_map(field(j, "objects", path), path + ".objects"), arrows);
}

ojson functor_json(const Functor& f) {
  ojson objects = ojson::object(), arrows = ojson::object();
  for (int x = 0; x < f.domain->num_objects(); ++x)
    objects[f.domain->object_name(x)] = f.codomain->object_name(f.obj(x));
  for (int r = 0; r < f.domain->num_arrows(); ++r)
    arrows[f.domain->arrow_name(r)] = f.codomain->arrow_name(f.arr(r));
  return {{"objects", objects}, {"arrows", arrows}};
}

void append(std::vector<std::string>& issues, const std::string& path, const Violations& vs) {
  for (const auto& v : vs) issues.push_back(path + ": " + v.kind + ": " + v.detail);
}

}  // namespace

ParseError::ParseError(int line, int column, const std::string& what)
    : InputError(position_message(line, column, what)), line_(line), column_(column) {}

WorkspaceError::WorkspaceError(std::vector<std::string> issues)
    : InputError(join_issues(issues)), issues_(std::move(issues)) {}

Fixture Workspace::fixture(const std::string& name) const {
  const auto& d = pick(fixtures, name, "fixture");
  const auto& s = pick(sigmas, d.sigma, "sigma class");
  Fixture fx{name, d.description, s.sigma.owner, s.sigma, nullptr, d.filtered, d.failing_axiom};
  if (!d.diagram.empty()) fx.diagram = diagram(d.diagram);
  return fx;
}

DiagramRef Workspace::diagram(const std::string& name) const {
  return pick(diagrams, name, "diagram").diagram;
}

const DiagramNatTransf& Workspace::transformation(const std::string& name) const {
  auto it = transformations.find(name);
  if (it == transformations.end()) throw InputError("unknown transformation '" + name + "'");
  return it->second.transf;
}

CatRef Workspace::category(const std::string& name) const {
  return pick(categories, name, "category");
}

Workspace parse_workspace(const std::string& text) {
  ojson root;
  try {
    root = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    int line = 1, column = 1;
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string what = e.what();
    auto cut = what.find("syntax error");
    throw ParseError(line, column, cut == std::string::npos ? what : what.substr(cut));
  }

  Workspace w;
  std::vector<std::string> issues;
  std::set<std::string> failed;  // declarations whose dependents are skipped
  if (!root.is_object()) throw WorkspaceError({"root: expected an object"});
  if (auto* v = optional_field(root, "schema_version")) {
    if (!v->is_number_integer() || v->get<int>() != kSchemaVersion)
      throw WorkspaceError({"schema_version: expected " + std::to_string(kSchemaVersion)});
  } else {
    throw WorkspaceError({"root: missing field 'schema_version'"});
  }

  // Runs `body` for each named entry of a section, collecting failures.
  auto section = [&](const char* key, auto body) {
    auto* s = optional_field(root, key);
    if (!s) return;
    if (!s->is_array()) {
      issues.push_back(std::string(key) + ": expected an array");
      return;
    }
    std::set<std::string> seen;
    for (std::size_t i = 0; i < s->size(); ++i) {
      const auto& e = (*s)[i];
      std::string path = std::string(key) + "[" + std::to_string(i) + "]";
      try {
        auto name = str_field(e, "name", path);
        path = std::string(key) + "." + name;
        if (!seen.insert(name).second) {
          issues.push_back(path + ": duplicate name");
          continue;
        }
        body(name, e, path);
      } catch (const std::exception& ex) {
        std::string msg = ex.what();
        if (msg.rfind(path, 0) != 0) msg = path + ": " + msg;
        issues.push_back(msg);
        if (e.is_object() && e.contains("name") && e["name"].is_string())
          failed.insert(std::string(key) + ":" + e["name"].get<std::string>());
      }
    }
  };
  // Throws a silent skip when a referenced declaration already failed.
  struct Skip {};
  auto need = [&](const char* kind, const std::string& name) {
    if (failed.count(std::string(kind) + ":" + name)) throw Skip{};
  };
  auto guarded = [&](const char* key, auto body) {
    section(key, [&](const std::string& name, const ojson& e, const std::string& path) {
      try {
        body(name, e, path);
      } catch (Skip) {
        failed.insert(std::string(key) + ":" + name);
      }
    });
  };

  guarded("categories", [&](const std::string& name, const ojson& e, const std::string& path) {
    auto c = parse_category(e, path);
    auto vs = validate_category(*c);
    if (!vs.empty()) {
      failed.insert("categories:" + name);
      append(issues, path, vs);
      return;
    }
    w.categories[name] = c;
  });
  guarded("two_categories", [&](const std::string& name, const ojson& e, const std::string& path) {
    auto a = parse_2category(e, path);
    auto vs = validate_2category(*a);
    if (!vs.empty()) {
      failed.insert("two_categories:" + name);
      append(issues, path, vs);
      return;
    }
    w.two_categories[name] = a;
  });
  guarded("sigma_classes", [&](const std::string& name, const ojson& e, const std::string& path) {
    auto owner = str_field(e, "two_category", path);
    need("two_categories", owner);
    auto a = pick(w.two_categories, owner, "2-category");
    const auto& m = field(e, "members", path);
    SigmaClass s;
    if (m.is_string() && m.get<std::string>() == "all") {
      s = sigma_all(a);
    } else if (m.is_string() && m.get<std::string>() == "identities") {
      s = sigma_identities(a);
    } else {
      std::vector<std::string> names;
      for (const auto& x : list(m, path + ".members")) names.push_back(str(x, path + ".members"));
      s = sigma_from_names(a, names);
    }
    auto vs = validate_sigma(s);
    if (!vs.empty()) {
      failed.insert("sigma_classes:" + name);
      append(issues, path, vs);
      return;
    }
    w.sigmas[name] = {owner, s};
  });
  guarded("diagrams", [&](const std::string& name, const ojson& e, const std::string& path) {
    Workspace::DiagramDecl d;
    d.sigma = str_field(e, "sigma", path);
    need("sigma_classes", d.sigma);
    const auto& s = pick(w.sigmas, d.sigma, "sigma class");
    d.index = s.two_category;
    if (auto* i = optional_field(e, "index")) {
      if (str(*i, path + ".index") != d.index)
        throw InputError(path + ": index differs from the owner of '" + d.sigma + "'");
    }
    const auto& a = *s.sigma.owner;
    DiagramBuilder b(s.sigma.owner, s.sigma);
    auto values = string_map(field(e, "values", path), path + ".values");
    for (int x = 0; x < a.num_objects(); ++x) {
      auto it = values.find(a.object_name(x));
      if (it == values.end())
        throw InputError(path + ".values: no value at '" + a.object_name(x) + "'");
      need("categories", it->second);
      b.value(it->first, pick(w.categories, it->second, "category"));
      d.values.push_back(it->second);
    }
    for (const auto& [k, _] : values) a.object_index(k);
    if (auto* c1 = optional_field(e, "cells1")) {
      if (!c1->is_object()) throw InputError(path + ".cells1: expected an object");
      for (const auto& [u, f] : c1->items()) {
        int ui = a.cell1_index(u);
        auto sv = w.categories[d.values[a.src(ui)]];
        auto tv = w.categories[d.values[a.tgt(ui)]];
        b.on_cell1(u, parse_functor(f, sv, tv, path + ".cells1." + u));
      }
    }
    if (auto* c2 = optional_field(e, "cells2")) {
      if (!c2->is_object()) throw InputError(path + ".cells2: expected an object");
      for (const auto& [al, comps] : c2->items())
        b.on_cell2(al, string_map(comps, path + ".cells2." + al));
    }
    d.diagram = b.build_shared();
    auto vs = validate_diagram(*d.diagram);
    if (!vs.empty()) {
      failed.insert("diagrams:" + name);
      append(issues, path, vs);
      return;
    }
    w.diagrams[name] = std::move(d);
  });
  guarded("transformations", [&](const std::string& name, const ojson& e,
                                 const std::string& path) {
    Workspace::TransfDecl t;
    t.source = str_field(e, "source", path);
    t.target = str_field(e, "target", path);
    need("diagrams", t.source);
    need("diagrams", t.target);
    auto src = w.diagram(t.source);
    auto tgt = w.diagram(t.target);
    if (src->index.get() != tgt->index.get())
      throw InputError(path + ": source and target have different indices");
    t.transf = {src, tgt, {}};
    const auto& comps = field(e, "components", path);
    const auto& a = *src->index;
    for (int x = 0; x < a.num_objects(); ++x) {
      const auto& name_x = a.object_name(x);
      if (!comps.contains(name_x))
        throw InputError(path + ".components: no component at '" + name_x + "'");
      t.transf.components.push_back(parse_functor(comps[name_x], src->values[x], tgt->values[x],
                                                  path + ".components." + name_x));
    }
    auto vs = validate_diagram_transf(t.transf);
    if (!vs.empty()) {
      append(issues, path, vs);
      return;
    }
    w.transformations[name] = std::move(t);
  });
  guarded("fixtures", [&](const std::string& name, const ojson& e, const std::string& path) {
    Workspace::FixtureDecl f;
    if (auto* d = optional_field(e, "description")) f.description = str(*d, path + ".description");
    f.sigma = str_field(e, "sigma", path);
    need("sigma_classes", f.sigma);
    const auto& s = pick(w.sigmas, f.sigma, "sigma class");
    if (auto* i = optional_field(e, "index"))
      if (str(*i, path + ".index") != s.two_category)
        throw InputError(path + ": index differs from the owner of '" + f.sigma + "'");
    if (auto* d = optional_field(e, "diagram")) {
      f.diagram = str(*d, path + ".diagram");
      need("diagrams", f.diagram);
      const auto& dd = pick(w.diagrams, f.diagram, "diagram");
      if (dd.sigma != f.sigma)
        throw InputError(path + ": diagram '" + f.diagram + "' uses another sigma class");
    }
    const auto& fl = field(e, "filtered", path);
    if (!fl.is_boolean()) throw InputError(path + ".filtered: expected a boolean");
    f.filtered = fl.get<bool>();
    if (auto* fa = optional_field(e, "failing_axiom"))
      f.failing_axiom = str(*fa, path + ".failing_axiom");
    w.fixtures[name] = std::move(f);
  });

  for (const auto& [key, _] : root.items()) {
    static const std::set<std::string> known = {"schema_version", "categories",
                                                "two_categories", "sigma_classes",
                                                "diagrams",       "transformations",
                                                "fixtures"};
    if (!known.count(key)) issues.push_back(key + ": unknown section");
  }
  if (!issues.empty()) throw WorkspaceError(std::move(issues));
  return w;
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return parse_workspace(s.str());
}

ojson to_json(const FinCategory& c) {
  ojson objects = ojson::array(), ids = ojson::object(), arrows = ojson::array(),
        comp = ojson::array();
  for (int x = 0; x < c.num_objects(); ++x) {
    objects.push_back(c.object_name(x));
    ids[c.object_name(x)] = c.arrow_name(c.identity(x));
  }
  for (int r = 0; r < c.num_arrows(); ++r)
    arrows.push_back({{"name", c.arrow_name(r)},
                      {"source", c.object_name(c.src(r))},
                      {"target", c.object_name(c.tgt(r))}});
  for (const auto& [g, f, gf] : c.composition_triples())
    comp.push_back({c.arrow_name(g), c.arrow_name(f), c.arrow_name(gf)});
  return {{"objects", objects}, {"identities", ids}, {"arrows", arrows}, {"compose", comp}};
}

ojson to_json(const Fin2Category& a) {
  ojson objects = ojson::array(), id1 = ojson::object(), cells1 = ojson::array(),
        id2 = ojson::object(), cells2 = ojson::array();
  for (int x = 0; x < a.num_objects(); ++x) {
    objects.push_back(a.object_name(x));
    id1[a.object_name(x)] = a.cell1_name(a.id1(x));
  }
  for (int u = 0; u < a.num_cells1(); ++u) {
    cells1.push_back({{"name", a.cell1_name(u)},
                      {"source", a.object_name(a.src(u))},
                      {"target", a.object_name(a.tgt(u))}});
    id2[a.cell1_name(u)] = a.cell2_name(a.id2(u));
  }
  for (int al = 0; al < a.num_cells2(); ++al)
    cells2.push_back({{"name", a.cell2_name(al)},
                      {"source", a.cell1_name(a.src2(al))},
                      {"target", a.cell1_name(a.tgt2(al))}});
  auto table = [&](const std::vector<std::array<int, 3>>& t, bool two) {
    ojson out = ojson::array();
    for (const auto& [l, r, res] : t) {
      if (two)
        out.push_back({a.cell2_name(l), a.cell2_name(r), a.cell2_name(res)});
      else
        out.push_back({a.cell1_name(l), a.cell1_name(r), a.cell1_name(res)});
    }
    return out;
  };
  return {{"objects", objects},
          {"id1", id1},
          {"cells1", cells1},
          {"id2", id2},
          {"cells2", cells2},
          {"hcompose1", table(a.hcompose1_triples(), false)},
          {"vcompose", table(a.vcompose_triples(), true)},
          {"hcompose2", table(a.hcompose2_triples(), true)}};
}

ojson to_json(const Workspace& w) {
  ojson root = ojson::object();
  root["schema_version"] = w.schema_version;
  auto named = [](const std::string& name, const ojson& body) {
    ojson out = {{"name", name}};
    for (const auto& [k, v] : body.items()) out[k] = v;
    return out;
  };
  ojson cats = ojson::array();
  for (const auto& [n, c] : w.categories) cats.push_back(named(n, to_json(*c)));
  ojson twos = ojson::array();
  for (const auto& [n, a] : w.two_categories) twos.push_back(named(n, to_json(*a)));
  ojson sigmas = ojson::array();
  for (const auto& [n, s] : w.sigmas)
    sigmas.push_back({{"name", n}, {"two_category", s.two_category},
                      {"members", sigma_names(s.sigma)}});
  ojson diagrams = ojson::array();
  for (const auto& [n, d] : w.diagrams) {
    const auto& a = *d.diagram->index;
    ojson values = ojson::object(), c1 = ojson::object(), c2 = ojson::object();
    for (int x = 0; x < a.num_objects(); ++x) values[a.object_name(x)] = d.values[x];
    for (int u = 0; u < a.num_cells1(); ++u)
      c1[a.cell1_name(u)] = functor_json(d.diagram->cells1[u]);
    for (int al = 0; al < a.num_cells2(); ++al) {
      const auto& t = d.diagram->cells2[al];
      ojson comps = ojson::object();
      for (int x = 0; x < t.source.domain->num_objects(); ++x)
        comps[t.source.domain->object_name(x)] =
            t.source.codomain->arrow_name(t.components[x]);
      c2[a.cell2_name(al)] = comps;
    }
    diagrams.push_back({{"name", n},
                        {"index", d.index},
                        {"sigma", d.sigma},
                        {"values", values},
                        {"cells1", c1},
                        {"cells2", c2}});
  }
  ojson transfs = ojson::array();
  for (const auto& [n, t] : w.transformations) {
    const auto& a = *t.transf.source->index;
    ojson comps = ojson::object();
    for (int x = 0; x < a.num_objects(); ++x)
      comps[a.object_name(x)] = functor_json(t.transf.components[x]);
    transfs.push_back(
        {{"name", n}, {"source", t.source}, {"target", t.target}, {"components", comps}});
  }
  ojson fixtures = ojson::array();
  for (const auto& [n, f] : w.fixtures) {
    ojson j = {{"name", n},
               {"description", f.description},
               {"index", w.sigmas.at(f.sigma).two_category},
               {"sigma", f.sigma}};
    if (!f.diagram.empty()) j["diagram"] = f.diagram;
    j["filtered"] = f.filtered;
    j["failing_axiom"] = f.failing_axiom;
    fixtures.push_back(j);
  }
  root["categories"] = cats;
  root["two_categories"] = twos;
  root["sigma_classes"] = sigmas;
  root["diagrams"] = diagrams;
  root["transformations"] = transfs;
  root["fixtures"] = fixtures;
  return root;
}

std::string serialize(const Workspace& w) { return to_json(w).dump(2) + "\n"; }

void add_fixture(Workspace& w, const Fixture& fx) {
  const auto& a = *fx.index;
  std::string index = fx.name + ".index";
  std::string sigma = fx.name + ".sigma";
  w.two_categories[index] = fx.index;
  w.sigmas[sigma] = {index, fx.sigma};
  Workspace::FixtureDecl decl{fx.description, sigma, "", fx.filtered, fx.failing_axiom};
  if (fx.diagram) {
    Workspace::DiagramDecl d{index, sigma, {}, fx.diagram};
    std::map<const FinCategory*, std::string> named;
    for (int x = 0; x < a.num_objects(); ++x) {
      const auto* key = fx.diagram->values[x].get();
      auto it = named.find(key);
      if (it == named.end()) {
        std::string n = fx.name + "." + a.object_name(x);
        it = named.emplace(key, n).first;
        w.categories[n] = fx.diagram->values[x];
      }
      d.values.push_back(it->second);
    }
    decl.diagram = fx.name;
    w.diagrams[fx.name] = std::move(d);
  }
  w.fixtures[fx.name] = std::move(decl);
}

Workspace bundled_workspace() {
  Workspace w;
  for (const auto& fx : bundled_fixtures()) add_fixture(w, fx);
  // The pseudo-equalizer inputs for the walking arrow: F ⇉ F × iso.
  auto fx = bundled_fixture("walking_arrow");
  auto in = pseudoeq_inclusions(fx.diagram);
  const auto& a = *fx.index;
  Workspace::DiagramDecl h{"walking_arrow.index", "walking_arrow.sigma", {}, in.alpha.target};
  for (int x = 0; x < a.num_objects(); ++x) {
    std::string n = "walking_arrow_iso." + a.object_name(x);
    w.categories[n] = in.alpha.target->values[x];
    h.values.push_back(n);
  }
  w.diagrams["walking_arrow_iso"] = std::move(h);
  w.transformations["walking_arrow.alpha"] = {"walking_arrow", "walking_arrow_iso", in.alpha};
  w.transformations["walking_arrow.beta"] = {"walking_arrow", "walking_arrow_iso", in.beta};
  return w;
}

}  // namespace sigmacolim
