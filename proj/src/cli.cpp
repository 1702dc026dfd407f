#include "sigmacolim/cli.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "sigmacolim/colimit.hpp"
#include "sigmacolim/exactness.hpp"
#include "sigmacolim/filtered.hpp"
#include "sigmacolim/fixtures.hpp"
#include "sigmacolim/lemma.hpp"
#include "sigmacolim/workspace.hpp"

namespace sigmacolim {

namespace fs = std::filesystem;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    out += buf;
  }
  return out;
}

namespace {

constexpr const char* kReportFormat = "sigmacolim-report/1";

struct Options {
  std::string workspace;
  std::string fixture;
  std::string out_dir;
  bool timing = false;
  std::size_t max_vertices = 500;
  std::size_t max_witness = 50;
  bool strict_f2 = false;
  // command specific
  std::vector<std::string> objects;
  bool all_cones = false;
  std::vector<std::string> vertices;
  std::string kind;
  std::string weight = "walking_arrow";
  std::string second;
  std::string alpha, beta;
  std::string inputs = "inclusions";
  std::string lemma_case = "all";
  std::string instance;
};

// Everything a command produces.
struct Report {
  std::string command;
  bool positive = false;
  ojson result = ojson::object();
  std::vector<std::string> caps_hit;
  std::vector<std::string> summary;
};

struct Source {
  Workspace workspace;
  std::string origin;
};

std::vector<fs::path> fixture_files() {
  std::vector<fs::path> out;
  const char* dir = std::getenv(kFixtureDirVar);
  if (!dir || !*dir) return out;
  if (!fs::is_directory(dir))
    throw InputError(std::string(kFixtureDirVar) + " is not a directory: " + dir);
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
  std::sort(out.begin(), out.end());
  return out;
}

// The workspace holding the requested fixture: --workspace, then the
// fixture directory, then the bundled set.
Source resolve(const Options& o) {
  if (!o.workspace.empty()) return {load_workspace(o.workspace), o.workspace};
  for (const auto& p : fixture_files()) {
    auto w = load_workspace(p.string());
    if (o.fixture.empty() || w.fixtures.count(o.fixture))
      return {std::move(w), p.filename().string()};
  }
  return {bundled_workspace(), "bundled"};
}

std::string canonical_args(const Options& o, const std::string& command) {
  std::ostringstream s;
  s << command << "|fixture=" << o.fixture << "|max-vertices=" << o.max_vertices
    << "|max-witness-size=" << o.max_witness << "|strict-f2=" << o.strict_f2;
  for (const auto& x : o.objects) s << "|object=" << x;
  s << "|all=" << o.all_cones;
  for (const auto& v : o.vertices) s << "|vertex=" << v;
  s << "|kind=" << o.kind << "|weight=" << o.weight << "|second=" << o.second
    << "|alpha=" << o.alpha << "|beta=" << o.beta << "|inputs=" << o.inputs
    << "|case=" << o.lemma_case << "|instance=" << o.instance;
  return s.str();
}

// Keeps at most `cap` entries, recording the cut.
void truncate(ojson& list, std::size_t cap, const std::string& what, Report& r) {
  if (list.size() <= cap) return;
  r.caps_hit.push_back("max-witness-size: " + what + " (" + std::to_string(cap) + " of " +
                       std::to_string(list.size()) + ")");
  ojson kept = ojson::array();
  for (std::size_t i = 0; i < cap; ++i) kept.push_back(list[i]);
  list = std::move(kept);
}

ojson premorphism_json(const Premorphism& p, const CatDiagram& f) {
  const auto& a = *f.index;
  return {{"source", describe(p.source, f)},
          {"target", describe(p.target, f)},
          {"u", a.cell1_name(p.u)},
          {"v", a.cell1_name(p.v)},
          {"xi", f.at(a.tgt(p.u)).arrow_name(p.xi)}};
}

ojson functor_table(const Functor& f) {
  ojson objects = ojson::object(), arrows = ojson::object();
  for (int x = 0; x < f.domain->num_objects(); ++x)
    objects[f.domain->object_name(x)] = f.codomain->object_name(f.obj(x));
  for (int r = 0; r < f.domain->num_arrows(); ++r)
    arrows[f.domain->arrow_name(r)] = f.codomain->arrow_name(f.arr(r));
  return {{"objects", objects}, {"arrows", arrows}};
}

ojson report_json(const EquivalenceReport& e) {
  return {{"essentially_surjective", e.essentially_surjective},
          {"full", e.full},
          {"faithful", e.faithful},
          {"equivalence", e.is_equivalence()}};
}

Fixture need_fixture(const Source& s, const Options& o) {
  if (o.fixture.empty()) throw InputError("--fixture is required");
  return s.workspace.fixture(o.fixture);
}

Fixture need_diagram(const Source& s, const Options& o) {
  auto fx = need_fixture(s, o);
  if (!fx.diagram) throw InputError("fixture '" + fx.name + "' has no diagram");
  return fx;
}

// --- validate ---------------------------------------------------------------

void cmd_validate(const Options& o, Report& r) {
  ojson files = ojson::array();
  bool ok = true;
  auto check = [&](const std::string& label, const std::function<Workspace()>& load) {
    ojson entry = {{"file", label}};
    try {
      auto w = load();
      ojson fixtures = ojson::array();
      for (const auto& [name, d] : w.fixtures) {
        auto fx = w.fixture(name);
        auto rep = is_sigma_filtered(*fx.index, fx.sigma, o.strict_f2);
        bool agrees = rep.holds() == d.filtered && rep.failing_axiom == d.failing_axiom;
        ok = ok && agrees;
        fixtures.push_back({{"name", name},
                            {"declared_filtered", d.filtered},
                            {"computed_filtered", rep.holds()},
                            {"failing_axiom", rep.failing_axiom},
                            {"agrees", agrees}});
        if (!agrees) r.summary.push_back(label + ": fixture " + name + " disagrees with its declaration");
      }
      entry["valid"] = true;
      entry["counts"] = {{"categories", w.categories.size()},
                         {"two_categories", w.two_categories.size()},
                         {"sigma_classes", w.sigmas.size()},
                         {"diagrams", w.diagrams.size()},
                         {"transformations", w.transformations.size()},
                         {"fixtures", w.fixtures.size()}};
      entry["fixtures"] = fixtures;
      r.summary.push_back(label + ": valid, " + std::to_string(w.fixtures.size()) + " fixture(s)");
    } catch (const WorkspaceError& e) {
      ok = false;
      entry["valid"] = false;
      entry["issues"] = e.issues();
      r.summary.push_back(label + ": " + std::to_string(e.issues().size()) + " problem(s)");
      for (const auto& i : e.issues()) r.summary.push_back("  " + i);
    }
    files.push_back(entry);
  };
  if (!o.workspace.empty()) {
    check(fs::path(o.workspace).filename().string(), [&] { return load_workspace(o.workspace); });
  } else {
    auto paths = fixture_files();
    for (const auto& p : paths)
      check(p.filename().string(), [p] { return load_workspace(p.string()); });
    if (paths.empty()) check("bundled", [] { return bundled_workspace(); });
  }
  r.result["files"] = files;
  r.positive = ok;
}

// --- check-filtered ---------------------------------------------------------

void cmd_check_filtered(const Options& o, const Source& s, Report& r) {
  auto fx = need_fixture(s, o);
  const auto& a = *fx.index;
  auto rep = is_sigma_filtered(a, fx.sigma, o.strict_f2);
  auto c1 = [&](int u) { return a.cell1_name(u); };
  auto c2 = [&](int al) { return a.cell2_name(al); };
  ojson f0 = ojson::array(), f1 = ojson::array(), f2 = ojson::array();
  for (const auto& w : rep.f0.witnesses)
    f0.push_back({{"a", a.object_name(w.a)}, {"b", a.object_name(w.b)},
                  {"e", a.object_name(w.e)}, {"f", c1(w.f)}, {"g", c1(w.g)}});
  for (const auto& w : rep.f1.witnesses)
    f1.push_back({{"f", c1(w.f)}, {"g", c1(w.g)}, {"h", c1(w.h)}, {"alpha", c2(w.alpha)}});
  for (const auto& w : rep.f2.witnesses)
    f2.push_back({{"alpha", c2(w.alpha)}, {"beta", c2(w.beta)}, {"h", c1(w.h)}});
  truncate(f0, o.max_witness, "sigmaF0 witnesses", r);
  truncate(f1, o.max_witness, "sigmaF1 witnesses", r);
  truncate(f2, o.max_witness, "sigmaF2 witnesses", r);
  ojson counter = nullptr;
  if (rep.failing_axiom == "sigmaF0" && rep.f0.counterexample)
    counter = {a.object_name(rep.f0.counterexample->first),
               a.object_name(rep.f0.counterexample->second)};
  if (rep.failing_axiom == "sigmaF1" && rep.f1.counterexample)
    counter = {c1(rep.f1.counterexample->first), c1(rep.f1.counterexample->second)};
  if (rep.failing_axiom == "sigmaF2" && rep.f2.counterexample)
    counter = {c2(rep.f2.counterexample->first), c2(rep.f2.counterexample->second)};
  r.result = {{"fixture", fx.name},
              {"strict_f2", o.strict_f2},
              {"filtered", rep.holds()},
              {"failing_axiom", rep.failing_axiom},
              {"counterexample", counter},
              {"nonempty", rep.nonempty},
              {"sigmaF0", {{"holds", rep.f0.holds}, {"witnesses", f0}}},
              {"sigmaF1", {{"holds", rep.f1.holds}, {"witnesses", f1}}},
              {"sigmaF2", {{"holds", rep.f2.holds}, {"witnesses", f2}}}};
  r.positive = rep.holds();
  r.summary.push_back("fixture: " + fx.name);
  r.summary.push_back(std::string("sigma-filtered: ") + (rep.holds() ? "yes" : "no"));
  if (!rep.holds()) {
    std::string line = "failing axiom: " + rep.failing_axiom;
    if (!counter.is_null()) {
      line += " at (" + counter[0].get<std::string>() + ", " + counter[1].get<std::string>() + ")";
    }
    r.summary.push_back(line);
  }
}

// --- find-cone --------------------------------------------------------------

// Full sub-2-category on `names` and its inclusion.
TwoFunctor full_inclusion(const TwoCatRef& a, const std::vector<std::string>& names) {
  std::vector<char> keep(a->num_objects(), names.empty());
  for (const auto& n : names) keep[a->object_index(n)] = 1;
  Fin2Category::Builder b;
  std::vector<char> k1(a->num_cells1(), 0), k2(a->num_cells2(), 0);
  for (int x = 0; x < a->num_objects(); ++x)
    if (keep[x]) b.add_bare_object(a->object_name(x));
  for (int u = 0; u < a->num_cells1(); ++u)
    if (keep[a->src(u)] && keep[a->tgt(u)]) {
      k1[u] = 1;
      b.add_bare_cell1(a->cell1_name(u), a->object_name(a->src(u)), a->object_name(a->tgt(u)));
    }
  for (int x = 0; x < a->num_objects(); ++x)
    if (keep[x]) b.set_id1(a->object_name(x), a->cell1_name(a->id1(x)));
  for (int al = 0; al < a->num_cells2(); ++al)
    if (k1[a->src2(al)]) {
      k2[al] = 1;
      b.add_cell2(a->cell2_name(al), a->cell1_name(a->src2(al)), a->cell1_name(a->tgt2(al)));
    }
  for (int u = 0; u < a->num_cells1(); ++u)
    if (k1[u]) b.set_id2(a->cell1_name(u), a->cell2_name(a->id2(u)));
  for (const auto& [g, f, gf] : a->hcompose1_triples())
    if (k1[g] && k1[f]) b.set_hcompose1(a->cell1_name(g), a->cell1_name(f), a->cell1_name(gf));
  for (const auto& [be, al, res] : a->vcompose_triples())
    if (k2[be] && k2[al]) b.set_vcompose(a->cell2_name(be), a->cell2_name(al), a->cell2_name(res));
  for (const auto& [be, al, res] : a->hcompose2_triples())
    if (k2[be] && k2[al]) b.set_hcompose2(a->cell2_name(be), a->cell2_name(al), a->cell2_name(res));
  auto d = b.build_shared(false);
  TwoFunctor g{d, a, {}, {}, {}};
  for (int x = 0; x < d->num_objects(); ++x) g.objects.push_back(a->object_index(d->object_name(x)));
  for (int u = 0; u < d->num_cells1(); ++u) g.cells1.push_back(a->cell1_index(d->cell1_name(u)));
  for (int al = 0; al < d->num_cells2(); ++al) g.cells2.push_back(a->cell2_index(d->cell2_name(al)));
  return g;
}

void cmd_find_cone(const Options& o, const Source& s, Report& r) {
  auto fx = need_fixture(s, o);
  const auto& a = *fx.index;
  auto g = full_inclusion(fx.index, o.objects);
  ConeSearchOptions so;
  so.max_cones = o.all_cones ? o.max_vertices : 1;
  auto res = sigma_cone_search(g, fx.sigma, so);
  const auto& d = *g.domain;
  ojson cones = ojson::array();
  for (const auto& c : res.cones) {
    ojson legs = ojson::object(), cells = ojson::object();
    for (int x = 0; x < d.num_objects(); ++x) legs[d.object_name(x)] = a.cell1_name(c.legs[x]);
    for (int u = 0; u < d.num_cells1(); ++u) cells[d.cell1_name(u)] = a.cell2_name(c.cells[u]);
    cones.push_back({{"vertex", a.object_name(c.vertex)}, {"legs", legs}, {"cells", cells}});
  }
  if (res.capped) r.caps_hit.push_back("search nodes (" + std::to_string(so.max_nodes) + ")");
  if (o.all_cones && res.cones.size() >= o.max_vertices)
    r.caps_hit.push_back("max-vertices: cones (" + std::to_string(o.max_vertices) + ")");
  std::size_t total = cones.size();
  truncate(cones, o.max_witness, "cones", r);
  ojson objects = ojson::array();
  for (int x = 0; x < d.num_objects(); ++x) objects.push_back(d.object_name(x));
  r.result = {{"fixture", fx.name},
              {"diagram_objects", objects},
              {"found", res.found()},
              {"cones_found", total},
              {"nodes", res.nodes},
              {"cones", cones}};
  r.positive = res.found();
  r.summary.push_back("fixture: " + fx.name);
  r.summary.push_back("diagram: " + std::to_string(d.num_objects()) + " object(s), " +
                      std::to_string(d.num_cells1()) + " 1-cell(s)");
  if (res.found()) {
    r.summary.push_back("sigma-cone found, vertex " + a.object_name(res.first().vertex));
  } else {
    r.summary.push_back("no sigma-cone found");
  }
}

// --- colimit ----------------------------------------------------------------

void cmd_colimit(const Options& o, const Source& s, Report& r) {
  auto fx = need_diagram(s, o);
  const auto& f = *fx.diagram;
  const auto& a = *fx.index;
  auto l = build_colimit(f, {o.strict_f2});
  const auto& c = *l.category;
  ojson objects = ojson::array(), classes = ojson::array();
  for (int i = 0; i < c.num_objects(); ++i)
    objects.push_back({{"name", c.object_name(i)},
                       {"index", a.object_name(l.objects[i].index)},
                       {"object", f.at(l.objects[i].index).object_name(l.objects[i].x)}});
  r.summary.push_back("fixture: " + fx.name);
  r.summary.push_back("colimit: " + std::to_string(c.num_objects()) + " object(s), " +
                      std::to_string(c.num_arrows()) + " arrow(s)");
  r.summary.push_back("classes:");
  for (int k = 0; k < c.num_arrows(); ++k) {
    const auto& p = l.representatives[k];
    const auto& h = l.quotient.hom(p.source, p.target);
    auto idx = std::lower_bound(h.members.begin(), h.members.end(), p) - h.members.begin();
    int cls = h.class_of[idx];
    std::size_t size = std::count(h.class_of.begin(), h.class_of.end(), cls);
    classes.push_back({{"arrow", c.arrow_name(k)},
                       {"representative", premorphism_json(p, f)},
                       {"members", size}});
    r.summary.push_back("  " + c.arrow_name(k) + "  x" + std::to_string(size));
  }
  ojson legs = ojson::object(), cells = ojson::object();
  for (int x = 0; x < a.num_objects(); ++x) legs[a.object_name(x)] = functor_table(l.lambda.legs[x]);
  for (int u = 0; u < a.num_cells1(); ++u) {
    const auto& t = l.lambda.cells[u];
    ojson comps = ojson::object();
    for (int x = 0; x < t.source.domain->num_objects(); ++x)
      comps[t.source.domain->object_name(x)] = c.arrow_name(t.components[x]);
    cells[a.cell1_name(u)] = comps;
  }
  r.result = {{"fixture", fx.name},
              {"category", to_json(c)},
              {"objects", objects},
              {"classes", classes},
              {"closure_pairs", l.quotient.closure_pairs},
              {"lambda", {{"legs", legs}, {"cells", cells}}}};
  r.positive = true;
}

// --- universal-check --------------------------------------------------------

CatRef vertex_category(const Source& s, const std::string& name) {
  if (name == "terminal") return cats::terminal();
  if (name == "walking_arrow") return cats::walking_arrow();
  if (name == "walking_iso") return cats::walking_iso();
  if (name == "discrete2") return cats::discrete(2);
  if (name == "chain3") return cats::chain(3);
  if (name == "empty") return cats::empty();
  return s.workspace.category(name);
}

void cmd_universal(const Options& o, const Source& s, Report& r) {
  auto fx = need_diagram(s, o);
  auto l = build_colimit(*fx.diagram, {o.strict_f2});
  auto names = o.vertices.empty() ? std::vector<std::string>{"terminal", "walking_arrow"}
                                  : o.vertices;
  ojson checks = ojson::array();
  bool ok = true;
  r.summary.push_back("fixture: " + fx.name);
  for (const auto& n : names) {
    auto e = vertex_category(s, n);
    auto u = check_universal_property(*fx.diagram, l, e, o.max_vertices);
    if (u.capped) r.caps_hit.push_back("max-vertices: vertex " + n);
    ok = ok && u.holds();
    checks.push_back({{"vertex", n},
                      {"functors", u.functors},
                      {"cones", u.cones},
                      {"transformations", u.transformations},
                      {"cone_morphisms", u.cone_morphisms},
                      {"objects_bijective", u.objects_bijective},
                      {"arrows_bijective", u.arrows_bijective},
                      {"capped", u.capped},
                      {"holds", u.holds()}});
    r.summary.push_back("vertex " + n + ": " + std::to_string(u.functors) + " functor(s), " +
                        std::to_string(u.cones) + " cone(s), " +
                        (u.capped ? "capped" : (u.holds() ? "bijective" : "NOT bijective")));
  }
  r.result = {{"fixture", fx.name}, {"vertices", checks}};
  r.positive = ok;
}

// --- commute ----------------------------------------------------------------

void cmd_commute(const Options& o, const Source& s, Report& r) {
  auto fx = need_diagram(s, o);
  ComparisonInstance c;
  ojson inputs = ojson::object();
  if (o.kind == "cotensor") {
    c = diamond_cotensor(fx.diagram, vertex_category(s, o.weight), {{o.strict_f2}, {}, true});
    inputs = {{"diagram", fx.name}, {"weight", o.weight}};
  } else if (o.kind == "product") {
    auto g = o.second.empty() ? fx.diagram : s.workspace.diagram(o.second);
    c = diamond_product(fx.diagram, g, {{o.strict_f2}, {}, true});
    inputs = {{"first", fx.name}, {"second", o.second.empty() ? fx.name : o.second}};
  } else if (o.kind == "pseudoeq") {
    if (!o.alpha.empty() || !o.beta.empty()) {
      if (o.alpha.empty() || o.beta.empty()) throw InputError("--alpha and --beta go together");
      c = diamond_pseudoeq(s.workspace.transformation(o.alpha), s.workspace.transformation(o.beta),
                           {{o.strict_f2}, {}, true});
      inputs = {{"alpha", o.alpha}, {"beta", o.beta}};
    } else {
      auto in = o.inputs == "identity" ? pseudoeq_identity(fx.diagram)
                                       : pseudoeq_inclusions(fx.diagram);
      c = diamond_pseudoeq(in.alpha, in.beta, {{o.strict_f2}, {}, true});
      inputs = {{"diagram", fx.name}, {"inputs", o.inputs}};
    }
  } else {
    throw InputError("--kind must be cotensor, product or pseudoeq");
  }
  ojson violations = ojson::array();
  for (const auto& v : c.violations) violations.push_back(v.kind + ": " + v.detail);
  truncate(violations, o.max_witness, "violations", r);
  ojson img = ojson::object();
  for (int x = 0; x < c.lhs->num_objects(); ++x)
    img[c.lhs->object_name(x)] = c.diamond.objects.empty() || c.diamond.obj(x) < 0
                                     ? ojson(nullptr)
                                     : ojson(c.rhs->object_name(c.diamond.obj(x)));
  r.result = {{"kind", to_string(c.kind)},
              {"inputs", inputs},
              {"lhs", {{"objects", c.lhs->num_objects()}, {"arrows", c.lhs->num_arrows()}}},
              {"rhs", {{"objects", c.rhs->num_objects()}, {"arrows", c.rhs->num_arrows()}}},
              {"diamond_objects", img},
              {"report", report_json(c.report)},
              {"objects_bijective", c.objects_bijective},
              {"arrows_bijective", c.arrows_bijective},
              {"members_checked", c.members_checked},
              {"surjectivity_witnesses", c.surjectivity_witnesses},
              {"fullness_witnesses", c.fullness_witnesses},
              {"violations", violations}};
  r.positive = c.holds();
  r.summary.push_back("kind: " + to_string(c.kind) + " on " + fx.name);
  r.summary.push_back("lhs: " + std::to_string(c.lhs->num_objects()) + " object(s), " +
                      std::to_string(c.lhs->num_arrows()) + " arrow(s)");
  r.summary.push_back("rhs: " + std::to_string(c.rhs->num_objects()) + " object(s), " +
                      std::to_string(c.rhs->num_arrows()) + " arrow(s)");
  r.summary.push_back(std::string("essentially surjective: ") +
                      (c.report.essentially_surjective ? "yes" : "no") +
                      ", full: " + (c.report.full ? "yes" : "no") +
                      ", faithful: " + (c.report.faithful ? "yes" : "no"));
  r.summary.push_back(std::string("bijective on objects: ") + (c.objects_bijective ? "yes" : "no"));
}

// --- lemma-run --------------------------------------------------------------

struct NamedInstance {
  std::string name;
  LemmaInstance inst;
};

std::vector<std::vector<Premorphism>> classes_with_two(const HomotopyQuotient& q) {
  std::vector<std::vector<Premorphism>> out;
  for (const auto& h : q.homs)
    for (std::size_t c = 0; c < h.reps.size(); ++c) {
      std::vector<Premorphism> members;
      for (std::size_t i = 0; i < h.members.size(); ++i)
        if (h.class_of[i] == static_cast<int>(c)) members.push_back(h.members[i]);
      if (members.size() >= 2) out.push_back(members);
    }
  return out;
}

std::vector<NamedInstance> builtin_instances(const Fixture& fx, const std::string& which) {
  const auto& f = *fx.diagram;
  auto q = homotopy_quotient(f);
  auto classes = classes_with_two(q);
  std::vector<NamedInstance> out;
  auto want = [&](const char* n) { return which == "all" || which == n; };

  if (want("transitivity")) {
    for (const auto& cls : classes) {
      bool done = false;
      for (std::size_t i = 0; i < cls.size() && !done; ++i) {
        const auto& x1 = cls[i];
        const auto& x2 = cls[(i + 1) % cls.size()];
        const auto& x3 = cls[(i + 2) % cls.size()];
        if (!is_homotopic(f, x1, x2) || !is_homotopic(f, x2, x3)) continue;
        out.push_back({"transitivity",
                       {{fx.diagram},
                        {{0, x1}, {0, x2}, {0, x3}},
                        {LemmaTerm::leaf(0), LemmaTerm::leaf(1), LemmaTerm::leaf(2)},
                        {{0, 1, std::nullopt}, {1, 2, std::nullopt}}}});
        done = true;
      }
      if (done) break;
    }
  }
  if (want("composition")) {
    // First composable pair of homs with a non-identity member each.
    bool done = false;
    for (const auto& h1 : q.homs) {
      if (done) break;
      for (const auto& h2 : q.homs) {
        if (h1.to != h2.from || h1.members.empty() || h2.members.empty() || h1.from == h1.to)
          continue;
        const auto& x = h1.members.front();
        const auto& z = h2.members.back();
        out.push_back({"composition",
                       {{fx.diagram},
                        {{0, x}, {0, z}},
                        {LemmaTerm::leaf(0), LemmaTerm::leaf(1), LemmaTerm::compose(1, 0)},
                        {}}});
        done = true;
        break;
      }
    }
  }
  if (want("horizontal")) {
    for (const auto& cls : classes) {
      const auto& x1 = cls[0];
      const auto& x2 = cls[1];
      if (!is_homotopic(f, x1, x2)) continue;
      const auto& h2 = q.hom(x1.target, x1.target);
      Premorphism e = identity_premorphism(f, x1.target);
      if (!h2.members.empty()) e = h2.members.back();
      out.push_back({"horizontal",
                     {{fx.diagram},
                      {{0, x1}, {0, x2}, {0, e}},
                      {LemmaTerm::leaf(0), LemmaTerm::leaf(1), LemmaTerm::leaf(2),
                       LemmaTerm::compose(2, 0), LemmaTerm::compose(2, 1)},
                      {{0, 1, std::nullopt}}}});
      break;
    }
  }
  return out;
}

Premorphism parse_premorphism(const ojson& j, const std::vector<DiagramRef>& fs, int& functor) {
  functor = j.value("functor", 0);
  if (functor < 0 || functor >= static_cast<int>(fs.size()))
    throw InputError("premorphism functor out of range");
  const auto& f = *fs[functor];
  const auto& a = *f.index;
  auto obj = [&](const ojson& o) {
    if (!o.is_array() || o.size() != 2) throw InputError("object must be [index, object]");
    int A = a.object_index(o[0].get<std::string>());
    return ColimObject{A, f.at(A).object_index(o[1].get<std::string>())};
  };
  Premorphism p{obj(j.at("source")), obj(j.at("target")),
                a.cell1_index(j.at("u").get<std::string>()),
                a.cell1_index(j.at("v").get<std::string>()), -1};
  p.xi = f.at(a.tgt(p.u)).arrow_index(j.at("xi").get<std::string>());
  return p;
}

NamedInstance parse_instance(const Source& s, const Fixture& fx, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  ojson j;
  try {
    j = ojson::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  try {
    NamedInstance out{j.value("name", std::string("instance")), {}};
    auto& inst = out.inst;
    if (j.contains("diagrams")) {
      for (const auto& d : j["diagrams"]) inst.functors.push_back(s.workspace.diagram(d.get<std::string>()));
    } else {
      inst.functors.push_back(fx.diagram);
    }
    for (const auto& p : j.at("premorphisms")) {
      int functor = 0;
      auto pm = parse_premorphism(p, inst.functors, functor);
      inst.premorphisms.push_back({functor, pm});
    }
    if (j.contains("terms")) {
      for (const auto& t : j["terms"]) {
        if (t.contains("leaf")) {
          inst.terms.push_back(LemmaTerm::leaf(t["leaf"].get<int>()));
        } else {
          const auto& c = t.at("compose");
          std::optional<GammaChoice> g;
          if (t.contains("gamma")) {
            const auto& a = *inst.functors[0]->index;
            g = GammaChoice{a.cell1_index(t["gamma"].at("r").get<std::string>()),
                            a.cell1_index(t["gamma"].at("s").get<std::string>()),
                            a.cell2_index(t["gamma"].at("gamma").get<std::string>())};
          }
          inst.terms.push_back(LemmaTerm::compose(c.at(0).get<int>(), c.at(1).get<int>(), g));
        }
      }
    } else {
      for (std::size_t i = 0; i < inst.premorphisms.size(); ++i)
        inst.terms.push_back(LemmaTerm::leaf(static_cast<int>(i)));
    }
    if (j.contains("equations"))
      for (const auto& e : j["equations"])
        inst.equations.push_back({e.at(0).get<int>(), e.at(1).get<int>(), std::nullopt});
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

void cmd_lemma(const Options& o, const Source& s, Report& r) {
  auto fx = need_diagram(s, o);
  std::vector<NamedInstance> runs;
  if (!o.instance.empty()) {
    runs.push_back(parse_instance(s, fx, o.instance));
  } else {
    static const std::vector<std::string> cases = {"all", "transitivity", "composition",
                                                   "horizontal", "shared"};
    if (std::find(cases.begin(), cases.end(), o.lemma_case) == cases.end())
      throw InputError("unknown --case '" + o.lemma_case + "'");
    runs = builtin_instances(fx, o.lemma_case);
  }
  ojson results = ojson::array();
  bool ok = true;
  r.summary.push_back("fixture: " + fx.name);
  for (const auto& run : runs) {
    auto out = lemma_engine(run.inst);
    auto vs = check_lemma_output(run.inst, out);
    ok = ok && vs.empty();
    const auto& a = *fx.index;
    const auto& d = *out.delta.free.category;
    ojson tilde = ojson::array(), pre = ojson::array(), viol = ojson::array();
    for (std::size_t i = 0; i < run.inst.premorphisms.size(); ++i) {
      const auto& f = *run.inst.functors[run.inst.premorphisms[i].functor];
      pre.push_back(premorphism_json(run.inst.premorphisms[i].p, f));
      tilde.push_back(premorphism_json(out.tilde[i], f));
    }
    for (const auto& v : vs) viol.push_back(v.kind + ": " + v.detail);
    results.push_back({{"case", run.name},
                       {"premorphisms", pre},
                       {"delta", {{"objects", d.num_objects()},
                                  {"cells1", d.num_cells1()},
                                  {"cells2", d.num_cells2()}}},
                       {"vertex", a.object_name(out.e)},
                       {"tilde", tilde},
                       {"violations", viol}});
    r.summary.push_back(run.name + ": vertex " + a.object_name(out.e) + ", " +
                        (vs.empty() ? "all checks hold" : std::to_string(vs.size()) + " violation(s)"));
  }
  if ((o.lemma_case == "all" || o.lemma_case == "shared") && o.instance.empty()) {
    // One witness for η ∼ ξ in F and for the doubled pair in F × F.
    const auto& f = *fx.diagram;
    auto classes = classes_with_two(homotopy_quotient(f));
    for (const auto& cls : classes) {
      if (!is_homotopic(f, cls[1], cls[0])) continue;
      auto f2 = std::make_shared<const CatDiagram>(product_diagram(f, f));
      const auto& a = *fx.index;
      auto pair_of = [&](const Premorphism& p) {
        auto pc = product_category(f.values[a.tgt(p.u)], f.values[a.tgt(p.u)]);
        auto ps = product_category(f.values[p.source.index], f.values[p.source.index]);
        auto pt = product_category(f.values[p.target.index], f.values[p.target.index]);
        return Premorphism{{p.source.index, ps.object_of(p.source.x, p.source.x)},
                           {p.target.index, pt.object_of(p.target.x, p.target.x)},
                           p.u, p.v, pc.arrow_of(p.xi, p.xi)};
      };
      auto sh = shared_homotopy({fx.diagram, f2}, {cls[1], pair_of(cls[1])},
                                {cls[0], pair_of(cls[0])});
      bool good = check_homotopy(f, cls[1], cls[0], sh.witness).empty() &&
                  check_homotopy(*f2, pair_of(cls[1]), pair_of(cls[0]), sh.witness).empty();
      ok = ok && good;
      const auto& w = sh.witness;
      results.push_back({{"case", "shared"},
                         {"premorphisms", {premorphism_json(cls[1], f), premorphism_json(cls[0], f)}},
                         {"vertex", a.object_name(w.d)},
                         {"witness", {{"w_a", a.cell1_name(w.w_a)}, {"w_b", a.cell1_name(w.w_b)},
                                      {"w1", a.cell1_name(w.w1)}, {"w2", a.cell1_name(w.w2)},
                                      {"alpha1", a.cell2_name(w.alpha1)},
                                      {"alpha2", a.cell2_name(w.alpha2)},
                                      {"beta1", a.cell2_name(w.beta1)},
                                      {"beta2", a.cell2_name(w.beta2)}}},
                         {"holds_in_both", good}});
      r.summary.push_back(std::string("shared: vertex ") + a.object_name(w.d) + ", " +
                          (good ? "one witness serves both functors" : "FAILED"));
      break;
    }
  }
  if (results.empty()) r.summary.push_back("no applicable instance");
  r.result = {{"fixture", fx.name}, {"runs", results}};
  r.positive = ok;
}

// --- output -----------------------------------------------------------------

void emit(const Report& r, const Options& o, const std::string& digest, double millis,
          std::ostream& out) {
  ojson caps = r.caps_hit;
  ojson j = {{"format", kReportFormat},
             {"command", r.command},
             {"input_digest", "sha256:" + digest},
             {"outcome", r.positive ? "positive" : "negative"},
             {"caps_hit", caps},
             {"result", r.result}};
  if (o.timing) j["timing_ms"] = millis;
  std::ostringstream text;
  text << kReportFormat << "\n";
  text << "command: " << r.command << "\n";
  text << "input: sha256:" << digest << "\n";
  for (const auto& line : r.summary) text << line << "\n";
  for (const auto& c : r.caps_hit) text << "cap hit: " << c << "\n";
  if (o.timing) text << "time: " << millis << " ms\n";
  text << "outcome: " << (r.positive ? "positive" : "negative") << "\n";
  out << text.str();
  if (!o.out_dir.empty()) {
    fs::create_directories(o.out_dir);
    std::ofstream jf(fs::path(o.out_dir) / (r.command + ".json"), std::ios::binary);
    jf << j.dump(2) << "\n";
    std::ofstream tf(fs::path(o.out_dir) / (r.command + ".txt"), std::ios::binary);
    tf << text.str();
    if (!jf || !tf) throw InputError("cannot write to '" + o.out_dir + "'");
  }
}

void common_options(CLI::App* c, Options& o, bool fixture) {
  c->add_option("--workspace,-w", o.workspace, "Workspace JSON file");
  if (fixture) c->add_option("--fixture,-f", o.fixture, "Fixture name")->required();
  c->add_option("--out,-o", o.out_dir, "Directory for the JSON and text artifacts");
  c->add_flag("--timing", o.timing, "Include wall-clock time in the report");
  c->add_option("--max-vertices", o.max_vertices, "Cap on enumerated functors, cones and vertices")
      ->check(CLI::PositiveNumber);
  c->add_option("--max-witness-size", o.max_witness, "Cap on witnesses listed in a report")
      ->check(CLI::PositiveNumber);
  c->add_flag("--strict-f2", o.strict_f2, "Require both 1-cells of sigmaF2 in Sigma");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Sigma-filtered sigma-colimits of finite diagrams of categories", "sigmacolim"};
  app.require_subcommand(1);
  Options o;

  auto* validate = app.add_subcommand("validate", "Load and validate a workspace");
  common_options(validate, o, false);
  auto* filtered = app.add_subcommand("check-filtered", "Decide sigma-filteredness of an index");
  common_options(filtered, o, true);
  auto* cone = app.add_subcommand("find-cone", "Search a sigma-cone over a full sub-2-category");
  common_options(cone, o, true);
  cone->add_option("--objects", o.objects, "Objects of the sub-2-category (default all)")
      ->delimiter(',');
  cone->add_flag("--all", o.all_cones, "Enumerate cones up to --max-vertices");
  auto* colim = app.add_subcommand("colimit", "Build the sigma-colimit of a fixture");
  common_options(colim, o, true);
  auto* universal = app.add_subcommand("universal-check", "Check the universal property");
  common_options(universal, o, true);
  universal->add_option("--vertex", o.vertices,
                        "Vertex categories: terminal, walking_arrow, walking_iso, discrete2, "
                        "chain3, empty or a workspace category")
      ->delimiter(',');
  auto* commute = app.add_subcommand("commute", "Compare a colimit of limits with a limit of colimits");
  common_options(commute, o, true);
  commute->add_option("--kind", o.kind, "cotensor, product or pseudoeq")
      ->required()
      ->check(CLI::IsMember({"cotensor", "product", "pseudoeq"}));
  commute->add_option("--weight", o.weight, "Weight category for cotensors");
  commute->add_option("--second", o.second, "Second diagram for products (default the same)");
  commute->add_option("--alpha", o.alpha, "First transformation for pseudo-equalizers");
  commute->add_option("--beta", o.beta, "Second transformation for pseudo-equalizers");
  commute->add_option("--inputs", o.inputs, "Built-in pseudo-equalizer inputs")
      ->check(CLI::IsMember({"inclusions", "identity"}));
  auto* lemma = app.add_subcommand("lemma-run", "Run the lifting lemma");
  common_options(lemma, o, true);
  lemma->add_option("--case", o.lemma_case,
                    "all, transitivity, composition, horizontal or shared");
  lemma->add_option("--instance", o.instance, "Lemma instance JSON file");
  auto* exp = app.add_subcommand("export", "Write the workspace in normalized form");
  exp->add_option("--workspace,-w", o.workspace, "Workspace JSON file (default bundled)");
  std::string export_path;
  exp->add_option("--out,-o", export_path, "Output file (default standard output)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kPositive;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPositive;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kUsage;
  }

  auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  auto start = std::chrono::steady_clock::now();
  try {
    if (command == "export") {
      auto w = o.workspace.empty() ? bundled_workspace() : load_workspace(o.workspace);
      auto text = serialize(w);
      if (export_path.empty()) {
        out << text;
      } else {
        std::ofstream f(export_path, std::ios::binary);
        f << text;
        if (!f) throw InputError("cannot write '" + export_path + "'");
      }
      return kPositive;
    }

    Report r;
    r.command = command;
    std::string digest;
    if (command == "validate") {
      std::string material = canonical_args(o, command);
      if (!o.workspace.empty()) {
        std::ifstream in(o.workspace, std::ios::binary);
        if (!in) throw InputError("cannot read '" + o.workspace + "'");
        std::stringstream b;
        b << in.rdbuf();
        material += "\n" + b.str();
      } else {
        for (const auto& p : fixture_files()) {
          std::ifstream in(p, std::ios::binary);
          std::stringstream b;
          b << in.rdbuf();
          material += "\n" + b.str();
        }
      }
      digest = sha256_hex(material);
      cmd_validate(o, r);
    } else {
      auto src = resolve(o);
      std::string material = canonical_args(o, command) + "\n" + serialize(src.workspace);
      if (!o.instance.empty()) {
        std::ifstream in(o.instance, std::ios::binary);
        std::stringstream b;
        b << in.rdbuf();
        material += "\n" + b.str();
      }
      digest = sha256_hex(material);
      try {
        if (command == "check-filtered") cmd_check_filtered(o, src, r);
        else if (command == "find-cone") cmd_find_cone(o, src, r);
        else if (command == "colimit") cmd_colimit(o, src, r);
        else if (command == "universal-check") cmd_universal(o, src, r);
        else if (command == "commute") cmd_commute(o, src, r);
        else if (command == "lemma-run") cmd_lemma(o, src, r);
      } catch (const NotSigmaFiltered& e) {
        r.positive = false;
        r.result = {{"fixture", o.fixture}, {"error", "not sigma-filtered"}, {"detail", e.what()}};
        r.summary.push_back("fixture: " + o.fixture);
        r.summary.push_back(std::string("rejected: ") + e.what());
      }
    }
    double millis = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    emit(r, o, digest, millis, out);
    return r.positive ? kPositive : kNegative;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace sigmacolim
