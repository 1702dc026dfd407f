// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "sigmacolim/cli.hpp"
#include "sigmacolim/colimit.hpp"
#include "sigmacolim/exactness.hpp"
#include "sigmacolim/filtered.hpp"
#include "sigmacolim/fixtures.hpp"
#include "sigmacolim/lemma.hpp"
#include "support.hpp"

using namespace sigmacolim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

std::vector<Fixture> filtered_fixtures() {
  std::vector<Fixture> out;
  for (auto& fx : bundled_fixtures())
    if (fx.filtered && fx.diagram) out.push_back(fx);
  return out;
}

bool has(const Violations& v, const std::string& kind, const std::string& detail = "") {
  for (const auto& x : v)
    if (x.kind == kind && (detail.empty() || x.detail == detail)) return true;
  return false;
}

CatRef parallel_arrows() {
  return FinCategory::Builder{}
      .add_object("0")
      .add_object("1")
      .add_arrow("f", "0", "1")
      .add_arrow("g", "0", "1")
      .build_shared();
}

// --- 1 ----------------------------------------------------------------------

Outcome axioms() {
  Outcome o;
  int positives = 0;
  for (const auto& fx : bundled_fixtures()) {
    o.require(validate_2category(*fx.index).empty(), fx.name + ": index invalid");
    o.require(validate_sigma(fx.sigma).empty(), fx.name + ": sigma invalid");
    if (!fx.diagram) continue;
    o.require(validate_diagram(*fx.diagram).empty(), fx.name + ": diagram invalid");
    if (!fx.filtered) continue;
    auto l = build_colimit(*fx.diagram);
    o.require(validate_cat_cone(*fx.diagram, l.lambda).empty(), fx.name + ": lambda cone");
    auto id = identity_cone_morphism(l.lambda);
    o.require(validate_cat_cone_morphism(*fx.diagram, l.lambda, l.lambda, id).empty(),
              fx.name + ": identity cone morphism");
    ++positives;
  }

  int negatives = 0;
  auto negative = [&](bool pinpointed, const std::string& what) {
    o.require(pinpointed, "negative fixture not pinpointed: " + what);
    if (pinpointed) ++negatives;
  };

  {  // interchange
    Fin2Category::Builder c;
    c.add_object("0").add_object("1").add_object("2");
    c.add_cell1("f", "0", "1").add_cell1("h", "1", "2").add_cell1("hf", "0", "2");
    c.set_hcompose1("h", "f", "hf");
    c.add_cell2("al", "f", "f").add_cell2("be", "f", "f").add_cell2("ga", "hf", "hf");
    for (auto x : {"al", "be"})
      for (auto y : {"al", "be"}) c.set_vcompose(x, y, x);
    c.set_vcompose("ga", "ga", "ga");
    c.set_hcompose2("1_h", "al", "1_hf").set_hcompose2("1_h", "be", "ga");
    negative(has(validate_2category(c.build()), "InterchangeViolation"), "interchange");
  }
  {  // Σ without an identity
    auto fx = bundled_fixture("walking_arrow");
    auto s = sigma_from_names(fx.index, {"1_0", "u"});
    negative(has(validate_sigma(s), "SigmaMissingIdentity"), "sigma identity");
  }
  {  // LC1 on an involution
    Fin2Category::Builder b;
    b.add_object("0").add_object("1").add_cell1("f", "0", "1");
    b.add_cell2("tau", "f", "f");
    b.set_vcompose("tau", "tau", "1_f");
    auto a = b.build_shared();
    auto s = sigma_all(a);
    TwoComputad k;
    k.objects = {"x", "y", "z"};
    k.arrows = {{"a", "x", "y", false}, {"b", "y", "z", false}};
    auto d = diagram_from_computad(k, a, {{"x", 0}, {"y", 1}, {"z", 1}},
                                   {{"a", a->cell1_index("f")}, {"b", a->cell1_index("1_1")}});
    auto r = sigma_cone_search(d.functor, s);
    bool ok = r.found();
    if (ok) {
      auto c = r.first();
      int ba = d.free.category->cell1_index("b*a");
      c.cells[ba] = c.cells[ba] == a->cell2_index("tau") ? a->cell2_index("1_f")
                                                         : a->cell2_index("tau");
      auto v = validate_cone(d.functor, s, c);
      ok = v.size() == 1 && has(v, "LC1", "(b, a)");
    }
    negative(ok, "LC1");
  }
  {  // LC2 on the lax fork
    auto fx = bundled_fixture("lax_fork");
    const auto& f = *fx.diagram;
    int t = fx.index->cell1_index("t");
    bool ok = false;
    for (const auto& c : enumerate_cat_cones(f, parallel_arrows()).items) {
      for (const auto& alt :
           enumerate_nat_transfs(c.cells[t].source, c.cells[t].target).items) {
        if (alt == c.cells[t]) continue;
        auto d = c;
        d.cells[t] = alt;
        auto v = validate_cat_cone(f, d);
        ok = v.size() == 1 && has(v, "LC2", "tau");
        break;
      }
      if (ok) break;
    }
    negative(ok, "LC2");
  }
  {  // LCM along u
    auto fx = bundled_fixture("walking_arrow");
    const auto& f = *fx.diagram;
    auto cones = enumerate_cat_cones(f, parallel_arrows()).items;
    bool ok = false;
    for (const auto& s : cones)
      for (const auto& t : cones)
        for (const auto& p0 : enumerate_nat_transfs(s.legs[0], t.legs[0]).items)
          for (const auto& p1 : enumerate_nat_transfs(s.legs[1], t.legs[1]).items) {
            auto v = validate_cat_cone_morphism(f, s, t, {{p0, p1}});
            if (!v.empty()) ok = ok || (v.size() == 1 && has(v, "LCM", "u"));
          }
    negative(ok, "LCM");
  }
  {  // non-invertible structural cell on a Σ 1-cell
    auto fx = bundled_fixture("collapse");
    const auto& a = *fx.index;
    TwoComputad k;
    k.objects = {"x", "y"};
    k.arrows = {{"a", "x", "y", true}};
    int f = a.cell1_index("f");
    auto d = diagram_from_computad(k, fx.index, {{"x", 0}, {"y", 1}}, {{"a", f}});
    SigmaCone c{1, {f, a.id1(1)}, {}};
    c.cells.assign(d.free.category->num_cells1(), -1);
    c.cells[d.free.category->id1(0)] = a.id2(f);
    c.cells[d.free.category->id1(1)] = a.id2(a.id1(1));
    c.cells[d.free.arrow_of.at("a")] = a.cell2_index("al");
    auto v = validate_cone(d.functor, fx.sigma, c);
    negative(v.size() == 1 && has(v, "ConeNotInvertible"), "invertibility");
  }
  {  // missing composite in a value category
    auto c = FinCategory::Builder{}
                 .add_object("a")
                 .add_object("b")
                 .add_object("c")
                 .add_arrow("f", "a", "b")
                 .add_arrow("g", "b", "c")
                 .add_arrow("h", "a", "c")
                 .build();
    auto v = validate_category(c);
    negative(v.size() == 1 && has(v, "MissingComposite", "(g, f)"), "composite");
  }
  o.require(negatives >= 5, "too few negative fixtures");
  if (o.pass)
    o.detail = std::to_string(positives) + " filtered fixtures with cones, " +
               std::to_string(negatives) + " negative fixtures pinpointed";
  return o;
}

// --- 2 ----------------------------------------------------------------------

Outcome filteredness() {
  Outcome o;
  const std::vector<std::pair<std::string, std::string>> expected = {
      {"terminal", ""},         {"walking_arrow", ""},    {"chain3", ""},
      {"empty", "nonempty"},    {"discrete2", "sigmaF0"}, {"parallel_pair", "sigmaF1"},
      {"cell_pair", "sigmaF2"}};
  for (const auto& [name, axiom] : expected) {
    auto fx = bundled_fixture(name);
    auto r = is_sigma_filtered(*fx.index, fx.sigma);
    o.require(r.holds() == axiom.empty(), name + ": wrong verdict");
    o.require(r.failing_axiom == axiom, name + ": named " + r.failing_axiom);
  }
  for (const auto* name : {"walking_arrow", "chain3"}) {
    auto fx = bundled_fixture(name);
    o.require(fx.sigma == sigma_all(fx.index), std::string(name) + ": sigma is not all");
  }
  if (o.pass) o.detail = "3 positive, 4 negative with the expected axiom";
  return o;
}

// --- 3 ----------------------------------------------------------------------

TwoComputad cospan() {
  TwoComputad k;
  k.objects = {"B", "X", "Y"};
  k.arrows = {{"p", "B", "X", false}, {"q", "B", "Y", true}};
  return k;
}

TwoComputad zigzag() {
  TwoComputad k;
  k.objects = {"B", "C", "C1", "C2", "C3"};
  k.arrows = {{"v1", "B", "C1", false},
              {"u2", "B", "C2", true},
              {"v2", "C", "C2", false},
              {"u3", "C", "C3", true}};
  return k;
}

Outcome cone_existence() {
  Outcome o;
  std::mt19937 rng(20261016);
  std::size_t total = 0, not_found = 0;
  for (const auto& fx : filtered_fixtures()) {
    std::vector<ComputadDiagram> battery;
    int cospans = 0, zigzags = 0;
    for (int i = 0; i < 4; ++i) {
      if (auto d = testsupport::random_diagram_into(rng, cospan(), fx.index)) {
        battery.push_back(*d);
        ++cospans;
      }
      if (auto d = testsupport::random_diagram_into(rng, zigzag(), fx.index)) {
        battery.push_back(*d);
        ++zigzags;
      }
    }
    while (battery.size() < 24) {
      auto k = testsupport::random_computad(rng);
      try {
        if (auto d = testsupport::random_diagram_into(rng, k, fx.index)) battery.push_back(*d);
      } catch (const InputError&) {
        // a 2-loop in the random computad
      }
    }
    o.require(cospans > 0 && zigzags > 0, fx.name + ": cospan or zigzag missing");
    for (const auto& d : battery) {
      auto r = sigma_cone_search(d.functor, fx.sigma);
      ++total;
      if (!r.found()) ++not_found;
      else o.require(validate_cone(d.functor, fx.sigma, r.first()).empty(),
                     fx.name + ": invalid cone");
    }
  }
  o.require(not_found == 0, std::to_string(not_found) + " NotFound");
  if (o.pass) o.detail = std::to_string(total) + " diagrams, 0 NotFound";
  return o;
}

// --- 4 ----------------------------------------------------------------------

Outcome closure() {
  Outcome o;
  std::size_t homs = 0;
  for (const auto& fx : filtered_fixtures()) {
    auto q = homotopy_quotient(*fx.diagram);
    o.require(q.closure_pairs == 0, fx.name + ": closure added pairs");
    homs += q.homs.size();
  }
  std::mt19937 rng(4);
  for (int t = 0; t < 10; ++t) {
    auto d = testsupport::random_chain_diagram(rng, 2 + static_cast<int>(rng() % 2));
    o.require(homotopy_quotient(*d).closure_pairs == 0, "random chain: closure added pairs");
  }
  if (o.pass) o.detail = std::to_string(homs) + " hom-sets plus 10 random chains, 0 added";
  return o;
}

// --- 5 ----------------------------------------------------------------------

Outcome well_definedness() {
  Outcome o;
  std::size_t pairs = 0, choices = 0;
  for (const auto& fx : filtered_fixtures()) {
    const auto& f = *fx.diagram;
    auto l = build_colimit(f);
    for (const auto& h1 : l.quotient.homs)
      for (const auto& h2 : l.quotient.homs) {
        if (h1.to != h2.from) continue;
        for (const auto& xi : h1.members)
          for (const auto& zeta : h2.members) {
            auto gs = gamma_choices(f, zeta, xi);
            if (gs.size() < 2) continue;
            std::set<int> classes;
            for (const auto& g : gs) classes.insert(l.class_of(compose_premorphisms(f, zeta, xi, g)));
            o.require(classes.size() == 1, fx.name + ": composite depends on gamma");
            ++pairs;
            choices += gs.size();
          }
      }
  }
  o.require(pairs >= 50, "only " + std::to_string(pairs) + " pairs with two choices");
  if (o.pass)
    o.detail = std::to_string(pairs) + " pairs, " + std::to_string(choices) + " choices";
  return o;
}

// --- 6 ----------------------------------------------------------------------

Outcome colimits() {
  Outcome o;
  {
    auto fx = bundled_fixture("terminal");
    auto l = build_colimit(*fx.diagram);
    const auto& c = fx.diagram->at(0);
    const auto& leg = l.lambda.legs[0];
    bool same = is_isomorphism_of_categories(leg) &&
                l.category->num_objects() == c.num_objects() &&
                l.category->num_arrows() == c.num_arrows();
    for (const auto& [g, h, gh] : c.composition_triples())
      same = same && l.category->compose(leg.arr(g), leg.arr(h)) == leg.arr(gh);
    for (int x = 0; x < c.num_objects(); ++x)
      same = same && l.category->identity(leg.obj(x)) == leg.arr(c.identity(x));
    o.require(same, "terminal index: table mismatch");
  }
  {
    auto fx = bundled_fixture("walking_arrow");
    auto l = build_colimit(*fx.diagram);
    o.require(equivalence_check(l.lambda.legs[1]).is_equivalence(),
              "walking arrow: not equivalent to F(1)");
  }
  std::size_t checked = 0, skipped = 0;
  std::vector<CatRef> vertices = {cats::terminal(), cats::walking_arrow(), cats::walking_iso(),
                                  cats::discrete(2), cats::empty()};
  for (const auto& fx : filtered_fixtures()) {
    auto l = build_colimit(*fx.diagram);
    auto vs = vertices;
    for (const auto& v : fx.diagram->values) vs.push_back(v);
    for (const auto& e : vs) {
      auto r = check_universal_property(*fx.diagram, l, e, 500);
      if (r.capped) {
        ++skipped;
        continue;
      }
      o.require(r.holds(), fx.name + ": universal property fails");
      ++checked;
    }
  }
  if (o.pass)
    o.detail = "tables match, T2 equivalent, " + std::to_string(checked) +
               " universal checks exact (" + std::to_string(skipped) + " over 500 skipped)";
  return o;
}

// --- 7 ----------------------------------------------------------------------

std::vector<std::vector<Premorphism>> classes_with_two(const CatDiagram& f) {
  std::vector<std::vector<Premorphism>> out;
  auto q = homotopy_quotient(f);
  for (const auto& h : q.homs)
    for (std::size_t c = 0; c < h.reps.size(); ++c) {
      std::vector<Premorphism> members;
      for (std::size_t i = 0; i < h.members.size(); ++i)
        if (h.class_of[i] == static_cast<int>(c)) members.push_back(h.members[i]);
      if (members.size() >= 2) out.push_back(members);
    }
  return out;
}

void check_instance(Outcome& o, const std::string& label, const LemmaInstance& inst) {
  auto out = lemma_engine(inst);
  auto v = check_lemma_output(inst, out);
  o.require(v.empty(), label + ": " + (v.empty() ? "" : v[0].kind + " " + v[0].detail));
  for (const auto& eq : inst.equations)
    o.require(evaluate_in_vertex(inst, out, eq.lhs) == evaluate_in_vertex(inst, out, eq.rhs),
              label + ": equation fails in F(E)");
}

Outcome lemma() {
  Outcome o;
  int transitivity = 0, horizontal = 0, shared = 0;
  for (const auto& fx : filtered_fixtures()) {
    const auto& f = *fx.diagram;
    for (const auto& cls : classes_with_two(f)) {
      for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
        const auto& x1 = cls[i];
        const auto& x2 = cls[i + 1];
        const auto& x3 = cls[(i + 2) % cls.size()];
        if (!is_homotopic(f, x1, x2) || !is_homotopic(f, x2, x3)) continue;
        check_instance(o, fx.name + " transitivity",
                       {{fx.diagram},
                        {{0, x1}, {0, x2}, {0, x3}},
                        {LemmaTerm::leaf(0), LemmaTerm::leaf(1), LemmaTerm::leaf(2)},
                        {{0, 1, std::nullopt}, {1, 2, std::nullopt}}});
        ++transitivity;
      }
    }
    auto q = homotopy_quotient(f);
    for (const auto& h1 : q.homs)
      for (const auto& h2 : q.homs) {
        if (h1.to != h2.from || h1.members.empty() || h2.members.empty()) continue;
        const auto& x1 = h1.members.front();
        const auto& e1 = h2.members.front();
        Premorphism x2 = x1, e2 = e1;
        for (std::size_t i = 0; i < h1.members.size(); ++i)
          if (h1.class_of[i] == h1.class_of[0]) x2 = h1.members[i];
        for (std::size_t i = 0; i < h2.members.size(); ++i)
          if (h2.class_of[i] == h2.class_of[0]) e2 = h2.members[i];
        check_instance(o, fx.name + " horizontal",
                       {{fx.diagram},
                        {{0, x1}, {0, x2}, {0, e1}, {0, e2}},
                        {LemmaTerm::leaf(0), LemmaTerm::leaf(1), LemmaTerm::leaf(2),
                         LemmaTerm::leaf(3), LemmaTerm::compose(2, 0), LemmaTerm::compose(3, 1)},
                        {{0, 1, std::nullopt}, {2, 3, std::nullopt}, {4, 5, std::nullopt}}});
        ++horizontal;
      }
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
    for (const auto& cls : classes_with_two(f)) {
      const auto& x = cls[0];
      const auto& e = cls[1];
      if (!is_homotopic(f, e, x)) continue;
      auto sh = shared_homotopy({fx.diagram, f2}, {e, pair_of(e)}, {x, pair_of(x)});
      o.require(check_homotopy(f, e, x, sh.witness).empty() &&
                    check_homotopy(*f2, pair_of(e), pair_of(x), sh.witness).empty(),
                fx.name + ": shared witness fails");
      auto v = check_lemma_output(LemmaInstance{{fx.diagram, f2},
                                                {{0, e}, {0, x}, {1, pair_of(e)}, {1, pair_of(x)}},
                                                {LemmaTerm::leaf(0), LemmaTerm::leaf(1),
                                                 LemmaTerm::leaf(2), LemmaTerm::leaf(3)},
                                                {{0, 1, std::nullopt}, {2, 3, std::nullopt}}},
                                  sh.lemma);
      o.require(v.empty(), fx.name + ": shared lemma output");
      ++shared;
    }
  }
  o.require(transitivity > 0 && horizontal > 0 && shared > 0, "an instance family is empty");
  if (o.pass)
    o.detail = std::to_string(transitivity) + " transitivity, " + std::to_string(horizontal) +
               " horizontal, " + std::to_string(shared) + " shared instances";
  return o;
}

// --- 8 ----------------------------------------------------------------------

Outcome exactness() {
  Outcome o;
  int instances = 0;
  bool up_to_equivalence = false;
  auto take = [&](const ComparisonInstance& c, const std::string& label) {
    o.require(c.holds(), label + ": not an equivalence");
    up_to_equivalence = up_to_equivalence || (c.holds() && !c.objects_bijective);
    ++instances;
  };
  const std::vector<std::pair<std::string, CatRef>> weights = {
      {"empty", cats::empty()}, {"one", cats::terminal()}, {"arrow", cats::walking_arrow()}};
  for (const auto& fx : filtered_fixtures()) {
    for (const auto& [name, w] : weights)
      take(diamond_cotensor(fx.diagram, w), fx.name + " cotensor " + name);
    take(diamond_product(fx.diagram, fx.diagram), fx.name + " product");
    take(diamond_empty_product(fx.index, fx.sigma), fx.name + " empty product");
    auto inc = pseudoeq_inclusions(fx.diagram);
    take(diamond_pseudoeq(inc.alpha, inc.beta), fx.name + " pseudoeq inclusions");
    auto id = pseudoeq_identity(fx.diagram);
    take(diamond_pseudoeq(id.alpha, id.beta), fx.name + " pseudoeq identity");
  }
  o.require(up_to_equivalence, "no equivalent-but-not-bijective instance");
  if (o.pass)
    o.detail = std::to_string(instances) + " comparisons all equivalences, some not bijective";
  return o;
}

// --- 9 ----------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands = {
      {"validate"},
      {"check-filtered", "-f", "chain3"},
      {"check-filtered", "-f", "cell_pair"},
      {"find-cone", "-f", "lax_fork", "--all"},
      {"colimit", "-f", "walking_arrow"},
      {"universal-check", "-f", "chain3"},
      {"commute", "-f", "collapse", "--kind", "cotensor"},
      {"commute", "-f", "walking_arrow", "--kind", "product"},
      {"commute", "-f", "walking_arrow", "--kind", "pseudoeq"},
      {"lemma-run", "-f", "chain3"},
  };
  auto root = fs::temp_directory_path() / "sigmacolim_acceptance";
  fs::remove_all(root);
  int files = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string texts[2];
    for (int run = 0; run < 2; ++run) {
      auto args = commands[i];
      auto dir = root / std::to_string(i) / std::to_string(run);
      args.insert(args.end(), {"--out", dir.string()});
      std::ostringstream out, err;
      run_cli(args, out, err);
      texts[run] = out.str();
    }
    o.require(texts[0] == texts[1], commands[i].front() + ": stdout differs");
    for (const auto* ext : {".json", ".txt"}) {
      auto name = commands[i].front() + ext;
      auto a = slurp(root / std::to_string(i) / "0" / name);
      auto b = slurp(root / std::to_string(i) / "1" / name);
      o.require(!a.empty() && a == b, commands[i].front() + ext + " differs");
      ++files;
    }
  }
  fs::remove_all(root);
  if (o.pass) o.detail = std::to_string(files) + " artifact pairs byte-identical";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"axiom suite", axioms},
      {"filteredness", filteredness},
      {"cone existence", cone_existence},
      {"homotopy closure", closure},
      {"composition well-defined", well_definedness},
      {"colimit correctness", colimits},
      {"lifting lemma", lemma},
      {"exactness", exactness},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    if (!o.pass) ++failed;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
