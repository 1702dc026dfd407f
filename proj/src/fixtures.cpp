#include "sigmacolim/fixtures.hpp"

namespace sigmacolim {

namespace {

// a ≅ b → c: i : a → b with inverse j, k : b → c and ki = k∘i.
CatRef arrow_iso() {
  return FinCategory::Builder{}
      .add_object("a")
      .add_object("b")
      .add_object("c")
      .add_arrow("i", "a", "b")
      .add_arrow("j", "b", "a")
      .add_arrow("k", "b", "c")
      .add_arrow("ki", "a", "c")
      .set_compose("j", "i", "1_a")
      .set_compose("i", "j", "1_b")
      .set_compose("k", "i", "ki")
      .set_compose("ki", "j", "k")
      .build_shared();
}

// p → q with arrow s.
CatRef span_pq() {
  return FinCategory::Builder{}
      .add_object("p")
      .add_object("q")
      .add_arrow("s", "p", "q")
      .build_shared();
}

// m → n via e, plus a lone object o.
CatRef arrow_plus_point() {
  return FinCategory::Builder{}
      .add_object("m")
      .add_object("n")
      .add_object("o")
      .add_arrow("e", "m", "n")
      .build_shared();
}

Fixture terminal_fixture() {
  auto a = twocats::point();
  auto s = sigma_all(a);
  auto f = DiagramBuilder(a, s).value("*", arrow_iso()).build_shared();
  return {"terminal", "one-object index; F(*) has an isomorphism a = b and k : b -> c",
          a, s, f, true, ""};
}

Fixture walking_arrow_fixture() {
  auto a = Fin2Category::Builder{}
               .add_object("0")
               .add_object("1")
               .add_cell1("u", "0", "1")
               .build_shared();
  auto s = sigma_all(a);
  auto f = DiagramBuilder(a, s)
               .value("0", span_pq())
               .value("1", arrow_plus_point())
               .on_cell1("u", {{"p", "m"}, {"q", "n"}}, {{"s", "e"}})
               .build_shared();
  return {"walking_arrow", "index 0 -u-> 1 with every 1-cell in Sigma", a, s, f, true, ""};
}

Fixture chain3_fixture() {
  auto a = Fin2Category::Builder{}
               .add_object("0")
               .add_object("1")
               .add_object("2")
               .add_cell1("a01", "0", "1")
               .add_cell1("a12", "1", "2")
               .add_cell1("a02", "0", "2")
               .set_hcompose1("a12", "a01", "a02")
               .build_shared();
  auto s = sigma_all(a);
  auto point = FinCategory::Builder{}.add_object("p").build_shared();
  auto f = DiagramBuilder(a, s)
               .value("0", point)
               .value("1", cats::walking_arrow())
               .value("2", cats::walking_iso())
               .on_cell1("a01", {{"p", "0"}})
               .on_cell1("a12", {{"0", "0"}, {"1", "1"}}, {{"f", "f"}})
               .build_shared();
  return {"chain3", "index 0 -> 1 -> 2 with every 1-cell in Sigma", a, s, f, true, ""};
}

Fixture lax_fork_fixture() {
  auto a = Fin2Category::Builder{}
               .add_object("0")
               .add_object("1")
               .add_cell1("s", "0", "1")
               .add_cell1("t", "0", "1")
               .add_cell2("tau", "t", "s")
               .build_shared();
  auto s = sigma_from_names(a, {"1_0", "1_1", "s"});
  auto point = FinCategory::Builder{}.add_object("p").build_shared();
  auto f = DiagramBuilder(a, s)
               .value("0", point)
               .value("1", cats::walking_arrow())
               .on_cell1("s", {{"p", "1"}})
               .on_cell1("t", {{"p", "0"}})
               .on_cell2("tau", {{"p", "f"}})
               .build_shared();
  return {"lax_fork", "s, t : 0 -> 1 with tau : t => s and only s marked", a, s, f, true, ""};
}

Fixture idempotent_fixture() {
  auto a = Fin2Category::Builder{}
               .add_object("*")
               .add_cell1("e", "*", "*")
               .set_hcompose1("e", "e", "e")
               .add_cell2("eps", "e", "1_*")
               .set_hcompose2("1_e", "eps", "1_e")
               .set_hcompose2("eps", "1_e", "1_e")
               .set_hcompose2("eps", "eps", "eps")
               .build_shared();
  auto s = sigma_identities(a);
  auto c = FinCategory::Builder{}
               .add_object("p")
               .add_object("q")
               .add_arrow("k", "p", "q")
               .build_shared();
  auto f = DiagramBuilder(a, s)
               .value("*", c)
               .on_cell1("e", {{"p", "p"}, {"q", "p"}}, {{"k", "1_p"}})
               .on_cell2("eps", {{"p", "1_p"}, {"q", "k"}})
               .build_shared();
  return {"idempotent", "one object, idempotent e with eps : e => 1, Sigma = identities",
          a, s, f, true, ""};
}

Fixture collapse_fixture() {
  Fin2Category::Builder b;
  b.add_object("0").add_object("1").add_object("2");
  b.add_cell1("f", "0", "1").add_cell1("h", "1", "2").add_cell1("hf", "0", "2");
  b.set_hcompose1("h", "f", "hf");
  b.add_cell2("al", "f", "f").add_cell2("be", "f", "f");
  for (auto x : {"al", "be"})
    for (auto y : {"al", "be"}) b.set_vcompose(x, y, x);
  b.set_hcompose2("1_h", "al", "1_hf").set_hcompose2("1_h", "be", "1_hf");
  auto a = b.build_shared();
  auto s = sigma_all(a);
  auto monoid = FinCategory::Builder{}
                    .add_object("m")
                    .add_arrow("x", "m", "m")
                    .add_arrow("y", "m", "m")
                    .set_compose("x", "x", "x")
                    .set_compose("x", "y", "x")
                    .set_compose("y", "x", "y")
                    .set_compose("y", "y", "y")
                    .build_shared();
  auto point = FinCategory::Builder{}.add_object("p").build_shared();
  auto f = DiagramBuilder(a, s)
               .value("0", point)
               .value("1", monoid)
               .value("2", point)
               .on_cell1("f", {{"p", "m"}})
               .on_cell1("h", {{"m", "p"}}, {{"x", "1_p"}, {"y", "1_p"}})
               .on_cell2("al", {{"p", "x"}})
               .on_cell2("be", {{"p", "y"}})
               .build_shared();
  return {"collapse", "0 -f-> 1 -h-> 2 with two 2-cells on f merged by h", a, s, f, true, ""};
}

Fixture empty_fixture() {
  auto a = twocats::empty();
  return {"empty", "no objects", a, sigma_all(a), nullptr, false, "nonempty"};
}

Fixture discrete2_fixture() {
  auto a = Fin2Category::Builder{}.add_object("0").add_object("1").build_shared();
  return {"discrete2", "two objects, identities only", a, sigma_identities(a), nullptr,
          false, "sigmaF0"};
}

Fixture parallel_pair_fixture() {
  auto a = Fin2Category::Builder{}
               .add_object("0")
               .add_object("1")
               .add_cell1("f", "0", "1")
               .add_cell1("g", "0", "1")
               .build_shared();
  return {"parallel_pair", "f, g : 0 -> 1 with no 2-cells, Sigma = all", a, sigma_all(a),
          nullptr, false, "sigmaF1"};
}

Fixture cell_pair_fixture() {
  Fin2Category::Builder b;
  b.add_object("0").add_object("1").add_cell1("f", "0", "1");
  b.add_cell2("al", "f", "f").add_cell2("be", "f", "f");
  for (auto x : {"al", "be"})
    for (auto y : {"al", "be"}) b.set_vcompose(x, y, x);
  auto a = b.build_shared();
  return {"cell_pair", "al, be : f => f never merged, Sigma = all", a, sigma_all(a),
          nullptr, false, "sigmaF2"};
}

}  // namespace

std::vector<Fixture> bundled_fixtures() {
  return {terminal_fixture(),  walking_arrow_fixture(), chain3_fixture(),
          lax_fork_fixture(),  idempotent_fixture(),    collapse_fixture(),
          empty_fixture(),     discrete2_fixture(),     parallel_pair_fixture(),
          cell_pair_fixture()};
}

Fixture bundled_fixture(const std::string& name) {
  for (auto& f : bundled_fixtures())
    if (f.name == name) return f;
  throw InputError("unknown fixture '" + name + "'");
}

CatDiagram product_diagram(const CatDiagram& f, const CatDiagram& g) {
  const auto& a = *f.index;
  if (f.index.get() != g.index.get() && !(*f.index == *g.index))
    throw InputError("product_diagram: different indices");
  std::vector<ProductCategory> p;
  CatDiagram out{f.index, f.sigma, {}, {}, {}};
  for (int x = 0; x < a.num_objects(); ++x) {
    p.push_back(product_category(f.values[x], g.values[x]));
    out.values.push_back(p.back().category);
  }
  for (int u = 0; u < a.num_cells1(); ++u) {
    const auto& ps = p[a.src(u)];
    const auto& pt = p[a.tgt(u)];
    Functor h{ps.category, pt.category, {}, {}};
    for (int o = 0; o < ps.category->num_objects(); ++o)
      h.objects.push_back(pt.object_of(f.cells1[u].obj(ps.first.obj(o)),
                                       g.cells1[u].obj(ps.second.obj(o))));
    for (int r = 0; r < ps.category->num_arrows(); ++r)
      h.arrows.push_back(pt.arrow_of(f.cells1[u].arr(ps.first.arr(r)),
                                     g.cells1[u].arr(ps.second.arr(r))));
    out.cells1.push_back(std::move(h));
  }
  for (int al = 0; al < a.num_cells2(); ++al) {
    int u = a.src2(al);
    const auto& ps = p[a.src(u)];
    const auto& pt = p[a.tgt(u)];
    NatTransf t{out.cells1[u], out.cells1[a.tgt2(al)], {}};
    for (int o = 0; o < ps.category->num_objects(); ++o)
      t.components.push_back(pt.arrow_of(f.cells2[al].components[ps.first.obj(o)],
                                         g.cells2[al].components[ps.second.obj(o)]));
    out.cells2.push_back(std::move(t));
  }
  return out;
}

PseudoEqInputs pseudoeq_inclusions(const DiagramRef& f) {
  auto iso = cats::walking_iso();
  auto h = std::make_shared<const CatDiagram>(
      product_diagram(*f, constant_diagram(f->index, f->sigma, iso)));
  PseudoEqInputs out{{f, h, {}}, {f, h, {}}};
  for (int x = 0; x < f->index->num_objects(); ++x) {
    auto p = product_category(f->values[x], iso);
    for (int end = 0; end < 2; ++end) {
      Functor inc{f->values[x], h->values[x], {}, {}};
      for (int o = 0; o < f->at(x).num_objects(); ++o)
        inc.objects.push_back(p.object_of(o, end));
      for (int r = 0; r < f->at(x).num_arrows(); ++r)
        inc.arrows.push_back(p.arrow_of(r, iso->identity(end)));
      (end == 0 ? out.alpha : out.beta).components.push_back(std::move(inc));
    }
  }
  return out;
}

PseudoEqInputs pseudoeq_identity(const DiagramRef& f) {
  return {identity_diagram_transf(f), identity_diagram_transf(f)};
}

}  // namespace sigmacolim
