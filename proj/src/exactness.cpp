#include "sigmacolim/exactness.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>

#include "sigmacolim/fixtures.hpp"

namespace sigmacolim {

namespace {

bool same_diagram(const DiagramRef& a, const DiagramRef& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->index.get() != b->index.get() && !(*a->index == *b->index)) return false;
  if (a->values.size() != b->values.size()) return false;
  for (std::size_t i = 0; i < a->values.size(); ++i)
    if (!same_category(a->values[i], b->values[i])) return false;
  return a->cells1 == b->cells1 && a->cells2 == b->cells2;
}

void check_transf_pair(const DiagramNatTransf& alpha, const DiagramNatTransf& beta) {
  for (const auto* t : {&alpha, &beta}) {
    if (!t->source || !t->target) throw InputError("transformation without endpoints");
    auto vs = validate_diagram_transf(*t);
    if (!vs.empty()) throw InputError("invalid transformation: " + describe(vs));
  }
  if (!same_diagram(alpha.source, beta.source) || !same_diagram(alpha.target, beta.target))
    throw InputError("alpha and beta are not parallel");
}

CatDiagram pointwise_pseudoeq(const DiagramNatTransf& alpha, const DiagramNatTransf& beta,
                              std::vector<PseudoEqualizer>& pe) {
  check_transf_pair(alpha, beta);
  const auto& g = *alpha.source;
  const auto& h = *alpha.target;
  const auto& a = *g.index;
  CatDiagram out{g.index, g.sigma, {}, {}, {}};
  pe.clear();
  for (int x = 0; x < a.num_objects(); ++x) {
    pe.push_back(pseudo_equalizer(alpha.components[x], beta.components[x]));
    out.values.push_back(pe.back().category);
  }
  auto fail = [&](int cell) {
    throw InputError("transformations are not 2-natural at " + a.cell1_name(cell));
  };
  for (int u = 0; u < a.num_cells1(); ++u) {
    const auto& ps = pe[a.src(u)];
    const auto& pt = pe[a.tgt(u)];
    const auto& gu = g.cells1[u];
    const auto& hu = h.cells1[u];
    Functor m{ps.category, pt.category, {}, {}};
    for (const auto& [x, y, ga, de] : ps.objects) {
      auto o = pt.find_object({gu.obj(x), hu.obj(y), hu.arr(ga), hu.arr(de)});
      if (!o) fail(u);
      m.objects.push_back(*o);
    }
    for (int r = 0; r < ps.category->num_arrows(); ++r) {
      auto [x, y] = ps.arrows[r];
      auto k = pt.find_arrow(m.objects[ps.category->src(r)], m.objects[ps.category->tgt(r)],
                             gu.arr(x), hu.arr(y));
      if (!k) fail(u);
      m.arrows.push_back(*k);
    }
    out.cells1.push_back(std::move(m));
  }
  for (int rho = 0; rho < a.num_cells2(); ++rho) {
    int u = a.src2(rho), u2 = a.tgt2(rho);
    const auto& ps = pe[a.src(u)];
    const auto& pt = pe[a.tgt(u)];
    NatTransf t{out.cells1[u], out.cells1[u2], {}};
    for (int o = 0; o < ps.category->num_objects(); ++o) {
      const auto& tup = ps.objects[o];
      auto k = pt.find_arrow(out.cells1[u].obj(o), out.cells1[u2].obj(o),
                             g.cells2[rho].components[tup[0]],
                             h.cells2[rho].components[tup[1]]);
      if (!k) throw InputError("transformations are not 2-natural at " + a.cell2_name(rho));
      t.components.push_back(*k);
    }
    out.cells2.push_back(std::move(t));
  }
  return out;
}

bool bijective(const std::vector<int>& table, int size) {
  if (static_cast<int>(table.size()) != size) return false;
  std::set<int> seen(table.begin(), table.end());
  return static_cast<int>(seen.size()) == size && !seen.count(-1);
}

// Fills the diamond tables from the two maps, re-checks every member of
// every class and attaches the report.
void assemble(ComparisonInstance& inst, const std::function<int(int)>& on_object,
              const std::function<int(const Premorphism&)>& on_premorphism) {
  const auto& l = inst.lhs_colimit;
  inst.lhs = l.category;
  inst.diamond = Functor{inst.lhs, inst.rhs, {}, {}};
  for (int o = 0; o < inst.lhs->num_objects(); ++o)
    inst.diamond.objects.push_back(on_object(o));
  for (int c = 0; c < inst.lhs->num_arrows(); ++c)
    inst.diamond.arrows.push_back(on_premorphism(l.representatives[c]));

  for (const auto& h : l.quotient.homs) {
    for (const auto& p : h.members) {
      ++inst.members_checked;
      int image = on_premorphism(p);
      int expected = inst.diamond.arrows[l.class_of(p)];
      if (image != expected)
        inst.violations.push_back(
            {"DiamondRepresentative",
             describe(p, *inst.limit_diagram) + " maps away from its class image"});
    }
  }

  bool complete = std::none_of(inst.diamond.objects.begin(), inst.diamond.objects.end(),
                               [](int v) { return v < 0; }) &&
                  std::none_of(inst.diamond.arrows.begin(), inst.diamond.arrows.end(),
                               [](int v) { return v < 0; });
  if (complete) {
    auto vs = validate_functor(inst.diamond);
    for (auto& v : vs) inst.violations.push_back({"DiamondFunctor", v.kind + ": " + v.detail});
  }
  if (!complete || !inst.violations.empty()) {
    inst.report.essentially_surjective = inst.report.full = inst.report.faithful = false;
    return;
  }
  inst.report = equivalence_check(inst.diamond);
  inst.objects_bijective = bijective(inst.diamond.objects, inst.rhs->num_objects());
  inst.arrows_bijective = bijective(inst.diamond.arrows, inst.rhs->num_arrows());
}

std::shared_ptr<const CatDiagram> share(CatDiagram d) {
  return std::make_shared<const CatDiagram>(std::move(d));
}

Premorphism with_arrow(const Premorphism& p, int x, int y, int xi) {
  return {{p.source.index, x}, {p.target.index, y}, p.u, p.v, xi};
}

std::optional<SigmaF0Witness> f0_witness(const SigmaF0Check& c, int a, int b) {
  for (const auto& w : c.witnesses) {
    if (w.a == a && w.b == b) return w;
    if (w.a == b && w.b == a) return SigmaF0Witness{a, b, w.e, w.g, w.f};
  }
  return std::nullopt;
}

}  // namespace

CatDiagram cotensor_diagram(const CatDiagram& f, const CatRef& w) {
  const auto& a = *f.index;
  CatDiagram out{f.index, f.sigma, {}, {}, {}};
  std::vector<FunctorCategory> fc;
  for (int x = 0; x < a.num_objects(); ++x) {
    fc.push_back(functor_category(f.values[x], w));
    out.values.push_back(fc.back().category);
  }
  for (int u = 0; u < a.num_cells1(); ++u) {
    const auto& s = fc[a.src(u)];
    const auto& t = fc[a.tgt(u)];
    Functor m{s.category, t.category, {}, {}};
    for (const auto& x : s.functors) m.objects.push_back(t.object_of(compose(f.cells1[u], x)));
    for (const auto& xi : s.transfs)
      m.arrows.push_back(t.arrow_of(whisker_left(f.cells1[u], xi)));
    out.cells1.push_back(std::move(m));
  }
  for (int rho = 0; rho < a.num_cells2(); ++rho) {
    int u = a.src2(rho);
    const auto& s = fc[a.src(u)];
    const auto& t = fc[a.tgt(u)];
    NatTransf c{out.cells1[u], out.cells1[a.tgt2(rho)], {}};
    for (const auto& x : s.functors) c.components.push_back(t.arrow_of(whisker_right(f.cells2[rho], x)));
    out.cells2.push_back(std::move(c));
  }
  return out;
}

CatDiagram pseudoeq_diagram(const DiagramNatTransf& alpha, const DiagramNatTransf& beta) {
  std::vector<PseudoEqualizer> pe;
  return pointwise_pseudoeq(alpha, beta, pe);
}

Functor induced_colimit_functor(const DiagramNatTransf& t, const ColimCategory& source,
                                const ColimCategory& target) {
  Functor out{source.category, target.category, {}, {}};
  for (const auto& o : source.objects)
    out.objects.push_back(target.object_of({o.index, t.components[o.index].obj(o.x)}));
  auto image = [&](const Premorphism& p) {
    const auto& tc = t.components[t.source->index->tgt(p.u)];
    return target.class_of(with_arrow(p, t.components[p.source.index].obj(p.source.x),
                                      t.components[p.target.index].obj(p.target.x),
                                      tc.arr(p.xi)));
  };
  for (const auto& p : source.representatives) out.arrows.push_back(image(p));
  for (const auto& h : source.quotient.homs)
    for (const auto& p : h.members)
      if (image(p) != out.arrows[source.class_of(p)])
        throw std::logic_error("induced functor depends on the representative");
  auto vs = validate_functor(out);
  if (!vs.empty()) throw std::logic_error("induced tables are not a functor: " + describe(vs));
  return out;
}

std::string to_string(ComparisonKind k) {
  switch (k) {
    case ComparisonKind::Cotensor: return "cotensor";
    case ComparisonKind::Product: return "product";
    case ComparisonKind::PseudoEqualizer: return "pseudoeq";
  }
  return "?";
}

ComparisonInstance diamond_cotensor(const DiagramRef& f, const CatRef& w,
                                    const ExactnessOptions& opts) {
  ComparisonInstance inst;
  inst.kind = ComparisonKind::Cotensor;
  inst.inputs = {f};
  inst.weight = w;
  inst.input_colimits.push_back(build_colimit(*f, opts.colimit));
  const auto& lf = inst.input_colimits[0];
  inst.limit_diagram = share(cotensor_diagram(*f, w));
  inst.lhs_colimit = build_colimit(*inst.limit_diagram, opts.colimit);
  const auto& a = *f->index;

  std::vector<FunctorCategory> fc;
  for (int x = 0; x < a.num_objects(); ++x) fc.push_back(functor_category(f->values[x], w));
  auto l_w = functor_category(lf.category, w);
  inst.rhs = l_w.category;

  auto object_image = [&](const ColimObject& o) {
    return compose(lf.lambda.legs[o.index], fc[o.index].functors[o.x]);
  };
  auto on_object = [&](int o) {
    return l_w.object_of(object_image(inst.lhs_colimit.objects[o]));
  };
  auto on_premorphism = [&](const Premorphism& p) {
    const auto& x = fc[p.source.index].functors[p.source.x];
    const auto& y = fc[p.target.index].functors[p.target.x];
    const auto& xi = fc[a.tgt(p.u)].transfs[p.xi];
    if (!validate_nat_transf(xi).empty())
      inst.violations.push_back({"CotensorNaturality", describe(p, *inst.limit_diagram)});
    NatTransf t{object_image(p.source), object_image(p.target), {}};
    for (int k = 0; k < w->num_objects(); ++k)
      t.components.push_back(lf.class_of(with_arrow(p, x.obj(k), y.obj(k), xi.components[k])));
    if (!validate_nat_transf(t).empty()) {
      inst.violations.push_back({"CotensorClassNaturality", describe(p, *inst.limit_diagram)});
      return -1;
    }
    return l_w.arrow_of(t);
  };
  assemble(inst, on_object, on_premorphism);
  return inst;
}

ComparisonInstance diamond_product(const DiagramRef& f, const DiagramRef& g,
                                   const ExactnessOptions& opts) {
  ComparisonInstance inst;
  inst.kind = ComparisonKind::Product;
  inst.inputs = {f, g};
  inst.input_colimits.push_back(build_colimit(*f, opts.colimit));
  inst.input_colimits.push_back(build_colimit(*g, opts.colimit));
  const auto& lf = inst.input_colimits[0];
  const auto& lg = inst.input_colimits[1];
  inst.limit_diagram = share(product_diagram(*f, *g));
  inst.lhs_colimit = build_colimit(*inst.limit_diagram, opts.colimit);
  const auto& lhs = inst.lhs_colimit;
  const auto& a = *f->index;

  std::vector<ProductCategory> pc;
  for (int x = 0; x < a.num_objects(); ++x)
    pc.push_back(product_category(f->values[x], g->values[x]));
  auto rhs = product_category(lf.category, lg.category);
  inst.rhs = rhs.category;

  auto on_object = [&](int o) {
    const auto& c = lhs.objects[o];
    const auto& p = pc[c.index];
    return rhs.object_of(lf.object_of({c.index, p.first.obj(c.x)}),
                         lg.object_of({c.index, p.second.obj(c.x)}));
  };
  auto on_premorphism = [&](const Premorphism& q) {
    const auto& ps = pc[q.source.index];
    const auto& pt = pc[q.target.index];
    const auto& pm = pc[a.tgt(q.u)];
    int xi = lf.class_of(with_arrow(q, ps.first.obj(q.source.x), pt.first.obj(q.target.x),
                                    pm.first.arr(q.xi)));
    int eta = lg.class_of(with_arrow(q, ps.second.obj(q.source.x), pt.second.obj(q.target.x),
                                     pm.second.arr(q.xi)));
    return rhs.arrow_of(xi, eta);
  };
  assemble(inst, on_object, on_premorphism);
  if (!opts.product_witnesses || !inst.violations.empty()) return inst;

  // Every object of L(F) × L(G) is isomorphic to an image, through σF0.
  auto f0 = check_sigmaF0(a, f->sigma);
  const auto& rc = *rhs.category;
  for (int o = 0; o < rc.num_objects(); ++o) {
    auto x = lf.objects[rhs.first.obj(o)];
    auto y = lg.objects[rhs.second.obj(o)];
    auto wit = f0_witness(f0, x.index, y.index);
    if (!wit) {
      inst.violations.push_back({"ProductSurjectivity", rc.object_name(o) + " has no sigmaF0 cone"});
      continue;
    }
    int x2 = apply_diagram(*f, x.x, wit->f);
    int y2 = apply_diagram(*g, y.x, wit->g);
    int img = inst.diamond.obj(lhs.object_of({wit->e, pc[wit->e].object_of(x2, y2)}));
    int id_e = a.id1(wit->e);
    int ax = lf.class_of({x, {wit->e, x2}, wit->f, id_e, f->at(wit->e).identity(x2)});
    int ay = lg.class_of({y, {wit->e, y2}, wit->g, id_e, g->at(wit->e).identity(y2)});
    int arrow = rhs.arrow_of(ax, ay);
    if (rc.src(arrow) != o || rc.tgt(arrow) != img || !is_isomorphism(rc, arrow)) {
      inst.violations.push_back({"ProductSurjectivity", rc.object_name(o)});
      continue;
    }
    ++inst.surjectivity_witnesses;
  }

  // Every arrow between images lifts through one lemma call on (ξ, η).
  const auto& lc = *lhs.category;
  for (int i = 0; i < lc.num_objects(); ++i) {
    for (int j = 0; j < lc.num_objects(); ++j) {
      int di = inst.diamond.obj(i), dj = inst.diamond.obj(j);
      for (int r : rc.hom(di, dj)) {
        LemmaInstance li;
        li.functors = {f, g};
        li.premorphisms = {{0, lf.representatives[rhs.first.arr(r)]},
                           {1, lg.representatives[rhs.second.arr(r)]}};
        li.terms = {LemmaTerm::leaf(0), LemmaTerm::leaf(1)};
        auto out = lemma_engine(li, opts.lemma);
        const auto& t0 = out.tilde[0];
        const auto& t1 = out.tilde[1];
        bool ok = t0.u == t1.u && t0.v == t1.v && check_lemma_output(li, out).empty();
        if (ok) {
          int e = out.e;
          Premorphism lift{lhs.objects[i], lhs.objects[j], t0.u, t0.v,
                           pc[e].arrow_of(t0.xi, t1.xi)};
          ok = inst.diamond.arr(lhs.class_of(lift)) == r;
        }
        if (!ok) {
          inst.violations.push_back({"ProductFullness", rc.arrow_name(r)});
          continue;
        }
        ++inst.fullness_witnesses;
      }
    }
  }
  return inst;
}

ComparisonInstance diamond_empty_product(const TwoCatRef& index, const SigmaClass& sigma,
                                         const ExactnessOptions& opts) {
  ComparisonInstance inst;
  inst.kind = ComparisonKind::Product;
  inst.limit_diagram = share(constant_diagram(index, sigma, cats::terminal()));
  inst.lhs_colimit = build_colimit(*inst.limit_diagram, opts.colimit);
  inst.rhs = cats::terminal();
  assemble(inst, [](int) { return 0; }, [](const Premorphism&) { return 0; });
  return inst;
}

ComparisonInstance diamond_pseudoeq(const DiagramNatTransf& alpha,
                                    const DiagramNatTransf& beta,
                                    const ExactnessOptions& opts) {
  ComparisonInstance inst;
  inst.kind = ComparisonKind::PseudoEqualizer;
  std::vector<PseudoEqualizer> pe;
  inst.limit_diagram = share(pointwise_pseudoeq(alpha, beta, pe));
  const auto& g = alpha.source;
  const auto& h = alpha.target;
  inst.inputs = {g, h};
  inst.transfs = {alpha, beta};
  inst.input_colimits.push_back(build_colimit(*g, opts.colimit));
  inst.input_colimits.push_back(build_colimit(*h, opts.colimit));
  const auto& lg = inst.input_colimits[0];
  const auto& lh = inst.input_colimits[1];
  inst.induced = {induced_colimit_functor(alpha, lg, lh),
                  induced_colimit_functor(beta, lg, lh)};
  inst.lhs_colimit = build_colimit(*inst.limit_diagram, opts.colimit);
  const auto& lhs = inst.lhs_colimit;
  auto eq = pseudo_equalizer(inst.induced[0], inst.induced[1]);
  inst.rhs = eq.category;
  const auto& a = *g->index;

  auto on_object = [&](int o) {
    const auto& c = lhs.objects[o];
    const auto& [x, y, ga, de] = pe[c.index].objects[c.x];
    const auto& leg = lh.lambda.legs[c.index];
    auto k = eq.find_object({lg.object_of({c.index, x}), lh.object_of({c.index, y}),
                             leg.arr(ga), leg.arr(de)});
    if (!k) {
      inst.violations.push_back({"PseudoEqObject", lhs.category->object_name(o)});
      return -1;
    }
    return *k;
  };
  auto on_premorphism = [&](const Premorphism& p) {
    int c = a.tgt(p.u);
    const auto& s = pe[p.source.index].objects[p.source.x];
    const auto& t = pe[p.target.index].objects[p.target.x];
    auto [xa, xb] = pe[c].arrows[p.xi];
    // ξ₂ ∘ H(u)(γ) = H(v)(γ') ∘ α_C(ξ₁), and the same with δ, β.
    const auto& hc = h->at(c);
    const auto& hu = h->cells1[p.u];
    const auto& hv = h->cells1[p.v];
    for (int k : {2, 3}) {
      const auto& tc = (k == 2 ? alpha : beta).components[c];
      if (hc.compose(xb, hu.arr(s[k])) != hc.compose(hv.arr(t[k]), tc.arr(xa)))
        inst.violations.push_back({"PseudoEqStrictEquation", describe(p, *inst.limit_diagram)});
    }
    int src = eq.find_object({lg.object_of({p.source.index, s[0]}),
                              lh.object_of({p.source.index, s[1]}),
                              lh.lambda.legs[p.source.index].arr(s[2]),
                              lh.lambda.legs[p.source.index].arr(s[3])})
                  .value_or(-1);
    int tgt = eq.find_object({lg.object_of({p.target.index, t[0]}),
                              lh.object_of({p.target.index, t[1]}),
                              lh.lambda.legs[p.target.index].arr(t[2]),
                              lh.lambda.legs[p.target.index].arr(t[3])})
                  .value_or(-1);
    if (src < 0 || tgt < 0) return -1;
    auto k = eq.find_arrow(src, tgt, lg.class_of(with_arrow(p, s[0], t[0], xa)),
                           lh.class_of(with_arrow(p, s[1], t[1], xb)));
    if (!k) {
      inst.violations.push_back({"PseudoEqClassEquation", describe(p, *inst.limit_diagram)});
      return -1;
    }
    return *k;
  };
  assemble(inst, on_object, on_premorphism);
  return inst;
}

}  // namespace sigmacolim
