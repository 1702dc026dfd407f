#include "sigmacolim/colimit.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace sigmacolim {

namespace {

int find_root(std::vector<int>& parent, int i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

HomotopyWitness swapped(const HomotopyWitness& w) {
  return {w.d, w.w_a, w.w_b, w.w2, w.w1, w.alpha2, w.alpha1, w.beta2, w.beta1};
}

void require_same_endpoints(const Premorphism& a, const Premorphism& b) {
  if (a.source != b.source || a.target != b.target)
    throw InputError("premorphisms do not share source and target");
}

// γ from the first σ-cone over B -v-> C, B -u'-> C'.
GammaChoice cospan_gamma(const CatDiagram& f, int v, int u2) {
  const auto& a = *f.index;
  TwoComputad k;
  k.objects = {"B", "X", "Y"};
  k.arrows = {{"p", "B", "X", false}, {"q", "B", "Y", true}};
  auto d = diagram_from_computad(k, f.index, {{"B", a.src(v)}, {"X", a.tgt(v)}, {"Y", a.tgt(u2)}},
                                 {{"p", v}, {"q", u2}});
  auto r = sigma_cone_search(d.functor, f.sigma);
  if (!r.found())
    throw NotSigmaFiltered("no sigma-cone over the cospan (" + a.cell1_name(v) + ", " +
                           a.cell1_name(u2) + ")");
  const auto& c = r.first();
  int th_p = c.cells[d.free.arrow_of.at("p")];
  int th_q = c.cells[d.free.arrow_of.at("q")];
  return {c.legs[d.free.object_of.at("X")], c.legs[d.free.object_of.at("Y")],
          a.vcompose(a.inverse2(th_q), th_p)};
}

}  // namespace

std::string describe(const ColimObject& o, const CatDiagram& f) {
  return "(" + f.at(o.index).object_name(o.x) + "," + f.index->object_name(o.index) + ")";
}

std::string describe(const Premorphism& p, const CatDiagram& f) {
  const auto& a = *f.index;
  return describe(p.source, f) + "-[" + a.cell1_name(p.u) + "|" +
         f.at(a.tgt(p.u)).arrow_name(p.xi) + "|" + a.cell1_name(p.v) + "]->" +
         describe(p.target, f);
}

std::vector<ColimObject> enumerate_objects(const CatDiagram& f) {
  std::vector<ColimObject> out;
  for (int a = 0; a < f.index->num_objects(); ++a)
    for (int x = 0; x < f.at(a).num_objects(); ++x) out.push_back({a, x});
  return out;
}

std::vector<Premorphism> enumerate_premorphisms(const CatDiagram& f, const ColimObject& from,
                                                const ColimObject& to) {
  const auto& a = *f.index;
  std::vector<Premorphism> out;
  for (int c = 0; c < a.num_objects(); ++c)
    for (int u : a.cells1(from.index, c)) {
      if (!f.sigma.contains(u)) continue;
      int fx = f.cells1[u].obj(from.x);
      for (int v : a.cells1(to.index, c)) {
        int fy = f.cells1[v].obj(to.x);
        for (int xi : f.at(c).hom(fx, fy)) out.push_back({from, to, u, v, xi});
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

Violations validate_premorphism(const CatDiagram& f, const Premorphism& p) {
  Violations out;
  const auto& a = *f.index;
  auto object_ok = [&](const ColimObject& o) {
    return o.index >= 0 && o.index < a.num_objects() && o.x >= 0 &&
           o.x < f.at(o.index).num_objects();
  };
  if (!object_ok(p.source) || !object_ok(p.target)) {
    out.push_back({"PremorphismObject", "endpoint outside the diagram"});
    return out;
  }
  if (p.u < 0 || p.u >= a.num_cells1() || p.v < 0 || p.v >= a.num_cells1() ||
      a.src(p.u) != p.source.index || a.src(p.v) != p.target.index ||
      a.tgt(p.u) != a.tgt(p.v)) {
    out.push_back({"PremorphismLegs", "u and v must form a cospan A -> C <- B"});
    return out;
  }
  if (!f.sigma.contains(p.u)) out.push_back({"PremorphismNotInSigma", a.cell1_name(p.u)});
  const auto& fc = f.at(a.tgt(p.u));
  if (p.xi < 0 || p.xi >= fc.num_arrows() || fc.src(p.xi) != f.cells1[p.u].obj(p.source.x) ||
      fc.tgt(p.xi) != f.cells1[p.v].obj(p.target.x))
    out.push_back({"PremorphismArrow", "xi must run F(u)(x) -> F(v)(y)"});
  return out;
}

Premorphism identity_premorphism(const CatDiagram& f, const ColimObject& o) {
  int id = f.index->id1(o.index);
  return {o, o, id, id, f.at(o.index).identity(o.x)};
}

int paste(const CatDiagram& f, const Premorphism& p, int w, int alpha, int beta) {
  const auto& fd = f.at(f.index->tgt(w));
  int a = f.cells2[alpha].components[p.source.x];
  int b = f.cells2[beta].components[p.target.x];
  int mid = f.cells1[w].arr(p.xi);
  int r = fd.compose(mid, a);
  return r == -1 ? -1 : fd.compose(b, r);
}

Violations check_homotopy(const CatDiagram& f, const Premorphism& xi1, const Premorphism& xi2,
                          const HomotopyWitness& w) {
  Violations out;
  const auto& a = *f.index;
  if (xi1.source != xi2.source || xi1.target != xi2.target) {
    out.push_back({"HomotopyEndpoints", "premorphisms do not share source and target"});
    return out;
  }
  auto cell1 = [&](int c, int src, const char* name) {
    if (c < 0 || c >= a.num_cells1() || a.src(c) != src || a.tgt(c) != w.d) {
      out.push_back({"HomotopyLegType", name});
      return false;
    }
    if (!f.sigma.contains(c)) out.push_back({"HomotopyLegNotInSigma", name});
    return true;
  };
  if (w.d < 0 || w.d >= a.num_objects()) {
    out.push_back({"HomotopyShape", "D is not an object"});
    return out;
  }
  bool ok = cell1(w.w_a, xi1.source.index, "w_A") & cell1(w.w_b, xi1.target.index, "w_B") &
            cell1(w.w1, a.tgt(xi1.u), "w_1") & cell1(w.w2, a.tgt(xi2.u), "w_2");
  if (!ok) return out;
  auto cell2 = [&](int c, int src, int tgt, bool invertible, const char* name) {
    if (c < 0 || c >= a.num_cells2() || a.src2(c) != src || a.tgt2(c) != tgt) {
      out.push_back({"HomotopyCellType", name});
      return false;
    }
    if (invertible && a.inverse2(c) == -1) out.push_back({"HomotopyNotInvertible", name});
    return true;
  };
  ok = cell2(w.alpha1, w.w_a, a.hcompose1(w.w1, xi1.u), true, "alpha_1") &
       cell2(w.alpha2, w.w_a, a.hcompose1(w.w2, xi2.u), true, "alpha_2") &
       cell2(w.beta1, a.hcompose1(w.w1, xi1.v), w.w_b, false, "beta_1") &
       cell2(w.beta2, a.hcompose1(w.w2, xi2.v), w.w_b, false, "beta_2");
  if (!ok) return out;
  if (paste(f, xi1, w.w1, w.alpha1, w.beta1) != paste(f, xi2, w.w2, w.alpha2, w.beta2))
    out.push_back({"HomotopyPasting", "the two pasted arrows differ in F(D)"});
  return out;
}

std::optional<HomotopyWitness> HomotopySearch::find(const Premorphism& xi1,
                                                    const Premorphism& xi2) {
  require_same_endpoints(xi1, xi2);
  bool flip = xi2 < xi1;
  auto key = flip ? std::make_pair(xi2, xi1) : std::make_pair(xi1, xi2);
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(key, search(key.first, key.second)).first;
  if (!it->second || !flip) return it->second;
  return swapped(*it->second);
}

std::optional<HomotopyWitness> HomotopySearch::search(const Premorphism& xi1,
                                                      const Premorphism& xi2) const {
  const auto& f = *f_;
  const auto& a = *f.index;
  const auto& s = f.sigma;
  const int ia = xi1.source.index, ib = xi1.target.index;
  const int c1 = a.tgt(xi1.u), c2 = a.tgt(xi2.u);
  struct Option {
    int alpha, beta, value;
  };
  auto options = [&](const Premorphism& p, int w, int wa, int wb) {
    std::vector<Option> out;
    for (int al : a.cells2(wa, a.hcompose1(w, p.u))) {
      if (a.inverse2(al) == -1) continue;
      for (int be : a.cells2(a.hcompose1(w, p.v), wb)) out.push_back({al, be, paste(f, p, w, al, be)});
    }
    return out;
  };
  for (int d = 0; d < a.num_objects(); ++d) {
    std::vector<int> w1s, w2s;
    for (int w : a.cells1(c1, d))
      if (s.contains(w)) w1s.push_back(w);
    for (int w : a.cells1(c2, d))
      if (s.contains(w)) w2s.push_back(w);
    if (w1s.empty() || w2s.empty()) continue;
    for (int wa : a.cells1(ia, d)) {
      if (!s.contains(wa)) continue;
      for (int wb : a.cells1(ib, d)) {
        if (!s.contains(wb)) continue;
        std::vector<std::map<int, std::pair<int, int>>> second(w2s.size());
        for (std::size_t j = 0; j < w2s.size(); ++j)
          for (const auto& o : options(xi2, w2s[j], wa, wb))
            second[j].emplace(o.value, std::make_pair(o.alpha, o.beta));
        for (int w1 : w1s) {
          auto first = options(xi1, w1, wa, wb);
          if (first.empty()) continue;
          for (std::size_t j = 0; j < w2s.size(); ++j)
            for (const auto& o : first) {
              auto hit = second[j].find(o.value);
              if (hit == second[j].end()) continue;
              return HomotopyWitness{d,      wa,      wb, w1, w2s[j], o.alpha, hit->second.first,
                                     o.beta, hit->second.second};
            }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<HomotopyWitness> is_homotopic(const CatDiagram& f, const Premorphism& xi1,
                                            const Premorphism& xi2) {
  HomotopySearch s(f);
  return s.find(xi1, xi2);
}

std::vector<GammaChoice> gamma_choices(const CatDiagram& f, const Premorphism& zeta,
                                       const Premorphism& xi) {
  if (xi.target != zeta.source) throw InputError("premorphisms are not composable");
  const auto& a = *f.index;
  std::vector<GammaChoice> out;
  int c = a.tgt(xi.v), c2 = a.tgt(zeta.u);
  for (int e = 0; e < a.num_objects(); ++e)
    for (int r : a.cells1(c, e)) {
      if (!f.sigma.contains(r)) continue;
      for (int s : a.cells1(c2, e)) {
        if (!f.sigma.contains(s)) continue;
        for (int g : a.cells2(a.hcompose1(r, xi.v), a.hcompose1(s, zeta.u)))
          out.push_back({r, s, g});
      }
    }
  return out;
}

GammaChoice canonical_gamma(const CatDiagram& f, const Premorphism& zeta,
                            const Premorphism& xi) {
  if (xi.target != zeta.source) throw InputError("premorphisms are not composable");
  return cospan_gamma(f, xi.v, zeta.u);
}

Premorphism compose_premorphisms(const CatDiagram& f, const Premorphism& zeta,
                                 const Premorphism& xi, const GammaChoice& g) {
  if (xi.target != zeta.source) throw InputError("premorphisms are not composable");
  const auto& a = *f.index;
  if (g.r < 0 || g.r >= a.num_cells1() || g.s < 0 || g.s >= a.num_cells1() ||
      a.src(g.r) != a.tgt(xi.v) || a.src(g.s) != a.tgt(zeta.u) || a.tgt(g.r) != a.tgt(g.s) ||
      !f.sigma.contains(g.r) || !f.sigma.contains(g.s))
    throw InputError("gamma choice: r and s must be Sigma-arrows into a common object");
  if (g.gamma < 0 || g.gamma >= a.num_cells2() ||
      a.src2(g.gamma) != a.hcompose1(g.r, xi.v) || a.tgt2(g.gamma) != a.hcompose1(g.s, zeta.u))
    throw InputError("gamma choice: the 2-cell must run r.v => s.u'");
  const auto& fe = f.at(a.tgt(g.r));
  int left = f.cells1[g.r].arr(xi.xi);
  int mid = f.cells2[g.gamma].components[xi.target.x];
  int right = f.cells1[g.s].arr(zeta.xi);
  return {xi.source, zeta.target, a.hcompose1(g.r, xi.u), a.hcompose1(g.s, zeta.v),
          fe.compose(right, fe.compose(mid, left))};
}

Premorphism compose_premorphisms(const CatDiagram& f, const Premorphism& zeta,
                                 const Premorphism& xi) {
  return compose_premorphisms(f, zeta, xi, canonical_gamma(f, zeta, xi));
}

const HomClasses& HomotopyQuotient::hom(const ColimObject& from, const ColimObject& to) const {
  auto pos = [&](const ColimObject& o) {
    auto it = std::lower_bound(objects.begin(), objects.end(), o);
    if (it == objects.end() || *it != o) throw InputError("unknown colimit object");
    return static_cast<std::size_t>(it - objects.begin());
  };
  return homs[pos(from) * objects.size() + pos(to)];
}

HomotopyQuotient homotopy_quotient(const CatDiagram& f) {
  HomotopyQuotient q;
  q.objects = enumerate_objects(f);
  HomotopySearch search(f);
  for (const auto& from : q.objects)
    for (const auto& to : q.objects) {
      HomClasses h;
      h.from = from;
      h.to = to;
      h.members = enumerate_premorphisms(f, from, to);
      const int n = static_cast<int>(h.members.size());
      std::vector<int> parent(n);
      std::iota(parent.begin(), parent.end(), 0);
      std::vector<char> related(static_cast<std::size_t>(n) * n, 0);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (search.find(h.members[i], h.members[j])) {
            related[static_cast<std::size_t>(i) * n + j] = 1;
            ++h.one_step_pairs;
            int ri = find_root(parent, i), rj = find_root(parent, j);
            if (ri != rj) parent[std::max(ri, rj)] = std::min(ri, rj);
          }
      std::map<int, int> class_index;
      for (int i = 0; i < n; ++i) {
        int r = find_root(parent, i);
        auto [it, fresh] = class_index.emplace(r, static_cast<int>(h.reps.size()));
        if (fresh) h.reps.push_back(i);
        h.class_of.push_back(it->second);
      }
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          if (h.class_of[i] == h.class_of[j] && !related[static_cast<std::size_t>(i) * n + j])
            ++h.closure_pairs;
      q.closure_pairs += h.closure_pairs;
      q.homs.push_back(std::move(h));
    }
  return q;
}

int ColimCategory::object_of(const ColimObject& o) const {
  auto it = std::find(objects.begin(), objects.end(), o);
  if (it == objects.end()) throw InputError("unknown colimit object");
  return static_cast<int>(it - objects.begin());
}

int ColimCategory::class_of(const Premorphism& p) const {
  const auto& h = quotient.hom(p.source, p.target);
  auto it = std::lower_bound(h.members.begin(), h.members.end(), p);
  if (it == h.members.end() || *it != p) throw InputError("not a premorphism of the diagram");
  const auto& rep = h.members[h.reps[h.class_of[it - h.members.begin()]]];
  auto r = std::find(representatives.begin(), representatives.end(), rep);
  if (r != representatives.end()) return static_cast<int>(r - representatives.begin());
  throw InputError("class without an arrow");
}

ColimCategory build_colimit(const CatDiagram& f, const ColimitOptions& opts) {
  auto report = is_sigma_filtered(*f.index, f.sigma, opts.strict_f2);
  if (!report.holds())
    throw NotSigmaFiltered("the index pair is not sigma-filtered (" + report.failing_axiom +
                           ")");
  const auto& a = *f.index;
  ColimCategory l;
  l.quotient = homotopy_quotient(f);
  const auto& q = l.quotient;

  std::map<std::pair<int, int>, GammaChoice> gammas;
  auto gamma_for = [&](const Premorphism& zeta, const Premorphism& xi) {
    auto key = std::make_pair(xi.v, zeta.u);
    auto it = gammas.find(key);
    if (it == gammas.end()) it = gammas.emplace(key, cospan_gamma(f, xi.v, zeta.u)).first;
    return it->second;
  };
  auto class_name = [&](const HomClasses& h, int cls) {
    return describe(h.members[h.reps[cls]], f);
  };
  auto class_of = [&](const Premorphism& p) {
    const auto& h = q.hom(p.source, p.target);
    auto it = std::lower_bound(h.members.begin(), h.members.end(), p);
    return h.class_of[it - h.members.begin()];
  };

  FinCategory::Builder b;
  for (const auto& o : q.objects) b.add_bare_object(describe(o, f));
  for (const auto& h : q.homs)
    for (std::size_t c = 0; c < h.reps.size(); ++c)
      b.add_arrow(class_name(h, static_cast<int>(c)), describe(h.from, f), describe(h.to, f));
  for (const auto& o : q.objects) {
    auto id = identity_premorphism(f, o);
    b.set_identity(describe(o, f), class_name(q.hom(o, o), class_of(id)));
  }
  const std::size_t n = q.objects.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const auto& h1 = q.homs[x * n + y];
      for (std::size_t z = 0; z < n; ++z) {
        const auto& h2 = q.homs[y * n + z];
        const auto& h3 = q.homs[x * n + z];
        for (int r1 : h1.reps)
          for (int r2 : h2.reps) {
            const auto& xi = h1.members[r1];
            const auto& zeta = h2.members[r2];
            auto p = compose_premorphisms(f, zeta, xi, gamma_for(zeta, xi));
            b.set_compose(describe(zeta, f), describe(xi, f), class_name(h3, class_of(p)));
          }
      }
    }
  l.category = b.build_shared(false);
  const auto& c = *l.category;

  l.objects.assign(c.num_objects(), {});
  for (const auto& o : q.objects) l.objects[c.object_index(describe(o, f))] = o;
  l.representatives.assign(c.num_arrows(), {});
  for (const auto& h : q.homs)
    for (int r : h.reps) l.representatives[c.arrow_index(describe(h.members[r], f))] = h.members[r];

  // λ_A(x) = (x, A), λ_A(ξ) = (id, ξ, id), (λ_u)_x = (id_B, id, u).
  l.lambda.vertex = l.category;
  for (int ia = 0; ia < a.num_objects(); ++ia) {
    const auto& fa = f.at(ia);
    Functor leg{f.values[ia], l.category, {}, {}};
    for (int x = 0; x < fa.num_objects(); ++x) leg.objects.push_back(l.object_of({ia, x}));
    for (int xi = 0; xi < fa.num_arrows(); ++xi)
      leg.arrows.push_back(l.class_of(
          {{ia, fa.src(xi)}, {ia, fa.tgt(xi)}, a.id1(ia), a.id1(ia), xi}));
    l.lambda.legs.push_back(std::move(leg));
  }
  for (int u = 0; u < a.num_cells1(); ++u) {
    int ia = a.src(u), ib = a.tgt(u);
    NatTransf t{compose(l.lambda.legs[ib], f.cells1[u]), l.lambda.legs[ia], {}};
    for (int x = 0; x < f.at(ia).num_objects(); ++x) {
      int ux = f.cells1[u].obj(x);
      t.components.push_back(
          l.class_of({{ib, ux}, {ia, x}, a.id1(ib), u, f.at(ib).identity(ux)}));
    }
    l.lambda.cells.push_back(std::move(t));
  }
  return l;
}

Functor factor_cone(const CatDiagram& f, const ColimCategory& l, const CatCone& h) {
  auto v = validate_cat_cone(f, h);
  if (!v.empty()) throw InputError("factor_cone: invalid cone: " + describe(v));
  const auto& a = *f.index;
  const auto& x = *h.vertex;
  const auto& c = *l.category;
  Functor out{l.category, h.vertex, {}, {}};
  for (int o = 0; o < c.num_objects(); ++o)
    out.objects.push_back(h.legs[l.objects[o].index].obj(l.objects[o].x));
  auto value = [&](const Premorphism& p) {
    int hu = h.cells[p.u].components[p.source.x];
    int hv = h.cells[p.v].components[p.target.x];
    int inv = x.inverse(hu);
    if (inv == -1) throw InputError("factor_cone: cone cell at a Sigma-arrow is not invertible");
    int mid = h.legs[a.tgt(p.u)].arr(p.xi);
    return x.compose(hv, x.compose(mid, inv));
  };
  for (int r = 0; r < c.num_arrows(); ++r) {
    const auto& rep = l.representatives[r];
    int val = value(rep);
    const auto& hc = l.quotient.hom(rep.source, rep.target);
    auto it = std::lower_bound(hc.members.begin(), hc.members.end(), rep);
    int cls = hc.class_of[it - hc.members.begin()];
    for (std::size_t i = 0; i < hc.members.size(); ++i)
      if (hc.class_of[i] == cls && value(hc.members[i]) != val)
        throw InputError("factor_cone: value differs within the class of " + describe(rep, f));
    out.arrows.push_back(val);
  }
  return out;
}

UniversalReport check_universal_property(const CatDiagram& f, const ColimCategory& l,
                                         const CatRef& e, std::size_t cap) {
  UniversalReport r;
  const auto& a = *f.index;
  auto functors = enumerate_functors(l.category, e, cap);
  auto cones = enumerate_cat_cones(f, e, cap);
  r.functors = functors.items.size();
  r.cones = cones.items.size();
  if (functors.capped || cones.capped) {
    r.capped = true;
    return r;
  }
  auto precompose = [&](const Functor& g) {
    CatCone c{e, {}, {}};
    for (const auto& leg : l.lambda.legs) c.legs.push_back(compose(g, leg));
    for (const auto& cell : l.lambda.cells) c.cells.push_back(whisker_left(g, cell));
    return c;
  };
  std::vector<int> image;
  std::vector<char> hit(cones.items.size(), 0);
  r.objects_bijective = functors.items.size() == cones.items.size();
  for (const auto& g : functors.items) {
    auto c = precompose(g);
    auto it = std::find(cones.items.begin(), cones.items.end(), c);
    if (it == cones.items.end()) {
      r.objects_bijective = false;
      image.push_back(-1);
      continue;
    }
    auto k = it - cones.items.begin();
    if (hit[k]) r.objects_bijective = false;
    hit[k] = 1;
    image.push_back(static_cast<int>(k));
  }
  r.arrows_bijective = r.objects_bijective;
  for (std::size_t i = 0; i < functors.items.size(); ++i)
    for (std::size_t j = 0; j < functors.items.size(); ++j) {
      auto ts = enumerate_nat_transfs(functors.items[i], functors.items[j], cap);
      r.transformations += ts.items.size();
      if (ts.capped) r.capped = true;
      if (image[i] < 0 || image[j] < 0) continue;
      const auto& s = cones.items[image[i]];
      const auto& t = cones.items[image[j]];
      auto ms = enumerate_cone_morphisms(f, s, t, cap);
      r.cone_morphisms += ms.items.size();
      if (ms.capped) r.capped = true;
      if (ms.items.size() != ts.items.size()) r.arrows_bijective = false;
      std::vector<char> seen(ms.items.size(), 0);
      for (const auto& phi : ts.items) {
        CatConeMorphism m;
        for (int ia = 0; ia < a.num_objects(); ++ia)
          m.components.push_back(whisker_right(phi, l.lambda.legs[ia]));
        auto it = std::find(ms.items.begin(), ms.items.end(), m);
        if (it == ms.items.end() || seen[it - ms.items.begin()]) {
          r.arrows_bijective = false;
          continue;
        }
        seen[it - ms.items.begin()] = 1;
      }
    }
  return r;
}

}  // namespace sigmacolim
