#include "sigmacolim/filtered.hpp"

#include <algorithm>
#include <climits>
#include <functional>
#include <sstream>

namespace sigmacolim {

// ---------------------------------------------------------------------------
// Axioms

SigmaF0Check check_sigmaF0(const Fin2Category& a, const SigmaClass& s) {
  SigmaF0Check out;
  for (int x = 0; x < a.num_objects(); ++x)
    for (int y = 0; y < a.num_objects(); ++y) {
      std::optional<SigmaF0Witness> w;
      for (int e = 0; e < a.num_objects() && !w; ++e)
        for (int f : a.cells1(x, e)) {
          if (!s.contains(f)) continue;
          for (int g : a.cells1(y, e))
            if (s.contains(g)) {
              w = SigmaF0Witness{x, y, e, f, g};
              break;
            }
          if (w) break;
        }
      if (!w) {
        out.holds = false;
        out.counterexample = std::make_pair(x, y);
        return out;
      }
      out.witnesses.push_back(*w);
    }
  return out;
}

SigmaF1Check check_sigmaF1(const Fin2Category& a, const SigmaClass& s) {
  SigmaF1Check out;
  for (int x = 0; x < a.num_objects(); ++x)
    for (int y = 0; y < a.num_objects(); ++y)
      for (int f : a.cells1(x, y))
        for (int g : a.cells1(x, y)) {
          if (!s.contains(g)) continue;
          std::optional<SigmaF1Witness> w;
          for (int z = 0; z < a.num_objects() && !w; ++z)
            for (int h : a.cells1(y, z)) {
              if (!s.contains(h)) continue;
              for (int al : a.cells2(a.hcompose1(h, f), a.hcompose1(h, g))) {
                if (s.contains(f) && a.inverse2(al) == -1) continue;
                w = SigmaF1Witness{f, g, h, al};
                break;
              }
              if (w) break;
            }
          if (!w) {
            out.holds = false;
            out.counterexample = std::make_pair(f, g);
            return out;
          }
          out.witnesses.push_back(*w);
        }
  return out;
}

SigmaF2Check check_sigmaF2(const Fin2Category& a, const SigmaClass& s, bool strict) {
  SigmaF2Check out;
  for (int f = 0; f < a.num_cells1(); ++f) {
    if (strict && !s.contains(f)) continue;
    for (int g : a.cells1(a.src(f), a.tgt(f))) {
      if (!s.contains(g)) continue;
      const auto& cells = a.cells2(f, g);
      for (std::size_t i = 0; i < cells.size(); ++i)
        for (std::size_t j = i + 1; j < cells.size(); ++j) {
          int al = cells[i], be = cells[j];
          std::optional<SigmaF2Witness> w;
          for (int z = 0; z < a.num_objects() && !w; ++z)
            for (int h : a.cells1(a.tgt(f), z))
              if (s.contains(h) && a.whisker_left(h, al) == a.whisker_left(h, be)) {
                w = SigmaF2Witness{al, be, h};
                break;
              }
          if (!w) {
            out.holds = false;
            out.counterexample = std::make_pair(al, be);
            return out;
          }
          out.witnesses.push_back(*w);
        }
    }
  }
  return out;
}

FilteredReport is_sigma_filtered(const Fin2Category& a, const SigmaClass& s,
                                 bool strict_f2) {
  FilteredReport r;
  r.nonempty = a.num_objects() > 0;
  r.f0 = check_sigmaF0(a, s);
  r.f1 = check_sigmaF1(a, s);
  r.f2 = check_sigmaF2(a, s, strict_f2);
  if (!r.nonempty)
    r.failing_axiom = "nonempty";
  else if (!r.f0.holds)
    r.failing_axiom = "sigmaF0";
  else if (!r.f1.holds)
    r.failing_axiom = "sigmaF1";
  else if (!r.f2.holds)
    r.failing_axiom = "sigmaF2";
  return r;
}

std::string describe(const FilteredReport& r, const Fin2Category& a) {
  std::ostringstream os;
  auto c1 = [&](int f) { return a.cell1_name(f); };
  auto c2 = [&](int al) { return a.cell2_name(al); };
  os << "nonempty: " << (r.nonempty ? "yes" : "no") << "\n";
  os << "sigmaF0: " << (r.f0.holds ? "holds" : "fails");
  if (r.f0.counterexample)
    os << " at (" << a.object_name(r.f0.counterexample->first) << ", "
       << a.object_name(r.f0.counterexample->second) << ")";
  os << "\n";
  os << "sigmaF1: " << (r.f1.holds ? "holds" : "fails");
  if (r.f1.counterexample)
    os << " at (" << c1(r.f1.counterexample->first) << ", "
       << c1(r.f1.counterexample->second) << ")";
  os << "\n";
  os << "sigmaF2: " << (r.f2.holds ? "holds" : "fails");
  if (r.f2.counterexample)
    os << " at (" << c2(r.f2.counterexample->first) << ", "
       << c2(r.f2.counterexample->second) << ")";
  os << "\n";
  os << "sigma-filtered: " << (r.holds() ? "yes" : "no (" + r.failing_axiom + ")") << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Planning: which 1-cells are searched and which follow from LC1.

namespace {

struct CellPlan {
  std::vector<int> order;                           // non-identity 1-cells
  std::vector<std::optional<std::pair<int, int>>> forced;  // f = g·h
};

CellPlan plan_cells(const Fin2Category& d) {
  const int n = d.num_cells1();
  std::vector<std::vector<std::pair<int, int>>> decomps(n);
  for (const auto& [g, h, gh] : d.hcompose1_triples()) {
    if (d.is_id1(g) || d.is_id1(h) || g == gh || h == gh) continue;
    decomps[gh].emplace_back(g, h);
  }
  const long kInf = LONG_MAX / 4;
  std::vector<long> rank(n, kInf);
  for (int f = 0; f < n; ++f)
    if (!d.is_id1(f) && decomps[f].empty()) rank[f] = 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (int f = 0; f < n; ++f)
      for (const auto& [g, h] : decomps[f])
        if (rank[g] + rank[h] < rank[f]) {
          rank[f] = rank[g] + rank[h];
          changed = true;
        }
  }
  CellPlan p;
  p.forced.assign(n, std::nullopt);
  for (int f = 0; f < n; ++f) {
    if (d.is_id1(f)) continue;
    if (rank[f] >= kInf) {
      rank[f] = 1;  // only decomposable through cycles: search it
      continue;
    }
    if (rank[f] == 1) continue;
    for (const auto& [g, h] : decomps[f])
      if (rank[g] + rank[h] == rank[f]) {
        p.forced[f] = std::make_pair(g, h);
        break;
      }
  }
  for (int f = 0; f < n; ++f)
    if (!d.is_id1(f)) p.order.push_back(f);
  std::stable_sort(p.order.begin(), p.order.end(),
                   [&](int x, int y) { return rank[x] < rank[y]; });
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// σ-cones inside A

Violations validate_cone(const TwoFunctor& g, const SigmaClass& s, const SigmaCone& c) {
  Violations out;
  const auto& d = *g.domain;
  const auto& a = *g.codomain;
  if (static_cast<int>(c.legs.size()) != d.num_objects() ||
      static_cast<int>(c.cells.size()) != d.num_cells1() || c.vertex < 0 ||
      c.vertex >= a.num_objects()) {
    out.push_back({"ConeShape", "legs or cells do not match the diagram"});
    return out;
  }
  for (int x = 0; x < d.num_objects(); ++x) {
    int l = c.legs[x];
    if (l < 0 || l >= a.num_cells1() || a.src(l) != g.objects[x] || a.tgt(l) != c.vertex) {
      out.push_back({"ConeLegType", d.object_name(x)});
      continue;
    }
    if (!s.contains(l)) out.push_back({"ConeLegNotInSigma", d.object_name(x)});
  }
  if (!out.empty()) return out;
  for (int f = 0; f < d.num_cells1(); ++f) {
    int th = c.cells[f];
    int x = d.src(f), y = d.tgt(f);
    if (th < 0 || th >= a.num_cells2() ||
        a.src2(th) != a.hcompose1(c.legs[y], g.cells1[f]) || a.tgt2(th) != c.legs[x]) {
      out.push_back({"ConeCellType", d.cell1_name(f)});
      continue;
    }
    if (s.contains(g.cells1[f]) && a.inverse2(th) == -1)
      out.push_back({"ConeNotInvertible", d.cell1_name(f)});
  }
  if (!out.empty()) return out;
  for (int x = 0; x < d.num_objects(); ++x)
    if (c.cells[d.id1(x)] != a.id2(c.legs[x])) out.push_back({"LC0", d.object_name(x)});
  for (const auto& [h, f, hf] : d.hcompose1_triples()) {
    int expect = a.vcompose(c.cells[f], a.whisker_right(c.cells[h], g.cells1[f]));
    if (c.cells[hf] != expect)
      out.push_back({"LC1", "(" + d.cell1_name(h) + ", " + d.cell1_name(f) + ")"});
  }
  for (int ga = 0; ga < d.num_cells2(); ++ga) {
    int f = d.src2(ga), f2 = d.tgt2(ga);
    int expect = a.vcompose(c.cells[f2], a.whisker_left(c.legs[d.tgt(f)], g.cells2[ga]));
    if (c.cells[f] != expect) out.push_back({"LC2", d.cell2_name(ga)});
  }
  return out;
}

ConeSearchResult sigma_cone_search(const TwoFunctor& g, const SigmaClass& s,
                                   const ConeSearchOptions& opts) {
  const auto& d = *g.domain;
  const auto& a = *g.codomain;
  if (static_cast<int>(s.members.size()) != a.num_cells1())
    throw InputError("cone search: Σ does not belong to the target 2-category");
  if (!validate_2functor(g).empty())
    throw InputError("cone search: the diagram is not a 2-functor");

  ConeSearchResult result;
  const int nx = d.num_objects();
  const CellPlan plan = plan_cells(d);
  std::vector<int> pos(d.num_cells1(), -1);
  for (std::size_t i = 0; i < plan.order.size(); ++i) pos[plan.order[i]] = static_cast<int>(i);

  // Constraints bucketed by the position of their last variable; -1 means
  // only legs are involved.
  struct Constraint {
    bool lc1;
    int a, b, c;  // LC1: (h, f, hf); LC2: 2-cell
  };
  std::map<int, std::vector<Constraint>> at;
  auto last = [&](std::initializer_list<int> cells) {
    int m = -1;
    for (int f : cells) m = std::max(m, pos[f]);
    return m;
  };
  for (const auto& [h, f, hf] : d.hcompose1_triples()) {
    if (d.is_id1(h) || d.is_id1(f)) continue;
    at[last({h, f, hf})].push_back({true, h, f, hf});
  }
  for (int ga = 0; ga < d.num_cells2(); ++ga) {
    if (d.is_id2(ga)) continue;
    at[last({d.src2(ga), d.tgt2(ga)})].push_back({false, ga, 0, 0});
  }

  // Leg pruning: for each non-identity f : X → Y, some candidate θ_f must
  // exist once both legs are known.
  std::vector<std::vector<int>> leg_checks(nx);
  for (int f : plan.order) leg_checks[std::max(d.src(f), d.tgt(f))].push_back(f);

  SigmaCone cur;
  cur.legs.assign(nx, -1);
  cur.cells.assign(d.num_cells1(), -1);
  bool stop = false;

  auto tick = [&]() {
    if (++result.nodes > opts.max_nodes) {
      result.capped = true;
      stop = true;
    }
    return !stop;
  };
  auto candidates = [&](int f) {
    std::vector<int> out;
    int src = a.hcompose1(cur.legs[d.tgt(f)], g.cells1[f]);
    for (int th : a.cells2(src, cur.legs[d.src(f)]))
      if (!s.contains(g.cells1[f]) || a.inverse2(th) != -1) out.push_back(th);
    return out;
  };
  auto holds = [&](const Constraint& c) {
    if (c.lc1) {
      return cur.cells[c.c] ==
             a.vcompose(cur.cells[c.b], a.whisker_right(cur.cells[c.a], g.cells1[c.b]));
    }
    int f = d.src2(c.a), f2 = d.tgt2(c.a);
    return cur.cells[f] ==
           a.vcompose(cur.cells[f2], a.whisker_left(cur.legs[d.tgt(f)], g.cells2[c.a]));
  };
  auto check_at = [&](int p) {
    auto it = at.find(p);
    if (it == at.end()) return true;
    for (const auto& c : it->second)
      if (!holds(c)) return false;
    return true;
  };

  std::function<void(std::size_t)> cells_dfs = [&](std::size_t i) {
    if (stop) return;
    if (i == plan.order.size()) {
      result.cones.push_back(cur);
      if (result.cones.size() >= opts.max_cones) stop = true;
      return;
    }
    int f = plan.order[i];
    if (plan.forced[f]) {
      auto [h, k] = *plan.forced[f];
      int th = a.vcompose(cur.cells[k], a.whisker_right(cur.cells[h], g.cells1[k]));
      if (th == -1 || (s.contains(g.cells1[f]) && a.inverse2(th) == -1)) return;
      if (!tick()) return;
      cur.cells[f] = th;
      if (check_at(static_cast<int>(i))) cells_dfs(i + 1);
      cur.cells[f] = -1;
      return;
    }
    for (int th : candidates(f)) {
      if (!tick()) return;
      cur.cells[f] = th;
      if (check_at(static_cast<int>(i))) cells_dfs(i + 1);
      if (stop) break;
    }
    cur.cells[f] = -1;
  };

  std::function<void(int)> legs_dfs = [&](int x) {
    if (stop) return;
    if (x == nx) {
      for (int y = 0; y < nx; ++y) cur.cells[d.id1(y)] = a.id2(cur.legs[y]);
      if (check_at(-1)) cells_dfs(0);
      return;
    }
    for (int l : a.cells1(g.objects[x], cur.vertex)) {
      if (!s.contains(l)) continue;
      if (!tick()) return;
      cur.legs[x] = l;
      bool ok = true;
      for (int f : leg_checks[x])
        if (candidates(f).empty()) {
          ok = false;
          break;
        }
      if (ok) legs_dfs(x + 1);
      if (stop) break;
    }
    cur.legs[x] = -1;
  };

  for (int e = 0; e < a.num_objects() && !stop; ++e) {
    cur.vertex = e;
    legs_dfs(0);
  }
  return result;
}

ComputadDiagram diagram_from_computad(const TwoComputad& k, const TwoCatRef& target,
                                      const std::map<std::string, int>& objects,
                                      const std::map<std::string, int>& arrows,
                                      const std::map<std::string, int>& cells) {
  ComputadDiagram out{free_2category(k), {}};
  out.functor = extend_2functor(out.free, target, objects, arrows, cells);
  return out;
}

// ---------------------------------------------------------------------------
// σ-cones in Cat

namespace {

// h_u ∘ (h_v F(u)) for u : A → B, v : B → C.
NatTransf lc1_composite(const CatDiagram& f, const CatCone& c, int v, int u) {
  return vertical_compose(c.cells[u], whisker_right(c.cells[v], f.cells1[u]));
}

// h_w ∘ (h_B F(γ)) for γ : u ⇒ w.
NatTransf lc2_composite(const CatDiagram& f, const CatCone& c, int gamma) {
  const auto& a = *f.index;
  int w = a.tgt2(gamma);
  int b = a.tgt(w);
  return vertical_compose(c.cells[w], whisker_left(c.legs[b], f.cells2[gamma]));
}

}  // namespace

Violations validate_cat_cone(const CatDiagram& f, const CatCone& c) {
  Violations out;
  const auto& a = *f.index;
  if (static_cast<int>(c.legs.size()) != a.num_objects() ||
      static_cast<int>(c.cells.size()) != a.num_cells1()) {
    out.push_back({"ConeShape", "legs or cells do not match the diagram"});
    return out;
  }
  for (int x = 0; x < a.num_objects(); ++x) {
    const auto& l = c.legs[x];
    if (!same_category(l.domain, f.values[x]) || !same_category(l.codomain, c.vertex)) {
      out.push_back({"ConeLegType", a.object_name(x)});
      continue;
    }
    for (const auto& v : validate_functor(l))
      out.push_back({"ConeLeg" + v.kind, a.object_name(x) + ": " + v.detail});
  }
  if (!out.empty()) return out;
  for (int u = 0; u < a.num_cells1(); ++u) {
    const auto& t = c.cells[u];
    if (!(t.source == compose(c.legs[a.tgt(u)], f.cells1[u])) ||
        !(t.target == c.legs[a.src(u)])) {
      out.push_back({"ConeCellType", a.cell1_name(u)});
      continue;
    }
    for (const auto& v : validate_nat_transf(t))
      out.push_back({"ConeCell" + v.kind, a.cell1_name(u) + ": " + v.detail});
    if (f.sigma.contains(u) && !is_invertible(t))
      out.push_back({"ConeNotInvertible", a.cell1_name(u)});
  }
  if (!out.empty()) return out;
  for (int x = 0; x < a.num_objects(); ++x)
    if (!(c.cells[a.id1(x)] == identity_transf(c.legs[x])))
      out.push_back({"LC0", a.object_name(x)});
  for (const auto& [v, u, vu] : a.hcompose1_triples())
    if (!(c.cells[vu] == lc1_composite(f, c, v, u)))
      out.push_back({"LC1", "(" + a.cell1_name(v) + ", " + a.cell1_name(u) + ")"});
  for (int ga = 0; ga < a.num_cells2(); ++ga)
    if (!(c.cells[a.src2(ga)] == lc2_composite(f, c, ga)))
      out.push_back({"LC2", a.cell2_name(ga)});
  return out;
}

Violations validate_cat_cone_morphism(const CatDiagram& f, const CatCone& source,
                                      const CatCone& target, const CatConeMorphism& m) {
  Violations out;
  const auto& a = *f.index;
  if (static_cast<int>(m.components.size()) != a.num_objects()) {
    out.push_back({"ConeMorphismShape", "one component per object expected"});
    return out;
  }
  for (int x = 0; x < a.num_objects(); ++x) {
    const auto& p = m.components[x];
    if (!(p.source == source.legs[x]) || !(p.target == target.legs[x])) {
      out.push_back({"ConeMorphismType", a.object_name(x)});
      continue;
    }
    for (const auto& v : validate_nat_transf(p))
      out.push_back({"ConeMorphism" + v.kind, a.object_name(x) + ": " + v.detail});
  }
  if (!out.empty()) return out;
  for (int u = 0; u < a.num_cells1(); ++u) {
    int x = a.src(u), y = a.tgt(u);
    auto lhs = vertical_compose(target.cells[u], whisker_right(m.components[y], f.cells1[u]));
    auto rhs = vertical_compose(m.components[x], source.cells[u]);
    if (!(lhs == rhs)) out.push_back({"LCM", a.cell1_name(u)});
  }
  return out;
}

CatConeMorphism identity_cone_morphism(const CatCone& c) {
  CatConeMorphism m;
  for (const auto& l : c.legs) m.components.push_back(identity_transf(l));
  return m;
}

CatConeMorphism compose_cone_morphisms(const CatConeMorphism& second,
                                       const CatConeMorphism& first) {
  CatConeMorphism m;
  for (std::size_t i = 0; i < first.components.size(); ++i)
    m.components.push_back(vertical_compose(second.components[i], first.components[i]));
  return m;
}

Enumeration<CatCone> enumerate_cat_cones(const CatDiagram& f, const CatRef& x,
                                         std::size_t cap) {
  const auto& a = *f.index;
  Enumeration<CatCone> result;
  std::vector<std::vector<Functor>> leg_options;
  for (int o = 0; o < a.num_objects(); ++o)
    leg_options.push_back(enumerate_functors(f.values[o], x).items);

  const CellPlan plan = plan_cells(a);
  std::vector<int> pos(a.num_cells1(), -1);
  for (std::size_t i = 0; i < plan.order.size(); ++i) pos[plan.order[i]] = static_cast<int>(i);
  std::map<int, std::vector<std::array<int, 3>>> lc1_at;  // (v, u, vu)
  std::map<int, std::vector<int>> lc2_at;
  for (const auto& [v, u, vu] : a.hcompose1_triples()) {
    if (a.is_id1(v) || a.is_id1(u)) continue;
    lc1_at[std::max({pos[v], pos[u], pos[vu]})].push_back({v, u, vu});
  }
  for (int ga = 0; ga < a.num_cells2(); ++ga) {
    if (a.is_id2(ga)) continue;
    lc2_at[std::max(pos[a.src2(ga)], pos[a.tgt2(ga)])].push_back(ga);
  }
  std::vector<std::vector<int>> leg_checks(a.num_objects());
  for (int u : plan.order) leg_checks[std::max(a.src(u), a.tgt(u))].push_back(u);

  CatCone cur{x, std::vector<Functor>(a.num_objects()), std::vector<NatTransf>(a.num_cells1())};
  std::vector<char> set(a.num_cells1(), 0);
  auto check_at = [&](int p) {
    if (auto it = lc1_at.find(p); it != lc1_at.end())
      for (const auto& [v, u, vu] : it->second)
        if (!(cur.cells[vu] == lc1_composite(f, cur, v, u))) return false;
    if (auto it = lc2_at.find(p); it != lc2_at.end())
      for (int ga : it->second)
        if (!(cur.cells[a.src2(ga)] == lc2_composite(f, cur, ga))) return false;
    return true;
  };
  std::function<void(std::size_t)> cells_dfs = [&](std::size_t i) {
    if (result.capped) return;
    if (i == plan.order.size()) {
      if (result.items.size() >= cap) {
        result.capped = true;
        return;
      }
      result.items.push_back(cur);
      return;
    }
    int u = plan.order[i];
    if (plan.forced[u]) {
      auto [v, w] = *plan.forced[u];
      cur.cells[u] = lc1_composite(f, cur, v, w);
      if (f.sigma.contains(u) && !is_invertible(cur.cells[u])) return;
      if (check_at(static_cast<int>(i))) cells_dfs(i + 1);
      return;
    }
    auto src = compose(cur.legs[a.tgt(u)], f.cells1[u]);
    for (auto& t : enumerate_nat_transfs(src, cur.legs[a.src(u)]).items) {
      if (f.sigma.contains(u) && !is_invertible(t)) continue;
      cur.cells[u] = std::move(t);
      if (check_at(static_cast<int>(i))) cells_dfs(i + 1);
      if (result.capped) return;
    }
  };
  std::function<void(int)> legs_dfs = [&](int o) {
    if (result.capped) return;
    if (o == a.num_objects()) {
      for (int y = 0; y < a.num_objects(); ++y)
        cur.cells[a.id1(y)] = identity_transf(cur.legs[y]);
      if (check_at(-1)) cells_dfs(0);
      return;
    }
    for (const auto& l : leg_options[o]) {
      cur.legs[o] = l;
      bool ok = true;
      for (int u : leg_checks[o]) {
        auto ts = enumerate_nat_transfs(compose(cur.legs[a.tgt(u)], f.cells1[u]),
                                        cur.legs[a.src(u)]);
        bool any = false;
        for (const auto& t : ts.items)
          if (!f.sigma.contains(u) || is_invertible(t)) {
            any = true;
            break;
          }
        if (!any) {
          ok = false;
          break;
        }
      }
      if (ok) legs_dfs(o + 1);
      if (result.capped) return;
    }
  };
  legs_dfs(0);
  return result;
}

Enumeration<CatConeMorphism> enumerate_cone_morphisms(const CatDiagram& f,
                                                      const CatCone& source,
                                                      const CatCone& target,
                                                      std::size_t cap) {
  const auto& a = *f.index;
  Enumeration<CatConeMorphism> result;
  std::vector<std::vector<int>> checks(a.num_objects());
  for (int u = 0; u < a.num_cells1(); ++u) checks[std::max(a.src(u), a.tgt(u))].push_back(u);
  CatConeMorphism cur{std::vector<NatTransf>(a.num_objects())};
  std::function<void(int)> dfs = [&](int o) {
    if (result.capped) return;
    if (o == a.num_objects()) {
      if (result.items.size() >= cap) {
        result.capped = true;
        return;
      }
      result.items.push_back(cur);
      return;
    }
    for (auto& t : enumerate_nat_transfs(source.legs[o], target.legs[o]).items) {
      cur.components[o] = std::move(t);
      bool ok = true;
      for (int u : checks[o]) {
        int x = a.src(u), y = a.tgt(u);
        auto lhs = vertical_compose(target.cells[u], whisker_right(cur.components[y], f.cells1[u]));
        auto rhs = vertical_compose(cur.components[x], source.cells[u]);
        if (!(lhs == rhs)) {
          ok = false;
          break;
        }
      }
      if (ok) dfs(o + 1);
      if (result.capped) return;
    }
  };
  dfs(0);
  return result;
}

}  // namespace sigmacolim
