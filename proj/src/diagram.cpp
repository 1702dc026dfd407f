#include "sigmacolim/diagram.hpp"

namespace sigmacolim {

DiagramBuilder::DiagramBuilder(TwoCatRef index, SigmaClass sigma)
    : index_(std::move(index)), sigma_(std::move(sigma)) {}

DiagramBuilder& DiagramBuilder::value(const std::string& object, CatRef c) {
  values_[index_->object_index(object)] = std::move(c);
  return *this;
}

DiagramBuilder& DiagramBuilder::on_cell1(
    const std::string& cell, const std::map<std::string, std::string>& objects,
    const std::map<std::string, std::string>& arrows) {
  int u = index_->cell1_index(cell);
  auto s = values_.find(index_->src(u));
  auto t = values_.find(index_->tgt(u));
  if (s == values_.end() || t == values_.end())
    throw InputError("diagram: values of the endpoints of '" + cell + "' are not set");
  cells1_[u] = make_functor(s->second, t->second, objects, arrows);
  return *this;
}

DiagramBuilder& DiagramBuilder::on_cell1(const std::string& cell, Functor f) {
  cells1_[index_->cell1_index(cell)] = std::move(f);
  return *this;
}

DiagramBuilder& DiagramBuilder::on_cell2(
    const std::string& cell, const std::map<std::string, std::string>& components) {
  cells2_[index_->cell2_index(cell)] = components;
  return *this;
}

CatDiagram DiagramBuilder::build() const {
  const auto& a = *index_;
  CatDiagram d{index_, sigma_, {}, {}, {}};
  for (int x = 0; x < a.num_objects(); ++x) {
    auto it = values_.find(x);
    if (it == values_.end())
      throw InputError("diagram: no value at object '" + a.object_name(x) + "'");
    d.values.push_back(it->second);
  }

  std::vector<std::optional<Functor>> f1(a.num_cells1());
  for (const auto& [u, f] : cells1_) f1[u] = f;
  for (int x = 0; x < a.num_objects(); ++x)
    if (!f1[a.id1(x)]) f1[a.id1(x)] = identity_functor(d.values[x]);
  const auto h1 = a.hcompose1_triples();
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [g, f, gf] : h1)
      if (!f1[gf] && f1[g] && f1[f]) {
        f1[gf] = compose(*f1[g], *f1[f]);
        changed = true;
      }
  }
  for (int u = 0; u < a.num_cells1(); ++u) {
    if (!f1[u]) throw InputError("diagram: 1-cell '" + a.cell1_name(u) + "' is unmapped");
    d.cells1.push_back(*f1[u]);
  }

  std::vector<std::optional<NatTransf>> f2(a.num_cells2());
  for (const auto& [al, comps] : cells2_)
    f2[al] = make_transf(d.cells1[a.src2(al)], d.cells1[a.tgt2(al)], comps);
  for (int u = 0; u < a.num_cells1(); ++u)
    if (!f2[a.id2(u)]) f2[a.id2(u)] = identity_transf(d.cells1[u]);
  const auto v2 = a.vcompose_triples();
  const auto h2 = a.hcompose2_triples();
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [be, al, r] : v2)
      if (!f2[r] && f2[be] && f2[al]) {
        f2[r] = vertical_compose(*f2[be], *f2[al]);
        changed = true;
      }
    for (const auto& [be, al, r] : h2)
      if (!f2[r] && f2[be] && f2[al]) {
        f2[r] = horizontal_compose(*f2[be], *f2[al]);
        changed = true;
      }
  }
  for (int al = 0; al < a.num_cells2(); ++al) {
    if (!f2[al]) throw InputError("diagram: 2-cell '" + a.cell2_name(al) + "' is unmapped");
    d.cells2.push_back(*f2[al]);
  }
  return d;
}

Violations validate_diagram(const CatDiagram& f) {
  Violations out;
  const auto& a = *f.index;
  if (static_cast<int>(f.values.size()) != a.num_objects() ||
      static_cast<int>(f.cells1.size()) != a.num_cells1() ||
      static_cast<int>(f.cells2.size()) != a.num_cells2()) {
    out.push_back({"DiagramShape", "tables do not match the index"});
    return out;
  }
  for (int x = 0; x < a.num_objects(); ++x)
    for (const auto& v : validate_category(f.at(x)))
      out.push_back({"Value" + v.kind, a.object_name(x) + ": " + v.detail});
  if (!out.empty()) return out;

  for (int u = 0; u < a.num_cells1(); ++u) {
    const auto& fu = f.cells1[u];
    if (!same_category(fu.domain, f.values[a.src(u)]) ||
        !same_category(fu.codomain, f.values[a.tgt(u)])) {
      out.push_back({"DiagramFunctorType", a.cell1_name(u)});
      continue;
    }
    for (const auto& v : validate_functor(fu))
      out.push_back({"Diagram" + v.kind, a.cell1_name(u) + ": " + v.detail});
  }
  for (int al = 0; al < a.num_cells2(); ++al) {
    const auto& t = f.cells2[al];
    if (!(t.source == f.cells1[a.src2(al)]) || !(t.target == f.cells1[a.tgt2(al)])) {
      out.push_back({"DiagramTransfType", a.cell2_name(al)});
      continue;
    }
    for (const auto& v : validate_nat_transf(t))
      out.push_back({"Diagram" + v.kind, a.cell2_name(al) + ": " + v.detail});
  }
  if (!out.empty()) return out;

  for (int x = 0; x < a.num_objects(); ++x)
    if (!(f.cells1[a.id1(x)] == identity_functor(f.values[x])))
      out.push_back({"DiagramIdentity1", a.object_name(x)});
  for (const auto& [g, h, gh] : a.hcompose1_triples())
    if (!(compose(f.cells1[g], f.cells1[h]) == f.cells1[gh]))
      out.push_back({"DiagramComposition1",
                     "F(" + a.cell1_name(gh) + ") != F(" + a.cell1_name(g) + ")F(" +
                         a.cell1_name(h) + ")"});
  for (int u = 0; u < a.num_cells1(); ++u)
    if (!(f.cells2[a.id2(u)] == identity_transf(f.cells1[u])))
      out.push_back({"DiagramIdentity2", a.cell1_name(u)});
  for (const auto& [be, al, r] : a.vcompose_triples())
    if (!(vertical_compose(f.cells2[be], f.cells2[al]) == f.cells2[r]))
      out.push_back({"DiagramVertical",
                     "(" + a.cell2_name(be) + ", " + a.cell2_name(al) + ")"});
  for (const auto& [be, al, r] : a.hcompose2_triples())
    if (!(horizontal_compose(f.cells2[be], f.cells2[al]) == f.cells2[r]))
      out.push_back({"DiagramHorizontal",
                     "(" + a.cell2_name(be) + ", " + a.cell2_name(al) + ")"});
  return out;
}

int apply_diagram(const CatDiagram& f, int x, int u) {
  if (u < 0 || u >= f.index->num_cells1()) throw InputError("apply: unknown 1-cell");
  if (x < 0 || x >= f.at(f.index->src(u)).num_objects())
    throw InputError("apply: object is not in the source value");
  return f.cells1[u].obj(x);
}

int apply_diagram_arrow(const CatDiagram& f, int xi, int u) {
  if (u < 0 || u >= f.index->num_cells1()) throw InputError("apply: unknown 1-cell");
  if (xi < 0 || xi >= f.at(f.index->src(u)).num_arrows())
    throw InputError("apply: arrow is not in the source value");
  return f.cells1[u].arr(xi);
}

int apply_diagram_cell(const CatDiagram& f, int gamma, int x) {
  if (gamma < 0 || gamma >= f.index->num_cells2()) throw InputError("apply: unknown 2-cell");
  int u = f.index->src2(gamma);
  if (x < 0 || x >= f.at(f.index->src(u)).num_objects())
    throw InputError("apply: object is not in the source value");
  return f.cells2[gamma].components[x];
}

CatDiagram constant_diagram(const TwoCatRef& index, const SigmaClass& sigma,
                            const CatRef& c) {
  CatDiagram d{index, sigma, std::vector<CatRef>(index->num_objects(), c), {}, {}};
  auto id = identity_functor(c);
  d.cells1.assign(index->num_cells1(), id);
  d.cells2.assign(index->num_cells2(), identity_transf(id));
  return d;
}

DiagramNatTransf identity_diagram_transf(const DiagramRef& f) {
  DiagramNatTransf t{f, f, {}};
  for (const auto& v : f->values) t.components.push_back(identity_functor(v));
  return t;
}

Violations validate_diagram_transf(const DiagramNatTransf& t) {
  Violations out;
  const auto& f = *t.source;
  const auto& g = *t.target;
  const auto& a = *f.index;
  if (f.index.get() != g.index.get() && !(*f.index == *g.index)) {
    out.push_back({"TransfIndexMismatch", "diagrams have different indices"});
    return out;
  }
  if (static_cast<int>(t.components.size()) != a.num_objects()) {
    out.push_back({"TransfShape", "one component per object expected"});
    return out;
  }
  for (int x = 0; x < a.num_objects(); ++x) {
    const auto& c = t.components[x];
    if (!same_category(c.domain, f.values[x]) || !same_category(c.codomain, g.values[x])) {
      out.push_back({"TransfComponentType", a.object_name(x)});
      continue;
    }
    for (const auto& v : validate_functor(c))
      out.push_back({"TransfComponent" + v.kind, a.object_name(x) + ": " + v.detail});
  }
  if (!out.empty()) return out;
  for (int u = 0; u < a.num_cells1(); ++u) {
    if (!(compose(g.cells1[u], t.components[a.src(u)]) ==
          compose(t.components[a.tgt(u)], f.cells1[u])))
      out.push_back({"TransfNaturality", a.cell1_name(u)});
  }
  for (int al = 0; al < a.num_cells2(); ++al) {
    int u = a.src2(al);
    const auto& tb = t.components[a.tgt(u)];
    const auto& ta = t.components[a.src(u)];
    for (int x = 0; x < f.at(a.src(u)).num_objects(); ++x) {
      if (tb.arr(f.cells2[al].components[x]) != g.cells2[al].components[ta.obj(x)]) {
        out.push_back({"TransfCellCompatibility",
                       a.cell2_name(al) + " at " + f.at(a.src(u)).object_name(x)});
      }
    }
  }
  return out;
}

}  // namespace sigmacolim
