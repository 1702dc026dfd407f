#include "sigmacolim/fincat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace sigmacolim {

// ---------------------------------------------------------------------------
// FinCategory

std::optional<int> FinCategory::find_object(std::string_view name) const {
  auto it = object_lookup_.find(std::string(name));
  if (it == object_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> FinCategory::find_arrow(std::string_view name) const {
  auto it = arrow_lookup_.find(std::string(name));
  if (it == arrow_lookup_.end()) return std::nullopt;
  return it->second;
}

int FinCategory::object_index(std::string_view name) const {
  auto x = find_object(name);
  if (!x) throw InputError("unknown object '" + std::string(name) + "'");
  return *x;
}

int FinCategory::arrow_index(std::string_view name) const {
  auto f = find_arrow(name);
  if (!f) throw InputError("unknown arrow '" + std::string(name) + "'");
  return *f;
}

std::vector<std::array<int, 3>> FinCategory::composition_triples() const {
  std::vector<std::array<int, 3>> out;
  out.reserve(compose_.size());
  for (const auto& [k, gf] : compose_) {
    out.push_back({static_cast<int>(k >> 32),
                   static_cast<int>(k & 0xffffffffu), gf});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool FinCategory::operator==(const FinCategory& other) const {
  if (objects_ != other.objects_ || identities_ != other.identities_)
    return false;
  if (arrows_.size() != other.arrows_.size()) return false;
  for (std::size_t i = 0; i < arrows_.size(); ++i) {
    const auto& a = arrows_[i];
    const auto& b = other.arrows_[i];
    if (a.name != b.name || a.src != b.src || a.tgt != b.tgt) return false;
  }
  return compose_ == other.compose_;
}

FinCategory::Builder& FinCategory::Builder::add_object(const std::string& name) {
  objects_.push_back(name);
  arrows_.push_back({"1_" + name, name, name});
  identities_.emplace_back(name, "1_" + name);
  return *this;
}

FinCategory::Builder& FinCategory::Builder::add_bare_object(
    const std::string& name) {
  objects_.push_back(name);
  return *this;
}

FinCategory::Builder& FinCategory::Builder::add_arrow(const std::string& name,
                                                      const std::string& src,
                                                      const std::string& tgt) {
  arrows_.push_back({name, src, tgt});
  return *this;
}

FinCategory::Builder& FinCategory::Builder::set_identity(
    const std::string& object, const std::string& arrow) {
  identities_.emplace_back(object, arrow);
  return *this;
}

FinCategory::Builder& FinCategory::Builder::set_compose(const std::string& g,
                                                        const std::string& f,
                                                        const std::string& gf) {
  compositions_.push_back({g, f, gf});
  return *this;
}

FinCategory FinCategory::Builder::build(bool fill_units) const {
  FinCategory c;
  c.objects_ = objects_;
  std::sort(c.objects_.begin(), c.objects_.end());
  for (std::size_t i = 0; i < c.objects_.size(); ++i) {
    if (i > 0 && c.objects_[i] == c.objects_[i - 1])
      throw InputError("duplicate object '" + c.objects_[i] + "'");
    c.object_lookup_.emplace(c.objects_[i], static_cast<int>(i));
  }
  std::vector<std::array<std::string, 3>> arrows = arrows_;
  std::sort(arrows.begin(), arrows.end());
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const auto& [name, s, t] = arrows[i];
    if (i > 0 && name == arrows[i - 1][0])
      throw InputError("duplicate arrow '" + name + "'");
    auto si = c.object_lookup_.find(s);
    auto ti = c.object_lookup_.find(t);
    if (si == c.object_lookup_.end() || ti == c.object_lookup_.end())
      throw InputError("arrow '" + name + "' has an unknown endpoint");
    c.arrows_.push_back({name, si->second, ti->second});
    c.arrow_lookup_.emplace(name, static_cast<int>(i));
  }
  c.identities_.assign(c.objects_.size(), -1);
  for (const auto& [obj, arr] : identities_) {
    int x = c.object_index(obj);
    int f = c.arrow_index(arr);
    if (c.identities_[x] != -1 && c.identities_[x] != f)
      throw InputError("object '" + obj + "' has two identities");
    c.identities_[x] = f;
  }
  for (const auto& [g, f, gf] : compositions_) {
    int gi = c.arrow_index(g), fi = c.arrow_index(f), gfi = c.arrow_index(gf);
    auto [it, inserted] = c.compose_.emplace(key(gi, fi), gfi);
    if (!inserted && it->second != gfi)
      throw InputError("conflicting composites for (" + g + ", " + f + ")");
  }
  if (fill_units) {
    for (int f = 0; f < c.num_arrows(); ++f) {
      int s = c.arrows_[f].src, t = c.arrows_[f].tgt;
      if (c.identities_[t] != -1) c.compose_.emplace(key(c.identities_[t], f), f);
      if (c.identities_[s] != -1) c.compose_.emplace(key(f, c.identities_[s]), f);
    }
  }
  const std::size_t n = c.objects_.size();
  c.homs_.assign(n * n, {});
  for (int f = 0; f < c.num_arrows(); ++f) {
    c.homs_[c.arrows_[f].src * n + c.arrows_[f].tgt].push_back(f);
  }
  c.inverses_.assign(c.arrows_.size(), -1);
  for (int f = 0; f < c.num_arrows(); ++f) {
    int s = c.arrows_[f].src, t = c.arrows_[f].tgt;
    if (c.identities_[s] == -1 || c.identities_[t] == -1) continue;
    for (int g : c.hom(t, s)) {
      if (c.compose(g, f) == c.identities_[s] &&
          c.compose(f, g) == c.identities_[t]) {
        c.inverses_[f] = g;
        break;
      }
    }
  }
  return c;
}

Violations validate_category(const FinCategory& c) {
  Violations out;
  for (int x = 0; x < c.num_objects(); ++x) {
    int id = c.identity(x);
    if (id == -1) {
      out.push_back({"MissingIdentity", c.object_name(x)});
    } else if (c.src(id) != x || c.tgt(id) != x) {
      out.push_back({"BadIdentity", c.object_name(x) + " -> " + c.arrow_name(id)});
    }
  }
  for (const auto& [g, f, gf] : c.composition_triples()) {
    if (c.src(g) != c.tgt(f)) {
      out.push_back({"SpuriousComposite",
                     "(" + c.arrow_name(g) + ", " + c.arrow_name(f) + ")"});
    } else if (c.src(gf) != c.src(f) || c.tgt(gf) != c.tgt(g)) {
      out.push_back({"BadCompositeEndpoints",
                     "(" + c.arrow_name(g) + ", " + c.arrow_name(f) + ") = " +
                         c.arrow_name(gf)});
    }
  }
  for (int f = 0; f < c.num_arrows(); ++f) {
    for (int y = 0; y < c.num_objects(); ++y) {
      for (int g : c.hom(c.tgt(f), y)) {
        if (c.compose(g, f) == -1)
          out.push_back({"MissingComposite",
                         "(" + c.arrow_name(g) + ", " + c.arrow_name(f) + ")"});
      }
    }
  }
  if (!out.empty()) return out;
  for (int f = 0; f < c.num_arrows(); ++f) {
    if (c.compose(c.identity(c.tgt(f)), f) != f ||
        c.compose(f, c.identity(c.src(f))) != f)
      out.push_back({"UnitLaw", c.arrow_name(f)});
  }
  for (int f = 0; f < c.num_arrows(); ++f) {
    for (int y = 0; y < c.num_objects(); ++y) {
      for (int g : c.hom(c.tgt(f), y)) {
        int gf = c.compose(g, f);
        for (int z = 0; z < c.num_objects(); ++z) {
          for (int h : c.hom(y, z)) {
            if (c.compose(h, gf) != c.compose(c.compose(h, g), f)) {
              out.push_back({"NonAssociative",
                             "(" + c.arrow_name(h) + ", " + c.arrow_name(g) +
                                 ", " + c.arrow_name(f) + ")"});
            }
          }
        }
      }
    }
  }
  return out;
}

std::optional<int> is_isomorphism(const FinCategory& c, int f) {
  if (f < 0 || f >= c.num_arrows()) throw InputError("arrow index out of range");
  int g = c.inverse(f);
  if (g == -1) return std::nullopt;
  return g;
}

std::optional<std::string> is_isomorphism(const FinCategory& c,
                                          std::string_view f) {
  auto g = is_isomorphism(c, c.arrow_index(f));
  if (!g) return std::nullopt;
  return c.arrow_name(*g);
}

// ---------------------------------------------------------------------------
// Functors and transformations

Functor identity_functor(const CatRef& c) {
  Functor f{c, c, {}, {}};
  f.objects.resize(c->num_objects());
  std::iota(f.objects.begin(), f.objects.end(), 0);
  f.arrows.resize(c->num_arrows());
  std::iota(f.arrows.begin(), f.arrows.end(), 0);
  return f;
}

Functor make_functor(const CatRef& domain, const CatRef& codomain,
                     const std::map<std::string, std::string>& objects,
                     const std::map<std::string, std::string>& arrows) {
  Functor f{domain, codomain, std::vector<int>(domain->num_objects(), -1),
            std::vector<int>(domain->num_arrows(), -1)};
  for (const auto& [x, y] : objects)
    f.objects[domain->object_index(x)] = codomain->object_index(y);
  for (int x = 0; x < domain->num_objects(); ++x) {
    if (f.objects[x] == -1)
      throw InputError("functor leaves object '" + domain->object_name(x) + "' unmapped");
    f.arrows[domain->identity(x)] = codomain->identity(f.objects[x]);
  }
  for (const auto& [a, b] : arrows)
    f.arrows[domain->arrow_index(a)] = codomain->arrow_index(b);
  for (int a = 0; a < domain->num_arrows(); ++a)
    if (f.arrows[a] == -1)
      throw InputError("functor leaves arrow '" + domain->arrow_name(a) + "' unmapped");
  return f;
}

bool same_category(const CatRef& a, const CatRef& b) {
  return a.get() == b.get() || *a == *b;
}

Functor collapse_functor(const CatRef& c, const CatRef& terminal) {
  return Functor{c, terminal, std::vector<int>(c->num_objects(), 0),
                 std::vector<int>(c->num_arrows(), 0)};
}

Functor compose(const Functor& g, const Functor& f) {
  if (!same_category(f.codomain, g.domain))
    throw InputError("functors are not composable");
  Functor out{f.domain, g.codomain, {}, {}};
  out.objects.reserve(f.objects.size());
  for (int x : f.objects) out.objects.push_back(g.obj(x));
  out.arrows.reserve(f.arrows.size());
  for (int a : f.arrows) out.arrows.push_back(g.arr(a));
  return out;
}

Violations validate_functor(const Functor& f) {
  Violations out;
  const auto& c = *f.domain;
  const auto& d = *f.codomain;
  if (static_cast<int>(f.objects.size()) != c.num_objects() ||
      static_cast<int>(f.arrows.size()) != c.num_arrows()) {
    out.push_back({"FunctorShape", "map sizes do not match the domain"});
    return out;
  }
  for (int x = 0; x < c.num_objects(); ++x) {
    if (f.obj(x) < 0 || f.obj(x) >= d.num_objects())
      out.push_back({"FunctorUnmapped", c.object_name(x)});
  }
  for (int a = 0; a < c.num_arrows(); ++a) {
    if (f.arr(a) < 0 || f.arr(a) >= d.num_arrows())
      out.push_back({"FunctorUnmapped", c.arrow_name(a)});
  }
  if (!out.empty()) return out;
  for (int a = 0; a < c.num_arrows(); ++a) {
    if (d.src(f.arr(a)) != f.obj(c.src(a)) || d.tgt(f.arr(a)) != f.obj(c.tgt(a)))
      out.push_back({"FunctorEndpoints", c.arrow_name(a)});
  }
  for (int x = 0; x < c.num_objects(); ++x) {
    if (f.arr(c.identity(x)) != d.identity(f.obj(x)))
      out.push_back({"FunctorIdentity", c.object_name(x)});
  }
  for (const auto& [g, h, gh] : c.composition_triples()) {
    if (d.compose(f.arr(g), f.arr(h)) != f.arr(gh))
      out.push_back({"FunctorComposition",
                     "(" + c.arrow_name(g) + ", " + c.arrow_name(h) + ")"});
  }
  return out;
}

bool is_isomorphism_of_categories(const Functor& f) {
  auto bijective = [](const std::vector<int>& map, int n) {
    if (static_cast<int>(map.size()) != n) return false;
    std::vector<char> hit(n, 0);
    for (int v : map) {
      if (v < 0 || v >= n || hit[v]) return false;
      hit[v] = 1;
    }
    return true;
  };
  return bijective(f.objects, f.codomain->num_objects()) &&
         bijective(f.arrows, f.codomain->num_arrows());
}

NatTransf identity_transf(const Functor& f) {
  NatTransf t{f, f, {}};
  for (int x : f.objects) t.components.push_back(f.codomain->identity(x));
  return t;
}

NatTransf make_transf(const Functor& source, const Functor& target,
                      const std::map<std::string, std::string>& components) {
  NatTransf t{source, target, std::vector<int>(source.domain->num_objects(), -1)};
  for (const auto& [x, a] : components)
    t.components[source.domain->object_index(x)] = source.codomain->arrow_index(a);
  for (int x = 0; x < source.domain->num_objects(); ++x)
    if (t.components[x] == -1)
      throw InputError("transformation lacks a component at '" +
                       source.domain->object_name(x) + "'");
  return t;
}

NatTransf horizontal_compose(const NatTransf& beta, const NatTransf& alpha) {
  NatTransf out{compose(beta.source, alpha.source), compose(beta.target, alpha.target), {}};
  const auto& e = *beta.source.codomain;
  for (std::size_t x = 0; x < alpha.components.size(); ++x) {
    int a = alpha.components[x];
    out.components.push_back(
        e.compose(beta.target.arr(a), beta.components[alpha.source.obj(static_cast<int>(x))]));
  }
  return out;
}

NatTransf vertical_compose(const NatTransf& beta, const NatTransf& alpha) {
  if (!(alpha.target == beta.source))
    throw InputError("transformations are not vertically composable");
  NatTransf out{alpha.source, beta.target, {}};
  const auto& d = *alpha.source.codomain;
  for (std::size_t x = 0; x < alpha.components.size(); ++x)
    out.components.push_back(d.compose(beta.components[x], alpha.components[x]));
  return out;
}

NatTransf whisker_left(const Functor& h, const NatTransf& alpha) {
  NatTransf out{compose(h, alpha.source), compose(h, alpha.target), {}};
  for (int a : alpha.components) out.components.push_back(h.arr(a));
  return out;
}

NatTransf whisker_right(const NatTransf& alpha, const Functor& k) {
  NatTransf out{compose(alpha.source, k), compose(alpha.target, k), {}};
  for (int x : k.objects) out.components.push_back(alpha.components[x]);
  return out;
}

Violations validate_nat_transf(const NatTransf& t) {
  Violations out;
  const auto& c = *t.source.domain;
  const auto& d = *t.source.codomain;
  if (static_cast<int>(t.components.size()) != c.num_objects()) {
    out.push_back({"TransfShape", "component count does not match the domain"});
    return out;
  }
  for (int x = 0; x < c.num_objects(); ++x) {
    int a = t.components[x];
    if (a < 0 || a >= d.num_arrows() || d.src(a) != t.source.obj(x) ||
        d.tgt(a) != t.target.obj(x)) {
      out.push_back({"TransfComponent", c.object_name(x)});
    }
  }
  if (!out.empty()) return out;
  for (int f = 0; f < c.num_arrows(); ++f) {
    int x = c.src(f), y = c.tgt(f);
    if (d.compose(t.target.arr(f), t.components[x]) !=
        d.compose(t.components[y], t.source.arr(f)))
      out.push_back({"Naturality", c.arrow_name(f)});
  }
  return out;
}

bool is_invertible(const NatTransf& t) {
  const auto& d = *t.source.codomain;
  return std::all_of(t.components.begin(), t.components.end(),
                     [&](int a) { return d.inverse(a) != -1; });
}

// ---------------------------------------------------------------------------
// Enumeration

Enumeration<Functor> enumerate_functors(const CatRef& c, const CatRef& d,
                                        std::size_t cap) {
  // Variables: object images (scheduled at first use) interleaved with
  // non-identity arrow images in index order. A composition constraint is
  // checked at the position of the last of its three cells to be assigned.
  struct Var {
    bool is_object;
    int index;
  };
  std::vector<Var> vars;
  std::vector<int> obj_pos(c->num_objects(), -1);
  std::vector<int> arr_pos(c->num_arrows(), -1);
  auto schedule_object = [&](int x) {
    if (obj_pos[x] == -1) {
      obj_pos[x] = static_cast<int>(vars.size());
      vars.push_back({true, x});
    }
  };
  for (int f = 0; f < c->num_arrows(); ++f) {
    if (c->is_identity(f)) continue;
    schedule_object(c->src(f));
    schedule_object(c->tgt(f));
    arr_pos[f] = static_cast<int>(vars.size());
    vars.push_back({false, f});
  }
  for (int x = 0; x < c->num_objects(); ++x) schedule_object(x);
  for (int f = 0; f < c->num_arrows(); ++f)
    if (c->is_identity(f)) arr_pos[f] = obj_pos[c->src(f)];

  std::vector<std::vector<std::array<int, 3>>> checks(vars.size());
  for (const auto& t : c->composition_triples()) {
    const auto& [g, f, gf] = t;
    if (c->is_identity(g) || c->is_identity(f)) continue;
    int last = std::max({arr_pos[g], arr_pos[f], arr_pos[gf]});
    checks[last].push_back(t);
  }

  Enumeration<Functor> result;
  Functor cur{c, d, std::vector<int>(c->num_objects(), -1),
              std::vector<int>(c->num_arrows(), -1)};
  std::function<void(std::size_t)> go = [&](std::size_t pos) {
    if (result.capped) return;
    if (pos == vars.size()) {
      if (result.items.size() >= cap) {
        result.capped = true;
        return;
      }
      result.items.push_back(cur);
      return;
    }
    const Var& v = vars[pos];
    auto consistent = [&]() {
      for (const auto& [g, f, gf] : checks[pos]) {
        if (d->compose(cur.arrows[g], cur.arrows[f]) != cur.arrows[gf])
          return false;
      }
      return true;
    };
    if (v.is_object) {
      int x = v.index;
      for (int y = 0; y < d->num_objects(); ++y) {
        cur.objects[x] = y;
        cur.arrows[c->identity(x)] = d->identity(y);
        if (consistent()) go(pos + 1);
        if (result.capped) return;
      }
      cur.objects[x] = -1;
      cur.arrows[c->identity(x)] = -1;
    } else {
      int f = v.index;
      for (int g : d->hom(cur.objects[c->src(f)], cur.objects[c->tgt(f)])) {
        cur.arrows[f] = g;
        if (consistent()) go(pos + 1);
        if (result.capped) return;
      }
      cur.arrows[f] = -1;
    }
  };
  go(0);
  return result;
}

Enumeration<NatTransf> enumerate_nat_transfs(const Functor& f,
                                             const Functor& g,
                                             std::size_t cap) {
  const auto& c = *f.domain;
  const auto& d = *f.codomain;
  std::vector<std::vector<int>> checks(c.num_objects());
  for (int a = 0; a < c.num_arrows(); ++a) {
    if (c.is_identity(a)) continue;
    checks[std::max(c.src(a), c.tgt(a))].push_back(a);
  }
  Enumeration<NatTransf> result;
  NatTransf cur{f, g, std::vector<int>(c.num_objects(), -1)};
  std::function<void(int)> go = [&](int x) {
    if (result.capped) return;
    if (x == c.num_objects()) {
      if (result.items.size() >= cap) {
        result.capped = true;
        return;
      }
      result.items.push_back(cur);
      return;
    }
    for (int a : d.hom(f.obj(x), g.obj(x))) {
      cur.components[x] = a;
      bool ok = true;
      for (int arr : checks[x]) {
        int s = c.src(arr), t = c.tgt(arr);
        if (d.compose(g.arr(arr), cur.components[s]) !=
            d.compose(cur.components[t], f.arr(arr))) {
          ok = false;
          break;
        }
      }
      if (ok) go(x + 1);
      if (result.capped) return;
    }
    cur.components[x] = -1;
  };
  go(0);
  return result;
}

// ---------------------------------------------------------------------------
// Functor categories

std::string functor_label(const Functor& f) {
  std::string s = "<";
  for (std::size_t a = 0; a < f.arrows.size(); ++a) {
    if (a) s += ",";
    s += f.codomain->arrow_name(f.arrows[a]);
  }
  return s + ">";
}

std::string transf_label(const NatTransf& t) {
  std::string s = "[";
  for (std::size_t x = 0; x < t.components.size(); ++x) {
    if (x) s += ",";
    s += t.source.codomain->arrow_name(t.components[x]);
  }
  return s + "]:" + functor_label(t.source) + "=>" + functor_label(t.target);
}

int FunctorCategory::object_of(const Functor& f) const {
  auto it = object_lookup_.find(functor_label(f));
  if (it == object_lookup_.end())
    throw InputError("functor is not an object of the functor category");
  return it->second;
}

int FunctorCategory::arrow_of(const NatTransf& t) const {
  auto it = arrow_lookup_.find(transf_label(t));
  if (it == arrow_lookup_.end())
    throw InputError("transformation is not an arrow of the functor category");
  return it->second;
}

FunctorCategory functor_category(const CatRef& c, const CatRef& w,
                                 std::size_t cap) {
  if (!validate_category(*c).empty() || !validate_category(*w).empty())
    throw InputError("functor_category needs valid categories");
  FunctorCategory out;
  out.base = c;
  out.weight = w;
  auto functors = enumerate_functors(w, c, cap);
  out.capped = functors.capped;

  FinCategory::Builder b;
  std::vector<std::string> labels;
  for (const auto& f : functors.items) {
    labels.push_back(functor_label(f));
    b.add_bare_object(labels.back());
  }
  struct Pending {
    NatTransf t;
    std::string label;
  };
  std::vector<Pending> transfs;
  std::map<std::string, int> by_label;
  // Arrows grouped by (source, target) so composites can be looked up by label.
  for (std::size_t i = 0; i < functors.items.size(); ++i) {
    for (std::size_t j = 0; j < functors.items.size(); ++j) {
      auto ts = enumerate_nat_transfs(functors.items[i], functors.items[j], cap);
      out.capped = out.capped || ts.capped;
      for (auto& t : ts.items) {
        std::string label = transf_label(t);
        b.add_arrow(label, labels[i], labels[j]);
        if (i == j && t == identity_transf(functors.items[i]))
          b.set_identity(labels[i], label);
        by_label.emplace(label, static_cast<int>(transfs.size()));
        transfs.push_back({std::move(t), label});
      }
    }
  }
  // Composite of α : F ⇒ G and β : G ⇒ H is componentwise.
  std::map<std::pair<std::string, std::string>, std::vector<int>> by_endpoints;
  for (std::size_t k = 0; k < transfs.size(); ++k) {
    by_endpoints[{functor_label(transfs[k].t.source),
                  functor_label(transfs[k].t.target)}]
        .push_back(static_cast<int>(k));
  }
  for (const auto& alpha : transfs) {
    for (const auto& f : labels) {
      auto it = by_endpoints.find({functor_label(alpha.t.target), f});
      if (it == by_endpoints.end()) continue;
      for (int k : it->second) {
        const auto& beta = transfs[k];
        NatTransf comp = vertical_compose(beta.t, alpha.t);
        b.set_compose(beta.label, alpha.label, transf_label(comp));
      }
    }
  }
  auto cat = b.build_shared(false);
  out.category = cat;
  out.functors.resize(cat->num_objects());
  for (std::size_t i = 0; i < functors.items.size(); ++i) {
    int idx = cat->object_index(labels[i]);
    out.functors[idx] = functors.items[i];
    out.object_lookup_.emplace(labels[i], idx);
  }
  out.transfs.resize(cat->num_arrows());
  for (auto& p : transfs) {
    int idx = cat->arrow_index(p.label);
    out.arrow_lookup_.emplace(p.label, idx);
    out.transfs[idx] = std::move(p.t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Products

int ProductCategory::object_of(int c, int d) const {
  return object_table[static_cast<std::size_t>(c) * second.codomain->num_objects() + d];
}

int ProductCategory::arrow_of(int f, int g) const {
  return arrow_table[static_cast<std::size_t>(f) * second.codomain->num_arrows() + g];
}

ProductCategory product_category(const CatRef& c, const CatRef& d) {
  if (!validate_category(*c).empty() || !validate_category(*d).empty())
    throw InputError("product_category needs valid categories");
  auto pair_name = [](const std::string& a, const std::string& b) {
    return "(" + a + "," + b + ")";
  };
  FinCategory::Builder b;
  for (int x = 0; x < c->num_objects(); ++x)
    for (int y = 0; y < d->num_objects(); ++y) {
      std::string o = pair_name(c->object_name(x), d->object_name(y));
      b.add_bare_object(o);
      b.set_identity(o, pair_name(c->arrow_name(c->identity(x)),
                                  d->arrow_name(d->identity(y))));
    }
  for (int f = 0; f < c->num_arrows(); ++f)
    for (int g = 0; g < d->num_arrows(); ++g)
      b.add_arrow(pair_name(c->arrow_name(f), d->arrow_name(g)),
                  pair_name(c->object_name(c->src(f)), d->object_name(d->src(g))),
                  pair_name(c->object_name(c->tgt(f)), d->object_name(d->tgt(g))));
  for (const auto& [f2, f1, f21] : c->composition_triples())
    for (const auto& [g2, g1, g21] : d->composition_triples())
      b.set_compose(pair_name(c->arrow_name(f2), d->arrow_name(g2)),
                    pair_name(c->arrow_name(f1), d->arrow_name(g1)),
                    pair_name(c->arrow_name(f21), d->arrow_name(g21)));
  ProductCategory out;
  auto cat = b.build_shared(false);
  out.category = cat;
  out.first = Functor{cat, c, std::vector<int>(cat->num_objects()),
                      std::vector<int>(cat->num_arrows())};
  out.second = Functor{cat, d, std::vector<int>(cat->num_objects()),
                       std::vector<int>(cat->num_arrows())};
  out.object_table.resize(static_cast<std::size_t>(c->num_objects()) * d->num_objects());
  out.arrow_table.resize(static_cast<std::size_t>(c->num_arrows()) * d->num_arrows());
  for (int x = 0; x < c->num_objects(); ++x)
    for (int y = 0; y < d->num_objects(); ++y) {
      int o = cat->object_index(pair_name(c->object_name(x), d->object_name(y)));
      out.object_table[static_cast<std::size_t>(x) * d->num_objects() + y] = o;
      out.first.objects[o] = x;
      out.second.objects[o] = y;
    }
  for (int f = 0; f < c->num_arrows(); ++f)
    for (int g = 0; g < d->num_arrows(); ++g) {
      int a = cat->arrow_index(pair_name(c->arrow_name(f), d->arrow_name(g)));
      out.arrow_table[static_cast<std::size_t>(f) * d->num_arrows() + g] = a;
      out.first.arrows[a] = f;
      out.second.arrows[a] = g;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Pseudo-equalizers

std::optional<int> PseudoEqualizer::find_object(
    const std::array<int, 4>& tuple) const {
  auto it = std::find(objects.begin(), objects.end(), tuple);
  if (it == objects.end()) return std::nullopt;
  return static_cast<int>(it - objects.begin());
}

std::optional<int> PseudoEqualizer::find_arrow(int src, int tgt, int a,
                                               int b) const {
  for (int k : category->hom(src, tgt)) {
    if (arrows[k] == std::make_pair(a, b)) return k;
  }
  return std::nullopt;
}

PseudoEqualizer pseudo_equalizer(const Functor& f, const Functor& g) {
  if (!same_category(f.domain, g.domain))
    throw InputError("pseudo_equalizer: functors have different domains");
  if (!same_category(f.codomain, g.codomain))
    throw InputError("pseudo_equalizer: functors have different codomains");
  const auto& c = *f.domain;
  const auto& d = *f.codomain;

  std::vector<std::array<int, 4>> tuples;
  for (int x = 0; x < c.num_objects(); ++x)
    for (int y = 0; y < d.num_objects(); ++y)
      for (int gamma : d.hom(f.obj(x), y)) {
        if (d.inverse(gamma) == -1) continue;
        for (int delta : d.hom(g.obj(x), y)) {
          if (d.inverse(delta) == -1) continue;
          tuples.push_back({x, y, gamma, delta});
        }
      }
  auto obj_name = [&](const std::array<int, 4>& t) {
    return "(" + c.object_name(t[0]) + "," + d.object_name(t[1]) + "," +
           d.arrow_name(t[2]) + "," + d.arrow_name(t[3]) + ")";
  };
  std::vector<std::string> names;
  FinCategory::Builder b;
  for (const auto& t : tuples) {
    names.push_back(obj_name(t));
    b.add_bare_object(names.back());
  }
  struct Arr {
    int s, t, a, bb;
    std::string name;
  };
  std::vector<Arr> arrs;
  std::map<std::array<int, 4>, int> arr_lookup;  // (s, t, a, b) → index in arrs
  for (std::size_t s = 0; s < tuples.size(); ++s)
    for (std::size_t t = 0; t < tuples.size(); ++t) {
      const auto& [x, y, gm, dl] = tuples[s];
      const auto& [x2, y2, gm2, dl2] = tuples[t];
      for (int a : c.hom(x, x2))
        for (int bb : d.hom(y, y2)) {
          if (d.compose(bb, gm) != d.compose(gm2, f.arr(a))) continue;
          if (d.compose(bb, dl) != d.compose(dl2, g.arr(a))) continue;
          std::string name = "(" + c.arrow_name(a) + "," + d.arrow_name(bb) +
                             ")[" + names[s] + "->" + names[t] + "]";
          b.add_arrow(name, names[s], names[t]);
          if (s == t && a == c.identity(x) && bb == d.identity(y))
            b.set_identity(names[s], name);
          arr_lookup.emplace(std::array<int, 4>{static_cast<int>(s),
                                                static_cast<int>(t), a, bb},
                             static_cast<int>(arrs.size()));
          arrs.push_back({static_cast<int>(s), static_cast<int>(t), a, bb, name});
        }
    }
  std::vector<std::vector<int>> out_of(tuples.size());
  for (std::size_t k = 0; k < arrs.size(); ++k) out_of[arrs[k].s].push_back(static_cast<int>(k));
  for (const auto& first : arrs)
    for (int k : out_of[first.t]) {
      const auto& second = arrs[k];
      int a = c.compose(second.a, first.a);
      int bb = d.compose(second.bb, first.bb);
      auto it = arr_lookup.find({first.s, second.t, a, bb});
      if (it != arr_lookup.end())
        b.set_compose(second.name, first.name, arrs[it->second].name);
    }

  PseudoEqualizer out;
  auto cat = b.build_shared(false);
  out.category = cat;
  out.objects.resize(cat->num_objects());
  out.projection = Functor{cat, f.domain, std::vector<int>(cat->num_objects()),
                           std::vector<int>(cat->num_arrows())};
  for (std::size_t s = 0; s < tuples.size(); ++s) {
    int idx = cat->object_index(names[s]);
    out.objects[idx] = tuples[s];
    out.projection.objects[idx] = tuples[s][0];
  }
  out.arrows.resize(cat->num_arrows());
  for (const auto& a : arrs) {
    int idx = cat->arrow_index(a.name);
    out.arrows[idx] = {a.a, a.bb};
    out.projection.arrows[idx] = a.a;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Equivalences

EquivalenceReport equivalence_check(const Functor& f) {
  const auto& c = *f.domain;
  const auto& d = *f.codomain;
  EquivalenceReport r;
  r.witnesses.assign(d.num_objects(), {-1, -1});
  for (int y = 0; y < d.num_objects(); ++y) {
    for (int x = 0; x < c.num_objects() && r.witnesses[y].first == -1; ++x) {
      for (int iso : d.hom(f.obj(x), y)) {
        if (d.inverse(iso) != -1) {
          r.witnesses[y] = {x, iso};
          break;
        }
      }
    }
    if (r.witnesses[y].first == -1 && r.essentially_surjective) {
      r.essentially_surjective = false;
      r.missing_object = y;
    }
  }
  for (int x = 0; x < c.num_objects(); ++x) {
    for (int x2 = 0; x2 < c.num_objects(); ++x2) {
      std::map<int, int> image;  // codomain arrow → first preimage
      for (int a : c.hom(x, x2)) {
        auto [it, inserted] = image.emplace(f.arr(a), a);
        if (!inserted && r.faithful) {
          r.faithful = false;
          r.not_faithful = std::make_pair(it->second, a);
        }
      }
      if (r.full) {
        for (int b : d.hom(f.obj(x), f.obj(x2))) {
          if (!image.count(b)) {
            r.full = false;
            r.not_full = std::array<int, 3>{x, x2, b};
            break;
          }
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Small categories

namespace cats {

CatRef empty() { return FinCategory::Builder{}.build_shared(); }

CatRef terminal() { return FinCategory::Builder{}.add_object("*").build_shared(); }

CatRef walking_arrow() {
  return FinCategory::Builder{}
      .add_object("0")
      .add_object("1")
      .add_arrow("f", "0", "1")
      .build_shared();
}

CatRef walking_iso() {
  return FinCategory::Builder{}
      .add_object("0")
      .add_object("1")
      .add_arrow("f", "0", "1")
      .add_arrow("g", "1", "0")
      .set_compose("g", "f", "1_0")
      .set_compose("f", "g", "1_1")
      .build_shared();
}

CatRef discrete(int n) {
  FinCategory::Builder b;
  for (int i = 0; i < n; ++i) b.add_object(std::to_string(i));
  return b.build_shared();
}

CatRef chain(int n) {
  FinCategory::Builder b;
  for (int i = 0; i < n; ++i) b.add_object(std::to_string(i));
  auto name = [](int i, int j) {
    return "a" + std::to_string(i) + std::to_string(j);
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      b.add_arrow(name(i, j), std::to_string(i), std::to_string(j));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        b.set_compose(name(j, k), name(i, j), name(i, k));
  return b.build_shared();
}

}  // namespace cats

}  // namespace sigmacolim
