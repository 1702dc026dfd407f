#include "sigmacolim/two_cat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <tuple>

namespace sigmacolim {

// ---------------------------------------------------------------------------
// Fin2Category

const std::vector<int>& Fin2Category::cells2(int f, int g) const {
  static const std::vector<int> kEmpty;
  auto it = homs2_.find({f, g});
  return it == homs2_.end() ? kEmpty : it->second;
}

namespace {

template <typename Map>
std::optional<int> find_in(const Map& m, std::string_view name) {
  auto it = m.find(std::string(name));
  if (it == m.end()) return std::nullopt;
  return it->second;
}

}  // namespace

std::optional<int> Fin2Category::find_object(std::string_view name) const {
  return find_in(object_lookup_, name);
}
std::optional<int> Fin2Category::find_cell1(std::string_view name) const {
  return find_in(cell1_lookup_, name);
}
std::optional<int> Fin2Category::find_cell2(std::string_view name) const {
  return find_in(cell2_lookup_, name);
}

int Fin2Category::object_index(std::string_view name) const {
  auto x = find_object(name);
  if (!x) throw InputError("unknown object '" + std::string(name) + "'");
  return *x;
}
int Fin2Category::cell1_index(std::string_view name) const {
  auto x = find_cell1(name);
  if (!x) throw InputError("unknown 1-cell '" + std::string(name) + "'");
  return *x;
}
int Fin2Category::cell2_index(std::string_view name) const {
  auto x = find_cell2(name);
  if (!x) throw InputError("unknown 2-cell '" + std::string(name) + "'");
  return *x;
}

std::vector<std::array<int, 3>> Fin2Category::triples(const Table& t) {
  std::vector<std::array<int, 3>> out;
  out.reserve(t.size());
  for (const auto& [k, v] : t)
    out.push_back({static_cast<int>(k >> 32), static_cast<int>(k & 0xffffffffu), v});
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::array<int, 3>> Fin2Category::vcompose_triples() const {
  return triples(vcomp_);
}
std::vector<std::array<int, 3>> Fin2Category::hcompose1_triples() const {
  return triples(hcomp1_);
}
std::vector<std::array<int, 3>> Fin2Category::hcompose2_triples() const {
  return triples(hcomp2_);
}

bool Fin2Category::operator==(const Fin2Category& o) const {
  if (objects_ != o.objects_ || id1_ != o.id1_ || id2_ != o.id2_) return false;
  if (cells1_.size() != o.cells1_.size() || cells2_.size() != o.cells2_.size())
    return false;
  for (std::size_t i = 0; i < cells1_.size(); ++i) {
    if (cells1_[i].name != o.cells1_[i].name || cells1_[i].src != o.cells1_[i].src ||
        cells1_[i].tgt != o.cells1_[i].tgt)
      return false;
  }
  for (std::size_t i = 0; i < cells2_.size(); ++i) {
    if (cells2_[i].name != o.cells2_[i].name || cells2_[i].src != o.cells2_[i].src ||
        cells2_[i].tgt != o.cells2_[i].tgt)
      return false;
  }
  return vcomp_ == o.vcomp_ && hcomp1_ == o.hcomp1_ && hcomp2_ == o.hcomp2_;
}

// ---------------------------------------------------------------------------
// Builder

Fin2Category::Builder& Fin2Category::Builder::add_object(const std::string& name) {
  add_bare_object(name);
  add_cell1("1_" + name, name, name);
  set_id1(name, "1_" + name);
  return *this;
}

Fin2Category::Builder& Fin2Category::Builder::add_cell1(const std::string& name,
                                                        const std::string& src,
                                                        const std::string& tgt) {
  add_bare_cell1(name, src, tgt);
  cells2_.push_back({"1_" + name, name, name});
  set_id2(name, "1_" + name);
  return *this;
}

Fin2Category::Builder& Fin2Category::Builder::add_cell2(const std::string& name,
                                                        const std::string& src,
                                                        const std::string& tgt) {
  cells2_.push_back({name, src, tgt});
  return *this;
}

Fin2Category::Builder& Fin2Category::Builder::add_bare_object(
    const std::string& name) {
  objects_.push_back(name);
  return *this;
}

Fin2Category::Builder& Fin2Category::Builder::add_bare_cell1(
    const std::string& name, const std::string& src, const std::string& tgt) {
  cells1_.push_back({name, src, tgt});
  return *this;
}

Fin2Category::Builder& Fin2Category::Builder::set_id1(const std::string& object,
                                                      const std::string& cell) {
  id1_.emplace_back(object, cell);
  return *this;
}

Fin2Category::Builder& Fin2Category::Builder::set_id2(const std::string& cell1,
                                                      const std::string& cell2) {
  id2_.emplace_back(cell1, cell2);
  return *this;
}

Fin2Category::Builder& Fin2Category::Builder::set_vcompose(
    const std::string& beta, const std::string& alpha, const std::string& r) {
  vcomp_.push_back({beta, alpha, r});
  return *this;
}

Fin2Category::Builder& Fin2Category::Builder::set_hcompose1(
    const std::string& g, const std::string& f, const std::string& r) {
  hcomp1_.push_back({g, f, r});
  return *this;
}

Fin2Category::Builder& Fin2Category::Builder::set_hcompose2(
    const std::string& beta, const std::string& alpha, const std::string& r) {
  hcomp2_.push_back({beta, alpha, r});
  return *this;
}

namespace {

// Sorts names, rejects duplicates and fills the lookup.
std::vector<std::string> sorted_unique(std::vector<std::string> names,
                                       std::unordered_map<std::string, int>& lookup,
                                       const char* what) {
  std::sort(names.begin(), names.end());
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0 && names[i] == names[i - 1])
      throw InputError(std::string("duplicate ") + what + " '" + names[i] + "'");
    lookup.emplace(names[i], static_cast<int>(i));
  }
  return names;
}

}  // namespace

Fin2Category Fin2Category::Builder::build(bool fill_units) const {
  Fin2Category a;
  a.objects_ = sorted_unique(objects_, a.object_lookup_, "object");

  std::vector<std::string> names;
  std::map<std::string, std::pair<std::string, std::string>> ends;
  for (const auto& [n, s, t] : cells1_) {
    names.push_back(n);
    ends[n] = {s, t};
  }
  names = sorted_unique(names, a.cell1_lookup_, "1-cell");
  for (const auto& n : names) {
    const auto& [s, t] = ends[n];
    auto si = a.find_object(s), ti = a.find_object(t);
    if (!si || !ti) throw InputError("1-cell '" + n + "' has an unknown endpoint");
    a.cells1_.push_back({n, *si, *ti});
  }

  names.clear();
  ends.clear();
  for (const auto& [n, s, t] : cells2_) {
    names.push_back(n);
    ends[n] = {s, t};
  }
  names = sorted_unique(names, a.cell2_lookup_, "2-cell");
  for (const auto& n : names) {
    const auto& [s, t] = ends[n];
    auto si = a.find_cell1(s), ti = a.find_cell1(t);
    if (!si || !ti) throw InputError("2-cell '" + n + "' has an unknown boundary");
    a.cells2_.push_back({n, *si, *ti});
  }

  a.id1_.assign(a.objects_.size(), -1);
  for (const auto& [o, c] : id1_) {
    int x = a.object_index(o), f = a.cell1_index(c);
    if (a.id1_[x] != -1 && a.id1_[x] != f)
      throw InputError("object '" + o + "' has two identity 1-cells");
    a.id1_[x] = f;
  }
  a.id2_.assign(a.cells1_.size(), -1);
  for (const auto& [c1, c2] : id2_) {
    int f = a.cell1_index(c1), al = a.cell2_index(c2);
    if (a.id2_[f] != -1 && a.id2_[f] != al)
      throw InputError("1-cell '" + c1 + "' has two identity 2-cells");
    a.id2_[f] = al;
  }

  auto fill = [](Table& t, const std::vector<Triple>& entries,
                 const std::function<int(std::string_view)>& index,
                 const char* what) {
    for (const auto& [l, r, v] : entries) {
      auto [it, inserted] = t.emplace(key(index(l), index(r)), index(v));
      if (!inserted && it->second != index(v))
        throw InputError(std::string("conflicting ") + what + " for (" + l +
                         ", " + r + ")");
    }
  };
  auto c1 = [&](std::string_view n) { return a.cell1_index(n); };
  auto c2 = [&](std::string_view n) { return a.cell2_index(n); };
  fill(a.vcomp_, vcomp_, c2, "vertical composites");
  fill(a.hcomp1_, hcomp1_, c1, "horizontal composites");
  fill(a.hcomp2_, hcomp2_, c2, "horizontal composites");

  if (fill_units) {
    for (int f = 0; f < a.num_cells1(); ++f) {
      int s = a.src(f), t = a.tgt(f);
      if (a.id1_[t] != -1) a.hcomp1_.emplace(key(a.id1_[t], f), f);
      if (a.id1_[s] != -1) a.hcomp1_.emplace(key(f, a.id1_[s]), f);
    }
    for (int al = 0; al < a.num_cells2(); ++al) {
      int f = a.src2(al), g = a.tgt2(al);
      if (a.id2_[g] != -1) a.vcomp_.emplace(key(a.id2_[g], al), al);
      if (a.id2_[f] != -1) a.vcomp_.emplace(key(al, a.id2_[f]), al);
      int x = a.src(f), y = a.tgt(f);
      if (a.id1_[y] != -1 && a.id2_[a.id1_[y]] != -1)
        a.hcomp2_.emplace(key(a.id2_[a.id1_[y]], al), al);
      if (a.id1_[x] != -1 && a.id2_[a.id1_[x]] != -1)
        a.hcomp2_.emplace(key(al, a.id2_[a.id1_[x]]), al);
    }
    for (const auto& [k, gf] : a.hcomp1_) {
      int g = static_cast<int>(k >> 32), f = static_cast<int>(k & 0xffffffffu);
      if (a.id2_[g] != -1 && a.id2_[f] != -1 && a.id2_[gf] != -1)
        a.hcomp2_.emplace(key(a.id2_[g], a.id2_[f]), a.id2_[gf]);
    }
  }

  const std::size_t n = a.objects_.size();
  a.homs1_.assign(n * n, {});
  for (int f = 0; f < a.num_cells1(); ++f)
    a.homs1_[a.src(f) * n + a.tgt(f)].push_back(f);
  for (int al = 0; al < a.num_cells2(); ++al)
    a.homs2_[{a.src2(al), a.tgt2(al)}].push_back(al);

  a.inverse2_.assign(a.cells2_.size(), -1);
  for (int al = 0; al < a.num_cells2(); ++al) {
    int f = a.src2(al), g = a.tgt2(al);
    if (a.id2_[f] == -1 || a.id2_[g] == -1) continue;
    for (int be : a.cells2(g, f)) {
      if (a.vcompose(be, al) == a.id2_[f] && a.vcompose(al, be) == a.id2_[g]) {
        a.inverse2_[al] = be;
        break;
      }
    }
  }
  return a;
}

// ---------------------------------------------------------------------------
// Validation

FinCategory hom_category(const Fin2Category& a, int x, int y) {
  if (x < 0 || y < 0 || x >= a.num_objects() || y >= a.num_objects())
    throw InputError("hom_category: object index out of range");
  FinCategory::Builder b;
  for (int f : a.cells1(x, y)) {
    b.add_bare_object(a.cell1_name(f));
    if (a.id2(f) != -1) b.set_identity(a.cell1_name(f), a.cell2_name(a.id2(f)));
  }
  for (int f : a.cells1(x, y))
    for (int g : a.cells1(x, y))
      for (int al : a.cells2(f, g)) b.add_arrow(a.cell2_name(al), a.cell1_name(f), a.cell1_name(g));
  for (int f : a.cells1(x, y))
    for (int g : a.cells1(x, y))
      for (int al : a.cells2(f, g))
        for (int h : a.cells1(x, y))
          for (int be : a.cells2(g, h)) {
            int r = a.vcompose(be, al);
            if (r != -1 && a.src2(r) == f && a.tgt2(r) == h)
              b.set_compose(a.cell2_name(be), a.cell2_name(al), a.cell2_name(r));
          }
  return b.build(false);
}

FinCategory hom_category(const Fin2Category& a, std::string_view x,
                         std::string_view y) {
  return hom_category(a, a.object_index(x), a.object_index(y));
}

Violations validate_2category(const Fin2Category& a) {
  Violations out;
  auto c1 = [&](int f) { return a.cell1_name(f); };
  auto c2 = [&](int al) { return a.cell2_name(al); };
  auto pair = [](const std::string& l, const std::string& r) {
    return "(" + l + ", " + r + ")";
  };

  for (int x = 0; x < a.num_objects(); ++x) {
    int i = a.id1(x);
    if (i == -1)
      out.push_back({"MissingIdentity1", a.object_name(x)});
    else if (a.src(i) != x || a.tgt(i) != x)
      out.push_back({"BadIdentity1", a.object_name(x)});
  }
  for (int f = 0; f < a.num_cells1(); ++f) {
    int i = a.id2(f);
    if (i == -1)
      out.push_back({"MissingIdentity2", c1(f)});
    else if (a.src2(i) != f || a.tgt2(i) != f)
      out.push_back({"BadIdentity2", c1(f)});
  }
  for (int al = 0; al < a.num_cells2(); ++al) {
    int f = a.src2(al), g = a.tgt2(al);
    if (a.src(f) != a.src(g) || a.tgt(f) != a.tgt(g))
      out.push_back({"NonParallel2Cell", c2(al)});
  }
  if (!out.empty()) return out;

  // Vertical structure: every hom is a category.
  for (int x = 0; x < a.num_objects(); ++x)
    for (int y = 0; y < a.num_objects(); ++y) {
      if (a.cells1(x, y).empty()) continue;
      for (const auto& v : validate_category(hom_category(a, x, y)))
        out.push_back({"Vertical" + v.kind,
                       a.object_name(x) + "->" + a.object_name(y) + ": " + v.detail});
    }
  for (const auto& [be, al, r] : a.vcompose_triples()) {
    if (a.tgt2(al) != a.src2(be) || a.src2(r) != a.src2(al) || a.tgt2(r) != a.tgt2(be))
      out.push_back({"SpuriousVertical", pair(c2(be), c2(al))});
  }

  // Horizontal composition of 1-cells.
  for (const auto& [g, f, gf] : a.hcompose1_triples()) {
    if (a.tgt(f) != a.src(g) || a.src(gf) != a.src(f) || a.tgt(gf) != a.tgt(g))
      out.push_back({"BadHorizontal1", pair(c1(g), c1(f))});
  }
  for (int f = 0; f < a.num_cells1(); ++f)
    for (int y = 0; y < a.num_objects(); ++y)
      for (int g : a.cells1(a.tgt(f), y))
        if (a.hcompose1(g, f) == -1)
          out.push_back({"MissingHorizontal1", pair(c1(g), c1(f))});
  if (!out.empty()) return out;

  for (int f = 0; f < a.num_cells1(); ++f) {
    if (a.hcompose1(a.id1(a.tgt(f)), f) != f || a.hcompose1(f, a.id1(a.src(f))) != f)
      out.push_back({"UnitLaw1", c1(f)});
  }
  for (int f = 0; f < a.num_cells1(); ++f)
    for (int y = 0; y < a.num_objects(); ++y)
      for (int g : a.cells1(a.tgt(f), y))
        for (int z = 0; z < a.num_objects(); ++z)
          for (int h : a.cells1(y, z)) {
            if (a.hcompose1(h, a.hcompose1(g, f)) != a.hcompose1(a.hcompose1(h, g), f))
              out.push_back({"NonAssociative1",
                             "(" + c1(h) + ", " + c1(g) + ", " + c1(f) + ")"});
          }

  // Horizontal composition of 2-cells: totality, boundaries, units.
  std::vector<std::vector<int>> by_src_object(a.num_objects());
  for (int al = 0; al < a.num_cells2(); ++al)
    by_src_object[a.src(a.src2(al))].push_back(al);
  for (int al = 0; al < a.num_cells2(); ++al) {
    int y = a.tgt(a.src2(al));
    for (int be : by_src_object[y]) {
      int r = a.hcompose2(be, al);
      if (r == -1) {
        out.push_back({"MissingHorizontal2", pair(c2(be), c2(al))});
        continue;
      }
      if (a.src2(r) != a.hcompose1(a.src2(be), a.src2(al)) ||
          a.tgt2(r) != a.hcompose1(a.tgt2(be), a.tgt2(al)))
        out.push_back({"BadHorizontal2", pair(c2(be), c2(al))});
    }
  }
  for (const auto& [be, al, r] : a.hcompose2_triples()) {
    if (a.tgt(a.src2(al)) != a.src(a.src2(be)))
      out.push_back({"SpuriousHorizontal2", pair(c2(be), c2(al))});
  }
  if (!out.empty()) return out;

  for (int al = 0; al < a.num_cells2(); ++al) {
    int f = a.src2(al);
    if (a.hcompose2(a.id2(a.id1(a.tgt(f))), al) != al ||
        a.hcompose2(al, a.id2(a.id1(a.src(f)))) != al)
      out.push_back({"UnitLaw2", c2(al)});
  }
  for (const auto& [g, f, gf] : a.hcompose1_triples()) {
    if (a.hcompose2(a.id2(g), a.id2(f)) != a.id2(gf))
      out.push_back({"IdentityInterchange", pair(c1(g), c1(f))});
  }
  for (int al = 0; al < a.num_cells2(); ++al)
    for (int be : by_src_object[a.tgt(a.src2(al))])
      for (int ga : by_src_object[a.tgt(a.src2(be))]) {
        if (a.hcompose2(ga, a.hcompose2(be, al)) != a.hcompose2(a.hcompose2(ga, be), al))
          out.push_back({"NonAssociative2",
                         "(" + c2(ga) + ", " + c2(be) + ", " + c2(al) + ")"});
      }

  // Interchange: (β'∘β)·(α'∘α) = (β'·α')∘(β·α).
  for (int al = 0; al < a.num_cells2(); ++al) {
    for (int al2 : by_src_object[a.src(a.src2(al))]) {
      if (a.src2(al2) != a.tgt2(al)) continue;
      int y = a.tgt(a.src2(al));
      for (int be : by_src_object[y])
        for (int be2 : by_src_object[y]) {
          if (a.src2(be2) != a.tgt2(be)) continue;
          int lhs = a.hcompose2(a.vcompose(be2, be), a.vcompose(al2, al));
          int rhs = a.vcompose(a.hcompose2(be2, al2), a.hcompose2(be, al));
          if (lhs != rhs)
            out.push_back({"InterchangeViolation",
                           "(" + c2(be2) + " o " + c2(be) + ") * (" + c2(al2) +
                               " o " + c2(al) + ")"});
        }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sigma classes

SigmaClass sigma_all(const TwoCatRef& a) {
  return SigmaClass{a, std::vector<char>(a->num_cells1(), 1)};
}

SigmaClass sigma_identities(const TwoCatRef& a) {
  SigmaClass s{a, std::vector<char>(a->num_cells1(), 0)};
  for (int x = 0; x < a->num_objects(); ++x)
    if (a->id1(x) != -1) s.members[a->id1(x)] = 1;
  return s;
}

SigmaClass sigma_from_names(const TwoCatRef& a,
                            const std::vector<std::string>& names) {
  SigmaClass s{a, std::vector<char>(a->num_cells1(), 0)};
  for (const auto& n : names) s.members[a->cell1_index(n)] = 1;
  return s;
}

std::vector<std::string> sigma_names(const SigmaClass& s) {
  std::vector<std::string> out;
  for (int f = 0; f < s.owner->num_cells1(); ++f)
    if (s.contains(f)) out.push_back(s.owner->cell1_name(f));
  return out;
}

Violations validate_sigma(const SigmaClass& s) {
  Violations out;
  const auto& a = *s.owner;
  if (static_cast<int>(s.members.size()) != a.num_cells1()) {
    out.push_back({"SigmaShape", "membership vector does not match the 1-cells"});
    return out;
  }
  for (int x = 0; x < a.num_objects(); ++x) {
    if (a.id1(x) == -1 || !s.contains(a.id1(x)))
      out.push_back({"SigmaMissingIdentity", a.object_name(x)});
  }
  for (const auto& [g, f, gf] : a.hcompose1_triples()) {
    if (s.contains(g) && s.contains(f) && !s.contains(gf))
      out.push_back({"SigmaNotClosed", "(" + a.cell1_name(g) + ", " +
                                           a.cell1_name(f) + ") = " +
                                           a.cell1_name(gf)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// 2-functors

TwoFunctor identity_2functor(const TwoCatRef& a) {
  TwoFunctor g{a, a, {}, {}, {}};
  g.objects.resize(a->num_objects());
  std::iota(g.objects.begin(), g.objects.end(), 0);
  g.cells1.resize(a->num_cells1());
  std::iota(g.cells1.begin(), g.cells1.end(), 0);
  g.cells2.resize(a->num_cells2());
  std::iota(g.cells2.begin(), g.cells2.end(), 0);
  return g;
}

TwoFunctor collapse_2functor(const TwoCatRef& a, const TwoCatRef& point) {
  return TwoFunctor{a, point, std::vector<int>(a->num_objects(), 0),
                    std::vector<int>(a->num_cells1(), 0),
                    std::vector<int>(a->num_cells2(), 0)};
}

Violations validate_2functor(const TwoFunctor& g) {
  Violations out;
  const auto& d = *g.domain;
  const auto& c = *g.codomain;
  if (static_cast<int>(g.objects.size()) != d.num_objects() ||
      static_cast<int>(g.cells1.size()) != d.num_cells1() ||
      static_cast<int>(g.cells2.size()) != d.num_cells2()) {
    out.push_back({"TwoFunctorShape", "map sizes do not match the domain"});
    return out;
  }
  for (int x : g.objects)
    if (x < 0 || x >= c.num_objects()) out.push_back({"TwoFunctorUnmapped", "object"});
  for (int f : g.cells1)
    if (f < 0 || f >= c.num_cells1()) out.push_back({"TwoFunctorUnmapped", "1-cell"});
  for (int al : g.cells2)
    if (al < 0 || al >= c.num_cells2()) out.push_back({"TwoFunctorUnmapped", "2-cell"});
  if (!out.empty()) return out;

  for (int f = 0; f < d.num_cells1(); ++f) {
    if (c.src(g.cells1[f]) != g.objects[d.src(f)] ||
        c.tgt(g.cells1[f]) != g.objects[d.tgt(f)])
      out.push_back({"TwoFunctorEndpoints", d.cell1_name(f)});
  }
  for (int al = 0; al < d.num_cells2(); ++al) {
    if (c.src2(g.cells2[al]) != g.cells1[d.src2(al)] ||
        c.tgt2(g.cells2[al]) != g.cells1[d.tgt2(al)])
      out.push_back({"TwoFunctorBoundary", d.cell2_name(al)});
  }
  for (int x = 0; x < d.num_objects(); ++x)
    if (g.cells1[d.id1(x)] != c.id1(g.objects[x]))
      out.push_back({"TwoFunctorIdentity1", d.object_name(x)});
  for (int f = 0; f < d.num_cells1(); ++f)
    if (g.cells2[d.id2(f)] != c.id2(g.cells1[f]))
      out.push_back({"TwoFunctorIdentity2", d.cell1_name(f)});
  for (const auto& [h, f, hf] : d.hcompose1_triples())
    if (c.hcompose1(g.cells1[h], g.cells1[f]) != g.cells1[hf])
      out.push_back({"TwoFunctorHorizontal1",
                     "(" + d.cell1_name(h) + ", " + d.cell1_name(f) + ")"});
  for (const auto& [be, al, r] : d.vcompose_triples())
    if (c.vcompose(g.cells2[be], g.cells2[al]) != g.cells2[r])
      out.push_back({"TwoFunctorVertical",
                     "(" + d.cell2_name(be) + ", " + d.cell2_name(al) + ")"});
  for (const auto& [be, al, r] : d.hcompose2_triples())
    if (c.hcompose2(g.cells2[be], g.cells2[al]) != g.cells2[r])
      out.push_back({"TwoFunctorHorizontal2",
                     "(" + d.cell2_name(be) + ", " + d.cell2_name(al) + ")"});
  return out;
}

// ---------------------------------------------------------------------------
// Free completion

std::string path_name(const TwoComputad& k, const std::vector<int>& path,
                      const std::string& object) {
  if (path.empty()) return "1_" + object;
  std::string s;
  for (auto it = path.rbegin(); it != path.rend(); ++it) {
    if (!s.empty()) s += "*";
    s += k.arrows[*it].name;
  }
  return s;
}

namespace {

using Step = FreeCompletion::Step;
using Path = std::vector<int>;

struct Rewriter {
  const TwoComputad& k;
  std::vector<Path> cell_src, cell_tgt;  // per cell generator

  bool matches(const Path& p, int g, int offset) const {
    const Path& s = cell_src[g];
    if (offset < 0 || offset + s.size() > p.size()) return false;
    return std::equal(s.begin(), s.end(), p.begin() + offset);
  }

  Path apply(const Path& p, const Step& st) const {
    Path out(p.begin(), p.begin() + st.offset);
    out.insert(out.end(), cell_tgt[st.generator].begin(), cell_tgt[st.generator].end());
    out.insert(out.end(), p.begin() + st.offset + cell_src[st.generator].size(), p.end());
    return out;
  }

  std::vector<Step> steps_at(const Path& p) const {
    std::vector<Step> out;
    for (int g = 0; g < static_cast<int>(cell_src.size()); ++g)
      for (int off = 0; off + static_cast<int>(cell_src[g].size()) <= static_cast<int>(p.size()); ++off)
        if (matches(p, g, off)) out.push_back({g, off});
    return out;
  }

  // Tries to move `second` (applied after `first`) in front of it. On success
  // returns the pair in swapped order.
  std::optional<std::pair<Step, Step>> swap(const Step& first,
                                            const Step& second) const {
    int s1 = static_cast<int>(cell_src[first.generator].size());
    int t1 = static_cast<int>(cell_tgt[first.generator].size());
    int s2 = static_cast<int>(cell_src[second.generator].size());
    int t2 = static_cast<int>(cell_tgt[second.generator].size());
    if (second.offset + s2 <= first.offset) {
      return std::make_pair(second, Step{first.generator, first.offset + t2 - s2});
    }
    if (second.offset >= first.offset + t1) {
      return std::make_pair(Step{second.generator, second.offset - t1 + s1}, first);
    }
    return std::nullopt;
  }

  // Greedy normal form: repeatedly bring the least front-movable step to
  // the front.
  std::vector<Step> normalize(std::vector<Step> seq) const {
    std::vector<Step> out;
    out.reserve(seq.size());
    while (!seq.empty()) {
      std::optional<Step> best;
      std::vector<Step> best_rest;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        Step moving = seq[i];
        std::vector<Step> before(seq.begin(), seq.begin() + i);
        bool ok = true;
        for (std::size_t j = i; j-- > 0;) {
          auto sw = swap(before[j], moving);
          if (!sw) {
            ok = false;
            break;
          }
          moving = sw->first;
          before[j] = sw->second;
        }
        if (!ok) continue;
        if (!best || moving < *best) {
          best = moving;
          best_rest = before;
          best_rest.insert(best_rest.end(), seq.begin() + i + 1, seq.end());
        }
      }
      out.push_back(*best);
      seq = std::move(best_rest);
    }
    return out;
  }

  Path target(Path p, const std::vector<Step>& seq) const {
    for (const auto& st : seq) p = apply(p, st);
    return p;
  }
};

}  // namespace

FreeCompletion free_2category(const TwoComputad& k) {
  std::map<std::string, int> obj;
  for (std::size_t i = 0; i < k.objects.size(); ++i) {
    if (!obj.emplace(k.objects[i], static_cast<int>(i)).second)
      throw InputError("computad: duplicate object '" + k.objects[i] + "'");
  }
  std::map<std::string, int> arr;
  std::vector<int> asrc, atgt;
  for (std::size_t i = 0; i < k.arrows.size(); ++i) {
    const auto& a = k.arrows[i];
    if (!arr.emplace(a.name, static_cast<int>(i)).second)
      throw InputError("computad: duplicate arrow '" + a.name + "'");
    auto s = obj.find(a.src), t = obj.find(a.tgt);
    if (s == obj.end() || t == obj.end())
      throw InputError("computad: arrow '" + a.name + "' has an unknown endpoint");
    asrc.push_back(s->second);
    atgt.push_back(t->second);
  }
  const int nobj = static_cast<int>(k.objects.size());

  // Acyclicity of the arrow graph.
  {
    std::vector<int> color(nobj, 0), via(nobj, -1);
    std::vector<std::vector<int>> out(nobj);
    for (std::size_t i = 0; i < k.arrows.size(); ++i) out[asrc[i]].push_back(static_cast<int>(i));
    std::function<void(int)> dfs = [&](int x) {
      color[x] = 1;
      for (int a : out[x]) {
        int y = atgt[a];
        if (color[y] == 1) {
          std::string cyc = k.arrows[a].name;
          for (int z = x; z != y && via[z] != -1; z = asrc[via[z]])
            cyc = k.arrows[via[z]].name + " " + cyc;
          throw InputError("computad: arrow cycle [" + cyc + "]");
        }
        if (color[y] == 0) {
          via[y] = a;
          dfs(y);
        }
      }
      color[x] = 2;
    };
    for (int x = 0; x < nobj; ++x)
      if (color[x] == 0) dfs(x);
  }

  Rewriter rw{k, {}, {}};
  std::map<std::string, int> cells;
  for (std::size_t i = 0; i < k.cells.size(); ++i) {
    const auto& c = k.cells[i];
    if (!cells.emplace(c.name, static_cast<int>(i)).second)
      throw InputError("computad: duplicate cell '" + c.name + "'");
    auto resolve = [&](const std::vector<std::string>& names) {
      if (names.empty())
        throw InputError("computad: cell '" + c.name + "' has an empty side");
      Path p;
      for (const auto& n : names) {
        auto it = arr.find(n);
        if (it == arr.end())
          throw InputError("computad: cell '" + c.name + "' uses unknown arrow '" + n + "'");
        if (!p.empty() && atgt[p.back()] != asrc[it->second])
          throw InputError("computad: cell '" + c.name + "' has a non-composable path");
        p.push_back(it->second);
      }
      return p;
    };
    Path s = resolve(c.src), t = resolve(c.tgt);
    if (asrc[s.front()] != asrc[t.front()] || atgt[s.back()] != atgt[t.back()])
      throw InputError("computad: cell '" + c.name + "' is not between parallel paths");
    rw.cell_src.push_back(std::move(s));
    rw.cell_tgt.push_back(std::move(t));
  }

  // All paths, grouped by start object.
  std::vector<std::pair<Path, int>> paths;  // path, start object
  {
    std::vector<std::vector<int>> out(nobj);
    for (std::size_t i = 0; i < k.arrows.size(); ++i) out[asrc[i]].push_back(static_cast<int>(i));
    std::function<void(Path&, int, int)> extend = [&](Path& p, int start, int at) {
      paths.emplace_back(p, start);
      for (int a : out[at]) {
        p.push_back(a);
        extend(p, start, atgt[a]);
        p.pop_back();
      }
    };
    for (int x = 0; x < nobj; ++x) {
      Path p;
      extend(p, x, x);
    }
  }
  auto path_end = [&](const Path& p, int start) { return p.empty() ? start : atgt[p.back()]; };

  // 2-loops: cycles in the one-step rewrite graph.
  {
    std::map<Path, int> color;
    std::map<Path, Path> parent;
    std::function<void(const Path&)> dfs = [&](const Path& p) {
      color[p] = 1;
      for (const auto& st : rw.steps_at(p)) {
        Path q = rw.apply(p, st);
        int c = color.count(q) ? color[q] : 0;
        if (c == 1) {
          throw InputError("computad: 2-loop through path '" +
                           path_name(k, q, "") + "' via cell '" +
                           k.cells[st.generator].name + "'");
        }
        if (c == 0) dfs(q);
      }
      color[p] = 2;
    };
    for (const auto& [p, s] : paths)
      if (!color.count(p)) dfs(p);
  }

  // 2-cells: classes of derivations out of each path.
  struct Cell {
    Path source;
    int start;
    std::vector<Step> derivation;
    Path target;
  };
  std::vector<Cell> all_cells;
  std::map<std::tuple<Path, int, std::vector<Step>>, int> cell_index;
  std::vector<std::vector<int>> cells_from(paths.size());
  std::map<std::pair<Path, int>, int> path_index;
  for (std::size_t i = 0; i < paths.size(); ++i) path_index[paths[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const auto& [p, start] = paths[i];
    std::set<std::vector<Step>> seen{{}};
    std::vector<std::vector<Step>> frontier{{}};
    while (!frontier.empty()) {
      std::vector<std::vector<Step>> next;
      for (const auto& d : frontier) {
        Path t = rw.target(p, d);
        for (const auto& st : rw.steps_at(t)) {
          auto e = d;
          e.push_back(st);
          e = rw.normalize(std::move(e));
          if (seen.insert(e).second) next.push_back(std::move(e));
        }
      }
      frontier = std::move(next);
    }
    for (const auto& d : seen) {
      int idx = static_cast<int>(all_cells.size());
      all_cells.push_back({p, start, d, rw.target(p, d)});
      cell_index[{p, start, d}] = idx;
      cells_from[i].push_back(idx);
    }
  }

  auto pname = [&](const Path& p, int start) { return path_name(k, p, k.objects[start]); };
  auto cname = [&](const Cell& c) {
    std::string src = pname(c.source, c.start);
    if (c.derivation.empty()) return "1_" + src;
    std::string s = "{" + src + ":";
    for (std::size_t j = 0; j < c.derivation.size(); ++j) {
      if (j) s += ",";
      s += k.cells[c.derivation[j].generator].name + "@" +
           std::to_string(c.derivation[j].offset);
    }
    return s + "}";
  };

  Fin2Category::Builder b;
  for (const auto& o : k.objects) b.add_bare_object(o);
  for (const auto& [p, start] : paths) {
    b.add_bare_cell1(pname(p, start), k.objects[start], k.objects[path_end(p, start)]);
    if (p.empty()) b.set_id1(k.objects[start], pname(p, start));
  }
  for (const auto& c : all_cells) {
    b.add_cell2(cname(c), pname(c.source, c.start), pname(c.target, c.start));
    if (c.derivation.empty()) b.set_id2(pname(c.source, c.start), cname(c));
  }
  // Vertical composition.
  for (const auto& c : all_cells) {
    int ti = path_index.at({c.target, c.start});
    for (int j : cells_from[ti]) {
      const auto& d = all_cells[j];
      auto seq = c.derivation;
      seq.insert(seq.end(), d.derivation.begin(), d.derivation.end());
      const auto& r = all_cells[cell_index.at({c.source, c.start, rw.normalize(seq)})];
      b.set_vcompose(cname(d), cname(c), cname(r));
    }
  }
  // Horizontal composition.
  for (const auto& [p, start] : paths) {
    int mid = path_end(p, start);
    for (const auto& [q, s2] : paths) {
      if (s2 != mid) continue;
      Path pq = p;
      pq.insert(pq.end(), q.begin(), q.end());
      b.set_hcompose1(pname(q, mid), pname(p, start), pname(pq, start));
    }
  }
  for (const auto& c : all_cells) {
    int mid = path_end(c.source, c.start);
    for (const auto& d : all_cells) {
      if (d.start != mid) continue;
      Path src = c.source;
      src.insert(src.end(), d.source.begin(), d.source.end());
      auto seq = c.derivation;
      int shift = static_cast<int>(c.target.size());
      for (auto st : d.derivation) {
        st.offset += shift;
        seq.push_back(st);
      }
      const auto& r = all_cells[cell_index.at({src, c.start, rw.normalize(seq)})];
      b.set_hcompose2(cname(d), cname(c), cname(r));
    }
  }

  FreeCompletion out;
  out.computad = k;
  out.cell_src = rw.cell_src;
  out.cell_tgt = rw.cell_tgt;
  out.category = b.build_shared(false);
  const auto& cat = *out.category;
  for (const auto& o : k.objects) out.object_of[o] = cat.object_index(o);
  out.paths.assign(cat.num_cells1(), {});
  out.sigma = SigmaClass{out.category, std::vector<char>(cat.num_cells1(), 0)};
  for (const auto& [p, start] : paths) {
    int f = cat.cell1_index(pname(p, start));
    out.paths[f] = p;
    out.sigma.members[f] = std::all_of(p.begin(), p.end(),
                                       [&](int a) { return k.arrows[a].sigma; });
  }
  for (std::size_t i = 0; i < k.arrows.size(); ++i)
    out.arrow_of[k.arrows[i].name] = cat.cell1_index(k.arrows[i].name);
  out.derivations.assign(cat.num_cells2(), {});
  for (const auto& c : all_cells) out.derivations[cat.cell2_index(cname(c))] = c.derivation;
  for (std::size_t i = 0; i < k.cells.size(); ++i) {
    Cell c{rw.cell_src[i], asrc[rw.cell_src[i].front()], {{static_cast<int>(i), 0}}, {}};
    out.cell_of[k.cells[i].name] = cat.cell2_index(cname(c));
  }
  return out;
}

TwoFunctor extend_2functor(const FreeCompletion& free, const TwoCatRef& target,
                           const std::map<std::string, int>& objects,
                           const std::map<std::string, int>& arrows,
                           const std::map<std::string, int>& cells) {
  const auto& k = free.computad;
  const auto& d = *free.category;
  const auto& a = *target;
  auto get = [](const std::map<std::string, int>& m, const std::string& n,
                const char* what) {
    auto it = m.find(n);
    if (it == m.end())
      throw InputError(std::string("extend_2functor: no image for ") + what + " '" + n + "'");
    return it->second;
  };
  TwoFunctor g{free.category, target, std::vector<int>(d.num_objects(), -1),
               std::vector<int>(d.num_cells1(), -1),
               std::vector<int>(d.num_cells2(), -1)};
  for (const auto& o : k.objects) g.objects[d.object_index(o)] = get(objects, o, "object");
  std::vector<int> arrow_img;
  for (const auto& ar : k.arrows) {
    int f = get(arrows, ar.name, "arrow");
    if (a.src(f) != g.objects[d.object_index(ar.src)] ||
        a.tgt(f) != g.objects[d.object_index(ar.tgt)])
      throw InputError("extend_2functor: arrow '" + ar.name + "' has a mistyped image");
    arrow_img.push_back(f);
  }
  auto image = [&](const Path& p, std::size_t from, std::size_t to, int start_obj) {
    int f = a.id1(start_obj);
    for (std::size_t i = from; i < to; ++i) f = a.hcompose1(arrow_img[p[i]], f);
    return f;
  };
  // Object reached by the first `n` arrows of `p` starting at `start`.
  auto obj_after = [&](const Path& p, std::size_t n, int start) {
    return n == 0 ? start : a.tgt(arrow_img[p[n - 1]]);
  };
  for (int f = 0; f < d.num_cells1(); ++f) {
    const auto& p = free.paths[f];
    g.cells1[f] = image(p, 0, p.size(), g.objects[d.src(f)]);
  }
  std::vector<int> cell_img;
  for (const auto& c : k.cells) {
    int al = get(cells, c.name, "cell");
    int gen = free.cell_of.at(c.name);
    if (a.src2(al) != g.cells1[d.src2(gen)] || a.tgt2(al) != g.cells1[d.tgt2(gen)])
      throw InputError("extend_2functor: cell '" + c.name + "' has a mistyped image");
    cell_img.push_back(al);
  }
  for (int al = 0; al < d.num_cells2(); ++al) {
    Path p = free.paths[d.src2(al)];
    int start = g.objects[d.src(d.src2(al))];
    int cur = a.id2(g.cells1[d.src2(al)]);
    for (const auto& st : free.derivations[al]) {
      std::size_t len = k.cells[st.generator].src.size();
      std::size_t off = static_cast<std::size_t>(st.offset);
      int prefix = image(p, 0, off, start);
      int mid_obj = obj_after(p, off + len, start);
      int suffix = image(p, off + len, p.size(), mid_obj);
      int step = a.hcompose2(a.id2(suffix), a.hcompose2(cell_img[st.generator], a.id2(prefix)));
      cur = a.vcompose(step, cur);
      Path np(p.begin(), p.begin() + off);
      const auto& t = free.cell_tgt[st.generator];
      np.insert(np.end(), t.begin(), t.end());
      np.insert(np.end(), p.begin() + off + len, p.end());
      p = std::move(np);
    }
    g.cells2[al] = cur;
  }
  return g;
}

namespace twocats {

TwoCatRef point() { return Fin2Category::Builder{}.add_object("*").build_shared(); }

TwoCatRef empty() { return Fin2Category::Builder{}.build_shared(); }

TwoCatRef locally_discrete(const FinCategory& c) {
  Fin2Category::Builder b;
  for (int x = 0; x < c.num_objects(); ++x) b.add_bare_object(c.object_name(x));
  for (int f = 0; f < c.num_arrows(); ++f)
    b.add_cell1(c.arrow_name(f), c.object_name(c.src(f)), c.object_name(c.tgt(f)));
  for (int x = 0; x < c.num_objects(); ++x)
    b.set_id1(c.object_name(x), c.arrow_name(c.identity(x)));
  for (const auto& [g, f, gf] : c.composition_triples())
    b.set_hcompose1(c.arrow_name(g), c.arrow_name(f), c.arrow_name(gf));
  return b.build_shared();
}

}  // namespace twocats

}  // namespace sigmacolim
