#pragma once

// Explicit finite categories given by full composition tables, together with
// functors, natural transformations, the limit constructions used on the
// right-hand side of the exactness comparison, and an equivalence checker.

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sigmacolim/error.hpp"

namespace sigmacolim {

/// A finite category. Objects and arrows are addressed by dense indices that
/// follow the lexicographic order of their identifiers; the identifiers
/// themselves are opaque strings.
///
/// Instances are immutable once built. A category built from user data may
/// still violate the category laws; `validate_category` reports how.
class FinCategory {
 public:
  struct Arrow {
    std::string name;
    int src = -1;
    int tgt = -1;
  };

  class Builder;

  FinCategory() = default;

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }

  const std::string& object_name(int x) const { return objects_.at(x); }
  const std::string& arrow_name(int f) const { return arrows_.at(f).name; }
  const Arrow& arrow(int f) const { return arrows_.at(f); }
  int src(int f) const { return arrows_[f].src; }
  int tgt(int f) const { return arrows_[f].tgt; }

  /// Identity arrow of `x`, or -1 if the table declares none.
  int identity(int x) const { return identities_[x]; }
  bool is_identity(int f) const { return identities_[arrows_[f].src] == f; }

  /// g∘f, or -1 when the table has no entry for the pair.
  int compose(int g, int f) const {
    auto it = compose_.find(key(g, f));
    return it == compose_.end() ? -1 : it->second;
  }

  /// Arrows x → y in canonical order.
  const std::vector<int>& hom(int x, int y) const {
    return homs_[static_cast<std::size_t>(x) * objects_.size() + y];
  }

  /// Two-sided inverse of f if one exists (precomputed at build time).
  int inverse(int f) const { return inverses_[f]; }

  std::optional<int> find_object(std::string_view name) const;
  std::optional<int> find_arrow(std::string_view name) const;
  /// Like find_*, but throws InputError for unknown identifiers.
  int object_index(std::string_view name) const;
  int arrow_index(std::string_view name) const;

  /// Every (g, f, g∘f) entry of the table, sorted by (g, f).
  std::vector<std::array<int, 3>> composition_triples() const;

  bool operator==(const FinCategory& other) const;

 private:
  static std::uint64_t key(int g, int f) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(g)) << 32) |
           static_cast<std::uint32_t>(f);
  }

  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<int> identities_;
  std::vector<int> inverses_;
  std::unordered_map<std::uint64_t, int> compose_;
  std::vector<std::vector<int>> homs_;
  std::unordered_map<std::string, int> object_lookup_;
  std::unordered_map<std::string, int> arrow_lookup_;
};

using CatRef = std::shared_ptr<const FinCategory>;

/// Accumulates objects, arrows and composition entries by identifier, then
/// sorts everything into canonical order.
class FinCategory::Builder {
 public:
  /// Adds an object together with an identity arrow named "1_<name>".
  Builder& add_object(const std::string& name);
  /// Adds an object whose identity must be declared with set_identity.
  Builder& add_bare_object(const std::string& name);
  Builder& add_arrow(const std::string& name, const std::string& src,
                     const std::string& tgt);
  Builder& set_identity(const std::string& object, const std::string& arrow);
  /// Declares g∘f = gf.
  Builder& set_compose(const std::string& g, const std::string& f,
                       const std::string& gf);

  /// Builds the category. With `fill_units`, composites with identity arrows
  /// that the table omits are filled in. Throws InputError on duplicate or
  /// dangling identifiers; law violations are left for validate_category.
  FinCategory build(bool fill_units = true) const;
  CatRef build_shared(bool fill_units = true) const {
    return std::make_shared<const FinCategory>(build(fill_units));
  }

 private:
  std::vector<std::string> objects_;
  std::vector<std::array<std::string, 3>> arrows_;  // name, src, tgt
  std::vector<std::pair<std::string, std::string>> identities_;
  std::vector<std::array<std::string, 3>> compositions_;
};

Violations validate_category(const FinCategory& c);

/// Two-sided inverse of `f` if one exists. The string overload throws
/// InputError for an unknown arrow.
std::optional<int> is_isomorphism(const FinCategory& c, int f);
std::optional<std::string> is_isomorphism(const FinCategory& c,
                                          std::string_view f);

struct Functor {
  CatRef domain;
  CatRef codomain;
  std::vector<int> objects;  // image of each domain object
  std::vector<int> arrows;   // image of each domain arrow

  int obj(int x) const { return objects[x]; }
  int arr(int f) const { return arrows[f]; }

  bool operator==(const Functor& other) const {
    return objects == other.objects && arrows == other.arrows;
  }
};

Functor identity_functor(const CatRef& c);
/// Functor from identifier maps. Identity arrows may be omitted; they follow
/// the object map. Throws InputError for unknown or unmapped identifiers.
Functor make_functor(const CatRef& domain, const CatRef& codomain,
                     const std::map<std::string, std::string>& objects,
                     const std::map<std::string, std::string>& arrows = {});
/// Same categories (shared pointer or equal tables).
bool same_category(const CatRef& a, const CatRef& b);
/// The functor c → 1 into a freshly built terminal category (or `terminal`
/// when given).
Functor collapse_functor(const CatRef& c, const CatRef& terminal);
/// g∘f; throws InputError when codomain of f is not the domain of g.
Functor compose(const Functor& g, const Functor& f);
Violations validate_functor(const Functor& f);
/// Bijective on objects and on arrows.
bool is_isomorphism_of_categories(const Functor& f);

struct NatTransf {
  Functor source;
  Functor target;
  std::vector<int> components;  // one codomain arrow per domain object

  bool operator==(const NatTransf& other) const {
    return source == other.source && target == other.target &&
           components == other.components;
  }
};

NatTransf identity_transf(const Functor& f);
/// Transformation from a component map keyed by domain object identifiers.
NatTransf make_transf(const Functor& source, const Functor& target,
                      const std::map<std::string, std::string>& components);
/// Horizontal composite β*α : g∘f ⇒ g'∘f' of α : f ⇒ f' and β : g ⇒ g'.
NatTransf horizontal_compose(const NatTransf& beta, const NatTransf& alpha);
/// β∘α (vertical).
NatTransf vertical_compose(const NatTransf& beta, const NatTransf& alpha);
/// H α : H∘F ⇒ H∘G.
NatTransf whisker_left(const Functor& h, const NatTransf& alpha);
/// α K : F∘K ⇒ G∘K.
NatTransf whisker_right(const NatTransf& alpha, const Functor& k);
Violations validate_nat_transf(const NatTransf& t);
bool is_invertible(const NatTransf& t);

/// Result of a capped enumeration: `capped` is set when the cap stopped the
/// search before it was exhaustive.
template <typename T>
struct Enumeration {
  std::vector<T> items;
  bool capped = false;
};

inline constexpr std::size_t kNoCap = static_cast<std::size_t>(-1);

/// All functors c → d in canonical order (lexicographic on the image of the
/// arrow list, objects decided by first use).
Enumeration<Functor> enumerate_functors(const CatRef& c, const CatRef& d,
                                        std::size_t cap = kNoCap);
/// All natural transformations f ⇒ g.
Enumeration<NatTransf> enumerate_nat_transfs(const Functor& f,
                                             const Functor& g,
                                             std::size_t cap = kNoCap);

/// Identifier of a functor as an object of a functor category:
/// "<" + images of the domain arrows in canonical order + ">".
std::string functor_label(const Functor& f);
/// Identifier of a transformation as an arrow of a functor category:
/// "[" + components + "]:" + source label + "=>" + target label.
std::string transf_label(const NatTransf& t);

struct FunctorCategory {
  CatRef category;
  CatRef base;    // C
  CatRef weight;  // W
  std::vector<Functor> functors;       // aligned with category objects
  std::vector<NatTransf> transfs;      // aligned with category arrows
  bool capped = false;

  /// Index of the object representing `f`; throws if absent.
  int object_of(const Functor& f) const;
  /// Index of the arrow representing `t`; throws if absent.
  int arrow_of(const NatTransf& t) const;

 private:
  friend FunctorCategory functor_category(const CatRef&, const CatRef&,
                                          std::size_t);
  std::map<std::string, int> object_lookup_;
  std::map<std::string, int> arrow_lookup_;
};

/// C^W: functors W → C and natural transformations between them.
FunctorCategory functor_category(const CatRef& c, const CatRef& w,
                                 std::size_t cap = kNoCap);

struct ProductCategory {
  CatRef category;
  Functor first;   // projection onto C
  Functor second;  // projection onto D
  std::vector<int> object_table;  // c * |D| + d → object index
  std::vector<int> arrow_table;   // f * |D arrows| + g → arrow index

  int object_of(int c, int d) const;
  int arrow_of(int f, int g) const;
};

/// C × D with objects "(c,d)" and arrows "(f,g)".
ProductCategory product_category(const CatRef& c, const CatRef& d);

struct PseudoEqualizer {
  CatRef category;
  Functor projection;  // (x, y, γ, δ) ↦ x
  /// (x, y, γ, δ) for each object, in category order.
  std::vector<std::array<int, 4>> objects;
  /// (a, b) for each arrow, in category order.
  std::vector<std::pair<int, int>> arrows;

  std::optional<int> find_object(const std::array<int, 4>& tuple) const;
  std::optional<int> find_arrow(int src, int tgt, int a, int b) const;
};

/// Pseudo-equalizer of f, g : C → D. Objects "(x,y,γ,δ)" with γ : f(x) ≅ y and
/// δ : g(x) ≅ y; arrows "(a,b)[src->tgt]" with b∘γ = γ'∘f(a), b∘δ = δ'∘g(a).
PseudoEqualizer pseudo_equalizer(const Functor& f, const Functor& g);

struct EquivalenceReport {
  bool essentially_surjective = true;
  /// For each codomain object d: (domain object c, iso F(c) → d), or
  /// (-1, -1) when none exists.
  std::vector<std::pair<int, int>> witnesses;
  std::optional<int> missing_object;  // codomain object outside the image

  bool full = true;
  /// (c, c', codomain arrow F(c) → F(c') not in the image)
  std::optional<std::array<int, 3>> not_full;

  bool faithful = true;
  /// Two distinct parallel arrows with the same image.
  std::optional<std::pair<int, int>> not_faithful;

  bool is_equivalence() const {
    return essentially_surjective && full && faithful;
  }
};

EquivalenceReport equivalence_check(const Functor& f);

/// Small named categories used throughout the tests and fixtures.
namespace cats {
CatRef empty();
CatRef terminal();
/// 0 → 1 with arrow "f".
CatRef walking_arrow();
/// 0 ≅ 1 with "f" : 0 → 1 and "g" : 1 → 0.
CatRef walking_iso();
CatRef discrete(int n);
/// 0 → 1 → … → n-1 with all composites "a<i><j>".
CatRef chain(int n);
}  // namespace cats

}  // namespace sigmacolim
