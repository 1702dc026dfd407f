#pragma once

// The σ-colimit L_σ(F) of a diagram F : A → Cat over a σ-filtered pair
// (A, Σ): objects (x, A), premorphisms (u, ξ, v), the homotopy relation,
// composition over 2-cells, the quotient category and its universal cone.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sigmacolim/diagram.hpp"
#include "sigmacolim/filtered.hpp"

namespace sigmacolim {

struct ColimObject {
  int index = -1;  // object A of the index
  int x = -1;      // object of F(A)

  auto operator<=>(const ColimObject&) const = default;
};

/// (x, A) → (y, B) given by u : A → C in Σ, v : B → C and
/// ξ : F(u)(x) → F(v)(y) in F(C).
struct Premorphism {
  ColimObject source;
  ColimObject target;
  int u = -1;
  int v = -1;
  int xi = -1;

  auto operator<=>(const Premorphism&) const = default;
};

/// Data of a homotopy ξ₁ ⇒ ξ₂: w's into D, all in Σ, with
/// α_i : w_A ⇒ w_i·u_i invertible and β_i : w_i·v_i ⇒ w_B, such that
/// F(β_i)_y ∘ F(w_i)(ξ_i) ∘ F(α_i)_x agree in F(D).
struct HomotopyWitness {
  int d = -1;
  int w_a = -1, w_b = -1, w1 = -1, w2 = -1;
  int alpha1 = -1, alpha2 = -1, beta1 = -1, beta2 = -1;

  bool operator==(const HomotopyWitness&) const = default;
};

/// A 2-cell γ : r·v ⇒ s·u' with r, s ∈ Σ into a common object, used to
/// compose ζ = (u', ζ, v') after ξ = (u, ξ, v).
struct GammaChoice {
  int r = -1;
  int s = -1;
  int gamma = -1;

  bool operator==(const GammaChoice&) const = default;
};

std::string describe(const ColimObject& o, const CatDiagram& f);
std::string describe(const Premorphism& p, const CatDiagram& f);

std::vector<ColimObject> enumerate_objects(const CatDiagram& f);
/// Premorphisms (x, A) → (y, B) in canonical order.
std::vector<Premorphism> enumerate_premorphisms(const CatDiagram& f, const ColimObject& from,
                                                const ColimObject& to);
/// Typing and Σ-membership of a premorphism.
Violations validate_premorphism(const CatDiagram& f, const Premorphism& p);
/// The identity premorphism (id_A, id_x, id_A).
Premorphism identity_premorphism(const CatDiagram& f, const ColimObject& o);

/// The arrow F(β)_y ∘ F(w)(ξ) ∘ F(α)_x of F(D).
int paste(const CatDiagram& f, const Premorphism& p, int w, int alpha, int beta);

/// Checks that `w` is a homotopy ξ₁ ⇒ ξ₂.
Violations check_homotopy(const CatDiagram& f, const Premorphism& xi1,
                          const Premorphism& xi2, const HomotopyWitness& w);

/// Exhaustive homotopy search over D, w_A, w_B, w₁, w₂, then (α₁, β₁),
/// then (α₂, β₂); results are memoized per unordered pair.
class HomotopySearch {
 public:
  explicit HomotopySearch(const CatDiagram& f) : f_(&f) {}

  std::optional<HomotopyWitness> find(const Premorphism& xi1, const Premorphism& xi2);
  std::size_t cache_size() const { return cache_.size(); }

 private:
  std::optional<HomotopyWitness> search(const Premorphism& xi1, const Premorphism& xi2) const;

  const CatDiagram* f_;
  std::map<std::pair<Premorphism, Premorphism>, std::optional<HomotopyWitness>> cache_;
};

/// Throws InputError when the endpoints differ.
std::optional<HomotopyWitness> is_homotopic(const CatDiagram& f, const Premorphism& xi1,
                                            const Premorphism& xi2);

/// All valid γ for composing ζ after ξ, in canonical order (target object,
/// r, s, γ).
std::vector<GammaChoice> gamma_choices(const CatDiagram& f, const Premorphism& zeta,
                                       const Premorphism& xi);
/// γ from the first σ-cone over the cospan at the middle object. Throws
/// NotSigmaFiltered when the search finds none.
GammaChoice canonical_gamma(const CatDiagram& f, const Premorphism& zeta,
                            const Premorphism& xi);
/// ζ ∘_γ ξ = (r·u, F(s)(ζ) ∘ γ_y ∘ F(r)(ξ), s·v').
Premorphism compose_premorphisms(const CatDiagram& f, const Premorphism& zeta,
                                 const Premorphism& xi, const GammaChoice& g);
Premorphism compose_premorphisms(const CatDiagram& f, const Premorphism& zeta,
                                 const Premorphism& xi);

/// Premorphisms of one hom-pair split into ~-classes.
struct HomClasses {
  ColimObject from, to;
  std::vector<Premorphism> members;  // canonical order
  std::vector<int> class_of;         // per member, index into reps
  std::vector<int> reps;             // least member of each class
  std::size_t one_step_pairs = 0;    // unordered pairs related in one step
  std::size_t closure_pairs = 0;     // related pairs added by transitivity
};

struct HomotopyQuotient {
  std::vector<ColimObject> objects;
  std::vector<HomClasses> homs;  // (from, to) in canonical order
  std::size_t closure_pairs = 0;

  const HomClasses& hom(const ColimObject& from, const ColimObject& to) const;
};

/// One-step relation by exhaustive search, then its transitive closure.
HomotopyQuotient homotopy_quotient(const CatDiagram& f);

struct ColimCategory {
  CatRef category;
  std::vector<ColimObject> objects;       // per object of `category`
  std::vector<Premorphism> representatives;  // per arrow of `category`
  HomotopyQuotient quotient;
  CatCone lambda;

  int object_of(const ColimObject& o) const;
  /// Arrow of `category` holding the class of p.
  int class_of(const Premorphism& p) const;
};

struct ColimitOptions {
  bool strict_f2 = false;
};

/// Throws NotSigmaFiltered unless (A, Σ) is σ-filtered.
ColimCategory build_colimit(const CatDiagram& f, const ColimitOptions& opts = {});

/// The unique functor h̃ with h̃λ = h. Throws InputError for an invalid cone.
Functor factor_cone(const CatDiagram& f, const ColimCategory& l, const CatCone& h);

struct UniversalReport {
  std::size_t functors = 0;
  std::size_t cones = 0;
  std::size_t transformations = 0;
  std::size_t cone_morphisms = 0;
  bool objects_bijective = false;
  bool arrows_bijective = false;
  bool capped = false;

  bool holds() const { return !capped && objects_bijective && arrows_bijective; }
};

/// Precomposition with λ from Fun(L, E) to σ-cones with vertex E, checked
/// for bijectivity on objects and arrows. Enumerations stop at `cap`.
UniversalReport check_universal_property(const CatDiagram& f, const ColimCategory& l,
                                         const CatRef& e, std::size_t cap = 500);

}  // namespace sigmacolim
