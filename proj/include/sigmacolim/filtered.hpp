#pragma once

// σ-filteredness of a pair (A, Σ), σ-cones inside A for finite 2-diagrams,
// and σ-cones in Cat for diagrams A → Cat.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sigmacolim/diagram.hpp"
#include "sigmacolim/fincat.hpp"
#include "sigmacolim/two_cat.hpp"

namespace sigmacolim {

// --- Axioms ----------------------------------------------------------------

struct SigmaF0Witness {
  int a, b;     // objects
  int e;        // common target
  int f, g;     // a → e and b → e, both in Σ
};

struct SigmaF1Witness {
  int f, g;     // parallel, g ∈ Σ
  int h;        // h ∈ Σ
  int alpha;    // h·f ⇒ h·g, invertible when f ∈ Σ
};

struct SigmaF2Witness {
  int alpha, beta;  // parallel 2-cells f ⇒ g
  int h;            // h·α = h·β, h ∈ Σ
};

template <typename W, typename C>
struct AxiomCheck {
  bool holds = true;
  std::vector<W> witnesses;         // one per instance, canonical order
  std::optional<C> counterexample;  // first failing instance
};

using SigmaF0Check = AxiomCheck<SigmaF0Witness, std::pair<int, int>>;  // objects
using SigmaF1Check = AxiomCheck<SigmaF1Witness, std::pair<int, int>>;  // (f, g)
using SigmaF2Check = AxiomCheck<SigmaF2Witness, std::pair<int, int>>;  // (α, β)

SigmaF0Check check_sigmaF0(const Fin2Category& a, const SigmaClass& s);
SigmaF1Check check_sigmaF1(const Fin2Category& a, const SigmaClass& s);
/// By default only the target g of α, β : f ⇒ g must lie in Σ; `strict`
/// also requires f ∈ Σ.
SigmaF2Check check_sigmaF2(const Fin2Category& a, const SigmaClass& s,
                           bool strict = false);

struct FilteredReport {
  bool nonempty = false;
  SigmaF0Check f0;
  SigmaF1Check f1;
  SigmaF2Check f2;
  /// "" when filtered, else the first failing condition: "nonempty",
  /// "sigmaF0", "sigmaF1" or "sigmaF2".
  std::string failing_axiom;

  bool holds() const { return failing_axiom.empty(); }
};

FilteredReport is_sigma_filtered(const Fin2Category& a, const SigmaClass& s,
                                 bool strict_f2 = false);

/// Human-readable account of a report, naming cells by identifier.
std::string describe(const FilteredReport& r, const Fin2Category& a);

// --- σ-cones inside A --------------------------------------------------------

/// A σ-cone over G : Δ → A with vertex E: legs θ_X : G(X) → E in Σ and
/// structural 2-cells θ_f : θ_Y·G(f) ⇒ θ_X for every 1-cell f : X → Y of Δ.
struct SigmaCone {
  int vertex = -1;
  std::vector<int> legs;   // per object of Δ
  std::vector<int> cells;  // per 1-cell of Δ

  bool operator==(const SigmaCone&) const = default;
};

/// LC0–LC2, legs in Σ, and θ_f invertible for f ∈ G⁻¹(Σ).
Violations validate_cone(const TwoFunctor& g, const SigmaClass& s,
                         const SigmaCone& c);

struct ConeSearchOptions {
  std::size_t max_nodes = 2'000'000;  // search nodes before giving up
  std::size_t max_cones = 1;          // enumeration stops after this many
};

struct ConeSearchResult {
  std::vector<SigmaCone> cones;  // canonical order
  bool capped = false;           // search stopped by a cap
  std::size_t nodes = 0;

  bool found() const { return !cones.empty(); }
  const SigmaCone& first() const { return cones.front(); }
};

/// Searches σ-cones over `g` with legs in Σ: vertices in object order, then
/// legs lexicographically, then structural 2-cells lexicographically over
/// the 1-cells that are not forced by LC1.
ConeSearchResult sigma_cone_search(const TwoFunctor& g, const SigmaClass& s,
                                   const ConeSearchOptions& opts = {});

/// Free 2-diagram on a computad together with its extension into A.
struct ComputadDiagram {
  FreeCompletion free;
  TwoFunctor functor;
};

ComputadDiagram diagram_from_computad(const TwoComputad& k, const TwoCatRef& target,
                                      const std::map<std::string, int>& objects,
                                      const std::map<std::string, int>& arrows,
                                      const std::map<std::string, int>& cells = {});

// --- σ-cones in Cat --------------------------------------------------------

/// A σ-cone over F : A → Cat with vertex category X.
struct CatCone {
  CatRef vertex;
  std::vector<Functor> legs;     // h_A : F(A) → X
  std::vector<NatTransf> cells;  // h_u : h_B∘F(u) ⇒ h_A for u : A → B

  bool operator==(const CatCone& o) const {
    return legs == o.legs && cells == o.cells;
  }
};

/// Components φ_A : h_A ⇒ h'_A.
struct CatConeMorphism {
  std::vector<NatTransf> components;

  bool operator==(const CatConeMorphism& o) const {
    return components == o.components;
  }
};

Violations validate_cat_cone(const CatDiagram& f, const CatCone& c);
/// LCM: h'_u ∘ φ_B F(u) = φ_A ∘ h_u.
Violations validate_cat_cone_morphism(const CatDiagram& f, const CatCone& source,
                                      const CatCone& target,
                                      const CatConeMorphism& m);

CatConeMorphism identity_cone_morphism(const CatCone& c);
CatConeMorphism compose_cone_morphisms(const CatConeMorphism& second,
                                       const CatConeMorphism& first);

/// All σ-cones over `f` with vertex `x`, and all cone morphisms between two
/// given cones, in canonical order.
Enumeration<CatCone> enumerate_cat_cones(const CatDiagram& f, const CatRef& x,
                                         std::size_t cap = kNoCap);
Enumeration<CatConeMorphism> enumerate_cone_morphisms(const CatDiagram& f,
                                                      const CatCone& source,
                                                      const CatCone& target,
                                                      std::size_t cap = kNoCap);

}  // namespace sigmacolim
