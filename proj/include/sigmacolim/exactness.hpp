#pragma once

// Comparison functors from a colimit of finite limits to the finite limit of
// colimits, for cotensors, binary products and pseudo-equalizers.

#include <cstddef>
#include <string>
#include <vector>

#include "sigmacolim/colimit.hpp"
#include "sigmacolim/lemma.hpp"

namespace sigmacolim {

/// F^W: A ↦ F(A)^W, with 1-cells and 2-cells acting by postcomposition.
CatDiagram cotensor_diagram(const CatDiagram& f, const CatRef& w);

/// P(A) = pseudo-equalizer of α_A, β_A : G(A) → H(A). Throws InputError
/// unless α, β are valid transformations between the same diagrams.
CatDiagram pseudoeq_diagram(const DiagramNatTransf& alpha, const DiagramNatTransf& beta);

/// L(G) → L(H): (x, A) ↦ (t_A(x), A) and [u, ξ, v] ↦ [u, t_C(ξ), v].
/// Throws std::logic_error if the tables fail to define a functor.
Functor induced_colimit_functor(const DiagramNatTransf& t, const ColimCategory& source,
                                const ColimCategory& target);

enum class ComparisonKind { Cotensor, Product, PseudoEqualizer };

std::string to_string(ComparisonKind k);

struct ExactnessOptions {
  ColimitOptions colimit;
  LemmaOptions lemma;
  /// Build explicit essential-surjectivity and fullness witnesses for
  /// products through σF0 and the lifting lemma.
  bool product_witnesses = true;
};

struct ComparisonInstance {
  ComparisonKind kind = ComparisonKind::Product;
  std::vector<DiagramRef> inputs;          // (F), (F, G) or (G, H)
  CatRef weight;                           // cotensors only
  std::vector<DiagramNatTransf> transfs;   // (α, β) for pseudo-equalizers
  DiagramRef limit_diagram;                // F^W, F × G or P
  ColimCategory lhs_colimit;
  std::vector<ColimCategory> input_colimits;
  std::vector<Functor> induced;            // L(α), L(β)

  CatRef lhs;
  CatRef rhs;
  Functor diamond;
  EquivalenceReport report;
  bool objects_bijective = false;
  bool arrows_bijective = false;

  std::size_t members_checked = 0;         // premorphisms mapped one by one
  std::size_t surjectivity_witnesses = 0;
  std::size_t fullness_witnesses = 0;
  Violations violations;                   // failed data checks

  bool holds() const { return report.is_equivalence() && violations.empty(); }
};

/// lhs = L(F^W), rhs = L(F)^W. Throws NotSigmaFiltered.
ComparisonInstance diamond_cotensor(const DiagramRef& f, const CatRef& w,
                                    const ExactnessOptions& opts = {});
/// lhs = L(F × G), rhs = L(F) × L(G).
ComparisonInstance diamond_product(const DiagramRef& f, const DiagramRef& g,
                                   const ExactnessOptions& opts = {});
/// lhs = L(constant 1), rhs = 1.
ComparisonInstance diamond_empty_product(const TwoCatRef& index, const SigmaClass& sigma,
                                         const ExactnessOptions& opts = {});
/// lhs = L(P), rhs = pseudo-equalizer of L(α), L(β) : L(G) → L(H).
ComparisonInstance diamond_pseudoeq(const DiagramNatTransf& alpha,
                                    const DiagramNatTransf& beta,
                                    const ExactnessOptions& opts = {});

}  // namespace sigmacolim
