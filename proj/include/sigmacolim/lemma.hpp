#pragma once

// Lifting finitely many premorphisms, compositions over 2-cells and
// homotopy equations to a single object E of the index, where the
// equations hold on the nose in F(E).

#include <optional>
#include <vector>

#include "sigmacolim/colimit.hpp"

namespace sigmacolim {

struct LemmaPremorphism {
  int functor = 0;  // index into LemmaInstance::functors
  Premorphism p;
};

/// A leaf premorphism or a composite `second ∘_γ first` of earlier terms.
struct LemmaTerm {
  enum class Kind { Leaf, Compose };
  Kind kind = Kind::Leaf;
  int premorphism = -1;
  int first = -1;
  int second = -1;
  std::optional<GammaChoice> gamma;  // canonical γ when absent

  static LemmaTerm leaf(int i) { return {Kind::Leaf, i, -1, -1, std::nullopt}; }
  static LemmaTerm compose(int second, int first, std::optional<GammaChoice> g = {}) {
    return {Kind::Compose, -1, first, second, g};
  }
};

/// lhs ∼ rhs; the witness is searched for when absent.
struct LemmaEquation {
  int lhs = -1;
  int rhs = -1;
  std::optional<HomotopyWitness> witness;
};

/// All functors share the index pair (A, Σ).
struct LemmaInstance {
  std::vector<DiagramRef> functors;
  std::vector<LemmaPremorphism> premorphisms;
  std::vector<LemmaTerm> terms;
  std::vector<LemmaEquation> equations;
};

struct LemmaOptions {
  ConeSearchOptions search;
};

struct LemmaOutput {
  ComputadDiagram delta;  // Δ with G : Δ → A
  SigmaCone cone;         // over G, vertex E
  int e = -1;

  // Per premorphism, in instance order.
  std::vector<int> w, t, z, mu, nu;
  std::vector<Premorphism> tilde;

  // Per term, in instance order.
  std::vector<int> term_functor;
  std::vector<Premorphism> term_value;   // the composite over the chosen γ
  std::vector<GammaChoice> term_gamma;   // resolved γ; empty for leaves
  std::vector<int> term_z, term_mu, term_nu;
  std::vector<Premorphism> term_tilde;

  std::vector<HomotopyWitness> equation_witness;  // resolved, per equation
};

/// Builds Δ from the leaves, composites and equations, searches a σ-cone
/// over it and assembles the lifted premorphisms. Throws InputError for a malformed instance and
/// NotSigmaFiltered when no cone is found.
LemmaOutput lemma_engine(const LemmaInstance& inst, const LemmaOptions& opts = {});

/// Shared legs per index object, identity lifts of (1, 1) premorphisms,
/// shared structural cells per 1-cell, lifts of equations and composites,
/// and the requested equations evaluated in F(E) by composing lifted arrows.
Violations check_lemma_output(const LemmaInstance& inst, const LemmaOutput& out);

/// Value of a term in F(E): leaves give their lifted arrow, composites
/// compose in F(E).
int evaluate_in_vertex(const LemmaInstance& inst, const LemmaOutput& out, int term);

/// (μ, μ', ν, ν') through E between two terms with equal endpoints. It is a
/// homotopy whenever their lifts coincide.
HomotopyWitness tilde_homotopy(const LemmaOutput& out, int term1, int term2);

/// One (α₁, α₂, β₁, β₂) witnessing η_k ⇒ ξ_k for every k at once.
struct SharedHomotopy {
  HomotopyWitness witness;
  LemmaOutput lemma;
};

/// Requires the ξ_k to share (u, v), the η_k to share (u, v), equal index
/// objects at the endpoints and η_k ∼ ξ_k; throws InputError otherwise.
SharedHomotopy shared_homotopy(const std::vector<DiagramRef>& functors,
                               const std::vector<Premorphism>& eta,
                               const std::vector<Premorphism>& xi,
                               const LemmaOptions& opts = {});

}  // namespace sigmacolim
