#pragma once

// Small bundled index pairs (A, Σ) and diagrams A → Cat.

#include <optional>
#include <string>
#include <vector>

#include "sigmacolim/diagram.hpp"
#include "sigmacolim/two_cat.hpp"

namespace sigmacolim {

struct Fixture {
  std::string name;
  std::string description;
  TwoCatRef index;
  SigmaClass sigma;
  DiagramRef diagram;  // null for the index-only fixtures
  bool filtered = false;
  std::string failing_axiom;  // expected, "" when filtered
};

/// All bundled fixtures in a fixed order.
std::vector<Fixture> bundled_fixtures();
/// Throws InputError for an unknown name.
Fixture bundled_fixture(const std::string& name);

/// Inputs for the pseudo-equalizer comparison: α, β : G ⇒ H.
struct PseudoEqInputs {
  DiagramNatTransf alpha;
  DiagramNatTransf beta;
};

/// H = F × (constant walking isomorphism) with α, β the inclusions at the
/// two objects of the isomorphism.
PseudoEqInputs pseudoeq_inclusions(const DiagramRef& f);
/// G = H = F with α = β = id.
PseudoEqInputs pseudoeq_identity(const DiagramRef& f);

/// Pointwise product of two diagrams on the same index.
CatDiagram product_diagram(const CatDiagram& f, const CatDiagram& g);

}  // namespace sigmacolim
