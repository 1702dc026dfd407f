#pragma once

// Strict 2-functors A → Cat given by tables, and strict 2-natural
// transformations between them.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "sigmacolim/fincat.hpp"
#include "sigmacolim/two_cat.hpp"

namespace sigmacolim {

struct CatDiagram {
  TwoCatRef index;
  SigmaClass sigma;
  std::vector<CatRef> values;      // per object of the index
  std::vector<Functor> cells1;     // per 1-cell
  std::vector<NatTransf> cells2;   // per 2-cell

  const FinCategory& at(int a) const { return *values[a]; }
};

using DiagramRef = std::shared_ptr<const CatDiagram>;

/// Accumulates a diagram by name. Identities need not be given, and a
/// missing 1-cell or 2-cell is filled in when it is a composite of cells
/// already known. build() throws InputError when something stays unmapped;
/// law violations are left for validate_diagram.
class DiagramBuilder {
 public:
  DiagramBuilder(TwoCatRef index, SigmaClass sigma);

  DiagramBuilder& value(const std::string& object, CatRef c);
  DiagramBuilder& on_cell1(const std::string& cell,
                           const std::map<std::string, std::string>& objects,
                           const std::map<std::string, std::string>& arrows = {});
  DiagramBuilder& on_cell1(const std::string& cell, Functor f);
  DiagramBuilder& on_cell2(const std::string& cell,
                           const std::map<std::string, std::string>& components);

  CatDiagram build() const;
  DiagramRef build_shared() const {
    return std::make_shared<const CatDiagram>(build());
  }

 private:
  TwoCatRef index_;
  SigmaClass sigma_;
  std::map<int, CatRef> values_;
  std::map<int, Functor> cells1_;
  std::map<int, std::map<std::string, std::string>> cells2_;
};

Violations validate_diagram(const CatDiagram& f);

/// F(u)(x), F(u)(ξ) and F(γ)_x. Throw InputError on mismatched data.
int apply_diagram(const CatDiagram& f, int x, int u);
int apply_diagram_arrow(const CatDiagram& f, int xi, int u);
int apply_diagram_cell(const CatDiagram& f, int gamma, int x);

/// The diagram with value `c` everywhere and identities on all cells.
CatDiagram constant_diagram(const TwoCatRef& index, const SigmaClass& sigma,
                            const CatRef& c);

struct DiagramNatTransf {
  DiagramRef source;
  DiagramRef target;
  std::vector<Functor> components;  // per object of the index
};

DiagramNatTransf identity_diagram_transf(const DiagramRef& f);
Violations validate_diagram_transf(const DiagramNatTransf& t);

}  // namespace sigmacolim
