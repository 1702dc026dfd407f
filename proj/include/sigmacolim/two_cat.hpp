#pragma once

// Finite strict 2-categories given by tables, marked classes of 1-cells,
// acyclic 2-computads and their free completions, and 2-functors.

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "sigmacolim/error.hpp"
#include "sigmacolim/fincat.hpp"

namespace sigmacolim {

/// A finite strict 2-category. Objects, 1-cells and 2-cells carry global
/// dense indices in lexicographic order of their identifiers. Each kind of
/// cell lives in its own namespace.
class Fin2Category {
 public:
  struct Cell1 {
    std::string name;
    int src = -1;  // object
    int tgt = -1;
  };
  struct Cell2 {
    std::string name;
    int src = -1;  // 1-cell
    int tgt = -1;
  };

  class Builder;

  int num_objects() const { return static_cast<int>(objects_.size()); }
  int num_cells1() const { return static_cast<int>(cells1_.size()); }
  int num_cells2() const { return static_cast<int>(cells2_.size()); }

  const std::string& object_name(int x) const { return objects_.at(x); }
  const Cell1& cell1(int f) const { return cells1_.at(f); }
  const Cell2& cell2(int a) const { return cells2_.at(a); }
  const std::string& cell1_name(int f) const { return cells1_.at(f).name; }
  const std::string& cell2_name(int a) const { return cells2_.at(a).name; }

  int src(int f) const { return cells1_[f].src; }
  int tgt(int f) const { return cells1_[f].tgt; }
  int src2(int a) const { return cells2_[a].src; }
  int tgt2(int a) const { return cells2_[a].tgt; }

  /// Identity 1-cell of an object and identity 2-cell of a 1-cell (-1 if
  /// the table declares none).
  int id1(int x) const { return id1_[x]; }
  int id2(int f) const { return id2_[f]; }
  bool is_id1(int f) const { return id1_[cells1_[f].src] == f; }
  bool is_id2(int a) const { return id2_[cells2_[a].src] == a; }

  /// Vertical β∘α, horizontal g·f on 1-cells and β·α on 2-cells; -1 when the
  /// table has no entry.
  int vcompose(int beta, int alpha) const { return lookup(vcomp_, beta, alpha); }
  int hcompose1(int g, int f) const { return lookup(hcomp1_, g, f); }
  int hcompose2(int beta, int alpha) const {
    return lookup(hcomp2_, beta, alpha);
  }
  /// h·α and α·k as whiskerings by identity 2-cells.
  int whisker_left(int h, int alpha) const { return hcompose2(id2(h), alpha); }
  int whisker_right(int alpha, int k) const { return hcompose2(alpha, id2(k)); }

  /// Vertical inverse, or -1.
  int inverse2(int a) const { return inverse2_[a]; }

  /// 1-cells X → Y and 2-cells f ⇒ g, in canonical order.
  const std::vector<int>& cells1(int x, int y) const {
    return homs1_[static_cast<std::size_t>(x) * objects_.size() + y];
  }
  const std::vector<int>& cells2(int f, int g) const;

  std::optional<int> find_object(std::string_view name) const;
  std::optional<int> find_cell1(std::string_view name) const;
  std::optional<int> find_cell2(std::string_view name) const;
  int object_index(std::string_view name) const;
  int cell1_index(std::string_view name) const;
  int cell2_index(std::string_view name) const;

  /// Table entries sorted by (left, right).
  std::vector<std::array<int, 3>> vcompose_triples() const;
  std::vector<std::array<int, 3>> hcompose1_triples() const;
  std::vector<std::array<int, 3>> hcompose2_triples() const;

  bool operator==(const Fin2Category& other) const;

 private:
  using Table = std::unordered_map<std::uint64_t, int>;
  static std::uint64_t key(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
           static_cast<std::uint32_t>(b);
  }
  static int lookup(const Table& t, int a, int b) {
    auto it = t.find(key(a, b));
    return it == t.end() ? -1 : it->second;
  }
  static std::vector<std::array<int, 3>> triples(const Table& t);

  std::vector<std::string> objects_;
  std::vector<Cell1> cells1_;
  std::vector<Cell2> cells2_;
  std::vector<int> id1_, id2_, inverse2_;
  Table vcomp_, hcomp1_, hcomp2_;
  std::vector<std::vector<int>> homs1_;
  std::map<std::pair<int, int>, std::vector<int>> homs2_;
  std::unordered_map<std::string, int> object_lookup_, cell1_lookup_,
      cell2_lookup_;
};

using TwoCatRef = std::shared_ptr<const Fin2Category>;

class Fin2Category::Builder {
 public:
  /// Adds an object with identity 1-cell "1_<name>" (whose identity 2-cell
  /// is "1_1_<name>").
  Builder& add_object(const std::string& name);
  /// Adds a 1-cell with identity 2-cell "1_<name>".
  Builder& add_cell1(const std::string& name, const std::string& src,
                     const std::string& tgt);
  Builder& add_cell2(const std::string& name, const std::string& src,
                     const std::string& tgt);
  /// Bare variants: no identities are generated.
  Builder& add_bare_object(const std::string& name);
  Builder& add_bare_cell1(const std::string& name, const std::string& src,
                          const std::string& tgt);
  Builder& set_id1(const std::string& object, const std::string& cell);
  Builder& set_id2(const std::string& cell1, const std::string& cell2);

  Builder& set_vcompose(const std::string& beta, const std::string& alpha,
                        const std::string& result);
  Builder& set_hcompose1(const std::string& g, const std::string& f,
                         const std::string& result);
  Builder& set_hcompose2(const std::string& beta, const std::string& alpha,
                         const std::string& result);

  /// With `fill_units`, entries forced by the unit laws (composites with
  /// identities, 1_g·1_f = 1_{gf}) are added when absent. Throws InputError
  /// on duplicate or dangling identifiers.
  Fin2Category build(bool fill_units = true) const;
  TwoCatRef build_shared(bool fill_units = true) const {
    return std::make_shared<const Fin2Category>(build(fill_units));
  }

 private:
  using Triple = std::array<std::string, 3>;
  std::vector<std::string> objects_;
  std::vector<Triple> cells1_, cells2_;
  std::vector<std::pair<std::string, std::string>> id1_, id2_;
  std::vector<Triple> vcomp_, hcomp1_, hcomp2_;
};

Violations validate_2category(const Fin2Category& a);

/// The category of 1-cells X → Y and 2-cells between them. Object and arrow
/// identifiers are the 1-cell and 2-cell names.
FinCategory hom_category(const Fin2Category& a, int x, int y);
FinCategory hom_category(const Fin2Category& a, std::string_view x,
                         std::string_view y);

/// A marked class of 1-cells.
struct SigmaClass {
  TwoCatRef owner;
  std::vector<char> members;  // indexed by 1-cell

  bool contains(int f) const { return members[f] != 0; }
  bool operator==(const SigmaClass& other) const {
    return members == other.members;
  }
};

SigmaClass sigma_all(const TwoCatRef& a);
SigmaClass sigma_identities(const TwoCatRef& a);
/// Throws InputError for unknown names.
SigmaClass sigma_from_names(const TwoCatRef& a,
                            const std::vector<std::string>& names);
std::vector<std::string> sigma_names(const SigmaClass& s);

Violations validate_sigma(const SigmaClass& s);

struct TwoFunctor {
  TwoCatRef domain;
  TwoCatRef codomain;
  std::vector<int> objects;
  std::vector<int> cells1;
  std::vector<int> cells2;

  bool operator==(const TwoFunctor& other) const {
    return objects == other.objects && cells1 == other.cells1 &&
           cells2 == other.cells2;
  }
};

TwoFunctor identity_2functor(const TwoCatRef& a);
/// The 2-functor onto the one-object, one-cell 2-category `point`.
TwoFunctor collapse_2functor(const TwoCatRef& a, const TwoCatRef& point);
Violations validate_2functor(const TwoFunctor& g);

/// A finite 2-computad. Paths list arrow generators in order of traversal
/// (first arrow first); the empty path at X stands for the identity.
struct TwoComputad {
  struct ArrowGen {
    std::string name, src, tgt;
    bool sigma = false;
  };
  struct CellGen {
    std::string name;
    std::vector<std::string> src, tgt;  // both nonempty and parallel
  };
  std::vector<std::string> objects;
  std::vector<ArrowGen> arrows;
  std::vector<CellGen> cells;
};

/// The free 2-category on a computad together with the data needed to map
/// it elsewhere.
struct FreeCompletion {
  TwoCatRef category;
  SigmaClass sigma;  // composites of Σ-flagged generators
  std::map<std::string, int> object_of;  // object name → object index
  std::map<std::string, int> arrow_of;   // arrow generator → 1-cell
  std::map<std::string, int> cell_of;    // cell generator → 2-cell

  struct Step {
    int generator;  // index into computad.cells
    int offset;     // position in the path the step rewrites
    bool operator==(const Step&) const = default;
    auto operator<=>(const Step&) const = default;
  };
  /// Per 1-cell: its path as generator indices (into computad.arrows).
  std::vector<std::vector<int>> paths;
  /// Per 2-cell: its normal-form derivation from the source path.
  std::vector<std::vector<Step>> derivations;
  TwoComputad computad;
  /// Per cell generator: source and target paths as arrow indices.
  std::vector<std::vector<int>> cell_src, cell_tgt;
};

/// Name of a 1-cell given as a path: "1_X" when empty, else generator names
/// joined by '*' in composition order ("b*a" for a then b).
std::string path_name(const TwoComputad& k, const std::vector<int>& path,
                      const std::string& object);

/// Builds the free 2-category. Rejects (InputError) dangling names,
/// non-parallel cell generators, cell generators with an empty side, cyclic
/// arrow graphs and 2-loops, naming the offending cycle.
FreeCompletion free_2category(const TwoComputad& k);

/// Extends an assignment on generators to a 2-functor out of the free
/// completion. `objects`, `arrows`, `cells` are keyed by generator name and
/// give indices in `target`. Throws InputError when a generator image has
/// the wrong boundary.
TwoFunctor extend_2functor(const FreeCompletion& free, const TwoCatRef& target,
                           const std::map<std::string, int>& objects,
                           const std::map<std::string, int>& arrows,
                           const std::map<std::string, int>& cells);

namespace twocats {
/// One object, identities only.
TwoCatRef point();
TwoCatRef empty();
/// Locally discrete 2-category on a finite category.
TwoCatRef locally_discrete(const FinCategory& c);
}  // namespace twocats

}  // namespace sigmacolim
