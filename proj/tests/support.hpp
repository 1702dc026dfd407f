#pragma once

// Random generators shared by the property tests.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sigmacolim/diagram.hpp"
#include "sigmacolim/fincat.hpp"
#include "sigmacolim/filtered.hpp"
#include "sigmacolim/two_cat.hpp"

namespace testsupport {

/// A random poset on n elements, viewed as a category ("<i,j>" for i ≤ j).
inline sigmacolim::CatRef random_poset(std::mt19937& rng, int n) {
  std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
  std::bernoulli_distribution coin(0.4);
  for (int i = 0; i < n; ++i) {
    le[i][i] = 1;
    for (int j = i + 1; j < n; ++j) le[i][j] = coin(rng);
  }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (le[i][k] && le[k][j]) le[i][j] = 1;
  sigmacolim::FinCategory::Builder b;
  auto name = [](int i, int j) {
    return "<" + std::to_string(i) + "," + std::to_string(j) + ">";
  };
  for (int i = 0; i < n; ++i) {
    b.add_bare_object("p" + std::to_string(i));
    b.set_identity("p" + std::to_string(i), name(i, i));
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (le[i][j]) b.add_arrow(name(i, j), "p" + std::to_string(i), "p" + std::to_string(j));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (le[i][j] && le[j][k]) b.set_compose(name(j, k), name(i, j), name(i, k));
  return b.build_shared();
}

/// Acyclic computad on 2 or 3 objects with arrows going up the object
/// order and up to two cells between paths of length ≤ 2. May contain a
/// 2-loop, which free_2category rejects.
inline sigmacolim::TwoComputad random_computad(std::mt19937& rng, int max_objects = 3) {
  sigmacolim::TwoComputad k;
  int n = 2 + static_cast<int>(rng() % (max_objects - 1));
  for (int i = 0; i < n; ++i) k.objects.push_back("o" + std::to_string(i));
  int arrows = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int m = static_cast<int>(rng() % 3);
      for (int r = 0; r < m; ++r) {
        k.arrows.push_back({"a" + std::to_string(arrows++), k.objects[i], k.objects[j],
                            static_cast<bool>(rng() % 2)});
      }
    }
  // Candidate sides: paths of length 1 or 2.
  std::vector<std::vector<std::string>> paths;
  for (const auto& a : k.arrows) paths.push_back({a.name});
  for (const auto& a : k.arrows)
    for (const auto& b : k.arrows)
      if (a.tgt == b.src) paths.push_back({a.name, b.name});
  auto ends = [&](const std::vector<std::string>& p) {
    std::string s, t;
    for (const auto& a : k.arrows) {
      if (a.name == p.front()) s = a.src;
      if (a.name == p.back()) t = a.tgt;
    }
    return std::make_pair(s, t);
  };
  int cells = static_cast<int>(rng() % 3);
  for (int c = 0; c < cells && !paths.empty(); ++c) {
    auto& p = paths[rng() % paths.size()];
    std::vector<std::vector<std::string>> par;
    for (auto& q : paths)
      if (ends(q) == ends(p)) par.push_back(q);
    k.cells.push_back({"c" + std::to_string(c), p, par[rng() % par.size()]});
  }
  return k;
}

/// Maps the generators of `k` at random into `target`; nullopt when a
/// generator has no possible image after a few attempts.
inline std::optional<sigmacolim::ComputadDiagram> random_diagram_into(
    std::mt19937& rng, const sigmacolim::TwoComputad& k,
    const sigmacolim::TwoCatRef& target) {
  const auto& a = *target;
  if (a.num_objects() == 0) return std::nullopt;
  for (int attempt = 0; attempt < 20; ++attempt) {
    std::map<std::string, int> objects, arrows, cells;
    for (const auto& o : k.objects) objects[o] = static_cast<int>(rng() % a.num_objects());
    bool ok = true;
    for (const auto& g : k.arrows) {
      const auto& c = a.cells1(objects[g.src], objects[g.tgt]);
      if (c.empty()) {
        ok = false;
        break;
      }
      arrows[g.name] = c[rng() % c.size()];
    }
    if (!ok) continue;
    auto image = [&](const std::vector<std::string>& p) {
      int r = arrows.at(p.front());
      for (std::size_t i = 1; i < p.size(); ++i) r = a.hcompose1(arrows.at(p[i]), r);
      return r;
    };
    for (const auto& g : k.cells) {
      const auto& c = a.cells2(image(g.src), image(g.tgt));
      if (c.empty()) {
        ok = false;
        break;
      }
      cells[g.name] = c[rng() % c.size()];
    }
    if (!ok) continue;
    return sigmacolim::diagram_from_computad(k, target, objects, arrows, cells);
  }
  return std::nullopt;
}

/// Chain index 0 → 1 → … → n-1 (Σ = all) with random posets and random
/// monotone maps on the generating steps; composites are left to the builder.
inline sigmacolim::DiagramRef random_chain_diagram(std::mt19937& rng, int n) {
  using namespace sigmacolim;
  auto index = twocats::locally_discrete(*cats::chain(n));
  DiagramBuilder b(index, sigma_all(index));
  std::vector<CatRef> values;
  for (int i = 0; i < n; ++i) {
    values.push_back(random_poset(rng, 1 + static_cast<int>(rng() % 3)));
    b.value(std::to_string(i), values.back());
  }
  for (int i = 0; i + 1 < n; ++i) {
    auto fs = enumerate_functors(values[i], values[i + 1]).items;
    b.on_cell1("a" + std::to_string(i) + std::to_string(i + 1), fs[rng() % fs.size()]);
  }
  return b.build_shared();
}

}  // namespace testsupport
