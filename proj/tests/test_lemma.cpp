#include <gtest/gtest.h>

#include <random>
#include <set>

#include "sigmacolim/fixtures.hpp"
#include "sigmacolim/lemma.hpp"

using namespace sigmacolim;

namespace {

std::vector<Fixture> colimit_fixtures() {
  std::vector<Fixture> out;
  for (auto& fx : bundled_fixtures())
    if (fx.filtered && fx.diagram) out.push_back(fx);
  return out;
}

// Shared legs, identity lifts and shared cells, restated over the raw
// output fields.
bool lifts_hold_naive(const Fin2Category& a, const LemmaInstance& inst, const LemmaOutput& out) {
  const auto& ps = inst.premorphisms;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = 0; j < ps.size(); ++j) {
      const auto& p = ps[i].p;
      const auto& q = ps[j].p;
      if (p.source.index == q.source.index && out.w[i] != out.w[j]) return false;
      if (p.source.index == q.target.index && out.w[i] != out.t[j]) return false;
      if (p.target.index == q.target.index && out.t[i] != out.t[j]) return false;
      bool pi = a.is_id1(p.u) && a.is_id1(p.v), qi = a.is_id1(q.u) && a.is_id1(q.v);
      if (pi || qi) continue;
      if (p.u == q.u && out.mu[i] != out.mu[j]) return false;
      if (p.v == q.v && out.nu[i] != out.nu[j]) return false;
      // μ_i and ν_j then sit on the same Δ arrow, once inverted.
      if (p.u == q.v && a.vcompose(out.mu[i], out.nu[j]) != a.id2(a.hcompose1(out.z[i], p.u)))
        return false;
    }
    const auto& p = ps[i].p;
    if (a.is_id1(p.u) && a.is_id1(p.v)) {
      if (out.z[i] != out.w[i] || out.z[i] != out.t[i]) return false;
      if (out.mu[i] != a.id2(out.w[i]) || out.nu[i] != a.id2(out.w[i])) return false;
    }
  }
  return true;
}

// Classes with at least two members.
std::vector<std::vector<Premorphism>> classes_with_two(const CatDiagram& f) {
  std::vector<std::vector<Premorphism>> out;
  auto q = homotopy_quotient(f);
  for (const auto& h : q.homs)
    for (std::size_t c = 0; c < h.reps.size(); ++c) {
      std::vector<Premorphism> members;
      for (std::size_t i = 0; i < h.members.size(); ++i)
        if (h.class_of[i] == static_cast<int>(c)) members.push_back(h.members[i]);
      if (members.size() >= 2) out.push_back(members);
    }
  return out;
}

}  // namespace

TEST(Lemma, IdentityPremorphismLiftsToIdentities) {
  auto fx = bundled_fixture("chain3");
  LemmaInstance inst{{fx.diagram}, {{0, identity_premorphism(*fx.diagram, {1, 0})}}, {}, {}};
  auto out = lemma_engine(inst);
  const auto& a = *fx.index;
  EXPECT_EQ(out.z[0], out.w[0]);
  EXPECT_EQ(out.z[0], out.t[0]);
  EXPECT_TRUE(a.is_id2(out.mu[0]));
  EXPECT_TRUE(a.is_id2(out.nu[0]));
  EXPECT_TRUE(check_lemma_output(inst, out).empty());
  EXPECT_TRUE(lifts_hold_naive(a, inst, out));
}

TEST(Lemma, SinglePremorphismWithoutEquations) {
  for (const auto& fx : colimit_fixtures()) {
    const auto& f = *fx.diagram;
    auto q = homotopy_quotient(f);
    for (const auto& h : q.homs)
      for (const auto& p : h.members) {
        LemmaInstance inst{{fx.diagram}, {{0, p}}, {LemmaTerm::leaf(0)}, {}};
        auto out = lemma_engine(inst);
        ASSERT_TRUE(check_lemma_output(inst, out).empty()) << fx.name;
        // The lift is homotopic to the original premorphism through E.
        const auto& a = *fx.index;
        HomotopyWitness w{out.e,      out.w[0],         out.t[0], out.z[0],
                          a.id1(out.e), out.mu[0],      a.id2(out.w[0]), out.nu[0],
                          a.id2(out.t[0])};
        ASSERT_TRUE(check_homotopy(f, p, out.tilde[0], w).empty())
            << describe(check_homotopy(f, p, out.tilde[0], w));
      }
  }
}

TEST(Lemma, Transitivity) {
  int instances = 0;
  for (const auto& fx : colimit_fixtures()) {
    const auto& f = *fx.diagram;
    for (const auto& cls : classes_with_two(f)) {
      for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
        const auto& x1 = cls[i];
        const auto& x2 = cls[i + 1];
        const auto& x3 = cls[(i + 2) % cls.size()];
        if (!is_homotopic(f, x1, x2) || !is_homotopic(f, x2, x3)) continue;
        LemmaInstance inst{{fx.diagram},
                           {{0, x1}, {0, x2}, {0, x3}},
                           {LemmaTerm::leaf(0), LemmaTerm::leaf(1), LemmaTerm::leaf(2)},
                           {{0, 1, std::nullopt}, {1, 2, std::nullopt}}};
        auto out = lemma_engine(inst);
        ASSERT_TRUE(check_lemma_output(inst, out).empty())
            << fx.name << describe(check_lemma_output(inst, out));
        ASSERT_TRUE(lifts_hold_naive(*fx.index, inst, out));
        ASSERT_EQ(out.term_tilde[0], out.term_tilde[1]);
        ASSERT_EQ(out.term_tilde[1], out.term_tilde[2]);
        auto w = tilde_homotopy(out, 0, 2);
        ASSERT_TRUE(check_homotopy(f, x1, x3, w).empty()) << describe(check_homotopy(f, x1, x3, w));
        ASSERT_TRUE(is_homotopic(f, x1, x3));
        ++instances;
      }
    }
  }
  EXPECT_GE(instances, 3);
}

TEST(Lemma, HorizontalComposition) {
  int instances = 0;
  std::mt19937 rng(3);
  for (const auto& fx : colimit_fixtures()) {
    const auto& f = *fx.diagram;
    auto q = homotopy_quotient(f);
    for (const auto& h1 : q.homs)
      for (const auto& h2 : q.homs) {
        if (h1.to != h2.from || h1.members.empty() || h2.members.empty()) continue;
        const auto& x1 = h1.members[rng() % h1.members.size()];
        const auto& e1 = h2.members[rng() % h2.members.size()];
        Premorphism x2 = x1, e2 = e1;
        for (std::size_t i = 0; i < h1.members.size(); ++i)
          if (h1.class_of[i] == h1.class_of[&x1 - h1.members.data()] && h1.members[i] != x1)
            x2 = h1.members[i];
        for (std::size_t i = 0; i < h2.members.size(); ++i)
          if (h2.class_of[i] == h2.class_of[&e1 - h2.members.data()] && h2.members[i] != e1)
            e2 = h2.members[i];
        auto g1 = gamma_choices(f, e1, x1);
        auto g2 = gamma_choices(f, e2, x2);
        LemmaInstance inst{{fx.diagram},
                           {{0, x1}, {0, x2}, {0, e1}, {0, e2}},
                           {LemmaTerm::leaf(0), LemmaTerm::leaf(1), LemmaTerm::leaf(2),
                            LemmaTerm::leaf(3), LemmaTerm::compose(2, 0, g1[rng() % g1.size()]),
                            LemmaTerm::compose(3, 1, g2[rng() % g2.size()])},
                           {{0, 1, std::nullopt}, {2, 3, std::nullopt}}};
        auto out = lemma_engine(inst);
        ASSERT_TRUE(check_lemma_output(inst, out).empty())
            << fx.name << describe(check_lemma_output(inst, out));
        ASSERT_TRUE(lifts_hold_naive(*fx.index, inst, out));
        // (η₁ ∘ ξ₁)~ = η̃₁ ∘ ξ̃₁ = η̃₂ ∘ ξ̃₂ = (η₂ ∘ ξ₂)~
        ASSERT_EQ(out.term_tilde[4], out.term_tilde[5]);
        ASSERT_EQ(evaluate_in_vertex(inst, out, 4), evaluate_in_vertex(inst, out, 5));
        auto w = tilde_homotopy(out, 4, 5);
        ASSERT_TRUE(check_homotopy(f, out.term_value[4], out.term_value[5], w).empty());
        ++instances;
      }
  }
  EXPECT_GE(instances, 20);
}

TEST(Lemma, NestedCompositionsAndRepeatedTerms) {
  auto fx = bundled_fixture("chain3");
  const auto& f = *fx.diagram;
  auto objs = enumerate_objects(f);
  // (p,0) → (0,1) → (1,1) → (1,2)
  auto first = enumerate_premorphisms(f, {0, 0}, {1, 0});
  auto second = enumerate_premorphisms(f, {1, 0}, {1, 1});
  auto third = enumerate_premorphisms(f, {1, 1}, {2, 1});
  ASSERT_FALSE(first.empty());
  ASSERT_FALSE(second.empty());
  ASSERT_FALSE(third.empty());
  LemmaInstance inst{{fx.diagram},
                     {{0, first[0]}, {0, second[0]}, {0, third[0]}},
                     {LemmaTerm::leaf(0), LemmaTerm::leaf(1), LemmaTerm::leaf(2),
                      LemmaTerm::compose(1, 0), LemmaTerm::compose(2, 3),
                      LemmaTerm::compose(2, 1), LemmaTerm::compose(5, 0),
                      LemmaTerm::compose(1, 0)},
                     {{4, 6, std::nullopt}}};
  auto out = lemma_engine(inst);
  EXPECT_TRUE(check_lemma_output(inst, out).empty()) << describe(check_lemma_output(inst, out));
  // The repeated composite adds no new object to Δ.
  EXPECT_EQ(out.term_tilde[3], out.term_tilde[7]);
  EXPECT_EQ(out.delta.free.object_of.count("T7"), 0u);
  EXPECT_EQ(out.delta.free.object_of.count("T3"), 1u);
}

TEST(Lemma, SharedHomotopyAcrossFunctors) {
  int instances = 0;
  for (const auto& fx : colimit_fixtures()) {
    auto f = fx.diagram;
    auto f2 = std::make_shared<const CatDiagram>(product_diagram(*f, *f));
    for (const auto& cls : classes_with_two(*f)) {
      const auto& x = cls[0];
      const auto& e = cls[1];
      if (!is_homotopic(*f, e, x)) continue;
      // The same pair doubled in F × F shares (u, v) with the original.
      auto pair_of = [&](const Premorphism& p) {
        const auto& a = *fx.index;
        auto pc = product_category(f->values[a.tgt(p.u)], f->values[a.tgt(p.u)]);
        auto ps = product_category(f->values[p.source.index], f->values[p.source.index]);
        auto pt = product_category(f->values[p.target.index], f->values[p.target.index]);
        return Premorphism{{p.source.index, ps.object_of(p.source.x, p.source.x)},
                           {p.target.index, pt.object_of(p.target.x, p.target.x)},
                           p.u,
                           p.v,
                           pc.arrow_of(p.xi, p.xi)};
      };
      auto shared = shared_homotopy({f, f2}, {e, pair_of(e)}, {x, pair_of(x)});
      EXPECT_TRUE(check_homotopy(*f, e, x, shared.witness).empty());
      EXPECT_TRUE(check_homotopy(*f2, pair_of(e), pair_of(x), shared.witness).empty());
      ++instances;
    }
  }
  EXPECT_GE(instances, 2);
}

TEST(Lemma, SharedHomotopyChecksHypotheses) {
  auto fx = bundled_fixture("collapse");
  const auto& f = *fx.diagram;
  auto cls = classes_with_two(f);
  ASSERT_FALSE(cls.empty());
  const auto& members = cls[0];
  EXPECT_THROW(shared_homotopy({fx.diagram}, {members[0]}, {}), InputError);
  Premorphism other = members[1];
  for (const auto& m : members)
    if (m.u != members[0].u || m.v != members[0].v) other = m;
  if (other.u != members[0].u || other.v != members[0].v)
    EXPECT_THROW(shared_homotopy({fx.diagram, fx.diagram}, {members[0], members[0]},
                                 {members[0], other}),
                 InputError);
  ColimObject elsewhere{0, 0};
  for (const auto& o : enumerate_objects(f))
    if (o != members[0].source) elsewhere = o;
  auto id = identity_premorphism(f, elsewhere);
  EXPECT_THROW(shared_homotopy({fx.diagram}, {members[0]}, {id}), InputError);
}

TEST(Lemma, RejectsMalformedInstances) {
  auto fx = bundled_fixture("walking_arrow");
  const auto& f = *fx.diagram;
  auto p = identity_premorphism(f, {0, 0});
  auto q = identity_premorphism(f, {1, 0});
  EXPECT_THROW(lemma_engine({}), InputError);
  EXPECT_THROW(lemma_engine({{fx.diagram}, {{3, p}}, {}, {}}), InputError);
  Premorphism bad = p;
  bad.xi = 99;
  EXPECT_THROW(lemma_engine({{fx.diagram}, {{0, bad}}, {}, {}}), InputError);
  // Not composable.
  EXPECT_THROW(lemma_engine({{fx.diagram},
                             {{0, p}, {0, q}},
                             {LemmaTerm::leaf(0), LemmaTerm::leaf(1), LemmaTerm::compose(1, 0)},
                             {}}),
               InputError);
  // Forward reference.
  EXPECT_THROW(lemma_engine({{fx.diagram}, {{0, p}}, {LemmaTerm::compose(1, 0)}, {}}),
               InputError);
  // Unequal endpoints.
  EXPECT_THROW(lemma_engine({{fx.diagram},
                             {{0, p}, {0, q}},
                             {LemmaTerm::leaf(0), LemmaTerm::leaf(1)},
                             {{0, 1, std::nullopt}}}),
               InputError);
  // An equation that does not hold.
  auto cf = bundled_fixture("chain3");
  auto hom = enumerate_premorphisms(*cf.diagram, {1, 0}, {1, 1});
  auto q2 = homotopy_quotient(*cf.diagram);
  const auto& h = q2.hom({1, 0}, {1, 1});
  ASSERT_GE(h.reps.size(), 1u);
  auto loop = q2.hom({1, 0}, {1, 0});
  for (std::size_t i = 0; i < loop.members.size(); ++i)
    for (std::size_t j = 0; j < loop.members.size(); ++j)
      if (loop.class_of[i] != loop.class_of[j]) {
        EXPECT_THROW(lemma_engine({{cf.diagram},
                                   {{0, loop.members[i]}, {0, loop.members[j]}},
                                   {LemmaTerm::leaf(0), LemmaTerm::leaf(1)},
                                   {{0, 1, std::nullopt}}}),
                     InputError);
        return;
      }
}

TEST(Lemma, CheckCatchesCorruptedOutput) {
  auto fx = bundled_fixture("collapse");
  const auto& f = *fx.diagram;
  auto cls = classes_with_two(f);
  ASSERT_FALSE(cls.empty());
  LemmaInstance inst{{fx.diagram},
                     {{0, cls[0][0]}, {0, cls[0][1]}},
                     {LemmaTerm::leaf(0), LemmaTerm::leaf(1)},
                     {{0, 1, std::nullopt}}};
  auto out = lemma_engine(inst);
  ASSERT_TRUE(check_lemma_output(inst, out).empty());
  auto kinds = [&](const LemmaOutput& o) {
    std::set<std::string> ks;
    for (const auto& v : check_lemma_output(inst, o)) ks.insert(v.kind);
    return ks;
  };
  auto broken = out;
  broken.term_tilde[1].xi = -1;
  EXPECT_TRUE(kinds(broken).count("LemmaEquationLift"));
  broken = out;
  broken.w[1] = fx.index->num_cells1();
  EXPECT_TRUE(kinds(broken).count("LemmaSharedLeg"));
  broken = out;
  broken.tilde[0].xi = -1;
  EXPECT_TRUE(kinds(broken).count("LemmaEquation"));
}

TEST(LemmaProperties, RandomInstances) {
  std::mt19937 rng(17);
  int ran = 0;
  for (const auto& fx : colimit_fixtures()) {
    const auto& f = *fx.diagram;
    auto q = homotopy_quotient(f);
    for (int trial = 0; trial < 15; ++trial) {
      // A random path of up to three premorphisms plus one equation per class pair.
      std::vector<Premorphism> path;
      ColimObject at = q.objects[rng() % q.objects.size()];
      for (int step = 0; step < 3; ++step) {
        std::vector<const HomClasses*> outs;
        for (const auto& h : q.homs)
          if (h.from == at && !h.members.empty()) outs.push_back(&h);
        if (outs.empty()) break;
        const auto* h = outs[rng() % outs.size()];
        path.push_back(h->members[rng() % h->members.size()]);
        at = h->to;
      }
      if (path.empty()) continue;
      LemmaInstance inst;
      inst.functors = {fx.diagram};
      for (const auto& p : path) {
        inst.terms.push_back(LemmaTerm::leaf(static_cast<int>(inst.premorphisms.size())));
        inst.premorphisms.push_back({0, p});
      }
      int acc = 0;
      for (std::size_t i = 1; i < path.size(); ++i) {
        inst.terms.push_back(LemmaTerm::compose(static_cast<int>(i), acc));
        acc = static_cast<int>(inst.terms.size()) - 1;
      }
      // Tie the composite to a homotopic representative of its class.
      const auto& whole = q.hom(path.front().source, path.back().target);
      auto lifted = lemma_engine(inst);
      const auto& composite = lifted.term_value[acc];
      auto pos = std::lower_bound(whole.members.begin(), whole.members.end(), composite);
      ASSERT_NE(pos, whole.members.end());
      int cls = whole.class_of[pos - whole.members.begin()];
      const auto& rep = whole.members[whole.reps[cls]];
      inst.premorphisms.push_back({0, rep});
      inst.terms.push_back(LemmaTerm::leaf(static_cast<int>(inst.premorphisms.size()) - 1));
      inst.equations.push_back({acc, static_cast<int>(inst.terms.size()) - 1, std::nullopt});
      auto out = lemma_engine(inst);
      ASSERT_TRUE(check_lemma_output(inst, out).empty())
          << fx.name << describe(check_lemma_output(inst, out));
      ASSERT_TRUE(lifts_hold_naive(*fx.index, inst, out));
      ++ran;
    }
  }
  EXPECT_GE(ran, 40);
}
