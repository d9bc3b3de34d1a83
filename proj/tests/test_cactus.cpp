#include <gtest/gtest.h>

#include "dihedral.hpp"
#include "klc/cactus.hpp"
#include "klc/errors.hpp"

using namespace klc;
using namespace klc::testing;

namespace {

std::size_t count(const CactusPresentation& p, CactusRelation::Kind kind) {
  return static_cast<std::size_t>(
      std::count_if(p.relations.begin(), p.relations.end(), [&](const auto& r) { return r.kind == kind; }));
}

struct Named {
  std::string type;
  std::string weights;
};

}  // namespace

TEST(Presentation, Dihedral) {
  const auto system = CoxeterSystem::named("I2(5)");
  const auto p = CactusPresentation::build(system);
  EXPECT_EQ(p.generators, (std::vector<GeneratorSet>{GeneratorSet(1), GeneratorSet(2), GeneratorSet(3)}));
  EXPECT_EQ(count(p, CactusRelation::Kind::C1), 3u);
  EXPECT_EQ(count(p, CactusRelation::Kind::C2), 0u);
  EXPECT_EQ(count(p, CactusRelation::Kind::C3), 2u);
  // w0 swaps s and t for m odd
  for (const auto& r : p.relations)
    if (r.kind == CactusRelation::Kind::C3) EXPECT_EQ(r.K, GeneratorSet(3u ^ r.I.bits()));

  const auto even = CactusPresentation::build(CoxeterSystem::named("I2(6)"));
  for (const auto& r : even.relations)
    if (r.kind == CactusRelation::Kind::C3) EXPECT_EQ(r.K, r.I);
}

TEST(Presentation, ReducibleRankTwo) {
  const auto p = CactusPresentation::build(CoxeterSystem::named("I2(2)"));
  EXPECT_EQ(p.generators.size(), 2u);
  EXPECT_EQ(count(p, CactusRelation::Kind::C2), 1u);
  EXPECT_EQ(count(p, CactusRelation::Kind::C3), 0u);
}

TEST(Presentation, B3) {
  const auto system = CoxeterSystem::named("B3");
  const auto p = CactusPresentation::build(system);
  std::vector<std::string> names;
  for (GeneratorSet I : p.generators) names.push_back(system.render(I));
  EXPECT_EQ(names, (std::vector<std::string>{"t", "s1", "s2", "t,s1", "s1,s2", "t,s1,s2"}));
  EXPECT_FALSE(p.is_generator(system.parse_set("t,s2")));
  EXPECT_EQ(count(p, CactusRelation::Kind::C2), 1u);  // {t}, {s2}
  // {t} and {s1} inside {t,s1}, {s1} and {s2} inside {s1,s2}, and all five inside S
  EXPECT_EQ(count(p, CactusRelation::Kind::C3), 9u);
  for (const auto& r : p.relations) {
    // w0 is central in B3, and w_{s1,s2} swaps s1 and s2
    if (r.kind != CactusRelation::Kind::C3) continue;
    if (r.J == system.parse_set("s1,s2"))
      EXPECT_EQ(r.K, GeneratorSet(system.parse_set("s1,s2").bits() ^ r.I.bits()));
    else
      EXPECT_EQ(r.K, r.I);
  }
}

TEST(Presentation, InfiniteGroupsOnlyUseFiniteSubsets) {
  const auto system = CoxeterSystem::named("I2(inf)");
  const auto p = CactusPresentation::build(system);
  EXPECT_EQ(p.generators.size(), 2u);
  EXPECT_EQ(count(p, CactusRelation::Kind::C2), 0u);
}

TEST(Words, ParseAndRender) {
  const auto system = CoxeterSystem::named("B3");
  const auto p = CactusPresentation::build(system);
  const auto word = parse_cactus_word(p, system, " s1,t | s2 ");
  ASSERT_EQ(word.size(), 2u);
  EXPECT_EQ(word[0], system.parse_set("t,s1"));
  EXPECT_EQ(render_cactus_word(system, word), "t,s1|s2");
  EXPECT_TRUE(parse_cactus_word(p, system, "").empty());
  EXPECT_THROW(parse_cactus_word(p, system, "t,s2"), UsageError);
  EXPECT_THROW(parse_cactus_word(p, system, "u"), UsageError);
}

TEST(Words, ProjectToW) {
  const auto system = CoxeterSystem::named("I2(3)");
  const auto group = CoxeterGroup::build(system);
  const auto p = CactusPresentation::build(system);
  EXPECT_EQ(project_to_W(*group, {}), 0u);
  EXPECT_EQ(project_to_W(*group, parse_cactus_word(p, system, "s")), group->parse("s"));
  EXPECT_EQ(project_to_W(*group, parse_cactus_word(p, system, "s,t")), group->parse("s.t.s"));
  EXPECT_EQ(project_to_W(*group, parse_cactus_word(p, system, "s,t|s,t")), 0u);
  EXPECT_EQ(project_to_W(*group, parse_cactus_word(p, system, "s|t")), group->parse("s.t"));
}

TEST(Action, Relations) {
  std::vector<Named> cases{{"A3", ""}, {"B3", "t=2,s1=1,s2=1"}};
  for (int m = 3; m <= 8; ++m) {
    cases.push_back({dihedral_type(m), ""});
    if (m % 2 == 0) {
      cases.push_back({dihedral_type(m), "s=1,t=2"});
      cases.push_back({dihedral_type(m), "s=3,t=1"});
    }
  }
  for (const auto& [type, weights] : cases) {
    const auto system = CoxeterSystem::named(type);
    Workspace ws(system, WeightFunction::parse(system, weights));
    CactusAction action(ws);
    const auto report = action.verify_relations();
    EXPECT_TRUE(report.passed()) << type << " " << weights << "\n" << report.summary();
    for (const auto& c : report.checks())
      if (c.name.rfind("C2", 0) != 0 || type[0] == 'A' || type[0] == 'B') EXPECT_GT(c.cases, 0u) << type << " " << c.name;
  }
}

TEST(Action, WordsActRightToLeft) {
  const auto system = CoxeterSystem::named("I2(5)");
  Workspace ws(system, WeightFunction::constant(system));
  CactusAction action(ws);
  const auto& g = ws.group();
  const auto& p = action.presentation();
  const auto whole = parse_cactus_word(p, system, "s,t");
  for (int i = 1; i < 5; ++i) EXPECT_EQ(action.act(whole, Side::Left, s_(g, i)), t_(g, 5 - i));
  for (Elem w = 0; w < g.size(); ++w) {
    EXPECT_EQ(action.act({}, Side::Left, w), w);
    EXPECT_EQ(action.act(parse_cactus_word(p, system, "s,t|s,t"), Side::Right, w), w);
    const Elem composed = action.permutation(system.parse_set("s"), Side::Left)[action.permutation(system.parse_set("s,t"), Side::Left)[w]];
    EXPECT_EQ(action.act(parse_cactus_word(p, system, "s|s,t"), Side::Left, w), composed);
  }
}

TEST(Action, CompositeSigns) {
  const auto system = CoxeterSystem::named("B3");
  Workspace ws(system, WeightFunction::parse(system, "t=2,s1=1,s2=1"));
  CactusAction action(ws);
  const auto& p = action.presentation();
  const auto word = parse_cactus_word(p, system, "t,s1|s1,s2|t,s1,s2");
  const auto composite = action.compose(word, Side::Left);
  for (Elem w = 0; w < ws.group().size(); ++w) {
    EXPECT_EQ(composite.map[w], action.act(word, Side::Left, w));
    int sign = 1;
    Elem x = w;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      sign *= action.signs(*it, Side::Left)[x];
      x = action.permutation(*it, Side::Left)[x];
    }
    EXPECT_EQ(composite.sign[w], sign);
  }
  // the composite is again a left cellular pair
  EXPECT_TRUE(verify_cellular_pair(ws, {composite.map, composite.sign, Side::Left}).passed());
  const auto signs = action.compare_relation_signs();
  EXPECT_EQ(signs.checks().size(), 2 * p.relations.size());
}

TEST(Action, Orbits) {
  const auto system = CoxeterSystem::named("I2(5)");
  Workspace ws(system, WeightFunction::constant(system));
  CactusAction action(ws);
  const auto& g = ws.group();
  const Elem w0 = g.longest();
  const auto left = action.orbits(CellKind::Left);
  // 1 and w0 are fixed; for m odd lambda_{s,t} swaps Gamma_s and Gamma_t
  EXPECT_EQ(left.front(), std::vector<Elem>{0});
  EXPECT_EQ(left.back(), std::vector<Elem>{w0});
  for (const auto& orbit : left) {
    for (Elem w : orbit) {
      EXPECT_EQ(g.descents(w, Side::Left), g.descents(orbit.front(), Side::Left));
    }
  }
  // the singletons act trivially and lambda, rho send length i to 5 - i
  std::vector<std::vector<Elem>> expected{{0}, {}, {}, {w0}};
  for (Elem w = 1; w < w0; ++w) expected[std::min(g.length(w), 5 - g.length(w))].push_back(w);
  EXPECT_EQ(action.orbits(CellKind::TwoSided), expected);
}

TEST(Action, LeftAndRightActionsCommute) {
  const auto system = CoxeterSystem::named("A3");
  Workspace ws(system, WeightFunction::constant(system));
  CactusAction action(ws);
  const auto& p = action.presentation();
  const auto u = parse_cactus_word(p, system, "s1,s2|s2,s3|s1,s2,s3");
  const auto v = parse_cactus_word(p, system, "s2|s1,s2,s3|s3");
  for (Elem w = 0; w < ws.group().size(); ++w)
    EXPECT_EQ(action.act(u, Side::Left, action.act(v, Side::Right, w)),
              action.act(v, Side::Right, action.act(u, Side::Left, w)));
}

TEST(Action, DependsOnWeights) {
  const auto system = CoxeterSystem::named("I2(6)");
  Workspace equal(system, WeightFunction::constant(system));
  Workspace unequal(system, WeightFunction::parse(system, "s=1,t=2"));
  EXPECT_NE(CactusAction(equal).orbits(CellKind::Left), CactusAction(unequal).orbits(CellKind::Left));
}

TEST(Action, RejectsNonGenerators) {
  const auto system = CoxeterSystem::named("B3");
  Workspace ws(system, WeightFunction::constant(system));
  CactusAction action(ws);
  EXPECT_THROW(action.permutation(system.parse_set("t,s2"), Side::Left), UsageError);
}
