#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "sigmacolim/workspace.hpp"

using namespace sigmacolim;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// A small hand-written workspace: identities and unit composites omitted.
const char* kSmall = R"({
  "schema_version": 1,
  "categories": [
    {"name": "two", "objects": ["x", "y"], "arrows": [{"name": "f", "source": "x", "target": "y"}]},
    {"name": "one", "objects": ["*"], "arrows": []}
  ],
  "two_categories": [
    {"name": "A", "objects": ["0", "1"], "cells1": [{"name": "u", "source": "0", "target": "1"}]}
  ],
  "sigma_classes": [{"name": "S", "two_category": "A", "members": "all"}],
  "diagrams": [
    {"name": "D", "sigma": "S", "values": {"0": "one", "1": "two"},
     "cells1": {"u": {"objects": {"*": "y"}}}},
    {"name": "K", "sigma": "S", "values": {"0": "one", "1": "one"},
     "cells1": {"u": {"objects": {"*": "*"}}}}
  ],
  "transformations": [
    {"name": "t", "source": "D", "target": "K",
     "components": {"0": {"objects": {"*": "*"}}, "1": {"objects": {"x": "*", "y": "*"}, "arrows": {"f": "1_*"}}}}
  ],
  "fixtures": [{"name": "small", "sigma": "S", "diagram": "D", "filtered": true}]
})";

std::vector<std::string> issues_of(const std::string& text) {
  try {
    parse_workspace(text);
  } catch (const WorkspaceError& e) {
    return e.issues();
  }
  return {};
}

}  // namespace

TEST(Workspace, BundledRoundTrip) {
  auto w = bundled_workspace();
  auto text = serialize(w);
  EXPECT_EQ(serialize(parse_workspace(text)), text);
}

TEST(Workspace, ShippedFileIsTheNormalizedBundle) {
  auto text = read_file(std::string(SIGMACOLIM_SOURCE_DIR) + "/fixtures/bundled.json");
  EXPECT_EQ(text, serialize(bundled_workspace()));
  EXPECT_EQ(serialize(load_workspace(std::string(SIGMACOLIM_SOURCE_DIR) +
                                     "/fixtures/bundled.json")),
            text);
}

TEST(Workspace, LoadedFixturesMatchTheBuiltIns) {
  auto w = parse_workspace(serialize(bundled_workspace()));
  for (const auto& fx : bundled_fixtures()) {
    SCOPED_TRACE(fx.name);
    auto g = w.fixture(fx.name);
    EXPECT_TRUE(*g.index == *fx.index);
    EXPECT_EQ(g.sigma, fx.sigma);
    EXPECT_EQ(g.filtered, fx.filtered);
    EXPECT_EQ(g.failing_axiom, fx.failing_axiom);
    EXPECT_EQ(g.description, fx.description);
    ASSERT_EQ(static_cast<bool>(g.diagram), static_cast<bool>(fx.diagram));
    if (!fx.diagram) continue;
    for (std::size_t x = 0; x < fx.diagram->values.size(); ++x)
      EXPECT_TRUE(*g.diagram->values[x] == *fx.diagram->values[x]);
    EXPECT_EQ(g.diagram->cells1, fx.diagram->cells1);
    EXPECT_EQ(g.diagram->cells2, fx.diagram->cells2);
  }
}

TEST(Workspace, HandWrittenFileNormalizes) {
  auto w = parse_workspace(kSmall);
  EXPECT_EQ(w.categories.size(), 2u);
  EXPECT_EQ(w.category("two")->num_arrows(), 3);
  const auto& d = *w.diagram("D");
  EXPECT_EQ(d.at(1).object_name(d.cells1[d.index->cell1_index("u")].obj(0)), "y");
  auto normal = serialize(w);
  EXPECT_NE(normal, std::string(kSmall));
  EXPECT_EQ(serialize(parse_workspace(normal)), normal);
  EXPECT_NE(normal.find("\"1_x\""), std::string::npos);
}

TEST(Workspace, ParseErrorCarriesLineAndColumn) {
  std::string text = "{\n  \"schema_version\": 1,\n  \"categories\": [ }\n}";
  try {
    parse_workspace(text);
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
    EXPECT_EQ(e.column(), 19);
    EXPECT_NE(std::string(e.what()).find("line 3, column 19"), std::string::npos);
  }
}

TEST(Workspace, DanglingReferenceGivesOneError) {
  std::string text = kSmall;
  auto pos = text.find("\"1\": \"two\"");
  text.replace(pos, 10, "\"1\": \"zzz\"");
  auto issues = issues_of(text);
  ASSERT_EQ(issues.size(), 1u);
  EXPECT_NE(issues[0].find("diagrams.D"), std::string::npos);
  EXPECT_NE(issues[0].find("zzz"), std::string::npos);
}

TEST(Workspace, ValidatorViolationsAreLocated) {
  // u sends x to y and f to 1_y: fine. Break it by mapping f nowhere sensible.
  std::string bad = R"({
    "schema_version": 1,
    "categories": [
      {"name": "c", "objects": ["x", "y"], "arrows": [{"name": "f", "source": "x", "target": "y"},
                                                     {"name": "g", "source": "x", "target": "y"}],
       "compose": [["f", "1_x", "g"]]}
    ]
  })";
  auto issues = issues_of(bad);
  ASSERT_FALSE(issues.empty());
  for (const auto& i : issues) EXPECT_EQ(i.rfind("categories.c: ", 0), 0u) << i;
}

TEST(Workspace, NonNaturalTransformationIsReported) {
  // t at 0 picks x, but D(u) lands on y: the square for u fails.
  std::string broken = R"({
    "schema_version": 1,
    "categories": [
      {"name": "two", "objects": ["x", "y"], "arrows": [{"name": "f", "source": "x", "target": "y"}]},
      {"name": "one", "objects": ["*"], "arrows": []}
    ],
    "two_categories": [
      {"name": "A", "objects": ["0", "1"], "cells1": [{"name": "u", "source": "0", "target": "1"}]}
    ],
    "sigma_classes": [{"name": "S", "two_category": "A", "members": "all"}],
    "diagrams": [
      {"name": "D", "sigma": "S", "values": {"0": "one", "1": "two"},
       "cells1": {"u": {"objects": {"*": "y"}}}},
      {"name": "E", "sigma": "S", "values": {"0": "two", "1": "two"},
       "cells1": {"u": {"objects": {"x": "x", "y": "y"}, "arrows": {"f": "f"}}}}
    ],
    "transformations": [
      {"name": "t", "source": "D", "target": "E",
       "components": {"0": {"objects": {"*": "x"}}, "1": {"objects": {"x": "x", "y": "y"}, "arrows": {"f": "f"}}}}
    ]
  })";
  auto issues = issues_of(broken);
  ASSERT_FALSE(issues.empty());
  for (const auto& i : issues) EXPECT_EQ(i.rfind("transformations.t: ", 0), 0u) << i;
  EXPECT_EQ(issues[0], "transformations.t: TransfNaturality: u");
}

TEST(Workspace, StructuralMistakes) {
  EXPECT_FALSE(issues_of(R"({"schema_version": 1, "extra": []})").empty());
  EXPECT_THROW(parse_workspace(R"({"schema_version": 2})"), WorkspaceError);
  EXPECT_THROW(parse_workspace(R"({"categories": []})"), WorkspaceError);
  auto dup = issues_of(R"({"schema_version": 1, "categories": [
      {"name": "c", "objects": [], "arrows": []}, {"name": "c", "objects": [], "arrows": []}]})");
  ASSERT_EQ(dup.size(), 1u);
  EXPECT_NE(dup[0].find("duplicate"), std::string::npos);
  auto typed = issues_of(R"({"schema_version": 1, "categories": [
      {"name": "c", "objects": [3], "arrows": []}]})");
  ASSERT_EQ(typed.size(), 1u);
  EXPECT_NE(typed[0].find("expected a string"), std::string::npos);
}

TEST(Workspace, SigmaMembersByName) {
  std::string text = kSmall;
  auto pos = text.find("\"members\": \"all\"");
  text.replace(pos, 16, "\"members\": [\"1_0\", \"1_1\", \"u\"]");
  auto w = parse_workspace(text);
  const auto& s = w.sigmas.at("S").sigma;
  EXPECT_TRUE(s.contains(s.owner->cell1_index("u")));
  EXPECT_TRUE(s.contains(s.owner->cell1_index("1_0")));
  EXPECT_TRUE(s == sigma_all(s.owner));

  // Identities are not added silently.
  text = kSmall;
  text.replace(pos, 16, "\"members\": [\"u\"]");
  auto issues = issues_of(text);
  ASSERT_EQ(issues.size(), 2u);
  EXPECT_EQ(issues[0].rfind("sigma_classes.S: ", 0), 0u);
}
