#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sigmacolim/cli.hpp"
#include "sigmacolim/fincat.hpp"
#include "sigmacolim/workspace.hpp"

using namespace sigmacolim;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream f(p, std::ios::binary);
  f << text;
}

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("sigmacolim_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

ojson report(const fs::path& dir, const std::string& command) {
  return ojson::parse(read_file(dir / (command + ".json")));
}

bool contains(const std::string& s, const std::string& what) {
  return s.find(what) != std::string::npos;
}

}  // namespace

TEST(Cli, Sha256) {
  EXPECT_EQ(sha256_hex("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_EQ(sha256_hex(""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(Cli, ExitCodes) {
  auto ok = run({"check-filtered", "-f", "walking_arrow"});
  EXPECT_EQ(ok.code, kPositive);
  EXPECT_TRUE(contains(ok.out, "outcome: positive"));

  auto neg = run({"check-filtered", "-f", "discrete2"});
  EXPECT_EQ(neg.code, kNegative);
  EXPECT_TRUE(contains(neg.out, "sigmaF0"));
  EXPECT_TRUE(contains(neg.out, "outcome: negative"));

  EXPECT_EQ(run({"frobnicate"}).code, kUsage);
  EXPECT_EQ(run({}).code, kUsage);
  EXPECT_EQ(run({"colimit"}).code, kUsage);
  EXPECT_EQ(run({"colimit", "-f", "no_such_fixture"}).code, kUsage);
  EXPECT_EQ(run({"commute", "-f", "walking_arrow", "--kind", "coend"}).code, kUsage);
  EXPECT_EQ(run({"check-filtered", "-f", "terminal", "--max-vertices", "lots"}).code, kUsage);
  EXPECT_EQ(run({"colimit", "-f", "parallel_pair"}).code, kUsage);  // no diagram
  EXPECT_EQ(run({"--help"}).code, kPositive);
}

TEST(Cli, NonFilteredIndexIsANegativeOutcome) {
  // The bundled negative fixtures carry no diagram, so attach one.
  auto w = bundled_workspace();
  auto base = scratch("nonfiltered");
  auto text = serialize(w);
  // A constant diagram over the discrete index, built by hand.
  auto j = ojson::parse(text);
  ojson values = ojson::object();
  values["0"] = "terminal.*";
  values["1"] = "terminal.*";
  j["diagrams"].push_back({{"name", "disc"}, {"sigma", "discrete2.sigma"}, {"values", values}});
  j["fixtures"].push_back({{"name", "disc"}, {"sigma", "discrete2.sigma"}, {"diagram", "disc"},
                           {"filtered", false}, {"failing_axiom", "sigmaF0"}});
  auto file = base / "w.json";
  write_file(file, j.dump(2));
  auto r = run({"colimit", "-w", file.string(), "-f", "disc"});
  EXPECT_EQ(r.code, kNegative) << r.err;
  EXPECT_TRUE(contains(r.out, "rejected"));
}

TEST(Cli, ColimitOverTerminalIndexIsTheValue) {
  auto dir = scratch("terminal");
  auto r = run({"colimit", "-f", "terminal", "-o", dir.string()});
  ASSERT_EQ(r.code, kPositive) << r.err;
  auto j = report(dir, "colimit");
  EXPECT_EQ(j["format"], "sigmacolim-report/1");
  EXPECT_EQ(j["outcome"], "positive");
  ojson ws = {{"schema_version", 1}, {"categories", ojson::array({j["result"]["category"]})}};
  ws["categories"][0]["name"] = "L";
  auto l = parse_workspace(ws.dump()).category("L");
  auto value = bundled_workspace().fixture("terminal").diagram->values[0];
  EXPECT_EQ(l->num_objects(), value->num_objects());
  EXPECT_EQ(l->num_arrows(), value->num_arrows());
  bool iso = false;
  for (const auto& f : enumerate_functors(value, l).items) iso = iso || is_isomorphism_of_categories(f);
  EXPECT_TRUE(iso);
  EXPECT_FALSE(j.contains("timing_ms"));
}

TEST(Cli, ArtifactsAreDeterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"validate"},
      {"check-filtered", "-f", "lax_fork"},
      {"find-cone", "-f", "chain3", "--all"},
      {"colimit", "-f", "idempotent"},
      {"universal-check", "-f", "walking_arrow"},
      {"commute", "-f", "walking_arrow", "--kind", "cotensor"},
      {"commute", "-f", "walking_arrow", "--kind", "product"},
      {"commute", "-f", "walking_arrow", "--kind", "pseudoeq"},
      {"lemma-run", "-f", "walking_arrow"},
  };
  auto a = scratch("det_a"), b = scratch("det_b");
  for (const auto& c : commands) {
    SCOPED_TRACE(c.front() + (c.size() > 2 ? " " + c[2] : ""));
    auto ca = c, cb = c;
    ca.insert(ca.end(), {"--out", a.string()});
    cb.insert(cb.end(), {"--out", b.string()});
    auto ra = run(ca), rb = run(cb);
    EXPECT_EQ(ra.code, kPositive) << ra.err << ra.out;
    EXPECT_EQ(ra.code, rb.code);
    EXPECT_EQ(ra.out, rb.out);
    for (const auto* ext : {".json", ".txt"}) {
      auto fa = read_file(a / (c.front() + ext)), fb = read_file(b / (c.front() + ext));
      EXPECT_FALSE(fa.empty());
      EXPECT_EQ(fa, fb);
    }
  }
}

TEST(Cli, TimingIsOptIn) {
  auto dir = scratch("timing");
  auto r = run({"check-filtered", "-f", "terminal", "--timing", "-o", dir.string()});
  ASSERT_EQ(r.code, kPositive);
  EXPECT_TRUE(report(dir, "check-filtered").contains("timing_ms"));
  EXPECT_TRUE(contains(r.out, "time: "));
  // Timing does not change the digest.
  auto plain = run({"check-filtered", "-f", "terminal"});
  auto digest = [](const std::string& s) { return s.substr(s.find("sha256:"), 71); };
  EXPECT_EQ(digest(r.out), digest(plain.out));
}

TEST(Cli, DigestFollowsTheInput) {
  auto a = run({"check-filtered", "-f", "terminal"});
  auto b = run({"check-filtered", "-f", "chain3"});
  auto c = run({"check-filtered", "-f", "terminal", "--strict-f2"});
  auto digest = [](const std::string& s) { return s.substr(s.find("sha256:"), 71); };
  EXPECT_NE(digest(a.out), digest(b.out));
  EXPECT_NE(digest(a.out), digest(c.out));
}

TEST(Cli, CapsAreReported) {
  auto dir = scratch("caps");
  auto r = run({"check-filtered", "-f", "walking_arrow", "--max-witness-size", "1", "-o",
                dir.string()});
  EXPECT_EQ(r.code, kPositive);
  auto j = report(dir, "check-filtered");
  EXPECT_FALSE(j["caps_hit"].empty());
  EXPECT_TRUE(contains(r.out, "cap hit: max-witness-size"));

  auto u = run({"universal-check", "-f", "walking_arrow", "--max-vertices", "1", "-o",
                dir.string()});
  EXPECT_EQ(u.code, kNegative);
  EXPECT_TRUE(contains(u.out, "cap hit: max-vertices"));
  EXPECT_FALSE(report(dir, "universal-check")["caps_hit"].empty());
}

TEST(Cli, FixtureDirectory) {
  auto dir = scratch("fixture_dir");
  auto j = ojson::parse(serialize(bundled_workspace()));
  for (auto& f : j["fixtures"])
    if (f["name"] == "chain3") f["name"] = "mine";
  write_file(dir / "a.json", j.dump());
  write_file(dir / "notes.txt", "ignored");
  ::setenv(kFixtureDirVar, dir.string().c_str(), 1);
  auto r = run({"check-filtered", "-f", "mine"});
  auto v = run({"validate"});
  ::unsetenv(kFixtureDirVar);
  EXPECT_EQ(r.code, kPositive) << r.err;
  EXPECT_TRUE(contains(r.out, "fixture: mine"));
  EXPECT_EQ(v.code, kPositive) << v.out;
  EXPECT_TRUE(contains(v.out, "a.json: valid"));

  ::setenv(kFixtureDirVar, (dir / "a.json").string().c_str(), 1);
  auto bad = run({"check-filtered", "-f", "terminal"});
  ::unsetenv(kFixtureDirVar);
  EXPECT_EQ(bad.code, kUsage);
}

TEST(Cli, ValidateReportsProblems) {
  auto dir = scratch("validate");
  write_file(dir / "broken.json",
             R"({"schema_version": 1, "categories": [{"name": "c", "objects": ["x"],
                 "arrows": [{"name": "f", "source": "x", "target": "y"}]}]})");
  auto r = run({"validate", "-w", (dir / "broken.json").string()});
  EXPECT_EQ(r.code, kNegative);
  EXPECT_TRUE(contains(r.out, "categories.c"));

  write_file(dir / "syntax.json", "{\n  \"schema_version\": 1,,\n}");
  auto s = run({"validate", "-w", (dir / "syntax.json").string()});
  EXPECT_EQ(s.code, kUsage);
  EXPECT_TRUE(contains(s.err, "line 2"));

  // A declaration that disagrees with the computation.
  auto j = ojson::parse(serialize(bundled_workspace()));
  for (auto& f : j["fixtures"])
    if (f["name"] == "terminal") f["filtered"] = false;
  write_file(dir / "liar.json", j.dump());
  auto l = run({"validate", "-w", (dir / "liar.json").string()});
  EXPECT_EQ(l.code, kNegative);
  EXPECT_TRUE(contains(l.out, "fixture terminal disagrees"));
}

TEST(Cli, FindCone) {
  auto r = run({"find-cone", "-f", "chain3"});
  EXPECT_EQ(r.code, kPositive);
  EXPECT_TRUE(contains(r.out, "sigma-cone found"));
  EXPECT_EQ(run({"find-cone", "-f", "chain3", "--objects", "0,nope"}).code, kUsage);
}

TEST(Cli, CommuteKinds) {
  auto dir = scratch("commute");
  for (const auto* kind : {"cotensor", "product", "pseudoeq"}) {
    SCOPED_TRACE(kind);
    auto r = run({"commute", "-f", "walking_arrow", "--kind", kind, "-o", dir.string()});
    ASSERT_EQ(r.code, kPositive) << r.err;
    auto j = report(dir, "commute");
    EXPECT_TRUE(j["result"]["report"]["equivalence"].get<bool>());
    EXPECT_TRUE(j["result"]["violations"].empty());
    // Not an isomorphism for this index.
    EXPECT_FALSE(j["result"]["objects_bijective"].get<bool>());
  }
  auto named = run({"commute", "-f", "walking_arrow", "--kind", "pseudoeq", "--alpha",
                    "walking_arrow.alpha", "--beta", "walking_arrow.beta"});
  EXPECT_EQ(named.code, kPositive) << named.err;
  EXPECT_EQ(run({"commute", "-f", "walking_arrow", "--kind", "pseudoeq", "--alpha",
                 "walking_arrow.alpha"})
                .code,
            kUsage);
}

TEST(Cli, LemmaInstanceFile) {
  auto dir = scratch("lemma");
  write_file(dir / "inst.json", R"({
    "name": "pair",
    "premorphisms": [
      {"source": ["1", "m"], "target": ["0", "p"], "u": "1_1", "v": "u", "xi": "1_m"},
      {"source": ["1", "m"], "target": ["1", "n"], "u": "1_1", "v": "1_1", "xi": "e"}
    ]
  })");
  auto r = run({"lemma-run", "-f", "walking_arrow", "--instance", (dir / "inst.json").string(),
                "-o", dir.string()});
  ASSERT_EQ(r.code, kPositive) << r.err;
  auto j = report(dir, "lemma-run");
  ASSERT_EQ(j["result"]["runs"].size(), 1u);
  EXPECT_EQ(j["result"]["runs"][0]["case"], "pair");
  EXPECT_TRUE(j["result"]["runs"][0]["violations"].empty());

  write_file(dir / "bad.json", R"({"premorphisms": [{"source": ["1", "m"], "target": ["0", "p"],
    "u": "1_1", "v": "u", "xi": "nope"}]})");
  EXPECT_EQ(run({"lemma-run", "-f", "walking_arrow", "--instance", (dir / "bad.json").string()})
                .code,
            kUsage);
}

TEST(Cli, LemmaBuiltinCases) {
  auto dir = scratch("lemma_builtin");
  auto r = run({"lemma-run", "-f", "walking_arrow", "-o", dir.string()});
  ASSERT_EQ(r.code, kPositive) << r.err;
  std::set<std::string> cases;
  auto j = report(dir, "lemma-run");
  for (const auto& r : j["result"]["runs"]) cases.insert(r["case"].get<std::string>());
  for (const auto* c : {"transitivity", "composition", "horizontal", "shared"})
    EXPECT_TRUE(cases.count(c)) << c;
  EXPECT_EQ(run({"lemma-run", "-f", "walking_arrow", "--case", "nope"}).code, kUsage);
}

TEST(Cli, ExportMatchesShippedFile) {
  auto dir = scratch("export");
  auto r = run({"export", "-o", (dir / "x.json").string()});
  ASSERT_EQ(r.code, kPositive);
  EXPECT_EQ(read_file(dir / "x.json"),
            read_file(std::string(SIGMACOLIM_SOURCE_DIR) + "/fixtures/bundled.json"));
  auto again = run({"export", "-w", (dir / "x.json").string()});
  EXPECT_EQ(again.out, read_file(dir / "x.json"));
}
