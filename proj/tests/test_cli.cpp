#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "abcover/catalog.hpp"
#include "abcover/cli.hpp"
#include "abcover/document.hpp"
#include "abcover/report.hpp"
#include "abcover/toml.hpp"

using namespace abcover;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "abcover");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("abcover_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                         "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }

 private:
  fs::path path_;
};

std::string catalog_text(const std::string& relpath) { return std::string(*embedded_file(relpath)); }

std::string replace_once(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  EXPECT_NE(at, std::string::npos) << from;
  if (at != std::string::npos) text.replace(at, from.size(), to);
  return text;
}

}  // namespace

TEST(Toml, TablesArraysAndInlineTables) {
  const auto j = parse_toml(R"(# comment
name = "x"  # trailing
[surface]
k = 2
[curves]
a = { class = "f1", member = 1 }
"q.k" = [1, -2, 3]
[[points]]
label = "P"
[[points]]
label = "Q"
nested.flag = true
)");
  EXPECT_EQ(j["name"], "x");
  EXPECT_EQ(j["surface"]["k"], 2);
  EXPECT_EQ(j["curves"]["a"]["member"], 1);
  EXPECT_EQ(j["curves"]["q.k"][1], -2);
  ASSERT_EQ(j["points"].size(), 2u);
  EXPECT_EQ(j["points"][1]["label"], "Q");
  EXPECT_EQ(j["points"][1]["nested"]["flag"], true);
}

TEST(Toml, ErrorsCarryLineAndColumn) {
  try {
    parse_toml("a = 1\nb = 2.5\n", "doc.toml");
    FAIL() << "floats must be rejected";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.where().rfind("doc.toml:2:", 0), 0u) << e.where();
  }
  EXPECT_THROW(parse_toml("a = 1\na = 2\n"), parse_error);
  EXPECT_THROW(parse_toml("[t]\n[t]\n"), parse_error);
  EXPECT_THROW(parse_toml("a = \"open\n"), parse_error);
  EXPECT_THROW(parse_toml("a = { b = 1 }\n[a]\n"), parse_error);
  EXPECT_THROW(parse_toml("a = 1979-05-27\n"), parse_error);
  EXPECT_THROW(parse_toml("a = 01\n"), parse_error);
  EXPECT_THROW(parse_toml("a = [1, 2\n"), parse_error);
}

TEST(Document, EmitParseRoundTrip) {
  for (const auto& name : catalog_names()) {
    const Document doc = parse_document(catalog_text(name + ".toml"), name);
    const std::string text = emit_document(doc);
    const Document again = parse_document(text, "emitted");
    EXPECT_EQ(again.name, doc.name);
    EXPECT_EQ(again.data.branch, doc.data.branch) << name;
    EXPECT_EQ(again.data.L, doc.data.L) << name;
    EXPECT_EQ(again.curves, doc.curves) << name;
    EXPECT_EQ(emit_document(again), text) << name;
  }
}

TEST(Document, MissingLineBundlesAreSolved) {
  const std::string text = catalog_text("d14q0.toml");
  const auto from = text.find("[L]");
  const auto to = text.find("[quotient]");
  const Document doc = parse_document(text.substr(0, from) + text.substr(to), "no-L");
  EXPECT_FALSE(doc.L_declared);
  EXPECT_EQ(doc.data.L, load_entry("d14q0").doc.data.L);
}

TEST(Document, StrictKeys) {
  const std::string text = catalog_text("d14q0.toml");
  EXPECT_THROW(parse_document(text + "\n[extra]\nx = 1\n"), parse_error);
  EXPECT_THROW(parse_document(replace_once(text, "\"111\" = \"f1 + f2\"\n", "")), parse_error);
  EXPECT_THROW(parse_document(replace_once(text, "\"111\" = [\"f_23\"]", "\"111\" = [\"f_99\"]")), parse_error);
  EXPECT_THROW(parse_document(replace_once(text, "k = 2", "k = 5")), std::exception);
}

TEST(Cli, VerifyCatalogEntry) {
  const Outcome r = run_cli({"verify", "catalog/d14q0.toml"});
  EXPECT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.out.find("canonical degree: 14"), std::string::npos);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, VerifyCorruptedNamesCharacter) {
  TempDir dir;
  const std::string path = dir.write(
      "corrupted.toml", replace_once(catalog_text("d14q0.toml"), "\"011\" = \"2f1 + l\"", "\"011\" = \"2f1 + l - e1\""));
  const Outcome r = run_cli({"verify", path});
  EXPECT_EQ(r.code, cli::kMathFailure);
  EXPECT_NE(r.out.find("chi_011"), std::string::npos) << r.out;
}

TEST(Cli, ParseErrorsExitTwo) {
  TempDir dir;
  const std::string path = dir.write("bad.toml", "name = \"x\"\n[surface]\nk = 2.0\n");
  const Outcome r = run_cli({"verify", path});
  EXPECT_EQ(r.code, cli::kParseError);
  EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
  EXPECT_EQ(run_cli({"verify", "no/such/file.toml"}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"frobnicate"}).code, cli::kParseError);
  EXPECT_EQ(run_cli({}).code, cli::kParseError);
  EXPECT_EQ(run_cli({"--help"}).code, cli::kOk);
}

TEST(Cli, VerifyJsonRoundTrips) {
  const Outcome r = run_cli({"verify", "--json", "catalog/d10q2.toml"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["fixed_part"], nlohmann::json::array({"e_4"}));
  EXPECT_EQ(j["degree"], 10);
  EXPECT_EQ(j["invariants"]["KX2"], 12);
  EXPECT_EQ(dump_json(j), r.out);
}

TEST(Cli, ReproduceJsonRoundTrips) {
  const Outcome r = run_cli({"reproduce", "--json"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.size(), 7u);
  EXPECT_EQ(dump_json(j), r.out);
  const Outcome text = run_cli({"reproduce"});
  EXPECT_EQ(text.code, cli::kOk);
  EXPECT_EQ(text.out.find("FAIL"), std::string::npos);
}

TEST(Cli, BlowupReproducesCatalogEntry) {
  TempDir dir;
  const std::string out_path = dir.write("out.toml", "");
  const Outcome r =
      run_cli({"blowup", "catalog/d14q0.toml", "catalog/plans/d14q0_to_d10q0.toml", "-o", out_path});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_NE(r.err.find("P3: two_quarter_points"), std::string::npos);
  const Document produced = parse_document(read_text_file(out_path), out_path);
  EXPECT_EQ(produced.name, "d10q0");
  EXPECT_EQ(canonical_form(produced.data), canonical_form(load_entry("d10q0").doc.data));
}

TEST(Cli, BlowupWithoutFixSuggestsOne) {
  TempDir dir;
  const std::string plan = dir.write(
      "plan.toml", replace_once(catalog_text("plans/d14q1_to_d12q2.toml"), "fix = \"111\"", "fix = \"none\""));
  const Outcome r = run_cli({"blowup", "catalog/d14q1.toml", plan});
  EXPECT_EQ(r.code, cli::kMathFailure);
  EXPECT_NE(r.err.find("001"), std::string::npos);
  EXPECT_NE(r.err.find("e_3 -> D_111"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find("elliptic_gorenstein"), std::string::npos);
}

TEST(Cli, EmptyPlanIsIdentity) {
  TempDir dir;
  const std::string plan = dir.write("empty.toml", "name = \"nothing\"\n");
  const Outcome r = run_cli({"blowup", "catalog/d14q1.toml", plan});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const Document produced = parse_document(r.out);
  const Document original = load_entry("d14q1").doc;
  EXPECT_EQ(produced.data.branch, original.data.branch);
  EXPECT_EQ(produced.data.L, original.data.L);
}

TEST(Cli, BlowupBeyondFourPointsIsUnsupported) {
  TempDir dir;
  const std::string plan =
      dir.write("plan.toml", "name = \"p\"\n[[points]]\nlabel = \"P5\"\ncurves = { f_11 = 1, C_1 = 1, C_2 = 1 }\n");
  EXPECT_EQ(run_cli({"blowup", "catalog/d10q0.toml", plan}).code, cli::kUnsupported);
  const std::string bad = dir.write("bad.toml", "name = \"p\"\n[[points]]\nlabel = \"P5\"\ncurves = { f_11 = 1 }\n");
  EXPECT_EQ(run_cli({"blowup", "catalog/d10q0.toml", bad}).code, cli::kParseError);
}

TEST(Cli, SearchCommands) {
  const Outcome hit = run_cli({"search", "--pool", "catalog/pools/y2_d14.toml", "--targets", "pg=3,q=0,d=14", "--json"});
  ASSERT_EQ(hit.code, cli::kOk) << hit.err;
  const auto j = nlohmann::json::parse(hit.out);
  ASSERT_GE(j["results"].size(), 1u);
  EXPECT_EQ(dump_json(j), hit.out);

  const Outcome q3 = run_cli({"search", "--pool", "catalog/pools/y2_d14.toml", "--targets", "q=3", "--json"});
  EXPECT_EQ(q3.code, cli::kOk);
  EXPECT_TRUE(nlohmann::json::parse(q3.out)["results"].empty());

  const Outcome none = run_cli({"search", "--pool", "catalog/pools/y2_d14.toml", "--targets", "pg=3", "--limit", "0"});
  EXPECT_EQ(none.code, cli::kOk);
  EXPECT_EQ(none.out.find('#'), std::string::npos);

  EXPECT_EQ(run_cli({"search", "--pool", "catalog/pools/y2_d14.toml", "--max-per-slot", "4"}).code,
            cli::kUnsupported);
  EXPECT_EQ(run_cli({"search", "--pool", "catalog/pools/y2_d14.toml", "--targets", "pg=x"}).code,
            cli::kParseError);
}
