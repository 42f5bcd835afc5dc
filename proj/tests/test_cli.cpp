#include "domreg/cli.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <regex>
#include <sys/wait.h>

using namespace domreg;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "domreg");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_matches(const std::string& text, const std::string& pattern) {
  std::regex re(pattern);
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(text.begin(), text.end(), re), std::sregex_iterator()));
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("domreg_test_" + name);
}

const std::string& h4_json() {
  static const std::string text = run({"classify", "H4"}).out;
  return text;
}

}  // namespace

TEST(Classify, H4ReportToFile) {
  auto path = temp_file("h4.json");
  auto r = run({"classify", "H4", "--out", path.string(), "--threads", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  auto j = Json::parse(in);
  EXPECT_EQ(j["counts"]["regions"], 413);
  EXPECT_EQ(j["counts"]["bounded"], 355);
  EXPECT_EQ(j["field_backend"], "tau");
  EXPECT_EQ(j["antichains"].size(), 429u);
  EXPECT_EQ(j["empty_list"].size(), 16u);
  std::filesystem::remove(path);
}

TEST(Classify, ByteIdenticalRuns) {
  EXPECT_EQ(run({"classify", "H4"}).out, h4_json());
  EXPECT_EQ(run({"classify", "H4", "--threads", "3"}).out, h4_json());
}

TEST(Classify, TextSummaryAndEmptyListing) {
  auto r = run({"classify", "H4", "--format", "text", "--show-empty"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("regions         413"), std::string::npos);
  EXPECT_NE(r.out.find("16 empty regions"), std::string::npos);
  EXPECT_EQ(count_matches(r.out, "complement maximals"), 16u);
  auto j = run({"classify", "H3", "--show-empty"});
  EXPECT_NO_THROW(Json::parse(j.out));
  EXPECT_NE(j.err.find("0 empty regions"), std::string::npos);
}

TEST(Verify, PublishedSystemsPass) {
  std::vector<std::string> args{"verify", "H3", "H4"};
  for (int m = 3; m <= 12; ++m) args.push_back("I2:" + std::to_string(m));
  args.push_back("I2:6:r=sin(2)/sin(1)");
  args.push_back("I2:4:r=sin(1)/sin(2)");
  auto r = run(args);
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(count_matches(r.out, "PASS"), args.size() - 1);
}

TEST(Verify, MismatchListsFields) {
  RootPoset p(RootSystem<GoldenScalar>::build(SystemSpec::parse("H3")));
  auto rep = classify_all(p);
  auto e = catalog_expectation(p.system());
  EXPECT_TRUE(compare(e, rep).empty());
  e.regions = 40;
  e.by_size = std::map<std::size_t, std::size_t>{{0, 1}};
  auto diff = compare(e, rep);
  ASSERT_EQ(diff.size(), 2u);
  EXPECT_EQ(diff[0].field, "by_size");
  EXPECT_EQ(diff[1].field, "regions");
  EXPECT_EQ(diff[1].expected, "40");
  EXPECT_EQ(diff[1].actual, "41");
}

TEST(Usage, ErrorsExitTwo) {
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"classify", "H5"}).code, 2);
  EXPECT_EQ(run({"classify", "I2:5:r=2"}).code, 2);
  EXPECT_EQ(run({"classify", "H4", "--epsilon", "1e-20"}).code, 2);
  EXPECT_EQ(run({"classify", "I2:8", "--epsilon", "-1"}).code, 2);
  EXPECT_EQ(run({"classify", "H3", "--field", "approx"}).code, 2);
  EXPECT_EQ(run({"classify", "I2:8", "--field", "exact"}).code, 2);
  EXPECT_EQ(run({"classify", "H3", "--field", "bogus"}).code, 2);
  EXPECT_EQ(run({"roots", "H3", "--format", "svg"}).code, 2);
  EXPECT_EQ(run({"figure", "H3"}).code, 2);
  EXPECT_EQ(run({"sweep", "5"}).code, 2);
  EXPECT_EQ(run({"classify", "H3", "--out", "/nonexistent/dir/x.json"}).code, 2);
  auto help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("classify"), std::string::npos);
}

TEST(Figure, SvgLabelsMatchRegionCounts) {
  for (const char* spec : {"I2:6:r=1.0", "I2:6:r=sin(2)/sin(1)", "I2:6:r=0.5", "I2:4:r=sin(1)/sin(2)", "I2:5", "I2:8:r=0.3",
                           "I2:3"}) {
    auto svg = run({"figure", spec});
    ASSERT_EQ(svg.code, 0) << spec << svg.err;
    auto report = Json::parse(run({"classify", spec}).out);
    EXPECT_EQ(count_matches(svg.out, "class=\"region\""), report["counts"]["regions"].get<std::size_t>()) << spec;
    EXPECT_EQ(svg.out.rfind("<svg", 0), 0u);
  }
  auto fig = run({"figure", "I2:6:r=1.0"});
  EXPECT_EQ(count_matches(fig.out, "class=\"region\""), 10u);
  EXPECT_EQ(count_matches(fig.out, "class=\"hyperplane\""), 18u);
  EXPECT_NE(fig.out.find("&#8709;"), std::string::npos);
}

TEST(Figure, DotPoset) {
  auto dot = run({"figure", "H4", "--format", "dot"});
  ASSERT_EQ(dot.code, 0);
  EXPECT_EQ(dot.out, run({"poset", "H4"}).out);
  EXPECT_NE(dot.out.find("digraph"), std::string::npos);
  EXPECT_NE(dot.out.find("style=dashed"), std::string::npos);
  EXPECT_EQ(count_matches(dot.out, "\\[label="), 60u);
}

TEST(Catalan, TextAndJson) {
  EXPECT_NE(run({"catalan", "H4"}).out.find("Cat = 280, Cat+ = 232"), std::string::npos);
  auto j = Json::parse(run({"catalan", "H3", "--format", "json"}).out);
  EXPECT_EQ(j["cat"], 32);
  EXPECT_EQ(j["cat_positive"], 21);
}

TEST(Roots, JsonAndText) {
  auto j = Json::parse(run({"roots", "H3", "--format", "json"}).out);
  EXPECT_EQ(j["roots"].size(), 15u);
  EXPECT_EQ(j["roots"][0]["index"], 1);
  EXPECT_EQ(j["gram"][0][1]["b"], "-1/2");
  auto t = run({"roots", "I2:8"});
  EXPECT_NE(t.out.find("8 positive roots over approx"), std::string::npos);
  auto a = run({"antichains", "H4"});
  EXPECT_NE(a.out.find("429 antichains"), std::string::npos);
  EXPECT_EQ(Json::parse(run({"antichains", "H4", "--format", "json"}).out)["maximal"].size(), 152u);
}

TEST(Schema, ValidatesReports) {
  auto schema = run({"--schema"});
  ASSERT_EQ(schema.code, 0);
  EXPECT_NO_THROW(Json::parse(schema.out));
  auto check = validate_json(h4_json());
  EXPECT_TRUE(check.valid) << check.error;
  for (const char* spec : {"H3", "I2:3", "I2:8:r=0.3", "I2:6:r=0.5"}) {
    auto c = validate_json(run({"classify", spec}).out);
    EXPECT_TRUE(c.valid) << spec << c.error;
  }
  auto sweep = run({"sweep", "6", "--format", "json"});
  ASSERT_EQ(sweep.code, 0);
  auto sc = validate_json(sweep.out);
  EXPECT_TRUE(sc.valid) << sc.error;
  auto broken = Json::parse(h4_json());
  broken.erase("counts");
  EXPECT_FALSE(validate_json(broken).valid);
  broken = Json::parse(h4_json());
  broken["antichains"][0]["status"] = "maybe";
  EXPECT_FALSE(validate_json(broken).valid);
}

TEST(Serialization, WitnessesRoundTrip) {
  RootPoset p(RootSystem<GoldenScalar>::build(SystemSpec::parse("H4")));
  auto j = Json::parse(h4_json());
  for (const auto& v : j["antichains"]) {
    if (!v.contains("witness")) continue;
    WeightPoint<GoldenScalar> w;
    for (const auto& x : v["witness"]) w.x.push_back(field_from_json<GoldenScalar>(x));
    RootSet members;
    for (const auto& i : v["members"]) members.insert(i.get<std::size_t>() - 1);
    EXPECT_EQ(sign_type(p, w), p.ideal(Antichain(members)));
    EXPECT_EQ(vector_json(w.x), v["witness"]);
  }
  auto r = Json::parse(run({"classify", "I2:3"}).out);
  auto x = r["antichains"][1]["witness"][0];
  EXPECT_EQ(field_json(field_from_json<Rational>(x)), x);
  auto a = Json::parse(run({"classify", "I2:8"}).out);
  auto y = a["antichains"][1]["witness"][0];
  EXPECT_EQ(field_json(field_from_json<ApproxScalar>(y)), y);
  EXPECT_THROW(field_from_json<Rational>(y), TagMismatch);
  EXPECT_THROW(field_from_json<Rational>(Json(3)), FieldParseError);
}

TEST(Sweep, TextTable) {
  auto r = run({"sweep", "6"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("over sqrt3"), std::string::npos);
  EXPECT_NE(r.out.find("critical"), std::string::npos);
  auto custom = run({"sweep", "8", "--ratio", "sin(1)/sin(3)", "--ratio", "0.9", "--format", "json"});
  ASSERT_EQ(custom.code, 0) << custom.err;
  auto rows = Json::parse(custom.out)["sweep"]["rows"];
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0]["regions"], 13);
  EXPECT_TRUE(rows[0]["critical"].get<bool>());
  EXPECT_EQ(rows[1]["regions"], 13);
  EXPECT_FALSE(rows[1]["degenerate"].get<bool>());
  auto loose = run({"sweep", "8", "--ratio", "0.9", "--epsilon", "1e-10"});
  EXPECT_EQ(loose.code, 0) << loose.err;
}

TEST(Binary, ExitCodes) {
  auto status = [](const std::string& args) {
    int s = std::system((std::string(DOMREG_CLI_PATH) + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(s);
  };
  EXPECT_EQ(status("verify H3"), 0);
  EXPECT_EQ(status("classify H9"), 2);
  EXPECT_EQ(status("nonsense"), 2);
}
