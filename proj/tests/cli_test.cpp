#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "weil/cli/commands.hpp"

using namespace weil::cli;
namespace fs = std::filesystem;

namespace {

const std::string kData = WEIL_TEST_DATA;

std::string temp_file(const std::string& name) {
  return (fs::temp_directory_path() / ("weil_cli_test_" + name)).string();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

const char* kMixed = R"({
  "q": 4, "p": 2, "d": 2, "n": 1,
  "etale": {
    "0": {"parts": [{"kind": "lattice", "phi": [[1]]}]},
    "2": {"parts": [
      {"kind": "finite", "relations": [[6, 0], [0, 4]], "phi": [[5, 0], [0, 1]]},
      {"kind": "divisible", "rank": 1, "support": {"primes": [3, 5]}, "phi": [[2]]},
      {"kind": "declared", "invariant_factors": [2, 4], "note": "supplied"},
      {"kind": "rational", "phi": [["1/2", "0"], ["0", "3"]]}
    ]},
    "3": {"parts": [{"kind": "lattice", "phi": [["123456789012345678901234567890"]]}]}
  },
  "zeta": {"factors": [[1, -1], [1], [1, -4], [1], [1, -16]]},
  "point_counts": [21],
  "hodge": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
  "pairing": [[1]],
  "motivic_q_dims": {"2": 1}
})";

}  // namespace

TEST(Document, BuilderOutputsRoundTrip) {
  std::vector<weil::zetaval::ExampleData> examples;
  for (long q : {2L, 3L, 4L, 5L, 7L})
    for (int d = 0; d <= 4; ++d)
      for (long n = -2; n <= d; ++n) examples.push_back(weil::zetaval::example_projective_space(q, d, n));
  for (auto [q, a] : std::vector<std::pair<long, long>>{{5, 2}, {7, 3}, {11, -4}, {5, 1}, {4, -3}})
    examples.push_back(weil::zetaval::example_elliptic(q, a));
  for (const auto& ex : examples) {
    const std::string text = serialize_document(document_from_example(ex));
    const auto parsed = parse_document(text);
    EXPECT_EQ(serialize_document(parsed), text);
    const auto r = weil::zetaval::verify_zeta_formula(zeta_input(parsed), etale_data(parsed), *parsed.hodge);
    EXPECT_TRUE(r.passed());
  }
}

TEST(Document, AllPartKindsRoundTrip) {
  const auto doc = parse_document(kMixed);
  ASSERT_EQ(doc.etale.at(2).parts().size(), 4u);
  EXPECT_EQ(weil::frobmod::part_kind(doc.etale.at(2).parts()[3]), "rational");
  const std::string once = serialize_document(doc);
  EXPECT_EQ(serialize_document(parse_document(once)), once);
  EXPECT_NE(once.find("\"1/2\""), std::string::npos);
  EXPECT_NE(once.find("123456789012345678901234567890"), std::string::npos);
  EXPECT_EQ(doc.motivic_q_dims->at(2), 1u);
}

TEST(Document, SchemaViolations) {
  const std::vector<std::string> bad = {
      "{",
      "[]",
      R"({"q": 3, "p": 3, "d": 1, "n": 0})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {}, "extra": 1})",
      R"({"q": 3.5, "p": 3, "d": 1, "n": 0, "etale": {}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"4": {"parts": []}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"-1": {"parts": []}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"01": {"parts": []}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"1": {"parts": [{"kind": "magic"}]}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"1": {"parts": [{"kind": "lattice", "phi": [[1, 0], [0]]}]}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"1": {"parts": [{"kind": "lattice", "phi": [[1, 0]]}]}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"1": {"parts": [{"kind": "divisible", "rank": 2, "support": {"coprime_to": 3}, "phi": [[2]]}]}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"1": {"parts": [{"kind": "divisible", "rank": 1, "support": {}, "phi": [[2]]}]}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"1": {"parts": [{"kind": "finite", "relations": [[2, 0]], "phi": [[1]]}]}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"1": {"parts": [{"kind": "declared", "invariant_factors": [0]}]}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {"1": {"parts": [{"kind": "rational", "phi": [["1/0"]]}]}}})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {}, "hodge": [[-1]]})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {}, "point_counts": []})",
      R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {}, "pairing": [[1, 2]]})",
  };
  for (const auto& text : bad) EXPECT_THROW(parse_document(text), weil::InvalidInput) << text;
  EXPECT_THROW(zeta_input(parse_document(R"({"q": 3, "p": 3, "d": 1, "n": 0, "etale": {}})")), weil::InvalidInput);
}

TEST(Commands, ExitCodes) {
  std::ostringstream out, err;
  EXPECT_EQ(cmd_weil(kData + "/malformed.json", false, out, err), kInvalidInput);
  EXPECT_EQ(cmd_weil(kData + "/degenerate.json", false, out, err), kUnsupported);
  EXPECT_EQ(cmd_weil(kData + "/out_of_range.json", false, out, err), kInvalidInput);
  EXPECT_EQ(cmd_weil(kData + "/unipotent.json", false, out, err), kOk);
  EXPECT_EQ(cmd_zeta_check(kData + "/unipotent.json", false, out, err), kUnsupported);
  EXPECT_EQ(cmd_zeta_check(kData + "/tampered_hodge.json", false, out, err), kVerificationFailed);
  EXPECT_EQ(cmd_weil(kData + "/no_such_file.json", false, out, err), kInvalidInput);
  EXPECT_EQ(cmd_example_elliptic(5, 10, std::nullopt, "-", out, err), kInvalidInput);
  EXPECT_EQ(cmd_example_elliptic(5, 1, 1, "-", out, err), kInvalidInput);
  EXPECT_EQ(cmd_example_pd(6, 1, 0, "-", out, err), kInvalidInput);
  EXPECT_EQ(cmd_example_pd(3, 1, 2, "-", out, err), kInvalidInput);
  EXPECT_EQ(guarded([]() -> int { throw weil::SeriesMismatch(2, "x"); }, err), kVerificationFailed);
}

TEST(Commands, WrongPointCountsFail) {
  auto doc = document_from_example(weil::zetaval::example_projective_space(2, 1, 0));
  (*doc.point_counts)[2] += 1;
  const std::string path = temp_file("bad_counts.json");
  write_file(path, serialize_document(doc));
  std::ostringstream out, err;
  EXPECT_EQ(cmd_zeta_check(path, false, out, err), kVerificationFailed);
  EXPECT_NE(err.str().find("N_3"), std::string::npos);
}

TEST(Commands, ExampleDocumentsVerify) {
  std::ostringstream out, err;
  const std::string p2 = temp_file("p2.json"), ell = temp_file("ell.json");
  ASSERT_EQ(cmd_example_pd(3, 2, 1, p2, out, err), kOk);
  ASSERT_EQ(cmd_example_elliptic(7, 3, std::nullopt, ell, out, err), kOk);
  EXPECT_EQ(cmd_zeta_check(p2, false, out, err), kOk) << err.str();
  EXPECT_EQ(cmd_zeta_check(ell, false, out, err), kOk) << err.str();

  std::ostringstream json_out;
  ASSERT_EQ(cmd_zeta_check(p2, true, json_out, err), kOk);
  const auto result = nlohmann::json::parse(json_out.str());
  EXPECT_EQ(result["lhs"]["exact"], "-3/4");
  EXPECT_EQ(result["rhs"]["exact"], "3/4");
  EXPECT_EQ(result["verdict"], "pass");
}

TEST(Commands, WeilReportShowsRanks) {
  const std::string p2 = temp_file("p2_weil.json");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_example_pd(3, 2, 1, p2, out, err), kOk);
  std::ostringstream json_out;
  ASSERT_EQ(cmd_weil(p2, true, json_out, err), kOk);
  const auto report = nlohmann::json::parse(json_out.str());
  std::vector<std::size_t> ranks;
  for (const auto& deg : report["degrees"]) ranks.push_back(deg["rank"].get<std::size_t>());
  EXPECT_EQ(ranks, (std::vector<std::size_t>{0, 0, 1, 1, 0, 0, 0}));
  EXPECT_EQ(report["chi_e"]["exact"], "1/4");
  EXPECT_EQ(report["rho"], 1);

  std::ostringstream table;
  ASSERT_EQ(cmd_weil(p2, false, table, err), kOk);
  EXPECT_NE(table.str().find("chi_e = 1/4"), std::string::npos);
}

TEST(Commands, LabIsDeterministic) {
  weil::chainlab::LabConfig config;
  config.cases = 30;
  config.seed = 99;
  std::ostringstream a, b, err;
  EXPECT_EQ(cmd_lab(config, a, err), kOk);
  EXPECT_EQ(cmd_lab(config, b, err), kOk);
  EXPECT_EQ(a.str(), b.str());
  config.cases = 0;
  std::ostringstream zero;
  EXPECT_EQ(cmd_lab(config, zero, err), kOk);
  EXPECT_NE(zero.str().find("0 cases"), std::string::npos);
}
