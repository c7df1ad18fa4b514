#include <doctest.h>

#include <cstdio>
#include <string>

#include "borda/errors.hpp"
#include "borda/io.hpp"
#include "support.hpp"

using namespace borda;
using test_support::fixture_path;

namespace {

void check_throws_with(const std::string& text,
                       const std::string& needle) {
  try {
    parse_election_json(text);
    FAIL("expected InputError for: " << text);
  } catch (const InputError& e) {
    const std::string what = e.what();
    CHECK_MESSAGE(what.find(needle) != std::string::npos,
                  "message \"" << what << "\" lacks \"" << needle << "\"");
  }
}

}  // namespace

TEST_CASE("the five-candidate fixture parses and resolves") {
  const ElectionDocument doc =
      load_election_document(fixture_path("example5.json"));
  CHECK(doc.candidates ==
        std::vector<std::string>{"A", "B", "C", "D", "E"});
  CHECK(doc.distinguished == "A");
  CHECK(doc.votes.size() == 3);
  CHECK(doc.manipulator_count == 0);
  REQUIRE(doc.harmonious_order.has_value());

  const Election election = resolve(doc);
  CHECK(election.names == doc.candidates);
  CHECK(base_scores(election.instance) ==
        std::vector<Score>{5, 9, 6, 8, 2});
  REQUIRE(election.axis.has_value());
  CHECK(election.axis->seat_of(CandidateId{0}) == 1);  // A
  CHECK(election.axis->seat_of(CandidateId{2}) == 2);  // C
  for (const WeightedVote& vote : election.instance.base_votes()) {
    CHECK(is_coincident(vote.vote, *election.axis));
  }
}

TEST_CASE("the txt and json forms of an election parse identically") {
  const ElectionDocument from_json =
      load_election_document(fixture_path("pab.json"));
  const ElectionDocument from_txt =
      load_election_document(fixture_path("pab.txt"));
  CHECK(from_json == from_txt);
  CHECK(from_json.manipulator_count == 1);
  REQUIRE(from_json.manipulator_weights.has_value());
  CHECK(*from_json.manipulator_weights == std::vector<Score>{2});
}

TEST_CASE("documents round-trip through their JSON form") {
  ElectionDocument doc;
  doc.candidates = {"x", "y", "z"};
  doc.distinguished = "y";
  doc.votes.push_back(VoteEntry{{"x", "y", "z"}, 1});
  doc.votes.push_back(VoteEntry{{"z", "y", "x"}, 3});
  doc.manipulator_count = 2;
  doc.manipulator_weights = std::vector<Score>{4, 1};
  doc.harmonious_order = std::vector<std::string>{"z", "y", "x"};
  const std::string text = document_to_json_text(doc);
  CHECK(parse_election_json(text) == doc);
  // Unit-weight ballots serialize in the array shorthand.
  CHECK(text.find("\"weight\": 3") != std::string::npos);
  CHECK(text.find("\"weight\": 1") == std::string::npos);
}

TEST_CASE("json parsing rejects malformed elections") {
  check_throws_with("{", "invalid JSON");
  check_throws_with("[]", "must be a JSON object");
  check_throws_with(R"({"candidates": ["A"], "distinguished": "A",
                       "bogus": 1})",
                    "unknown key \"bogus\"");
  check_throws_with(R"({"distinguished": "A"})", "candidates");
  check_throws_with(R"({"candidates": ["A"]})", "distinguished");
  check_throws_with(R"({"candidates": ["A"], "distinguished": "A",
                       "votes": [{"ranking": ["A"], "weight": -2}]})",
                    "nonnegative");
  check_throws_with(R"({"candidates": ["A"], "distinguished": "A",
                       "votes": [{"ranking": ["A"], "weight": "x"}]})",
                    "integer");
  check_throws_with(R"({"candidates": ["A"], "distinguished": "A",
                       "votes": [3]})",
                    "array or an object");
  check_throws_with(R"({"candidates": ["A"], "distinguished": "A",
                       "manipulators": 2, "manipulator_weights": [1]})",
                    "disagrees");
}

TEST_CASE("name resolution rejects inconsistent documents") {
  ElectionDocument doc;
  doc.candidates = {"A", "A"};
  doc.distinguished = "A";
  CHECK_THROWS_WITH_AS(resolve(doc), doctest::Contains("listed twice"),
                       InputError);

  doc.candidates = {"A", "B"};
  doc.distinguished = "Q";
  CHECK_THROWS_WITH_AS(resolve(doc), doctest::Contains("unknown candidate"),
                       InputError);

  doc.distinguished = "A";
  doc.votes.push_back(VoteEntry{{"A", "Z"}, 1});
  CHECK_THROWS_WITH_AS(resolve(doc), doctest::Contains("vote #0"),
                       InputError);

  doc.votes.clear();
  doc.votes.push_back(VoteEntry{{"A"}, 1});  // wrong ballot length
  CHECK_THROWS_AS(resolve(doc), InputError);

  doc.votes.clear();
  doc.harmonious_order = std::vector<std::string>{"A"};
  CHECK_THROWS_WITH_AS(resolve(doc), doctest::Contains("all 2 candidates"),
                       InputError);
}

TEST_CASE("txt diagnostics carry the file name and line number") {
  try {
    parse_election_txt("candidates A B\ndistinguished A\nfrobnicate A\n",
                       "bad.txt");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("bad.txt:3:") != std::string::npos);
    CHECK(std::string(e.what()).find("frobnicate") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(parse_election_txt("distinguished A\n", "bad.txt"),
                       doctest::Contains("missing \"candidates\""),
                       InputError);
  // Weighted ballots start with their multiplicity.
  const ElectionDocument doc = parse_election_txt(
      "candidates A B # roster\ndistinguished A\nvote 4 B A\n", "ok.txt");
  CHECK(doc.votes.size() == 1);
  CHECK(doc.votes[0].weight == 4);
  CHECK(doc.votes[0].ranking == std::vector<std::string>{"B", "A"});
}

TEST_CASE("document loading dispatches on the extension") {
  CHECK_THROWS_WITH_AS(load_election_document("no/such/file.json"),
                       doctest::Contains("cannot read"), InputError);
  const std::string stray = "stray_election.csv";
  test_support::write_file(stray, "candidates A\ndistinguished A\n");
  CHECK_THROWS_WITH_AS(load_election_document(stray),
                       doctest::Contains("unsupported input extension"),
                       InputError);
  std::remove(stray.c_str());
}

TEST_CASE("run reports serialize to stable bytes") {
  RunReport report;
  report.problem = "wbm";
  report.manipulable = true;
  report.manipulator_votes = {{"P", "B", "A"}};
  report.final_scores = {{"P", 4}, {"B", 3}, {"A", 2}};
  report.states_stored = 7;
  report.elapsed_ms = 0;
  const std::string expected = R"({
  "problem": "wbm",
  "verdict": "yes",
  "manipulator_votes": [
    [
      "P",
      "B",
      "A"
    ]
  ],
  "final_scores": {
    "P": 4,
    "B": 3,
    "A": 2
  },
  "stats": {
    "states_stored": 7,
    "elapsed_ms": 0
  }
}
)";
  CHECK(report_to_json_text(report) == expected);

  RunReport negative;
  negative.problem = "ubm";
  const std::string expected_no = R"({
  "problem": "ubm",
  "verdict": "no",
  "manipulator_votes": [],
  "final_scores": null,
  "stats": {
    "states_stored": 0,
    "elapsed_ms": 0
  }
}
)";
  CHECK(report_to_json_text(negative) == expected_no);
}

TEST_CASE("reports built from outcomes carry names and totals") {
  const Election election = resolve(load_election_document(
      fixture_path("pab.json")));
  SolveOutcome outcome;
  outcome.manipulable = true;
  outcome.coalition_votes = {test_support::make_vote({0, 2, 1})};
  outcome.stats.states_stored = 5;
  const RunReport report = make_report("wbm", election, outcome);
  CHECK(report.manipulator_votes ==
        std::vector<std::vector<std::string>>{{"P", "B", "A"}});
  CHECK(report.final_scores ==
        std::vector<std::pair<std::string, Score>>{
            {"P", 4}, {"A", 2}, {"B", 3}});

  const RunReport no_report =
      make_report("wbm", election, SolveOutcome{});
  CHECK_FALSE(no_report.manipulable);
  CHECK(no_report.final_scores.empty());
}
