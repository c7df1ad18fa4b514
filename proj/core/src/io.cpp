#include "borda/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "borda/errors.hpp"

namespace borda {

namespace {

using ordered_json = nlohmann::ordered_json;

void check_keys(const ordered_json& obj,
                std::initializer_list<const char*> allowed,
                const std::string& context) {
  for (const auto& item : obj.items()) {
    const bool known =
        std::any_of(allowed.begin(), allowed.end(),
                    [&](const char* key) { return item.key() == key; });
    if (!known) {
      throw InputError("unknown key \"" + item.key() + "\" in " + context);
    }
  }
}

std::vector<std::string> string_array(const ordered_json& j,
                                      const std::string& context) {
  if (!j.is_array()) throw InputError(context + " must be an array");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& item : j) {
    if (!item.is_string()) {
      throw InputError(context + " must contain only strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

Score integer_value(const ordered_json& j, const std::string& context) {
  if (!j.is_number_integer()) throw InputError(context + " must be an integer");
  return j.get<Score>();
}

bool digits_only(const std::string& token) {
  return !token.empty() &&
         std::all_of(token.begin(), token.end(), [](unsigned char ch) {
           return std::isdigit(ch) != 0;
         });
}

}  // namespace

ElectionDocument parse_election_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("the election must be a JSON object");
  check_keys(j,
             {"candidates", "distinguished", "votes", "manipulators",
              "manipulator_weights", "harmonious_order"},
             "the election object");

  ElectionDocument doc;
  if (!j.contains("candidates")) {
    throw InputError("missing required key \"candidates\"");
  }
  doc.candidates = string_array(j["candidates"], "\"candidates\"");
  if (!j.contains("distinguished") || !j["distinguished"].is_string()) {
    throw InputError("missing or non-string key \"distinguished\"");
  }
  doc.distinguished = j["distinguished"].get<std::string>();

  if (j.contains("votes")) {
    if (!j["votes"].is_array()) throw InputError("\"votes\" must be an array");
    for (std::size_t i = 0; i < j["votes"].size(); ++i) {
      const ordered_json& entry = j["votes"][i];
      const std::string context = "vote #" + std::to_string(i);
      VoteEntry vote;
      if (entry.is_array()) {
        vote.ranking = string_array(entry, context);
      } else if (entry.is_object()) {
        check_keys(entry, {"ranking", "weight"}, context);
        if (!entry.contains("ranking")) {
          throw InputError(context + " is missing \"ranking\"");
        }
        vote.ranking = string_array(entry["ranking"], context + " ranking");
        if (entry.contains("weight")) {
          vote.weight = integer_value(entry["weight"], context + " weight");
          if (vote.weight < 0) {
            throw InputError(context + " weight must be nonnegative");
          }
        }
      } else {
        throw InputError(context + " must be an array or an object");
      }
      doc.votes.push_back(std::move(vote));
    }
  }

  if (j.contains("manipulator_weights")) {
    if (!j["manipulator_weights"].is_array()) {
      throw InputError("\"manipulator_weights\" must be an array");
    }
    std::vector<Score> weights;
    for (std::size_t i = 0; i < j["manipulator_weights"].size(); ++i) {
      const Score w = integer_value(j["manipulator_weights"][i],
                                    "manipulator weight #" + std::to_string(i));
      if (w < 0) {
        throw InputError("manipulator weight #" + std::to_string(i) +
                         " must be nonnegative");
      }
      weights.push_back(w);
    }
    doc.manipulator_weights = std::move(weights);
    doc.manipulator_count = static_cast<int>(doc.manipulator_weights->size());
  }
  if (j.contains("manipulators")) {
    const Score count = integer_value(j["manipulators"], "\"manipulators\"");
    if (count < 0) throw InputError("\"manipulators\" must be nonnegative");
    if (doc.manipulator_weights &&
        count != static_cast<Score>(doc.manipulator_weights->size())) {
      throw InputError(
          "\"manipulators\" disagrees with the length of "
          "\"manipulator_weights\"");
    }
    doc.manipulator_count = static_cast<int>(count);
  }

  if (j.contains("harmonious_order")) {
    doc.harmonious_order =
        string_array(j["harmonious_order"], "\"harmonious_order\"");
  }
  return doc;
}

ElectionDocument parse_election_txt(const std::string& text,
                                    const std::string& filename) {
  ElectionDocument doc;
  bool saw_candidates = false, saw_distinguished = false, saw_axis = false;
  bool saw_manipulators = false, saw_weights = false;

  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  const auto fail = [&](const std::string& message) -> void {
    throw InputError(filename + ":" + std::to_string(line_no) + ": " + message);
  };
  const auto parse_count = [&](const std::string& token) -> Score {
    if (!digits_only(token)) fail("expected a nonnegative integer, got \"" +
                                  token + "\"");
    try {
      return static_cast<Score>(std::stoll(token));
    } catch (const std::exception&) {
      fail("integer \"" + token + "\" is out of range");
    }
    return 0;  // unreachable
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (const std::size_t hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::string directive;
    if (!(tokens >> directive)) continue;
    std::vector<std::string> args;
    for (std::string tok; tokens >> tok;) args.push_back(tok);

    if (directive == "candidates") {
      if (saw_candidates) fail("duplicate \"candidates\" line");
      if (args.empty()) fail("\"candidates\" needs at least one name");
      doc.candidates = args;
      saw_candidates = true;
    } else if (directive == "distinguished") {
      if (saw_distinguished) fail("duplicate \"distinguished\" line");
      if (args.size() != 1) fail("\"distinguished\" needs exactly one name");
      doc.distinguished = args[0];
      saw_distinguished = true;
    } else if (directive == "axis") {
      if (saw_axis) fail("duplicate \"axis\" line");
      if (args.empty()) fail("\"axis\" needs at least one name");
      doc.harmonious_order = args;
      saw_axis = true;
    } else if (directive == "manipulators") {
      if (saw_manipulators) fail("duplicate \"manipulators\" line");
      if (args.size() != 1) fail("\"manipulators\" needs exactly one count");
      doc.manipulator_count = static_cast<int>(parse_count(args[0]));
      saw_manipulators = true;
    } else if (directive == "weights") {
      if (saw_weights) fail("duplicate \"weights\" line");
      if (args.empty()) fail("\"weights\" needs at least one value");
      std::vector<Score> weights;
      for (const std::string& tok : args) weights.push_back(parse_count(tok));
      doc.manipulator_weights = std::move(weights);
      saw_weights = true;
    } else if (directive == "vote") {
      if (args.empty()) fail("\"vote\" needs a ranking");
      VoteEntry vote;
      std::size_t first = 0;
      if (digits_only(args[0])) {
        vote.weight = parse_count(args[0]);
        first = 1;
      }
      if (first >= args.size()) fail("\"vote\" needs at least one candidate");
      vote.ranking.assign(args.begin() + first, args.end());
      doc.votes.push_back(std::move(vote));
    } else {
      fail("unknown directive \"" + directive + "\"");
    }
  }

  line_no = 0;  // final diagnostics are not tied to a line
  if (!saw_candidates) {
    throw InputError(filename + ": missing \"candidates\" line");
  }
  if (!saw_distinguished) {
    throw InputError(filename + ": missing \"distinguished\" line");
  }
  if (saw_weights) {
    const int weight_count = static_cast<int>(doc.manipulator_weights->size());
    if (saw_manipulators && doc.manipulator_count != weight_count) {
      throw InputError(filename +
                       ": \"manipulators\" disagrees with \"weights\"");
    }
    doc.manipulator_count = weight_count;
  }
  return doc;
}

ElectionDocument load_election_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (path.ends_with(".json")) return parse_election_json(buffer.str());
  if (path.ends_with(".txt")) return parse_election_txt(buffer.str(), path);
  throw InputError("unsupported input extension for \"" + path +
                   "\" (expected .json or .txt)");
}

std::string document_to_json_text(const ElectionDocument& doc, int indent) {
  ordered_json j;
  j["candidates"] = doc.candidates;
  j["distinguished"] = doc.distinguished;
  j["votes"] = ordered_json::array();
  for (const VoteEntry& vote : doc.votes) {
    if (vote.weight == 1) {
      j["votes"].push_back(vote.ranking);
    } else {
      ordered_json entry;
      entry["ranking"] = vote.ranking;
      entry["weight"] = vote.weight;
      j["votes"].push_back(std::move(entry));
    }
  }
  j["manipulators"] = doc.manipulator_count;
  if (doc.manipulator_weights) {
    j["manipulator_weights"] = *doc.manipulator_weights;
  }
  if (doc.harmonious_order) {
    j["harmonious_order"] = *doc.harmonious_order;
  }
  return j.dump(indent) + "\n";
}

Election resolve(const ElectionDocument& doc) {
  const int k = static_cast<int>(doc.candidates.size());
  if (k == 0) throw InputError("the election has no candidates");
  std::unordered_map<std::string, int> index;
  for (int c = 0; c < k; ++c) {
    if (!index.emplace(doc.candidates[c], c).second) {
      throw InputError("candidate \"" + doc.candidates[c] +
                       "\" is listed twice in the roster");
    }
  }
  const auto lookup = [&](const std::string& name,
                          const std::string& context) -> CandidateId {
    const auto it = index.find(name);
    if (it == index.end()) {
      throw InputError(context + " names unknown candidate \"" + name + "\"");
    }
    return CandidateId{it->second};
  };

  const CandidateId p = lookup(doc.distinguished, "\"distinguished\"");

  std::vector<WeightedVote> base;
  base.reserve(doc.votes.size());
  for (std::size_t i = 0; i < doc.votes.size(); ++i) {
    const VoteEntry& entry = doc.votes[i];
    const std::string context = "vote #" + std::to_string(i);
    std::vector<CandidateId> ranking;
    ranking.reserve(entry.ranking.size());
    for (const std::string& name : entry.ranking) {
      ranking.push_back(lookup(name, context));
    }
    try {
      base.push_back(WeightedVote{Vote::from_ranking(ranking), entry.weight});
    } catch (const InputError& e) {
      throw InputError(context + ": " + e.what());
    }
  }

  std::vector<Score> weights;
  if (doc.manipulator_weights) {
    weights = *doc.manipulator_weights;
  } else {
    weights.assign(doc.manipulator_count, 1);
  }

  std::optional<HarmoniousOrder> axis;
  if (doc.harmonious_order) {
    std::vector<CandidateId> order;
    order.reserve(doc.harmonious_order->size());
    for (const std::string& name : *doc.harmonious_order) {
      order.push_back(lookup(name, "\"harmonious_order\""));
    }
    if (static_cast<int>(order.size()) != k) {
      throw InputError("\"harmonious_order\" must list all " +
                       std::to_string(k) + " candidates");
    }
    axis = HarmoniousOrder::from_axis(std::move(order));
  }

  return Election{ManipulationInstance::make(k, p, std::move(base),
                                             std::move(weights)),
                  doc.candidates, std::move(axis)};
}

RunReport make_report(const std::string& problem, const Election& election,
                      const SolveOutcome& outcome) {
  RunReport report;
  report.problem = problem;
  report.manipulable = outcome.manipulable;
  report.states_stored = outcome.stats.states_stored;
  for (const Vote& vote : outcome.coalition_votes) {
    std::vector<std::string> names;
    for (CandidateId c : vote.ranking()) {
      names.push_back(election.names[c.index]);
    }
    report.manipulator_votes.push_back(std::move(names));
  }
  if (outcome.manipulable) {
    const std::vector<Score> totals =
        total_scores(election.instance, outcome.coalition_votes);
    for (int c = 0; c < election.instance.num_candidates(); ++c) {
      report.final_scores.emplace_back(election.names[c], totals[c]);
    }
  }
  return report;
}

std::string report_to_json_text(const RunReport& report, int indent) {
  ordered_json j;
  j["problem"] = report.problem;
  j["verdict"] = report.manipulable ? "yes" : "no";
  j["manipulator_votes"] = ordered_json::array();
  for (const std::vector<std::string>& vote : report.manipulator_votes) {
    j["manipulator_votes"].push_back(vote);
  }
  if (report.final_scores.empty()) {
    j["final_scores"] = nullptr;
  } else {
    ordered_json scores = ordered_json::object();
    for (const auto& [name, score] : report.final_scores) {
      scores[name] = score;
    }
    j["final_scores"] = std::move(scores);
  }
  j["stats"] = {{"states_stored", report.states_stored},
                {"elapsed_ms", report.elapsed_ms}};
  return j.dump(indent) + "\n";
}

}  // namespace borda
