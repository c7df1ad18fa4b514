#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "borda/election.hpp"
#include "borda/single_peaked.hpp"

namespace borda {

// Textual description of an election, before names are resolved to ids.
struct VoteEntry {
  std::vector<std::string> ranking;  // most preferred first
  Score weight = 1;

  bool operator==(const VoteEntry&) const = default;
};

struct ElectionDocument {
  std::vector<std::string> candidates;
  std::string distinguished;
  std::vector<VoteEntry> votes;
  int manipulator_count = 0;
  std::optional<std::vector<Score>> manipulator_weights;
  std::optional<std::vector<std::string>> harmonious_order;

  bool operator==(const ElectionDocument&) const = default;
};

// Parsers throw InputError with a human-readable location on bad input.
ElectionDocument parse_election_json(const std::string& text);
ElectionDocument parse_election_txt(const std::string& text,
                                    const std::string& filename = "<txt>");

// Reads a .json or .txt description, dispatching on the file extension.
ElectionDocument load_election_document(const std::string& path);

// Serializes a document back to its JSON form (round-trips through
// parse_election_json).
std::string document_to_json_text(const ElectionDocument&, int indent = 2);

// A document with names resolved against the roster.
struct Election {
  ManipulationInstance instance;
  std::vector<std::string> names;            // by candidate index
  std::optional<HarmoniousOrder> axis;       // present iff the document had one
};

Election resolve(const ElectionDocument&);

// Machine-readable result of one solver run.
struct RunReport {
  std::string problem;
  bool manipulable = false;
  std::vector<std::vector<std::string>> manipulator_votes;  // rankings by name
  // Final totals once the coalition votes are cast; empty when not
  // manipulable.
  std::vector<std::pair<std::string, Score>> final_scores;
  std::uint64_t states_stored = 0;
  std::int64_t elapsed_ms = 0;
};

RunReport make_report(const std::string& problem, const Election&,
                      const SolveOutcome&);

std::string report_to_json_text(const RunReport&, int indent = 2);

}  // namespace borda
