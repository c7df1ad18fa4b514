#pragma once

// Shared helpers for the test binaries: fixture construction, independent
// re-implementations used as cross-checks, and process spawning for CLI
// coverage.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "borda/election.hpp"
#include "borda/single_peaked.hpp"

namespace test_support {

using borda::CandidateId;
using borda::HarmoniousOrder;
using borda::ManipulationInstance;
using borda::Score;
using borda::Vote;
using borda::WeightedVote;

inline Vote make_vote(const std::vector<int>& ranking) {
  std::vector<CandidateId> ids;
  ids.reserve(ranking.size());
  for (int c : ranking) ids.push_back(CandidateId{c});
  return Vote::from_ranking(ids);
}

// rankings list candidate indices from most to least preferred; base weights
// default to 1 each.
inline ManipulationInstance make_instance(
    int k, int p, const std::vector<std::vector<int>>& rankings,
    std::vector<Score> manipulator_weights,
    const std::vector<Score>& base_weights = {}) {
  std::vector<WeightedVote> base;
  for (std::size_t i = 0; i < rankings.size(); ++i) {
    const Score w = base_weights.empty() ? 1 : base_weights[i];
    base.push_back(WeightedVote{make_vote(rankings[i]), w});
  }
  return ManipulationInstance::make(k, CandidateId{p}, std::move(base),
                                    std::move(manipulator_weights));
}

inline HarmoniousOrder make_axis(const std::vector<int>& order) {
  std::vector<CandidateId> ids;
  ids.reserve(order.size());
  for (int c : order) ids.push_back(CandidateId{c});
  return HarmoniousOrder::from_axis(std::move(ids));
}

inline std::vector<int> random_ranking(int k, std::mt19937& rng) {
  std::vector<int> ranking(k);
  std::iota(ranking.begin(), ranking.end(), 0);
  std::shuffle(ranking.begin(), ranking.end(), rng);
  return ranking;
}

inline ManipulationInstance random_instance(int k, int votes, int t,
                                            Score max_weight,
                                            std::mt19937& rng) {
  std::uniform_int_distribution<Score> weight(1, max_weight);
  std::uniform_int_distribution<int> candidate(0, k - 1);
  std::vector<std::vector<int>> rankings;
  std::vector<Score> base_weights;
  for (int v = 0; v < votes; ++v) {
    rankings.push_back(random_ranking(k, rng));
    base_weights.push_back(weight(rng));
  }
  std::vector<Score> manipulator_weights;
  for (int i = 0; i < t; ++i) manipulator_weights.push_back(weight(rng));
  return make_instance(k, candidate(rng), rankings,
                       std::move(manipulator_weights), base_weights);
}

// Slow reference for ballot/axis coincidence, straight from the three-point
// definition: no candidate may beat a candidate seated between it and a
// better-ranked candidate.
inline bool coincident_by_triples(const Vote& vote,
                                  const HarmoniousOrder& axis) {
  const int k = vote.num_candidates();
  const auto pos = [&](int seat) {
    return vote.position_of(axis.at_seat(seat));
  };
  for (int a = 1; a <= k; ++a) {
    for (int b = a + 1; b <= k; ++b) {
      for (int c = b + 1; c <= k; ++c) {
        // Seats a < b < c: a valley at b is forbidden in both directions.
        if (pos(c) > pos(b) && !(pos(b) > pos(a))) return false;
        if (pos(a) > pos(b) && !(pos(b) > pos(c))) return false;
      }
    }
  }
  return true;
}

// A random ballot that is coincident with the axis, drawn uniformly from
// the 2^(k-1) possibilities.
inline Vote random_coincident_vote(const HarmoniousOrder& axis,
                                   std::mt19937& rng) {
  const int k = axis.num_candidates();
  std::vector<int> positions(k);
  int lo = 1, hi = k;
  std::uniform_int_distribution<int> coin(0, 1);
  for (int r = 1; r < k; ++r) {
    if (coin(rng) != 0) {
      positions[axis.at_seat(hi--).index] = r;
    } else {
      positions[axis.at_seat(lo++).index] = r;
    }
  }
  positions[axis.at_seat(lo).index] = k;
  return Vote::from_positions(positions);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

inline std::string env_or_throw(const char* name) {
  const char* value = std::getenv(name);
  if (value == nullptr || *value == '\0') {
    throw std::runtime_error(std::string("environment variable ") + name +
                             " is not set");
  }
  return value;
}

inline std::string fixture_path(const std::string& name) {
  return env_or_throw("BORDA_FIXTURES") + "/" + name;
}

inline std::string golden_path(const std::string& name) {
  return env_or_throw("BORDA_GOLDEN") + "/" + name;
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

// Runs a shell command, capturing stdout. stderr goes to stderr_path when
// given, otherwise to /dev/null.
inline CommandResult run_command(const std::string& command,
                                 const std::string& stderr_path = "") {
  const std::string full =
      command + (stderr_path.empty() ? " 2>/dev/null" : " 2>" + stderr_path);
  FILE* pipe = popen(full.c_str(), "r");
  if (pipe == nullptr) throw std::runtime_error("popen failed for " + full);
  CommandResult result;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    result.out.append(buffer, got);
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

inline CommandResult run_cli(const std::string& args,
                             const std::string& stderr_path = "") {
  return run_command("\"" + env_or_throw("BORDA_MANIP_BIN") + "\" " + args,
                     stderr_path);
}

}  // namespace test_support
