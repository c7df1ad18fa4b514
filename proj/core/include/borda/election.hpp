#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace borda {

// Scores use 64-bit signed arithmetic and every accumulation is
// overflow-checked; wraparound is never allowed to decide an election.
using Score = std::int64_t;

Score checked_add(Score a, Score b);
Score checked_mul(Score a, Score b);

// Index into the candidate roster of one election. The distinguished
// candidate shares the index space with everybody else.
struct CandidateId {
  int index = -1;
  auto operator<=>(const CandidateId&) const = default;
};

// One ballot: a bijection from candidates onto positions 1..k where k is the
// roster size. Position k is the most preferred candidate; a candidate at
// position j earns j-1 points per unit of ballot weight.
class Vote {
 public:
  Vote() = default;

  // positions[c] is the 1-based position of candidate c. Throws InputError
  // unless positions is a permutation of 1..k.
  static Vote from_positions(std::vector<int> positions);

  // ranking lists candidate ids from most to least preferred.
  static Vote from_ranking(const std::vector<CandidateId>& ranking);

  int num_candidates() const { return static_cast<int>(positions_.size()); }
  int position_of(CandidateId c) const { return positions_[c.index]; }
  const std::vector<int>& positions() const { return positions_; }

  // Candidate ids from most to least preferred.
  std::vector<CandidateId> ranking() const;

  bool operator==(const Vote&) const = default;

 private:
  std::vector<int> positions_;
};

struct WeightedVote {
  Vote vote;
  Score weight = 1;  // nonnegative
};

// A manipulation problem: the cast electorate plus the weights of a coalition
// that has not voted yet. Unweighted problems use weight 1 throughout.
class ManipulationInstance {
 public:
  // Throws InputError if a ballot does not cover the roster, any weight is
  // negative, or the distinguished id is out of range.
  static ManipulationInstance make(int num_candidates, CandidateId distinguished,
                                   std::vector<WeightedVote> base_votes,
                                   std::vector<Score> manipulator_weights);

  int num_candidates() const { return num_candidates_; }
  CandidateId distinguished() const { return distinguished_; }
  const std::vector<WeightedVote>& base_votes() const { return base_votes_; }
  const std::vector<Score>& manipulator_weights() const { return manipulator_weights_; }
  int num_manipulators() const { return static_cast<int>(manipulator_weights_.size()); }

  // True when every base ballot and every manipulator weighs exactly 1.
  bool unit_weights() const;

  // Everyone but the distinguished candidate, in roster order.
  std::vector<CandidateId> rivals() const;

 private:
  int num_candidates_ = 0;
  CandidateId distinguished_;
  std::vector<WeightedVote> base_votes_;
  std::vector<Score> manipulator_weights_;
};

// Weighted Borda score of c over the cast ballots alone.
Score borda_score(const ManipulationInstance&, CandidateId c);

// borda_score for the whole roster, indexed by candidate.
std::vector<Score> base_scores(const ManipulationInstance&);

// Scores after the coalition casts the given ballots (weights applied in
// order). coalition may be empty to score the base election only.
std::vector<Score> total_scores(const ManipulationInstance&,
                                const std::vector<Vote>& coalition);

struct Capacities {
  // g[c] is how many points candidate c may still receive from the coalition
  // without threatening a unique win for the distinguished candidate, assuming
  // every coalition ballot tops the distinguished candidate. The entry at the
  // distinguished index is unused and left at 0.
  std::vector<Score> g;
  // First rival in roster order whose head room is negative, if any. When set,
  // no coalition ballots can produce a unique win.
  std::optional<CandidateId> infeasible;
};

// Requires at least one manipulator (weight 0 manipulators are legal).
Capacities capacities(const ManipulationInstance&);

// True iff casting exactly these ballots (votes[i] belongs to manipulator i)
// makes the distinguished candidate the unique Borda winner.
bool verify_manipulation(const ManipulationInstance&, const std::vector<Vote>& votes,
                         std::string* diagnostic = nullptr);

// Same check for raw position vectors that have not been validated; malformed
// ballots yield false with a diagnostic rather than an exception.
bool verify_manipulation_raw(const ManipulationInstance&,
                             const std::vector<std::vector<int>>& positions,
                             std::string* diagnostic = nullptr);

struct SolveStats {
  std::uint64_t states_stored = 0;
};

struct SolveOutcome {
  bool manipulable = false;
  // One ballot per manipulator iff manipulable (may be empty for a YES with
  // zero manipulators).
  std::vector<Vote> coalition_votes;
  SolveStats stats;
};

}  // namespace borda
