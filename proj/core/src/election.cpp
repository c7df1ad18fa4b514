#include "borda/election.hpp"

#include <algorithm>
#include <limits>

#include "borda/errors.hpp"

namespace borda {

Score checked_add(Score a, Score b) {
  Score out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw InputError("score addition overflows 64-bit range");
  return out;
}

Score checked_mul(Score a, Score b) {
  Score out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw InputError("score multiplication overflows 64-bit range");
  return out;
}

namespace {

bool is_permutation_1_to_k(const std::vector<int>& positions) {
  const int k = static_cast<int>(positions.size());
  std::vector<char> seen(static_cast<size_t>(k) + 1, 0);
  for (int p : positions) {
    if (p < 1 || p > k || seen[p]) return false;
    seen[p] = 1;
  }
  return true;
}

}  // namespace

Vote Vote::from_positions(std::vector<int> positions) {
  if (positions.empty()) throw InputError("a ballot needs at least one candidate");
  if (!is_permutation_1_to_k(positions))
    throw InputError("ballot positions must be a permutation of 1..k");
  Vote v;
  v.positions_ = std::move(positions);
  return v;
}

Vote Vote::from_ranking(const std::vector<CandidateId>& ranking) {
  const int k = static_cast<int>(ranking.size());
  std::vector<int> positions(static_cast<size_t>(k), 0);
  for (int i = 0; i < k; ++i) {
    const CandidateId c = ranking[i];
    if (c.index < 0 || c.index >= k)
      throw InputError("ranking mentions a candidate outside the roster");
    positions[c.index] = k - i;  // first listed name is most preferred
  }
  return from_positions(std::move(positions));
}

std::vector<CandidateId> Vote::ranking() const {
  const int k = num_candidates();
  std::vector<CandidateId> by_position(static_cast<size_t>(k));
  for (int c = 0; c < k; ++c) by_position[positions_[c] - 1] = CandidateId{c};
  std::reverse(by_position.begin(), by_position.end());
  return by_position;
}

ManipulationInstance ManipulationInstance::make(int num_candidates,
                                                CandidateId distinguished,
                                                std::vector<WeightedVote> base_votes,
                                                std::vector<Score> manipulator_weights) {
  if (num_candidates < 1) throw InputError("an election needs at least one candidate");
  if (distinguished.index < 0 || distinguished.index >= num_candidates)
    throw InputError("distinguished candidate is outside the roster");
  for (size_t i = 0; i < base_votes.size(); ++i) {
    if (base_votes[i].vote.num_candidates() != num_candidates)
      throw InputError("base ballot " + std::to_string(i) + " does not cover the roster");
    if (base_votes[i].weight < 0)
      throw InputError("base ballot " + std::to_string(i) + " has a negative weight");
  }
  for (size_t i = 0; i < manipulator_weights.size(); ++i) {
    if (manipulator_weights[i] < 0)
      throw InputError("manipulator " + std::to_string(i) + " has a negative weight");
  }
  ManipulationInstance inst;
  inst.num_candidates_ = num_candidates;
  inst.distinguished_ = distinguished;
  inst.base_votes_ = std::move(base_votes);
  inst.manipulator_weights_ = std::move(manipulator_weights);
  return inst;
}

bool ManipulationInstance::unit_weights() const {
  for (const auto& wv : base_votes_)
    if (wv.weight != 1) return false;
  for (Score w : manipulator_weights_)
    if (w != 1) return false;
  return true;
}

std::vector<CandidateId> ManipulationInstance::rivals() const {
  std::vector<CandidateId> out;
  out.reserve(static_cast<size_t>(num_candidates_) - 1);
  for (int c = 0; c < num_candidates_; ++c)
    if (c != distinguished_.index) out.push_back(CandidateId{c});
  return out;
}

Score borda_score(const ManipulationInstance& inst, CandidateId c) {
  if (c.index < 0 || c.index >= inst.num_candidates())
    throw InputError("borda_score: candidate outside the roster");
  Score total = 0;
  for (const auto& wv : inst.base_votes()) {
    const Score points = wv.vote.position_of(c) - 1;
    total = checked_add(total, checked_mul(wv.weight, points));
  }
  return total;
}

std::vector<Score> base_scores(const ManipulationInstance& inst) {
  std::vector<Score> out(static_cast<size_t>(inst.num_candidates()), 0);
  for (int c = 0; c < inst.num_candidates(); ++c) out[c] = borda_score(inst, CandidateId{c});
  return out;
}

std::vector<Score> total_scores(const ManipulationInstance& inst,
                                const std::vector<Vote>& coalition) {
  if (!coalition.empty() &&
      coalition.size() != static_cast<size_t>(inst.num_manipulators()))
    throw InputError("total_scores: coalition must be empty or one ballot per manipulator");
  std::vector<Score> out = base_scores(inst);
  for (size_t i = 0; i < coalition.size(); ++i) {
    if (coalition[i].num_candidates() != inst.num_candidates())
      throw InputError("total_scores: coalition ballot does not cover the roster");
    const Score w = inst.manipulator_weights()[i];
    for (int c = 0; c < inst.num_candidates(); ++c) {
      const Score points = coalition[i].position_of(CandidateId{c}) - 1;
      out[c] = checked_add(out[c], checked_mul(w, points));
    }
  }
  return out;
}

Capacities capacities(const ManipulationInstance& inst) {
  if (inst.num_manipulators() < 1)
    throw InputError("capacities: needs at least one manipulator");
  Score coalition_weight = 0;
  for (Score w : inst.manipulator_weights())
    coalition_weight = checked_add(coalition_weight, w);

  const Score rivals = inst.num_candidates() - 1;
  const std::vector<Score> sc = base_scores(inst);
  const Score p_final = checked_add(sc[inst.distinguished().index],
                                    checked_mul(coalition_weight, rivals));

  Capacities caps;
  caps.g.assign(static_cast<size_t>(inst.num_candidates()), 0);
  for (int c = 0; c < inst.num_candidates(); ++c) {
    if (c == inst.distinguished().index) continue;
    // Head room before candidate c ties the distinguished candidate's final
    // score; a tie already defeats a *unique* win, hence the -1.
    caps.g[c] = checked_add(p_final, -checked_add(sc[c], 1));
    if (caps.g[c] < 0 && !caps.infeasible) caps.infeasible = CandidateId{c};
  }
  return caps;
}

bool verify_manipulation_raw(const ManipulationInstance& inst,
                             const std::vector<std::vector<int>>& positions,
                             std::string* diagnostic) {
  auto fail = [&](const std::string& why) {
    if (diagnostic) *diagnostic = why;
    return false;
  };
  if (positions.size() != static_cast<size_t>(inst.num_manipulators()))
    return fail("expected " + std::to_string(inst.num_manipulators()) + " ballots, got " +
                std::to_string(positions.size()));

  std::vector<Vote> votes;
  votes.reserve(positions.size());
  for (size_t i = 0; i < positions.size(); ++i) {
    if (positions[i].size() != static_cast<size_t>(inst.num_candidates()))
      return fail("ballot " + std::to_string(i) + " does not cover the roster");
    std::vector<int> p = positions[i];
    const int k = static_cast<int>(p.size());
    std::vector<char> seen(static_cast<size_t>(k) + 1, 0);
    for (int pos : p) {
      if (pos < 1 || pos > k || seen[pos])
        return fail("ballot " + std::to_string(i) + " is not a permutation of 1.." +
                    std::to_string(k));
      seen[pos] = 1;
    }
    votes.push_back(Vote::from_positions(std::move(p)));
  }
  return verify_manipulation(inst, votes, diagnostic);
}

bool verify_manipulation(const ManipulationInstance& inst, const std::vector<Vote>& votes,
                         std::string* diagnostic) {
  auto fail = [&](const std::string& why) {
    if (diagnostic) *diagnostic = why;
    return false;
  };
  if (votes.size() != static_cast<size_t>(inst.num_manipulators()))
    return fail("expected " + std::to_string(inst.num_manipulators()) + " ballots, got " +
                std::to_string(votes.size()));
  for (size_t i = 0; i < votes.size(); ++i)
    if (votes[i].num_candidates() != inst.num_candidates())
      return fail("ballot " + std::to_string(i) + " does not cover the roster");

  const std::vector<Score> final_scores = total_scores(inst, votes);
  const Score p_score = final_scores[inst.distinguished().index];
  for (int c = 0; c < inst.num_candidates(); ++c) {
    if (c == inst.distinguished().index) continue;
    if (final_scores[c] >= p_score)
      return fail("candidate " + std::to_string(c) + " reaches " +
                  std::to_string(final_scores[c]) + " >= " + std::to_string(p_score));
  }
  if (diagnostic) diagnostic->clear();
  return true;
}

}  // namespace borda
