#include "borda/single_peaked.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <sstream>
#include <string>

#include "borda/errors.hpp"

namespace borda {

namespace {

std::string candidate_label(CandidateId c) {
  return "candidate #" + std::to_string(c.index);
}

}  // namespace

HarmoniousOrder HarmoniousOrder::from_axis(std::vector<CandidateId> order) {
  const int k = static_cast<int>(order.size());
  if (k < 1) throw InputError("axis must contain at least one candidate");
  std::vector<int> seat(k, 0);
  for (int s = 0; s < k; ++s) {
    const int idx = order[s].index;
    if (idx < 0 || idx >= k) {
      throw InputError("axis names " + candidate_label(order[s]) +
                       " outside the roster of " + std::to_string(k) +
                       " candidates");
    }
    if (seat[idx] != 0) {
      throw InputError("axis lists " + candidate_label(order[s]) + " twice");
    }
    seat[idx] = s + 1;
  }
  HarmoniousOrder h;
  h.order_ = std::move(order);
  h.seat_ = std::move(seat);
  return h;
}

bool is_coincident(const Vote& vote, const HarmoniousOrder& axis) {
  const int k = vote.num_candidates();
  if (axis.num_candidates() != k) {
    throw InputError("axis covers " + std::to_string(axis.num_candidates()) +
                     " candidates but the ballot ranks " + std::to_string(k));
  }
  const std::vector<CandidateId> ranking = vote.ranking();
  // Walk the ballot from most to least preferred, growing a seat interval.
  int lo = axis.seat_of(ranking.front());
  int hi = lo;
  for (int r = 1; r < k; ++r) {
    const int seat = axis.seat_of(ranking[r]);
    if (seat == lo - 1) {
      lo = seat;
    } else if (seat == hi + 1) {
      hi = seat;
    } else {
      return false;
    }
  }
  return true;
}

Block block_of(const std::vector<CandidateId>& candidates,
               const HarmoniousOrder& axis) {
  if (candidates.empty()) {
    throw InputError("a block must contain at least one candidate");
  }
  std::vector<int> seats;
  seats.reserve(candidates.size());
  for (CandidateId c : candidates) {
    if (c.index < 0 || c.index >= axis.num_candidates()) {
      throw InputError("block names " + candidate_label(c) +
                       " outside the axis");
    }
    seats.push_back(axis.seat_of(c));
  }
  std::sort(seats.begin(), seats.end());
  for (std::size_t i = 1; i < seats.size(); ++i) {
    if (seats[i] != seats[i - 1] + 1) {
      throw InputError("candidates do not occupy consecutive seats");
    }
  }
  return Block{seats.front(), seats.back()};
}

std::vector<CandidateId> block_neighbors(const Block& block,
                                         const HarmoniousOrder& axis) {
  const int k = axis.num_candidates();
  if (block.lo < 1 || block.hi > k || block.lo > block.hi) {
    throw InputError("block [" + std::to_string(block.lo) + ", " +
                     std::to_string(block.hi) +
                     "] does not fit an axis of " + std::to_string(k) +
                     " seats");
  }
  std::vector<CandidateId> out;
  if (block.lo > 1) out.push_back(axis.at_seat(block.lo - 1));
  if (block.hi < k) out.push_back(axis.at_seat(block.hi + 1));
  return out;
}

std::vector<Vote> enumerate_coincident_votes(const HarmoniousOrder& axis) {
  const int k = axis.num_candidates();
  if (k > 20) {
    throw ResourceLimitError(
        "refusing to enumerate 2^" + std::to_string(k - 1) +
        " coincident ballots; limit is 20 candidates");
  }
  // A ballot is coincident iff reading it from least to most preferred
  // always removes an endpoint of the remaining seat interval, so the
  // ballots are in bijection with the 2^(k-1) left/right choice strings.
  std::vector<Vote> out;
  out.reserve(std::size_t{1} << (k - 1));
  std::vector<int> positions(k);
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << (k - 1)); ++mask) {
    int lo = 1;
    int hi = k;
    for (int r = 1; r < k; ++r) {
      if ((mask >> (r - 1)) & 1u) {
        positions[axis.at_seat(hi).index] = r;
        --hi;
      } else {
        positions[axis.at_seat(lo).index] = r;
        ++lo;
      }
    }
    positions[axis.at_seat(lo).index] = k;
    out.push_back(Vote::from_positions(positions));
  }
  return out;
}

namespace {

// Shared pieces of the two greedy solvers.
struct SpContext {
  int k = 0;
  CandidateId p;
  std::vector<Score> scores;  // fixed-voter scores per candidate
  Score p_final = 0;          // distinguished total once topping every ballot
};

SpContext make_context(const ManipulationInstance& inst,
                       const HarmoniousOrder& axis, int required_t,
                       const char* who) {
  if (inst.num_manipulators() != required_t) {
    throw InputError(std::string(who) + " requires exactly " +
                     std::to_string(required_t) + " manipulator(s), got " +
                     std::to_string(inst.num_manipulators()));
  }
  if (!inst.unit_weights()) {
    throw InputError(std::string(who) + " requires unit weights");
  }
  if (axis.num_candidates() != inst.num_candidates()) {
    throw InputError("axis covers " + std::to_string(axis.num_candidates()) +
                     " candidates but the election has " +
                     std::to_string(inst.num_candidates()));
  }
  for (std::size_t i = 0; i < inst.base_votes().size(); ++i) {
    if (!is_coincident(inst.base_votes()[i].vote, axis)) {
      throw InputError("base ballot #" + std::to_string(i) +
                       " is not coincident with the axis");
    }
  }
  SpContext ctx;
  ctx.k = inst.num_candidates();
  ctx.p = inst.distinguished();
  ctx.scores = base_scores(inst);
  const Score rivals = ctx.k - 1;
  ctx.p_final = checked_add(ctx.scores[ctx.p.index],
                            checked_mul(Score{required_t}, rivals));
  return ctx;
}

void verify_certificate(const ManipulationInstance& inst,
                        const HarmoniousOrder& axis,
                        const std::vector<Vote>& votes, const char* who) {
  std::string diag;
  if (!verify_manipulation(inst, votes, &diag)) {
    throw InternalError(std::string(who) +
                        " produced a non-winning certificate: " + diag);
  }
  for (std::size_t i = 0; i < votes.size(); ++i) {
    if (!is_coincident(votes[i], axis)) {
      throw InternalError(std::string(who) + " produced ballot #" +
                          std::to_string(i) +
                          " that is not coincident with the axis");
    }
  }
}

}  // namespace

SolveOutcome solve_ubm1sp(const ManipulationInstance& inst,
                          const HarmoniousOrder& axis, SpStats* stats) {
  const SpContext ctx = make_context(inst, axis, 1, "solve_ubm1sp");
  SpStats local{};
  const int k = ctx.k;

  std::vector<int> pos(k, 0);
  pos[ctx.p.index] = k;
  int lo = axis.seat_of(ctx.p);
  int hi = lo;

  for (int j = k - 1; j >= 1; --j) {
    // A neighbor is safe at position j when it stays strictly below the
    // distinguished candidate's final score.
    const auto safe = [&](CandidateId c) {
      return ctx.scores[c.index] + (j - 1) < ctx.p_final;
    };
    std::optional<CandidateId> left, right;
    if (lo > 1 && safe(axis.at_seat(lo - 1))) left = axis.at_seat(lo - 1);
    if (hi < k && safe(axis.at_seat(hi + 1))) right = axis.at_seat(hi + 1);

    std::optional<CandidateId> pick;
    bool pick_left = false;
    if (left && right) {
      // Deterministic choice; either safe neighbor preserves solvability.
      // Prefer the one with less headroom, breaking ties toward the left.
      pick_left = ctx.scores[left->index] >= ctx.scores[right->index];
      pick = pick_left ? *left : *right;
    } else if (left) {
      pick = *left;
      pick_left = true;
    } else if (right) {
      pick = *right;
      pick_left = false;
    } else {
      if (stats) *stats = local;
      return SolveOutcome{false, {}, SolveStats{}};
    }

    pos[pick->index] = j;
    if (pick_left) {
      --lo;
    } else {
      ++hi;
    }
    ++local.extensions;
  }

  std::vector<Vote> votes{Vote::from_positions(pos)};
  verify_certificate(inst, axis, votes, "solve_ubm1sp");
  if (stats) *stats = local;
  return SolveOutcome{true, std::move(votes), SolveStats{}};
}

SolveOutcome solve_ubm2sp(const ManipulationInstance& inst,
                          const HarmoniousOrder& axis, SpStats* stats) {
  const SpContext ctx = make_context(inst, axis, 2, "solve_ubm2sp");
  SpStats local{};
  const int k = ctx.k;
  const int max_extensions = 2 * (k - 1);

  struct Interval {
    int lo = 0;
    int hi = 0;
    bool operator==(const Interval&) const = default;
  };

  std::array<std::vector<int>, 2> pos{std::vector<int>(k, 0),
                                      std::vector<int>(k, 0)};
  pos[0][ctx.p.index] = k;
  pos[1][ctx.p.index] = k;
  const int p_seat = axis.seat_of(ctx.p);
  std::array<Interval, 2> block{Interval{p_seat, p_seat},
                                Interval{p_seat, p_seat}};
  std::array<int, 2> filled{1, 1};

  const auto no_outcome = [&]() {
    if (stats) *stats = local;
    return SolveOutcome{false, {}, SolveStats{}};
  };
  const auto single_safe = [&](CandidateId c, int j) {
    return ctx.scores[c.index] + (j - 1) < ctx.p_final;
  };
  // Safe final total for a candidate already holding a position in the
  // other ballot.
  const auto completion_safe = [&](CandidateId c, int j, int other_pos) {
    return ctx.scores[c.index] + (other_pos - 1) + (j - 1) < ctx.p_final;
  };
  const auto extend = [&](int z, CandidateId c) {
    const int seat = axis.seat_of(c);
    if (seat == block[z].lo - 1) {
      --block[z].lo;
    } else if (seat == block[z].hi + 1) {
      ++block[z].hi;
    } else {
      throw InternalError("solve_ubm2sp tried to extend ballot #" +
                          std::to_string(z + 1) + " with a non-neighbor");
    }
    pos[z][c.index] = k - filled[z];
    ++filled[z];
    ++local.extensions;
    if (local.extensions > max_extensions) {
      throw InternalError("solve_ubm2sp exceeded the extension budget of " +
                          std::to_string(max_extensions));
    }
  };

  while (filled[0] == filled[1] && filled[0] < k) {
    if (!(block[0] == block[1])) {
      throw InternalError("solve_ubm2sp lost the equal-blocks invariant");
    }
    const int j = k - filled[0];
    const auto pair_safe = [&](CandidateId c) {
      return ctx.scores[c.index] + 2 * (j - 1) < ctx.p_final;
    };
    std::optional<CandidateId> left, right;
    if (block[0].lo > 1) left = axis.at_seat(block[0].lo - 1);
    if (block[0].hi < k) right = axis.at_seat(block[0].hi + 1);

    // Place one neighbor at the next free position of both ballots when its
    // doubled contribution is safe.
    std::optional<CandidateId> both;
    bool both_left = false;
    const bool left_ok = left && pair_safe(*left);
    const bool right_ok = right && pair_safe(*right);
    if (left_ok && right_ok) {
      both_left = ctx.scores[left->index] >= ctx.scores[right->index];
      both = both_left ? *left : *right;
    } else if (left_ok) {
      both = *left;
      both_left = true;
    } else if (right_ok) {
      both = *right;
      both_left = false;
    }
    if (both) {
      extend(0, *both);
      extend(1, *both);
      continue;
    }

    // With a single neighbor, any coincident pair of ballots must hand it
    // both next free positions, which was just ruled out.
    if (!left || !right) return no_outcome();

    // Split: left neighbor into the first ballot, right into the second,
    // provided each alone is safe at the shared next free position.
    if (!single_safe(*left, j) || !single_safe(*right, j)) {
      return no_outcome();
    }
    extend(0, *left);
    extend(1, *right);

    // Resynchronize until both ballots hold the same candidates again.
    while (!(block[0] == block[1])) {
      const Interval core{std::max(block[0].lo, block[1].lo),
                          std::min(block[0].hi, block[1].hi)};
      const auto placed_once = [&](CandidateId c) {
        return (pos[0][c.index] != 0) != (pos[1][c.index] != 0);
      };
      std::optional<CandidateId> pending;
      if (core.lo > 1 && placed_once(axis.at_seat(core.lo - 1))) {
        pending = axis.at_seat(core.lo - 1);  // left flank first
      } else if (core.hi < k && placed_once(axis.at_seat(core.hi + 1))) {
        pending = axis.at_seat(core.hi + 1);
      }
      if (!pending) {
        throw InternalError(
            "solve_ubm2sp found no half-placed candidate while the ballots "
            "disagree");
      }
      const CandidateId c = *pending;
      const int v = pos[0][c.index] != 0 ? 0 : 1;
      const int z = 1 - v;
      const int c_seat = axis.seat_of(c);

      // Fill the gap above the target position with candidates from the far
      // flank until the half-placed candidate fits safely.
      while (!completion_safe(c, k - filled[z], pos[v][c.index])) {
        const bool c_on_left = c_seat == block[z].lo - 1;
        if (!c_on_left && c_seat != block[z].hi + 1) {
          throw InternalError(
              "solve_ubm2sp half-placed candidate is not adjacent to the "
              "other ballot's block");
        }
        const int far_seat = c_on_left ? block[z].hi + 1 : block[z].lo - 1;
        if (far_seat < 1 || far_seat > k) return no_outcome();
        const CandidateId filler = axis.at_seat(far_seat);
        if (pos[0][filler.index] != 0 || pos[1][filler.index] != 0) {
          throw InternalError(
              "solve_ubm2sp gap filler is already placed in a ballot");
        }
        if (!single_safe(filler, k - filled[z])) return no_outcome();
        extend(z, filler);
      }
      extend(z, c);
    }
    if (filled[0] != filled[1]) {
      throw InternalError(
          "solve_ubm2sp ballots disagree in size after resynchronization");
    }
  }

  std::vector<Vote> votes{Vote::from_positions(pos[0]),
                          Vote::from_positions(pos[1])};
  verify_certificate(inst, axis, votes, "solve_ubm2sp");
  if (stats) *stats = local;
  return SolveOutcome{true, std::move(votes), SolveStats{}};
}

}  // namespace borda
