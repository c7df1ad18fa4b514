#pragma once

#include <vector>

#include "borda/election.hpp"

namespace borda {

// Societal left-to-right axis over the full roster. Seat 1 is the leftmost.
class HarmoniousOrder {
 public:
  // order[s] is the candidate at seat s+1. Throws InputError unless order is
  // a permutation of the roster 0..k-1.
  static HarmoniousOrder from_axis(std::vector<CandidateId> order);

  int num_candidates() const { return static_cast<int>(order_.size()); }
  int seat_of(CandidateId c) const { return seat_[c.index]; }
  CandidateId at_seat(int seat) const { return order_[seat - 1]; }
  const std::vector<CandidateId>& axis() const { return order_; }

  bool operator==(const HarmoniousOrder&) const = default;

 private:
  std::vector<CandidateId> order_;
  std::vector<int> seat_;
};

// True iff every top segment of the ballot occupies consecutive seats, i.e.
// walking the ballot from most to least preferred grows one axis interval.
bool is_coincident(const Vote&, const HarmoniousOrder&);

// A consecutive run of seats, 1-based inclusive.
struct Block {
  int lo = 0;
  int hi = 0;
};

// Throws InputError unless the candidates occupy consecutive seats.
Block block_of(const std::vector<CandidateId>&, const HarmoniousOrder&);

// The at most two candidates seated directly left/right of the block, left
// one first.
std::vector<CandidateId> block_neighbors(const Block&, const HarmoniousOrder&);

// All ballots coincident with the axis, exactly 2^(k-1) of them, in a fixed
// order. Throws ResourceLimitError for k > 20.
std::vector<Vote> enumerate_coincident_votes(const HarmoniousOrder&);

struct SpStats {
  int extensions = 0;  // block growth steps across all coalition ballots
};

// One-manipulator decision when every ballot must be coincident with the
// axis. Requires unit weights, exactly one manipulator, and base votes
// coincident with the axis (InputError otherwise).
SolveOutcome solve_ubm1sp(const ManipulationInstance&, const HarmoniousOrder&,
                          SpStats* stats = nullptr);

// Two-manipulator variant; same requirements with exactly two manipulators.
SolveOutcome solve_ubm2sp(const ManipulationInstance&, const HarmoniousOrder&,
                          SpStats* stats = nullptr);

}  // namespace borda
