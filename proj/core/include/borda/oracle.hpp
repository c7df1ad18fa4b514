#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "borda/election.hpp"
#include "borda/fmm.hpp"
#include "borda/single_peaked.hpp"

namespace borda {

// Exhaustive-search reference solvers. They are deliberately independent of
// the production algorithms so the two can cross-check each other in tests.

struct BruteLimits {
  // Upper bound on search nodes before giving up with ResourceLimitError.
  std::uint64_t max_nodes = 10'000'000;
};

// Tries every tuple of coalition ballots in lexicographic order and returns
// the first one that makes the distinguished candidate the unique winner.
std::optional<std::vector<Vote>> brute_wbm(const ManipulationInstance&,
                                           const BruteLimits& = {});

// Tries matrices cell by cell (row-major, highest value first) and returns
// the first one meeting all row, column, and weighted-row constraints.
std::optional<MagicMatrix> brute_fmm(const FmmInstance&,
                                     const BruteLimits& = {});

// Tries every coincident ballot (or pair of ballots, for two manipulators)
// and returns the first tuple that makes the distinguished candidate the
// unique winner. Supports one or two manipulators.
std::optional<std::vector<Vote>> brute_sp(const ManipulationInstance&,
                                          const HarmoniousOrder&,
                                          const BruteLimits& = {});

}  // namespace borda
