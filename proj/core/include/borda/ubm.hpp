#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "borda/election.hpp"
#include "borda/fmm.hpp"

namespace borda {

struct UbmReduction {
  // Row i of the matrix problem is rivals()[i]; column j is ballot position j.
  std::optional<FmmInstance> fmm;
  // First rival whose head room is negative; set exactly when fmm is empty.
  std::optional<CandidateId> infeasible;
};

// Unit-weight instances with at least one manipulator and one rival only;
// throws InputError otherwise.
UbmReduction reduce_ubm_to_fmm(const ManipulationInstance&);

struct AssemblyStats {
  int max_chain_swaps = 0;        // longest single switching chain
  std::int64_t total_swaps = 0;
  std::int64_t placements = 0;    // position fixes; exactly t*m on success
};

// Turns a row/column-magic matrix into t concrete ballots. Matrix rows are
// candidates 0..m-1; candidate m is the distinguished one and tops every
// ballot. M[i][j] many ballots end up with candidate i at position j+1.
std::vector<Vote> matrix_to_votes(const MagicMatrix&, std::int64_t t,
                                  AssemblyStats* stats = nullptr);

// Decision + certificate for unit-weight manipulation via the matrix route.
// Certificates are re-verified before being returned; a verification failure
// raises InternalError, never a silent NO.
SolveOutcome solve_ubm(const ManipulationInstance&, const FmmOptions& = {},
                       AssemblyStats* stats = nullptr);

}  // namespace borda
