#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>

#include "borda/election.hpp"

namespace borda {

struct WbmOptions {
  // Cap on stored table entries across all layers; exceeding it raises
  // ResourceLimitError rather than returning a wrong verdict.
  std::uint64_t max_states = 1ull << 26;
  // Merge states that differ only by a permutation of equal-weight
  // manipulators. Off by default. Verdicts never change; certificates may
  // differ from the unmerged run but still verify.
  bool merge_equal_weights = false;
  // Entries within one layer may be built in parallel; results are identical
  // for any thread count.
  int threads = 1;
  // Re-check the certificate with verify_manipulation before returning.
  bool paranoid = false;
  // When set, every reachable table entry is written here, one per line:
  // layer, placed-rival set, one position set per manipulator, bit.
  std::ostream* table_dump = nullptr;
};

// Reachable entries of the layered placement table, one layer per number of
// placed rivals, with enough bookkeeping to walk a winning assignment out.
class WbmTable {
 public:
  bool accepted() const;
  std::uint64_t states_stored() const;

  class Impl;
  explicit WbmTable(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  const Impl& impl() const { return *impl_; }

 private:
  std::shared_ptr<const Impl> impl_;
};

// Builds the full table for an instance with at least one manipulator and at
// least one rival. Rejects rosters with more than 26 rivals up front; the
// subset table could never fit anyway.
WbmTable solve_wbm_table(const ManipulationInstance&, const WbmOptions& = {});

// Walks the stored parent pointers of an accepted table back to one ballot
// per manipulator. Throws InputError if the table was not accepted.
std::vector<Vote> reconstruct_wbm(const ManipulationInstance&, const WbmTable&);

// Exact decision + certificate for weighted coalition manipulation.
SolveOutcome solve_wbm(const ManipulationInstance&, const WbmOptions& = {});

}  // namespace borda
