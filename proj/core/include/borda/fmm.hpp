#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "borda/election.hpp"

namespace borda {

// Magic matrix filling: find a nonnegative integer m x m matrix whose rows
// and columns each sum to t, and whose weighted row sums
// sum_j (j-1)*M[i][j] stay within the per-row caps g[i].
struct FmmInstance {
  std::vector<Score> g;  // per-row caps, all >= 0
  std::int64_t t = 0;    // shared row and column sum, >= 1

  int m() const { return static_cast<int>(g.size()); }
};

// Throws InputError unless m >= 1, t >= 1 and every cap is >= 0.
FmmInstance make_fmm_instance(std::vector<Score> g, std::int64_t t);

struct MagicMatrix {
  int m = 0;
  std::vector<std::int64_t> cells;  // row-major, m*m entries

  std::int64_t& at(int row, int col) { return cells[static_cast<size_t>(row) * m + col]; }
  std::int64_t at(int row, int col) const { return cells[static_cast<size_t>(row) * m + col]; }

  bool operator==(const MagicMatrix&) const = default;
};

struct FmmOptions {
  // Cap on stored column-load states across all layers; exceeding it raises
  // ResourceLimitError, never a wrong verdict.
  std::uint64_t max_states = 1ull << 26;
};

// Exact solver. Returns a witness matrix (re-verified internally) or nullopt.
std::optional<MagicMatrix> solve_fmm(const FmmInstance&, const FmmOptions& = {},
                                     SolveStats* stats = nullptr);

// Calls fn for every row vector r >= 0 with sum(r) = t and
// sum_j (j-1)*r[j] <= cap, in ascending lexicographic order.
void for_each_row_composition(std::int64_t t, int m, Score cap,
                              const std::function<void(const std::vector<std::int64_t>&)>& fn);

std::vector<std::vector<std::int64_t>> enumerate_row_compositions(std::int64_t t, int m,
                                                                  Score cap);

// Rechecks all three constraint families; on failure *diagnostic (when given)
// names the first violated one.
bool verify_matrix(const FmmInstance&, const MagicMatrix&, std::string* diagnostic = nullptr);

// LP-format text of the equivalent integer feasibility model; byte-stable for
// a given instance. Variables x_i_j are 1-based row/column indices.
std::string export_ilp(const FmmInstance&);

}  // namespace borda
