#include "borda/ubm.hpp"

#include <algorithm>

#include "borda/errors.hpp"

namespace borda {

UbmReduction reduce_ubm_to_fmm(const ManipulationInstance& inst) {
  if (!inst.unit_weights())
    throw InputError("reduce_ubm_to_fmm: instance must be unweighted");
  if (inst.num_manipulators() < 1)
    throw InputError("reduce_ubm_to_fmm: needs at least one manipulator");
  if (inst.num_candidates() < 2)
    throw InputError("reduce_ubm_to_fmm: needs at least one rival");

  const Capacities caps = capacities(inst);
  UbmReduction red;
  if (caps.infeasible) {
    red.infeasible = caps.infeasible;
    return red;
  }
  std::vector<Score> g;
  g.reserve(static_cast<size_t>(inst.num_candidates()) - 1);
  for (CandidateId c : inst.rivals()) g.push_back(caps.g[c.index]);
  red.fmm = make_fmm_instance(std::move(g), inst.num_manipulators());
  return red;
}

namespace {

constexpr int kFree = -1;

// Ballots under construction, as position -> candidate slot arrays so chain
// switches can exchange the occupants of one position across two ballots.
struct Workbench {
  int m;
  std::int64_t t;
  // slots[z][pos-1] for pos 1..m; the distinguished candidate sits at m+1
  // implicitly and never moves.
  std::vector<std::vector<int>> slots;

  bool is_free(std::int64_t z, int pos) const { return slots[z][pos - 1] == kFree; }

  // Position of candidate c in ballot z above floor, or 0. During a chain a
  // candidate can transiently occupy two slots of one ballot; the scan is
  // only used where the occupant is provably unique.
  int find_above(std::int64_t z, int c, int floor) const {
    for (int pos = floor + 1; pos <= m; ++pos)
      if (slots[z][pos - 1] == c) return pos;
    return 0;
  }

  bool contains(std::int64_t z, int c) const {
    for (int pos = 1; pos <= m; ++pos)
      if (slots[z][pos - 1] == c) return true;
    return false;
  }
};

}  // namespace

std::vector<Vote> matrix_to_votes(const MagicMatrix& M, std::int64_t t,
                                  AssemblyStats* stats) {
  const int m = M.m;
  if (m < 1) throw InputError("matrix_to_votes: empty matrix");
  if (t < 1) throw InputError("matrix_to_votes: needs at least one ballot");
  for (int i = 0; i < m; ++i) {
    std::int64_t row = 0, col = 0;
    for (int j = 0; j < m; ++j) {
      if (M.at(i, j) < 0) throw InputError("matrix_to_votes: negative cell");
      row += M.at(i, j);
      col += M.at(j, i);
    }
    if (row != t || col != t)
      throw InputError("matrix_to_votes: row/column sums must all equal t");
  }

  Workbench wb{m, t, std::vector<std::vector<int>>(
                         static_cast<size_t>(t), std::vector<int>(static_cast<size_t>(m), kFree))};
  // remaining[i][j]: ballots still owed candidate i at position j+1.
  std::vector<std::vector<std::int64_t>> remaining(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    remaining[i].resize(static_cast<size_t>(m));
    for (int j = 0; j < m; ++j) remaining[i][j] = M.at(i, j);
  }

  AssemblyStats local;
  auto place = [&](std::int64_t z, int c, int pos) {
    wb.slots[z][pos - 1] = c;
    if (--remaining[c][pos - 1] < 0)
      throw InternalError("matrix_to_votes: placed a candidate more often than owed");
    ++local.placements;
  };

  for (int jbar = m; jbar >= 1; --jbar) {
    while (true) {
      std::int64_t z = -1;
      for (std::int64_t cand = 0; cand < t; ++cand)
        if (wb.is_free(cand, jbar)) {
          z = cand;
          break;
        }
      if (z < 0) break;

      int ci = -1;
      for (int i = 0; i < m; ++i)
        if (remaining[i][jbar - 1] > 0) {
          ci = i;
          break;
        }
      if (ci < 0)
        throw InternalError("matrix_to_votes: open slot but no candidate owed at position " +
                            std::to_string(jbar));

      int jp = wb.find_above(z, ci, 0);
      if (jp == 0) {
        place(z, ci, jbar);
        continue;
      }

      std::int64_t zp = -1;
      for (std::int64_t cand = 0; cand < t; ++cand)
        if (cand != z && !wb.contains(cand, ci)) {
          zp = cand;
          break;
        }
      if (zp < 0)
        throw InternalError("matrix_to_votes: no ballot is still missing candidate " +
                            std::to_string(ci));

      if (wb.is_free(zp, jbar)) {
        place(zp, ci, jbar);
        continue;
      }

      // Switching chain: walk same-position pairs upward until the donor
      // offers a candidate absent from ballot z, then pull it across.
      int chain = 0;
      while (true) {
        const int d = wb.slots[zp][jp - 1];
        if (d == kFree)
          throw InternalError("matrix_to_votes: donor slot emptied mid-chain");
        const int jpp = wb.find_above(z, d, jbar);
        std::swap(wb.slots[z][jp - 1], wb.slots[zp][jp - 1]);
        ++chain;
        if (jpp == 0) break;
        jp = jpp;
      }
      local.total_swaps += chain;
      local.max_chain_swaps = std::max(local.max_chain_swaps, chain);
      if (chain > 2 * m)
        throw InternalError("matrix_to_votes: switching chain exceeded the 2m bound");
      place(z, ci, jbar);
    }
  }

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (remaining[i][j] != 0)
        throw InternalError("matrix_to_votes: leftover placement count at (" +
                            std::to_string(i) + "," + std::to_string(j) + ")");

  std::vector<Vote> votes;
  votes.reserve(static_cast<size_t>(t));
  for (std::int64_t z = 0; z < t; ++z) {
    std::vector<int> positions(static_cast<size_t>(m) + 1, 0);
    for (int pos = 1; pos <= m; ++pos) {
      const int c = wb.slots[z][pos - 1];
      if (c == kFree)
        throw InternalError("matrix_to_votes: unfilled slot in finished ballot");
      positions[c] = pos;
    }
    positions[m] = m + 1;
    try {
      votes.push_back(Vote::from_positions(std::move(positions)));
    } catch (const InputError&) {
      throw InternalError("matrix_to_votes: finished ballot is not a bijection");
    }
  }
  if (stats) *stats = local;
  return votes;
}

SolveOutcome solve_ubm(const ManipulationInstance& inst, const FmmOptions& options,
                       AssemblyStats* stats) {
  if (!inst.unit_weights()) throw InputError("solve_ubm: instance must be unweighted");

  SolveOutcome out;
  const int t = inst.num_manipulators();

  if (t == 0) {
    const std::vector<Score> sc = base_scores(inst);
    const Score p = sc[inst.distinguished().index];
    out.manipulable = true;
    for (int c = 0; c < inst.num_candidates(); ++c)
      if (c != inst.distinguished().index && sc[c] >= p) out.manipulable = false;
    return out;
  }

  if (inst.num_candidates() == 1) {
    out.manipulable = true;
    out.coalition_votes.assign(static_cast<size_t>(t), Vote::from_positions({1}));
    return out;
  }

  const UbmReduction red = reduce_ubm_to_fmm(inst);
  if (!red.fmm) return out;

  const std::optional<MagicMatrix> M = solve_fmm(*red.fmm, options, &out.stats);
  if (!M) return out;

  const std::vector<Vote> reduced = matrix_to_votes(*M, t, stats);

  // Map matrix-row candidates back onto the roster.
  const std::vector<CandidateId> rivals = inst.rivals();
  const int m = static_cast<int>(rivals.size());
  out.coalition_votes.reserve(static_cast<size_t>(t));
  for (const Vote& red_vote : reduced) {
    std::vector<int> positions(static_cast<size_t>(inst.num_candidates()), 0);
    for (int i = 0; i < m; ++i) positions[rivals[i].index] = red_vote.position_of(CandidateId{i});
    positions[inst.distinguished().index] = m + 1;
    out.coalition_votes.push_back(Vote::from_positions(std::move(positions)));
  }

  std::string why;
  if (!verify_manipulation(inst, out.coalition_votes, &why))
    throw InternalError("solve_ubm: certificate fails verification: " + why);
  out.manipulable = true;
  return out;
}

}  // namespace borda
