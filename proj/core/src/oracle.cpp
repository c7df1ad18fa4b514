#include "borda/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "borda/errors.hpp"

namespace borda {

namespace {

void bump(std::uint64_t& nodes, const BruteLimits& limits, const char* who) {
  ++nodes;
  if (nodes > limits.max_nodes) {
    throw ResourceLimitError(std::string(who) + " exceeded the node limit of " +
                             std::to_string(limits.max_nodes));
  }
}

bool strictly_wins(const std::vector<Score>& totals, CandidateId p) {
  for (std::size_t c = 0; c < totals.size(); ++c) {
    if (static_cast<int>(c) == p.index) continue;
    if (totals[c] >= totals[p.index]) return false;
  }
  return true;
}

}  // namespace

std::optional<std::vector<Vote>> brute_wbm(const ManipulationInstance& inst,
                                           const BruteLimits& limits) {
  const int k = inst.num_candidates();
  const int t = inst.num_manipulators();
  const CandidateId p = inst.distinguished();
  std::vector<Score> totals = base_scores(inst);

  if (t == 0) {
    if (strictly_wins(totals, p)) return std::vector<Vote>{};
    return std::nullopt;
  }

  std::uint64_t nodes = 0;
  std::vector<std::vector<int>> rankings(t);
  std::optional<std::vector<Vote>> found;

  const std::function<void(int)> at_level = [&](int level) {
    const Score w = inst.manipulator_weights()[level];
    std::vector<int> ranking(k);
    std::iota(ranking.begin(), ranking.end(), 0);
    do {
      bump(nodes, limits, "brute_wbm");
      for (int r = 0; r < k; ++r) totals[ranking[r]] += w * (k - 1 - r);
      rankings[level] = ranking;
      if (level == t - 1) {
        if (strictly_wins(totals, p)) {
          std::vector<Vote> votes;
          for (const std::vector<int>& rk : rankings) {
            std::vector<CandidateId> ids;
            ids.reserve(rk.size());
            for (int c : rk) ids.push_back(CandidateId{c});
            votes.push_back(Vote::from_ranking(ids));
          }
          found = std::move(votes);
        }
      } else {
        at_level(level + 1);
      }
      for (int r = 0; r < k; ++r) totals[ranking[r]] -= w * (k - 1 - r);
      if (found) return;
    } while (std::next_permutation(ranking.begin(), ranking.end()));
  };
  at_level(0);
  return found;
}

std::optional<MagicMatrix> brute_fmm(const FmmInstance& inst,
                                     const BruteLimits& limits) {
  const int m = inst.m();
  const Score t = inst.t;
  std::vector<Score> cells(static_cast<std::size_t>(m) * m, 0);
  std::vector<Score> row_sum(m, 0), col_sum(m, 0), row_weighted(m, 0);
  std::uint64_t nodes = 0;

  const std::function<bool(int)> fill = [&](int idx) -> bool {
    if (idx == m * m) return true;
    const int i = idx / m;
    const int j = idx % m;
    const Score hi = std::min(t - row_sum[i], t - col_sum[j]);
    for (Score v = hi; v >= 0; --v) {
      bump(nodes, limits, "brute_fmm");
      if (row_weighted[i] + v * j > inst.g[i]) continue;
      if (j == m - 1 && row_sum[i] + v != t) continue;
      if (i == m - 1 && col_sum[j] + v != t) continue;
      cells[idx] = v;
      row_sum[i] += v;
      col_sum[j] += v;
      row_weighted[i] += v * j;
      if (fill(idx + 1)) return true;
      row_weighted[i] -= v * j;
      col_sum[j] -= v;
      row_sum[i] -= v;
      cells[idx] = 0;
    }
    return false;
  };

  if (!fill(0)) return std::nullopt;
  return MagicMatrix{m, std::move(cells)};
}

std::optional<std::vector<Vote>> brute_sp(const ManipulationInstance& inst,
                                          const HarmoniousOrder& axis,
                                          const BruteLimits& limits) {
  const int k = inst.num_candidates();
  const int t = inst.num_manipulators();
  if (t != 1 && t != 2) {
    throw InputError("brute_sp requires one or two manipulators, got " +
                     std::to_string(t));
  }
  if (!inst.unit_weights()) {
    throw InputError("brute_sp requires unit weights");
  }
  if (axis.num_candidates() != k) {
    throw InputError("axis covers " + std::to_string(axis.num_candidates()) +
                     " candidates but the election has " + std::to_string(k));
  }

  const std::vector<Vote> votes = enumerate_coincident_votes(axis);
  const std::vector<Score> base = base_scores(inst);
  const CandidateId p = inst.distinguished();

  std::vector<std::vector<Score>> contrib;
  contrib.reserve(votes.size());
  for (const Vote& v : votes) {
    std::vector<Score> row(k);
    for (int c = 0; c < k; ++c) row[c] = v.position_of(CandidateId{c}) - 1;
    contrib.push_back(std::move(row));
  }

  std::uint64_t nodes = 0;
  std::vector<Score> totals(k);
  if (t == 1) {
    for (std::size_t i = 0; i < votes.size(); ++i) {
      bump(nodes, limits, "brute_sp");
      for (int c = 0; c < k; ++c) totals[c] = base[c] + contrib[i][c];
      if (strictly_wins(totals, p)) return std::vector<Vote>{votes[i]};
    }
    return std::nullopt;
  }
  for (std::size_t i = 0; i < votes.size(); ++i) {
    for (std::size_t j = i; j < votes.size(); ++j) {
      bump(nodes, limits, "brute_sp");
      for (int c = 0; c < k; ++c) {
        totals[c] = base[c] + contrib[i][c] + contrib[j][c];
      }
      if (strictly_wins(totals, p)) {
        return std::vector<Vote>{votes[i], votes[j]};
      }
    }
  }
  return std::nullopt;
}

}  // namespace borda
