#include "borda/fmm.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "borda/errors.hpp"

namespace borda {

namespace {

using Loads = std::vector<std::int64_t>;

struct LoadsHash {
  size_t operator()(const Loads& v) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::int64_t x : v) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

// Value: the lexicographically smallest row composition producing this state.
using LayerMap = std::unordered_map<Loads, Loads, LoadsHash>;

// (t+1)^m, saturated so the per-layer sanity bound never overflows.
std::uint64_t saturated_pow(std::uint64_t base, int exp) {
  const std::uint64_t cap = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t out = 1;
  for (int i = 0; i < exp; ++i) {
    if (out > cap / base) return cap;
    out *= base;
  }
  return out;
}

}  // namespace

FmmInstance make_fmm_instance(std::vector<Score> g, std::int64_t t) {
  if (g.empty()) throw InputError("matrix problem needs at least one row");
  if (t < 1) throw InputError("row/column sum t must be at least 1");
  for (size_t i = 0; i < g.size(); ++i)
    if (g[i] < 0)
      throw InputError("row cap " + std::to_string(i) + " is negative");
  return FmmInstance{std::move(g), t};
}

void for_each_row_composition(std::int64_t t, int m, Score cap,
                              const std::function<void(const Loads&)>& fn) {
  if (t < 0 || m < 1) throw InputError("composition enumeration needs t >= 0, m >= 1");
  Loads row(static_cast<size_t>(m), 0);
  // Recursive descent in ascending cell order yields ascending lex order.
  auto rec = [&](auto&& self, int col, std::int64_t remaining, Score weighted) -> void {
    if (col == m - 1) {
      const Score w = checked_add(weighted, checked_mul(remaining, m - 1));
      if (w <= cap) {
        row[col] = remaining;
        fn(row);
      }
      return;
    }
    for (std::int64_t v = 0; v <= remaining; ++v) {
      const Score w = checked_add(weighted, checked_mul(v, col));
      if (w > cap) break;  // larger v only costs more
      row[col] = v;
      self(self, col + 1, remaining - v, w);
    }
    row[col] = 0;
  };
  rec(rec, 0, t, 0);
}

std::vector<Loads> enumerate_row_compositions(std::int64_t t, int m, Score cap) {
  std::vector<Loads> out;
  for_each_row_composition(t, m, cap, [&](const Loads& r) { out.push_back(r); });
  return out;
}

bool verify_matrix(const FmmInstance& inst, const MagicMatrix& M, std::string* diagnostic) {
  auto fail = [&](const std::string& why) {
    if (diagnostic) *diagnostic = why;
    return false;
  };
  const int m = inst.m();
  if (M.m != m || M.cells.size() != static_cast<size_t>(m) * m)
    return fail("matrix shape does not match the instance");
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (M.at(i, j) < 0)
        return fail("cell (" + std::to_string(i) + "," + std::to_string(j) + ") is negative");
  for (int i = 0; i < m; ++i) {
    std::int64_t sum = 0;
    for (int j = 0; j < m; ++j) sum = checked_add(sum, M.at(i, j));
    if (sum != inst.t)
      return fail("row " + std::to_string(i) + " sums to " + std::to_string(sum) +
                  ", expected " + std::to_string(inst.t));
  }
  for (int j = 0; j < m; ++j) {
    std::int64_t sum = 0;
    for (int i = 0; i < m; ++i) sum = checked_add(sum, M.at(i, j));
    if (sum != inst.t)
      return fail("column " + std::to_string(j) + " sums to " + std::to_string(sum) +
                  ", expected " + std::to_string(inst.t));
  }
  for (int i = 0; i < m; ++i) {
    Score w = 0;
    for (int j = 0; j < m; ++j) w = checked_add(w, checked_mul(M.at(i, j), j));
    if (w > inst.g[i])
      return fail("weighted row " + std::to_string(i) + " reaches " + std::to_string(w) +
                  " > cap " + std::to_string(inst.g[i]));
  }
  if (diagnostic) diagnostic->clear();
  return true;
}

std::optional<MagicMatrix> solve_fmm(const FmmInstance& inst, const FmmOptions& options,
                                     SolveStats* stats) {
  const int m = inst.m();
  const std::int64_t t = inst.t;
  if (t < 1) throw InputError("solve_fmm: t must be at least 1");
  for (Score cap : inst.g)
    if (cap < 0) throw InputError("solve_fmm: negative row cap");

  const std::uint64_t layer_bound = saturated_pow(static_cast<std::uint64_t>(t) + 1, m);
  std::uint64_t stored = 0;

  // layers[l] holds the column loads reachable after filling rows 1..l.
  std::vector<LayerMap> layers(static_cast<size_t>(m) + 1);
  layers[0].emplace(Loads(static_cast<size_t>(m), 0), Loads{});

  for (int l = 1; l <= m; ++l) {
    const LayerMap& prev = layers[l - 1];
    LayerMap& next = layers[l];
    Loads grown(static_cast<size_t>(m), 0);
    for (const auto& [loads, parent] : prev) {
      (void)parent;
      for_each_row_composition(t, m, inst.g[l - 1], [&](const Loads& row) {
        for (int j = 0; j < m; ++j) {
          grown[j] = loads[j] + row[j];
          if (grown[j] > t) return;  // column would overflow
        }
        auto [it, inserted] = next.try_emplace(grown, row);
        if (inserted) {
          if (++stored > options.max_states)
            throw ResourceLimitError("solve_fmm: state cap of " +
                                     std::to_string(options.max_states) + " entries exceeded");
        } else if (row < it->second) {
          it->second = row;
        }
      });
    }
    if (next.size() > layer_bound)
      throw InternalError("solve_fmm: layer " + std::to_string(l) +
                          " exceeds the (t+1)^m state bound");
  }

  if (stats) stats->states_stored = stored;

  Loads full(static_cast<size_t>(m), t);
  if (!layers[m].contains(full)) return std::nullopt;

  MagicMatrix M;
  M.m = m;
  M.cells.assign(static_cast<size_t>(m) * m, 0);
  Loads cursor = full;
  for (int l = m; l >= 1; --l) {
    const auto it = layers[l].find(cursor);
    if (it == layers[l].end())
      throw InternalError("solve_fmm: lost the trail while rebuilding the matrix");
    const Loads& row = it->second;
    for (int j = 0; j < m; ++j) {
      M.at(l - 1, j) = row[j];
      cursor[j] -= row[j];
    }
  }

  std::string why;
  if (!verify_matrix(inst, M, &why))
    throw InternalError("solve_fmm: rebuilt matrix fails verification: " + why);
  return M;
}

std::string export_ilp(const FmmInstance& inst) {
  const int m = inst.m();
  auto var = [](int i, int j) {
    return "x_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  std::string out;
  out += "\\ magic matrix feasibility model\n";
  out += "\\ m=" + std::to_string(m) + " t=" + std::to_string(inst.t) + "\n";
  out += "Minimize\n obj: 0\n";
  out += "Subject To\n";
  for (int j = 0; j < m; ++j) {
    out += " col_" + std::to_string(j + 1) + ":";
    for (int i = 0; i < m; ++i) out += (i ? " + " : " ") + var(i, j);
    out += " = " + std::to_string(inst.t) + "\n";
  }
  for (int i = 0; i < m; ++i) {
    out += " row_" + std::to_string(i + 1) + ":";
    for (int j = 0; j < m; ++j) out += (j ? " + " : " ") + var(i, j);
    out += " = " + std::to_string(inst.t) + "\n";
  }
  for (int i = 0; i < m; ++i) {
    out += " cap_" + std::to_string(i + 1) + ":";
    if (m == 1) {
      // Degenerate but kept so every row has its cap constraint on file.
      out += " 0 " + var(i, 0);
    } else {
      for (int j = 1; j < m; ++j) {
        out += (j > 1 ? " + " : " ");
        if (j > 1) out += std::to_string(j) + " ";
        out += var(i, j);
      }
    }
    out += " <= " + std::to_string(inst.g[i]) + "\n";
  }
  out += "General\n";
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) out += " " + var(i, j) + "\n";
  out += "End\n";
  return out;
}

}  // namespace borda
