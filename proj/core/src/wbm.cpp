#include "borda/wbm.hpp"

#include <algorithm>
#include <ostream>
#include <thread>
#include <unordered_map>

#include "borda/errors.hpp"

namespace borda {

namespace {

// masks[0]: placed rival set. masks[1+i]: positions already used by
// manipulator i, bit z-1 for position z. All rivals use reduced indices
// 0..m-1 in roster order with the distinguished candidate skipped.
using Key = std::vector<std::uint32_t>;

struct KeyHash {
  size_t operator()(const Key& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint32_t w : k) {
      h ^= w;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

struct Parent {
  std::int8_t candidate = -1;
  std::vector<std::uint8_t> z;  // 1-based position per manipulator
};

bool parent_less(std::int8_t c, const std::vector<std::uint8_t>& z, const Parent& other) {
  if (c != other.candidate) return c < other.candidate;
  return z < other.z;
}

using LayerMap = std::unordered_map<Key, Parent, KeyHash>;

// Slots of equal-weight manipulators, each list ascending.
std::vector<std::vector<int>> weight_groups(const std::vector<Score>& weights) {
  std::vector<std::vector<int>> groups;
  std::vector<std::pair<Score, int>> order;
  for (int i = 0; i < static_cast<int>(weights.size()); ++i) order.emplace_back(weights[i], i);
  std::stable_sort(order.begin(), order.end());
  for (size_t i = 0; i < order.size();) {
    size_t j = i;
    std::vector<int> g;
    while (j < order.size() && order[j].first == order[i].first) g.push_back(order[j++].second);
    std::sort(g.begin(), g.end());
    groups.push_back(std::move(g));
    i = j;
  }
  return groups;
}

// Sorts position masks within every equal-weight group. canon_perm[q] names
// the raw slot whose mask ends up at slot q (identity outside groups).
void canonicalize(Key& key, const std::vector<std::vector<int>>& groups,
                  std::vector<int>* canon_perm) {
  if (canon_perm) {
    canon_perm->resize(key.size() - 1);
    for (size_t q = 0; q + 1 < key.size(); ++q) (*canon_perm)[q] = static_cast<int>(q);
  }
  std::vector<std::pair<std::uint32_t, int>> scratch;
  for (const auto& slots : groups) {
    if (slots.size() < 2) continue;
    scratch.clear();
    for (int s : slots) scratch.emplace_back(key[1 + s], s);
    std::sort(scratch.begin(), scratch.end());
    for (size_t j = 0; j < slots.size(); ++j) {
      key[1 + slots[j]] = scratch[j].first;
      if (canon_perm) (*canon_perm)[slots[j]] = scratch[j].second;
    }
  }
}

}  // namespace

class WbmTable::Impl {
 public:
  int m = 0;  // rivals
  int t = 0;
  bool merge = false;
  std::vector<std::vector<int>> groups;
  std::vector<LayerMap> layers;
  bool accepted = false;
  std::uint64_t stored = 0;
};

bool WbmTable::accepted() const { return impl_->accepted; }
std::uint64_t WbmTable::states_stored() const { return impl_->stored; }

namespace {

struct BuildContext {
  int m;
  int t;
  std::vector<Score> f;      // manipulator weights
  std::vector<Score> g_red;  // head room per reduced rival
  bool merge;
  const std::vector<std::vector<int>>* groups;
};

// Extends one reachable entry by every (rival, position tuple) whose singleton
// placement respects the rival's head room, in ascending candidate order with
// nested ascending positions.
template <typename Sink>
void extend_entry(const BuildContext& ctx, const Key& prev, Sink&& sink) {
  const std::uint32_t all = (ctx.m >= 32) ? 0xffffffffu : ((1u << ctx.m) - 1);
  std::vector<std::uint8_t> z(static_cast<size_t>(ctx.t), 0);
  Key next(prev.size());
  for (int c = 0; c < ctx.m; ++c) {
    if (prev[0] & (1u << c)) continue;
    const Score budget = ctx.g_red[c];
    auto rec = [&](auto&& self, int i, Score partial) -> void {
      if (i == ctx.t) {
        next[0] = prev[0] | (1u << c);
        for (int q = 0; q < ctx.t; ++q) next[1 + q] = prev[1 + q] | (1u << (z[q] - 1));
        sink(next, static_cast<std::int8_t>(c), z);
        return;
      }
      for (int pos = 1; pos <= ctx.m; ++pos) {
        if (prev[1 + i] & (1u << (pos - 1))) continue;
        const Score cost = checked_mul(ctx.f[i], pos - 1);
        const Score sum = checked_add(partial, cost);
        if (sum > budget) {
          if (ctx.f[i] > 0) break;  // later positions only cost more
          continue;
        }
        z[i] = static_cast<std::uint8_t>(pos);
        self(self, i + 1, sum);
      }
    };
    rec(rec, 0, 0);
    (void)all;
  }
}

void insert_or_min(LayerMap& map, const Key& key, std::int8_t c,
                   const std::vector<std::uint8_t>& z, std::uint64_t* stored,
                   std::uint64_t max_states) {
  auto [it, inserted] = map.try_emplace(key, Parent{c, z});
  if (inserted) {
    if (stored && ++*stored > max_states)
      throw ResourceLimitError("solve_wbm: state cap of " + std::to_string(max_states) +
                               " entries exceeded");
  } else if (parent_less(c, z, it->second)) {
    it->second = Parent{c, z};
  }
}

}  // namespace

WbmTable solve_wbm_table(const ManipulationInstance& inst, const WbmOptions& options) {
  const int t = inst.num_manipulators();
  const int m = inst.num_candidates() - 1;
  if (t < 1) throw InputError("solve_wbm_table: needs at least one manipulator");
  if (m < 1) throw InputError("solve_wbm_table: needs at least one rival");
  if (m > 26)
    throw ResourceLimitError("solve_wbm_table: more than 26 rivals cannot fit a subset table");

  auto impl = std::make_shared<WbmTable::Impl>();
  impl->m = m;
  impl->t = t;
  impl->merge = options.merge_equal_weights;
  impl->groups = weight_groups(inst.manipulator_weights());
  impl->layers.assign(static_cast<size_t>(m) + 1, LayerMap{});

  const Capacities caps = capacities(inst);
  if (!caps.infeasible) {
    BuildContext ctx;
    ctx.m = m;
    ctx.t = t;
    ctx.f = inst.manipulator_weights();
    ctx.g_red.reserve(static_cast<size_t>(m));
    for (CandidateId c : inst.rivals()) ctx.g_red.push_back(caps.g[c.index]);
    ctx.merge = impl->merge;
    ctx.groups = &impl->groups;

    impl->layers[0].emplace(Key(static_cast<size_t>(t) + 1, 0), Parent{});
    impl->stored = 1;

    const int threads = std::max(1, options.threads);
    for (int l = 1; l <= m; ++l) {
      const LayerMap& prev = impl->layers[l - 1];
      LayerMap& next = impl->layers[l];

      auto emit = [&](LayerMap& target, std::uint64_t* counter, std::uint64_t cap) {
        return [&ctx, &target, counter, cap](const Key& raw, std::int8_t c,
                                             const std::vector<std::uint8_t>& zraw) {
          if (!ctx.merge) {
            insert_or_min(target, raw, c, zraw, counter, cap);
            return;
          }
          Key canon = raw;
          std::vector<int> perm;
          canonicalize(canon, *ctx.groups, &perm);
          std::vector<std::uint8_t> zc(zraw.size());
          for (size_t q = 0; q < zraw.size(); ++q) zc[q] = zraw[perm[q]];
          insert_or_min(target, canon, c, zc, counter, cap);
        };
      };

      if (threads == 1 || prev.size() < 64) {
        auto sink = emit(next, &impl->stored, options.max_states);
        for (const auto& [key, parent] : prev) {
          (void)parent;
          extend_entry(ctx, key, sink);
        }
      } else {
        std::vector<const Key*> snapshot;
        snapshot.reserve(prev.size());
        for (const auto& [key, parent] : prev) {
          (void)parent;
          snapshot.push_back(&key);
        }
        std::vector<LayerMap> partial(static_cast<size_t>(threads));
        std::vector<std::thread> pool;
        const size_t chunk = (snapshot.size() + threads - 1) / threads;
        for (int w = 0; w < threads; ++w) {
          pool.emplace_back([&, w] {
            const size_t lo = w * chunk;
            const size_t hi = std::min(snapshot.size(), lo + chunk);
            auto sink = emit(partial[w], nullptr, 0);
            for (size_t idx = lo; idx < hi; ++idx) extend_entry(ctx, *snapshot[idx], sink);
          });
        }
        for (auto& th : pool) th.join();
        for (auto& part : partial)
          for (const auto& [key, parent] : part)
            insert_or_min(next, key, parent.candidate, parent.z, &impl->stored,
                          options.max_states);
      }
    }

    Key full(static_cast<size_t>(t) + 1, (1u << m) - 1);
    impl->accepted = impl->layers[m].contains(full);
  }

  if (options.table_dump) {
    std::ostream& os = *options.table_dump;
    auto print_set = [&os](std::uint32_t mask, int base) {
      os << '{';
      bool first = true;
      for (int b = 0; b < 32; ++b)
        if (mask & (1u << b)) {
          if (!first) os << ',';
          os << (b + base);
          first = false;
        }
      os << '}';
    };
    for (int l = 1; l <= m; ++l) {
      std::vector<const Key*> keys;
      keys.reserve(impl->layers[l].size());
      for (const auto& [key, parent] : impl->layers[l]) {
        (void)parent;
        keys.push_back(&key);
      }
      std::sort(keys.begin(), keys.end(), [](const Key* a, const Key* b) { return *a < *b; });
      for (const Key* key : keys) {
        os << l << ' ';
        print_set((*key)[0], 0);
        for (int q = 0; q < t; ++q) {
          os << ' ';
          print_set((*key)[1 + q], 1);
        }
        os << " 1\n";
      }
    }
  }

  return WbmTable(std::move(impl));
}

std::vector<Vote> reconstruct_wbm(const ManipulationInstance& inst, const WbmTable& table) {
  const WbmTable::Impl& impl = table.impl();
  if (!impl.accepted) throw InputError("reconstruct_wbm: table was not accepted");
  const int m = impl.m;
  const int t = impl.t;
  const std::vector<CandidateId> rivals = inst.rivals();

  std::vector<std::vector<int>> positions(
      static_cast<size_t>(t), std::vector<int>(static_cast<size_t>(m) + 1, 0));
  // sigma[q]: which output ballot the table's slot q currently refers to;
  // merging permutes equal-weight slots as layers are walked back.
  std::vector<int> sigma(static_cast<size_t>(t));
  for (int q = 0; q < t; ++q) sigma[q] = q;

  Key key(static_cast<size_t>(t) + 1, (1u << m) - 1);
  for (int l = m; l >= 1; --l) {
    const auto it = impl.layers[l].find(key);
    if (it == impl.layers[l].end())
      throw InternalError("reconstruct_wbm: lost the trail at layer " + std::to_string(l));
    const Parent& parent = it->second;
    const int c = parent.candidate;
    for (int q = 0; q < t; ++q) positions[sigma[q]][c] = parent.z[q];
    key[0] &= ~(1u << c);
    for (int q = 0; q < t; ++q) key[1 + q] &= ~(1u << (parent.z[q] - 1));
    if (impl.merge) {
      std::vector<int> perm;
      canonicalize(key, impl.groups, &perm);
      std::vector<int> next_sigma(sigma.size());
      for (int q = 0; q < t; ++q) next_sigma[q] = sigma[perm[q]];
      sigma = std::move(next_sigma);
    }
  }
  for (std::uint32_t w : key)
    if (w != 0) throw InternalError("reconstruct_wbm: walk did not end at the empty entry");

  std::vector<Vote> votes;
  votes.reserve(static_cast<size_t>(t));
  for (int q = 0; q < t; ++q) {
    std::vector<int> full(static_cast<size_t>(inst.num_candidates()), 0);
    for (int i = 0; i < m; ++i) full[rivals[i].index] = positions[q][i];
    full[inst.distinguished().index] = m + 1;
    try {
      votes.push_back(Vote::from_positions(std::move(full)));
    } catch (const InputError&) {
      throw InternalError("reconstruct_wbm: rebuilt ballot is not a bijection");
    }
  }
  return votes;
}

SolveOutcome solve_wbm(const ManipulationInstance& inst, const WbmOptions& options) {
  SolveOutcome out;
  const int t = inst.num_manipulators();

  if (t == 0) {
    // Nobody left to vote: manipulable exactly when the base election is
    // already a unique win.
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

  const Capacities caps = capacities(inst);
  if (caps.infeasible) return out;

  WbmTable table = solve_wbm_table(inst, options);
  out.stats.states_stored = table.states_stored();
  if (!table.accepted()) return out;

  out.manipulable = true;
  out.coalition_votes = reconstruct_wbm(inst, table);
  if (options.paranoid) {
    std::string why;
    if (!verify_manipulation(inst, out.coalition_votes, &why))
      throw InternalError("solve_wbm: certificate fails verification: " + why);
  }
  return out;
}

}  // namespace borda
