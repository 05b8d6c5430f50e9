#include "oracle/montecarlo.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "common/error.hpp"

namespace urnflow::oracle {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += kGolden);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// xoshiro256** (Blackman & Vigna), seeded from a SplitMix64 sequence.
class Xoshiro256 {
 public:
  explicit Xoshiro256(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Unbiased uniform draw from [0, n) (Lemire's multiply-shift with rejection).
std::uint64_t bounded(Xoshiro256& rng, std::uint64_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(rng.next()) * n;
  auto lo = static_cast<std::uint64_t>(m);
  if (lo < n) {
    const std::uint64_t threshold = (0 - n) % n;
    while (lo < threshold) {
      m = static_cast<unsigned __int128>(rng.next()) * n;
      lo = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::uint64_t>(m >> 64);
}

// Removes one uniformly chosen ball from the counts row and returns its type.
std::size_t draw_one(Xoshiro256& rng, std::uint64_t* counts, std::size_t n_types,
                     std::uint64_t total) {
  std::uint64_t u = bounded(rng, total);
  for (std::size_t t = 0;; ++t) {
    if (t + 1 == n_types || u < counts[t]) {
      --counts[t];
      return t;
    }
    u -= counts[t];
  }
}

// Moves k uniformly chosen balls from src to dst. When more than half the
// urn moves, the stay-set is sampled instead; the set left behind by a
// uniform draw is itself a uniform draw, so the two paths are the same
// process with fewer RNG calls.
void move_balls(Xoshiro256& rng, std::uint64_t* src, std::uint64_t* dst,
                std::size_t n_types, std::uint64_t& src_total,
                std::uint64_t& dst_total, std::uint64_t k,
                std::vector<std::uint64_t>& scratch) {
  if (k == 0) return;
  if (2 * k <= src_total) {
    for (std::uint64_t j = 0; j < k; ++j) {
      const std::size_t t = draw_one(rng, src, n_types, src_total - j);
      ++dst[t];
    }
  } else {
    const std::uint64_t stay = src_total - k;
    scratch.assign(n_types, 0);
    for (std::uint64_t j = 0; j < stay; ++j) {
      const std::size_t t = draw_one(rng, src, n_types, src_total - j);
      ++scratch[t];
    }
    for (std::size_t t = 0; t < n_types; ++t) {
      dst[t] += src[t];
      src[t] = scratch[t];
    }
  }
  src_total -= k;
  dst_total += k;
}

}  // namespace

std::vector<SimulationResult> monte_carlo(
    const std::vector<std::vector<std::uint64_t>>& urn_counts,
    std::span<const IndexedStep> steps, std::span<const SimQuery> queries,
    std::uint64_t trials, RngSeed seed, unsigned workers) {
  if (trials == 0) fail(ErrorCode::bad_argument, "trials must be at least 1");
  const std::size_t n_urns = urn_counts.size();
  const std::size_t n_types = n_urns ? urn_counts.front().size() : 0;

  std::vector<std::uint64_t> base;
  std::vector<std::uint64_t> base_totals(n_urns, 0);
  for (std::size_t u = 0; u < n_urns; ++u) {
    if (urn_counts[u].size() != n_types) {
      fail(ErrorCode::bad_argument, "urn rows must share one type axis");
    }
    base.insert(base.end(), urn_counts[u].begin(), urn_counts[u].end());
    base_totals[u] = std::accumulate(urn_counts[u].begin(), urn_counts[u].end(),
                                     std::uint64_t{0});
  }

  // Totals evolve deterministically; validate feasibility and final draws
  // once instead of per trial.
  std::vector<std::uint64_t> totals = base_totals;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    if (s.source >= n_urns || s.destination >= n_urns || s.source == s.destination) {
      fail(ErrorCode::bad_argument, "invalid step indices");
    }
    if (s.count > totals[s.source]) {
      fail(ErrorCode::infeasible, "step " + std::to_string(i + 1) + " moves " +
                                      std::to_string(s.count) + " balls but only " +
                                      std::to_string(totals[s.source]) + " are available");
    }
    totals[s.source] -= s.count;
    totals[s.destination] += s.count;
  }
  for (const auto& q : queries) {
    if (q.urn >= n_urns || q.type >= n_types) {
      fail(ErrorCode::bad_argument, "invalid query indices");
    }
    if (totals[q.urn] == 0) {
      fail(ErrorCode::empty_draw, "cannot draw from an empty urn");
    }
  }

  const std::uint64_t n_blocks = (trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
  std::vector<std::vector<std::uint64_t>> block_hits(
      n_blocks, std::vector<std::uint64_t>(queries.size(), 0));

  auto run_block = [&](std::uint64_t b) {
    Xoshiro256 rng(seed.value + (b + 1) * kGolden);
    const std::uint64_t first = b * kTrialsPerBlock;
    const std::uint64_t last = std::min(first + kTrialsPerBlock, trials);
    std::vector<std::uint64_t> work(base.size());
    std::vector<std::uint64_t> work_totals(n_urns);
    std::vector<std::uint64_t> scratch;
    auto& hits = block_hits[b];
    for (std::uint64_t trial = first; trial < last; ++trial) {
      work = base;
      work_totals = base_totals;
      for (const auto& s : steps) {
        move_balls(rng, work.data() + s.source * n_types,
                   work.data() + s.destination * n_types, n_types,
                   work_totals[s.source], work_totals[s.destination], s.count,
                   scratch);
      }
      for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        std::uint64_t* row = work.data() + queries[qi].urn * n_types;
        const std::size_t drawn = draw_one(rng, row, n_types, work_totals[queries[qi].urn]);
        ++row[drawn];  // put the ball back; queries must not disturb each other
        if (drawn == queries[qi].type) ++hits[qi];
      }
    }
  };

  unsigned n_workers = workers ? workers : std::thread::hardware_concurrency();
  if (n_workers == 0) n_workers = 1;
  n_workers = static_cast<unsigned>(
      std::min<std::uint64_t>(n_workers, n_blocks));

  if (n_workers <= 1) {
    for (std::uint64_t b = 0; b < n_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next_block{0};
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned w = 0; w < n_workers; ++w) {
      pool.emplace_back([&] {
        for (std::uint64_t b = next_block.fetch_add(1); b < n_blocks;
             b = next_block.fetch_add(1)) {
          run_block(b);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  std::vector<SimulationResult> results(queries.size());
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    std::uint64_t hits = 0;
    for (std::uint64_t b = 0; b < n_blocks; ++b) hits += block_hits[b][qi];
    auto& r = results[qi];
    r.hits = hits;
    r.trials = trials;
    r.frequency = static_cast<double>(hits) / static_cast<double>(trials);
    r.std_error = std::sqrt(r.frequency * (1.0 - r.frequency) /
                            static_cast<double>(trials));
  }
  return results;
}

}  // namespace urnflow::oracle
