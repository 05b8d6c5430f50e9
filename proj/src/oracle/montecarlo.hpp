#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "oracle/enumerate.hpp"

namespace urnflow::oracle {

struct RngSeed {
  std::uint64_t value = 0;
};

struct SimQuery {
  std::size_t urn = 0;
  std::size_t type = 0;
};

struct SimulationResult {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double frequency = 0.0;
  double std_error = 0.0;  // sqrt(f*(1-f)/trials)
};

// Trials are partitioned into fixed blocks of this many; block b runs on its
// own xoshiro256** stream whose state comes from SplitMix64 started at
// seed + (b+1) * 0x9e3779b97f4a7c15. Block-to-stream assignment never
// depends on scheduling, so aggregate counts are identical for any worker
// count.
inline constexpr std::uint64_t kTrialsPerBlock = 8192;

// Simulates the physical process: per trial every step draws its balls
// uniformly without replacement from the source's current counts, then one
// ball is drawn per query, in query order. urn_counts[urn][type] shares one
// type axis across urns. workers == 0 picks the hardware concurrency.
std::vector<SimulationResult> monte_carlo(
    const std::vector<std::vector<std::uint64_t>>& urn_counts,
    std::span<const IndexedStep> steps, std::span<const SimQuery> queries,
    std::uint64_t trials, RngSeed seed, unsigned workers = 0);

}  // namespace urnflow::oracle
