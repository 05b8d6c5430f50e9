#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cli/config.hpp"
#include "exact/rational.hpp"

namespace urnflow::cli {

// A small string table: one row per result, shared column set. This is what
// crosses the C ABI, so everything is already rendered.
struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  bool ok = true;

  // Cell lookup by column name; empty string when absent.
  const std::string& cell(std::size_t row, const std::string& column) const;
};

inline constexpr std::uint64_t kDefaultOutcomeCap = 1'000'000;
inline constexpr unsigned kDefaultDigits = 6;

// Closed-form answers for every query: exact rational, correctly rounded
// decimal, and the [alpha, beta] interval of the last transfer into the
// queried urn when there is one.
Report run_compute(const SchemeConfig& config, unsigned digits = kDefaultDigits);

// Engine versus brute-force enumeration, exact comparison per query.
// ok is false when any row mismatches. Errors with cap_exceeded (reporting
// the outcome estimate) when the instance is too big to enumerate.
Report run_verify(const SchemeConfig& config,
                  std::uint64_t outcome_cap = kDefaultOutcomeCap);

// Row assembly for verify; split out so the mismatch path can be exercised
// against synthetic value vectors.
Report build_verify_report(const SchemeConfig& config,
                           std::span<const exact::BigRational> engine_values,
                           std::span<const exact::BigRational> oracle_values);

struct SimulateOptions {
  std::uint64_t trials = 100'000;
  std::uint64_t seed = 0;
  unsigned digits = kDefaultDigits;
  unsigned workers = 0;  // 0 = hardware concurrency
};

// Seed-deterministic Monte Carlo against the closed form, with z-scores.
Report run_simulate(const SchemeConfig& config, const SimulateOptions& options);

struct BenchOptions {
  std::vector<std::uint64_t> sweep;  // values substituted for steps[0].k
  std::uint64_t outcome_cap = kDefaultOutcomeCap;
};

// Times the closed form against enumeration for each swept k. Rows where
// the sweep value is infeasible or enumeration would pass the cap are kept
// and annotated instead of failing the whole run.
Report run_bench(const SchemeConfig& config, const BenchOptions& options);

}  // namespace urnflow::cli
