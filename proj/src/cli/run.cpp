#include "cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>

#include "common/error.hpp"
#include "engine/engine.hpp"
#include "oracle/montecarlo.hpp"

namespace urnflow::cli {

using exact::BigRational;

namespace {

// Destination snapshot just before the last transfer into an urn.
struct LastIncoming {
  engine::UrnComposition before;
  std::uint64_t k = 0;
};

engine::SchemeState replay(const SchemeConfig& config,
                           std::map<std::string, LastIncoming>* last_incoming) {
  engine::SchemeState state = config.initial_state();
  for (const auto& step : config.steps) {
    if (last_incoming && step.count > 0) {
      (*last_incoming)[step.destination] = {state.at(step.destination), step.count};
    }
    state = engine::transfer(state, step);
  }
  return state;
}

std::vector<BigRational> engine_values(const SchemeConfig& config,
                                       const engine::SchemeState& final_state) {
  std::vector<BigRational> values;
  values.reserve(config.queries.size());
  for (const auto& q : config.queries) {
    values.push_back(engine::prob_type(final_state.at(q.urn), q.type));
  }
  return values;
}

std::string format_double(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

double elapsed_ns(const std::chrono::steady_clock::time_point& t0,
                  const std::chrono::steady_clock::time_point& t1) {
  return std::chrono::duration<double, std::nano>(t1 - t0).count();
}

// Per-call nanoseconds, repeating the call enough times to outlast timer
// jitter.
template <typename Fn>
double time_per_call_ns(Fn&& fn) {
  fn();  // warm caches
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  const double once = std::max(elapsed_ns(t0, t1), 1.0);
  const auto reps = static_cast<std::uint64_t>(
      std::clamp(4e6 / once, 1.0, 20000.0));
  t0 = std::chrono::steady_clock::now();
  for (std::uint64_t i = 0; i < reps; ++i) fn();
  t1 = std::chrono::steady_clock::now();
  return elapsed_ns(t0, t1) / static_cast<double>(reps);
}

}  // namespace

const std::string& Report::cell(std::size_t row, const std::string& column) const {
  static const std::string empty;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    if (columns[c] == column && row < rows.size() && c < rows[row].size()) {
      return rows[row][c];
    }
  }
  return empty;
}

Report run_compute(const SchemeConfig& config, unsigned digits) {
  std::map<std::string, LastIncoming> last_incoming;
  const engine::SchemeState final_state = replay(config, &last_incoming);

  Report report;
  report.columns = {"urn", "type", "exact", "decimal", "alpha", "beta", "method"};
  for (const auto& q : config.queries) {
    const BigRational exact = engine::prob_type(final_state.at(q.urn), q.type);
    std::string alpha, beta;
    if (auto it = last_incoming.find(q.urn); it != last_incoming.end()) {
      const engine::BoundsInterval interval =
          engine::bounds(it->second.before, q.type, it->second.k);
      alpha = interval.alpha.str();
      beta = interval.beta.str();
    }
    report.rows.push_back({q.urn, q.type, exact.str(), exact.decimal(digits),
                           alpha, beta, "closed-form"});
  }
  return report;
}

Report build_verify_report(const SchemeConfig& config,
                           std::span<const BigRational> engine_vals,
                           std::span<const BigRational> oracle_vals) {
  Report report;
  report.columns = {"urn", "type", "engine", "oracle", "status"};
  for (std::size_t i = 0; i < config.queries.size(); ++i) {
    const bool match = engine_vals[i] == oracle_vals[i];
    if (!match) report.ok = false;
    report.rows.push_back({config.queries[i].urn, config.queries[i].type,
                           engine_vals[i].str(), oracle_vals[i].str(),
                           match ? "EXACT-MATCH" : "MISMATCH"});
  }
  return report;
}

Report run_verify(const SchemeConfig& config, std::uint64_t outcome_cap) {
  const std::vector<oracle::IntegerUrn> urns = config.integer_urns();
  const std::vector<oracle::IndexedStep> steps = config.indexed_steps();

  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<std::uint64_t> totals;
  rows.reserve(urns.size());
  for (const auto& urn : urns) {
    std::vector<std::uint64_t> row;
    row.reserve(config.types.size());
    for (const auto& t : config.types) row.push_back(urn.count(t));
    totals.push_back(urn.total());
    rows.push_back(std::move(row));
  }

  const std::uint64_t estimate = oracle::estimate_outcomes(totals, steps, config.types.size());
  if (estimate > outcome_cap) {
    fail(ErrorCode::cap_exceeded,
         "instance needs an estimated " + std::to_string(estimate) +
             " enumeration outcomes, above the cap of " + std::to_string(outcome_cap) +
             " (raise the cap to force it)");
  }

  oracle::JointDistribution dist(rows);
  for (const auto& step : steps) dist.apply(step, outcome_cap);

  std::vector<BigRational> oracle_vals;
  oracle_vals.reserve(config.queries.size());
  for (const auto& q : config.queries) {
    oracle_vals.push_back(dist.draw_probability(config.urn_index(q.urn),
                                                config.type_index(q.type)));
  }
  const engine::SchemeState final_state = replay(config, nullptr);
  return build_verify_report(config, engine_values(config, final_state), oracle_vals);
}

Report run_simulate(const SchemeConfig& config, const SimulateOptions& options) {
  const std::vector<oracle::IntegerUrn> urns = config.integer_urns();
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(urns.size());
  for (const auto& urn : urns) {
    std::vector<std::uint64_t> row;
    row.reserve(config.types.size());
    for (const auto& t : config.types) row.push_back(urn.count(t));
    rows.push_back(std::move(row));
  }
  std::vector<oracle::SimQuery> queries;
  queries.reserve(config.queries.size());
  for (const auto& q : config.queries) {
    queries.push_back({config.urn_index(q.urn), config.type_index(q.type)});
  }

  const std::vector<oracle::SimulationResult> sim = oracle::monte_carlo(
      rows, config.indexed_steps(), queries, options.trials,
      oracle::RngSeed{options.seed}, options.workers);

  const engine::SchemeState final_state = replay(config, nullptr);
  const std::vector<BigRational> exact_vals = engine_values(config, final_state);

  Report report;
  report.columns = {"urn",       "type",      "exact", "decimal", "frequency",
                    "std_error", "z",         "hits"};
  for (std::size_t i = 0; i < config.queries.size(); ++i) {
    const double p = exact_vals[i].to_double();
    const double z = sim[i].std_error > 0.0
                         ? (sim[i].frequency - p) / sim[i].std_error
                         : 0.0;
    report.rows.push_back({config.queries[i].urn, config.queries[i].type,
                           exact_vals[i].str(),
                           exact_vals[i].decimal(options.digits),
                           format_double(sim[i].frequency, "%.6f"),
                           format_double(sim[i].std_error, "%.3g"),
                           format_double(z, "%.2f"),
                           std::to_string(sim[i].hits)});
  }
  return report;
}

Report run_bench(const SchemeConfig& config, const BenchOptions& options) {
  if (config.steps.empty()) {
    fail(ErrorCode::bad_argument, "bench needs a scheme with at least one step");
  }
  config.integer_urns();  // reject non-integer urns up front

  Report report;
  report.columns = {"k", "closed_ns", "enum_ns", "outcomes", "outcomes_by_step", "note"};

  for (const std::uint64_t k : options.sweep) {
    SchemeConfig variant = config;
    variant.steps.front().count = k;

    std::vector<std::string> row{std::to_string(k), "-", "-", "-", "-", ""};

    // Re-check feasibility of the whole step list with the substituted k.
    try {
      std::map<std::string, std::uint64_t> totals;
      for (const auto& urn : variant.urns) totals[urn.id] = urn.total;
      for (std::size_t i = 0; i < variant.steps.size(); ++i) {
        const auto& s = variant.steps[i];
        if (s.count > totals[s.source]) {
          fail(ErrorCode::infeasible, "step " + std::to_string(i + 1) + " infeasible");
        }
        totals[s.source] -= s.count;
        totals[s.destination] += s.count;
      }
    } catch (const Error&) {
      row[5] = "infeasible";
      report.rows.push_back(std::move(row));
      continue;
    }

    const double closed_ns = time_per_call_ns([&] {
      const engine::SchemeState state = replay(variant, nullptr);
      engine_values(variant, state);
    });
    row[1] = format_double(closed_ns, "%.0f");

    const std::vector<oracle::IntegerUrn> urns = variant.integer_urns();
    std::vector<std::vector<std::uint64_t>> counts;
    std::vector<std::uint64_t> totals;
    for (const auto& urn : urns) {
      std::vector<std::uint64_t> r;
      for (const auto& t : variant.types) r.push_back(urn.count(t));
      totals.push_back(urn.total());
      counts.push_back(std::move(r));
    }
    const std::vector<oracle::IndexedStep> steps = variant.indexed_steps();
    const std::uint64_t estimate =
        oracle::estimate_outcomes(totals, steps, variant.types.size());
    if (estimate > options.outcome_cap) {
      row[5] = "skipped (cap)";
      report.rows.push_back(std::move(row));
      continue;
    }

    const auto t0 = std::chrono::steady_clock::now();
    oracle::JointDistribution dist(counts);
    for (const auto& step : steps) dist.apply(step, options.outcome_cap);
    for (const auto& q : variant.queries) {
      dist.draw_probability(variant.urn_index(q.urn), variant.type_index(q.type));
    }
    const auto t1 = std::chrono::steady_clock::now();

    row[2] = format_double(elapsed_ns(t0, t1), "%.0f");
    row[3] = std::to_string(dist.expanded_outcomes());
    std::string by_step;
    for (const std::uint64_t n : dist.expansions_by_step()) {
      if (!by_step.empty()) by_step += ";";
      by_step += std::to_string(n);
    }
    row[4] = by_step;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace urnflow::cli
