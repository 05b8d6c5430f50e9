#include "oracle/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "common/error.hpp"
#include "exact/combinatorics.hpp"

namespace urnflow::oracle {

using exact::BigInt;
using exact::BigRational;
using exact::binomial;

std::uint64_t IntegerUrn::total() const {
  std::uint64_t sum = 0;
  for (const auto& [t, c] : counts) sum += c;
  return sum;
}

std::uint64_t IntegerUrn::count(const TypeLabel& t) const {
  auto it = counts.find(t);
  return it == counts.end() ? 0 : it->second;
}

namespace {

// Visits every composition m with sum(m) == k and m[i] <= counts[i], in
// lexicographic order, passing the composition and the number of ways to
// pick it, prod C(counts[i], m[i]).
template <typename Visitor>
void for_each_composition(std::span<const std::uint64_t> counts, std::uint64_t k,
                          Visitor&& visit) {
  const std::size_t n = counts.size();
  std::vector<std::uint64_t> moved(n, 0);
  std::vector<std::uint64_t> suffix(n + 1, 0);  // capacity of positions i..n-1
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + counts[i];
  if (k > suffix[0]) return;

  std::vector<BigInt> ways(n + 1, BigInt(1));  // ways[i] = product over [0, i)
  std::function<void(std::size_t, std::uint64_t)> rec =
      [&](std::size_t i, std::uint64_t remaining) {
        if (i == n) {
          visit(std::span<const std::uint64_t>(moved), ways[n]);
          return;
        }
        const std::uint64_t lo =
            suffix[i + 1] >= remaining ? 0 : remaining - suffix[i + 1];
        const std::uint64_t hi = std::min(remaining, counts[i]);
        for (std::uint64_t m = lo; m <= hi; ++m) {
          moved[i] = m;
          ways[i + 1] = ways[i] * binomial(counts[i], m);
          rec(i + 1, remaining - m);
        }
        moved[i] = 0;
      };
  rec(0, k);
}

std::vector<TypeLabel> sorted_type_union(std::span<const IntegerUrn> urns) {
  std::set<TypeLabel> keys;
  for (const auto& urn : urns) {
    for (const auto& [t, c] : urn.counts) keys.insert(t);
  }
  return {keys.begin(), keys.end()};
}

std::vector<std::uint64_t> flatten(const IntegerUrn& urn,
                                   std::span<const TypeLabel> types) {
  std::vector<std::uint64_t> row;
  row.reserve(types.size());
  for (const auto& t : types) row.push_back(urn.count(t));
  return row;
}

}  // namespace

OutcomeTable outcome_table(const IntegerUrn& source, std::uint64_t k,
                           const IntegerUrn& destination) {
  const std::uint64_t m = source.total();
  if (k > m) {
    fail(ErrorCode::infeasible, "cannot draw " + std::to_string(k) +
                                    " balls from an urn holding " + std::to_string(m));
  }
  if (destination.total() + k == 0) {
    fail(ErrorCode::empty_draw, "destination stays empty; nothing to draw");
  }

  const std::vector<IntegerUrn> both{source, destination};
  const std::vector<TypeLabel> types = sorted_type_union(both);
  const std::vector<std::uint64_t> counts = flatten(source, types);
  const BigInt total_ways = binomial(m, k);
  const BigRational new_total(static_cast<unsigned long>(destination.total() + k));

  OutcomeTable table;
  for_each_composition(counts, k, [&](std::span<const std::uint64_t> moved, const BigInt& ways) {
    OutcomeRow row;
    row.weight = BigRational(ways, total_ways);
    for (std::size_t i = 0; i < types.size(); ++i) {
      if (moved[i] > 0) row.moved.emplace(types[i], moved[i]);
      const std::uint64_t held = destination.count(types[i]) + moved[i];
      if (held > 0) {
        row.draw_probability.emplace(
            types[i], BigRational(static_cast<unsigned long>(held)) / new_total);
      }
    }
    table.rows.push_back(std::move(row));
  });
  return table;
}

BigRational enumerate_single(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                             std::uint64_t d, std::uint64_t k) {
  if (k > a + b) {
    fail(ErrorCode::infeasible, "cannot draw " + std::to_string(k) +
                                    " balls from an urn holding " + std::to_string(a + b));
  }
  if (c + d + k == 0) {
    fail(ErrorCode::empty_draw, "destination stays empty; nothing to draw");
  }
  BigInt sum(0);
  for (std::uint64_t i = 0; i <= k; ++i) {
    sum += BigInt(static_cast<unsigned long>(c + i)) * binomial(a, i) * binomial(b, k - i);
  }
  return BigRational(sum, BigInt(static_cast<unsigned long>(c + d + k)) * binomial(a + b, k));
}

BigRational enumerate_multitype(std::span<const SourceDraw> sources,
                                const IntegerUrn& destination, const TypeLabel& t) {
  std::uint64_t moved_total = 0;
  for (const auto& s : sources) {
    if (s.count > s.urn.total()) {
      fail(ErrorCode::infeasible, "cannot draw " + std::to_string(s.count) +
                                      " balls from an urn holding " +
                                      std::to_string(s.urn.total()));
    }
    moved_total += s.count;
  }
  const std::uint64_t final_total = destination.total() + moved_total;
  if (final_total == 0) {
    fail(ErrorCode::empty_draw, "destination stays empty; nothing to draw");
  }

  const BigRational denom(static_cast<unsigned long>(final_total));
  BigRational result(0);

  // Depth-first product over per-source outcomes, tracking the joint weight
  // and how many balls of type t have been moved so far.
  std::function<void(std::size_t, BigRational, std::uint64_t)> rec =
      [&](std::size_t i, BigRational weight, std::uint64_t moved_t) {
        if (i == sources.size()) {
          const std::uint64_t held = destination.count(t) + moved_t;
          if (held > 0) {
            result += weight * (BigRational(static_cast<unsigned long>(held)) / denom);
          }
          return;
        }
        const IntegerUrn& urn = sources[i].urn;
        const std::vector<TypeLabel> types = sorted_type_union({&urn, 1});
        const std::vector<std::uint64_t> counts = flatten(urn, types);
        const BigInt total_ways = binomial(urn.total(), sources[i].count);
        const auto t_pos = std::find(types.begin(), types.end(), t);
        const std::size_t t_idx = static_cast<std::size_t>(t_pos - types.begin());
        for_each_composition(counts, sources[i].count,
                             [&](std::span<const std::uint64_t> moved, const BigInt& ways) {
                               const std::uint64_t mt =
                                   t_idx < moved.size() ? moved[t_idx] : 0;
                               rec(i + 1, weight * BigRational(ways, total_ways),
                                   moved_t + mt);
                             });
      };
  rec(0, BigRational(1), 0);
  return result;
}

std::vector<BigRational> enumerate_chain(std::span<const IntegerUrn> urns,
                                         std::span<const std::uint64_t> moves,
                                         const TypeLabel& t) {
  if (moves.empty()) return {};
  if (urns.size() < moves.size() + 1) {
    fail(ErrorCode::bad_argument, "enumerate_chain: " + std::to_string(moves.size()) +
                                      " moves need " + std::to_string(moves.size() + 1) +
                                      " urns, got " + std::to_string(urns.size()));
  }
  const std::vector<TypeLabel> types = sorted_type_union(urns);
  const auto t_pos = std::find(types.begin(), types.end(), t);
  const std::size_t t_idx = static_cast<std::size_t>(t_pos - types.begin());

  // Distribution over the composition of the urn currently being drawn from.
  std::map<std::vector<std::uint64_t>, BigRational> dist;
  dist.emplace(flatten(urns[0], types), BigRational(1));
  std::uint64_t current_total = urns[0].total();

  std::vector<BigRational> out;
  out.reserve(moves.size());
  for (std::size_t m = 0; m < moves.size(); ++m) {
    const std::uint64_t k = moves[m];
    if (k > current_total) {
      fail(ErrorCode::infeasible, "enumerate_chain: move " + std::to_string(m) +
                                      " takes " + std::to_string(k) +
                                      " balls but the urn holds " +
                                      std::to_string(current_total));
    }
    const std::vector<std::uint64_t> base = flatten(urns[m + 1], types);
    const std::uint64_t next_total = urns[m + 1].total() + k;
    if (next_total == 0) {
      fail(ErrorCode::empty_draw, "enumerate_chain: urn " + std::to_string(m + 1) +
                                      " is empty after its transfer");
    }
    const BigInt total_ways = binomial(current_total, k);

    std::map<std::vector<std::uint64_t>, BigRational> next;
    for (const auto& [comp, weight] : dist) {
      for_each_composition(comp, k, [&](std::span<const std::uint64_t> moved, const BigInt& ways) {
        std::vector<std::uint64_t> child = base;
        for (std::size_t i = 0; i < child.size(); ++i) child[i] += moved[i];
        auto [it, inserted] = next.emplace(std::move(child), BigRational(0));
        it->second += weight * BigRational(ways, total_ways);
      });
    }
    dist = std::move(next);
    current_total = next_total;

    BigRational p(0);
    if (t_idx < types.size()) {
      const BigRational denom(static_cast<unsigned long>(next_total));
      for (const auto& [comp, weight] : dist) {
        if (comp[t_idx] > 0) {
          p += weight * (BigRational(static_cast<unsigned long>(comp[t_idx])) / denom);
        }
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

JointDistribution::JointDistribution(std::vector<std::vector<std::uint64_t>> urn_counts)
    : n_urns_(urn_counts.size()),
      n_types_(n_urns_ ? urn_counts.front().size() : 0) {
  std::vector<std::uint64_t> flat;
  flat.reserve(n_urns_ * n_types_);
  totals_.reserve(n_urns_);
  for (const auto& row : urn_counts) {
    if (row.size() != n_types_) {
      fail(ErrorCode::bad_argument, "urn rows must share one type axis");
    }
    totals_.push_back(std::accumulate(row.begin(), row.end(), std::uint64_t{0}));
    flat.insert(flat.end(), row.begin(), row.end());
  }
  states_.emplace(std::move(flat), BigRational(1));
}

void JointDistribution::apply(const IndexedStep& step, std::uint64_t outcome_cap) {
  if (step.source >= n_urns_ || step.destination >= n_urns_ ||
      step.source == step.destination) {
    fail(ErrorCode::bad_argument, "invalid step indices");
  }
  const std::uint64_t k = step.count;
  if (k > totals_[step.source]) {
    fail(ErrorCode::infeasible, "cannot move " + std::to_string(k) +
                                    " balls from an urn holding " +
                                    std::to_string(totals_[step.source]));
  }
  const BigInt total_ways = binomial(totals_[step.source], k);
  const std::size_t src_off = step.source * n_types_;
  const std::size_t dst_off = step.destination * n_types_;

  std::map<std::vector<std::uint64_t>, BigRational> next;
  std::uint64_t expanded_here = 0;
  for (const auto& [state, weight] : states_) {
    const std::span<const std::uint64_t> src_counts(state.data() + src_off, n_types_);
    for_each_composition(src_counts, k, [&](std::span<const std::uint64_t> moved, const BigInt& ways) {
      if (++expanded_here; expanded_ + expanded_here > outcome_cap) {
        fail(ErrorCode::cap_exceeded,
             "enumeration exceeded the outcome cap of " + std::to_string(outcome_cap));
      }
      std::vector<std::uint64_t> child = state;
      for (std::size_t i = 0; i < n_types_; ++i) {
        child[src_off + i] -= moved[i];
        child[dst_off + i] += moved[i];
      }
      auto [it, inserted] = next.emplace(std::move(child), BigRational(0));
      it->second += weight * BigRational(ways, total_ways);
    });
  }
  states_ = std::move(next);
  totals_[step.source] -= k;
  totals_[step.destination] += k;
  expanded_ += expanded_here;
  per_step_.push_back(expanded_here);
}

BigRational JointDistribution::draw_probability(std::size_t urn, std::size_t type) const {
  if (urn >= n_urns_ || type >= n_types_) {
    fail(ErrorCode::bad_argument, "invalid urn or type index");
  }
  if (totals_[urn] == 0) {
    fail(ErrorCode::empty_draw, "cannot draw from an empty urn");
  }
  const BigRational denom(static_cast<unsigned long>(totals_[urn]));
  BigRational p(0);
  const std::size_t off = urn * n_types_;
  for (const auto& [state, weight] : states_) {
    if (state[off + type] > 0) {
      p += weight * (BigRational(static_cast<unsigned long>(state[off + type])) / denom);
    }
  }
  return p;
}

std::uint64_t estimate_outcomes(std::span<const std::uint64_t> urn_totals,
                                std::span<const IndexedStep> steps,
                                std::size_t n_types) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  if (n_types == 0) return 0;
  const BigInt cap_max(static_cast<unsigned long>(kMax));

  // compositions of k over s parts: C(k+s-1, s-1)
  auto comp_bound = [&](std::uint64_t k) { return binomial(k + n_types - 1, n_types - 1); };

  std::vector<std::uint64_t> totals(urn_totals.begin(), urn_totals.end());
  BigInt states_bound(1);
  BigInt expanded(0);
  for (const auto& step : steps) {
    const BigInt children = comp_bound(step.count);
    expanded += states_bound * children;
    if (expanded > cap_max) return kMax;
    totals[step.source] -= std::min(totals[step.source], step.count);
    totals[step.destination] += step.count;
    // states after the step cannot exceed parents * children, nor the joint
    // composition space of all urns at their (deterministic) new totals
    BigInt reachable(1);
    for (std::uint64_t total : totals) {
      reachable *= comp_bound(total);
      if (reachable > cap_max) break;
    }
    states_bound = std::min(states_bound * children, reachable);
  }
  return static_cast<std::uint64_t>(mpz_get_ui(expanded.raw().get_mpz_t()));
}

}  // namespace urnflow::oracle
