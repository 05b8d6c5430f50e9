#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "engine/state.hpp"
#include "exact/rational.hpp"

namespace urnflow::oracle {

using engine::TypeLabel;

// Physical ball counts, the integer counterpart of an expected composition.
struct IntegerUrn {
  std::map<TypeLabel, std::uint64_t> counts;

  std::uint64_t total() const;
  std::uint64_t count(const TypeLabel& t) const;
};

// One enumerated draw outcome: the multiset of balls moved, its multivariate
// hypergeometric weight, and the conditional draw probability of each type
// from the destination afterwards.
struct OutcomeRow {
  std::map<TypeLabel, std::uint64_t> moved;
  exact::BigRational weight;
  std::map<TypeLabel, exact::BigRational> draw_probability;
};

// All outcomes of drawing k balls from `source` into `destination`, in
// lexicographic order of the moved composition. Weights sum to exactly 1.
struct OutcomeTable {
  std::vector<OutcomeRow> rows;
};

OutcomeTable outcome_table(const IntegerUrn& source, std::uint64_t k,
                           const IntegerUrn& destination);

// Brute-force reference for the single two-type transfer, as the literal sum
//   (1 / ((c+d+k) * C(a+b,k))) * sum over i of (c+i) * C(a,i) * C(b,k-i).
// Requires k <= a+b and c+d+k >= 1.
exact::BigRational enumerate_single(std::uint64_t a, std::uint64_t b,
                                    std::uint64_t c, std::uint64_t d,
                                    std::uint64_t k);

struct SourceDraw {
  IntegerUrn urn;
  std::uint64_t count = 0;
};

// Joint enumeration over independent per-source draws into one destination;
// expectation of the conditional draw probability of t.
exact::BigRational enumerate_multitype(std::span<const SourceDraw> sources,
                                       const IntegerUrn& destination,
                                       const TypeLabel& t);

// Exact per-step draw probabilities along a chain of urns, by advancing the
// full distribution over the current urn's composition. States reached along
// different branch histories merge, so small instances stay instant even
// though the branch count grows combinatorially.
std::vector<exact::BigRational> enumerate_chain(std::span<const IntegerUrn> urns,
                                                std::span<const std::uint64_t> moves,
                                                const TypeLabel& t);

// A transfer step with urns and types resolved to dense indices.
struct IndexedStep {
  std::size_t source = 0;
  std::size_t destination = 0;
  std::uint64_t count = 0;
};

// Exact distribution over the joint integer composition of every urn in a
// scheme, advanced one transfer at a time. This is the fully general oracle:
// any step order, any topology. `expanded_outcomes` counts every child
// outcome generated so far; apply() aborts once it would pass the cap.
class JointDistribution {
 public:
  // urn_counts[urn][type]; the type axis is shared by all urns.
  explicit JointDistribution(std::vector<std::vector<std::uint64_t>> urn_counts);

  void apply(const IndexedStep& step, std::uint64_t outcome_cap);

  // Expected probability that one draw from `urn` yields `type`.
  exact::BigRational draw_probability(std::size_t urn, std::size_t type) const;

  std::uint64_t expanded_outcomes() const { return expanded_; }
  std::span<const std::uint64_t> expansions_by_step() const { return per_step_; }
  std::size_t state_count() const { return states_.size(); }
  std::uint64_t urn_total(std::size_t urn) const { return totals_[urn]; }

 private:
  std::size_t n_urns_;
  std::size_t n_types_;
  std::vector<std::uint64_t> totals_;  // deterministic given the step list
  std::map<std::vector<std::uint64_t>, exact::BigRational> states_;
  std::uint64_t expanded_ = 0;
  std::vector<std::uint64_t> per_step_;
};

// Upper bound on the outcomes a scheme's enumeration can expand, for cap
// checks before any work happens. Saturates at 2^64-1.
std::uint64_t estimate_outcomes(std::span<const std::uint64_t> urn_totals,
                                std::span<const IndexedStep> steps,
                                std::size_t n_types);

}  // namespace urnflow::oracle
