#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "exact/rational.hpp"

namespace urnflow::engine {

using TypeLabel = std::string;

// An urn's ball count plus the exact expected fraction of each type.
// Fractions sum to 1 whenever total > 0; an empty urn carries no entries
// and entries that would be 0 are dropped, so equal states compare equal.
// Integer-count urns are the special case where every fraction is
// count/total.
struct UrnComposition {
  std::uint64_t total = 0;
  std::map<TypeLabel, exact::BigRational> fractions;

  static UrnComposition from_counts(const std::map<TypeLabel, std::uint64_t>& counts);

  // Expected fraction of t; 0 when absent.
  exact::BigRational fraction(const TypeLabel& t) const;

  bool operator==(const UrnComposition&) const = default;
};

// One transfer: `count` balls drawn uniformly without replacement from
// `source` and added to `destination`.
struct TransferStep {
  std::string source;
  std::string destination;
  std::uint64_t count = 0;

  bool operator==(const TransferStep&) const = default;
};

// Extreme post-transfer draw probabilities for one type: alpha if none of
// the moved balls are of that type, beta if all of them are. The realized
// probability is always alpha + (beta - alpha) * theta.
struct BoundsInterval {
  exact::BigRational alpha;
  exact::BigRational beta;
};

// Immutable snapshot of every urn, keyed by urn identifier. Operations
// return fresh snapshots.
using SchemeState = std::map<std::string, UrnComposition>;

}  // namespace urnflow::engine
