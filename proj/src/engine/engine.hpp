#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "engine/state.hpp"

namespace urnflow::engine {

// Single-ball transfer scheme: one ball moves from an urn holding a white
// and b black balls into an urn holding c white and d black. Returns the
// probability that a draw from the destination afterwards is white:
//   c/(c+d+1) + (a/(a+b)) * 1/(c+d+1)
// Requires a+b >= 1.
exact::BigRational scheme_a(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                            std::uint64_t d);

// Probability that one draw from `urn` yields type t. Errors on an empty urn.
exact::BigRational prob_type(const UrnComposition& urn, const TypeLabel& t);

// Moves step.count balls from source to destination. Per type, the
// destination fraction becomes (theta*k + N*p) / (N+k) where theta is the
// source fraction, N and p the old destination total and fraction. The
// source keeps its fraction vector (removal is exchangeable) and loses k
// from its total.
SchemeState transfer(const SchemeState& state, const TransferStep& step);

// The [alpha, beta] interval for a k-ball transfer into `destination`,
// evaluated per type with the expected count c = N*p. Requires k >= 1.
BoundsInterval bounds(const UrnComposition& destination, const TypeLabel& t,
                      std::uint64_t k);

// Several transfers into one common destination, all draws taken from the
// sources' current compositions. Per type the destination fraction becomes
//   (theta_1*k_1 + ... + theta_n*k_n + N*p) / (N + k_1 + ... + k_n),
// which equals sequential transfer composition in any order.
SchemeState multi_transfer(const SchemeState& state,
                           std::span<const TransferStep> steps);

// Chain of urns urns[0], urns[1], ...: moves[m] balls go from urn m to urn
// m+1, in order. Returns the draw probability of t at urns[1..] after their
// incoming transfer, via the affine recurrence
//   P_m = (c_m + k_{m-1} * P_{m-1}) / (N_m + k_{m-1}),
// c_m and N_m taken from urn m's original composition.
std::vector<exact::BigRational> chain_run(const std::vector<UrnComposition>& urns,
                                          std::span<const std::uint64_t> moves,
                                          const TypeLabel& t);

}  // namespace urnflow::engine
