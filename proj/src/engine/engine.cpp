#include "engine/engine.hpp"

#include <set>
#include <string>

#include "common/error.hpp"

namespace urnflow::engine {

using exact::BigInt;
using exact::BigRational;

UrnComposition UrnComposition::from_counts(const std::map<TypeLabel, std::uint64_t>& counts) {
  UrnComposition urn;
  for (const auto& [t, c] : counts) urn.total += c;
  if (urn.total == 0) return urn;
  for (const auto& [t, c] : counts) {
    if (c > 0) {
      urn.fractions.emplace(t, BigRational(BigInt(static_cast<unsigned long>(c)),
                                           BigInt(static_cast<unsigned long>(urn.total))));
    }
  }
  return urn;
}

exact::BigRational UrnComposition::fraction(const TypeLabel& t) const {
  auto it = fractions.find(t);
  return it == fractions.end() ? BigRational(0) : it->second;
}

BigRational scheme_a(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  if (a + b == 0) {
    fail(ErrorCode::bad_argument, "scheme_a: no ball to draw from the source urn");
  }
  const BigInt dest_total(static_cast<unsigned long>(c + d + 1));
  return BigRational(BigInt(static_cast<unsigned long>(c)), dest_total) +
         BigRational(BigInt(static_cast<unsigned long>(a)), BigInt(static_cast<unsigned long>(a + b))) *
             BigRational(BigInt(1), dest_total);
}

BigRational prob_type(const UrnComposition& urn, const TypeLabel& t) {
  if (urn.total == 0) {
    fail(ErrorCode::empty_draw, "cannot draw from an empty urn");
  }
  return urn.fraction(t);
}

namespace {

const UrnComposition& urn_at(const SchemeState& state, const std::string& id) {
  auto it = state.find(id);
  if (it == state.end()) {
    fail(ErrorCode::bad_argument, "unknown urn '" + id + "'");
  }
  return it->second;
}

std::set<TypeLabel> type_union(const UrnComposition& a, const UrnComposition& b) {
  std::set<TypeLabel> keys;
  for (const auto& [t, f] : a.fractions) keys.insert(t);
  for (const auto& [t, f] : b.fractions) keys.insert(t);
  return keys;
}

void remove_balls(UrnComposition& urn, std::uint64_t k) {
  urn.total -= k;
  if (urn.total == 0) urn.fractions.clear();
}

}  // namespace

SchemeState transfer(const SchemeState& state, const TransferStep& step) {
  if (step.source == step.destination) {
    fail(ErrorCode::bad_argument, "transfer from an urn to itself");
  }
  const UrnComposition& src = urn_at(state, step.source);
  const UrnComposition& dst = urn_at(state, step.destination);
  if (step.count > src.total) {
    fail(ErrorCode::infeasible,
         "cannot move " + std::to_string(step.count) + " balls from urn '" +
             step.source + "' holding " + std::to_string(src.total));
  }

  SchemeState next = state;
  if (step.count == 0) return next;

  const std::uint64_t k = step.count;
  const BigRational denom(BigInt(static_cast<unsigned long>(dst.total + k)));
  const BigRational moved(static_cast<unsigned long>(k));
  const BigRational old_total(static_cast<unsigned long>(dst.total));

  UrnComposition fresh;
  fresh.total = dst.total + k;
  for (const auto& t : type_union(src, dst)) {
    BigRational f = (src.fraction(t) * moved + old_total * dst.fraction(t)) / denom;
    if (!f.is_zero()) fresh.fractions.emplace(t, std::move(f));
  }
  next[step.destination] = std::move(fresh);
  remove_balls(next[step.source], k);
  return next;
}

BoundsInterval bounds(const UrnComposition& destination, const TypeLabel& t,
                      std::uint64_t k) {
  if (k == 0) {
    fail(ErrorCode::bad_argument, "bounds: k must be at least 1");
  }
  const BigRational denom(BigInt(static_cast<unsigned long>(destination.total + k)));
  BoundsInterval interval;
  interval.alpha = BigRational(static_cast<unsigned long>(destination.total)) *
                   destination.fraction(t) / denom;
  interval.beta = interval.alpha + BigRational(static_cast<unsigned long>(k)) / denom;
  return interval;
}

SchemeState multi_transfer(const SchemeState& state, std::span<const TransferStep> steps) {
  if (steps.empty()) return state;

  const std::string& dest_id = steps.front().destination;
  std::map<std::string, std::uint64_t> taken;
  std::uint64_t moved_total = 0;
  for (const auto& step : steps) {
    if (step.destination != dest_id) {
      fail(ErrorCode::bad_argument, "multi_transfer steps must share a destination");
    }
    if (step.source == dest_id) {
      fail(ErrorCode::bad_argument, "multi_transfer source equals the destination");
    }
    urn_at(state, step.source);
    taken[step.source] += step.count;
    moved_total += step.count;
  }
  for (const auto& [id, k] : taken) {
    if (k > state.at(id).total) {
      fail(ErrorCode::infeasible, "cannot move " + std::to_string(k) +
                                      " balls from urn '" + id + "' holding " +
                                      std::to_string(state.at(id).total));
    }
  }

  const UrnComposition& dst = urn_at(state, dest_id);
  SchemeState next = state;

  if (moved_total > 0) {
    std::set<TypeLabel> keys;
    for (const auto& [t, f] : dst.fractions) keys.insert(t);
    for (const auto& step : steps) {
      for (const auto& [t, f] : state.at(step.source).fractions) keys.insert(t);
    }
    const BigRational denom(BigInt(static_cast<unsigned long>(dst.total + moved_total)));
    UrnComposition fresh;
    fresh.total = dst.total + moved_total;
    for (const auto& t : keys) {
      BigRational num = BigRational(static_cast<unsigned long>(dst.total)) * dst.fraction(t);
      for (const auto& step : steps) {
        num += state.at(step.source).fraction(t) * BigRational(static_cast<unsigned long>(step.count));
      }
      BigRational f = num / denom;
      if (!f.is_zero()) fresh.fractions.emplace(t, std::move(f));
    }
    next[dest_id] = std::move(fresh);
  }
  for (const auto& [id, k] : taken) remove_balls(next[id], k);
  return next;
}

std::vector<BigRational> chain_run(const std::vector<UrnComposition>& urns,
                                   std::span<const std::uint64_t> moves,
                                   const TypeLabel& t) {
  if (moves.empty()) return {};
  if (urns.size() < moves.size() + 1) {
    fail(ErrorCode::bad_argument, "chain_run: " + std::to_string(moves.size()) +
                                      " moves need " + std::to_string(moves.size() + 1) +
                                      " urns, got " + std::to_string(urns.size()));
  }
  for (std::size_t m = 0; m < moves.size(); ++m) {
    const std::uint64_t available = urns[m].total + (m > 0 ? moves[m - 1] : 0);
    if (moves[m] > available) {
      fail(ErrorCode::infeasible, "chain_run: move " + std::to_string(m) + " takes " +
                                      std::to_string(moves[m]) + " balls but urn " +
                                      std::to_string(m) + " holds " +
                                      std::to_string(available));
    }
  }

  std::vector<BigRational> out;
  out.reserve(moves.size());
  BigRational prev = urns[0].total > 0 ? urns[0].fraction(t) : BigRational(0);
  for (std::size_t m = 0; m < moves.size(); ++m) {
    const UrnComposition& urn = urns[m + 1];
    const std::uint64_t k = moves[m];
    if (urn.total + k == 0) {
      fail(ErrorCode::empty_draw, "chain_run: urn " + std::to_string(m + 1) +
                                      " is empty after its transfer");
    }
    BigRational p;
    if (k == 0) {
      p = urn.fraction(t);
    } else {
      const BigRational expected_count =
          BigRational(static_cast<unsigned long>(urn.total)) * urn.fraction(t);
      p = (expected_count + BigRational(static_cast<unsigned long>(k)) * prev) /
          BigRational(static_cast<unsigned long>(urn.total + k));
    }
    out.push_back(p);
    prev = out.back();
  }
  return out;
}

}  // namespace urnflow::engine
