#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "common/error.hpp"
#include "engine/engine.hpp"
#include "oracle/enumerate.hpp"

using urnflow::Error;
using urnflow::exact::BigInt;
using urnflow::exact::BigRational;
namespace engine = urnflow::engine;

namespace {

BigRational frac(long num, long den) { return BigRational(BigInt(num), BigInt(den)); }

engine::UrnComposition two_type_urn(std::uint64_t white, std::uint64_t black) {
  return engine::UrnComposition::from_counts({{"white", white}, {"black", black}});
}

engine::SchemeState two_urn_state(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                  std::uint64_t d) {
  return {{"src", two_type_urn(a, b)}, {"dst", two_type_urn(c, d)}};
}

}  // namespace

TEST_CASE("scheme_a worked values") {
  CHECK(engine::scheme_a(1, 0, 0, 0) == BigRational(1));
  CHECK(engine::scheme_a(0, 5, 3, 2) == frac(1, 2));
  CHECK(engine::scheme_a(2, 3, 1, 1) == frac(7, 15));
  CHECK_THROWS_AS(engine::scheme_a(0, 0, 1, 1), Error);
}

TEST_CASE("scheme_a equals the two-outcome expectation and the k=1 transfer") {
  for (std::uint64_t a = 0; a <= 5; ++a) {
    for (std::uint64_t b = 0; b <= 5; ++b) {
      if (a + b == 0) continue;
      for (std::uint64_t c = 0; c <= 5; ++c) {
        for (std::uint64_t d = 0; d <= 5; ++d) {
          // Weight the two possible moved balls directly.
          const BigRational draw_white(BigInt(static_cast<long>(a)),
                                       BigInt(static_cast<long>(a + b)));
          const BigRational expectation =
              draw_white * frac(static_cast<long>(c + 1), static_cast<long>(c + d + 1)) +
              (BigRational(1) - draw_white) *
                  frac(static_cast<long>(c), static_cast<long>(c + d + 1));
          const BigRational direct = engine::scheme_a(a, b, c, d);
          CHECK(direct == expectation);

          const engine::SchemeState after =
              engine::transfer(two_urn_state(a, b, c, d), {"src", "dst", 1});
          CHECK(direct == engine::prob_type(after.at("dst"), "white"));
        }
      }
    }
  }
}

TEST_CASE("prob_type reads the expected fraction") {
  CHECK(engine::prob_type(two_type_urn(15, 10), "white") == frac(3, 5));
  CHECK(engine::prob_type(two_type_urn(15, 10), "absent") == BigRational(0));
  const auto urn0 = engine::UrnComposition::from_counts(
      {{"white", 310}, {"black", 350}, {"yellow", 370}});
  CHECK(engine::prob_type(urn0, "white") == frac(31, 103));
  CHECK_THROWS_AS(engine::prob_type(engine::UrnComposition{}, "white"), Error);
}

TEST_CASE("transfer reproduces the warehouse instance") {
  engine::SchemeState state{
      {"w0", engine::UrnComposition::from_counts({{"standard", 11850}, {"other", 3150}})},
      {"w1", engine::UrnComposition::from_counts({{"standard", 15800}, {"other", 1200}})}};
  state = engine::transfer(state, {"w0", "w1", 10000});
  CHECK(state.at("w1").total == 27000);
  CHECK(engine::prob_type(state.at("w1"), "standard") == frac(79, 90));
  CHECK(state.at("w0").total == 5000);
  CHECK(engine::prob_type(state.at("w0"), "standard") == frac(79, 100));
}

TEST_CASE("transfer with k=0 changes nothing") {
  const engine::SchemeState state = two_urn_state(3, 2, 1, 1);
  CHECK(engine::transfer(state, {"src", "dst", 0}) == state);
}

TEST_CASE("transfer matches brute-force enumeration on the worked example") {
  const engine::SchemeState after =
      engine::transfer(two_urn_state(3, 2, 1, 1), {"src", "dst", 2});
  CHECK(engine::prob_type(after.at("dst"), "white") == frac(11, 20));
  CHECK(urnflow::oracle::enumerate_single(3, 2, 1, 1, 2) == frac(11, 20));
}

TEST_CASE("transfer errors") {
  const engine::SchemeState state = two_urn_state(3, 2, 1, 1);
  CHECK_THROWS_AS(engine::transfer(state, {"src", "dst", 6}), Error);
  CHECK_THROWS_AS(engine::transfer(state, {"src", "nowhere", 1}), Error);
  CHECK_THROWS_AS(engine::transfer(state, {"src", "src", 1}), Error);
}

TEST_CASE("source keeps its fractions and loses exactly k") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> count(0, 9);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t a = count(rng), b = count(rng) + 1;
    const std::uint64_t c = count(rng), d = count(rng);
    std::uniform_int_distribution<std::uint64_t> pick(0, a + b - 1);
    const std::uint64_t k = pick(rng);
    const engine::SchemeState before = two_urn_state(a, b, c, d);
    const engine::SchemeState after = engine::transfer(before, {"src", "dst", k});
    CHECK(after.at("src").total == a + b - k);
    if (a + b - k > 0) {
      CHECK(after.at("src").fractions == before.at("src").fractions);
    } else {
      CHECK(after.at("src").fractions.empty());
    }
    // Normalization: fractions sum to exactly 1 on every non-empty urn.
    for (const auto& [id, urn] : after) {
      if (urn.total == 0) continue;
      BigRational sum(0);
      for (const auto& [t, f] : urn.fractions) sum += f;
      CHECK(sum == BigRational(1));
    }
  }
}

TEST_CASE("draining the source gives the full-pooling value") {
  const engine::SchemeState after =
      engine::transfer(two_urn_state(3, 2, 1, 1), {"src", "dst", 5});
  // (theta*M + N*p) / (N+M) with theta=3/5, M=5, N=2, p=1/2
  CHECK(engine::prob_type(after.at("dst"), "white") == frac(4, 7));
  CHECK(after.at("src").total == 0);
  CHECK(after.at("src").fractions.empty());
}

TEST_CASE("bounds intervals") {
  const auto interval = engine::bounds(two_type_urn(1, 1), "white", 2);
  CHECK(interval.alpha == frac(1, 4));
  CHECK(interval.beta == frac(3, 4));

  const auto urn1 = engine::UrnComposition::from_counts(
      {{"white", 0}, {"black", 480}, {"yellow", 530}});
  const auto white1 = engine::bounds(urn1, "white", 500);
  CHECK(white1.alpha == BigRational(0));
  CHECK(white1.beta == frac(500, 1510));
  const auto black1 = engine::bounds(urn1, "black", 500);
  CHECK(black1.alpha == frac(480, 1510));
  CHECK(black1.beta == frac(980, 1510));

  CHECK_THROWS_AS(engine::bounds(two_type_urn(1, 1), "white", 0), Error);
}

TEST_CASE("theta at the interval endpoints") {
  // theta = 0: pure-black source pins the result at alpha.
  engine::SchemeState state = two_urn_state(0, 4, 1, 2);
  const auto interval = engine::bounds(state.at("dst"), "white", 3);
  auto result = engine::transfer(state, {"src", "dst", 3});
  CHECK(engine::prob_type(result.at("dst"), "white") == interval.alpha);
  // theta = 1: pure-white source pins it at beta.
  state = two_urn_state(4, 0, 1, 2);
  result = engine::transfer(state, {"src", "dst", 3});
  CHECK(engine::prob_type(result.at("dst"), "white") == interval.beta);
}

TEST_CASE("interpolation identity on random instances") {
  std::mt19937_64 rng(23);
  std::uniform_int_distribution<std::uint64_t> count(0, 12);
  for (int i = 0; i < 300; ++i) {
    const std::uint64_t a = count(rng), b = count(rng), c = count(rng), d = count(rng);
    if (a + b == 0) continue;
    std::uniform_int_distribution<std::uint64_t> pick(1, a + b);
    const std::uint64_t k = pick(rng);
    const engine::SchemeState state = two_urn_state(a, b, c, d);
    const auto interval = engine::bounds(state.at("dst"), "white", k);
    const BigRational theta = state.at("src").fraction("white");
    const auto after = engine::transfer(state, {"src", "dst", k});
    const BigRational p = engine::prob_type(after.at("dst"), "white");
    CHECK(p == interval.alpha + (interval.beta - interval.alpha) * theta);
    CHECK(interval.alpha <= p);
    CHECK(p <= interval.beta);
  }
}

TEST_CASE("the two closed forms agree on integer inputs") {
  for (std::uint64_t a = 0; a <= 6; ++a) {
    for (std::uint64_t b = 0; b <= 6; ++b) {
      if (a + b == 0) continue;
      const BigRational theta(BigInt(static_cast<long>(a)), BigInt(static_cast<long>(a + b)));
      for (std::uint64_t c = 0; c <= 6; ++c) {
        for (std::uint64_t d = 0; d <= 6; ++d) {
          for (std::uint64_t k = 1; k <= a + b; ++k) {
            const BigRational via_counts =
                (theta * BigRational(static_cast<unsigned long>(k)) +
                 BigRational(static_cast<unsigned long>(c))) /
                BigRational(static_cast<unsigned long>(c + d + k));
            const BigRational via_split =
                frac(static_cast<long>(c), static_cast<long>(c + d + k)) +
                theta * frac(static_cast<long>(k), static_cast<long>(c + d + k));
            CHECK(via_counts == via_split);
          }
        }
      }
    }
  }
}

TEST_CASE("multi_transfer mixes three urns into an empty one") {
  engine::SchemeState state{
      {"u1", two_type_urn(10, 10)},
      {"u2", two_type_urn(15, 10)},
      {"u3", two_type_urn(20, 10)},
      {"mix", engine::UrnComposition{}}};
  const std::vector<engine::TransferStep> steps{
      {"u1", "mix", 5}, {"u2", "mix", 10}, {"u3", "mix", 15}};
  const auto after = engine::multi_transfer(state, steps);
  CHECK(after.at("mix").total == 30);
  CHECK(engine::prob_type(after.at("mix"), "white") == frac(37, 60));
  // Sequel: ten balls back into u2 gives the second-stage value.
  const auto final_state = engine::transfer(after, {"mix", "u2", 10});
  CHECK(engine::prob_type(final_state.at("u2"), "white") == frac(91, 150));
}

TEST_CASE("multi_transfer with one step is transfer") {
  const engine::SchemeState state = two_urn_state(3, 2, 1, 1);
  const std::vector<engine::TransferStep> steps{{"src", "dst", 2}};
  CHECK(engine::multi_transfer(state, steps) ==
        engine::transfer(state, steps.front()));
}

TEST_CASE("two half-white sources land on one half") {
  engine::SchemeState state{{"u1", two_type_urn(2, 2)},
                            {"u2", two_type_urn(3, 3)},
                            {"mix", engine::UrnComposition{}}};
  const std::vector<engine::TransferStep> steps{{"u1", "mix", 3}, {"u2", "mix", 4}};
  const auto after = engine::multi_transfer(state, steps);
  CHECK(engine::prob_type(after.at("mix"), "white") == frac(1, 2));
}

TEST_CASE("multi_transfer equals sequential composition in any order") {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<std::uint64_t> count(0, 8);
  for (int i = 0; i < 100; ++i) {
    engine::SchemeState state{{"u1", two_type_urn(count(rng) + 1, count(rng))},
                              {"u2", two_type_urn(count(rng), count(rng) + 1)},
                              {"u3", two_type_urn(count(rng) + 1, count(rng) + 1)},
                              {"dst", two_type_urn(count(rng), count(rng))}};
    std::vector<engine::TransferStep> steps;
    for (const auto& id : {"u1", "u2", "u3"}) {
      std::uniform_int_distribution<std::uint64_t> pick(0, state.at(id).total);
      steps.push_back({id, "dst", pick(rng)});
    }
    const auto joint = engine::multi_transfer(state, steps);

    std::sort(steps.begin(), steps.end(),
              [](const auto& x, const auto& y) { return x.source < y.source; });
    do {
      engine::SchemeState sequential = state;
      for (const auto& step : steps) sequential = engine::transfer(sequential, step);
      CHECK(sequential == joint);
    } while (std::next_permutation(
        steps.begin(), steps.end(),
        [](const auto& x, const auto& y) { return x.source < y.source; }));
  }
}

TEST_CASE("multi_transfer validates its step list") {
  const engine::SchemeState state = two_urn_state(3, 2, 1, 1);
  using Steps = std::vector<engine::TransferStep>;
  CHECK_THROWS_AS(engine::multi_transfer(state, Steps{{"src", "dst", 2}, {"dst", "src", 1}}),
                  Error);
  CHECK_THROWS_AS(engine::multi_transfer(state, Steps{{"dst", "dst", 1}}), Error);
  // Shared source: combined draw must fit.
  CHECK_THROWS_AS(engine::multi_transfer(state, Steps{{"src", "dst", 3}, {"src", "dst", 3}}),
                  Error);
  CHECK_NOTHROW(engine::multi_transfer(state, Steps{{"src", "dst", 3}, {"src", "dst", 2}}));
}

TEST_CASE("chain_run reproduces the three-color chain") {
  const std::vector<engine::UrnComposition> urns{
      engine::UrnComposition::from_counts({{"white", 310}, {"black", 350}, {"yellow", 370}}),
      engine::UrnComposition::from_counts({{"white", 0}, {"black", 480}, {"yellow", 530}}),
      engine::UrnComposition::from_counts({{"white", 600}, {"black", 640}, {"yellow", 670}})};
  const std::vector<std::uint64_t> moves{500, 600};

  const auto white = engine::chain_run(urns, moves, "white");
  REQUIRE(white.size() == 2);
  CHECK(white[0] == frac(1550, 15553));
  CHECK(white[1] == frac(1026180, 3903803));

  const auto black = engine::chain_run(urns, moves, "black");
  CHECK(black[0] == frac(6694, 15553));
  CHECK(black[1] == frac(1397032, 3903803));

  const auto yellow = engine::chain_run(urns, moves, "yellow");
  CHECK(yellow[0] == frac(7309, 15553));
  CHECK(yellow[1] == frac(1480591, 3903803));

  CHECK(white[1] + black[1] + yellow[1] == BigRational(1));
}

TEST_CASE("chain_run with zero moves returns the initial fractions") {
  const std::vector<engine::UrnComposition> urns{
      two_type_urn(1, 1), two_type_urn(2, 3), two_type_urn(0, 4)};
  const std::vector<std::uint64_t> moves{0, 0};
  const auto out = engine::chain_run(urns, moves, "white");
  CHECK(out[0] == frac(2, 5));
  CHECK(out[1] == BigRational(0));
}

TEST_CASE("chain_run equals folding transfer along the chain") {
  std::mt19937_64 rng(53);
  std::uniform_int_distribution<std::uint64_t> count(0, 6);
  for (int i = 0; i < 100; ++i) {
    std::vector<engine::UrnComposition> urns;
    for (int u = 0; u < 4; ++u) urns.push_back(two_type_urn(count(rng), count(rng) + 1));
    std::vector<std::uint64_t> moves;
    std::uint64_t carried = 0;
    for (int m = 0; m < 3; ++m) {
      std::uniform_int_distribution<std::uint64_t> pick(0, urns[m].total + carried);
      moves.push_back(pick(rng));
      carried = moves.back();
    }
    const auto direct = engine::chain_run(urns, moves, "white");

    engine::SchemeState state;
    for (std::size_t u = 0; u < urns.size(); ++u) {
      state.emplace("p" + std::to_string(u), urns[u]);
    }
    for (std::size_t m = 0; m < moves.size(); ++m) {
      state = engine::transfer(
          state, {"p" + std::to_string(m), "p" + std::to_string(m + 1), moves[m]});
      const auto& urn = state.at("p" + std::to_string(m + 1));
      if (urn.total > 0) {
        CHECK(direct[m] == urn.fraction("white"));
      }
    }
  }
}

TEST_CASE("chain_run validates the move list") {
  const std::vector<engine::UrnComposition> urns{two_type_urn(1, 1), two_type_urn(1, 1)};
  CHECK_THROWS_AS(engine::chain_run(urns, std::vector<std::uint64_t>{1, 1}, "white"),
                  Error);  // more moves than edges
  CHECK_THROWS_AS(engine::chain_run(urns, std::vector<std::uint64_t>{3}, "white"),
                  Error);  // k exceeds the source
  // Second hop may use received balls: urn 1 holds 2 + 2 when it sends 3.
  const std::vector<engine::UrnComposition> chain{
      two_type_urn(1, 1), two_type_urn(1, 1), two_type_urn(1, 1)};
  CHECK_NOTHROW(engine::chain_run(chain, std::vector<std::uint64_t>{2, 3}, "white"));
  CHECK_THROWS_AS(engine::chain_run(chain, std::vector<std::uint64_t>{2, 5}, "white"),
                  Error);
}
