#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "coinguess/pointer.hpp"

using namespace coinguess;

namespace {

// Kolmogorov-Smirnov distance between n seeded draws and the claimed cdf.
// Critical value at the 1% level is ~1.63/sqrt(n); the bound below leaves
// headroom so the fixed seed never walks the suite onto the edge.
double ks_distance(const ContinuousPointer& dist, int n, std::uint64_t seed) {
  RngStream rng(seed, 0);
  std::vector<double> draws(static_cast<std::size_t>(n));
  for (auto& d : draws) d = sample(dist, rng);
  std::sort(draws.begin(), draws.end());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double f = cdf(dist, draws[static_cast<std::size_t>(i)]);
    const double lo = static_cast<double>(i) / n;
    const double hi = static_cast<double>(i + 1) / n;
    worst = std::max(worst, std::max(f - lo, hi - f));
  }
  return worst;
}

}  // namespace

TEST_SUITE("pointer") {

TEST_CASE("factories validate parameters") {
  CHECK_THROWS_AS(ContinuousPointer::uniform(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ContinuousPointer::uniform(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ContinuousPointer::exponential(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ContinuousPointer::exponential(-1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ContinuousPointer::gaussian(0.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(ContinuousPointer::gaussian(0.0, -1.0),
                  std::invalid_argument);
}

TEST_CASE("uniform cdf and gaps") {
  const auto u10 = ContinuousPointer::uniform(0.0, 10.0);
  CHECK(cdf(u10, -1.0) == 0.0);
  CHECK(cdf(u10, 0.0) == 0.0);
  CHECK(cdf(u10, 3.0) == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(cdf(u10, 10.0) == 1.0);
  CHECK(cdf(u10, 11.0) == 1.0);

  const auto gap = gap_probabilities(u10, 3.0, 5.0);
  CHECK(gap.below == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(gap.above == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(gap.between == doctest::Approx(0.2).epsilon(1e-14));

  const auto thirds =
      gap_probabilities(ContinuousPointer::uniform(0.0, 3.0), 1.0, 2.0);
  CHECK(thirds.below == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(thirds.above == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(thirds.between == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  CHECK_THROWS_AS(gap_probabilities(u10, 5.0, 3.0), std::invalid_argument);
}

TEST_CASE("exponential cdf") {
  const auto e1 = ContinuousPointer::exponential(1.0);
  CHECK(cdf(e1, -1.0) == 0.0);
  CHECK(cdf(e1, 0.0) == 0.0);
  CHECK(cdf(e1, std::log(2.0)) == doctest::Approx(0.5).epsilon(1e-14));
  const auto gap = gap_probabilities(e1, 3.0, 5.0);
  CHECK(gap.below == doctest::Approx(1.0 - std::exp(-3.0)).epsilon(1e-14));
  CHECK(gap.above == doctest::Approx(std::exp(-5.0)).epsilon(1e-12));
  CHECK(gap.between ==
        doctest::Approx(std::exp(-3.0) - std::exp(-5.0)).epsilon(1e-12));
}

TEST_CASE("gaussian cdf") {
  const auto n01 = ContinuousPointer::gaussian(0.0, 1.0);
  CHECK(cdf(n01, 0.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cdf(n01, 1.0) == doctest::Approx(0.8413447460685429).epsilon(1e-12));
  CHECK(cdf(n01, -1.0) + cdf(n01, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  const auto shifted = ContinuousPointer::gaussian(4.0, 2.0);
  CHECK(cdf(shifted, 4.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(cdf(shifted, 6.0) ==
        doctest::Approx(0.8413447460685429).epsilon(1e-12));
}

TEST_CASE("samples follow the claimed law") {
  CHECK(ks_distance(ContinuousPointer::uniform(-2.0, 5.0), 100000, 101) <
        0.01);
  CHECK(ks_distance(ContinuousPointer::exponential(0.7), 100000, 102) < 0.01);
  CHECK(ks_distance(ContinuousPointer::gaussian(1.5, 2.5), 100000, 103) <
        0.01);
}

TEST_CASE("arc weights keep an exact rational form") {
  const auto uniform7 = ArcWeights::uniform(7);
  REQUIRE(uniform7.has_exact());
  CHECK(uniform7.arc_count() == 7);
  CHECK(uniform7.denominator() == 7);
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(uniform7.numerators()[i] == 1);
    CHECK(uniform7.weight(i) == doctest::Approx(1.0 / 7.0).epsilon(1e-15));
  }

  const auto ramp = ArcWeights::from_numerators({1, 2, 3, 4});
  REQUIRE(ramp.has_exact());
  CHECK(ramp.denominator() == 10);
  CHECK(ramp.weight(0) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(ramp.weight(3) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK_THROWS_AS(ramp.weight(4), std::out_of_range);

  CHECK_THROWS_AS(ArcWeights::from_numerators({1, 0, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ArcWeights::from_numerators({-1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(ArcWeights::from_numerators({}), std::invalid_argument);
}

TEST_CASE("arc weights from plain probabilities") {
  const auto arcs = ArcWeights::from_probabilities({0.5, 0.25, 0.25});
  CHECK_FALSE(arcs.has_exact());
  CHECK(arcs.weight(0) == 0.5);
  CHECK_THROWS_AS(ArcWeights::from_probabilities({0.5, 0.25}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ArcWeights::from_probabilities({0.5, 0.5, -0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(ArcWeights::from_probabilities({1.5, -0.5}),
                  std::invalid_argument);
}

TEST_CASE("arc sampling tracks the weights") {
  const auto arcs = ArcWeights::from_numerators({1, 2, 3, 4});
  RngStream rng(55, 0);
  std::vector<int> counts(4, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[arc_sample(arcs, rng)];
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::abs(counts[i] / static_cast<double>(n) - arcs.weight(i)) <
          0.01);
  }
}

TEST_CASE("arc sampling at extreme weights") {
  const double eps = 1e-6;
  const auto lopsided =
      ArcWeights::from_probabilities({1.0 - 3 * eps, eps, eps, eps});
  RngStream rng(56, 0);
  int zeros = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const std::size_t k = arc_sample(lopsided, rng);
    REQUIRE(k < 4);
    if (k == 0) ++zeros;
  }
  CHECK(zeros / static_cast<double>(n) > 0.999);

  RngStream rng2(57, 0);
  std::vector<int> counts(4, 0);
  for (int i = 0; i < n; ++i) ++counts[arc_sample(ArcWeights::uniform(4), rng2)];
  for (int c : counts) {
    CHECK(std::abs(c / static_cast<double>(n) - 0.25) < 0.01);
  }
}

TEST_CASE("cdf is monotone and gaps always partition") {
  const ContinuousPointer dists[] = {
      ContinuousPointer::uniform(-3.0, 7.0),
      ContinuousPointer::exponential(0.4),
      ContinuousPointer::gaussian(2.0, 1.5),
  };
  std::mt19937 gen(8080);
  std::uniform_real_distribution<double> point(-20.0, 20.0);
  for (const auto& dist : dists) {
    for (int i = 0; i < 200; ++i) {
      double x1 = point(gen);
      double x2 = point(gen);
      if (x1 > x2) std::swap(x1, x2);
      CHECK(cdf(dist, x1) <= cdf(dist, x2));
      if (x1 == x2) continue;
      const auto gap = gap_probabilities(dist, x1, x2);
      for (double part : {gap.below, gap.between, gap.above}) {
        CHECK(part >= 0.0);
        CHECK(part <= 1.0);
      }
      CHECK(std::abs(gap.below + gap.between + gap.above - 1.0) <= 1e-12);
    }
  }
}

TEST_CASE("pointer spec parsing") {
  const auto u = parse_pointer_spec("uniform:0,3");
  CHECK(u.kind == PointerKind::Uniform);
  CHECK(u.lo == 0.0);
  CHECK(u.hi == 3.0);

  const auto e = parse_pointer_spec("exp:2.5");
  CHECK(e.kind == PointerKind::Exponential);
  CHECK(e.rate == 2.5);

  const auto g = parse_pointer_spec("normal:1,0.5");
  CHECK(g.kind == PointerKind::Gaussian);
  CHECK(g.mean == 1.0);
  CHECK(g.std_dev == 0.5);

  CHECK_THROWS_AS(parse_pointer_spec("uniform"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pointer_spec("uniform:0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pointer_spec("uniform:0,3,4"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pointer_spec("uniform:3,0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pointer_spec("exp:abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pointer_spec("exp:1.5x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pointer_spec("pareto:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_pointer_spec("normal:0,0"), std::invalid_argument);
}

TEST_CASE("arc spec parsing") {
  const auto uniform5 = parse_arc_spec("uniform", 5);
  CHECK(uniform5.has_exact());
  CHECK(uniform5.arc_count() == 5);

  const auto exact = parse_arc_spec("arcs:1,2,3,4,5", 5);
  REQUIRE(exact.has_exact());
  CHECK(exact.denominator() == 15);

  const auto inexact = parse_arc_spec("arcs:0.5,0.25,0.125,0.0625,0.0625", 5);
  CHECK_FALSE(inexact.has_exact());
  CHECK(inexact.weight(0) == doctest::Approx(0.5).epsilon(1e-12));

  // Fractional weights are normalized, so any positive vector works.
  const auto scaled = parse_arc_spec("arcs:2.0,2.0,2.0,2.0,2.0", 5);
  CHECK(scaled.weight(0) == doctest::Approx(0.2).epsilon(1e-12));

  CHECK_THROWS_AS(parse_arc_spec("arcs:1,2", 5), std::invalid_argument);
  CHECK_THROWS_AS(parse_arc_spec("arcs:1,2,3,4,-5", 5), std::invalid_argument);
  CHECK_THROWS_AS(parse_arc_spec("arcs:1,2,3,4,x", 5), std::invalid_argument);
  CHECK_THROWS_AS(parse_arc_spec("ring", 5), std::invalid_argument);
  CHECK_THROWS_AS(parse_arc_spec("arcs:99999999999999999999,1,1,1,1", 5),
                  std::invalid_argument);
}

}  // TEST_SUITE
