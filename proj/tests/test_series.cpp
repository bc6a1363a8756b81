#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "properties.hpp"
#include "snbs/snbs.hpp"

using namespace snbs;
using Catch::Approx;

TEST_CASE("prefix sums match hand values") {
  const PrefixSums ps = prefix_sums(TimeSeries({1.0, 2.0, 3.0}));
  REQUIRE(ps.p == std::vector<double>{0.0, 1.0, 3.0, 6.0});

  const PrefixSums zero = prefix_sums(TimeSeries({0.0, 0.0, 0.0}));
  REQUIRE(zero.p == std::vector<double>{0.0, 0.0, 0.0, 0.0});

  const PrefixSums alt = prefix_sums(TimeSeries({1.0, -1.0, 1.0, -1.0}));
  REQUIRE(alt.p == std::vector<double>{0.0, 1.0, 0.0, 1.0, 0.0});
}

TEST_CASE("prefix sums recover the series by telescoping") {
  RngStream rng(42, 0);
  std::vector<double> x(300);
  for (auto& v : x) v = 50.0 + rng.normal();
  const TimeSeries series(x);
  const PrefixSums ps = prefix_sums(series);
  for (std::size_t k = 1; k <= x.size(); ++k) {
    REQUIRE(ps.p[k] - ps.p[k - 1] ==
            Approx(x[k - 1]).margin(1e-12 * std::abs(ps.p[k])));
  }
}

TEST_CASE("time series validation") {
  REQUIRE_THROWS_AS(TimeSeries({}), std::invalid_argument);
  REQUIRE_THROWS_AS(TimeSeries({1.0}), std::invalid_argument);
  REQUIRE_THROWS_AS(TimeSeries({1.0, std::nan("")}), std::invalid_argument);
  REQUIRE_THROWS_AS(
      TimeSeries({1.0, std::numeric_limits<double>::infinity()}),
      std::invalid_argument);
}

TEST_CASE("block normalizer hand values") {
  SECTION("constant block is degenerate on both paths") {
    const PrefixSums ps =
        prefix_sums(TimeSeries({3.5, 3.5, 3.5, 3.5, 3.5}));
    for (std::size_t b : {std::size_t{2}, std::size_t{3}, std::size_t{5}}) {
      for (std::size_t i = 1; i + b - 1 <= 5; ++i) {
        REQUIRE(block_normalizer_direct(ps, i, b) == 0.0);
        REQUIRE(block_normalizer_sliding(ps, i, b) == 0.0);
      }
    }
  }
  SECTION("(0,1) full sample") {
    const PrefixSums ps = prefix_sums(TimeSeries({0.0, 1.0}));
    REQUIRE(block_normalizer_direct(ps, 1, 2) ==
            Approx(std::sqrt(1.0 / 8.0)).epsilon(1e-12));
    REQUIRE(block_normalizer_sliding(ps, 1, 2) ==
            Approx(std::sqrt(1.0 / 8.0)).epsilon(1e-12));
  }
  SECTION("(1,2,3) inner block") {
    const PrefixSums ps = prefix_sums(TimeSeries({1.0, 2.0, 3.0}));
    REQUIRE(block_normalizer_direct(ps, 2, 2) ==
            Approx(std::sqrt(1.0 / 8.0)).epsilon(1e-12));
    REQUIRE(block_normalizer_sliding(ps, 2, 2) ==
            Approx(std::sqrt(1.0 / 8.0)).epsilon(1e-12));
  }
  SECTION("out of range rejected") {
    const PrefixSums ps = prefix_sums(TimeSeries({1.0, 2.0, 3.0}));
    REQUIRE_THROWS_AS(block_normalizer_direct(ps, 3, 2), std::out_of_range);
    REQUIRE_THROWS_AS(block_normalizer_sliding(ps, 0, 2), std::out_of_range);
    REQUIRE_THROWS_AS(block_normalizer_sliding(ps, 1, 4), std::out_of_range);
  }
}

TEST_CASE("sliding normalizer equals direct normalizer") {
  std::string why;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const bool ok = properties::check_sliding_vs_direct(seed, &why);
    INFO(why);
    REQUIRE(ok);
  }
}

TEST_CASE("full statistic") {
  REQUIRE(full_statistic(TimeSeries({0.0, 1.0}), 0.0) ==
          Approx(2.8284271).epsilon(1e-7));

  SECTION("antisymmetry under negation") {
    RngStream rng(7, 0);
    std::vector<double> x(40);
    for (auto& v : x) v = rng.normal();
    std::vector<double> neg(40);
    for (std::size_t i = 0; i < 40; ++i) neg[i] = -x[i];
    const double mu = 0.3;
    REQUIRE(full_statistic(TimeSeries(neg), -mu) ==
            Approx(-full_statistic(TimeSeries(x), mu)).epsilon(1e-12));
  }

  SECTION("constant series has no scale") {
    REQUIRE_THROWS_AS(full_statistic(TimeSeries({5.0, 5.0, 5.0}), 5.0),
                      DegenerateNormalizer);
  }
}
