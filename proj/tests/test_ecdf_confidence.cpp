#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "properties.hpp"
#include "snbs/snbs.hpp"

using namespace snbs;
using Catch::Approx;

TEST_CASE("ECDF evaluation") {
  const EmpiricalCdf cdf({-1.0, 0.0, 1.0});
  REQUIRE(cdf.eval(0.0) == Approx(2.0 / 3.0));
  REQUIRE(cdf.eval(-2.0) == 0.0);
  REQUIRE(cdf.eval(1.0) == 1.0);

  const EmpiricalCdf ties({1.0, 1.0, 2.0});
  REQUIRE(ties.eval(1.0) == Approx(2.0 / 3.0));

  REQUIRE_THROWS_AS(EmpiricalCdf({}), std::invalid_argument);
}

TEST_CASE("inf-type quantile") {
  const EmpiricalCdf cdf({1.0, 2.0, 3.0, 4.0, 5.0});
  REQUIRE(cdf.quantile(0.4) == 2.0);
  REQUIRE(cdf.quantile(1.0) == 5.0);
  REQUIRE(cdf.quantile(0.1) == 1.0);
  REQUIRE_THROWS_AS(cdf.quantile(0.0), std::domain_error);
  REQUIRE_THROWS_AS(cdf.quantile(1.1), std::domain_error);
}

TEST_CASE("ECDF is a right-continuous monotone step function") {
  std::string why;
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const bool ok = properties::check_ecdf_shape(seed, &why);
    INFO(why);
    REQUIRE(ok);
  }
}

TEST_CASE("confidence interval hand value") {
  const TimeSeries series({1.0, 2.0, 3.0});
  const ConfidenceInterval ci =
      confidence_interval(series, 2, 0.5, IntervalSide::LowerOneSided);
  REQUIRE(std::isinf(ci.lo));
  REQUIRE(ci.lo < 0.0);
  REQUIRE(ci.hi == Approx(2.7698004).epsilon(1e-7));
  REQUIRE(ci.q_lo == Approx(-2.8284271).epsilon(1e-7));
}

TEST_CASE("negative lower quantile lifts the lower bound above the mean") {
  RngStream rng(11, 3);
  std::vector<double> x(120);
  for (auto& v : x) v = rng.normal();
  const TimeSeries series(x);
  const double xbar = prefix_sums(series).mean();
  const ConfidenceInterval ci =
      confidence_interval(series, 10, 0.9, IntervalSide::LowerOneSided);
  REQUIRE(ci.q_lo < 0.0);
  REQUIRE(ci.hi > xbar);
}

TEST_CASE("confidence interval is shift equivariant") {
  RngStream rng(12, 4);
  std::vector<double> x(80);
  for (auto& v : x) v = rng.normal();
  std::vector<double> shifted(80);
  const double s = 123.25;
  for (std::size_t i = 0; i < x.size(); ++i) shifted[i] = x[i] + s;

  for (auto side : {IntervalSide::LowerOneSided, IntervalSide::UpperOneSided,
                    IntervalSide::TwoSided}) {
    const ConfidenceInterval a =
        confidence_interval(TimeSeries(x), 8, 0.9, side);
    const ConfidenceInterval b =
        confidence_interval(TimeSeries(shifted), 8, 0.9, side);
    if (std::isfinite(a.lo)) {
      REQUIRE(b.lo == Approx(a.lo + s).margin(1e-9));
    }
    if (std::isfinite(a.hi)) {
      REQUIRE(b.hi == Approx(a.hi + s).margin(1e-9));
    }
    REQUIRE(b.q_lo == Approx(a.q_lo).margin(1e-9));
    REQUIRE(b.q_hi == Approx(a.q_hi).margin(1e-9));
  }
}

TEST_CASE("two-sided interval nests the quantiles") {
  RngStream rng(13, 5);
  std::vector<double> x(100);
  for (auto& v : x) v = rng.normal();
  const ConfidenceInterval ci =
      confidence_interval(TimeSeries(x), 10, 0.9, IntervalSide::TwoSided);
  REQUIRE(ci.lo <= ci.hi);
  REQUIRE(ci.q_lo <= ci.q_hi);
}

TEST_CASE("degenerate inputs raise the dedicated errors") {
  REQUIRE_THROWS_AS(confidence_interval(TimeSeries({1.0, 1.0, 1.0, 1.0}), 2,
                                        0.9, IntervalSide::LowerOneSided),
                    AllBlocksDegenerate);
  REQUIRE_THROWS_AS(confidence_interval(TimeSeries({1.0, 2.0, 3.0}), 2, 1.5,
                                        IntervalSide::LowerOneSided),
                    std::domain_error);
}
