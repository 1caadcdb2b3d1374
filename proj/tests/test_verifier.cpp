#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lpf/chebsums.hpp"
#include "lpf/verifier.hpp"
#include "oracles.hpp"

using namespace lpf;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// Sum over x < n <= 2x of log p for each prime p | n^2 + 1 with lo < p <= hi,
// weighted by the exponent when `weighted`.
long double oracle_mass(std::uint64_t x, std::uint64_t lo, std::uint64_t hi, bool weighted) {
  long double s = 0;
  for (std::uint64_t n = x + 1; n <= 2 * x; ++n) {
    for (const auto& [p, e] : oracle::trial_factor(n * n + 1)) {
      if (p > lo && p <= hi) s += (weighted ? e : 1) * std::log(static_cast<long double>(p));
    }
  }
  return s;
}

// Sum over x < n <= 2x and prime powers d = p^k <= y dividing n^2 + 1 of log p.
long double oracle_power_mass(std::uint64_t x, std::uint64_t y) {
  long double s = 0;
  for (std::uint64_t n = x + 1; n <= 2 * x; ++n) {
    for (const auto& [p, e] : oracle::trial_factor(n * n + 1)) {
      std::uint64_t d = p;
      for (unsigned k = 1; k <= e && d <= y; ++k, d *= p) s += std::log(static_cast<long double>(p));
    }
  }
  return s;
}

}  // namespace

TEST_CASE("lhs_logsum") {
  CHECK(lhs_logsum(1) == doctest::Approx(std::log(5.0)).epsilon(1e-15));
  long double direct = 0;
  for (std::uint64_t n = 51; n <= 100; ++n) direct += std::log(static_cast<long double>(n * n + 1));
  CHECK(rel(lhs_logsum(50), static_cast<double>(direct)) < 1e-14);

  const double v = lhs_logsum(1000);
  CHECK(std::fabs(v - 2e3 * std::log(1e3)) < 3e3);

  const auto constant = [](std::uint64_t x) {
    const double dx = static_cast<double>(x);
    return (lhs_logsum(x) - 2 * dx * std::log(dx)) / dx;
  };
  const double c5 = constant(100'000), c6 = constant(1'000'000);
  MESSAGE("(lhs - 2x log x)/x at 10^5, 10^6: " << c5 << ", " << c6);
  CHECK(c6 / c5 < 1.5);
  CHECK(c5 / c6 < 1.5);
}

TEST_CASE("von Mangoldt identity") {
  SUBCASE("one value: 7^2 + 1 = 2 * 5^2") {
    const auto rec = sieve_segment(7, 7).front();
    double lambda = 0;
    for (const auto& [p, e] : rec.factors) lambda += e * std::log(static_cast<double>(p));
    CHECK(lambda == doctest::Approx(std::log(50.0)).epsilon(1e-15));
  }

  SUBCASE("x = 50 against trial division") {
    const ChainLedger l = lambda_identity_check(50);
    CHECK(l.lambda_rel_error <= 1e-12);
    CHECK(rel(l.lambda_side, static_cast<double>(oracle_mass(50, 0, ~0ULL, true))) < 1e-13);
    CHECK_FALSE(l.has_delta);
  }

  SUBCASE("x = 10^5") {
    const ChainLedger l = lambda_identity_check(100'000, SieveOptions{1 << 14, 2});
    MESSAGE("x=10^5 lambda relative error = " << l.lambda_rel_error);
    CHECK(l.lambda_rel_error <= 1e-9);
    CHECK(l.prime_power_mass > 0);
    CHECK(l.lhs_main == 2e5 * std::log(1e5));
  }
}

TEST_CASE("interval scan") {
  const IntervalScan scan = scan_interval(100);
  for (const auto& [p, count] : scan.prime_incidence) {
    CHECK(count == oracle::scan_count(100, p));
  }
  // 2 divides exactly the 50 odd n, never 4.
  CHECK(scan.prime_incidence.at(2) == 50);
  CHECK(scan.exponent_totals.at(2) == 50);
  CHECK(scan.power_incidence.count(4) == 0);
  CHECK(scan.power_incidence.at(25).p == 5);
  CHECK(scan.power_incidence.at(25).count == oracle::scan_count(100, 25));

  const IntervalScan a = scan_interval(30'000, SieveOptions{1000, 1});
  const IntervalScan b = scan_interval(30'000, SieveOptions{777, 4});
  CHECK(a.lambda_side == b.lambda_side);
  CHECK(a.lhs_exact == b.lhs_exact);
  CHECK(a.prime_incidence == b.prime_incidence);

  CHECK_THROWS(scan_interval(0));
  CHECK_THROWS(scan_interval((std::uint64_t{1} << 30) + 1));
}

TEST_CASE("coverage curve") {
  for (bool pp : {false, true}) {
    const CoverageCurve c = coverage_curve(100, pp);
    REQUIRE_FALSE(c.points.empty());
    CHECK(c.points.back().y == 40'001);
    double prevC = 0;
    std::uint64_t prevY = 0;
    for (const auto& pt : c.points) {
      CHECK(pt.y > prevY);
      CHECK(pt.C >= prevC);
      CHECK(pt.rho >= 0);
      CHECK(pt.rho <= 1);
      prevC = pt.C;
      prevY = pt.y;
    }
    // C(1000) from trial division: primes p <= y once each, or prime powers p^k <= y.
    const double expect =
        static_cast<double>(pp ? oracle_power_mass(100, 1000) : oracle_mass(100, 0, 1000, false));
    CHECK(rel(c.rho_at(1000) * c.total, expect) < 1e-12);
  }

  const CoverageCurve full = coverage_curve(100, true);
  CHECK(std::fabs(full.points.back().rho - 1.0) <= 1e-9);
  CHECK(rel(full.points.back().C, lhs_logsum(100)) <= 1e-9);
  REQUIRE(full.delta_star.has_value());
  CHECK(*full.delta_star >= 0);

  const CoverageCurve bare = coverage_curve(100, false);
  const ChainLedger l = lambda_identity_check(100);
  CHECK(1 - bare.points.back().rho ==
        doctest::Approx(l.prime_power_mass / l.lhs_exact).epsilon(1e-9));

  SUBCASE("delta_star shrinks as the tolerance grows") {
    const CoverageCurve c = coverage_curve(2000, true);
    const auto loose = c.delta_star_at(1e-2), mid = c.delta_star_at(1e-3),
               tight = c.delta_star_at(1e-4);
    REQUIRE(loose.has_value());
    REQUIRE(mid.has_value());
    REQUIRE(tight.has_value());
    CHECK(*loose <= *mid);
    CHECK(*mid <= *tight);
    CHECK(c.rho_at(power_cutoff(2000, *mid, ~0ULL)) >= 1 - 1e-3 - 1e-12);
  }

  SUBCASE("grid") {
    const auto grid = coverage_grid(full);
    REQUIRE(grid.size() == 11);
    double prev = -1;
    for (std::size_t k = 0; k < grid.size(); ++k) {
      CHECK(grid[k].first == doctest::Approx(k / 10.0));
      CHECK(grid[k].second >= prev);
      prev = grid[k].second;
    }
    CHECK(grid[0].second == full.rho_at(100));
  }

  SUBCASE("x = 10^5 delta_star is a measurement") {
    const CoverageCurve c = coverage_curve(100'000, true, 1e-3, SieveOptions{1 << 16, 2});
    MESSAGE("x=10^5 delta_star(1e-3) = " << (c.delta_star ? *c.delta_star : -1.0)
                                         << ", rho(x^1.5) = " << c.rho_at(31'622'776));
    CHECK(std::fabs(c.points.back().rho - 1.0) <= 1e-9);
  }

  CHECK_THROWS(coverage_curve(1, true));
}

TEST_CASE("contradiction probe") {
  const IntervalScan scan = scan_interval(1000);

  SUBCASE("delta = 0 bound holds summand by summand") {
    const ChainLedger c = contradiction_probe(scan, 0.0);
    CHECK(c.has_delta);
    CHECK(c.cutoff == 1000);
    CHECK(c.bound_holds);
    CHECK(c.n_trunc <= c.R + c.S);
    CHECK(c.summand_checks == pi_counting(1000, 4, 1));
    CHECK(c.summand_violations == 0);
    CHECK(c.R == primary_term(1000, 0.0).R);
    CHECK(c.S == secondary_term(1000, 0.0).S);
    CHECK(c.n_trunc - c.n_trunc_odd == doctest::Approx(500 * std::log(2.0)).epsilon(1e-12));
    CHECK(rel(c.n_trunc, static_cast<double>(oracle_mass(1000, 0, 1000, false))) < 1e-12);
    CHECK(c.margin == doctest::Approx(c.lhs_main - (c.R + c.S)));
  }

  SUBCASE("delta = 1 splits the exact margin into tail mass and power excess") {
    const ChainLedger c = contradiction_probe(scan, 1.0);
    CHECK(c.cutoff == 1'000'000);
    CHECK(c.summand_violations == 0);
    CHECK(c.margin_exact ==
          doctest::Approx(c.mass_above_cutoff + c.power_excess_below).epsilon(1e-12));
    CHECK(c.mass_above_cutoff > 0);
    CHECK(rel(c.mass_above_cutoff,
              static_cast<double>(oracle_mass(1000, 1'000'000, ~0ULL, true))) < 1e-10);
    CHECK(c.power_excess_below == doctest::Approx(c.prime_power_mass).epsilon(1e-12));
  }

  SUBCASE("delta grid") {
    for (double d : {0.25, 0.5, 0.75}) {
      const ChainLedger c = contradiction_probe(scan, d);
      CHECK(c.summand_violations == 0);
      CHECK(c.bound_holds);
    }
  }

  CHECK_THROWS_AS(contradiction_probe(scan, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(contradiction_probe(scan, -0.1), std::invalid_argument);
}

TEST_CASE("largest prime probe") {
  const LargestPrimeProbe ten = largest_prime_probe(10);
  CHECK(ten.max_P == 401);
  CHECK(ten.argmax_n == 20);
  CHECK(ten.exponent == doctest::Approx(2.603144372620182).epsilon(1e-14));
  CHECK(ten.in_interval);

  std::uint64_t best = 0, arg = 0;
  for (std::uint64_t n = 101; n <= 200; ++n) {
    const auto p = oracle::trial_factor(n * n + 1).back().p;
    if (p > best) best = p, arg = n;
  }
  const LargestPrimeProbe hundred = largest_prime_probe(100);
  CHECK(hundred.max_P == best);
  CHECK(hundred.argmax_n == arg);
  CHECK(hundred.threshold == doctest::Approx(1000.0));
  CHECK(hundred.in_interval);

  const LargestPrimeProbe big = largest_prime_probe(1'000'000, SieveOptions{1 << 18, 2});
  MESSAGE("x=10^6 max P = " << big.max_P << " at n=" << big.argmax_n
                            << ", exponent " << big.exponent);
  CHECK(big.max_P <= 4'000'000'000'001ULL);
}
