#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "lpf/polysieve.hpp"
#include "lpf/rootcount.hpp"
#include "oracles.hpp"

using namespace lpf;

namespace {

FactorizationRecord oracle_record(std::uint64_t n, bool use_rho = false) {
  FactorizationRecord rec;
  rec.n = n;
  rec.factors = use_rho ? oracle::rho_factor(n * n + 1) : oracle::trial_factor(n * n + 1);
  rec.largest_prime = rec.factors.back().p;
  return rec;
}

void check_invariants(const FactorizationRecord& rec) {
  CHECK(reconstruct(rec) == rec.n * rec.n + 1);
  REQUIRE_FALSE(rec.factors.empty());
  CHECK(rec.largest_prime == rec.factors.back().p);
  for (std::size_t i = 0; i < rec.factors.size(); ++i) {
    const auto& [p, e] = rec.factors[i];
    CHECK(e >= 1);
    CHECK((p == 2 || p % 4 == 1));
    CHECK(is_prime(p));
    if (i > 0) CHECK(rec.factors[i - 1].p < p);
  }
  const bool has_two = rec.factors.front().p == 2;
  CHECK(has_two == (rec.n % 2 == 1));
  if (has_two) CHECK(rec.factors.front().e == 1);
}

}  // namespace

TEST_CASE("factorization examples") {
  const auto seg = sieve_segment(95, 240);
  const auto at = [&](std::uint64_t n) { return seg[n - 95]; };
  CHECK(at(100).factors == std::vector<PrimePower>{{73, 1}, {137, 1}});
  CHECK(at(100).largest_prime == 137);
  CHECK(at(239).factors == std::vector<PrimePower>{{2, 1}, {13, 4}});
  CHECK(at(239).largest_prime == 13);

  const auto one = sieve_segment(1, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].factors == std::vector<PrimePower>{{2, 1}});
  CHECK(one[0].largest_prime == 2);

  CHECK(largest_prime_factor(3) == 5);
  CHECK(largest_prime_factor(7) == 5);
  CHECK(largest_prime_factor(13) == 17);
  CHECK(largest_prime_factor(1) == 2);
}

TEST_CASE("sieve equals trial division for every n <= 10^4") {
  const auto seg = sieve_segment(1, 10'000);
  REQUIRE(seg.size() == 10'000);
  std::uint64_t mismatches = 0;
  for (const auto& rec : seg) {
    if (rec != oracle_record(rec.n)) ++mismatches;
    check_invariants(rec);
  }
  CHECK(mismatches == 0);
}

TEST_CASE("sieve equals Pollard rho factorization for random n <= 10^8") {
  std::mt19937_64 rng(314159);
  const FactorSieve sieve(100'000'000);
  for (int i = 0; i < 1000; ++i) {
    const std::uint64_t n = 1 + rng() % 100'000'000;
    const auto got = sieve.segment(n, n);
    REQUIRE(got.size() == 1);
    CHECK(got[0] == oracle_record(n, true));
    check_invariants(got[0]);
  }
}

TEST_CASE("segment independence") {
  const FactorSieve sieve(200'000);
  const auto whole = sieve.segment(150'000, 200'000);
  for (std::uint64_t m : {150'000ULL, 150'001ULL, 173'205ULL, 199'999ULL}) {
    auto left = sieve.segment(150'000, m);
    const auto right = sieve.segment(m + 1, 200'000);
    left.insert(left.end(), right.begin(), right.end());
    CHECK(left == whole);
  }

  for (std::size_t seg : {std::size_t{97}, std::size_t{4096}}) {
    for (unsigned workers : {1u, 3u}) {
      std::vector<FactorizationRecord> streamed;
      sieve.for_each(150'000, 200'000, SieveOptions{seg, workers},
                     [&](const FactorizationRecord& r) { streamed.push_back(r); });
      CHECK(streamed == whole);
    }
  }
  std::vector<FactorizationRecord> singles;
  sieve.for_each(150'000, 150'300, SieveOptions{1, 2},
                 [&](const FactorizationRecord& r) { singles.push_back(r); });
  CHECK(singles == std::vector<FactorizationRecord>(whole.begin(), whole.begin() + 301));
}

TEST_CASE("residuals above the sieve bound are prime") {
  const FactorSieve sieve(1'000'000);
  std::uint64_t large = 0;
  sieve.for_each(1, 1'000'000, SieveOptions{1 << 16, 4}, [&](const FactorizationRecord& r) {
    if (r.largest_prime > r.n) {
      ++large;
      if (!is_prime(r.largest_prime)) FAIL("composite residual at n=" << r.n);
    }
    if (reconstruct(r) != r.n * r.n + 1) FAIL("product mismatch at n=" << r.n);
  });
  CHECK(large > 0);
}

TEST_CASE("records_scan") {
  const auto tiny = records_scan(3);
  REQUIRE(tiny.size() == 2);
  CHECK(tiny[0].n == 2);
  CHECK(tiny[0].P == 5);
  CHECK(tiny[0].exponent == doctest::Approx(2.321928).epsilon(1e-6));
  CHECK(tiny[0].is_record);
  CHECK(tiny[1].n == 3);
  CHECK(tiny[1].P == 5);
  CHECK_FALSE(tiny[1].is_record);

  const auto rows = records_scan(10'000, SieveOptions{1000, 4});
  REQUIRE(rows.size() == 9'999);
  std::uint64_t oracle_max = 0, running = 0, last_record = 0;
  for (const auto& row : rows) {
    oracle_max = std::max(oracle_max, oracle::trial_factor(row.n * row.n + 1).back().p);
    running = std::max(running, row.P);
    CHECK(row.exponent > 0);
    if (row.is_record) {
      CHECK(row.P > last_record);
      last_record = row.P;
    }
  }
  CHECK(running == oracle_max);
  CHECK(last_record == oracle_max);

  const auto upto20 = records_scan(20);
  CHECK(std::any_of(upto20.begin(), upto20.end(),
                    [](const RecordRow& r) { return r.n == 13 && r.P == 17; }));
  // 6^2 + 1 = 37 already exceeds 17, so n = 13 is not a running maximum.
  CHECK_FALSE(upto20[13 - 2].is_record);
}

TEST_CASE("incidence_counts") {
  const IncidenceMap ten = incidence_counts(10, 1000, false);
  CHECK(ten.at(5) == 4);
  CHECK(ten.at(13) == 1);
  for (const auto& [p, count] : ten) CHECK((p == 2 || p % 4 == 1));

  for (std::uint64_t x : {100ULL, 1000ULL, 10'000ULL}) {
    const IncidenceMap counts = incidence_counts(x, 2 * x, false);
    for (const RootPair& r : root_table(5, 2 * x)) {
      const auto it = counts.find(r.p);
      const std::uint64_t got = it == counts.end() ? 0 : it->second;
      CHECK(got == count_exact(x, r));
    }
  }

  SUBCASE("prime powers are counted separately and match their lifted roots") {
    const std::uint64_t x = 5000;
    const IncidenceMap pp = incidence_counts(x, 4 * x * x + 1, true);
    for (std::uint64_t p : {5ULL, 13ULL, 17ULL}) {
      const RootPair root = sqrt_minus_one(p);
      for (unsigned k = 1; k <= 4; ++k) {
        const PrimePowerRoot lift = hensel_lift(root, k);
        // The lifted pair (r, m - r) plays the role of (b, p - b) modulo m.
        const std::uint64_t expect = count_exact(x, RootPair{lift.m, lift.r});
        const auto it = pp.find(lift.m);
        CHECK((it == pp.end() ? 0 : it->second) == expect);
      }
    }
    CHECK(pp.at(2) == x / 2);  // odd n only, and never 4
    CHECK(pp.find(4) == pp.end());
  }

  CHECK_THROWS_AS(incidence_counts((std::uint64_t{1} << 30) + 1, 10, false), std::invalid_argument);
}

TEST_CASE("range errors") {
  CHECK_THROWS_AS(FactorSieve(kMaxSieveN + 1), std::overflow_error);
  CHECK_THROWS_AS(sieve_segment(kMaxSieveN, kMaxSieveN + 1), std::overflow_error);
  const FactorSieve sieve(100);
  CHECK_THROWS(sieve.segment(0, 5));
  CHECK_THROWS(sieve.segment(50, 101));
  CHECK_THROWS(sieve.segment(60, 50));

  FactorizationRecord huge{1, {{18446744073709551557ULL, 2}}, 18446744073709551557ULL};
  CHECK_THROWS_AS(reconstruct(huge), std::overflow_error);
}
