#pragma once

// End-to-end measurements over one interval (x, 2x]: the exact log-sum of
// n^2 + 1, its von Mangoldt decomposition, the truncated prime sum N against
// R + S, the coverage curve of prime (power) divisors, and the largest prime
// divisor found.
//
// Nothing here asserts an asymptotic claim; every quantity is a measurement.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "lpf/polysieve.hpp"

namespace lpf {

/// Sum of log(n^2 + 1) over x < n <= 2x, ascending, compensated.
double lhs_logsum(std::uint64_t x);

/// Per-interval data gathered in one pass of the factor sieve.
struct IntervalScan {
  std::uint64_t x = 0;
  double lhs_exact = 0;
  double lambda_side = 0;       // sum over n of sum e * log p
  double prime_power_mass = 0;  // part of lambda_side from p^k, k >= 2
  IncidenceMap prime_incidence;   // p -> #n with p | n^2 + 1
  IncidenceMap exponent_totals;   // p -> sum over n of the exponent of p
  struct PowerIncidence {
    std::uint64_t p = 0;
    std::uint64_t count = 0;
  };
  std::map<std::uint64_t, PowerIncidence> power_incidence;  // p^k, k >= 1
  std::uint64_t max_P = 0;
  std::uint64_t argmax_n = 0;
};

/// Requires 1 <= x <= 2^30.
IntervalScan scan_interval(std::uint64_t x, const SieveOptions& options = {});

struct ChainLedger {
  std::uint64_t x = 0;
  double lhs_exact = 0;
  double lhs_main = 0;  // 2x log x
  double lambda_side = 0;
  double lambda_rel_error = 0;
  double prime_power_mass = 0;
  double lower_bound_constant = 0;  // (lhs_exact - 2x log x) / x

  // Filled by contradiction_probe only.
  bool has_delta = false;
  double delta = 0;
  std::uint64_t cutoff = 0;
  double R = 0;
  double S = 0;
  double n_trunc = 0;      // sum over p <= cutoff of log p * incidence(p), p = 2 included
  double n_trunc_odd = 0;  // same without p = 2
  double margin = 0;       // lhs_main - (R + S)
  double margin_exact = 0;  // lhs_exact - n_trunc
  double mass_above_cutoff = 0;    // sum e log p over p > cutoff
  double power_excess_below = 0;   // sum (e-1) log p over p <= cutoff
  bool bound_holds = false;        // n_trunc <= R + S
  std::uint64_t summand_checks = 0;
  std::uint64_t summand_violations = 0;  // p with incidence(p) > rational bound
};

ChainLedger lambda_identity_check(std::uint64_t x, const SieveOptions& options = {});
ChainLedger lambda_identity_check(const IntervalScan& scan);

/// Requires 0 <= delta <= 1 and x^(1+delta) <= 2^31.
ChainLedger contradiction_probe(std::uint64_t x, double delta, const SieveOptions& options = {});
ChainLedger contradiction_probe(const IntervalScan& scan, double delta, unsigned workers = 1);

struct CoveragePoint {
  std::uint64_t y = 0;
  double C = 0;
  double rho = 0;
};

struct CoverageCurve {
  std::uint64_t x = 0;
  bool with_prime_powers = false;
  double total = 0;
  double tail_tolerance = 1e-3;
  std::vector<CoveragePoint> points;  // ascending y, last y = 4x^2 + 1
  std::optional<double> delta_star;

  /// rho at cutoff y (0 below the first divisor).
  double rho_at(std::uint64_t y) const;
  /// Smallest delta >= 0 with rho(x^(1+delta)) >= 1 - tolerance, if reached.
  std::optional<double> delta_star_at(double tolerance) const;
};

inline constexpr double kDefaultTailTolerance = 1e-3;

/// Requires 2 <= x <= 2^30.
CoverageCurve coverage_curve(std::uint64_t x, bool with_prime_powers,
                             double tail_tolerance = kDefaultTailTolerance,
                             const SieveOptions& options = {});
CoverageCurve coverage_curve(const IntervalScan& scan, bool with_prime_powers,
                             double tail_tolerance = kDefaultTailTolerance);

/// delta grid 0, 0.1, ..., 1.0 paired with rho(x^(1+delta)).
std::vector<std::pair<double, double>> coverage_grid(const CoverageCurve& curve);

struct LargestPrimeProbe {
  std::uint64_t x = 0;
  std::uint64_t max_P = 0;
  std::uint64_t argmax_n = 0;
  double exponent = 0;   // log max_P / log x
  double threshold = 0;  // x^(3/2)
  bool in_interval = false;  // x^(3/2) <= max_P <= 4x^2 + 1, compared exactly
};

LargestPrimeProbe largest_prime_probe(std::uint64_t x, const SieveOptions& options = {});
LargestPrimeProbe largest_prime_probe(const IntervalScan& scan);

}  // namespace lpf
