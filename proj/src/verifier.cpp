#include "lpf/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "lpf/chebsums.hpp"
#include "lpf/compensated_sum.hpp"
#include "lpf/rootcount.hpp"

namespace lpf {

namespace {

void check_interval_x(std::uint64_t x, std::uint64_t min_x) {
  if (x < min_x || x > kMaxSieveN / 2) {
    throw std::invalid_argument("interval base x=" + std::to_string(x) + " outside [" +
                                std::to_string(min_x) + ", 2^30]");
  }
}

// log(n^2 + 1) without squaring n in floating point.
double log_n2p1(std::uint64_t n) {
  const double dn = static_cast<double>(n);
  return 2.0 * std::log(dn) + std::log1p(1.0 / (dn * dn));
}

double log_of(std::uint64_t p) { return std::log(static_cast<double>(p)); }

}  // namespace

double lhs_logsum(std::uint64_t x) {
  check_interval_x(x, 1);
  CompensatedSum sum;
  for (std::uint64_t n = x + 1; n <= 2 * x; ++n) sum.add(log_n2p1(n));
  return sum.value();
}

IntervalScan scan_interval(std::uint64_t x, const SieveOptions& options) {
  check_interval_x(x, 1);
  IntervalScan scan;
  scan.x = x;
  CompensatedSum lhs, lambda, powers;
  const FactorSieve sieve(2 * x);
  sieve.for_each(x + 1, 2 * x, options, [&](const FactorizationRecord& rec) {
    lhs.add(log_n2p1(rec.n));
    for (const auto& [p, e] : rec.factors) {
      const double log_p = log_of(p);
      lambda.add(e * log_p);
      if (e > 1) powers.add((e - 1) * log_p);
      ++scan.prime_incidence[p];
      scan.exponent_totals[p] += e;
      std::uint64_t d = p;
      for (unsigned k = 1; k <= e; ++k) {
        auto& entry = scan.power_incidence[d];
        entry.p = p;
        ++entry.count;
        if (k < e) d *= p;
      }
    }
    if (rec.largest_prime > scan.max_P) {
      scan.max_P = rec.largest_prime;
      scan.argmax_n = rec.n;
    }
  });
  scan.lhs_exact = lhs.value();
  scan.lambda_side = lambda.value();
  scan.prime_power_mass = powers.value();
  return scan;
}

ChainLedger lambda_identity_check(const IntervalScan& scan) {
  ChainLedger ledger;
  const double dx = static_cast<double>(scan.x);
  ledger.x = scan.x;
  ledger.lhs_exact = scan.lhs_exact;
  ledger.lhs_main = 2.0 * dx * std::log(dx);
  ledger.lambda_side = scan.lambda_side;
  ledger.lambda_rel_error = std::fabs(scan.lhs_exact - scan.lambda_side) / scan.lhs_exact;
  ledger.prime_power_mass = scan.prime_power_mass;
  ledger.lower_bound_constant = (scan.lhs_exact - ledger.lhs_main) / dx;
  return ledger;
}

ChainLedger lambda_identity_check(std::uint64_t x, const SieveOptions& options) {
  return lambda_identity_check(scan_interval(x, options));
}

ChainLedger contradiction_probe(const IntervalScan& scan, double delta, unsigned workers) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::invalid_argument("contradiction_probe: delta must lie in [0, 1]");
  }
  ChainLedger ledger = lambda_identity_check(scan);
  ledger.has_delta = true;
  ledger.delta = delta;
  ledger.cutoff = power_cutoff(scan.x, delta);

  const PrimaryTerm r = primary_term(scan.x, delta, workers);
  const SecondaryTerm s = secondary_term(scan.x, delta, workers);
  ledger.R = r.R;
  ledger.S = s.S;

  CompensatedSum n_trunc, n_trunc_odd;
  for (const auto& [p, count] : scan.prime_incidence) {
    if (p > ledger.cutoff) break;
    const double term = log_of(p) * static_cast<double>(count);
    n_trunc.add(term);
    if (p != 2) n_trunc_odd.add(term);
  }
  ledger.n_trunc = n_trunc.value();
  ledger.n_trunc_odd = n_trunc_odd.value();

  CompensatedSum above, excess;
  for (const auto& [p, total_e] : scan.exponent_totals) {
    const double log_p = log_of(p);
    if (p > ledger.cutoff) {
      above.add(static_cast<double>(total_e) * log_p);
    } else {
      excess.add(static_cast<double>(total_e - scan.prime_incidence.at(p)) * log_p);
    }
  }
  ledger.mass_above_cutoff = above.value();
  ledger.power_excess_below = excess.value();

  ledger.margin = ledger.lhs_main - (ledger.R + ledger.S);
  ledger.margin_exact = ledger.lhs_exact - ledger.n_trunc;
  ledger.bound_holds = ledger.n_trunc <= ledger.R + ledger.S;

  for (const RootPair& root : root_table(5, ledger.cutoff)) {
    const auto it = scan.prime_incidence.find(root.p);
    const std::uint64_t incidence = it == scan.prime_incidence.end() ? 0 : it->second;
    ++ledger.summand_checks;
    if (as_rational(incidence) > fractional_part_bound(scan.x, root)) {
      ++ledger.summand_violations;
    }
  }
  return ledger;
}

ChainLedger contradiction_probe(std::uint64_t x, double delta, const SieveOptions& options) {
  return contradiction_probe(scan_interval(x, options), delta, options.workers);
}

double CoverageCurve::rho_at(std::uint64_t y) const {
  const auto it = std::upper_bound(points.begin(), points.end(), y,
                                   [](std::uint64_t v, const CoveragePoint& pt) { return v < pt.y; });
  if (it == points.begin()) return 0.0;
  return std::prev(it)->rho;
}

std::optional<double> CoverageCurve::delta_star_at(double tolerance) const {
  const double target = 1.0 - tolerance;
  for (const auto& pt : points) {
    if (pt.rho >= target) {
      const double d = std::log(static_cast<double>(pt.y)) / std::log(static_cast<double>(x)) - 1.0;
      return std::max(0.0, d);
    }
  }
  return std::nullopt;
}

CoverageCurve coverage_curve(const IntervalScan& scan, bool with_prime_powers,
                             double tail_tolerance) {
  if (scan.x < 2) throw std::invalid_argument("coverage_curve: x must be >= 2");
  if (!(tail_tolerance > 0.0 && tail_tolerance < 1.0)) {
    throw std::invalid_argument("coverage_curve: tail tolerance must lie in (0, 1)");
  }
  CoverageCurve curve;
  curve.x = scan.x;
  curve.with_prime_powers = with_prime_powers;
  curve.total = scan.lhs_exact;
  curve.tail_tolerance = tail_tolerance;

  CompensatedSum cumulative;
  if (with_prime_powers) {
    // Every key is p^k; its weight is log p, the von Mangoldt value.
    for (const auto& [d, entry] : scan.power_incidence) {
      cumulative.add(log_of(entry.p) * static_cast<double>(entry.count));
      curve.points.push_back({d, cumulative.value(), 0.0});
    }
  } else {
    for (const auto& [p, count] : scan.prime_incidence) {
      cumulative.add(log_of(p) * static_cast<double>(count));
      curve.points.push_back({p, cumulative.value(), 0.0});
    }
  }
  const std::uint64_t top = 4 * scan.x * scan.x + 1;
  if (curve.points.empty() || curve.points.back().y < top) {
    curve.points.push_back({top, cumulative.value(), 0.0});
  }
  for (auto& pt : curve.points) pt.rho = pt.C / curve.total;
  curve.delta_star = curve.delta_star_at(tail_tolerance);
  return curve;
}

CoverageCurve coverage_curve(std::uint64_t x, bool with_prime_powers, double tail_tolerance,
                             const SieveOptions& options) {
  check_interval_x(x, 2);
  return coverage_curve(scan_interval(x, options), with_prime_powers, tail_tolerance);
}

std::vector<std::pair<double, double>> coverage_grid(const CoverageCurve& curve) {
  std::vector<std::pair<double, double>> grid;
  const std::uint64_t top = 4 * curve.x * curve.x + 1;
  for (int step = 0; step <= 10; ++step) {
    const double delta = step / 10.0;
    grid.emplace_back(delta, curve.rho_at(power_cutoff(curve.x, delta, top)));
  }
  return grid;
}

LargestPrimeProbe largest_prime_probe(const IntervalScan& scan) {
  LargestPrimeProbe probe;
  const double dx = static_cast<double>(scan.x);
  probe.x = scan.x;
  probe.max_P = scan.max_P;
  probe.argmax_n = scan.argmax_n;
  probe.exponent = std::log(static_cast<double>(scan.max_P)) / std::log(dx);
  probe.threshold = std::pow(dx, 1.5);
  const u128 p = scan.max_P;
  const u128 xx = scan.x;
  probe.in_interval = p * p >= xx * xx * xx && p <= 4 * xx * xx + 1;
  return probe;
}

LargestPrimeProbe largest_prime_probe(std::uint64_t x, const SieveOptions& options) {
  check_interval_x(x, 2);
  return largest_prime_probe(scan_interval(x, options));
}

}  // namespace lpf
