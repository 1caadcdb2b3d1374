#include "lpf/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "lpf/chebsums.hpp"
#include "lpf/modmath.hpp"
#include "lpf/polysieve.hpp"
#include "lpf/rootcount.hpp"
#include "lpf/verifier.hpp"

namespace lpf::cli {

namespace {

// A self-check inside a pipeline failed; maps to kExitCheckFailed.
class CheckFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr std::uint64_t kMaxIntervalX = kMaxSieveN / 2;

void require(bool ok, const std::string& message) {
  if (!ok) throw std::invalid_argument(message);
}

SieveOptions sieve_options(const RunConfig& cfg) { return {cfg.segment_size, cfg.workers}; }

std::string factorization_string(const FactorizationRecord& rec) {
  std::string s;
  for (const auto& [p, e] : rec.factors) {
    if (!s.empty()) s += ';';
    s += std::to_string(p) + '^' + std::to_string(e);
  }
  return s;
}

void run_sieve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.lo >= 2 && cfg.lo <= cfg.hi, "sieve: need 2 <= lo <= hi");
  require(cfg.hi <= kMaxSieveN, "sieve: hi must be <= 2^31");
  TableWriter table(out, cfg.format, {"n", "n2p1", "factorization", "largest_prime", "exponent"});
  const FactorSieve sieve(cfg.hi);
  std::uint64_t checked = 0;
  sieve.for_each(cfg.lo, cfg.hi, sieve_options(cfg), [&](const FactorizationRecord& rec) {
    const std::uint64_t value = rec.n * rec.n + 1;
    if (reconstruct(rec) != value) {
      throw CheckFailure("factorization of n=" + std::to_string(rec.n) + " does not multiply back");
    }
    const auto& top = rec.factors.back();
    if (top.p > cfg.hi) {
      ++checked;
      if (!is_prime(top.p)) {
        throw CheckFailure("residual " + std::to_string(top.p) + " of n=" +
                           std::to_string(rec.n) + " is composite");
      }
    }
    table.row({rec.n, value, factorization_string(rec), rec.largest_prime,
               std::log(static_cast<double>(rec.largest_prime)) /
                   std::log(static_cast<double>(rec.n))});
  });
  err << "sieve: " << (cfg.hi - cfg.lo + 1) << " values, " << checked
      << " large residuals verified prime\n";
}

void run_records(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(cfg.n_max >= 2 && cfg.n_max <= kMaxSieveN, "records: need 2 <= n-max <= 2^31");
  TableWriter table(out, cfg.format, {"n", "P", "exponent", "is_record"});
  std::uint64_t records = 0;
  records_scan(cfg.n_max, sieve_options(cfg), [&](const RecordRow& row) {
    if (row.is_record) ++records;
    if (cfg.records_only && !row.is_record) return;
    table.row({row.n, row.P, row.exponent, row.is_record});
  });
  err << "records: " << records << " running maxima up to n=" << cfg.n_max << '\n';
}

void run_sums(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require(!cfg.xs.empty(), "sums: --x is required");
  require(cfg.q >= 1 && cfg.q <= 10000, "sums: q must lie in [1, 10^4]");
  require(gcd(cfg.a % cfg.q, cfg.q) == 1, "sums: gcd(a, q) must be 1");
  const std::vector<double> deltas = cfg.deltas.empty() ? std::vector<double>{0.0} : cfg.deltas;
  for (auto x : cfg.xs) {
    require(x >= 2, "sums: x must be >= 2");
    for (double d : deltas) {
      require(d >= 0, "sums: delta must be >= 0");
      power_cutoff(x, d);
    }
  }
  TableWriter table(out, cfg.format,
                    {"x", "delta", "cutoff", "R", "S", "residual_R", "residual_S", "term_count",
                     "mertens"});
  for (auto x : cfg.xs) {
    for (double d : deltas) {
      const SumLedger s = sum_ledger(x, d, cfg.q, cfg.a, cfg.workers);
      table.row({s.x, s.delta, s.cutoff, s.R, s.S, s.residual_R, s.residual_S, s.term_count,
                 s.mertens});
    }
  }
}

void run_root_counts(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::uint64_t x_max = cfg.xs.empty() ? 1000000 : cfg.xs.front();
  require(x_max >= 1 && x_max <= kMaxIntervalX, "verify root-counts: need 1 <= x <= 2^30");
  require(cfg.p_max >= 5 && cfg.p_max <= kMaxSieveN, "verify root-counts: need 5 <= p-max <= 2^31");
  const auto roots = root_table(5, cfg.p_max);

  TableWriter table(out, cfg.format,
                    {"x", "p", "b", "exact", "floor_identity", "bound_num", "bound_den", "ok"},
                    {"root-counts seed=" + std::to_string(cfg.seed) +
                     " trials=" + std::to_string(cfg.trials)});
  std::mt19937_64 rng(cfg.seed);
  std::uint64_t failures = 0;
  for (std::uint64_t t = 0; t < cfg.trials; ++t) {
    const std::uint64_t x = 1 + rng() % x_max;
    const RootPair& root = roots[rng() % roots.size()];
    const SolutionCount c = solution_count(x, root);
    const bool ok = c.exact == c.floor_identity && as_rational(c.exact) <= c.bound;
    if (!ok) ++failures;
    table.row({c.x, c.p, root.b, c.exact, c.floor_identity, c.bound.num, c.bound.den, ok});
  }
  err << "verify root-counts: seed=" << cfg.seed << " trials=" << cfg.trials
      << " failures=" << failures << '\n';
  if (failures > 0) throw CheckFailure("root-counts: " + std::to_string(failures) + " failing trials");
}

void run_coverage(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.xs.empty(), "coverage: --x is required");
  for (auto x : cfg.xs) require(x >= 2 && x <= kMaxIntervalX, "coverage: need 2 <= x <= 2^30");
  require(cfg.tail_tolerance > 0 && cfg.tail_tolerance < 1,
          "coverage: tail tolerance must lie in (0, 1)");
  TableWriter table(out, cfg.format, {"x", "y", "C", "rho", "with_prime_powers"});
  for (auto x : cfg.xs) {
    const CoverageCurve curve =
        coverage_curve(x, cfg.prime_powers, cfg.tail_tolerance, sieve_options(cfg));
    if (cfg.grid_only) {
      const std::uint64_t top = 4 * x * x + 1;
      for (int step = 0; step <= 10; ++step) {
        const std::uint64_t y = power_cutoff(x, step / 10.0, top);
        table.row({x, y, curve.rho_at(y) * curve.total, curve.rho_at(y), cfg.prime_powers});
      }
    } else {
      for (const auto& pt : curve.points) table.row({x, pt.y, pt.C, pt.rho, cfg.prime_powers});
    }
    err << "coverage x=" << x << " total=" << format_double(curve.total);
    for (double tol : {1e-2, 1e-3, 1e-4}) {
      const auto ds = curve.delta_star_at(tol);
      err << " delta_star(" << tol << ")=" << (ds ? format_double(*ds) : "unreached");
    }
    err << '\n';
  }
}

void run_chain(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  require(!cfg.xs.empty(), "chain: --x is required");
  std::vector<double> deltas = cfg.deltas;
  if (deltas.empty()) {
    for (int step = 0; step <= 10; ++step) deltas.push_back(step / 10.0);
  }
  for (auto x : cfg.xs) {
    require(x >= 2 && x <= kMaxIntervalX, "chain: need 2 <= x <= 2^30");
    for (double d : deltas) {
      require(d >= 0 && d <= 1, "chain: delta must lie in [0, 1]");
      power_cutoff(x, d);
    }
  }
  TableWriter table(out, cfg.format,
                    {"x", "delta", "cutoff", "lhs_exact", "lhs_main", "lambda_side",
                     "lambda_rel_error", "prime_power_mass", "R", "S", "n_trunc", "n_trunc_odd",
                     "margin", "margin_exact", "mass_above_cutoff", "power_excess_below",
                     "bound_holds", "summand_checks", "summand_violations"});
  std::uint64_t violations = 0;
  for (auto x : cfg.xs) {
    const IntervalScan scan = scan_interval(x, sieve_options(cfg));
    for (double d : deltas) {
      const ChainLedger c = contradiction_probe(scan, d, cfg.workers);
      violations += c.summand_violations;
      if (c.lambda_rel_error > 1e-9) ++violations;
      table.row({c.x, c.delta, c.cutoff, c.lhs_exact, c.lhs_main, c.lambda_side,
                 c.lambda_rel_error, c.prime_power_mass, c.R, c.S, c.n_trunc, c.n_trunc_odd,
                 c.margin, c.margin_exact, c.mass_above_cutoff, c.power_excess_below,
                 c.bound_holds, c.summand_checks, c.summand_violations});
    }
  }
  if (violations > 0) {
    err << "chain: " << violations << " exact-identity violations\n";
    throw CheckFailure("chain: exact identities violated");
  }
}

void run_probe(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  require(!cfg.xs.empty(), "probe: --x is required");
  for (auto x : cfg.xs) require(x >= 2 && x <= kMaxIntervalX, "probe: need 2 <= x <= 2^30");
  TableWriter table(out, cfg.format,
                    {"x", "max_P", "argmax_n", "exponent", "threshold", "in_interval"});
  for (auto x : cfg.xs) {
    const LargestPrimeProbe t = largest_prime_probe(x, sieve_options(cfg));
    table.row({t.x, t.max_P, t.argmax_n, t.exponent, t.threshold, t.in_interval});
  }
}

unsigned default_workers() {
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  cfg.workers = default_workers();
  std::string format_name = "csv";

  CLI::App app{"Factor n^2+1 over intervals and measure where its prime divisors live", "lpf"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--workers", cfg.workers, "Worker threads")
      ->envname(kWorkersEnv)
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--segment-size", cfg.segment_size, "Values per sieve segment")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 30));
  app.add_option("--format", format_name, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));
  app.add_option("--output,-o", cfg.output, "Write data here instead of standard output");

  auto* sieve = app.add_subcommand("sieve", "Factor n^2+1 for lo <= n <= hi");
  sieve->add_option("--lo", cfg.lo)->required();
  sieve->add_option("--hi", cfg.hi)->required();

  auto* records = app.add_subcommand("records", "Largest prime factor of n^2+1 and running maxima");
  records->add_option("--n-max", cfg.n_max)->required();
  records->add_flag("--records-only", cfg.records_only, "Emit only running-maximum rows");

  auto* sums = app.add_subcommand("sums", "Mertens sum, R(x) and S(x) at x^(1+delta)");
  sums->add_option("--x", cfg.xs)->required()->delimiter(',');
  sums->add_option("--delta", cfg.deltas)->delimiter(',');
  sums->add_option("--q", cfg.q);
  sums->add_option("--a", cfg.a);

  auto* verify = app.add_subcommand("verify", "Randomized exact checks");
  verify->require_subcommand(1);
  auto* root_counts =
      verify->add_subcommand("root-counts", "Root counts: stepping vs floors vs bound");
  root_counts->alias("lemma21");
  root_counts->add_option("--x", cfg.xs, "Upper end for random x (default 10^6)")->expected(1);
  root_counts->add_option("--p-max", cfg.p_max, "Upper end for random primes (default 10^5)");
  root_counts->add_option("--trials", cfg.trials);
  root_counts->add_option("--seed", cfg.seed);

  auto* coverage = app.add_subcommand("coverage", "Cumulative log-mass of divisors up to y");
  coverage->add_option("--x", cfg.xs)->required()->delimiter(',');
  coverage->add_flag("--prime-powers", cfg.prime_powers, "Index by prime powers p^k");
  coverage->add_option("--tail-tolerance", cfg.tail_tolerance);
  coverage->add_flag("--grid", cfg.grid_only, "Only rows at y = x^(1+delta), delta = 0..1");

  auto* chain = app.add_subcommand("chain", "Log-sum, von Mangoldt side, N vs R+S per delta");
  chain->add_option("--x", cfg.xs)->required()->delimiter(',');
  chain->add_option("--delta-grid", cfg.deltas)->delimiter(',');

  auto* probe = app.add_subcommand("probe", "Largest prime divisor over (x, 2x]");
  probe->add_option("--x", cfg.xs)->required()->delimiter(',');

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  try {
    cfg.format = parse_format(format_name);
    std::ofstream file;
    std::ostream* data = &out;
    if (!cfg.output.empty()) {
      file.open(cfg.output, std::ios::binary);
      if (!file) throw std::invalid_argument("cannot open output file " + cfg.output);
      data = &file;
    }
    if (sieve->parsed()) {
      run_sieve(cfg, *data, err);
    } else if (records->parsed()) {
      run_records(cfg, *data, err);
    } else if (sums->parsed()) {
      run_sums(cfg, *data, err);
    } else if (root_counts->parsed()) {
      run_root_counts(cfg, *data, err);
    } else if (coverage->parsed()) {
      run_coverage(cfg, *data, err);
    } else if (chain->parsed()) {
      run_chain(cfg, *data, err);
    } else if (probe->parsed()) {
      run_probe(cfg, *data, err);
    }
  } catch (const CheckFailure& e) {
    err << "check failed: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::overflow_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}

}  // namespace lpf::cli
