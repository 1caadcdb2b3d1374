#include "lpf/chebsums.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lpf/compensated_sum.hpp"
#include "lpf/ordered_pool.hpp"
#include "lpf/rootcount.hpp"

namespace lpf {

namespace {

// Folds per-prime contributions over primes in [lo, hi] (restricted to the
// residue class) block by block. Acc needs add(const Acc&).
template <class Acc, class PerPrime>
Acc reduce_primes(std::uint64_t lo, std::uint64_t hi, ResidueFilter filter, unsigned workers,
                  PerPrime per_prime) {
  Acc total{};
  if (lo > hi) return total;
  const std::uint64_t first_block = lo / kSumBlockSpan;
  const std::uint64_t block_count = hi / kSumBlockSpan - first_block + 1;
  run_ordered(
      block_count, workers,
      [&](std::size_t i) {
        Acc acc{};
        const std::uint64_t block_lo = std::max(lo, (first_block + i) * kSumBlockSpan);
        const std::uint64_t block_hi = std::min(hi, (first_block + i + 1) * kSumBlockSpan - 1);
        for_each_prime(block_lo, block_hi, filter, [&](std::uint64_t p) { per_prime(acc, p); });
        return acc;
      },
      [&](Acc&& acc) { total.add(acc); });
  return total;
}

struct MertensAcc {
  CompensatedSum sum;
  std::uint64_t count = 0;
  void add(const MertensAcc& o) {
    sum.add(o.sum);
    count += o.count;
  }
};

MertensAcc mertens_acc(std::uint64_t lo, std::uint64_t z, std::uint64_t q, std::uint64_t a,
                       unsigned workers) {
  return reduce_primes<MertensAcc>(lo, z, ResidueFilter{q, a}, workers,
                                   [](MertensAcc& acc, std::uint64_t p) {
                                     const double dp = static_cast<double>(p);
                                     acc.sum.add(std::log(dp) / dp);
                                     ++acc.count;
                                   });
}

void check_class(std::uint64_t q, std::uint64_t a) {
  if (q == 0 || gcd(a % q, q) != 1) {
    throw std::invalid_argument("residue class " + std::to_string(a) + " mod " +
                                std::to_string(q) + " is not coprime");
  }
}

}  // namespace

std::uint64_t totient(std::uint64_t q) {
  if (q == 0) throw std::invalid_argument("totient: q must be >= 1");
  std::uint64_t result = q;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d != 0) continue;
    while (q % d == 0) q /= d;
    result -= result / d;
  }
  if (q > 1) result -= result / q;
  return result;
}

std::uint64_t pi_counting(std::uint64_t z, std::uint64_t q, std::uint64_t a, unsigned workers) {
  check_class(q, a);
  return mertens_acc(1, z, q, a, workers).count;
}

double mertens_ap(std::uint64_t z, std::uint64_t q, std::uint64_t a, unsigned workers) {
  check_class(q, a);
  return mertens_acc(1, z, q, a, workers).sum.value();
}

std::uint64_t power_cutoff(std::uint64_t x, double delta, std::uint64_t limit) {
  if (x < 1) throw std::invalid_argument("cutoff: x must be >= 1");
  if (!(delta >= 0)) throw std::invalid_argument("cutoff: delta must be >= 0");
  const double y = std::pow(static_cast<double>(x), 1.0 + delta);
  const double guarded = std::nextafter(y, std::numeric_limits<double>::infinity());
  if (!(guarded < 0x1p63) || static_cast<std::uint64_t>(std::floor(guarded)) > limit) {
    throw std::overflow_error("cutoff x^(1+delta) for x=" + std::to_string(x) + " exceeds " +
                              std::to_string(limit));
  }
  return static_cast<std::uint64_t>(std::floor(guarded));
}

PrimaryTerm primary_term(std::uint64_t x, double delta, unsigned workers) {
  return primary_term(x, delta, 4, 1, workers);
}

PrimaryTerm primary_term(std::uint64_t x, double delta, std::uint64_t q, std::uint64_t a,
                         unsigned workers) {
  check_class(q, a);
  PrimaryTerm t;
  t.x = x;
  t.delta = delta;
  t.q = q;
  t.a = a;
  t.cutoff = power_cutoff(x, delta);
  const auto acc = mertens_acc(1, t.cutoff, q, a, workers);
  t.mertens = acc.sum.value();
  t.term_count = acc.count;
  const double dx = static_cast<double>(x);
  t.R = 2.0 * dx * t.mertens;
  t.main_term = 2.0 * (1.0 + delta) * dx * std::log(dx) / static_cast<double>(totient(q));
  t.residual = t.R - t.main_term;
  return t;
}

namespace {

struct SecondaryAcc {
  CompensatedSum S, minus, plus, plus_mod8;
  CompensatedSum head_minus, tail_minus, wrap_minus, head_plus, tail_plus;
  std::uint64_t wrap_count = 0;
  std::uint64_t count = 0;

  void add(const SecondaryAcc& o) {
    S.add(o.S);
    minus.add(o.minus);
    plus.add(o.plus);
    plus_mod8.add(o.plus_mod8);
    head_minus.add(o.head_minus);
    tail_minus.add(o.tail_minus);
    wrap_minus.add(o.wrap_minus);
    head_plus.add(o.head_plus);
    tail_plus.add(o.tail_plus);
    wrap_count += o.wrap_count;
    count += o.count;
  }
};

// {z/p} for p <= z through z - p*floor(z/p); kept apart from residue() so the
// split evaluation does not share the direct path.
double generic_fraction(std::uint64_t z, std::uint64_t p) {
  const std::uint64_t whole = z / p;
  return static_cast<double>(z - whole * p) / static_cast<double>(p);
}

}  // namespace

SecondaryTerm secondary_term(std::uint64_t x, double delta, unsigned workers) {
  SecondaryTerm t;
  t.x = x;
  t.delta = delta;
  t.cutoff = power_cutoff(x, delta);

  const auto acc = reduce_primes<SecondaryAcc>(
      5, t.cutoff, ResidueFilter{4, 1}, workers, [x](SecondaryAcc& acc, std::uint64_t p) {
        const RootPair root = sqrt_minus_one_unchecked(p);
        const double dp = static_cast<double>(p);
        const double log_p = std::log(dp);
        const i128 xm = static_cast<i128>(x) - root.b;
        const i128 xp = static_cast<i128>(x) + root.b;

        const double frac_minus = static_cast<double>(residue(xm, p)) / dp;
        const double frac_plus = static_cast<double>(residue(xp, p)) / dp;
        acc.S.add(frac_minus * log_p);
        acc.S.add(frac_plus * log_p);
        acc.minus.add(frac_minus * log_p);
        acc.plus.add(frac_plus * log_p);
        if (p % 8 == 1) acc.plus_mod8.add(frac_plus * log_p);

        if (xm >= static_cast<i128>(p)) {
          acc.head_minus.add(generic_fraction(static_cast<std::uint64_t>(xm), p) * log_p);
        } else {
          acc.tail_minus.add(static_cast<double>(xm) * log_p / dp);
          if (xm < 0) {
            acc.wrap_minus.add(log_p);
            ++acc.wrap_count;
          }
        }
        if (xp >= static_cast<i128>(p)) {
          acc.head_plus.add(generic_fraction(static_cast<std::uint64_t>(xp), p) * log_p);
        } else {
          acc.tail_plus.add(static_cast<double>(xp) * log_p / dp);
        }
        ++acc.count;
      });

  t.S = acc.S.value();
  t.minus_sum = acc.minus.value();
  t.plus_sum = acc.plus.value();
  t.plus_sum_mod8 = acc.plus_mod8.value();
  t.head_minus = acc.head_minus.value();
  t.tail_minus = acc.tail_minus.value();
  t.wrap_minus = acc.wrap_minus.value();
  t.head_plus = acc.head_plus.value();
  t.tail_plus = acc.tail_plus.value();
  t.wrap_count = acc.wrap_count;
  t.term_count = acc.count;

  CompensatedSum split;
  for (double part : {t.head_minus, t.tail_minus, t.wrap_minus, t.head_plus, t.tail_plus}) {
    split.add(part);
  }
  t.split_total = split.value();

  const double dx = static_cast<double>(x);
  t.main_term = delta * dx * std::log(dx);
  t.residual = t.S - t.main_term;
  return t;
}

SumLedger sum_ledger(std::uint64_t x, double delta, std::uint64_t q, std::uint64_t a,
                     unsigned workers) {
  const PrimaryTerm r = primary_term(x, delta, q, a, workers);
  const SecondaryTerm s = secondary_term(x, delta, workers);
  return SumLedger{x,          delta,      r.cutoff, r.R, s.S, r.mertens, r.residual,
                   s.residual, r.term_count};
}

TailChain tail_chain(std::uint64_t x, double delta, std::uint64_t b, unsigned workers) {
  if (b >= x) throw std::invalid_argument("tail_chain: requires b < x");
  TailChain t;
  t.x = x;
  t.delta = delta;
  t.b = b;
  t.cutoff = power_cutoff(x, delta);

  // A = middle + upper with middle over (x-b, x+b] and upper (= B) over
  // (x+b, cutoff], so A >= B holds in floating point as well.
  const std::uint64_t lo = x - b;
  const std::uint64_t mid = std::min(x + b, t.cutoff);
  const double middle = lo < mid ? mertens_acc(lo + 1, mid, 4, 1, workers).sum.value() : 0.0;
  const double upper =
      x + b < t.cutoff ? mertens_acc(x + b + 1, t.cutoff, 4, 1, workers).sum.value() : 0.0;
  const double sum_a = middle + upper;
  const double sum_b = upper;

  const double dx = static_cast<double>(x);
  const double db = static_cast<double>(b);
  t.minus_sum = (dx - db) * sum_a;
  t.plus_sum = (dx + db) * sum_b;
  t.four_sum = dx * sum_a - db * sum_a + dx * sum_b + db * sum_b;
  t.simplified = 2.0 * dx * sum_a;
  t.slack = (dx + db) * middle;
  t.asymptotic = dx * (std::log(static_cast<double>(t.cutoff)) - std::log(dx - db));
  t.claimed = delta * dx * std::log(dx);
  return t;
}

}  // namespace lpf
