#pragma once

// Prime sums over arithmetic progressions: pi(z; q, a), the Mertens-type sum
// of log p / p, and the primary and secondary terms R(x) and S(x) built from
// primes p = 1 (mod 4) up to the cutoff x^(1+delta).
//
// Every sum runs over ascending primes with compensated summation. Work is
// split into fixed spans of kSumBlockSpan integers, each span is summed on its
// own and the span totals are folded in ascending order, so results are
// bit-identical for any worker count.

#include <cstddef>
#include <cstdint>

#include "lpf/modmath.hpp"

namespace lpf {

inline constexpr std::uint64_t kSumBlockSpan = std::uint64_t{1} << 20;
/// Largest admissible prime cutoff x^(1+delta).
inline constexpr std::uint64_t kMaxCutoff = std::uint64_t{1} << 31;

std::uint64_t totient(std::uint64_t q);

std::uint64_t pi_counting(std::uint64_t z, std::uint64_t q, std::uint64_t a, unsigned workers = 1);

/// Sum of log p / p over primes p <= z with p = a (mod q).
double mertens_ap(std::uint64_t z, std::uint64_t q, std::uint64_t a, unsigned workers = 1);

/// floor(x^(1+delta)), nudged up by one ulp before truncation so exact powers
/// are not lost to rounding. Throws std::overflow_error above limit and
/// std::invalid_argument for x < 1 or delta < 0.
std::uint64_t power_cutoff(std::uint64_t x, double delta, std::uint64_t limit = kMaxCutoff);

struct PrimaryTerm {
  std::uint64_t x = 0;
  double delta = 0;
  std::uint64_t cutoff = 0;
  std::uint64_t q = 4;
  std::uint64_t a = 1;
  double mertens = 0;  // sum of log p / p, p <= cutoff, p = a (mod q)
  double R = 0;        // 2x * mertens
  double main_term = 0;  // 2 (1+delta) x log x / phi(q)
  double residual = 0;   // R - main_term
  std::uint64_t term_count = 0;
};

PrimaryTerm primary_term(std::uint64_t x, double delta, unsigned workers = 1);
PrimaryTerm primary_term(std::uint64_t x, double delta, std::uint64_t q, std::uint64_t a,
                         unsigned workers = 1);

/// S(x) = sum over p = 1 (mod 4), p <= cutoff of ({(x-b)/p} + {(x+b)/p}) log p
/// with b the root of -1 mod p. The "split" fields re-evaluate the same sum
/// through the identity {z/p} = z/p for 0 <= z < p:
///   head:  p <= x -/+ b, generic fractional part
///   tail:  x -/+ b < p, the linear form (x -/+ b) log p / p
///   wrap:  primes with b > x, where x - b < 0 and {(x-b)/p} = (x-b)/p + 1;
///          the linear form alone misses log p for each of them.
struct SecondaryTerm {
  std::uint64_t x = 0;
  double delta = 0;
  std::uint64_t cutoff = 0;

  double S = 0;
  double minus_sum = 0;  // sum of {(x-b)/p} log p
  double plus_sum = 0;   // sum of {(x+b)/p} log p
  double plus_sum_mod8 = 0;  // plus_sum restricted to p = 1 (mod 8)

  double head_minus = 0;
  double tail_minus = 0;
  double wrap_minus = 0;
  double head_plus = 0;
  double tail_plus = 0;
  double split_total = 0;
  std::uint64_t wrap_count = 0;

  double main_term = 0;  // delta x log x
  double residual = 0;   // S - main_term
  std::uint64_t term_count = 0;
};

SecondaryTerm secondary_term(std::uint64_t x, double delta, unsigned workers = 1);

/// One row of the `sums` report.
struct SumLedger {
  std::uint64_t x = 0;
  double delta = 0;
  std::uint64_t cutoff = 0;
  double R = 0;
  double S = 0;
  double mertens = 0;
  double residual_R = 0;
  double residual_S = 0;
  std::uint64_t term_count = 0;
};

/// R and the Mertens sum use p = a (mod q); S always uses p = 1 (mod 4), the
/// only odd primes with a root of -1.
SumLedger sum_ledger(std::uint64_t x, double delta, std::uint64_t q = 4, std::uint64_t a = 1,
                     unsigned workers = 1);

/// Fixed-b tail sums over p = 1 (mod 4), x -/+ b < p <= cutoff.
///   minus_sum     = sum (x-b) log p / p over x-b < p
///   plus_sum      = sum (x+b) log p / p over x+b < p
///   four_sum      = x*A - b*A + x*B + b*B, A and B the plain log p / p sums
///   simplified    = 2x * A (both index sets widened to x-b < p)
///   slack         = (x+b) * (A - B) >= 0, the exact gap simplified - four_sum
///   asymptotic    = x (log cutoff - log(x-b)), the main term of 2x*A
///   claimed       = delta x log x
struct TailChain {
  std::uint64_t x = 0;
  double delta = 0;
  std::uint64_t b = 0;
  std::uint64_t cutoff = 0;
  double minus_sum = 0;
  double plus_sum = 0;
  double four_sum = 0;
  double simplified = 0;
  double slack = 0;
  double asymptotic = 0;
  double claimed = 0;
};

/// Requires b < x.
TailChain tail_chain(std::uint64_t x, double delta, std::uint64_t b, unsigned workers = 1);

}  // namespace lpf
