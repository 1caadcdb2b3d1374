#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

#include "lpf/modmath.hpp"

namespace lpf {

namespace {

std::vector<std::uint32_t> small_primes_upto(std::uint64_t limit) {
  std::vector<std::uint32_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

void validate_filter(const std::optional<ResidueFilter>& filter) {
  if (!filter) return;
  if (filter->q == 0) throw std::invalid_argument("residue filter: modulus q must be >= 1");
  if (gcd(filter->a % filter->q, filter->q) != 1) {
    throw std::invalid_argument("residue filter: gcd(" + std::to_string(filter->a) + ", " +
                                std::to_string(filter->q) + ") != 1");
  }
}

}  // namespace

void for_each_prime(std::uint64_t lo, std::uint64_t hi, std::optional<ResidueFilter> filter,
                    const std::function<void(std::uint64_t)>& visit, std::size_t segment_size) {
  if (lo > hi) throw std::invalid_argument("primes_in: lo > hi");
  validate_filter(filter);
  if (segment_size == 0) throw std::invalid_argument("primes_in: segment size must be >= 1");

  const std::uint64_t q = filter ? filter->q : 1;
  const std::uint64_t a = filter ? filter->a % q : 0;
  auto accept = [&](std::uint64_t n) { return q == 1 || n % q == a; };

  lo = std::max<std::uint64_t>(lo, 2);
  if (lo > hi) return;

  const std::uint64_t root = isqrt(hi);
  // A short window far out is cheaper to test number by number than to sieve.
  if (static_cast<u128>(hi - lo + 1) * 64 < root) {
    for (std::uint64_t n = lo;; ++n) {
      if (accept(n) && is_prime(n)) visit(n);
      if (n == hi) break;
    }
    return;
  }

  const auto base = small_primes_upto(root);
  std::vector<char> is_composite(segment_size);
  for (std::uint64_t seg_lo = lo;;) {
    const std::uint64_t span = std::min<std::uint64_t>(segment_size - 1, hi - seg_lo);
    const std::uint64_t seg_hi = seg_lo + span;
    std::fill(is_composite.begin(), is_composite.begin() + static_cast<std::ptrdiff_t>(span + 1),
              0);
    for (const std::uint64_t p : base) {
      const u128 sq = static_cast<u128>(p) * p;
      if (sq > seg_hi) break;
      const std::uint64_t rem = seg_lo % p;
      u128 start = rem == 0 ? u128{seg_lo} : u128{seg_lo} + (p - rem);
      start = std::max(start, sq);
      if (start > seg_hi) continue;
      for (auto j = static_cast<std::uint64_t>(start - seg_lo); j <= span; j += p) {
        is_composite[j] = 1;
      }
    }
    for (std::uint64_t i = 0; i <= span; ++i) {
      if (!is_composite[i] && accept(seg_lo + i)) visit(seg_lo + i);
    }
    if (seg_hi == hi) break;
    seg_lo = seg_hi + 1;
  }
}

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi,
                                     std::optional<ResidueFilter> filter,
                                     std::size_t segment_size) {
  std::vector<std::uint64_t> out;
  for_each_prime(lo, hi, filter, [&](std::uint64_t p) { out.push_back(p); }, segment_size);
  return out;
}

}  // namespace lpf
