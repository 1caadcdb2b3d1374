#pragma once

// Exact 64-bit modular arithmetic: primality, prime generation, and square
// roots of -1 modulo primes and prime powers.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace lpf {

__extension__ typedef unsigned __int128 u128;
__extension__ typedef __int128 i128;

/// A prime p = 1 (mod 4) together with the root b of b^2 = -1 (mod p),
/// normalized to 0 < b < p/2. The other root is p - b.
struct RootPair {
  std::uint64_t p = 0;
  std::uint64_t b = 0;

  std::uint64_t other() const { return p - b; }
  friend bool operator==(const RootPair&, const RootPair&) = default;
};

/// Root of r^2 = -1 modulo m = p^k, normalized to 0 < r < m/2.
struct PrimePowerRoot {
  std::uint64_t p = 0;
  unsigned k = 0;
  std::uint64_t m = 0;
  std::uint64_t r = 0;

  friend bool operator==(const PrimePowerRoot&, const PrimePowerRoot&) = default;
};

/// Restricts prime enumeration to p = a (mod q).
struct ResidueFilter {
  std::uint64_t q = 1;
  std::uint64_t a = 0;
};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);

/// Deterministic over the full 64-bit range.
bool is_prime(std::uint64_t n);

inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 20;

/// Calls `visit` for every prime in [lo, hi] (optionally restricted to a
/// residue class), in ascending order. Segmented sieve of Eratosthenes.
/// Throws std::invalid_argument if lo > hi, q == 0 or gcd(a, q) != 1.
void for_each_prime(std::uint64_t lo, std::uint64_t hi,
                    std::optional<ResidueFilter> filter,
                    const std::function<void(std::uint64_t)>& visit,
                    std::size_t segment_size = kDefaultSegmentSize);

std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi,
                                     std::optional<ResidueFilter> filter = std::nullopt,
                                     std::size_t segment_size = kDefaultSegmentSize);

/// Root of -1 mod p from z^((p-1)/4) with z the least quadratic nonresidue.
/// Throws std::domain_error unless p is a prime with p % 4 == 1.
RootPair sqrt_minus_one(std::uint64_t p);

/// Same as sqrt_minus_one without validating p; for primes that already came
/// out of a sieve.
RootPair sqrt_minus_one_unchecked(std::uint64_t p);

/// Lifts root to a root modulo p^k. Throws std::overflow_error when p^k does
/// not fit in 64 bits and std::invalid_argument when k == 0.
PrimePowerRoot hensel_lift(const RootPair& root, unsigned k);

/// Roots of -1 for every prime p = 1 (mod 4) in [lo, hi], ascending.
std::vector<RootPair> root_table(std::uint64_t lo, std::uint64_t hi,
                                 std::size_t segment_size = kDefaultSegmentSize);

std::uint64_t gcd(std::uint64_t a, std::uint64_t b);

/// floor(sqrt(n)) exactly.
std::uint64_t isqrt(std::uint64_t n);

}  // namespace lpf
