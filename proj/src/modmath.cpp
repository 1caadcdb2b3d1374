#include "lpf/modmath.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace lpf {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  a %= m;
  if (m <= 0xFFFFFFFFu) {
    // Products of residues below 2^32 fit in 64 bits.
    while (e > 0) {
      if (e & 1) result = result * a % m;
      a = a * a % m;
      e >>= 1;
    }
    return result;
  }
  while (e > 0) {
    if (e & 1) result = mulmod(result, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return result;
}

std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t isqrt(std::uint64_t n) {
  if (n < 2) return n;
  // Newton from above; the initial guess is a power of two >= sqrt(n).
  const int shift = (std::bit_width(n) + 1) / 2;
  std::uint64_t x = std::uint64_t{1} << shift;
  while (true) {
    const std::uint64_t y = (x + n / x) / 2;
    if (y >= x) return x;
    x = y;
  }
}

namespace {

bool strong_probable_prime(std::uint64_t n, std::uint64_t base) {
  std::uint64_t d = n - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  std::uint64_t x = powmod(base, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  static constexpr std::array<std::uint64_t, 12> kSmall = {2,  3,  5,  7,  11, 13,
                                                          17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (auto p : kSmall) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  if (n < 41 * 41) return true;
  // Sinclair's seven bases are a proven witness set for all n < 2^64.
  static constexpr std::array<std::uint64_t, 7> kBases = {
      2, 325, 9375, 28178, 450775, 9780504, 1795265022};
  for (auto a : kBases) {
    const std::uint64_t base = a % n;
    if (base == 0) continue;
    if (!strong_probable_prime(n, base)) return false;
  }
  return true;
}

namespace {

// Jacobi symbol (a/n) for odd n; equals the Legendre symbol when n is prime.
int jacobi(std::uint64_t a, std::uint64_t n) {
  int sign = 1;
  a %= n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      const std::uint64_t r = n & 7;
      if (r == 3 || r == 5) sign = -sign;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) sign = -sign;
    a %= n;
  }
  return n == 1 ? sign : 0;
}

}  // namespace

RootPair sqrt_minus_one_unchecked(std::uint64_t p) {
  std::uint64_t z = 2;
  while (jacobi(z, p) != -1) ++z;
  const std::uint64_t r = powmod(z, (p - 1) / 4, p);
  return RootPair{p, std::min(r, p - r)};
}

RootPair sqrt_minus_one(std::uint64_t p) {
  if (p % 4 != 1 || !is_prime(p)) {
    throw std::domain_error("sqrt_minus_one: " + std::to_string(p) +
                            " is not a prime congruent to 1 mod 4");
  }
  return sqrt_minus_one_unchecked(p);
}

namespace {

std::uint64_t inverse_mod_prime(std::uint64_t a, std::uint64_t p) {
  return powmod(a, p - 2, p);
}

}  // namespace

PrimePowerRoot hensel_lift(const RootPair& root, unsigned k) {
  if (k == 0) throw std::invalid_argument("hensel_lift: exponent must be >= 1");
  const std::uint64_t p = root.p;

  std::uint64_t m = p;
  for (unsigned i = 1; i < k; ++i) {
    if (m > std::numeric_limits<std::uint64_t>::max() / p) {
      throw std::overflow_error("hensel_lift: " + std::to_string(p) + "^" +
                                std::to_string(k) + " exceeds 64 bits");
    }
    m *= p;
  }

  // Invariant: r^2 + 1 = 0 (mod mod), r = b (mod p).
  std::uint64_t r = root.b;
  std::uint64_t mod = p;
  const std::uint64_t inv_2b = inverse_mod_prime(2 * root.b % p, p);
  for (unsigned i = 1; i < k; ++i) {
    // r' = r + t * mod with t = -((r^2 + 1) / mod) * (2r)^{-1} (mod p).
    const u128 f = static_cast<u128>(r) * r + 1;
    const std::uint64_t quotient = static_cast<std::uint64_t>((f / mod) % p);
    const std::uint64_t t = (p - mulmod(quotient, inv_2b, p)) % p;
    const std::uint64_t next_mod = mod * p;
    r = static_cast<std::uint64_t>((static_cast<u128>(t) * mod + r) % next_mod);
    mod = next_mod;
  }
  return PrimePowerRoot{p, k, m, std::min(r, m - r)};
}

std::vector<RootPair> root_table(std::uint64_t lo, std::uint64_t hi, std::size_t segment_size) {
  std::vector<RootPair> roots;
  if (lo > hi) return roots;
  for_each_prime(
      lo, hi, ResidueFilter{4, 1}, [&](std::uint64_t p) { roots.push_back(sqrt_minus_one_unchecked(p)); },
      segment_size);
  return roots;
}

}  // namespace lpf
