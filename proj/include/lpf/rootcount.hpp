#pragma once

// Counting n in the half-open interval (x, 2x] with p | n^2 + 1, three ways:
// stepping both root progressions, the four-floor identity, and the upper
// bound 2x/p + {(x-b)/p} + {(x+b)/p} with its fractional parts kept exact.

#include <compare>
#include <cstdint>

#include "lpf/modmath.hpp"

namespace lpf {

/// Nonnegative rational num/den, den >= 1.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend std::strong_ordering operator<=>(const Rational& l, const Rational& r) {
    return static_cast<u128>(l.num) * r.den <=> static_cast<u128>(r.num) * l.den;
  }
  friend bool operator==(const Rational& l, const Rational& r) { return (l <=> r) == 0; }
};

inline Rational as_rational(std::uint64_t n) { return Rational{n, 1}; }

struct SolutionCount {
  std::uint64_t x = 0;
  std::uint64_t p = 0;
  std::uint64_t exact = 0;
  std::uint64_t floor_identity = 0;
  Rational bound;
};

/// Canonical residue of the signed integer z modulo m, in [0, m).
std::uint64_t residue(i128 z, std::uint64_t m);

std::uint64_t count_exact(std::uint64_t x, const RootPair& root);

/// [(2x-b)/p] - [(x-b)/p] + [(2x+b)/p] - [(x+b)/p] in exact integer arithmetic.
std::uint64_t count_by_floor_identity(std::uint64_t x, const RootPair& root);

/// (2x + ((x-b) mod p) + ((x+b) mod p)) / p.
Rational fractional_part_bound(std::uint64_t x, const RootPair& root);

SolutionCount solution_count(std::uint64_t x, const RootPair& root);

}  // namespace lpf
