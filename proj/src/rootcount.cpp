#include "lpf/rootcount.hpp"

namespace lpf {

namespace {

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// #{n : lo < n <= hi, n = r (mod p)} by walking the progression.
std::uint64_t step_progression(std::uint64_t lo, std::uint64_t hi, std::uint64_t r,
                               std::uint64_t p) {
  std::uint64_t count = 0;
  const std::uint64_t first = lo + 1 + residue(static_cast<i128>(r) - (lo + 1), p);
  for (u128 n = first; n <= hi; n += p) ++count;
  return count;
}

}  // namespace

std::uint64_t residue(i128 z, std::uint64_t m) {
  i128 r = z % static_cast<i128>(m);
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t count_exact(std::uint64_t x, const RootPair& root) {
  return step_progression(x, 2 * x, root.b, root.p) +
         step_progression(x, 2 * x, root.other(), root.p);
}

std::uint64_t count_by_floor_identity(std::uint64_t x, const RootPair& root) {
  const i128 p = root.p;
  const i128 b = root.b;
  const i128 xx = x;
  const i128 total = floor_div(2 * xx - b, p) - floor_div(xx - b, p) +
                     floor_div(2 * xx + b, p) - floor_div(xx + b, p);
  return static_cast<std::uint64_t>(total);
}

Rational fractional_part_bound(std::uint64_t x, const RootPair& root) {
  const i128 xx = x;
  return Rational{2 * x + residue(xx - root.b, root.p) + residue(xx + root.b, root.p), root.p};
}

SolutionCount solution_count(std::uint64_t x, const RootPair& root) {
  return SolutionCount{x, root.p, count_exact(x, root), count_by_floor_identity(x, root),
                       fractional_part_bound(x, root)};
}

}  // namespace lpf
