#pragma once

// Complete factorizations of n^2 + 1 over an interval of n.
//
// Only p = 2 and primes p = 1 (mod 4) divide n^2 + 1, and the latter hit
// exactly the two progressions n = b, p - b (mod p). Sieving every such
// p <= hi and dividing out all powers at each hit leaves a residual that is
// 1 or a single prime: n^2 + 1 cannot have two prime factors above n because
// their product would be at least (n+1)^2.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "lpf/modmath.hpp"

namespace lpf {

inline constexpr std::uint64_t kMaxSieveN = std::uint64_t{1} << 31;

struct PrimePower {
  std::uint64_t p = 0;
  unsigned e = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

struct FactorizationRecord {
  std::uint64_t n = 0;
  std::vector<PrimePower> factors;  // ascending p
  std::uint64_t largest_prime = 0;
  friend bool operator==(const FactorizationRecord&, const FactorizationRecord&) = default;
};

struct RecordRow {
  std::uint64_t n = 0;
  std::uint64_t P = 0;
  double exponent = 0;  // log P / log n
  bool is_record = false;
};

struct SieveOptions {
  std::size_t segment_size = std::size_t{1} << 20;
  unsigned workers = 1;
};

class FactorSieve {
 public:
  /// Prepares roots for every prime p = 1 (mod 4) up to max_n.
  /// Throws std::overflow_error above kMaxSieveN.
  explicit FactorSieve(std::uint64_t max_n);

  std::uint64_t max_n() const { return max_n_; }

  /// Factorizations for lo..hi in a single buffer. Requires 1 <= lo <= hi <= max_n().
  std::vector<FactorizationRecord> segment(std::uint64_t lo, std::uint64_t hi) const;

  /// Visits the records for lo..hi in ascending n. Segments are sieved on
  /// options.workers threads and re-sequenced before the visitor sees them.
  void for_each(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options,
                const std::function<void(const FactorizationRecord&)>& visit) const;

 private:
  void check_range(std::uint64_t lo, std::uint64_t hi) const;

  std::uint64_t max_n_;
  std::vector<RootPair> roots_;
};

std::vector<FactorizationRecord> sieve_segment(std::uint64_t lo, std::uint64_t hi);

/// P(n^2 + 1) for n >= 1.
std::uint64_t largest_prime_factor(std::uint64_t n);

void records_scan(std::uint64_t n_max, const SieveOptions& options,
                  const std::function<void(const RecordRow&)>& visit);
std::vector<RecordRow> records_scan(std::uint64_t n_max, const SieveOptions& options = {});

/// Keyed by prime (or prime power d = p^k when with_prime_powers), the number
/// of n in (x, 2x] with d | n^2 + 1. Each n is counted once per key. Keys
/// above y_cutoff are dropped. Requires 1 <= x <= 2^30.
using IncidenceMap = std::map<std::uint64_t, std::uint64_t>;
IncidenceMap incidence_counts(std::uint64_t x, std::uint64_t y_cutoff, bool with_prime_powers,
                              const SieveOptions& options = {});

/// Exact product of the factors; throws std::overflow_error past 64 bits.
std::uint64_t reconstruct(const FactorizationRecord& record);

}  // namespace lpf
