#include "lpf/polysieve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "lpf/ordered_pool.hpp"
#include "lpf/rootcount.hpp"

namespace lpf {

FactorSieve::FactorSieve(std::uint64_t max_n) : max_n_(max_n) {
  if (max_n > kMaxSieveN) {
    throw std::overflow_error("factor sieve: n up to " + std::to_string(max_n) +
                              " exceeds 2^31 (n^2 + 1 must fit in 64 bits)");
  }
  if (max_n >= 5) roots_ = root_table(5, max_n);
}

void FactorSieve::check_range(std::uint64_t lo, std::uint64_t hi) const {
  if (hi > kMaxSieveN) {
    throw std::overflow_error("factor sieve: hi=" + std::to_string(hi) + " exceeds 2^31");
  }
  if (lo < 1 || lo > hi) {
    throw std::invalid_argument("factor sieve: need 1 <= lo <= hi, got lo=" + std::to_string(lo) +
                                " hi=" + std::to_string(hi));
  }
  if (hi > max_n_) {
    throw std::invalid_argument("factor sieve: hi=" + std::to_string(hi) +
                                " beyond prepared bound " + std::to_string(max_n_));
  }
}

std::vector<FactorizationRecord> FactorSieve::segment(std::uint64_t lo, std::uint64_t hi) const {
  check_range(lo, hi);
  const std::size_t len = hi - lo + 1;
  std::vector<std::uint64_t> residual(len);
  std::vector<FactorizationRecord> out(len);
  for (std::size_t i = 0; i < len; ++i) {
    const std::uint64_t n = lo + i;
    out[i].n = n;
    residual[i] = n * n + 1;
    if (n & 1) {
      // n^2 + 1 = 2 (mod 8) for odd n, so 2 divides exactly once.
      residual[i] >>= 1;
      out[i].factors.push_back({2, 1});
    }
  }

  // lo, hi, p < 2^32 here, so the per-prime offset needs one 32-bit division.
  const auto lo32 = static_cast<std::uint32_t>(lo);
  for (const RootPair& root : roots_) {
    const std::uint64_t p = root.p;
    if (p > hi) break;
    const std::uint32_t lo_mod = lo32 % static_cast<std::uint32_t>(p);
    for (const std::uint64_t r : {root.b, root.other()}) {
      const std::uint64_t first = lo + (r >= lo_mod ? r - lo_mod : r + p - lo_mod);
      for (std::uint64_t n = first; n <= hi; n += p) {
        const std::size_t i = n - lo;
        unsigned e = 0;
        do {
          residual[i] /= p;
          ++e;
        } while (residual[i] % p == 0);
        out[i].factors.push_back({p, e});
      }
    }
  }

  for (std::size_t i = 0; i < len; ++i) {
    if (residual[i] > 1) out[i].factors.push_back({residual[i], 1});
    out[i].largest_prime = out[i].factors.empty() ? 1 : out[i].factors.back().p;
  }
  return out;
}

void FactorSieve::for_each(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options,
                           const std::function<void(const FactorizationRecord&)>& visit) const {
  check_range(lo, hi);
  if (options.segment_size == 0) throw std::invalid_argument("factor sieve: segment size 0");
  const std::uint64_t span = options.segment_size;
  const std::uint64_t count = (hi - lo) / span + 1;
  run_ordered(
      count, options.workers,
      [&](std::size_t k) {
        const std::uint64_t seg_lo = lo + k * span;
        const std::uint64_t seg_hi = std::min(hi, seg_lo + span - 1);
        return segment(seg_lo, seg_hi);
      },
      [&](std::vector<FactorizationRecord>&& records) {
        for (const auto& rec : records) visit(rec);
      });
}

std::vector<FactorizationRecord> sieve_segment(std::uint64_t lo, std::uint64_t hi) {
  if (hi > kMaxSieveN) {
    throw std::overflow_error("sieve_segment: hi=" + std::to_string(hi) + " exceeds 2^31");
  }
  return FactorSieve(hi).segment(lo, hi);
}

std::uint64_t largest_prime_factor(std::uint64_t n) {
  return sieve_segment(n, n).front().largest_prime;
}

void records_scan(std::uint64_t n_max, const SieveOptions& options,
                  const std::function<void(const RecordRow&)>& visit) {
  if (n_max < 2) return;
  const FactorSieve sieve(n_max);
  std::uint64_t best = 0;
  sieve.for_each(2, n_max, options, [&](const FactorizationRecord& rec) {
    RecordRow row;
    row.n = rec.n;
    row.P = rec.largest_prime;
    row.exponent = std::log(static_cast<double>(row.P)) / std::log(static_cast<double>(row.n));
    row.is_record = row.P > best;
    if (row.is_record) best = row.P;
    visit(row);
  });
}

std::vector<RecordRow> records_scan(std::uint64_t n_max, const SieveOptions& options) {
  std::vector<RecordRow> rows;
  records_scan(n_max, options, [&](const RecordRow& row) { rows.push_back(row); });
  return rows;
}

IncidenceMap incidence_counts(std::uint64_t x, std::uint64_t y_cutoff, bool with_prime_powers,
                              const SieveOptions& options) {
  if (x < 1 || x > kMaxSieveN / 2) {
    throw std::invalid_argument("incidence_counts: need 1 <= x <= 2^30");
  }
  IncidenceMap counts;
  const FactorSieve sieve(2 * x);
  sieve.for_each(x + 1, 2 * x, options, [&](const FactorizationRecord& rec) {
    for (const auto& [p, e] : rec.factors) {
      if (!with_prime_powers) {
        if (p <= y_cutoff) ++counts[p];
        continue;
      }
      std::uint64_t d = p;
      for (unsigned k = 1; k <= e && d <= y_cutoff; ++k) {
        ++counts[d];
        if (k < e) d *= p;
      }
    }
  });
  return counts;
}

std::uint64_t reconstruct(const FactorizationRecord& record) {
  u128 product = 1;
  for (const auto& [p, e] : record.factors) {
    for (unsigned k = 0; k < e; ++k) {
      product *= p;
      if (product > std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("reconstruct: product exceeds 64 bits");
      }
    }
  }
  return static_cast<std::uint64_t>(product);
}

}  // namespace lpf
