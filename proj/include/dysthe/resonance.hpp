#ifndef DYSTHE_RESONANCE_HPP
#define DYSTHE_RESONANCE_HPP

// Counting ordered solutions (n1, n2), |n1|, |n2| <= N, of
//   P(n1) + P(n2) + P(n - n1 - n2) = j.
//
// Two independent routes: exhaustive enumeration, and the reduction to factor pairs
// of a single integer l. With p = n1 + n2 and q = n1 n2 the equation becomes
//   (3(4-3n)p + 9q + (4-3n)^2)(3p - 4) = l,   l = 9(P(n) - j) - 4(4-3n)^2,
// so every solution comes from a factor pair (a, b) of l with b = 3p - 4.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dysthe/integer.hpp"

namespace dysthe {

struct ResonanceQuery {
  std::int64_t N = 1;
  std::int64_t n = 0;
  std::int64_t j = 0;
};

enum class CountMethod { brute, divisor };

std::string to_string(CountMethod method);

struct ResonanceResult {
  std::int64_t count = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> solutions;  // sorted
  CountMethod method = CountMethod::brute;
  /// divisor route only: admitted (p, q) candidates before the root/bound test.
  std::int64_t candidates = 0;
  /// divisor route only: whether l = 0 forced the direct scan over p.
  bool degenerate = false;
};

struct FactorizationState {
  wide_int p = 0;
  wide_int q = 0;
  wide_int k = 0;  // P(n) - j
  wide_int l = 0;  // 9k - 4(4-3n)^2
};

/// k and l for a query (p, q left at zero).
FactorizationState factorization_constants(std::int64_t n, std::int64_t j);

/// Left factor 3(4-3n)p + 9q + (4-3n)^2 times right factor 3p - 4.
wide_int factorized_form(std::int64_t n, wide_int p, wide_int q);

ResonanceResult count_bruteforce(const ResonanceQuery& query);
ResonanceResult count_divisor(const ResonanceQuery& query);

/// Number of positive divisors of |l|. Throws for l = 0.
std::int64_t divisor_count(wide_int l);

struct SupScanResult {
  std::int64_t N = 0;
  std::int64_t max_count = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> witnesses;  // (n, j), sorted
  std::int64_t buckets = 0;
};

/// Largest number of triples (n1,n2,n3) in [-N,N]^3 sharing (n1+n2+n3, P(n1)+P(n2)+P(n3)).
inline constexpr std::int64_t kSupScanLimit = 256;
SupScanResult sup_scan(std::int64_t N, int threads = 1);

/// Every (n, j) reached by some triple in [-N,N]^3, sorted.
std::vector<std::pair<std::int64_t, std::int64_t>> achievable_buckets(std::int64_t N);

struct GrowthRow {
  std::int64_t N = 0;
  std::int64_t sup = 0;
  bool has_slope = false;
  double slope = 0;  // log(sup_i / sup_{i-1}) / log(N_i / N_{i-1}); log2 of the ratio for doublings
};

std::vector<GrowthRow> growth_report(const std::vector<std::int64_t>& Ns, int threads = 1);

/// Large-|n| regime: n in +-[N^2, N^2 + span], all (n1,n2) in [-N,N]^2, buckets with |j| >= N^6.
struct RegimeScan {
  std::int64_t N = 0;
  std::int64_t buckets_checked = 0;
  std::int64_t max_count = 0;
};
RegimeScan regime_scan(std::int64_t N, std::int64_t span);

}  // namespace dysthe

#endif  // DYSTHE_RESONANCE_HPP
