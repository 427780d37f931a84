#include "dysthe/resonance.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "dysthe/dispersion.hpp"

namespace dysthe {
namespace {

using Pair = std::pair<std::int64_t, std::int64_t>;

/// floor(sqrt(v)) for v >= 0.
wide_int isqrt(wide_int v) {
  if (v < 0) throw std::invalid_argument("isqrt of negative value");
  auto r = static_cast<wide_int>(std::sqrt(static_cast<long double>(v)));
  while (r * r > v) --r;
  while ((r + 1) * (r + 1) <= v) ++r;
  return r;
}

/// Floor division / remainder for a positive divisor.
bool divides(wide_int divisor, wide_int value) { return value % divisor == 0; }

/// Appends the ordered integer roots of X^2 - pX + q inside [-N, N].
void append_roots(wide_int p, wide_int q, std::int64_t N, std::vector<Pair>& out) {
  const wide_int disc = p * p - 4 * q;
  if (disc < 0) return;
  const wide_int r = isqrt(disc);
  if (r * r != disc || ((p + r) % 2 != 0)) return;
  const wide_int n1 = (p + r) / 2, n2 = (p - r) / 2;
  if (n1 > N || n1 < -N || n2 > N || n2 < -N) return;
  out.emplace_back(static_cast<std::int64_t>(n1), static_cast<std::int64_t>(n2));
  if (r != 0) out.emplace_back(static_cast<std::int64_t>(n2), static_cast<std::int64_t>(n1));
}

void validate(const ResonanceQuery& query) {
  if (query.N < 1) throw std::invalid_argument("resonance query needs N >= 1");
}

/// j-values of all (n1, n2) in [-N,N]^2 with |n - n1 - n2| <= N (or any n3 when unconstrained).
std::vector<std::int64_t> bucket_values(std::int64_t N, std::int64_t n, bool bound_third) {
  std::vector<std::int64_t> js;
  for (std::int64_t n1 = -N; n1 <= N; ++n1) {
    const wide_int p1 = dispersion(n1);
    for (std::int64_t n2 = -N; n2 <= N; ++n2) {
      const std::int64_t n3 = n - n1 - n2;
      if (bound_third && (n3 > N || n3 < -N)) continue;
      js.push_back(to_int64(p1 + dispersion(n2) + dispersion(n3)));
    }
  }
  std::sort(js.begin(), js.end());
  return js;
}

struct RunSummary {
  std::int64_t max_run = 0;
  std::int64_t distinct = 0;
  std::vector<std::int64_t> argmax;  // j values attaining max_run
};

RunSummary summarize_runs(const std::vector<std::int64_t>& sorted) {
  RunSummary s;
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t k = i;
    while (k < sorted.size() && sorted[k] == sorted[i]) ++k;
    const auto run = static_cast<std::int64_t>(k - i);
    ++s.distinct;
    if (run > s.max_run) {
      s.max_run = run;
      s.argmax.clear();
    }
    if (run == s.max_run) s.argmax.push_back(sorted[i]);
    i = k;
  }
  return s;
}

}  // namespace

std::string to_string(CountMethod method) { return method == CountMethod::brute ? "brute" : "divisor"; }

FactorizationState factorization_constants(std::int64_t n, std::int64_t j) {
  FactorizationState st;
  st.k = checked_sub(dispersion(n), j);
  const wide_int c = checked_sub(4, checked_mul(3, n));
  st.l = checked_sub(checked_mul(9, st.k), checked_mul(4, checked_mul(c, c)));
  return st;
}

wide_int factorized_form(std::int64_t n, wide_int p, wide_int q) {
  const wide_int c = checked_sub(4, checked_mul(3, n));
  const wide_int left = checked_add(checked_add(checked_mul(checked_mul(3, c), p), checked_mul(9, q)), checked_mul(c, c));
  return checked_mul(left, checked_sub(checked_mul(3, p), 4));
}

ResonanceResult count_bruteforce(const ResonanceQuery& query) {
  validate(query);
  ResonanceResult r;
  r.method = CountMethod::brute;
  for (std::int64_t n1 = -query.N; n1 <= query.N; ++n1) {
    for (std::int64_t n2 = -query.N; n2 <= query.N; ++n2) {
      const wide_int lhs = dispersion(n1) + dispersion(n2) + dispersion(checked_sub(checked_sub(query.n, n1), n2));
      if (lhs == query.j) r.solutions.emplace_back(n1, n2);
    }
  }
  r.count = static_cast<std::int64_t>(r.solutions.size());
  return r;
}

ResonanceResult count_divisor(const ResonanceQuery& query) {
  validate(query);
  ResonanceResult r;
  r.method = CountMethod::divisor;
  FactorizationState st = factorization_constants(query.n, query.j);
  const wide_int c = 4 - 3 * static_cast<wide_int>(query.n);
  const wide_int p_bound = 2 * static_cast<wide_int>(query.N);

  // Given p, q is fixed by the left factor a: 9q = a - c^2 - 3cp.
  auto admit = [&](wide_int p, wide_int a) {
    const wide_int numerator = checked_sub(checked_sub(a, checked_mul(c, c)), checked_mul(checked_mul(3, c), p));
    if (!divides(9, numerator)) return;
    const wide_int q = numerator / 9;
    st.p = p;
    st.q = q;
    if (factorized_form(query.n, p, q) != st.l) throw std::logic_error("factorization invariant violated");
    ++r.candidates;
    if (p > p_bound || p < -p_bound) return;
    append_roots(p, q, query.N, r.solutions);
  };

  if (st.l == 0) {
    // b = 3p - 4 is never zero, so a must vanish; scan p directly.
    r.degenerate = true;
    for (wide_int p = -p_bound; p <= p_bound; ++p) admit(p, 0);
  } else {
    const wide_int mag = st.l < 0 ? -st.l : st.l;
    const wide_int root = isqrt(mag);
    auto try_b = [&](wide_int b) {
      // b = 3p - 4 forces b = 2 (mod 3).
      if (((b % 3) + 3) % 3 != 2) return;
      admit((b + 4) / 3, st.l / b);
    };
    for (wide_int d = 1; d <= root; ++d) {
      if (mag % d != 0) continue;
      const wide_int e = mag / d;
      try_b(d);
      try_b(-d);
      if (e != d) {
        try_b(e);
        try_b(-e);
      }
    }
  }
  std::sort(r.solutions.begin(), r.solutions.end());
  r.count = static_cast<std::int64_t>(r.solutions.size());
  return r;
}

std::int64_t divisor_count(wide_int l) {
  if (l == 0) throw std::invalid_argument("divisor count of 0 is undefined");
  const wide_int mag = l < 0 ? -l : l;
  std::int64_t count = 0;
  for (wide_int d = 1; d * d <= mag; ++d) {
    if (mag % d != 0) continue;
    count += (d * d == mag) ? 1 : 2;
  }
  return count;
}

SupScanResult sup_scan(std::int64_t N, int threads) {
  if (N < 0) throw std::invalid_argument("sup_scan needs N >= 0");
  if (N > kSupScanLimit)
    throw std::invalid_argument("sup_scan is O(N^3); N must not exceed " + std::to_string(kSupScanLimit));
  const std::int64_t span = 6 * N + 1;  // n in [-3N, 3N]
  std::vector<RunSummary> per_n(static_cast<std::size_t>(span));
  auto work = [&](std::int64_t first, std::int64_t stride) {
    for (std::int64_t i = first; i < span; i += stride) per_n[i] = summarize_runs(bucket_values(N, i - 3 * N, true));
  };
  threads = std::max(1, threads);
  if (threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
    for (auto& th : pool) th.join();
  }
  // Merge in n order so the result is independent of scheduling.
  SupScanResult result;
  result.N = N;
  for (std::int64_t i = 0; i < span; ++i) {
    const auto& s = per_n[i];
    result.buckets += s.distinct;
    if (s.max_run > result.max_count) {
      result.max_count = s.max_run;
      result.witnesses.clear();
    }
    if (s.max_run == result.max_count)
      for (auto j : s.argmax) result.witnesses.emplace_back(i - 3 * N, j);
  }
  return result;
}

std::vector<std::pair<std::int64_t, std::int64_t>> achievable_buckets(std::int64_t N) {
  std::vector<Pair> out;
  for (std::int64_t n = -3 * N; n <= 3 * N; ++n) {
    auto js = bucket_values(N, n, true);
    js.erase(std::unique(js.begin(), js.end()), js.end());
    for (auto j : js) out.emplace_back(n, j);
  }
  return out;
}

std::vector<GrowthRow> growth_report(const std::vector<std::int64_t>& Ns, int threads) {
  std::vector<GrowthRow> rows;
  for (std::size_t i = 0; i < Ns.size(); ++i) {
    GrowthRow row;
    row.N = Ns[i];
    row.sup = sup_scan(Ns[i], threads).max_count;
    if (i > 0 && Ns[i - 1] > 0 && Ns[i] != Ns[i - 1]) {
      row.has_slope = true;
      row.slope = std::log(static_cast<double>(row.sup) / static_cast<double>(rows.back().sup)) /
                  std::log(static_cast<double>(Ns[i]) / static_cast<double>(Ns[i - 1]));
    }
    rows.push_back(row);
  }
  return rows;
}

RegimeScan regime_scan(std::int64_t N, std::int64_t span) {
  if (N < 1) throw std::invalid_argument("regime scan needs N >= 1");
  RegimeScan out;
  out.N = N;
  const wide_int j_floor = checked_mul(checked_mul(checked_mul(N, N), checked_mul(N, N)), checked_mul(N, N));
  for (std::int64_t base = N * N; base <= N * N + span; ++base) {
    for (std::int64_t n : {base, -base}) {
      const auto js = bucket_values(N, n, false);
      for (std::size_t i = 0; i < js.size();) {
        std::size_t k = i;
        while (k < js.size() && js[k] == js[i]) ++k;
        const wide_int j = js[i];
        if (j >= j_floor || j <= -j_floor) {
          ++out.buckets_checked;
          out.max_count = std::max<std::int64_t>(out.max_count, static_cast<std::int64_t>(k - i));
        }
        i = k;
      }
    }
  }
  return out;
}

}  // namespace dysthe
