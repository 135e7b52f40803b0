#include "slopeci/exactdist.hpp"

#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>

#include "slopeci/errors.hpp"

namespace slopeci::exactdist {

namespace {

// Counts of permutations of 1..n by inversion number d = 0..n(n-1)/2
// (Mahonian numbers), built by the standard convolution with a sliding
// prefix sum.  K relates to d by K = N - 2d.
std::vector<BigInt> inversion_counts(int n) {
  std::vector<BigInt> counts{1};  // n = 1
  for (int k = 2; k <= n; ++k) {
    std::size_t len = counts.size() + static_cast<std::size_t>(k) - 1;
    std::vector<BigInt> prefix(counts.size() + 1);
    prefix[0] = 0;
    for (std::size_t j = 0; j < counts.size(); ++j) prefix[j + 1] = prefix[j] + counts[j];
    std::vector<BigInt> next(len);
    for (std::size_t d = 0; d < len; ++d) {
      std::size_t hi = std::min(d + 1, counts.size());
      std::size_t lo = d >= static_cast<std::size_t>(k) ? d - k + 1 : 0;
      next[d] = prefix[hi] - prefix[lo];
    }
    counts = std::move(next);
  }
  return counts;
}

// c[t] = number of subsets of {1..N} with sum t.
std::vector<BigInt> signed_rank_counts(int N) {
  long long P = static_cast<long long>(N) * (N + 1) / 2;
  std::vector<BigInt> c(static_cast<std::size_t>(P) + 1);
  c[0] = 1;
  long long reach = 0;
  for (int k = 1; k <= N; ++k) {
    reach += k;
    for (long long t = reach; t >= k; --t) c[t] += c[t - k];
  }
  return c;
}

void check_alpha(const Rational& a) {
  if (!(a > 0 && a < Rational(1, 2)))
    throw invalid_parameter("tail probability must satisfy 0 < a < 1/2");
}

}  // namespace

Rational ExactDistribution::upper_tail(long long value) const {
  Rational tail = 0;
  for (std::size_t i = support.size(); i-- > 0;) {
    if (support[i] < value) break;
    tail += pmf[i];
  }
  return tail;
}

ExactDistribution kendall_null_distribution(int n) {
  if (n < 2) throw invalid_parameter("kendall_null_distribution requires n >= 2");
  if (n > 500) throw distribution_too_large("kendall_null_distribution supports n <= 500");
  auto counts = inversion_counts(n);
  long long N = static_cast<long long>(n) * (n - 1) / 2;
  BigInt total = factorial(static_cast<unsigned>(n));

  ExactDistribution dist;
  dist.kind = Kind::kendall;
  dist.size = n;
  dist.support.reserve(counts.size());
  dist.pmf.reserve(counts.size());
  // d = N corresponds to K = -N; iterate d descending so support ascends.
  for (std::size_t d = counts.size(); d-- > 0;) {
    dist.support.push_back(N - 2 * static_cast<long long>(d));
    dist.pmf.emplace_back(counts[d], total);
  }
  return dist;
}

std::optional<long long> kendall_upper_quantile(int n, const Rational& a) {
  if (n < 2) throw invalid_parameter("kendall_upper_quantile requires n >= 2");
  check_alpha(a);
  auto counts = inversion_counts(n);
  long long N = static_cast<long long>(n) * (n - 1) / 2;
  BigInt total = factorial(static_cast<unsigned>(n));
  // Compare integer tail counts against a = num/den: tail/total <= a
  // iff tail * den <= num * total.
  BigInt num = boost::multiprecision::numerator(a);
  BigInt den = boost::multiprecision::denominator(a);
  BigInt budget = num * total;

  BigInt tail = 0;
  long long k = N + 2;
  for (std::size_t d = 0; d < counts.size(); ++d) {  // d = 0 is K = N
    tail += counts[d];
    if (tail * den > budget) break;
    k = N - 2 * static_cast<long long>(d);
  }
  if (k > N) return std::nullopt;  // even P(K >= N) = 1/n! exceeds a
  return k;
}

ExactDistribution signed_rank_null_distribution(int N) {
  if (N < 1) throw invalid_parameter("signed_rank_null_distribution requires N >= 1");
  if (N > kSignedRankExactLimit)
    throw distribution_too_large(
        "exact signed-rank distribution supports N <= " +
        std::to_string(kSignedRankExactLimit) +
        "; use signed_rank_upper_quantile for the approximate quantile");
  auto counts = signed_rank_counts(N);
  BigInt total = BigInt(1) << N;

  ExactDistribution dist;
  dist.kind = Kind::signed_rank;
  dist.size = N;
  dist.support.reserve(counts.size());
  dist.pmf.reserve(counts.size());
  for (std::size_t t = 0; t < counts.size(); ++t) {
    dist.support.push_back(static_cast<long long>(t));
    dist.pmf.emplace_back(counts[t], total);
  }
  return dist;
}

std::optional<SignedRankQuantile> signed_rank_upper_quantile(int N, const Rational& a) {
  if (N < 1) throw invalid_parameter("signed_rank_upper_quantile requires N >= 1");
  check_alpha(a);
  long long P = static_cast<long long>(N) * (N + 1) / 2;

  if (N <= kSignedRankExactLimit) {
    auto counts = signed_rank_counts(N);
    BigInt num = boost::multiprecision::numerator(a);
    BigInt den = boost::multiprecision::denominator(a);
    BigInt budget = num * (BigInt(1) << N);

    BigInt tail = 0;
    long long t = P + 1;
    for (long long v = P; v >= 0; --v) {
      tail += counts[static_cast<std::size_t>(v)];
      if (tail * den > budget) break;
      t = v;
    }
    if (t > P) return std::nullopt;  // even P(T+ >= P) = 2^-N exceeds a
    return SignedRankQuantile{t, true};
  }
  return signed_rank_upper_quantile_approx(N, a);
}

std::optional<SignedRankQuantile> signed_rank_upper_quantile_approx(int N,
                                                                    const Rational& a) {
  if (N < 1) throw invalid_parameter("signed_rank_upper_quantile requires N >= 1");
  check_alpha(a);
  long long P = static_cast<long long>(N) * (N + 1) / 2;
  // Normal approximation with continuity correction: T+ has mean P/2 and
  // variance N(N+1)(2N+1)/24 under the null.
  double dn = static_cast<double>(N);
  double mean = static_cast<double>(P) / 2.0;
  double sd = std::sqrt(dn * (dn + 1.0) * (2.0 * dn + 1.0) / 24.0);
  boost::math::normal_distribution<double> normal;
  double z = boost::math::quantile(normal, 1.0 - to_double(a));
  long long t = static_cast<long long>(std::ceil(mean + 0.5 + z * sd));
  if (t > P) return std::nullopt;
  if (t < 0) t = 0;
  return SignedRankQuantile{t, false};
}

}  // namespace slopeci::exactdist
