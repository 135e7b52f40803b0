#include "slopeci/intervals.hpp"

#include <cstdlib>
#include <string>

#include "slopeci/errors.hpp"
#include "slopeci/exactdist.hpp"

namespace slopeci::intervals {

namespace {

void check_level(const Rational& level) {
  if (!(level > 0 && level < 1))
    throw invalid_parameter("confidence level must satisfy 0 < level < 1");
}

}  // namespace

KendallTestResult kendall_slope_test(const slopes::Dataset& data, double beta_star,
                                     const Rational& alpha) {
  if (!(alpha > 0 && alpha < 1)) throw invalid_parameter("alpha must satisfy 0 < alpha < 1");
  int n = static_cast<int>(data.size());
  KendallTestResult r;
  // x is strictly increasing, so concordance of (x, y - beta* x) reduces to
  // the sign of the residual difference.
  for (int i = 0; i < n; ++i) {
    double di = data.y[i] - beta_star * data.x[i];
    for (int j = i + 1; j < n; ++j) {
      double dj = data.y[j] - beta_star * data.x[j];
      if (dj > di)
        ++r.concordant;
      else if (dj < di)
        ++r.discordant;
      else
        ++r.tied_pairs;
    }
  }
  r.statistic = r.concordant - r.discordant;
  long long N = static_cast<long long>(n) * (n - 1) / 2;
  r.tau = Rational(r.statistic, N);
  if (auto k = exactdist::kendall_upper_quantile(n, alpha / 2)) {
    r.critical_value = *k;
    r.reject = std::llabs(r.statistic) >= *k;
  }
  return r;
}

Interval theil_ci(const slopes::Dataset& data, const Rational& level) {
  check_level(level);
  int n = static_cast<int>(data.size());
  long long N = static_cast<long long>(n) * (n - 1) / 2;
  Rational a = (1 - level) / 2;

  auto k = exactdist::kendall_upper_quantile(n, a);
  if (!k) {
    Rational max_level = 1 - Rational(2, factorial(static_cast<unsigned>(n)));
    throw unachievable_level(
        "no level-" + decimal_string(level, 4) + " interval of this type exists for n = " +
            std::to_string(n) + "; the largest achievable level is " +
            decimal_string(max_level, 6),
        max_level);
  }

  long long l = (N - *k) / 2 + 1;
  long long u = (N + *k) / 2;
  auto ss = pairwise_slopes(data);

  Interval out;
  out.method = Method::theil;
  out.lower_index = l;
  out.upper_index = u;
  out.lower = ss.values[static_cast<std::size_t>(l - 1)];
  out.upper = ss.values[static_cast<std::size_t>(u - 1)];
  out.achieved_confidence = theil_type_confidence(n, l, u);
  out.degenerate = !(out.lower < out.upper);
  return out;
}

Interval tukey_ci(const slopes::Dataset& data, const Rational& level) {
  check_level(level);
  auto ss = pairwise_slopes(data);
  long long N = static_cast<long long>(ss.count());
  long long P = ss.walsh_count();
  Rational a = (1 - level) / 2;

  auto t = exactdist::signed_rank_upper_quantile(static_cast<int>(N), a);
  if (!t) {
    Rational max_level = 1 - Rational(2) / Rational(BigInt(1) << static_cast<unsigned>(N));
    throw unachievable_level(
        "no level-" + decimal_string(level, 4) +
            " Walsh-average interval exists for N = " + std::to_string(N) +
            " slopes; the largest achievable level is " + decimal_string(max_level, 6),
        max_level);
  }

  long long U = t->value;
  long long L = P - U + 1;
  Interval out;
  out.method = Method::tukey;
  out.lower_index = L;
  out.upper_index = U;
  out.lower = walsh_select(ss, L);
  out.upper = walsh_select(ss, U);
  out.achieved_confidence = std::nullopt;  // the nominal calculation is not valid here
  out.degenerate = !(out.lower < out.upper);
  return out;
}

Rational theil_type_confidence(int n, long long l, long long u) {
  if (n < 2) throw invalid_parameter("theil_type_confidence requires n >= 2");
  long long N = static_cast<long long>(n) * (n - 1) / 2;
  if (l < 1 || u > N || l > u || l + u != N + 1)
    throw invalid_parameter("indices must satisfy 1 <= l <= u <= N and l + u = N + 1");
  long long k = N - 2 * (l - 1);
  auto dist = exactdist::kendall_null_distribution(n);
  return 1 - 2 * dist.upper_tail(k);
}

}  // namespace slopeci::intervals
