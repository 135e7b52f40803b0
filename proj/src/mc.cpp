#include "slopeci/mc.hpp"

#include <algorithm>
#include <cmath>

#include "slopeci/errors.hpp"
#include "slopeci/exactdist.hpp"
#include "slopeci/threads.hpp"

namespace slopeci::mc {

ErrorSpec ErrorSpec::normal(double sd) {
  if (!(sd > 0)) throw invalid_parameter("normal sd must be positive");
  ErrorSpec spec;
  spec.family = ErrorFamily::normal;
  spec.normal_sd = sd;
  return spec;
}

ErrorSpec ErrorSpec::cauchy(double location, double scale) {
  if (!(scale > 0)) throw invalid_parameter("cauchy scale must be positive");
  ErrorSpec spec;
  spec.family = ErrorFamily::cauchy;
  spec.cauchy_location = location;
  spec.cauchy_scale = scale;
  return spec;
}

ErrorSpec ErrorSpec::uniform(double lo, double hi) {
  if (!(lo < hi)) throw invalid_parameter("uniform bounds must satisfy lo < hi");
  ErrorSpec spec;
  spec.family = ErrorFamily::uniform;
  spec.uniform_lo = lo;
  spec.uniform_hi = hi;
  return spec;
}

std::vector<double> make_design(const DesignSpec& spec) {
  switch (spec.kind) {
    case DesignKind::evenly_spaced: {
      if (spec.n < 2) throw invalid_parameter("evenly_spaced design requires n >= 2");
      std::vector<double> x(spec.n);
      for (int i = 1; i <= spec.n; ++i)
        x[i - 1] = static_cast<double>(i - 1) / static_cast<double>(spec.n - 1);
      return x;
    }
    case DesignKind::two_clusters: {
      if (spec.n < 4 || spec.n % 2 != 0)
        throw invalid_parameter("two_clusters design requires even n >= 4");
      int half = spec.n / 2;
      double denom = 3.0 * (half - 1);
      std::vector<double> x(spec.n);
      for (int i = 1; i <= half; ++i) x[i - 1] = static_cast<double>(i - 1) / denom;
      for (int i = half + 1; i <= spec.n; ++i)
        x[i - 1] = 2.0 / 3.0 + static_cast<double>(i - half - 1) / denom;
      return x;
    }
    case DesignKind::explicit_x: {
      if (spec.explicit_x.size() < 2)
        throw invalid_parameter("explicit design needs at least two points");
      for (std::size_t i = 1; i < spec.explicit_x.size(); ++i)
        if (!(spec.explicit_x[i - 1] < spec.explicit_x[i]))
          throw invalid_parameter("explicit design points must be strictly increasing");
      return spec.explicit_x;
    }
  }
  throw invalid_parameter("unknown design kind");
}

std::vector<double> sample_errors(const ErrorSpec& spec, int n, rng::Stream& stream) {
  if (n < 1) throw invalid_parameter("sample_errors requires n >= 1");
  std::vector<double> e(n);
  switch (spec.family) {
    case ErrorFamily::normal:
      for (int i = 0; i < n; ++i) e[i] = stream.next_normal(0.0, spec.normal_sd);
      break;
    case ErrorFamily::cauchy:
      for (int i = 0; i < n; ++i)
        e[i] = stream.next_cauchy(spec.cauchy_location, spec.cauchy_scale);
      break;
    case ErrorFamily::uniform:
      for (int i = 0; i < n; ++i) e[i] = stream.next_uniform(spec.uniform_lo, spec.uniform_hi);
      break;
  }
  return e;
}

CoverageReport coverage(intervals::Method method, const DesignSpec& design,
                        const ErrorSpec& errors, const Rational& level,
                        std::uint64_t reps, std::uint64_t seed, double slope,
                        double intercept) {
  if (reps < 1) throw invalid_parameter("coverage requires reps >= 1");
  if (!(level > 0 && level < 1))
    throw invalid_parameter("confidence level must satisfy 0 < level < 1");

  std::vector<double> x = make_design(design);
  int n = static_cast<int>(x.size());
  long long N = static_cast<long long>(n) * (n - 1) / 2;
  Rational a = (1 - level) / 2;

  // Resolve the order-statistic indices once; they depend only on (n, level).
  long long lower_rank = 0, upper_rank = 0;
  if (method == intervals::Method::theil) {
    auto k = exactdist::kendall_upper_quantile(n, a);
    if (!k)
      throw unachievable_level("no Theil-type interval at this level for n = " +
                                   std::to_string(n),
                               1 - Rational(2, factorial(static_cast<unsigned>(n))));
    lower_rank = (N - *k) / 2 + 1;
    upper_rank = (N + *k) / 2;
  } else {
    long long P = N * (N + 1) / 2;
    auto t = exactdist::signed_rank_upper_quantile(static_cast<int>(N), a);
    if (!t)
      throw unachievable_level(
          "no Walsh-average interval at this level for N = " + std::to_string(N),
          1 - Rational(2) / Rational(BigInt(1) << static_cast<unsigned>(N)));
    upper_rank = t->value;
    lower_rank = P - upper_rank + 1;
  }

  struct Tally {
    std::uint64_t hits = 0;
    std::uint64_t boundary = 0;
  };
  auto chunks = threads::run_partitioned<Tally>(
      reps, [&](std::uint64_t begin, std::uint64_t end) {
        Tally tally;
        std::vector<double> y(n);
        for (std::uint64_t r = begin; r < end; ++r) {
          auto stream = rng::replicate_stream(seed, r);
          std::vector<double> e = sample_errors(errors, n, stream);
          for (int i = 0; i < n; ++i) y[i] = intercept + slope * x[i] + e[i];
          auto ss = slopes::pairwise_slopes(slopes::Dataset(x, y));

          // Coverage by counting order statistics against the true slope:
          // strictly below (c_lt) and at-or-below (c_le).
          long long c_lt, c_le;
          if (method == intervals::Method::theil) {
            c_lt = std::lower_bound(ss.values.begin(), ss.values.end(), slope) -
                   ss.values.begin();
            c_le = std::upper_bound(ss.values.begin(), ss.values.end(), slope) -
                   ss.values.begin();
          } else {
            c_lt = slopes::count_walsh_below(ss, slope);
            c_le = slopes::count_walsh_at_or_below(ss, slope);
          }
          bool covered_open = c_lt >= lower_rank && c_le <= upper_rank - 1;
          bool covered_closed = c_le >= lower_rank && c_lt <= upper_rank - 1;
          if (covered_open) ++tally.hits;
          if (covered_closed && !covered_open) ++tally.boundary;
        }
        return tally;
      });

  CoverageReport report;
  report.method = method;
  report.design = design;
  report.errors = errors;
  report.level = level;
  report.reps = reps;
  report.seed = seed;
  for (const auto& t : chunks) {
    report.hits += t.hits;
    report.boundary_hits += t.boundary;
  }
  report.coverage = Rational(report.hits, reps);
  double p = static_cast<double>(report.hits) / static_cast<double>(reps);
  report.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(reps));
  return report;
}

}  // namespace slopeci::mc
