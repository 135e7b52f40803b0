// Acceptance gate for the slopeci library and CLI.  Runs the ten release
// criteria in order and prints exactly one [PASS]/[FAIL] line per criterion;
// the exit code is the number of failed criteria.
//
// Usage: acceptance <path-to-slopeci-cli> <path-to-data-dir>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "properties.hpp"
#include "slopeci/exact5.hpp"
#include "slopeci/exactdist.hpp"
#include "slopeci/geometry.hpp"
#include "slopeci/intervals.hpp"
#include "slopeci/mc.hpp"
#include "slopeci/rational.hpp"
#include "slopeci/slopes.hpp"

namespace {

using njson = nlohmann::json;
using slopeci::BigInt;
using slopeci::Rational;

// Pinned tolerances.
constexpr double kEndpointTol = 1e-12;     // criterion 1: golden endpoints
constexpr double kCellProbTol = 5e-8;      // criterion 5: p1..p3 to 7 decimals
constexpr double kBoundTol = 1e-7;         // criterion 5: coverage bound
constexpr double kTable2Tol = 0.015;       // criterion 7: 10,000-rep cells
constexpr double kHeadlineTol = 0.003;     // criterion 8: systematic n=5 run
constexpr int kPropertyReps = 1000;        // criterion 9: datasets per suite

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(10) << v;
  return os.str();
}

struct CommandResult {
  int status = -1;
  std::string output;
};

CommandResult run_command(const std::string& command) {
  CommandResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (!pipe) return result;
  char buffer[4096];
  std::size_t got;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0)
    result.output.append(buffer, got);
  int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

class Gate {
 public:
  void criterion(int id, const std::string& label,
                 const std::function<std::optional<std::string>()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::optional<std::string> failure;
    try {
      failure = body();
    } catch (const std::exception& e) {
      failure = std::string("unexpected exception: ") + e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::ostringstream line;
    line << (failure ? "[FAIL]" : "[PASS]") << " criterion " << id << ": " << label;
    if (failure) line << " -- " << *failure;
    line << " [" << std::fixed << std::setprecision(1) << secs << " s]";
    std::cout << line.str() << std::endl;
    if (failure) ++failures_;
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

// --------------------------------------------------------------------------
// Brute-force distribution oracles (criterion 4).
// --------------------------------------------------------------------------

slopeci::exactdist::ExactDistribution brute_kendall(int n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  const long long N = static_cast<long long>(n) * (n - 1) / 2;
  std::map<long long, long long> counts;
  long long total = 0;
  do {
    long long inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++inversions;
    ++counts[N - 2 * inversions];
    ++total;
  } while (std::next_permutation(perm.begin(), perm.end()));

  slopeci::exactdist::ExactDistribution dist;
  dist.kind = slopeci::exactdist::Kind::kendall;
  dist.size = n;
  for (const auto& [value, count] : counts) {
    dist.support.push_back(value);
    dist.pmf.push_back(Rational(count, total));
  }
  return dist;
}

slopeci::exactdist::ExactDistribution brute_signed_rank(int N) {
  const long long top = static_cast<long long>(N) * (N + 1) / 2;
  std::vector<long long> counts(top + 1, 0);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << N); ++mask) {
    long long t = 0;
    for (int i = 0; i < N; ++i)
      if ((mask >> i) & 1) t += i + 1;
    ++counts[t];
  }

  slopeci::exactdist::ExactDistribution dist;
  dist.kind = slopeci::exactdist::Kind::signed_rank;
  dist.size = N;
  const Rational denom(BigInt(1) << static_cast<unsigned>(N));
  for (long long t = 0; t <= top; ++t) {
    dist.support.push_back(t);
    dist.pmf.push_back(Rational(counts[t]) / denom);
  }
  return dist;
}

bool same_distribution(const slopeci::exactdist::ExactDistribution& a,
                       const slopeci::exactdist::ExactDistribution& b) {
  return a.support == b.support && a.pmf == b.pmf;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <slopeci-cli> <data-dir>\n";
    return 2;
  }
  const std::string cli = argv[1];
  const std::string data_dir = argv[2];
  Gate gate;

  // ------------------------------------------------------------------ 1 ---
  gate.criterion(1, "cloud-seeding golden fit via the CLI", [&]() -> std::optional<std::string> {
    const std::string cmd = "\"" + cli + "\" fit \"" + data_dir +
                            "/cloud_seeding.csv\" --method both --format json 2>/dev/null";
    auto t0 = std::chrono::steady_clock::now();
    const CommandResult res = run_command(cmd);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (res.status != 0) return "CLI exited with status " + std::to_string(res.status);
    if (secs >= 1.0) return "fit took " + fmt(secs) + " s (budget 1 s)";

    const njson j = njson::parse(res.output);
    const double estimate = j.at("estimate").get<double>();
    if (std::abs(estimate - (-0.05625)) > kEndpointTol)
      return "estimate " + fmt(estimate) + ", expected -0.05625";
    if (j.at("intervals").size() != 2) return "expected two intervals in the output";

    const njson& theil = j.at("intervals")[0];
    if (theil.at("method") != "theil") return "first interval is not theil";
    if (std::abs(theil.at("lower").get<double>() - (-0.15)) > kEndpointTol ||
        std::abs(theil.at("upper").get<double>() - 0.04) > kEndpointTol)
      return "theil interval " + theil.dump() + ", expected (-0.15, 0.04)";
    if (theil.at("lower_index") != 1 || theil.at("upper_index") != 10)
      return "theil endpoint indices, expected s_1 and s_10";
    if (theil.at("achieved_confidence") != "59/60")
      return "theil achieved confidence, expected 59/60";

    const njson& tukey = j.at("intervals")[1];
    if (tukey.at("method") != "tukey") return "second interval is not tukey";
    if (std::abs(tukey.at("lower").get<double>() - (-0.100)) > kEndpointTol ||
        std::abs(tukey.at("upper").get<double>() - (-0.015)) > kEndpointTol)
      return "tukey interval " + tukey.dump() + ", expected (-0.100, -0.015)";
    if (tukey.at("lower_index") != 9 || tukey.at("upper_index") != 47)
      return "tukey endpoint indices, expected w_9 and w_47";
    if (tukey.contains("achieved_confidence"))
      return "tukey interval must not claim an achieved confidence";
    return std::nullopt;
  });

  // ------------------------------------------------------------------ 2 ---
  gate.criterion(2, "exact quantiles k_5=10, t_10=47 and the impossible levels", [&]() -> std::optional<std::string> {
    const Rational a(1, 40);
    const auto k5 = slopeci::exactdist::kendall_upper_quantile(5, a);
    if (!k5 || *k5 != 10) return "k_5(0.025) != 10";
    const auto t10 = slopeci::exactdist::signed_rank_upper_quantile(10, a);
    if (!t10 || t10->value != 47 || !t10->exact) return "t_10(0.025) != 47 (exact)";
    if (slopeci::exactdist::kendall_upper_quantile(4, a))
      return "k_4(0.025) should not exist";
    if (slopeci::exactdist::kendall_upper_quantile(3, a))
      return "k_3(0.025) should not exist";
    if (slopeci::exactdist::signed_rank_upper_quantile(3, a))
      return "t_3(0.025) should not exist";
    return std::nullopt;
  });

  // ------------------------------------------------------------------ 3 ---
  gate.criterion(3, "exact confidences: 11/12 twice and the reference per-n column", [&]() -> std::optional<std::string> {
    if (slopeci::intervals::theil_type_confidence(4, 1, 6) != Rational(11, 12))
      return "confidence(n=4, s_1..s_6) != 11/12";
    if (slopeci::intervals::theil_type_confidence(5, 2, 9) != Rational(11, 12))
      return "confidence(n=5, s_2..s_9) != 11/12";

    const std::pair<int, const char*> column[] = {
        {6, "0.983"},   {10, "0.953"},  {20, "0.953"},  {30, "0.951"},
        {40, "0.952"},  {50, "0.950"},  {60, "0.950"},  {70, "0.951"},
        {80, "0.951"},  {90, "0.950"},  {100, "0.950"}, {120, "0.950"},
        {140, "0.950"}, {160, "0.950"}, {180, "0.950"}, {200, "0.950"}};
    for (const auto& [n, expected] : column) {
      const long long N = static_cast<long long>(n) * (n - 1) / 2;
      const auto k = slopeci::exactdist::kendall_upper_quantile(n, Rational(1, 40));
      if (!k) return "no 95% interval at n = " + std::to_string(n);
      const Rational conf = slopeci::intervals::theil_type_confidence(
          n, (N - *k) / 2 + 1, (N + *k) / 2);
      const std::string got = slopeci::decimal_string(conf, 3);
      if (got != expected)
        return "n = " + std::to_string(n) + ": confidence rounds to " + got +
               ", expected " + expected;
    }
    return std::nullopt;
  });

  // ------------------------------------------------------------------ 4 ---
  gate.criterion(4, "null distributions equal brute-force enumeration", [&]() -> std::optional<std::string> {
    for (int n = 2; n <= 7; ++n)
      if (!same_distribution(slopeci::exactdist::kendall_null_distribution(n),
                             brute_kendall(n)))
        return "kendall distribution differs from brute force at n = " +
               std::to_string(n);
    for (int N = 1; N <= 16; ++N)
      if (!same_distribution(slopeci::exactdist::signed_rank_null_distribution(N),
                             brute_signed_rank(N)))
        return "signed-rank distribution differs from brute force at N = " +
               std::to_string(N);
    return std::nullopt;
  });

  // ------------------------------------------------------------------ 5 ---
  gate.criterion(5, "exact n=5 coverage bound in both modes", [&]() -> std::optional<std::string> {
    const std::array<Rational, 5> x{Rational(1), Rational(2), Rational(3), Rational(4),
                                    Rational(5)};
    auto t0 = std::chrono::steady_clock::now();
    const auto fast = slopeci::exact5::compute_bound(x, Rational(1), /*full_mode=*/false);
    const auto full = slopeci::exact5::compute_bound(x, Rational(1), /*full_mode=*/true);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 600.0) return "bound computation took " + fmt(secs) + " s (budget 600 s)";

    if (fast.ordering_count != 768 || full.ordering_count != 768)
      return "admissible ordering count != 768";

    const auto check_cells = [&](const slopeci::exact5::BoundResult& r,
                                 const char* mode) -> std::optional<std::string> {
      const std::pair<const Rational*, double> cells[] = {
          {&r.p1, 0.8107315}, {&r.p2, 0.0595787}, {&r.p3, 0.0595787}};
      const char* names[] = {"p1", "p2", "p3"};
      for (int i = 0; i < 3; ++i) {
        const double got = slopeci::to_double(*cells[i].first);
        if (std::abs(got - cells[i].second) > kCellProbTol)
          return std::string(mode) + " " + names[i] + " = " + fmt(got) +
                 ", expected " + fmt(cells[i].second);
      }
      if (r.p4 != Rational(0))
        return std::string(mode) + " p4 != 0";
      const double bound = slopeci::to_double(r.bound);
      if (std::abs(bound - 0.9298889) > kBoundTol)
        return std::string(mode) + " bound = " + fmt(bound) + ", expected 0.9298889";
      return std::nullopt;
    };
    if (auto f = check_cells(fast, "fast")) return f;
    if (auto f = check_cells(full, "full")) return f;
    if (fast.bound != full.bound) return "fast and full modes disagree on the bound";
    return std::nullopt;
  });

  // ------------------------------------------------------------------ 6 ---
  gate.criterion(6, "ordering polytope volumes partition the error cube", [&]() -> std::optional<std::string> {
    const std::array<Rational, 5> x{Rational(1), Rational(2), Rational(3), Rational(4),
                                    Rational(5)};
    Rational total(0);
    for (const auto& ord : slopeci::exact5::admissible_orderings())
      total += slopeci::geometry::volume(
          slopeci::exact5::ordering_polytope(ord, x, Rational(1)));
    if (total != Rational(32)) {
      std::ostringstream os;
      os << "volumes sum to " << total << ", expected 32";
      return os.str();
    }
    return std::nullopt;
  });

  // ------------------------------------------------------------------ 7 ---
  gate.criterion(7, "reference 10,000-rep coverage table at n in {6,10,20,50}", [&]() -> std::optional<std::string> {
    struct Cell {
      bool clusters;
      slopeci::mc::ErrorFamily family;
      int n;
      double expected;
    };
    using EF = slopeci::mc::ErrorFamily;
    const Cell cells[] = {
        {false, EF::normal, 6, 0.869},   {false, EF::normal, 10, 0.804},
        {false, EF::normal, 20, 0.679},  {false, EF::normal, 50, 0.486},
        {false, EF::cauchy, 6, 0.850},   {false, EF::cauchy, 10, 0.773},
        {false, EF::cauchy, 20, 0.636},  {false, EF::cauchy, 50, 0.453},
        {false, EF::uniform, 6, 0.867},  {false, EF::uniform, 10, 0.793},
        {false, EF::uniform, 20, 0.675}, {false, EF::uniform, 50, 0.489},
        {true, EF::normal, 6, 0.871},    {true, EF::normal, 10, 0.804},
        {true, EF::normal, 20, 0.678},   {true, EF::normal, 50, 0.491},
        {true, EF::cauchy, 6, 0.855},    {true, EF::cauchy, 10, 0.777},
        {true, EF::cauchy, 20, 0.646},   {true, EF::cauchy, 50, 0.456},
        {true, EF::uniform, 6, 0.867},   {true, EF::uniform, 10, 0.800},
        {true, EF::uniform, 20, 0.675},  {true, EF::uniform, 50, 0.498},
    };
    std::string failures;
    for (const auto& cell : cells) {
      const auto design = cell.clusters
                              ? slopeci::mc::DesignSpec::two_clusters(cell.n)
                              : slopeci::mc::DesignSpec::evenly_spaced(cell.n);
      slopeci::mc::ErrorSpec errors;
      const char* family_name;
      switch (cell.family) {
        case EF::normal:
          errors = slopeci::mc::ErrorSpec::normal(0.1);
          family_name = "normal";
          break;
        case EF::cauchy:
          errors = slopeci::mc::ErrorSpec::cauchy(0.0, 0.1);
          family_name = "cauchy";
          break;
        default:
          errors = slopeci::mc::ErrorSpec::uniform(-0.2, 0.2);
          family_name = "uniform";
          break;
      }
      const auto report =
          slopeci::mc::coverage(slopeci::intervals::Method::tukey, design, errors,
                                Rational(19, 20), 10000, 20240915);
      const double got = slopeci::to_double(report.coverage);
      if (std::abs(got - cell.expected) > kTable2Tol) {
        if (!failures.empty()) failures += "; ";
        failures += std::string(cell.clusters ? "clusters" : "evenly") + "/" +
                    family_name + " n=" + std::to_string(cell.n) + ": got " +
                    fmt(got) + ", expected " + fmt(cell.expected);
      }
    }
    if (!failures.empty()) return failures;
    return std::nullopt;
  });

  // ------------------------------------------------------------------ 8 ---
  gate.criterion(8, "million-replicate n=5 uniform coverage near 0.879", [&]() -> std::optional<std::string> {
    const auto report = slopeci::mc::coverage(
        slopeci::intervals::Method::tukey, slopeci::mc::DesignSpec::evenly_spaced(5),
        slopeci::mc::ErrorSpec::uniform(-0.2, 0.2), Rational(19, 20), 1000000,
        20240915);
    const double got = slopeci::to_double(report.coverage);
    if (std::abs(got - 0.879) > kHeadlineTol)
      return "coverage " + fmt(got) + ", expected 0.879 +- " + fmt(kHeadlineTol);
    return std::nullopt;
  });

  // ------------------------------------------------------------------ 9 ---
  gate.criterion(9, "randomized property suites (1000 datasets each)", [&]() -> std::optional<std::string> {
    const std::pair<const char*, std::function<std::optional<std::string>(std::uint64_t, int)>>
        suites[] = {
            {"interval nesting", props::check_tukey_inside_theil},
            {"walsh order-statistic conditions", props::check_walsh_order_conditions},
            {"middle-slope law", props::check_middle_slope},
            {"walsh extremes", props::check_walsh_extremes},
            {"affine equivariance", props::check_equivariance},
            {"walsh selection vs brute force", props::check_walsh_select},
        };
    std::uint64_t seed = 6021023;
    for (const auto& [name, suite] : suites) {
      if (auto failure = suite(seed++, kPropertyReps))
        return std::string(name) + ": " + *failure;
    }
    return std::nullopt;
  });

  // ----------------------------------------------------------------- 10 ---
  gate.criterion(10, "byte-identical seeded output across runs and 1 vs 8 workers", [&]() -> std::optional<std::string> {
    const std::string coverage_cmd = "\"" + cli +
                                     "\" coverage --method tukey --n 6,10 --reps 3000 "
                                     "--seed 123 --format csv 2>/dev/null";
    const CommandResult first = run_command("env SLOPECI_THREADS=8 " + coverage_cmd);
    const CommandResult second = run_command("env SLOPECI_THREADS=8 " + coverage_cmd);
    const CommandResult serial = run_command("env SLOPECI_THREADS=1 " + coverage_cmd);
    if (first.status != 0 || second.status != 0 || serial.status != 0)
      return "coverage command failed";
    if (first.output.empty()) return "coverage command produced no output";
    if (first.output != second.output) return "same-seed reruns differ";
    if (first.output != serial.output) return "1-thread and 8-thread outputs differ";

    const std::string fit_cmd = "\"" + cli + "\" fit \"" + data_dir +
                                "/cloud_seeding.csv\" --format json 2>/dev/null";
    const CommandResult fit_a = run_command(fit_cmd);
    const CommandResult fit_b = run_command(fit_cmd);
    if (fit_a.output.empty() || fit_a.output != fit_b.output)
      return "fit output is not reproducible";
    return std::nullopt;
  });

  std::cout << (gate.failures() == 0 ? "acceptance: all 10 criteria passed"
                                     : "acceptance: " + std::to_string(gate.failures()) +
                                           " criterion(s) failed")
            << std::endl;
  return gate.failures();
}
