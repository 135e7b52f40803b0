// slopeci — nonparametric confidence intervals for a regression slope.
//
// Subcommands:
//   fit       read x,y data from CSV and report slope estimate and CIs
//   coverage  Monte Carlo estimate of the true coverage of a CI method
//   exact-n5  exact upper bound on the n=5 Walsh-average CI's confidence
//   dist      null distribution tables and upper quantiles
//
// Runtime chatter (progress, timings) goes to stderr so that stdout is
// byte-identical for a fixed seed regardless of machine or worker count.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "slopeci/errors.hpp"
#include "slopeci/exact5.hpp"
#include "slopeci/exactdist.hpp"
#include "slopeci/geometry.hpp"
#include "slopeci/intervals.hpp"
#include "slopeci/mc.hpp"
#include "slopeci/rational.hpp"
#include "slopeci/slopes.hpp"

namespace {

using slopeci::Rational;
using ojson = nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string rational_text(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

// Fixed-point decimal with trailing zeros (and a trailing dot) removed.
std::string trimmed_decimal(const Rational& r, int places) {
  std::string s = slopeci::decimal_string(r, places);
  if (s.find('.') == std::string::npos) return s;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

// Accepts "19/20" or a decimal like "0.95".
Rational parse_rational_arg(const std::string& tok, const std::string& what) {
  try {
    auto slash = tok.find('/');
    if (slash != std::string::npos) {
      Rational num = slopeci::rational_from_decimal(tok.substr(0, slash));
      Rational den = slopeci::rational_from_decimal(tok.substr(slash + 1));
      if (den == 0) throw slopeci::invalid_parameter(what + ": zero denominator");
      return num / den;
    }
    return slopeci::rational_from_decimal(tok);
  } catch (const slopeci::invalid_parameter&) {
    throw slopeci::invalid_parameter(what + ": cannot parse '" + tok + "'");
  }
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw slopeci::invalid_parameter("cannot open output file '" + out_path + "'");
  out << text;
}

void print_tukey_banner() {
  std::cerr << "WARNING: the 'a la Tukey' interval built from Walsh averages of\n"
               "pairwise slopes does not attain its nominal confidence level for\n"
               "the regression slope; its true coverage lies below the nominal\n"
               "level and degrades as n grows. Use the Theil interval when a\n"
               "calibrated confidence level is required.\n";
}

// ---------------------------------------------------------------------------
// fit
// ---------------------------------------------------------------------------

struct FitConfig {
  std::string csv_path;
  std::string level = "0.95";
  std::string method = "both";
  std::string format = "text";
  std::string out_path;
};

// Reads a two-column CSV with header "x,y".
struct XyData {
  std::vector<double> x;
  std::vector<double> y;
};

std::string strip_ws(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_csv_number(const std::string& field, size_t line_no) {
  std::string tok = strip_ws(field);
  if (tok.empty())
    throw slopeci::invalid_dataset("CSV line " + std::to_string(line_no) + ": empty field");
  const char* begin = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + tok.size() || !std::isfinite(v))
    throw slopeci::invalid_dataset("CSV line " + std::to_string(line_no) +
                                   ": cannot parse number '" + tok + "'");
  return v;
}

XyData read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw slopeci::invalid_dataset("cannot open input file '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw slopeci::invalid_dataset("CSV file '" + path + "' is empty");
  {
    std::string header = strip_ws(line);
    auto comma = header.find(',');
    if (comma == std::string::npos || strip_ws(header.substr(0, comma)) != "x" ||
        strip_ws(header.substr(comma + 1)) != "y")
      throw slopeci::invalid_dataset("CSV header must be 'x,y'");
  }
  XyData data;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (strip_ws(line).empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw slopeci::invalid_dataset("CSV line " + std::to_string(line_no) +
                                     ": expected exactly two fields");
    data.x.push_back(parse_csv_number(line.substr(0, comma), line_no));
    data.y.push_back(parse_csv_number(line.substr(comma + 1), line_no));
  }
  if (data.x.empty()) throw slopeci::invalid_dataset("CSV file has no data rows");
  // Order by x; the dataset constructor enforces strictly increasing x.
  std::vector<size_t> idx(data.x.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return data.x[a] < data.x[b]; });
  XyData sorted;
  for (size_t i : idx) {
    sorted.x.push_back(data.x[i]);
    sorted.y.push_back(data.y[i]);
  }
  return sorted;
}

struct MethodReport {
  std::string name;
  std::optional<slopeci::intervals::Interval> interval;
  std::string error;
  std::string max_achievable;  // set when the level is unachievable
};

int run_fit(const FitConfig& cfg) {
  Rational level = parse_rational_arg(cfg.level, "--level");
  XyData xy = read_csv(cfg.csv_path);
  slopeci::slopes::Dataset data(xy.x, xy.y);
  auto ss = slopeci::slopes::pairwise_slopes(data);
  double estimate = slopeci::slopes::theil_estimate(ss);

  std::vector<std::string> methods;
  if (cfg.method == "both")
    methods = {"theil", "tukey"};
  else
    methods = {cfg.method};

  bool any_unachievable = false;
  std::vector<MethodReport> reports;
  for (const auto& name : methods) {
    MethodReport rep;
    rep.name = name;
    try {
      rep.interval = name == "theil" ? slopeci::intervals::theil_ci(data, level)
                                     : slopeci::intervals::tukey_ci(data, level);
    } catch (const slopeci::unachievable_level& e) {
      rep.error = e.what();
      rep.max_achievable = rational_text(e.max_achievable());
      any_unachievable = true;
    }
    reports.push_back(std::move(rep));
  }

  for (const auto& rep : reports)
    if (rep.name == "tukey") print_tukey_banner();

  std::string level_text = trimmed_decimal(level, 6);
  std::ostringstream out;
  if (cfg.format == "text") {
    out << "observations: " << data.x.size() << "\n";
    out << "pairwise slopes: " << ss.count() << "\n";
    out << "theil-sen estimate: " << fmt_double(estimate) << "\n";
    for (const auto& rep : reports) {
      out << rep.name << " " << level_text << " CI: ";
      if (rep.interval) {
        const auto& iv = *rep.interval;
        const char* sym = rep.name == "theil" ? "s" : "w";
        out << "(" << fmt_double(iv.lower) << ", " << fmt_double(iv.upper) << ")"
            << "  endpoints " << sym << "_" << iv.lower_index << " and " << sym
            << "_" << iv.upper_index;
        if (iv.achieved_confidence)
          out << "  achieved confidence " << rational_text(*iv.achieved_confidence)
              << " ~ " << slopeci::decimal_string(*iv.achieved_confidence, 6);
        if (iv.degenerate) out << "  [degenerate: interval is empty]";
        out << "\n";
      } else {
        out << "unachievable: " << rep.error << "\n";
      }
    }
  } else if (cfg.format == "csv") {
    out << "method,n,pair_count,estimate,level,lower,upper,lower_index,upper_index,"
           "achieved_confidence,achieved_confidence_decimal,degenerate,error\n";
    for (const auto& rep : reports) {
      out << rep.name << "," << data.x.size() << "," << ss.count() << ","
          << fmt_double(estimate) << "," << level_text << ",";
      if (rep.interval) {
        const auto& iv = *rep.interval;
        out << fmt_double(iv.lower) << "," << fmt_double(iv.upper) << ","
            << iv.lower_index << "," << iv.upper_index << ",";
        if (iv.achieved_confidence)
          out << rational_text(*iv.achieved_confidence) << ","
              << slopeci::decimal_string(*iv.achieved_confidence, 6) << ",";
        else
          out << ",,";
        out << (iv.degenerate ? "true" : "false") << ",\n";
      } else {
        out << ",,,,,,," << "\"" << rep.error << "\"\n";
      }
    }
  } else {
    ojson j;
    j["command"] = "fit";
    j["input"] = cfg.csv_path;
    j["n"] = data.x.size();
    j["pair_count"] = ss.count();
    j["estimate"] = estimate;
    j["level"] = level_text;
    j["intervals"] = ojson::array();
    for (const auto& rep : reports) {
      ojson ji;
      ji["method"] = rep.name;
      if (rep.interval) {
        const auto& iv = *rep.interval;
        ji["lower"] = iv.lower;
        ji["upper"] = iv.upper;
        ji["lower_index"] = iv.lower_index;
        ji["upper_index"] = iv.upper_index;
        if (iv.achieved_confidence) {
          ji["achieved_confidence"] = rational_text(*iv.achieved_confidence);
          ji["achieved_confidence_decimal"] =
              slopeci::decimal_string(*iv.achieved_confidence, 6);
        }
        ji["degenerate"] = iv.degenerate;
      } else {
        ji["error"] = rep.error;
        ji["max_achievable_level"] = rep.max_achievable;
      }
      j["intervals"].push_back(std::move(ji));
    }
    out << j.dump(2) << "\n";
  }
  write_output(out.str(), cfg.out_path);
  return any_unachievable ? 3 : 0;
}

// ---------------------------------------------------------------------------
// coverage
// ---------------------------------------------------------------------------

struct CoverageConfig {
  std::string method = "tukey";
  std::string design = "evenly";
  std::string errors = "normal";
  std::vector<int> ns;
  std::vector<double> explicit_x;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 20240915;
  std::string level = "0.95";
  double slope = 1.0;
  double intercept = 0.0;
  double normal_sd = 0.1;
  double cauchy_location = 0.0;
  double cauchy_scale = 0.1;
  double uniform_lo = -0.2;
  double uniform_hi = 0.2;
  std::string format = "text";
  std::string out_path;
};

int run_coverage(const CoverageConfig& cfg) {
  Rational level = parse_rational_arg(cfg.level, "--level");
  auto method = cfg.method == "theil" ? slopeci::intervals::Method::theil
                                      : slopeci::intervals::Method::tukey;
  slopeci::mc::ErrorSpec errors = slopeci::mc::ErrorSpec::normal(cfg.normal_sd);
  std::string errors_text;
  if (cfg.errors == "normal") {
    errors = slopeci::mc::ErrorSpec::normal(cfg.normal_sd);
    errors_text = "normal(sd=" + fmt_double(cfg.normal_sd) + ")";
  } else if (cfg.errors == "cauchy") {
    errors = slopeci::mc::ErrorSpec::cauchy(cfg.cauchy_location, cfg.cauchy_scale);
    errors_text = "cauchy(location=" + fmt_double(cfg.cauchy_location) +
                  ";scale=" + fmt_double(cfg.cauchy_scale) + ")";
  } else {
    errors = slopeci::mc::ErrorSpec::uniform(cfg.uniform_lo, cfg.uniform_hi);
    errors_text = "uniform(lo=" + fmt_double(cfg.uniform_lo) +
                  ";hi=" + fmt_double(cfg.uniform_hi) + ")";
  }

  std::vector<int> ns = cfg.ns;
  bool explicit_design = cfg.design == "explicit";
  if (explicit_design) {
    if (cfg.explicit_x.empty())
      throw slopeci::invalid_parameter("--design explicit requires --x");
    ns = {static_cast<int>(cfg.explicit_x.size())};
  } else if (ns.empty()) {
    ns = {6, 10, 20, 50};
  }

  std::string level_text = trimmed_decimal(level, 6);
  struct Row {
    int n;
    slopeci::mc::CoverageReport report;
    std::string theil_exact;  // "none" when the level is unachievable
  };
  std::vector<Row> rows;
  for (int n : ns) {
    slopeci::mc::DesignSpec design = explicit_design
        ? slopeci::mc::DesignSpec::explicit_points(cfg.explicit_x)
        : (cfg.design == "evenly" ? slopeci::mc::DesignSpec::evenly_spaced(n)
                                  : slopeci::mc::DesignSpec::two_clusters(n));
    auto t0 = std::chrono::steady_clock::now();
    auto report = slopeci::mc::coverage(method, design, errors, level, cfg.reps,
                                        cfg.seed, cfg.slope, cfg.intercept);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "coverage n=" << n << ": " << cfg.reps << " replicates in "
              << secs << " s\n";

    std::string theil_exact = "none";
    long long pairs = static_cast<long long>(n) * (n - 1) / 2;
    Rational alpha = (Rational(1) - level) / 2;
    if (auto k = slopeci::exactdist::kendall_upper_quantile(n, alpha)) {
      long long l = (pairs - *k) / 2 + 1;
      long long u = (pairs + *k) / 2;
      theil_exact =
          slopeci::decimal_string(slopeci::intervals::theil_type_confidence(n, l, u), 6);
    }
    rows.push_back({n, std::move(report), std::move(theil_exact)});
  }

  std::ostringstream out;
  if (cfg.format == "text") {
    out << "method: " << cfg.method << "  design: " << cfg.design
        << "  errors: " << errors_text << "\n";
    out << "level: " << level_text << "  reps: " << cfg.reps
        << "  seed: " << cfg.seed << "\n";
    out << "n  coverage  std_error  hits  boundary_hits  theil_exact\n";
    for (const auto& row : rows) {
      out << row.n << "  " << slopeci::decimal_string(row.report.coverage, 6) << "  "
          << fmt_double(row.report.std_error) << "  " << row.report.hits << "  "
          << row.report.boundary_hits << "  " << row.theil_exact << "\n";
    }
  } else if (cfg.format == "csv") {
    out << "method,design,errors,level,reps,seed,n,coverage,std_error,hits,"
           "boundary_hits,theil_exact_confidence\n";
    for (const auto& row : rows) {
      out << cfg.method << "," << cfg.design << "," << errors_text << ","
          << level_text << "," << cfg.reps << "," << cfg.seed << "," << row.n << ","
          << slopeci::decimal_string(row.report.coverage, 6) << ","
          << fmt_double(row.report.std_error) << "," << row.report.hits << ","
          << row.report.boundary_hits << "," << row.theil_exact << "\n";
    }
  } else {
    ojson j;
    j["command"] = "coverage";
    j["method"] = cfg.method;
    j["design"] = cfg.design;
    j["errors"] = errors_text;
    j["level"] = level_text;
    j["reps"] = cfg.reps;
    j["seed"] = cfg.seed;
    j["rows"] = ojson::array();
    for (const auto& row : rows) {
      ojson jr;
      jr["n"] = row.n;
      jr["coverage"] = slopeci::decimal_string(row.report.coverage, 6);
      jr["coverage_fraction"] =
          std::to_string(row.report.hits) + "/" + std::to_string(row.report.reps);
      jr["std_error"] = row.report.std_error;
      jr["hits"] = row.report.hits;
      jr["boundary_hits"] = row.report.boundary_hits;
      jr["theil_exact_confidence"] = row.theil_exact;
      j["rows"].push_back(std::move(jr));
    }
    out << j.dump(2) << "\n";
  }
  write_output(out.str(), cfg.out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// exact-n5
// ---------------------------------------------------------------------------

struct ExactConfig {
  std::string mode = "fast";
  std::string x_arg = "1,2,3,4,5";
  std::string half_width = "1";
  std::uint64_t mc_check = 0;
  std::uint64_t mc_seed = 20240915;
  std::string dump_dir;
  std::string format = "text";
  std::string out_path;
};

std::array<Rational, 5> parse_design_arg(const std::string& arg) {
  std::vector<Rational> vals;
  std::stringstream ss(arg);
  std::string tok;
  while (std::getline(ss, tok, ',')) vals.push_back(parse_rational_arg(tok, "--x"));
  if (vals.size() != 5)
    throw slopeci::invalid_parameter("--x needs exactly 5 comma-separated values");
  std::array<Rational, 5> x;
  std::copy(vals.begin(), vals.end(), x.begin());
  return x;
}

void dump_polytopes(const std::string& dir, const std::array<Rational, 5>& x,
                    const Rational& h, bool full_mode) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  auto orderings = slopeci::exact5::admissible_orderings();
  std::vector<slopeci::exact5::Condition> cells = {slopeci::exact5::Condition::p1,
                                                   slopeci::exact5::Condition::p2};
  if (full_mode) {
    cells.push_back(slopeci::exact5::Condition::p3);
    cells.push_back(slopeci::exact5::Condition::p4);
  }
  std::ofstream index(fs::path(dir) / "orderings.txt");
  size_t files = 0;
  for (size_t i = 0; i < orderings.size(); ++i) {
    index << "ordering_" << i << ":";
    for (const auto& pr : orderings[i].order)
      index << " (" << pr.first << "," << pr.second << ")";
    index << "\n";
    for (size_t c = 0; c < cells.size(); ++c) {
      auto poly = slopeci::exact5::compile_polytope(orderings[i], cells[c], x, h);
      std::ostringstream name;
      name << "ordering_" << i << "_p" << c + 1 << ".hrep";
      std::ofstream f(fs::path(dir) / name.str());
      slopeci::geometry::write_hrep(poly, f);
      ++files;
    }
  }
  std::cerr << "wrote " << files << " polytopes and orderings.txt to " << dir << "\n";
}

int run_exact_n5(const ExactConfig& cfg) {
  std::array<Rational, 5> x = parse_design_arg(cfg.x_arg);
  Rational h = parse_rational_arg(cfg.half_width, "--half-width");
  bool full = cfg.mode == "full";

  auto t0 = std::chrono::steady_clock::now();
  auto res = slopeci::exact5::compute_bound(x, h, full);
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << "computed " << res.ordering_count * (res.used_symmetry ? 2 : 4)
            << " cell volumes in " << secs << " s\n";

  if (!cfg.dump_dir.empty()) dump_polytopes(cfg.dump_dir, x, h, full);

  std::optional<slopeci::exact5::McBoundCheck> mc;
  if (cfg.mc_check > 0) {
    auto t1 = std::chrono::steady_clock::now();
    mc = slopeci::exact5::mc_bound_check(x, h, cfg.mc_check, cfg.mc_seed);
    std::cerr << "mc check: " << cfg.mc_check << " samples in "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - t1)
                     .count()
              << " s\n";
  }

  const std::array<const Rational*, 4> ps = {&res.p1, &res.p2, &res.p3, &res.p4};
  std::ostringstream out;
  if (cfg.format == "text") {
    out << "admissible orderings: " << res.ordering_count << "\n";
    out << "mode: " << (res.full_mode ? "full (all four cells computed directly)"
                                      : "fast (p3 = p2 and p4 = 0 by symmetry)")
        << "\n";
    for (int i = 0; i < 4; ++i)
      out << "p" << i + 1 << "    = " << slopeci::decimal_string(*ps[i], 7) << "  (= "
          << rational_text(*ps[i]) << ")\n";
    out << "bound = " << slopeci::decimal_string(res.bound, 7) << "  (= "
        << rational_text(res.bound) << ")\n";
    out << "the true confidence level of the nominal-95% 'a la Tukey' interval\n"
        << "(w_9, w_47) is at most " << slopeci::decimal_string(res.bound, 7)
        << (res.bound < Rational(19, 20) ? ", below the nominal 0.95\n"
                                         : "\n");
    if (mc) {
      out << "mc check (samples=" << mc->samples << ", seed=" << cfg.mc_seed << "):\n";
      for (int i = 0; i < 4; ++i) {
        double diff = mc->p[i] - slopeci::to_double(*ps[i]);
        out << "  p" << i + 1 << " = " << fmt_double(mc->p[i]) << "  +- "
            << fmt_double(mc->std_error[i]) << "  (diff " << fmt_double(diff) << ")\n";
      }
      out << "  bound = " << fmt_double(mc->bound) << "\n";
    }
  } else if (cfg.format == "csv") {
    out << "mode,orderings,p1,p2,p3,p4,bound,p1_exact,p2_exact,p3_exact,p4_exact,"
           "bound_exact\n";
    out << (res.full_mode ? "full" : "fast") << "," << res.ordering_count;
    for (int i = 0; i < 4; ++i) out << "," << slopeci::decimal_string(*ps[i], 7);
    out << "," << slopeci::decimal_string(res.bound, 7);
    for (int i = 0; i < 4; ++i) out << "," << rational_text(*ps[i]);
    out << "," << rational_text(res.bound) << "\n";
    if (mc) {
      out << "mc_samples,mc_seed,mc_p1,mc_p2,mc_p3,mc_p4,mc_bound,,,,,\n";
      out << mc->samples << "," << cfg.mc_seed;
      for (int i = 0; i < 4; ++i) out << "," << fmt_double(mc->p[i]);
      out << "," << fmt_double(mc->bound) << ",,,,,\n";
    }
  } else {
    ojson j;
    j["command"] = "exact-n5";
    j["mode"] = res.full_mode ? "full" : "fast";
    j["orderings"] = res.ordering_count;
    for (int i = 0; i < 4; ++i) {
      std::string key = "p" + std::to_string(i + 1);
      j[key] = slopeci::decimal_string(*ps[i], 7);
      j[key + "_exact"] = rational_text(*ps[i]);
    }
    j["bound"] = slopeci::decimal_string(res.bound, 7);
    j["bound_exact"] = rational_text(res.bound);
    if (mc) {
      ojson jm;
      jm["samples"] = mc->samples;
      jm["seed"] = cfg.mc_seed;
      for (int i = 0; i < 4; ++i) {
        jm["p" + std::to_string(i + 1)] = mc->p[i];
        jm["p" + std::to_string(i + 1) + "_std_error"] = mc->std_error[i];
      }
      jm["bound"] = mc->bound;
      j["mc_check"] = std::move(jm);
    }
    out << j.dump(2) << "\n";
  }
  write_output(out.str(), cfg.out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// dist
// ---------------------------------------------------------------------------

struct DistConfig {
  std::string kind = "kendall";
  int size = 0;
  std::string alpha = "0.025";
  bool quantile_only = false;
  std::string format = "text";
  std::string out_path;
};

int run_dist(const DistConfig& cfg) {
  Rational alpha = parse_rational_arg(cfg.alpha, "--alpha");
  bool kendall = cfg.kind == "kendall";

  std::optional<slopeci::exactdist::ExactDistribution> dist;
  if (!cfg.quantile_only)
    dist = kendall ? slopeci::exactdist::kendall_null_distribution(cfg.size)
                   : slopeci::exactdist::signed_rank_null_distribution(cfg.size);

  std::optional<long long> quantile;
  bool exact = true;
  if (kendall) {
    quantile = slopeci::exactdist::kendall_upper_quantile(cfg.size, alpha);
  } else if (auto q = slopeci::exactdist::signed_rank_upper_quantile(cfg.size, alpha)) {
    quantile = q->value;
    exact = q->exact;
  }

  std::string alpha_text = trimmed_decimal(alpha, 9);
  std::ostringstream out;
  if (cfg.format == "text") {
    out << (kendall ? "kendall K" : "wilcoxon signed-rank T+")
        << " null distribution, size = " << cfg.size << "\n";
    if (dist) {
      out << "value  probability  decimal\n";
      for (size_t i = 0; i < dist->support.size(); ++i)
        out << dist->support[i] << "  " << rational_text(dist->pmf[i]) << "  "
            << slopeci::decimal_string(dist->pmf[i], 8) << "\n";
    }
    out << "upper quantile at alpha = " << alpha_text << ": ";
    if (quantile)
      out << *quantile << (exact ? "" : "  (normal approximation)") << "\n";
    else
      out << "none (no achievable tail at this alpha)\n";
  } else if (cfg.format == "csv") {
    out << "row,value,probability,probability_decimal\n";
    if (dist)
      for (size_t i = 0; i < dist->support.size(); ++i)
        out << "pmf," << dist->support[i] << "," << rational_text(dist->pmf[i]) << ","
            << slopeci::decimal_string(dist->pmf[i], 8) << "\n";
    out << "quantile," << (quantile ? std::to_string(*quantile) : "none") << ","
        << alpha_text << "," << (exact ? "exact" : "approximate") << "\n";
  } else {
    ojson j;
    j["command"] = "dist";
    j["kind"] = cfg.kind;
    j["size"] = cfg.size;
    j["alpha"] = alpha_text;
    if (dist) {
      j["support"] = dist->support;
      auto& pmf = j["pmf"] = ojson::array();
      auto& dec = j["pmf_decimal"] = ojson::array();
      for (size_t i = 0; i < dist->pmf.size(); ++i) {
        pmf.push_back(rational_text(dist->pmf[i]));
        dec.push_back(slopeci::decimal_string(dist->pmf[i], 8));
      }
    }
    if (quantile) {
      j["quantile"] = *quantile;
      j["quantile_exact"] = exact;
    } else {
      j["quantile"] = "none";
    }
    out << j.dump(2) << "\n";
  }
  write_output(out.str(), cfg.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonparametric confidence intervals for a regression slope"};
  app.require_subcommand(1);

  FitConfig fit;
  auto* fit_cmd = app.add_subcommand("fit", "estimate the slope and report CIs from CSV data");
  fit_cmd->add_option("input", fit.csv_path, "CSV file with header x,y")->required();
  fit_cmd->add_option("--level", fit.level, "confidence level (decimal or fraction)");
  fit_cmd->add_option("--method", fit.method, "interval method")
      ->check(CLI::IsMember({"theil", "tukey", "both"}));
  fit_cmd->add_option("--format", fit.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  fit_cmd->add_option("--out", fit.out_path, "write output to this file");

  CoverageConfig cov;
  auto* cov_cmd =
      app.add_subcommand("coverage", "Monte Carlo estimate of a CI method's true coverage");
  cov_cmd->add_option("--method", cov.method, "interval method")
      ->check(CLI::IsMember({"theil", "tukey"}));
  cov_cmd->add_option("--design", cov.design, "x design")
      ->check(CLI::IsMember({"evenly", "two-clusters", "explicit"}));
  cov_cmd->add_option("--errors", cov.errors, "error distribution")
      ->check(CLI::IsMember({"normal", "cauchy", "uniform"}));
  cov_cmd->add_option("--n", cov.ns, "sample sizes (repeat or comma-separate)")
      ->delimiter(',');
  cov_cmd->add_option("--x", cov.explicit_x, "explicit design points for --design explicit")
      ->delimiter(',');
  cov_cmd->add_option("--reps", cov.reps, "Monte Carlo replicates");
  cov_cmd->add_option("--seed", cov.seed, "RNG seed");
  cov_cmd->add_option("--level", cov.level, "confidence level");
  cov_cmd->add_option("--slope", cov.slope, "true slope");
  cov_cmd->add_option("--intercept", cov.intercept, "true intercept");
  cov_cmd->add_option("--normal-sd", cov.normal_sd, "normal errors: standard deviation");
  cov_cmd->add_option("--cauchy-location", cov.cauchy_location, "cauchy errors: location");
  cov_cmd->add_option("--cauchy-scale", cov.cauchy_scale, "cauchy errors: scale");
  cov_cmd->add_option("--uniform-lo", cov.uniform_lo, "uniform errors: lower bound");
  cov_cmd->add_option("--uniform-hi", cov.uniform_hi, "uniform errors: upper bound");
  cov_cmd->add_option("--format", cov.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  cov_cmd->add_option("--out", cov.out_path, "write output to this file");

  ExactConfig ex;
  auto* ex_cmd = app.add_subcommand(
      "exact-n5", "exact bound on the n=5 Walsh-average CI's true confidence");
  ex_cmd->add_option("--mode", ex.mode, "fast uses the symmetry shortcuts")
      ->check(CLI::IsMember({"fast", "full"}));
  ex_cmd->add_option("--x", ex.x_arg, "five design points (comma-separated)");
  ex_cmd->add_option("--half-width", ex.half_width, "uniform error half-width h");
  ex_cmd->add_option("--mc-check", ex.mc_check, "append a Monte Carlo cross-check");
  ex_cmd->add_option("--mc-seed", ex.mc_seed, "seed for the Monte Carlo cross-check");
  ex_cmd->add_option("--dump-polytopes", ex.dump_dir,
                     "write every compiled polytope (H-representation) to this directory");
  ex_cmd->add_option("--format", ex.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  ex_cmd->add_option("--out", ex.out_path, "write output to this file");

  DistConfig dist;
  auto* dist_cmd =
      app.add_subcommand("dist", "null distribution table and upper quantile");
  dist_cmd->add_option("--kind", dist.kind, "distribution kind")
      ->check(CLI::IsMember({"kendall", "signed-rank"}));
  dist_cmd->add_option("--n", dist.size,
                       "size (kendall: observations; signed-rank: summands)")
      ->required();
  dist_cmd->add_option("--alpha", dist.alpha, "upper-tail probability");
  dist_cmd->add_flag("--quantile-only", dist.quantile_only, "skip the pmf table");
  dist_cmd->add_option("--format", dist.format, "output format")
      ->check(CLI::IsMember({"text", "csv", "json"}));
  dist_cmd->add_option("--out", dist.out_path, "write output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (fit_cmd->parsed()) return run_fit(fit);
    if (cov_cmd->parsed()) return run_coverage(cov);
    if (ex_cmd->parsed()) return run_exact_n5(ex);
    return run_dist(dist);
  } catch (const slopeci::unachievable_level& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
