#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <boost/math/distributions/students_t.hpp>

#include "axmap/errors.hpp"

namespace axmap {

// Per-instance objective differences y2(i) - y1(i) between two algorithms run
// on the same instances; label_a1 names the first (search-family) algorithm.
struct PairedSample {
  std::vector<double> diffs;
  std::string label_a1;
  std::string label_a2;
};

enum class Verdict { Vlsn, NonVlsn, Tie, None };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Vlsn: return "VLSN";
    case Verdict::NonVlsn: return "Non-VLSN";
    case Verdict::Tie: return "Tie";
    default: return "None";
  }
}

// Student-t upper quantile, rounded to 3 decimals. Reported reference
// intervals are computed at this quantile precision, so the rounding is part
// of the interval definition here.
inline double t_quantile(double prob, int df) {
  boost::math::students_t_distribution<double> dist(df);
  const double q = boost::math::quantile(dist, prob);
  return std::round(q * 1000.0) / 1000.0;
}

struct PairedCi {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, I-1 divisor
  double lower = 0.0;
  double upper = 0.0;
  Verdict verdict = Verdict::None;
};

namespace detail {

inline void mean_and_std(const std::vector<double>& xs, double& mean,
                         double& sd) {
  const double inv = 1.0 / static_cast<double>(xs.size());
  mean = 0.0;
  for (double x : xs) mean += x;
  mean *= inv;
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace detail

// Two-sided interval mean +- t * sd / sqrt(I-1). The sqrt(I-1) denominator
// (not sqrt(I)) is deliberate and matches the interval definition this
// harness reproduces. Verdict: the first algorithm wins iff lower > 0, the
// second iff upper < 0; a zero-width interval at zero is a tie.
inline PairedCi paired_ci(const PairedSample& sample, double confidence = 0.95) {
  const std::size_t count = sample.diffs.size();
  if (count < 2)
    throw InsufficientSampleError("paired interval needs at least 2 differences");
  PairedCi out;
  detail::mean_and_std(sample.diffs, out.mean, out.stddev);
  const double t = t_quantile(0.5 + confidence / 2.0, static_cast<int>(count) - 1);
  const double half = t * out.stddev / std::sqrt(static_cast<double>(count - 1));
  out.lower = out.mean - half;
  out.upper = out.mean + half;
  if (out.lower > 0.0)
    out.verdict = Verdict::Vlsn;
  else if (out.upper < 0.0)
    out.verdict = Verdict::NonVlsn;
  else if (out.mean == 0.0 && out.stddev == 0.0)
    out.verdict = Verdict::Tie;
  else
    out.verdict = Verdict::None;
  return out;
}

enum class ZeroPolicy { Strict, Epsilon };

struct CoxCi {
  double lower = 0.0;
  double upper = 0.0;
  double log_mean = 0.0;    // mean of ln(diff)
  double log_stddev = 0.0;  // sample std of ln(diff)
  int substituted = 0;      // differences floored under the epsilon policy
};

// Modified Cox interval for the mean of log-normally distributed positive
// differences: exp{ A + D^2/2 +- t * sqrt(D^2/2 + D^4 / (2(I-1))) } with A, D
// the mean and sample std of the logged differences.
inline CoxCi cox_log_ci(const PairedSample& sample, double confidence = 0.95,
                        ZeroPolicy policy = ZeroPolicy::Strict,
                        double floor = 1e-9) {
  const std::size_t count = sample.diffs.size();
  if (count < 2)
    throw InsufficientSampleError("log interval needs at least 2 differences");
  CoxCi out;
  std::vector<double> logs;
  logs.reserve(count);
  std::string offenders;
  for (std::size_t i = 0; i < count; ++i) {
    double d = sample.diffs[i];
    if (d <= 0.0) {
      if (policy == ZeroPolicy::Strict) {
        offenders += (offenders.empty() ? "" : ", ") + std::to_string(i + 1);
        continue;
      }
      d = floor;
      ++out.substituted;
    }
    logs.push_back(std::log(d));
  }
  if (!offenders.empty())
    throw NonPositiveDifferenceError(
        "non-positive differences at instances " + offenders);
  detail::mean_and_std(logs, out.log_mean, out.log_stddev);
  const double t = t_quantile(0.5 + confidence / 2.0, static_cast<int>(count) - 1);
  const double var = out.log_stddev * out.log_stddev;
  const double half =
      t * std::sqrt(var / 2.0 + var * var / (2.0 * static_cast<double>(count - 1)));
  const double center = out.log_mean + var / 2.0;
  out.lower = std::exp(center - half);
  out.upper = std::exp(center + half);
  return out;
}

}  // namespace axmap
