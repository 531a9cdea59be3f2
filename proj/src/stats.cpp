#include "smspsa/stats.hpp"

#include <boost/math/distributions/students_t.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "smspsa/errors.hpp"

namespace smspsa::stats {

double binomial_upper_tail(std::size_t k, std::size_t n, double p) {
  if (k > n) return 0.0;
  if (k == 0) return 1.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double dn = static_cast<double>(n);
  const double lp = std::log(p);
  const double lq = std::log1p(-p);
  // Terms j = k..n; log-sum-exp around the largest.
  std::vector<double> logs;
  logs.reserve(n - k + 1);
  for (std::size_t j = k; j <= n; ++j) {
    const double dj = static_cast<double>(j);
    logs.push_back(std::lgamma(dn + 1) - std::lgamma(dj + 1) - std::lgamma(dn - dj + 1) + dj * lp + (dn - dj) * lq);
  }
  const double top = *std::max_element(logs.begin(), logs.end());
  double sum = 0.0;
  for (double l : logs) sum += std::exp(l - top);
  return std::min(1.0, std::exp(top) * sum);
}

double binomial_upper_tail_normal(std::size_t k, std::size_t n, double p) {
  const double mean = static_cast<double>(n) * p;
  const double sd = std::sqrt(static_cast<double>(n) * p * (1.0 - p));
  const double z = (static_cast<double>(k) - 0.5 - mean) / sd;
  return 0.5 * std::erfc(z / std::sqrt(2.0));
}

ProportionTest proportion_test(std::size_t successes, std::size_t trials, double level, double p0) {
  if (trials == 0) throw InputError("proportion test needs at least one trial");
  if (successes > trials) throw InputError("more successes than trials");
  ProportionTest t;
  t.successes = successes;
  t.trials = trials;
  t.exact = trials <= kExactTestLimit;
  t.p_value = t.exact ? binomial_upper_tail(successes, trials, p0) : binomial_upper_tail_normal(successes, trials, p0);
  t.reject = t.p_value < level;
  return t;
}

MeanInterval mean_confidence_interval(std::span<const double> values, double confidence) {
  if (values.size() < 2) throw InputError("confidence interval needs at least two values");
  MeanInterval out;
  out.count = values.size();
  const double n = static_cast<double>(values.size());
  out.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  const double se = std::sqrt(ss / (n - 1.0)) / std::sqrt(n);
  const boost::math::students_t dist(n - 1.0);
  const double q = boost::math::quantile(dist, 0.5 + confidence / 2.0);
  out.lower = out.mean - q * se;
  out.upper = out.mean + q * se;
  return out;
}

}  // namespace smspsa::stats
