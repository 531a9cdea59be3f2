#pragma once

#include <cstddef>
#include <span>
#include <string>

namespace smspsa::stats {

// P(X >= k) for X ~ Binomial(n, p), summed term by term in log space.
double binomial_upper_tail(std::size_t k, std::size_t n, double p = 0.5);

// Normal approximation of P(X >= k) with continuity correction.
double binomial_upper_tail_normal(std::size_t k, std::size_t n, double p = 0.5);

// Sample sizes up to this use the exact tail.
inline constexpr std::size_t kExactTestLimit = 500;

struct ProportionTest {
  std::size_t successes = 0;
  std::size_t trials = 0;
  double p_value = 1.0;
  bool exact = true;
  bool reject = false;
};

// One-sided test of H0: p <= p0 against H1: p > p0.
ProportionTest proportion_test(std::size_t successes, std::size_t trials, double level, double p0 = 0.5);

struct MeanInterval {
  double mean = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
};

// Two-sided t interval with count - 1 degrees of freedom.
MeanInterval mean_confidence_interval(std::span<const double> values, double confidence = 0.95);

}  // namespace smspsa::stats
