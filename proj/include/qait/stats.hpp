#pragma once

#include <cstdint>
#include <span>

namespace qait::stats {

double mean(std::span<const double> xs);
// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double stddev(std::span<const double> xs);
double stderr_of_mean(std::span<const double> xs);

// log2 of the mean of 2^x. -inf entries contribute zero.
double log_mean_exp2(std::span<const double> xs);

struct Interval {
  double estimate;
  double sd;  // bootstrap standard deviation of the estimate
  double lo;  // estimate - 3 sd
  double hi;  // estimate + 3 sd
};

// Bootstrap of log_mean_exp2 with a seeded resampler.
Interval bootstrap_lme(std::span<const double> xs, std::uint64_t seed, int resamples = 1000);

// Normal 3-sigma interval on the mean.
Interval mean_interval(std::span<const double> xs);

// Spearman rank correlation with average ranks for ties.
double spearman(std::span<const double> x, std::span<const double> y);

struct LinearFit {
  double slope;
  double intercept;
  double r2;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

}  // namespace qait::stats
