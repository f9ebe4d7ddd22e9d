#pragma once

#include <vector>

namespace wos::bench {

/// Least-squares slope of log(y) against log(x). Needs at least three points,
/// all positive.
double fit_loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys);

double mean(const std::vector<double>& v);
double sample_variance(const std::vector<double>& v);
/// Linear-interpolated quantile, q in [0, 1].
double quantile(std::vector<double> v, double q);
inline double median(std::vector<double> v) { return quantile(std::move(v), 0.5); }

}  // namespace wos::bench
