#pragma once

#include <utility>
#include <vector>

namespace nrl {

struct RateFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
  std::vector<std::pair<double, double>> points;
};

// Ordinary least squares y = slope x + intercept; needs >= 3 points.
RateFit fit_line(const std::vector<std::pair<double, double>>& points);

// log e = slope log eps + intercept over (eps, e) pairs, all positive.
RateFit fit_rate(const std::vector<std::pair<double, double>>& points);

// e / eps^2 = slope (1 + t) + intercept over (t, e / eps^2) pairs.
RateFit fit_time_growth(const std::vector<std::pair<double, double>>& points);

}  // namespace nrl
