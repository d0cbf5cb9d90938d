#include "nrl/harness/fit.hpp"

#include <cmath>

#include "nrl/errors.hpp"

namespace nrl {

RateFit fit_line(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("fit: need at least 3 points, got " + std::to_string(points.size()));
  const double n = double(points.size());
  double mx = 0, my = 0;
  for (auto [x, y] : points) {
    if (!std::isfinite(x) || !std::isfinite(y)) throw DomainError("fit: non-finite point");
    mx += x;
    my += y;
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0;
  for (auto [x, y] : points) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
    syy += (y - my) * (y - my);
  }
  if (sxx == 0) throw DomainError("fit: abscissae are all equal");
  RateFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (auto [x, y] : points) ss_res += std::pow(y - f.slope * x - f.intercept, 2);
  // a constant series is fitted exactly by slope 0
  f.r_squared = syy > 0 ? 1 - ss_res / syy : 1.0;
  f.points = points;
  return f;
}

RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> logs;
  for (auto [eps, e] : points) {
    if (!(eps > 0) || !(e > 0)) throw DomainError("fit_rate: values must be positive");
    logs.emplace_back(std::log(eps), std::log(e));
  }
  RateFit f = fit_line(logs);
  f.points = points;
  return f;
}

RateFit fit_time_growth(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> shifted;
  for (auto [t, y] : points) shifted.emplace_back(1 + t, y);
  RateFit f = fit_line(shifted);
  f.points = points;
  return f;
}

}  // namespace nrl
