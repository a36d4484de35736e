#include "carleson/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace carleson {

namespace {

GLRule make_rule(int n) {
  // Newton iteration on Legendre polynomials
  GLRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  const double eps = 3.0e-15;
  const int m = (n + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(M_PI * (i - 0.25) / (n + 0.5));
    double z1, pp;
    do {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = n * (z * p1 - p2) / (z * z - 1.0);
      z1 = z;
      z = z1 - p1 / pp;
    } while (std::fabs(z - z1) > eps);
    rule.x[i - 1] = -z;
    rule.x[n - i] = z;
    rule.w[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.w[n - i] = rule.w[i - 1];
  }
  return rule;
}

}  // namespace

const GLRule& gl_rule(int order) {
  if (order < 1) throw std::invalid_argument("gl_rule: order must be positive");
  static std::mutex mu;
  static std::map<int, GLRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_rule(order)).first;
  return it->second;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_slope: need two samples");
  double xm = 0, ym = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    xm += x[i];
    ym += y[i];
  }
  xm /= x.size();
  ym /= y.size();
  double num = 0, den = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    num += (x[i] - xm) * (y[i] - ym);
    den += (x[i] - xm) * (x[i] - xm);
  }
  if (den == 0) throw std::invalid_argument("fit_slope: degenerate abscissae");
  return num / den;
}

}  // namespace carleson
