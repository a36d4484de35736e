#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace carleson {

struct GLRule {
  std::vector<double> x, w;  // nodes and weights on [-1, 1]
};

// Gauss-Legendre nodes/weights by Newton iteration; cached per order.
const GLRule& gl_rule(int order);

struct AdaptiveOptions {
  int base_panels = 4;       // composite panels per dimension at depth 0
  int points_per_panel = 16;
  int max_refinements = 10;  // panel count doubles per refinement
  double rel_tol = 1e-3;     // agreement within max(abs_tol, rel_tol*|I|)
  double abs_tol = 1e-8;
};

struct QuadratureResult {
  std::complex<double> value{0.0, 0.0};
  bool converged = false;
  int refinements = 0;
  long long evals = 0;
};

// Composite tensor-product Gauss-Legendre over a box with dyadic panel
// refinement until two successive refinements agree.
template <typename F>
QuadratureResult integrate_box(F&& f, std::span<const double> lo,
                               std::span<const double> hi, const AdaptiveOptions& opt) {
  const int dim = static_cast<int>(lo.size());
  const GLRule& rule = gl_rule(opt.points_per_panel);
  QuadratureResult out;
  std::complex<double> prev{0.0, 0.0};
  bool have_prev = false;
  int panels = opt.base_panels;
  for (int level = 0; level <= opt.max_refinements; ++level) {
    std::complex<double> sum{0.0, 0.0};
    // iterate tensor product of panels and nodes
    std::vector<int> panel_idx(dim, 0);
    std::vector<int> node_idx(dim, 0);
    std::vector<double> pt(dim, 0.0);
    const int ppp = opt.points_per_panel;
    bool done_panels = false;
    while (!done_panels) {
      double jac = 1.0;
      std::vector<double> a(dim), b(dim);
      for (int i = 0; i < dim; ++i) {
        double h = (hi[i] - lo[i]) / panels;
        a[i] = lo[i] + panel_idx[i] * h;
        b[i] = a[i] + h;
        jac *= 0.5 * h;
      }
      std::fill(node_idx.begin(), node_idx.end(), 0);
      bool done_nodes = false;
      while (!done_nodes) {
        double wgt = 1.0;
        for (int i = 0; i < dim; ++i) {
          pt[i] = 0.5 * (a[i] + b[i]) + 0.5 * (b[i] - a[i]) * rule.x[node_idx[i]];
          wgt *= rule.w[node_idx[i]];
        }
        sum += wgt * jac * f(pt.data());
        ++out.evals;
        int pos = dim - 1;
        while (pos >= 0) {
          if (++node_idx[pos] < ppp) break;
          node_idx[pos] = 0;
          --pos;
        }
        done_nodes = pos < 0;
      }
      int pos = dim - 1;
      while (pos >= 0) {
        if (++panel_idx[pos] < panels) break;
        panel_idx[pos] = 0;
        --pos;
      }
      done_panels = pos < 0;
    }
    out.value = sum;
    out.refinements = level;
    if (have_prev) {
      double err = std::abs(sum - prev);
      if (err <= std::max(opt.abs_tol, opt.rel_tol * std::abs(sum))) {
        out.converged = true;
        return out;
      }
    }
    prev = sum;
    have_prev = true;
    panels *= 2;
  }
  return out;  // converged stays false: reported, not silently accepted
}

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace carleson
