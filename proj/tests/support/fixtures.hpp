#pragma once

// Analytic fixtures and small statistics helpers shared across the suite.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "atlas/linalg.hpp"
#include "atlas/types.hpp"

namespace atlas::testing {

// p |psi-><psi-| + (1-p) I/4 on 2x2, basis order 00, 01, 10, 11.
// Spectrum: (1+3p)/4 once, (1-p)/4 three times; partial transpose has
// minimum eigenvalue (1-3p)/4, so every criterion flips at p = 1/3.
inline DensityMatrix werner(double p) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
  const double off = 0.25 * (1.0 - p);
  m(0, 0) = off;
  m(3, 3) = off;
  m(1, 1) = off + 0.5 * p;
  m(2, 2) = off + 0.5 * p;
  m(1, 2) = -0.5 * p;
  m(2, 1) = -0.5 * p;
  return make_density_matrix(m, SystemDims{2, 2});
}

inline DensityMatrix singlet() { return werner(1.0); }

inline DensityMatrix maximally_mixed(Eigen::Index n_a, Eigen::Index n_b) {
  const Eigen::Index n = n_a * n_b;
  return make_density_matrix(Eigen::MatrixXcd::Identity(n, n) / static_cast<double>(n),
                             SystemDims{n_a, n_b});
}

inline DensityMatrix product_state(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  return make_density_matrix(kron(a, b), SystemDims{a.rows(), b.rows()});
}

// Two-sided Kolmogorov-Smirnov statistic against Uniform(0, 1).
inline double ks_uniform_statistic(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double hi = (static_cast<double>(i) + 1.0) / n - xs[i];
    const double lo = xs[i] - static_cast<double>(i) / n;
    d = std::max({d, hi, lo});
  }
  return d;
}

// Asymptotic two-sided KS critical value at the 1% level.
inline double ks_critical_1pct(std::size_t n) {
  return 1.6276 / std::sqrt(static_cast<double>(n));
}

// Coefficient of determination of the least-squares line of y on x.
inline double r_squared(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy * sxy / (sxx * syy);
}

}  // namespace atlas::testing
