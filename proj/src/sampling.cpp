#include "atlas/sampling.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "atlas/errors.hpp"

namespace atlas {

Eigen::VectorXd sample_simplex_unsorted(Eigen::Index n, RandomStream& rng) {
  if (n < 1) {
    throw InvalidDimension("simplex dimension must be >= 1");
  }
  std::exponential_distribution<double> exp1(1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i) = exp1(rng);
  }
  x /= x.sum();
  return x;
}

Spectrum sample_simplex(Eigen::Index n, RandomStream& rng) {
  Eigen::VectorXd x = sample_simplex_unsorted(n, rng);
  std::sort(x.begin(), x.end(), std::greater<double>());
  return Spectrum{std::move(x)};
}

Eigen::MatrixXcd haar_unitary(Eigen::Index n, RandomStream& rng) {
  if (n < 1) {
    throw InvalidDimension("unitary dimension must be >= 1");
  }
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd ginibre(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      ginibre(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(ginibre);
  Eigen::MatrixXcd u = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    const Complex phase = mag > 0.0 ? d / mag : Complex(1.0, 0.0);
    u.col(j) *= phase;
  }
  return u;
}

DensityMatrix sample_state(const SamplerConfig& cfg, RandomStream& rng) {
  const Eigen::Index n = cfg.dims.total();
  if (cfg.dims.n_a < 1 || cfg.dims.n_b < 1) {
    throw InvalidDimension("subsystem dimensions must be >= 1");
  }
  const Spectrum lambda = sample_simplex(n, rng);
  const Eigen::MatrixXcd u = haar_unitary(n, rng);
  Eigen::MatrixXcd rho = u * lambda.values.asDiagonal() * u.adjoint();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityMatrix{std::move(rho), cfg.dims};
}

DensityMatrix sample_state(const SamplerConfig& cfg) {
  RandomStream rng(cfg.seed, cfg.stream_id);
  return sample_state(cfg, rng);
}

}  // namespace atlas
