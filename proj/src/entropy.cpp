#include "atlas/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "atlas/errors.hpp"
#include "atlas/linalg.hpp"

namespace atlas {

namespace {

constexpr double kQNearOne = 1e-6;

void require_finite_positive_q(double q) {
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw InvalidQ("entropic order q must be finite and > 0");
  }
}

double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

}  // namespace

double omega_q(const Spectrum& spec, double q) {
  require_finite_positive_q(q);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    const double x = clamp01(spec.values(i));
    if (x > 0.0) {
      sum += std::pow(x, q);
    }
  }
  return sum;
}

double log_omega_q(const Spectrum& spec, double q) {
  require_finite_positive_q(q);
  double xmax = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    xmax = std::max(xmax, clamp01(spec.values(i)));
  }
  if (xmax <= 0.0) {
    return -std::numeric_limits<double>::infinity();
  }
  const double log_xmax = std::log(xmax);
  double scaled = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    const double x = clamp01(spec.values(i));
    if (x > 0.0) {
      scaled += std::exp(q * (std::log(x) - log_xmax));
    }
  }
  return q * log_xmax + std::log(scaled);
}

double von_neumann_entropy(const Spectrum& spec) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    const double x = clamp01(spec.values(i));
    if (x > 0.0) {
      s -= x * std::log(x);
    }
  }
  return s;
}

double tsallis_entropy(const Spectrum& spec, double q) {
  require_finite_positive_q(q);
  if (std::abs(q - 1.0) <= kQNearOne) {
    return von_neumann_entropy(spec);
  }
  return (1.0 - omega_q(spec, q)) / (q - 1.0);
}

double renyi_entropy(const Spectrum& spec, double q) {
  require_finite_positive_q(q);
  if (std::abs(q - 1.0) <= kQNearOne) {
    return von_neumann_entropy(spec);
  }
  return log_omega_q(spec, q) / (1.0 - q);
}

double conditional_q_entropy(const Spectrum& joint, const Spectrum& marginal, double q) {
  if (std::isinf(q) && q > 0.0) {
    return std::log(marginal.max()) - std::log(joint.max());
  }
  require_finite_positive_q(q);
  if (std::abs(q - 1.0) <= kQNearOne) {
    return von_neumann_entropy(joint) - von_neumann_entropy(marginal);
  }
  // (omega_marg - omega_joint) / ((q-1) omega_marg), with the ratio taken in
  // log space; both omegas underflow at large q but their ratio does not.
  const double ratio = std::exp(log_omega_q(joint, q) - log_omega_q(marginal, q));
  return (1.0 - ratio) / (q - 1.0);
}

double conditional_q_entropy(const DensityMatrix& rho, double q, Subsystem conditioned_on) {
  const Spectrum joint = herm_eig(rho.mat);
  const Spectrum marg = herm_eig(partial_trace(rho.mat, rho.dims, conditioned_on));
  return conditional_q_entropy(joint, marg, q);
}

EntropyReport make_entropy_report(const Spectrum& joint, const Spectrum& spec_a,
                                  const Spectrum& spec_b, double q) {
  EntropyReport r;
  r.q = q;
  if (std::isinf(q) && q > 0.0) {
    r.omega_q_joint = joint.max();
    r.omega_q_a = spec_a.max();
    r.omega_q_b = spec_b.max();
    r.tsallis_joint = -std::log(joint.max());
    r.tsallis_a = -std::log(spec_a.max());
    r.tsallis_b = -std::log(spec_b.max());
    r.conditional_a_given_b = std::log(spec_b.max()) - std::log(joint.max());
    r.conditional_b_given_a = std::log(spec_a.max()) - std::log(joint.max());
    return r;
  }
  require_finite_positive_q(q);
  r.omega_q_joint = omega_q(joint, q);
  r.omega_q_a = omega_q(spec_a, q);
  r.omega_q_b = omega_q(spec_b, q);
  r.tsallis_joint = tsallis_entropy(joint, q);
  r.tsallis_a = tsallis_entropy(spec_a, q);
  r.tsallis_b = tsallis_entropy(spec_b, q);
  r.conditional_a_given_b = conditional_q_entropy(joint, spec_b, q);
  r.conditional_b_given_a = conditional_q_entropy(joint, spec_a, q);
  return r;
}

EntropyReport make_entropy_report(const DensityMatrix& rho, double q) {
  const Spectrum joint = herm_eig(rho.mat);
  const Spectrum spec_a = herm_eig(partial_trace(rho.mat, rho.dims, Subsystem::A));
  const Spectrum spec_b = herm_eig(partial_trace(rho.mat, rho.dims, Subsystem::B));
  return make_entropy_report(joint, spec_a, spec_b, q);
}

}  // namespace atlas
