#include "atlas/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "atlas/linalg.hpp"

namespace atlas {

namespace {

// Prefix-sum comparison of one zero-padded marginal spectrum against the
// joint spectrum. The k = 1 term is the bare lambda_max difference, so the
// majorization margin can never exceed the q -> inf margin.
// The full-length prefix constraint is the trace identity and carries no
// information, so the scan stops at k = N-1; otherwise every state would sit
// on the boundary.
double majorization_margin_one_side(const Spectrum& marginal, const Spectrum& joint) {
  double margin = std::numeric_limits<double>::infinity();
  double prefix_marginal = 0.0;
  double prefix_joint = 0.0;
  for (Eigen::Index k = 0; k + 1 < joint.size(); ++k) {
    if (k < marginal.size()) {
      prefix_marginal += marginal.values(k);
    }
    prefix_joint += joint.values(k);
    margin = std::min(margin, prefix_marginal - prefix_joint);
  }
  return margin;
}

Eigen::MatrixXcd reduction_operator_b(const DensityMatrix& rho) {
  const Eigen::MatrixXcd rho_b = partial_trace(rho.mat, rho.dims, Subsystem::B);
  const Eigen::MatrixXcd identity_a =
      Eigen::MatrixXcd::Identity(rho.dims.n_a, rho.dims.n_a);
  return kron(identity_a, rho_b) - rho.mat;
}

Eigen::MatrixXcd reduction_operator_a(const DensityMatrix& rho) {
  const Eigen::MatrixXcd rho_a = partial_trace(rho.mat, rho.dims, Subsystem::A);
  const Eigen::MatrixXcd identity_b =
      Eigen::MatrixXcd::Identity(rho.dims.n_b, rho.dims.n_b);
  return kron(rho_a, identity_b) - rho.mat;
}

}  // namespace

std::vector<std::string> BoundaryFlags::labels() const {
  std::vector<std::string> out;
  if (ppt) out.push_back("ppt");
  if (reduction) out.push_back("reduction");
  if (majorization) out.push_back("majorization");
  if (q_entropic_inf) out.push_back("q_entropic_inf");
  if (q_entropic_finite) out.push_back("q_entropic_finite");
  return out;
}

double ppt_margin(const DensityMatrix& rho) {
  return min_eig(partial_transpose(rho.mat, rho.dims, Subsystem::B));
}

double reduction_margin(const DensityMatrix& rho) {
  const double margin_b = min_eig(reduction_operator_b(rho));
  const double margin_a = min_eig(reduction_operator_a(rho));
  return std::min(margin_a, margin_b);
}

double majorization_margin(const Spectrum& joint, const Spectrum& spec_a,
                           const Spectrum& spec_b) {
  return std::min(majorization_margin_one_side(spec_a, joint),
                  majorization_margin_one_side(spec_b, joint));
}

double q_entropic_inf_margin(const Spectrum& joint, const Spectrum& spec_a,
                             const Spectrum& spec_b) {
  return std::min(spec_a.max() - joint.max(), spec_b.max() - joint.max());
}

double q_entropic_margin(const Spectrum& joint, const Spectrum& spec_a,
                         const Spectrum& spec_b, double q) {
  return std::min(conditional_q_entropy(joint, spec_b, q),
                  conditional_q_entropy(joint, spec_a, q));
}

bool check_ppt(const DensityMatrix& rho, double tol) {
  return ppt_margin(rho) >= -tol;
}

bool check_reduction(const DensityMatrix& rho, double tol) {
  return reduction_margin(rho) >= -tol;
}

bool check_majorization(const DensityMatrix& rho, double tol) {
  const Spectrum joint = herm_eig(rho.mat);
  const Spectrum spec_a = herm_eig(partial_trace(rho.mat, rho.dims, Subsystem::A));
  const Spectrum spec_b = herm_eig(partial_trace(rho.mat, rho.dims, Subsystem::B));
  return majorization_margin(joint, spec_a, spec_b) >= -tol;
}

bool check_q_entropic_inf(const DensityMatrix& rho, double tol) {
  const Spectrum joint = herm_eig(rho.mat);
  const Spectrum spec_a = herm_eig(partial_trace(rho.mat, rho.dims, Subsystem::A));
  const Spectrum spec_b = herm_eig(partial_trace(rho.mat, rho.dims, Subsystem::B));
  return q_entropic_inf_margin(joint, spec_a, spec_b) >= -tol;
}

bool check_q_entropic(const DensityMatrix& rho, double q, double tol) {
  const Spectrum joint = herm_eig(rho.mat);
  const Spectrum spec_a = herm_eig(partial_trace(rho.mat, rho.dims, Subsystem::A));
  const Spectrum spec_b = herm_eig(partial_trace(rho.mat, rho.dims, Subsystem::B));
  return q_entropic_margin(joint, spec_a, spec_b, q) >= -tol;
}

bool check_rank_separable(const DensityMatrix& rho, double tol) {
  if (!check_ppt(rho, tol)) {
    return false;
  }
  const Eigen::Index rank = rank_from_spectrum(herm_eig(rho.mat));
  return rank <= std::max(rho.dims.n_a, rho.dims.n_b);
}

CriteriaVerdict evaluate_all(const DensityMatrix& rho, std::optional<double> q_finite,
                             double tol) {
  const Spectrum joint = herm_eig(rho.mat);
  const Spectrum spec_a = herm_eig(partial_trace(rho.mat, rho.dims, Subsystem::A));
  const Spectrum spec_b = herm_eig(partial_trace(rho.mat, rho.dims, Subsystem::B));

  const double m_ppt = ppt_margin(rho);
  const double m_red = reduction_margin(rho);
  const double m_maj = majorization_margin(joint, spec_a, spec_b);
  const double m_inf = q_entropic_inf_margin(joint, spec_a, spec_b);

  CriteriaVerdict v;
  v.ppt = m_ppt >= -tol;
  v.reduction = m_red >= -tol;
  v.majorization = m_maj >= -tol;
  v.q_entropic_inf = m_inf >= -tol;
  v.boundary.ppt = std::abs(m_ppt) <= tol;
  v.boundary.reduction = std::abs(m_red) <= tol;
  v.boundary.majorization = std::abs(m_maj) <= tol;
  v.boundary.q_entropic_inf = std::abs(m_inf) <= tol;

  if (q_finite) {
    const double m_q = q_entropic_margin(joint, spec_a, spec_b, *q_finite);
    v.q_entropic_finite = m_q >= -tol;
    v.boundary.q_entropic_finite = std::abs(m_q) <= tol;
  }

  v.rank_separable =
      v.ppt && rank_from_spectrum(joint) <= std::max(rho.dims.n_a, rho.dims.n_b);
  v.distillable = !v.reduction;
  return v;
}

}  // namespace atlas
