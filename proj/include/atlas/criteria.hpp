#pragma once

// The separability criteria evaluated on a single state: positive partial
// transpose, reduction, spectral majorization, and the q-entropic tests
// (finite q and the q -> inf limit), plus the rank-based sufficient condition
// and the distillability flag implied by a reduction violation.
//
// Every sign test is expressed through a real "margin": the criterion holds
// when margin >= -tol, and the state is boundary-flagged when |margin| <= tol.

#include <optional>
#include <string>
#include <vector>

#include "atlas/entropy.hpp"
#include "atlas/types.hpp"

namespace atlas {

// Which sign tests landed within +-tol of zero.
struct BoundaryFlags {
  bool ppt = false;
  bool reduction = false;
  bool majorization = false;
  bool q_entropic_inf = false;
  bool q_entropic_finite = false;

  std::vector<std::string> labels() const;
};

struct CriteriaVerdict {
  bool ppt = false;
  bool reduction = false;
  bool majorization = false;
  bool q_entropic_inf = false;
  std::optional<bool> q_entropic_finite;
  bool rank_separable = false;  // sufficient condition: true certifies separability
  bool distillable = false;     // reduction violation implies distillability
  BoundaryFlags boundary;
};

// Deciding quantities. Margins are shared between the standalone checks and
// evaluate_all so both paths threshold exactly the same numbers.

// Smallest eigenvalue of the partial transpose (taken on B; the A-side
// transpose has the same spectrum).
double ppt_margin(const DensityMatrix& rho);

// min over both operators 1 (x) rho_B - rho and rho_A (x) 1 - rho of their
// smallest eigenvalue.
double reduction_margin(const DensityMatrix& rho);

// min over k and both subsystems of prefix_k(marginal) - prefix_k(joint),
// with the marginal spectrum zero-padded to the joint length.
double majorization_margin(const Spectrum& joint, const Spectrum& spec_a,
                           const Spectrum& spec_b);

// min(lambda_max(rho_A) - lambda_max(rho), lambda_max(rho_B) - lambda_max(rho));
// the q -> inf entropic test compares largest eigenvalues directly.
double q_entropic_inf_margin(const Spectrum& joint, const Spectrum& spec_a,
                             const Spectrum& spec_b);

// min of the two conditional q-entropies.
double q_entropic_margin(const Spectrum& joint, const Spectrum& spec_a,
                         const Spectrum& spec_b, double q);

bool check_ppt(const DensityMatrix& rho, double tol = tolerance::kCrit);
bool check_reduction(const DensityMatrix& rho, double tol = tolerance::kCrit);
bool check_majorization(const DensityMatrix& rho, double tol = tolerance::kCrit);
bool check_q_entropic_inf(const DensityMatrix& rho, double tol = tolerance::kCrit);
bool check_q_entropic(const DensityMatrix& rho, double q, double tol = tolerance::kCrit);
bool check_rank_separable(const DensityMatrix& rho, double tol = tolerance::kCrit);

// Runs every criterion once, sharing one eigendecomposition per matrix
// (joint, both marginals, the partial transpose, the two reduction
// operators). q_finite, when present, adds the finite-q entropic test.
CriteriaVerdict evaluate_all(const DensityMatrix& rho,
                             std::optional<double> q_finite = std::nullopt,
                             double tol = tolerance::kCrit);

}  // namespace atlas
