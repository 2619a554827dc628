#pragma once

// q-entropies over density-matrix spectra: omega_q = Tr rho^q, the Tsallis
// and Renyi families, and the conditional Tsallis entropy whose sign drives
// the entropic separability test.

#include <optional>

#include "atlas/types.hpp"

namespace atlas {

// Tr rho^q over the clamped spectrum (eigenvalues forced into [0, 1];
// zeros contribute nothing for every q > 0).
double omega_q(const Spectrum& spec, double q);

// ln(Tr rho^q), computed stably so that very large q does not underflow.
double log_omega_q(const Spectrum& spec, double q);

// -sum lambda ln lambda.
double von_neumann_entropy(const Spectrum& spec);

// (1 - omega_q)/(q - 1); the q -> 1 limit is the von Neumann entropy and is
// used whenever |q - 1| <= 1e-6 to avoid cancellation.
double tsallis_entropy(const Spectrum& spec, double q);

// ln(omega_q)/(1 - q), same q -> 1 handling.
double renyi_entropy(const Spectrum& spec, double q);

// Conditional Tsallis entropy [S_q(joint) - S_q(marginal)] / omega_q(marginal).
// The denominator equals 1 + (1-q) S_q(marginal) and is always positive.
// Evaluated in ratio form, (1 - omega_joint/omega_marginal)/(q - 1), so the
// sign survives arbitrarily large finite q.
double conditional_q_entropy(const Spectrum& joint, const Spectrum& marginal, double q);

// Same, conditioned on the named subsystem: conditioned_on == B computes
// S_q(A|B) against rho_B, conditioned_on == A computes S_q(B|A) against rho_A.
double conditional_q_entropy(const DensityMatrix& rho, double q, Subsystem conditioned_on);

// Everything the single-state report prints for one value of q. At q = inf
// the omega fields hold lambda_max, the entropy fields the Renyi limit
// -ln(lambda_max), and the conditionals ln(lambda_max(marginal)/lambda_max(joint));
// Tsallis itself degenerates to 0 in that limit and would carry no signal.
struct EntropyReport {
  double q = 0.0;  // +infinity for the limit report
  double omega_q_joint = 0.0;
  double omega_q_a = 0.0;
  double omega_q_b = 0.0;
  double tsallis_joint = 0.0;
  double tsallis_a = 0.0;
  double tsallis_b = 0.0;
  double conditional_a_given_b = 0.0;
  double conditional_b_given_a = 0.0;
};

EntropyReport make_entropy_report(const Spectrum& joint, const Spectrum& spec_a,
                                  const Spectrum& spec_b, double q);
EntropyReport make_entropy_report(const DensityMatrix& rho, double q);

}  // namespace atlas
