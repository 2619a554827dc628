#pragma once

// State generation under the product measure: Haar-random unitaries times the
// uniform (Lebesgue) measure on the eigenvalue simplex. A state is assembled
// as rho = U diag(lambda) U^dagger.

#include <Eigen/Dense>
#include <cstdint>

#include "atlas/rng.hpp"
#include "atlas/types.hpp"

namespace atlas {

// (seed, stream_id) fully determines the sample sequence.
struct SamplerConfig {
  SystemDims dims;
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;
};

// Uniform point on the (n-1)-simplex (normalized standard exponentials),
// sorted descending. sample_simplex_unsorted keeps the exchangeable order for
// symmetry checks.
Eigen::VectorXd sample_simplex_unsorted(Eigen::Index n, RandomStream& rng);
Spectrum sample_simplex(Eigen::Index n, RandomStream& rng);

// Haar-distributed n x n unitary: QR of a complex Ginibre matrix with the R
// diagonal rotated to be real positive. The phase correction is what makes
// the distribution exactly Haar rather than an artifact of the QR convention.
Eigen::MatrixXcd haar_unitary(Eigen::Index n, RandomStream& rng);

// rho = U D[lambda] U^dagger with U Haar and lambda uniform on the simplex.
// Draw order is fixed: simplex first, then the unitary.
DensityMatrix sample_state(const SamplerConfig& cfg, RandomStream& rng);

// Convenience overload that owns its stream, built from (seed, stream_id).
DensityMatrix sample_state(const SamplerConfig& cfg);

}  // namespace atlas
