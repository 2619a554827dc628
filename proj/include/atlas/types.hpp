#pragma once

#include <Eigen/Dense>
#include <complex>
#include <sstream>

#include "atlas/errors.hpp"

namespace atlas {

using Complex = std::complex<double>;

// Tolerances shared across the library. Each one is named for the decision it
// gates; tightening any of them is a behavioural change, not a cleanup.
namespace tolerance {

// herm_eig and friends reject inputs whose symmetry defect exceeds this.
inline constexpr double kHermReject = 1e-8;

// Per-entry Hermiticity expected of matrices we construct ourselves.
inline constexpr double kHermConstruct = 1e-12;

// |trace - 1| allowed for a density matrix.
inline constexpr double kTrace = 1e-10;

// Relative eigenvalue cutoff for numerical rank, measured against lambda_max.
inline constexpr double kRank = 1e-9;

// Default threshold for the sign tests of the separability criteria: a state
// satisfies a criterion when its deciding quantity is >= -kCrit, and is
// additionally flagged as "boundary" when the quantity lies within +-kCrit
// of zero.
inline constexpr double kCrit = 1e-10;

// Eigenvalues of an N-dimensional state may dip this far below zero and the
// matrix still counts as positive semidefinite.
inline double psd(Eigen::Index n) { return 1e-10 * static_cast<double>(n); }

}  // namespace tolerance

// Which tensor factor of a bipartite system an operation refers to.
enum class Subsystem { A, B };

inline const char* to_string(Subsystem s) { return s == Subsystem::A ? "A" : "B"; }

// Ordered pair of subsystem Hilbert-space dimensions; the joint space has
// dimension total() = n_a * n_b.
struct SystemDims {
  Eigen::Index n_a = 1;
  Eigen::Index n_b = 1;

  Eigen::Index total() const { return n_a * n_b; }

  friend bool operator==(const SystemDims&, const SystemDims&) = default;
};

// Real eigenvalues sorted in non-increasing order.
struct Spectrum {
  Eigen::VectorXd values;

  Eigen::Index size() const { return values.size(); }
  double max() const { return values(0); }
  double min() const { return values(values.size() - 1); }
  double sum() const { return values.sum(); }
};

// N x N Hermitian, unit-trace, positive-semidefinite matrix together with its
// subsystem split. Plain struct; validation happens in the factories and at
// operation boundaries.
struct DensityMatrix {
  Eigen::MatrixXcd mat;
  SystemDims dims;

  Eigen::Index dim() const { return mat.rows(); }
};

// Largest |m(i,j) - conj(m(j,i))| over all entries; zero for an exactly
// Hermitian matrix.
template <typename Derived>
double hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

// Checks shape, Hermiticity and trace. PSD is not checked here (it needs an
// eigensolve); callers that accept external data use validate_density_matrix.
inline DensityMatrix make_density_matrix(Eigen::MatrixXcd mat, SystemDims dims) {
  if (mat.rows() != mat.cols()) {
    throw DimensionMismatch("density matrix must be square");
  }
  if (dims.n_a < 1 || dims.n_b < 1 || dims.total() != mat.rows()) {
    std::ostringstream os;
    os << "subsystem dims (" << dims.n_a << ", " << dims.n_b
       << ") do not multiply to matrix dim " << mat.rows();
    throw DimensionMismatch(os.str());
  }
  const double defect = hermiticity_defect(mat);
  if (defect > tolerance::kHermConstruct) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max defect " << defect;
    throw NonHermitianInput(os.str());
  }
  const double tr = mat.trace().real();
  if (std::abs(tr - 1.0) > tolerance::kTrace) {
    std::ostringstream os;
    os << "trace is " << tr << ", expected 1";
    throw Error(os.str());
  }
  return DensityMatrix{std::move(mat), dims};
}

}  // namespace atlas
