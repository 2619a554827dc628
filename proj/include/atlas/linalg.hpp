#pragma once

// Dense complex primitives the criteria chain is built from: Hermitian
// eigendecomposition, Kronecker product, partial trace, partial transpose,
// positivity and rank tests. Free functions over Eigen expressions; results
// are plain dynamic matrices.

#include <Eigen/Dense>
#include <algorithm>
#include <sstream>
#include <utility>

#include "atlas/errors.hpp"
#include "atlas/types.hpp"

namespace atlas {

namespace detail {

inline void require_square(Eigen::Index rows, Eigen::Index cols) {
  if (rows != cols) {
    std::ostringstream os;
    os << "expected a square matrix, got " << rows << "x" << cols;
    throw DimensionMismatch(os.str());
  }
}

inline void require_split(Eigen::Index rows, Eigen::Index cols, SystemDims dims) {
  require_square(rows, cols);
  if (dims.n_a < 1 || dims.n_b < 1 || dims.total() != rows) {
    std::ostringstream os;
    os << "subsystem dims (" << dims.n_a << ", " << dims.n_b
       << ") do not match matrix dim " << rows;
    throw DimensionMismatch(os.str());
  }
}

template <typename Derived>
void require_hermitian(const Eigen::MatrixBase<Derived>& m) {
  require_square(m.rows(), m.cols());
  const double defect = hermiticity_defect(m);
  if (defect > tolerance::kHermReject) {
    std::ostringstream os;
    os << "matrix is not Hermitian: max symmetry defect " << defect;
    throw NonHermitianInput(os.str());
  }
}

}  // namespace detail

// Kronecker product; block (i,j) of the result equals a(i,j) * b.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = decltype(typename DerivedA::Scalar{} * typename DerivedB::Scalar{});
  using Result = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Result out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Trace over one tensor factor. keep == A yields the n_a x n_a reduced matrix,
// keep == B the n_b x n_b one.
template <typename Derived>
auto partial_trace(const Eigen::MatrixBase<Derived>& m, SystemDims dims, Subsystem keep) {
  detail::require_split(m.rows(), m.cols(), dims);
  using Result = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index na = dims.n_a;
  const Eigen::Index nb = dims.n_b;
  if (keep == Subsystem::A) {
    Result out(na, na);
    for (Eigen::Index i = 0; i < na; ++i) {
      for (Eigen::Index j = 0; j < na; ++j) {
        out(i, j) = m.block(i * nb, j * nb, nb, nb).trace();
      }
    }
    return out;
  }
  Result out = Result::Zero(nb, nb);
  for (Eigen::Index i = 0; i < na; ++i) {
    out += m.block(i * nb, i * nb, nb, nb);
  }
  return out;
}

// Transposition of one tensor factor. A pure entry permutation: applying it
// twice returns the input bit-for-bit.
template <typename Derived>
auto partial_transpose(const Eigen::MatrixBase<Derived>& m, SystemDims dims, Subsystem on) {
  detail::require_split(m.rows(), m.cols(), dims);
  using Result = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const Eigen::Index na = dims.n_a;
  const Eigen::Index nb = dims.n_b;
  Result out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < na; ++i) {
    for (Eigen::Index j = 0; j < na; ++j) {
      if (on == Subsystem::B) {
        out.block(i * nb, j * nb, nb, nb) = m.block(i * nb, j * nb, nb, nb).transpose();
      } else {
        out.block(i * nb, j * nb, nb, nb) = m.block(j * nb, i * nb, nb, nb);
      }
    }
  }
  return out;
}

// All eigenvalues of a Hermitian matrix, sorted descending.
template <typename Derived>
Spectrum herm_eig(const Eigen::MatrixBase<Derived>& m) {
  detail::require_hermitian(m);
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Plain> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver did not converge");
  }
  Eigen::VectorXd values = solver.eigenvalues().template cast<double>().reverse();
  return Spectrum{std::move(values)};
}

// Eigenvalues (descending) together with the matching eigenvector columns.
template <typename Derived>
auto herm_eig_full(const Eigen::MatrixBase<Derived>& m) {
  detail::require_hermitian(m);
  using Plain = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Eigen::SelfAdjointEigenSolver<Plain> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceFailure("Hermitian eigensolver did not converge");
  }
  Eigen::VectorXd values = solver.eigenvalues().template cast<double>().reverse();
  Plain vectors = solver.eigenvectors().rowwise().reverse();
  return std::make_pair(Spectrum{std::move(values)}, std::move(vectors));
}

// Smallest eigenvalue of a Hermitian matrix.
template <typename Derived>
double min_eig(const Eigen::MatrixBase<Derived>& m) {
  return herm_eig(m).min();
}

// Count of eigenvalues above the relative cutoff; 0 for the zero matrix.
inline Eigen::Index rank_from_spectrum(const Spectrum& spec) {
  const double lambda_max = spec.max();
  if (!(lambda_max > 0.0)) {
    return 0;
  }
  const double cutoff = tolerance::kRank * lambda_max;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < spec.size(); ++i) {
    if (spec.values(i) > cutoff) {
      ++rank;
    }
  }
  return rank;
}

// Numerical rank of a Hermitian PSD matrix.
template <typename Derived>
Eigen::Index numerical_rank(const Eigen::MatrixBase<Derived>& m) {
  return rank_from_spectrum(herm_eig(m));
}

// DensityMatrix-level wrappers. The reduced state keeps a degenerate split
// (n, 1) or (1, n) so it remains a valid DensityMatrix.

inline DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
  Eigen::MatrixXcd reduced = partial_trace(rho.mat, rho.dims, keep);
  const SystemDims dims = keep == Subsystem::A ? SystemDims{rho.dims.n_a, 1}
                                               : SystemDims{1, rho.dims.n_b};
  return DensityMatrix{std::move(reduced), dims};
}

inline Eigen::MatrixXcd partial_transpose(const DensityMatrix& rho, Subsystem on) {
  return partial_transpose(rho.mat, rho.dims, on);
}

inline Spectrum herm_eig(const DensityMatrix& rho) { return herm_eig(rho.mat); }

}  // namespace atlas
