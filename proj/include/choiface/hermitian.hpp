// Copyright 2026 The choiface Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Dense complex matrix primitives: Hermitian eigendecomposition with a
// controlled tolerance policy, numerical rank, kernel and range bases.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "choiface/errors.hpp"

namespace choiface {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

struct Tolerances {
  double rank_rel = 1e-9;      // eigenvalues below rank_rel * max(lambda_max, 1) count as zero
  double psd_abs = 1e-9;       // allowed most-negative eigenvalue
  double equality_abs = 1e-8;  // entrywise comparisons

  void validate() const {
    if (!(rank_rel > 0) || !(psd_abs > 0) || !(equality_abs > 0)) {
      throw Error(ErrorCode::InvalidTolerance, "tolerances must be strictly positive");
    }
  }
};

inline bool all_finite(const ComplexMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

inline void require_finite(const ComplexMatrix& m, const char* what) {
  if (!all_finite(m)) throw Error(ErrorCode::NonFinite, std::string(what) + " has NaN/Inf entries");
}

inline void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + " must be a nonempty square matrix, got " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
  }
}

/// Largest entry modulus.
inline double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermitian_residual(const ComplexMatrix& m) {
  return max_abs(m - m.adjoint());
}

struct EigenDecomposition {
  RealVector values;     // descending
  ComplexMatrix vectors; // columns match values

  double max() const { return values.size() ? values(0) : 0.0; }
  double min() const { return values.size() ? values(values.size() - 1) : 0.0; }
  double norm() const { return std::max(std::abs(max()), std::abs(min())); }
};

/// Eigendecomposition of a Hermitian matrix, eigenvalues sorted descending.
/// The input is symmetrized first; a residual above `equality_abs` throws.
inline EigenDecomposition hermitian_eigen(const ComplexMatrix& m, const Tolerances& tol = {}) {
  require_square(m, "hermitian_eigen input");
  require_finite(m, "hermitian_eigen input");
  const double residual = hermitian_residual(m);
  if (residual > tol.equality_abs) {
    throw Error(ErrorCode::NonHermitian,
                "Hermitian residual " + std::to_string(residual) + " exceeds tolerance");
  }
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  EigenDecomposition out;
  out.values = solver.eigenvalues().reverse();
  out.vectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

/// Cutoff separating kept from dropped eigenvalues.
inline double rank_threshold(double lambda_max, const Tolerances& tol) {
  return tol.rank_rel * std::max(lambda_max, 1.0);
}

inline void require_psd(const EigenDecomposition& eig, const Tolerances& tol) {
  if (eig.min() < -tol.psd_abs) {
    throw Error(ErrorCode::NotPSD,
                "minimum eigenvalue " + std::to_string(eig.min()) + " below -psd_abs");
  }
}

inline int rank_of(const EigenDecomposition& eig, const Tolerances& tol) {
  const double cut = rank_threshold(eig.max(), tol);
  int r = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) {
    if (eig.values(i) > cut) ++r;
  }
  return r;
}

inline int numerical_rank(const ComplexMatrix& m, const Tolerances& tol = {}) {
  const auto eig = hermitian_eigen(m, tol);
  require_psd(eig, tol);
  return rank_of(eig, tol);
}

/// Orthonormal columns spanning the numerical kernel of a PSD matrix.
inline ComplexMatrix kernel_basis(const ComplexMatrix& m, const Tolerances& tol = {}) {
  const auto eig = hermitian_eigen(m, tol);
  require_psd(eig, tol);
  const int r = rank_of(eig, tol);
  return eig.vectors.rightCols(m.rows() - r);
}

/// Isometry V (orthonormal columns) onto the numerical range of a PSD matrix.
inline ComplexMatrix range_isometry(const ComplexMatrix& m, const Tolerances& tol = {}) {
  const auto eig = hermitian_eigen(m, tol);
  require_psd(eig, tol);
  return eig.vectors.leftCols(rank_of(eig, tol));
}

/// Rank of a general (real) matrix from its singular values, plus the gap
/// between the smallest kept singular value and the largest dropped one
/// (or the cutoff when nothing is dropped).
struct RealRank {
  int rank = 0;
  double gap = std::numeric_limits<double>::infinity();
  RealVector singular_values;
  RealMatrix right_vectors;  // full V; columns rank.. span the null space
};

inline RealRank real_rank(const RealMatrix& a, const Tolerances& tol = {}) {
  RealRank out;
  Eigen::JacobiSVD<RealMatrix> svd(a, Eigen::ComputeFullV);
  out.singular_values = svd.singularValues();
  out.right_vectors = svd.matrixV();
  const double smax = out.singular_values.size() ? out.singular_values(0) : 0.0;
  const double cut = rank_threshold(smax, tol);
  double dropped = 0.0;
  double kept = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < out.singular_values.size(); ++i) {
    const double s = out.singular_values(i);
    if (s > cut) {
      ++out.rank;
      kept = std::min(kept, s);
    } else {
      dropped = std::max(dropped, s);
    }
  }
  if (out.rank > 0) out.gap = kept / std::max(dropped, cut);
  return out;
}

/// Rank of a complex matrix over C, with the same policy as real_rank.
inline int complex_rank(const ComplexMatrix& a, const Tolerances& tol = {}) {
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const RealVector s = svd.singularValues();
  const double cut = rank_threshold(s.size() ? s(0) : 0.0, tol);
  return static_cast<int>((s.array() > cut).count());
}

/// Hermitian square root of the inverse of a positive definite matrix.
inline ComplexMatrix inverse_sqrt_pd(const ComplexMatrix& m, const Tolerances& tol = {}) {
  const auto eig = hermitian_eigen(m, tol);
  if (eig.min() <= 0.0) {
    throw Error(ErrorCode::NotPSD, "matrix is not positive definite");
  }
  const RealVector inv = eig.values.array().rsqrt();
  return eig.vectors * inv.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace choiface
