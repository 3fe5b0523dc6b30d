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

// Kraus and Choi representations of quantum channels on n x n matrices.
//
// Block convention: the Choi matrix is the n^2 x n^2 block matrix whose
// (i, j) block is L(E_ij). Flattening a Kraus operator A column by column
// gives the vector v with v[i*n + k] = A(k, i), and Choi = sum_t v_t v_t^*.

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "choiface/errors.hpp"
#include "choiface/hermitian.hpp"

namespace choiface {

/// n such that n*n == size, or throws DimensionMismatch.
inline int side_from_square(Eigen::Index size) {
  const auto n = static_cast<int>(std::llround(std::sqrt(static_cast<double>(size))));
  if (n <= 0 || static_cast<Eigen::Index>(n) * n != size) {
    throw Error(ErrorCode::DimensionMismatch,
                "size " + std::to_string(size) + " is not a perfect square");
  }
  return n;
}

class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> operators) : operators_(std::move(operators)) {
    if (operators_.empty()) throw Error(ErrorCode::DimensionMismatch, "empty Kraus set");
    n_ = static_cast<int>(operators_.front().rows());
    for (const auto& a : operators_) {
      if (a.rows() != n_ || a.cols() != n_ || n_ == 0) {
        throw Error(ErrorCode::DimensionMismatch, "Kraus operators must share one square shape");
      }
      require_finite(a, "Kraus operator");
    }
  }

  int n() const { return n_; }
  std::size_t size() const { return operators_.size(); }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }
  const ComplexMatrix& operator[](std::size_t i) const { return operators_[i]; }

  ComplexMatrix gram_sum() const {
    ComplexMatrix s = ComplexMatrix::Zero(n_, n_);
    for (const auto& a : operators_) s += a.adjoint() * a;
    return s;
  }

  bool is_trace_preserving(const Tolerances& tol = {}) const {
    return max_abs(gram_sum() - ComplexMatrix::Identity(n_, n_)) <= tol.equality_abs;
  }

  /// X -> sum_t A_t X A_t^*
  ComplexMatrix apply(const ComplexMatrix& x) const {
    ComplexMatrix out = ComplexMatrix::Zero(n_, n_);
    for (const auto& a : operators_) out += a * x * a.adjoint();
    return out;
  }

 private:
  int n_ = 0;
  std::vector<ComplexMatrix> operators_;
};

class ChoiMatrix {
 public:
  ChoiMatrix(int n, ComplexMatrix m) : n_(n), m_(std::move(m)) {
    if (n_ <= 0 || m_.rows() != static_cast<Eigen::Index>(n_) * n_ || m_.cols() != m_.rows()) {
      throw Error(ErrorCode::DimensionMismatch, "Choi matrix must be n^2 x n^2");
    }
    require_finite(m_, "Choi matrix");
  }

  /// Infers n from the matrix size.
  explicit ChoiMatrix(const ComplexMatrix& m) : ChoiMatrix(side_from_square(m.rows()), m) {}

  int n() const { return n_; }
  int dim() const { return n_ * n_; }
  const ComplexMatrix& matrix() const { return m_; }

  ComplexMatrix block(int i, int j) const { return m_.block(i * n_, j * n_, n_, n_); }

  friend bool operator==(const ChoiMatrix& a, const ChoiMatrix& b) {
    return a.n_ == b.n_ && a.m_ == b.m_;
  }

 private:
  int n_;
  ComplexMatrix m_;
};

/// n x n matrix whose (i, j) entry is the trace of block (i, j).
inline ComplexMatrix block_traces(const ComplexMatrix& m, int n) {
  ComplexMatrix t(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) t(i, j) = m.block(i * n, j * n, n, n).trace();
  }
  return t;
}

inline ComplexMatrix outer(const ComplexVector& x) { return x * x.adjoint(); }

inline ChoiMatrix choi_from_kraus(const KrausSet& k) {
  const int n = k.n();
  ComplexMatrix z = ComplexMatrix::Zero(n * n, n * n);
  for (const auto& a : k.operators()) {
    const ComplexVector v = a.reshaped();  // column-major: chunk i is column i
    z += v * v.adjoint();
  }
  return ChoiMatrix(n, std::move(z));
}

struct MembershipReport {
  double hermitian_residual = 0.0;
  double min_eigenvalue = 0.0;
  double max_trace_condition_residual = 0.0;
  bool is_member = false;
};

/// Never throws on numerical content; it only grades.
inline MembershipReport check_membership(const ChoiMatrix& c, const Tolerances& tol = {}) {
  MembershipReport rep;
  const ComplexMatrix& m = c.matrix();
  rep.hermitian_residual = hermitian_residual(m);
  const ComplexMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
  rep.min_eigenvalue = solver.eigenvalues()(0);
  rep.max_trace_condition_residual =
      max_abs(block_traces(m, c.n()) - ComplexMatrix::Identity(c.n(), c.n()));
  rep.is_member = rep.hermitian_residual <= tol.equality_abs &&
                  rep.min_eigenvalue >= -tol.psd_abs &&
                  rep.max_trace_condition_residual <= tol.equality_abs;
  return rep;
}

inline void require_member(const ChoiMatrix& c, const Tolerances& tol) {
  const auto rep = check_membership(c, tol);
  if (!rep.is_member) {
    throw Error(ErrorCode::NotMember,
                "hermitian residual " + std::to_string(rep.hermitian_residual) +
                    ", min eigenvalue " + std::to_string(rep.min_eigenvalue) +
                    ", trace residual " + std::to_string(rep.max_trace_condition_residual));
  }
}

/// Minimal Kraus set: one operator per eigenvalue above the rank cutoff.
inline KrausSet kraus_from_choi(const ChoiMatrix& c, const Tolerances& tol = {}) {
  require_member(c, tol);
  const int n = c.n();
  const auto eig = hermitian_eigen(c.matrix(), tol);
  const int r = rank_of(eig, tol);
  std::vector<ComplexMatrix> ops;
  ops.reserve(r);
  for (int t = 0; t < r; ++t) {
    const ComplexVector v = std::sqrt(eig.values(t)) * eig.vectors.col(t);
    ops.emplace_back(v.reshaped(n, n));
  }
  return KrausSet(std::move(ops));
}

/// xx^* is a member iff the n chunks of x are orthonormal.
inline bool rank1_membership(const ComplexVector& x, const Tolerances& tol = {}) {
  const int n = side_from_square(x.size());
  const ComplexMatrix chunks = x.reshaped(n, n);  // column i is chunk i
  const ComplexMatrix gram = chunks.adjoint() * chunks;
  return max_abs(gram - ComplexMatrix::Identity(n, n)) <= tol.equality_abs;
}

/// I (x) U acting on n^2-vectors: chunk z_i -> U z_i.
inline ComplexMatrix block_diagonal(const ComplexMatrix& u, int n) {
  ComplexMatrix out = ComplexMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) out.block(i * n, i * n, n, n) = u;
  return out;
}

inline bool is_unitary(const ComplexMatrix& u, const Tolerances& tol = {}) {
  return u.rows() == u.cols() &&
         max_abs(u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols())) <= tol.equality_abs;
}

/// Blockwise conjugation [A_ij] -> [U A_ij U^*].
inline ChoiMatrix conjugate_blocks(const ChoiMatrix& c, const ComplexMatrix& u,
                                   const Tolerances& tol = {}) {
  if (u.rows() != c.n() || u.cols() != c.n()) {
    throw Error(ErrorCode::DimensionMismatch, "unitary must be n x n");
  }
  if (!is_unitary(u, tol)) throw Error(ErrorCode::NotUnitary, "conjugating matrix is not unitary");
  require_member(c, tol);
  const ComplexMatrix w = block_diagonal(u, c.n());
  ComplexMatrix m = w * c.matrix() * w.adjoint();
  m = 0.5 * (m + m.adjoint());
  return ChoiMatrix(c.n(), std::move(m));
}

}  // namespace choiface
