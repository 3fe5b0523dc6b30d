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

// Faces of the set of Choi matrices of quantum channels.
//
// The face generated by a member A is {X member : range X in range A}.
// Compressing by an isometry V onto range A turns it into the set of r x r
// PSD matrices M whose expansion V M V^* satisfies the block-trace
// conditions; V^* A V is positive definite, so the face dimension is the
// dimension of the affine solution set of those linear conditions.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "choiface/channel.hpp"
#include "choiface/errors.hpp"
#include "choiface/hermitian.hpp"

namespace choiface {

// Real coordinates of r x r Hermitian matrices: walk the upper triangle in
// row-major order; a diagonal entry contributes one coordinate, an
// off-diagonal entry two (real part, then imaginary part).

inline int hermitian_real_dim(int r) { return r * r; }

inline ComplexMatrix hermitian_from_coords(int r, const RealVector& coords) {
  if (coords.size() != hermitian_real_dim(r)) {
    throw Error(ErrorCode::DimensionMismatch, "coordinate vector has wrong length");
  }
  ComplexMatrix h = ComplexMatrix::Zero(r, r);
  Eigen::Index k = 0;
  for (int a = 0; a < r; ++a) {
    h(a, a) = coords(k++);
    for (int b = a + 1; b < r; ++b) {
      const Complex z{coords(k), coords(k + 1)};
      k += 2;
      h(a, b) = z;
      h(b, a) = std::conj(z);
    }
  }
  return h;
}

inline RealVector coords_from_hermitian(const ComplexMatrix& h) {
  const auto r = static_cast<int>(h.rows());
  RealVector coords(hermitian_real_dim(r));
  Eigen::Index k = 0;
  for (int a = 0; a < r; ++a) {
    coords(k++) = h(a, a).real();
    for (int b = a + 1; b < r; ++b) {
      coords(k++) = h(a, b).real();
      coords(k++) = h(a, b).imag();
    }
  }
  return coords;
}

// Real residual coordinates of an n x n Hermitian block-trace matrix: the n
// diagonal entries, then (real, imaginary) of each entry above the diagonal.
inline RealVector trace_residual_coords(const ComplexMatrix& t) {
  const auto n = static_cast<int>(t.rows());
  RealVector out(n * n);
  Eigen::Index k = 0;
  for (int i = 0; i < n; ++i) out(k++) = t(i, i).real();
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      out(k++) = t(i, j).real();
      out(k++) = t(i, j).imag();
    }
  }
  return out;
}

/// Linear map from the real coordinates of r x r Hermitian M to the n^2 real
/// coordinates of the block traces of V M V^*.
struct TraceConstraintMap {
  int n = 0;
  int r = 0;
  RealMatrix matrix;        // n^2 x r^2
  ComplexMatrix isometry;   // V, n^2 x r

  RealVector evaluate(const ComplexMatrix& m) const { return matrix * coords_from_hermitian(m); }

  /// Target value (1,...,1,0,...,0) of the map on members.
  RealVector target() const {
    RealVector t = RealVector::Zero(n * n);
    t.head(n).setOnes();
    return t;
  }
};

inline TraceConstraintMap build_trace_constraint_map(int n, const ComplexMatrix& v) {
  TraceConstraintMap map;
  map.n = n;
  map.r = static_cast<int>(v.cols());
  map.isometry = v;
  const int r = map.r;
  // tr block_ij(V M V^*) = tr(K_ij M) with K_ij = V_j^* V_i, V_i the i-th row block.
  std::vector<ComplexMatrix> k(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      k[i * n + j] = v.middleRows(j * n, n).adjoint() * v.middleRows(i * n, n);
    }
  }
  map.matrix.resize(n * n, hermitian_real_dim(r));
  RealVector e = RealVector::Zero(hermitian_real_dim(r));
  for (Eigen::Index col = 0; col < e.size(); ++col) {
    e.setZero();
    e(col) = 1.0;
    const ComplexMatrix h = hermitian_from_coords(r, e);
    ComplexMatrix t(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) t(i, j) = (k[i * n + j] * h).trace();
    }
    map.matrix.col(col) = trace_residual_coords(t);
  }
  return map;
}

inline TraceConstraintMap trace_constraint_map(const ChoiMatrix& c, const Tolerances& tol = {}) {
  require_member(c, tol);
  return build_trace_constraint_map(c.n(), range_isometry(c.matrix(), tol));
}

struct FaceDimension {
  int dim = 0;
  int rank = 0;          // rank of the generator
  int map_rank = 0;      // rank of the constraint map
  double gap = 0.0;      // spectral gap of the constraint map's singular values
};

namespace detail {

struct FaceData {
  TraceConstraintMap map;
  RealRank map_rank;
};

inline FaceData face_data(const ChoiMatrix& c, const Tolerances& tol) {
  FaceData d{trace_constraint_map(c, tol), {}};
  d.map_rank = real_rank(d.map.matrix, tol);
  return d;
}

}  // namespace detail

inline FaceDimension face_dimension_details(const ChoiMatrix& c, const Tolerances& tol = {}) {
  const auto d = detail::face_data(c, tol);
  FaceDimension out;
  out.rank = d.map.r;
  out.map_rank = d.map_rank.rank;
  out.dim = hermitian_real_dim(d.map.r) - d.map_rank.rank;
  out.gap = d.map_rank.gap;
  return out;
}

inline int face_dimension(const ChoiMatrix& c, const Tolerances& tol = {}) {
  return face_dimension_details(c, tol).dim;
}

inline bool is_extreme(const ChoiMatrix& c, const Tolerances& tol = {}) {
  return face_dimension(c, tol) == 0;
}

/// Choi's criterion on a minimal Kraus set {A_i}: extreme iff the r^2
/// products A_i^* A_j are linearly independent.
inline bool choi_criterion_extreme(const ChoiMatrix& c, const Tolerances& tol = {}) {
  const KrausSet k = kraus_from_choi(c, tol);
  const auto r = static_cast<int>(k.size());
  const int n = c.n();
  if (r * r > n * n) return false;
  ComplexMatrix stacked(n * n, r * r);
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < r; ++j) {
      stacked.col(i * r + j) = (k[i].adjoint() * k[j]).reshaped();
    }
  }
  return complex_rank(stacked, tol) == r * r;
}

/// Orthonormal (in real coordinates) basis of the directions of the face:
/// Hermitian, block-traceless matrices V N V^* with range inside range(c).
inline std::vector<ComplexMatrix> face_direction_basis(const ChoiMatrix& c,
                                                       const Tolerances& tol = {}) {
  const auto d = detail::face_data(c, tol);
  const int r = d.map.r;
  std::vector<ComplexMatrix> out;
  for (int col = d.map_rank.rank; col < hermitian_real_dim(r); ++col) {
    const ComplexMatrix n_k = hermitian_from_coords(r, d.map_rank.right_vectors.col(col));
    ComplexMatrix delta = d.map.isometry * n_k * d.map.isometry.adjoint();
    out.push_back(0.5 * (delta + delta.adjoint()));
  }
  return out;
}

struct BoundaryStep {
  double t_max = 0.0;
  ChoiMatrix point;
};

/// Walks from c along delta to the relative boundary of the face of c.
inline BoundaryStep boundary_step(const ChoiMatrix& c, const ComplexMatrix& delta,
                                  const Tolerances& tol = {}) {
  require_member(c, tol);
  const int n = c.n();
  if (delta.rows() != c.dim() || delta.cols() != c.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "direction must be n^2 x n^2");
  }
  require_finite(delta, "direction");
  const double scale = std::max(1.0, max_abs(delta));
  if (max_abs(delta) == 0.0) throw Error(ErrorCode::InvalidDirection, "zero direction");
  if (hermitian_residual(delta) > tol.equality_abs * scale) {
    throw Error(ErrorCode::InvalidDirection, "direction is not Hermitian");
  }
  if (max_abs(block_traces(delta, n)) > tol.equality_abs * scale) {
    throw Error(ErrorCode::InvalidDirection, "direction has nonzero block traces");
  }
  const ComplexMatrix v = range_isometry(c.matrix(), tol);
  const ComplexMatrix proj = v * v.adjoint();
  if (max_abs(delta - proj * delta * proj) > tol.equality_abs * scale) {
    throw Error(ErrorCode::InvalidDirection, "direction leaves the range of the generator");
  }

  const ComplexMatrix m0 = v.adjoint() * c.matrix() * v;
  const ComplexMatrix nd = v.adjoint() * delta * v;
  const ComplexMatrix s = inverse_sqrt_pd(0.5 * (m0 + m0.adjoint()), tol);
  ComplexMatrix w = s * nd * s;
  w = 0.5 * (w + w.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(w, Eigen::EigenvaluesOnly);
  const double lambda_min = solver.eigenvalues()(0);
  if (lambda_min >= -tol.psd_abs) {
    throw Error(ErrorCode::DegenerateDirection,
                "direction is positive semidefinite on the face (lambda_min = " +
                    std::to_string(lambda_min) + ")");
  }
  const double t = -1.0 / lambda_min;
  ComplexMatrix b = c.matrix() + t * delta;
  b = 0.5 * (b + b.adjoint());
  return {t, ChoiMatrix(n, std::move(b))};
}

/// Builds 1/2 (c + u u^*) with u a rank-one member chosen so that u has a
/// component in ker(c). Deterministic unless a seed is supplied, in which
/// case the kernel vector and the permutation are drawn at random.
inline ChoiMatrix extend_face(const ChoiMatrix& c, std::optional<std::uint64_t> seed = std::nullopt,
                              const Tolerances& tol = {}) {
  require_member(c, tol);
  const int n = c.n();
  const int rank = numerical_rank(c.matrix(), tol);
  if (rank > c.dim() - 2) {
    throw Error(ErrorCode::RankTooHigh,
                "rank " + std::to_string(rank) + " exceeds n^2 - 2 = " + std::to_string(c.dim() - 2));
  }
  const ComplexMatrix ker = kernel_basis(c.matrix(), tol);
  const double nonzero = std::sqrt(tol.equality_abs);

  std::vector<ComplexVector> candidates;
  std::optional<std::mt19937_64> rng;
  if (seed) {
    rng.emplace(*seed);
    std::normal_distribution<double> normal;
    ComplexVector x = ComplexVector::Zero(c.dim());
    for (Eigen::Index k = 0; k < ker.cols(); ++k) {
      const double re = normal(*rng);
      const double im = normal(*rng);
      x += Complex{re, im} * ker.col(k);
    }
    candidates.push_back(x.normalized());
  }
  for (Eigen::Index k = 0; k < ker.cols(); ++k) candidates.push_back(ker.col(k));

  for (const auto& x : candidates) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (std::abs(x(i * n + j)) <= nonzero) continue;
        // sigma(i) = j: cyclic shift, or a random permutation fixing that pair.
        std::vector<int> sigma(n);
        for (int k = 0; k < n; ++k) sigma[k] = ((k - i + j) % n + n) % n;
        if (rng) {
          std::vector<int> rest;
          for (int k = 0; k < n; ++k) {
            if (k != i) rest.push_back(sigma[k]);
          }
          std::shuffle(rest.begin(), rest.end(), *rng);
          for (int k = 0, p = 0; k < n; ++k) {
            if (k != i) sigma[k] = rest[p++];
          }
        }
        ComplexVector u = ComplexVector::Zero(c.dim());
        for (int k = 0; k < n; ++k) u(k * n + sigma[k]) = 1.0;
        if (std::abs(u.dot(x)) <= nonzero) u(i * n + j) = kI;  // theta = pi/2
        if (std::abs(u.dot(x)) <= nonzero) continue;
        ComplexMatrix a1 = 0.5 * (c.matrix() + outer(u));
        a1 = 0.5 * (a1 + a1.adjoint());
        if (numerical_rank(a1, tol) == rank + 1) return ChoiMatrix(n, std::move(a1));
      }
    }
  }
  throw Error(ErrorCode::DegenerateDirection, "no kernel vector produced a rank increase");
}

struct FaceReport {
  int n = 0;
  int rank = 0;
  int face_dim = 0;
  bool is_extreme = false;
  bool choi_criterion_extreme = false;
  int kernel_dim = 0;
  double spectral_gap = 0.0;
};

inline FaceReport analyze(const ChoiMatrix& c, const Tolerances& tol = {}) {
  const auto fd = face_dimension_details(c, tol);
  FaceReport rep;
  rep.n = c.n();
  rep.rank = fd.rank;
  rep.face_dim = fd.dim;
  rep.is_extreme = fd.dim == 0;
  rep.choi_criterion_extreme = choi_criterion_extreme(c, tol);
  rep.kernel_dim = c.dim() - fd.rank;
  rep.spectral_gap = fd.gap;
  if (rep.is_extreme && rep.rank > rep.n) {
    throw std::logic_error("extreme point with Choi rank above n");
  }
  return rep;
}

}  // namespace choiface
