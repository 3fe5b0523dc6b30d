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

// Explicit members of C_n used as fixtures and CLI examples: the rank-2
// witnesses for every attainable face dimension, the A_3 / A^[n] family
// with its two extreme points, and seeded random members of fixed rank.
//
// Indices below are 0-based; index i*n + k is entry k of chunk (block) i.

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "choiface/channel.hpp"
#include "choiface/errors.hpp"
#include "choiface/hermitian.hpp"

namespace choiface {

namespace surd {
// Off-diagonal entries of P.
inline double p12() { return 9.0 / (4.0 * std::sqrt(6.0)); }
inline double p13() { return 3.0 / (2.0 * std::sqrt(6.0)); }
inline double p23() { return 0.25; }
// Imaginary parts of the rank-one extreme points above A_3.
inline double x12_im() { return std::sqrt(5.0) / (4.0 * std::sqrt(2.0)); }
inline double x13_im() { return -std::sqrt(5.0) / (2.0 * std::sqrt(2.0)); }
inline double x23_im() { return -std::sqrt(15.0) / 4.0; }
}  // namespace surd

inline void require_min_n(int n, int min, const char* what) {
  if (n < min) {
    throw Error(ErrorCode::BadDimension,
                std::string(what) + " needs n >= " + std::to_string(min) + ", got " + std::to_string(n));
  }
}

/// The 3x3 PSD matrix with kernel spanned by q = [1, -2/sqrt6, -1/sqrt6].
inline ComplexMatrix p_matrix() {
  ComplexMatrix p(3, 3);
  p << 1.0, surd::p12(), surd::p13(),
       surd::p12(), 1.0, surd::p23(),
       surd::p13(), surd::p23(), 1.0;
  return p;
}

inline ComplexVector p_kernel_vector() {
  ComplexVector q(3);
  q << 1.0, -2.0 / std::sqrt(6.0), -1.0 / std::sqrt(6.0);
  return q;
}

/// Choi matrix with block (i, j) = Q_ij E_ij, i.e. Q placed on the indices
/// (n+1) i.
inline ChoiMatrix diagonal_pattern_choi(const ComplexMatrix& q) {
  const auto n = static_cast<int>(q.rows());
  ComplexMatrix m = ComplexMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m((n + 1) * i, (n + 1) * j) = q(i, j);
  }
  return ChoiMatrix(n, std::move(m));
}

/// 9x9 rank-2 member with a one-dimensional face.
inline ChoiMatrix a3() { return diagonal_pattern_choi(p_matrix()); }

/// The two extreme points X, X1 of the face of A_3; X1 is the conjugate of X
/// and A_3 is their midpoint.
inline std::pair<ChoiMatrix, ChoiMatrix> a3_extremes() {
  // X = x x^*, x = e_0 + e^{-i theta} e_4 + e^{-i phi} e_8 with
  // cos theta = 9/(4 sqrt6), sin theta = sqrt5/(4 sqrt2),
  // cos phi = 3/(2 sqrt6), sin phi = -sqrt5/(2 sqrt2).
  ComplexVector x = ComplexVector::Zero(9);
  x(0) = 1.0;
  x(4) = Complex{surd::p12(), -surd::x12_im()};
  x(8) = Complex{surd::p13(), -surd::x13_im()};
  const ComplexMatrix xm = outer(x);
  return {ChoiMatrix(3, xm), ChoiMatrix(3, xm.conjugate())};
}

/// A^[n], n >= 3: rank 2 with a one-dimensional face; A^[3] = A_3.
inline ChoiMatrix an_family(int n) {
  require_min_n(n, 3, "an_family");
  ComplexMatrix q = ComplexMatrix::Zero(n, n);
  const int a = n - 2;  // 0-based index of block n-1
  const int b = n - 1;  // 0-based index of block n
  for (int i = 0; i < n - 2; ++i) {
    for (int j = 0; j < n - 2; ++j) q(i, j) = 1.0;
    q(i, a) = q(a, i) = surd::p12();
    q(i, b) = q(b, i) = surd::p13();
  }
  q(a, a) = q(b, b) = 1.0;
  q(a, b) = q(b, a) = surd::p23();
  return diagonal_pattern_choi(q);
}

/// y y^* + z z^* with y = [e_1, 0, ..., 0], z = [0, e_1, e_2, ..., e_{n-1}]:
/// a rank-2 extreme point.
inline ChoiMatrix case_iia_example(int n) {
  require_min_n(n, 3, "case_iia_example");
  ComplexVector y = ComplexVector::Zero(n * n);
  ComplexVector z = ComplexVector::Zero(n * n);
  y(0) = 1.0;
  for (int k = 1; k < n; ++k) z(k * n + (k - 1)) = 1.0;
  return ChoiMatrix(n, outer(y) + outer(z));
}

/// Indices of C_n that carry a copy of C_{n-1}: everything except the first
/// chunk and the first entry of every chunk, in increasing order.
inline std::vector<int> embedding_indices(int n) {
  std::vector<int> s;
  for (int k = 1; k < n; ++k) {
    for (int p = 1; p < n; ++p) s.push_back(k * n + p);
  }
  return s;
}

enum class EmbedCoupling {
  Decoupled,  // row 1 restricted to S is zero
  Coupled,    // column 1 is column n+2 scaled by 1/sqrt(b_11)
};

/// Lifts B in C_{n-1} to A in C_n with A[S] = B and a_11 = 1.
inline ChoiMatrix embed_in_larger(const ChoiMatrix& b, EmbedCoupling coupling,
                                  const Tolerances& tol = {}) {
  require_member(b, tol);
  const int n = b.n() + 1;
  const auto s = embedding_indices(n);
  ComplexMatrix m = ComplexMatrix::Zero(n * n, n * n);
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = 0; j < s.size(); ++j) m(s[i], s[j]) = b.matrix()(i, j);
  }
  m(0, 0) = 1.0;
  if (coupling == EmbedCoupling::Coupled) {
    const double b11 = b.matrix()(0, 0).real();
    if (b11 <= tol.equality_abs) {
      throw Error(ErrorCode::Infeasible, "coupled embedding needs b_11 > 0");
    }
    for (std::size_t j = 0; j < s.size(); ++j) {
      m(0, s[j]) = b.matrix()(0, j) / std::sqrt(b11);
      m(s[j], 0) = std::conj(m(0, s[j]));
    }
  }
  return ChoiMatrix(n, std::move(m));
}

/// Rank-one member whose chunks are the standard basis: the identity channel.
inline ChoiMatrix standard_rank1(int n) {
  require_min_n(n, 1, "standard_rank1");
  ComplexVector v = ComplexVector::Zero(n * n);
  for (int k = 0; k < n; ++k) v(k * n + k) = 1.0;
  return ChoiMatrix(n, outer(v));
}

/// Rank-2 member with a two-dimensional face, built from the rank-one
/// extreme point of C_{n-1} by the decoupled embedding.
inline ChoiMatrix embed_rank1_example(int n) {
  require_min_n(n, 3, "embed_rank1_example");
  return embed_in_larger(standard_rank1(n - 1), EmbedCoupling::Decoupled);
}

struct Rank2FamilyN2Params {
  double c = 1.0;
  Complex s{0.0, 0.0};
  Complex y{0.0, 0.0};

  /// (1 - c)(c - |y|^2) - |s|^2, zero on the rank-2 stratum with c < 1.
  double stratum_defect() const {
    return (1.0 - c) * (c - std::norm(y)) - std::norm(s);
  }
};

inline ChoiMatrix rank2_family_n2(const Rank2FamilyN2Params& p, const Tolerances& tol = {}) {
  if (!std::isfinite(p.c) || p.c < 0.0 || p.c > 1.0) {
    throw Error(ErrorCode::Infeasible, "c must lie in [0, 1]");
  }
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(0, 3) = p.y;
  m(3, 0) = std::conj(p.y);
  m(2, 2) = 1.0 - p.c;
  m(2, 3) = p.s;
  m(3, 2) = std::conj(p.s);
  m(3, 3) = p.c;
  require_finite(m, "rank2_family_n2");
  const auto eig = hermitian_eigen(m, tol);
  if (eig.min() < -tol.psd_abs) {
    throw Error(ErrorCode::Infeasible,
                "parameters give a matrix with eigenvalue " + std::to_string(eig.min()));
  }
  return ChoiMatrix(2, std::move(m));
}

/// Point of the c < 1 stratum with y = 0 and real s >= 0.
inline Rank2FamilyN2Params rank2_stratum_point(double c) {
  Rank2FamilyN2Params p;
  p.c = c;
  p.s = std::sqrt((1.0 - c) * c);
  return p;
}

/// (K (x) I) B (K (x) I)^* with K = R^{-1/2}, R the block-trace matrix of B:
/// the rank-preserving normalization onto the block-trace conditions.
inline ComplexMatrix normalize_block_traces(const ComplexMatrix& b, int n,
                                            const Tolerances& tol = {}) {
  const ComplexMatrix r = block_traces(b, n);
  const ComplexMatrix k = inverse_sqrt_pd(0.5 * (r + r.adjoint()), tol);
  ComplexMatrix lift = ComplexMatrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      lift.block(i * n, j * n, n, n) = k(i, j) * ComplexMatrix::Identity(n, n);
    }
  }
  ComplexMatrix out = lift * b * lift.adjoint();
  return 0.5 * (out + out.adjoint());
}

/// Seeded random member of C_n of rank exactly r, from a complex Gaussian
/// n^2 x r factor.
inline ChoiMatrix random_member(int n, int r, std::uint64_t seed, const Tolerances& tol = {}) {
  require_min_n(n, 1, "random_member");
  if (r < 1 || r > n * n) {
    throw Error(ErrorCode::BadDimension, "rank must lie in 1..n^2");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  for (int attempt = 0; attempt < 10; ++attempt) {
    ComplexMatrix g(n * n, r);
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
      for (Eigen::Index i = 0; i < g.rows(); ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        g(i, j) = Complex{re, im};
      }
    }
    const ComplexMatrix b = g * g.adjoint();
    const ComplexMatrix traces = block_traces(b, n);
    const auto teig = hermitian_eigen(0.5 * (traces + traces.adjoint()), tol);
    if (teig.min() <= rank_threshold(teig.max(), tol)) continue;
    ChoiMatrix c(n, normalize_block_traces(b, n, tol));
    if (!check_membership(c, tol).is_member) continue;
    if (numerical_rank(c.matrix(), tol) != r) continue;
    return c;
  }
  throw Error(ErrorCode::DegenerateSample, "no admissible sample after 10 draws");
}

/// Parameters accepted by the named catalog entries.
struct ExampleParams {
  int n = 3;
  int rank = 0;  // 0 means n^2 for "random"
  std::uint64_t seed = 0;
  Rank2FamilyN2Params family;
};

inline constexpr std::array<std::string_view, 9> kCatalogNames{
    "p", "a3", "a3-extreme-x", "a3-extreme-x1", "an",
    "case-iia", "embed-rank1", "rank2-n2", "random"};

inline std::string catalog_listing() {
  std::string out;
  for (auto name : kCatalogNames) {
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

/// Channel-valued catalog entries. "p" is a plain 3x3 matrix; use p_matrix().
inline ChoiMatrix make_example(std::string_view name, const ExampleParams& params = {},
                               const Tolerances& tol = {}) {
  if (name == "a3") return a3();
  if (name == "a3-extreme-x") return a3_extremes().first;
  if (name == "a3-extreme-x1") return a3_extremes().second;
  if (name == "an") return an_family(params.n);
  if (name == "case-iia") return case_iia_example(params.n);
  if (name == "embed-rank1") return embed_rank1_example(params.n);
  if (name == "rank2-n2") return rank2_family_n2(params.family, tol);
  if (name == "random") {
    const int rank = params.rank == 0 ? params.n * params.n : params.rank;
    return random_member(params.n, rank, params.seed, tol);
  }
  if (name == "p") {
    throw Error(ErrorCode::UnknownExample, "\"p\" is a 3x3 matrix, not a channel");
  }
  throw Error(ErrorCode::UnknownExample,
              "unknown example \"" + std::string(name) + "\"; available: " + catalog_listing());
}

}  // namespace choiface
