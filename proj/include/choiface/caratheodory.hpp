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

// Convex decomposition of a channel into at most n^2 extreme channels.
//
// Descend inside the face of A to an extreme point B, then extend the
// segment from B through A until it leaves the face at C. A is a convex
// combination of B and C and rank C < rank A, so repeating on C ends after
// at most rank A steps.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "choiface/channel.hpp"
#include "choiface/errors.hpp"
#include "choiface/face.hpp"
#include "choiface/hermitian.hpp"

namespace choiface {

struct Decomposition {
  std::vector<double> weights;
  std::vector<ChoiMatrix> points;
  double residual = 0.0;  // max-norm of sum_k w_k P_k - input

  ComplexMatrix reconstruct() const {
    ComplexMatrix sum = ComplexMatrix::Zero(points.front().dim(), points.front().dim());
    for (std::size_t k = 0; k < points.size(); ++k) sum += weights[k] * points[k].matrix();
    return sum;
  }
};

/// Options shared by the descent and the decomposition. With a seed, the
/// direction used at each descent step is drawn from a shuffled basis.
struct DescentOptions {
  std::optional<std::uint64_t> seed;
};

namespace detail {

inline ChoiMatrix descend(const ChoiMatrix& c, const Tolerances& tol, std::mt19937_64* rng) {
  ChoiMatrix cur = c;
  int rank = numerical_rank(cur.matrix(), tol);
  const int max_steps = rank;
  for (int step = 0; step <= max_steps; ++step) {
    auto dirs = face_direction_basis(cur, tol);
    if (dirs.empty()) return cur;
    if (rng) std::shuffle(dirs.begin(), dirs.end(), *rng);
    auto next = boundary_step(cur, dirs.front(), tol);
    const int next_rank = numerical_rank(next.point.matrix(), tol);
    if (next_rank >= rank) {
      throw Error(ErrorCode::IterationOverflow,
                  "rank did not drop at a boundary (" + std::to_string(rank) + " -> " +
                      std::to_string(next_rank) + ")");
    }
    cur = std::move(next.point);
    rank = next_rank;
  }
  throw Error(ErrorCode::IterationOverflow, "descent did not terminate");
}

}  // namespace detail

/// An extreme point of the face generated by c.
inline ChoiMatrix find_extreme_in_face(const ChoiMatrix& c, const Tolerances& tol = {},
                                       const DescentOptions& opts = {}) {
  require_member(c, tol);
  std::optional<std::mt19937_64> rng;
  if (opts.seed) rng.emplace(*opts.seed);
  return detail::descend(c, tol, rng ? &*rng : nullptr);
}

inline Decomposition decompose(const ChoiMatrix& c, const Tolerances& tol = {},
                               const DescentOptions& opts = {}) {
  require_member(c, tol);
  std::optional<std::mt19937_64> rng;
  if (opts.seed) rng.emplace(*opts.seed);
  const std::size_t max_points = static_cast<std::size_t>(c.dim());

  Decomposition out;
  ChoiMatrix cur = c;
  double weight = 1.0;
  int rank = numerical_rank(cur.matrix(), tol);
  while (true) {
    if (out.points.size() >= max_points) {
      throw Error(ErrorCode::DecompositionOverflow, "more than n^2 points accumulated");
    }
    ChoiMatrix extreme = detail::descend(cur, tol, rng ? &*rng : nullptr);
    if (max_abs(cur.matrix() - extreme.matrix()) <= tol.equality_abs) {
      out.weights.push_back(weight);
      out.points.push_back(std::move(extreme));
      break;
    }
    // cur = s/(1+s) E + 1/(1+s) C(s), C(s) = cur + s (cur - E)
    const ComplexMatrix delta = cur.matrix() - extreme.matrix();
    auto step = boundary_step(cur, delta, tol);
    const double s = step.t_max;
    const int next_rank = numerical_rank(step.point.matrix(), tol);
    if (next_rank >= rank) {
      throw Error(ErrorCode::DecompositionOverflow, "rank did not drop along the segment");
    }
    out.weights.push_back(weight * s / (1.0 + s));
    out.points.push_back(std::move(extreme));
    weight /= (1.0 + s);
    cur = std::move(step.point);
    rank = next_rank;
  }
  out.residual = max_abs(out.reconstruct() - c.matrix());
  return out;
}

}  // namespace choiface
