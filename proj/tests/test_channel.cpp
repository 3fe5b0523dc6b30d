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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <vector>

#include "choiface/channel.hpp"
#include "choiface/constructions.hpp"
#include "choiface/face.hpp"
#include "oracles.hpp"

namespace choiface {
namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::UnknownExample;
}

ComplexMatrix e(int n, int i, int j) { return oracle::unit(n, i, j); }

// k Kraus operators of a trace-preserving map: row blocks of an isometry.
std::vector<ComplexMatrix> random_tp_kraus(int n, int k, std::mt19937_64& rng) {
  const ComplexMatrix u = oracle::random_unitary(n * k, rng);
  std::vector<ComplexMatrix> ops;
  for (int t = 0; t < k; ++t) ops.push_back(u.block(t * n, 0, n, n));
  return ops;
}

TEST(KrausSet, ValidatesShapes) {
  EXPECT_EQ(code_of([] { KrausSet(std::vector<ComplexMatrix>{}); }), ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] {
              KrausSet({ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)});
            }),
            ErrorCode::DimensionMismatch);
  EXPECT_EQ(code_of([] { KrausSet({ComplexMatrix::Zero(2, 3)}); }), ErrorCode::DimensionMismatch);
  KrausSet id({ComplexMatrix::Identity(2, 2)});
  EXPECT_TRUE(id.is_trace_preserving());
  KrausSet half({0.5 * ComplexMatrix::Identity(2, 2)});
  EXPECT_FALSE(half.is_trace_preserving());
}

TEST(ChoiFromKraus, IdentityChannel) {
  const ChoiMatrix c = choi_from_kraus(KrausSet({ComplexMatrix::Identity(2, 2)}));
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = expected(0, 3) = expected(3, 0) = expected(3, 3) = 1.0;
  EXPECT_EQ(c.matrix(), expected);
  EXPECT_EQ(numerical_rank(c.matrix()), 1);
}

TEST(ChoiFromKraus, E11E12MatchesDirectEvaluation) {
  const std::vector<ComplexMatrix> ops{e(2, 0, 0), e(2, 0, 1)};
  const ChoiMatrix c = choi_from_kraus(KrausSet(ops));
  // Frozen from the direct evaluation oracle: blocks (1,1) = (2,2) = E_11.
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(2, 2) = 1.0;
  EXPECT_EQ(oracle::choi_by_evaluation(ops), expected);
  EXPECT_EQ(c.matrix(), expected);
  EXPECT_EQ(numerical_rank(c.matrix()), 2);
}

TEST(ChoiFromKraus, AgreesWithEvaluationAndIsPsd) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + trial % 3;
    const int k = 1 + trial % 4;
    std::vector<ComplexMatrix> ops;
    for (int t = 0; t < k; ++t) {
      ops.push_back(oracle::random_vector(n * n, rng).reshaped(n, n));
    }
    const ChoiMatrix c = choi_from_kraus(KrausSet(ops));
    EXPECT_LE(max_abs(c.matrix() - oracle::choi_by_evaluation(ops)), 1e-12);
    EXPECT_GE(hermitian_eigen(c.matrix()).min(), -1e-10);
  }
}

TEST(ChoiFromKraus, TracePreservingGivesMembers) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 3;
    const auto ops = random_tp_kraus(n, 1 + trial % 3, rng);
    const ChoiMatrix c = choi_from_kraus(KrausSet(ops));
    EXPECT_LE(max_abs(block_traces(c.matrix(), n) - ComplexMatrix::Identity(n, n)), 1e-12);
    EXPECT_TRUE(check_membership(c).is_member);
  }
}

TEST(KrausFromChoi, IdentityChannelGivesIdentityUpToPhase) {
  const ChoiMatrix c = standard_rank1(3);
  const KrausSet k = kraus_from_choi(c);
  ASSERT_EQ(k.size(), 1u);
  const Complex phase = k[0](0, 0);
  EXPECT_NEAR(std::abs(phase), 1.0, 1e-12);
  EXPECT_LE(max_abs(k[0] / phase - ComplexMatrix::Identity(3, 3)), 1e-12);
}

TEST(KrausFromChoi, A3RoundTrip) {
  const KrausSet k = kraus_from_choi(a3());
  EXPECT_EQ(k.size(), 2u);
  EXPECT_LE(max_abs(choi_from_kraus(k).matrix() - a3().matrix()), 1e-8);
  EXPECT_TRUE(k.is_trace_preserving());
}

TEST(KrausFromChoi, CompletelyDepolarizing) {
  for (int n = 2; n <= 3; ++n) {
    const ChoiMatrix c(n, ComplexMatrix::Identity(n * n, n * n) / n);
    const KrausSet k = kraus_from_choi(c);
    EXPECT_EQ(static_cast<int>(k.size()), n * n);
    EXPECT_LE(max_abs(choi_from_kraus(k).matrix() - c.matrix()), 1e-8);
  }
}

TEST(KrausFromChoi, RejectsNonMembers) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  EXPECT_EQ(code_of([&] { kraus_from_choi(ChoiMatrix(2, m)); }), ErrorCode::NotMember);
}

TEST(KrausFromChoi, RoundTripOnRandomMembers) {
  for (int n = 1; n <= 4; ++n) {
    for (int seed = 0; seed < 10; ++seed) {
      const int r = 1 + (seed * 7) % (n * n);
      const ChoiMatrix c = random_member(n, r, 100 + seed);
      const KrausSet k = kraus_from_choi(c);
      EXPECT_EQ(static_cast<int>(k.size()), r);
      EXPECT_LE(max_abs(choi_from_kraus(k).matrix() - c.matrix()), 1e-8);
    }
  }
}

TEST(CheckMembership, PaperMembersAndNonMembers) {
  EXPECT_TRUE(check_membership(a3()).is_member);
  for (int n = 1; n <= 4; ++n) {
    EXPECT_TRUE(check_membership(ChoiMatrix(n, ComplexMatrix::Identity(n * n, n * n) / n)).is_member);
  }
  ComplexVector x = ComplexVector::Zero(4);
  x(0) = 1.0;
  x(2) = 1.0;  // chunks [e_1, e_1]
  const auto rep = check_membership(ChoiMatrix(2, outer(x)));
  EXPECT_FALSE(rep.is_member);
  EXPECT_NEAR(rep.max_trace_condition_residual, 1.0, 1e-14);
}

TEST(CheckMembership, ReportsEachResidual) {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 2.0;
  m(0, 1) = 0.1;  // not Hermitian
  auto rep = check_membership(ChoiMatrix(2, m));
  EXPECT_FALSE(rep.is_member);
  EXPECT_NEAR(rep.hermitian_residual, 0.1, 1e-14);

  ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  neg(2, 2) = 0.5;
  neg(3, 3) = 0.5;
  rep = check_membership(ChoiMatrix(2, neg));
  EXPECT_FALSE(rep.is_member);
  EXPECT_NEAR(rep.min_eigenvalue, -0.5, 1e-14);
  EXPECT_LE(rep.max_trace_condition_residual, 1e-14);
}

TEST(Rank1Membership, BasicCases) {
  for (int n = 1; n <= 4; ++n) {
    ComplexVector x = ComplexVector::Zero(n * n);
    for (int k = 0; k < n; ++k) x(k * n + k) = 1.0;
    EXPECT_TRUE(rank1_membership(x));
  }
  ComplexVector rep = ComplexVector::Zero(4);
  rep(0) = rep(2) = 1.0;
  EXPECT_FALSE(rank1_membership(rep));
  EXPECT_EQ(code_of([] { rank1_membership(ComplexVector::Ones(5)); }), ErrorCode::DimensionMismatch);
}

TEST(Rank1Membership, UnitaryRowsAreMembers) {
  std::mt19937_64 rng(9);
  for (int n = 2; n <= 4; ++n) {
    const ComplexMatrix u = oracle::random_unitary(n, rng);
    ComplexVector x(n * n);
    for (int i = 0; i < n; ++i) x.segment(i * n, n) = u.row(i).adjoint();
    EXPECT_TRUE(oracle::chunks_orthonormal(x, n, 1e-10));
    EXPECT_TRUE(rank1_membership(x));
  }
}

TEST(Rank1Membership, AgreesWithFullMembershipCheck) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    ComplexVector x;
    if (trial % 2 == 0) {
      const ComplexMatrix u = oracle::random_unitary(n, rng);
      x = u.reshaped();
      if (trial % 4 == 0) x(0) += 1e-3;
    } else {
      x = oracle::random_vector(n * n, rng);
    }
    const bool direct = oracle::chunks_orthonormal(x, n, Tolerances{}.equality_abs);
    EXPECT_EQ(rank1_membership(x), direct);
    EXPECT_EQ(check_membership(ChoiMatrix(n, outer(x))).is_member, direct);
  }
}

TEST(ConjugateBlocks, IdentityLeavesUnchanged) {
  const ChoiMatrix c = a3();
  EXPECT_LE(max_abs(conjugate_blocks(c, ComplexMatrix::Identity(3, 3)).matrix() - c.matrix()), 1e-15);
}

TEST(ConjugateBlocks, PreservesMembershipRankAndMapsKernel) {
  std::mt19937_64 rng(33);
  const ChoiMatrix c = a3();
  const ComplexMatrix ker = kernel_basis(c.matrix());
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexMatrix u = oracle::random_unitary(3, rng);
    const ChoiMatrix c1 = conjugate_blocks(c, u);
    EXPECT_TRUE(check_membership(c1).is_member);
    EXPECT_EQ(numerical_rank(c1.matrix()), 2);
    for (Eigen::Index k = 0; k < ker.cols(); ++k) {
      ComplexVector z1(9);
      for (int i = 0; i < 3; ++i) z1.segment(i * 3, 3) = u * ker.col(k).segment(i * 3, 3);
      EXPECT_LE((c1.matrix() * z1).norm(), 1e-8);
    }
    // q extended by zeros: e_1 - 2/sqrt6 e_5 - 1/sqrt6 e_9.
    ComplexVector q = ComplexVector::Zero(9);
    q(0) = 1.0;
    q(4) = -2.0 / std::sqrt(6.0);
    q(8) = -1.0 / std::sqrt(6.0);
    ComplexVector q1(9);
    for (int i = 0; i < 3; ++i) q1.segment(i * 3, 3) = u * q.segment(i * 3, 3);
    EXPECT_LE((c1.matrix() * q1).norm(), 1e-8);
  }
}

TEST(ConjugateBlocks, Errors) {
  ComplexMatrix notu = ComplexMatrix::Identity(3, 3);
  notu(0, 0) = 2.0;
  EXPECT_EQ(code_of([&] { conjugate_blocks(a3(), notu); }), ErrorCode::NotUnitary);
  const ChoiMatrix bad(2, ComplexMatrix::Identity(4, 4));
  EXPECT_EQ(code_of([&] { conjugate_blocks(bad, ComplexMatrix::Identity(2, 2)); }),
            ErrorCode::NotMember);
}

TEST(ChoiMatrix, RejectsWrongShapeAndNonFinite) {
  EXPECT_EQ(code_of([] { ChoiMatrix(2, ComplexMatrix::Identity(3, 3)); }),
            ErrorCode::DimensionMismatch);
  ComplexMatrix m = ComplexMatrix::Identity(4, 4);
  m(1, 1) = std::nan("");
  EXPECT_EQ(code_of([&] { ChoiMatrix(2, m); }), ErrorCode::NonFinite);
  EXPECT_EQ(ChoiMatrix(ComplexMatrix::Identity(9, 9)).n(), 3);
}

}  // namespace
}  // namespace choiface
