#include <gtest/gtest.h>

#include <cmath>

#include "corrlab/error.hpp"
#include "corrlab/hessian.hpp"
#include "corrlab/optimizer.hpp"
#include "random_states.hpp"

using namespace corrlab;
using corrlab::testkit::Rng;

namespace {

std::vector<EntropicForm> forms() {
  return {EntropicForm::von_neumann(), EntropicForm::quadratic(), EntropicForm::tsallis(2.5),
          EntropicForm::tsallis(4.0)};
}

double min_eigenvalue(const RealMatrix& m) {
  return Eigen::SelfAdjointEigenSolver<RealMatrix>(m).eigenvalues()(0);
}

double angle_between(const Vec3& a, const Vec3& b) {
  return std::acos(std::min(1.0, std::abs(a.normalized().dot(b.normalized()))));
}

}  // namespace

TEST(Hessian, QuadraticIsIdentity) {
  Rng rng(71);
  for (int d = 2; d <= 4; ++d) {
    const DensityMatrix rho = testkit::random_density(d, rng);
    const HessianMatrix h = hessian_general(rho, basis_for(d), EntropicForm::quadratic());
    const int n = d * d - 1;
    EXPECT_LT((h.lambda - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10) << d;
  }
}

TEST(Hessian, MaximallyMixedIsScaledIdentity) {
  for (int d = 2; d <= 4; ++d) {
    const DensityMatrix rho = DensityMatrix::Identity(d, d) / double(d);
    for (const auto& f : forms()) {
      const HessianMatrix h = hessian_general(rho, basis_for(d), f);
      const double expected = 0.25 * std::abs(f.d2f(1.0 / d));
      const int n = d * d - 1;
      EXPECT_LT((h.lambda - expected * RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff(), 1e-10)
          << f.name() << " d=" << d;
    }
  }
}

TEST(Hessian, VonNeumannAlongZ) {
  const Vec3 r(0.0, 0.0, 0.5);
  const HessianMatrix h = hessian_two_qubit(r, EntropicForm::von_neumann());
  EXPECT_NEAR(h.lambda(0, 0), 0.792481250360578, 1e-12);
  EXPECT_NEAR(h.lambda(1, 1), 0.792481250360578, 1e-12);
  EXPECT_NEAR(h.lambda(2, 2), 0.9617966939259756, 1e-12);
  EXPECT_NEAR(h.lambda(0, 2), 0.0, 1e-15);
}

TEST(Hessian, TwoQubitClosedFormMatchesGeneral) {
  Rng rng(72);
  for (const auto& f : forms()) {
    for (int t = 0; t < 30; ++t) {
      const Vec3 r = testkit::random_unit(rng) * std::uniform_real_distribution<double>(0, 0.95)(rng);
      const HessianMatrix a = hessian_two_qubit(r, f);
      const HessianMatrix g = hessian_for_bloch(r, 2, f);
      EXPECT_LT((a.lambda - g.lambda).cwiseAbs().maxCoeff(), 1e-10) << f.name();
    }
    const HessianMatrix zero = hessian_two_qubit(Vec3::Zero(), f);
    EXPECT_NEAR(zero.lambda(1, 1), 0.5 * std::abs(h_f_second(0.0, f)), 1e-12);
  }
}

TEST(Hessian, PositiveDefiniteForFullRank) {
  Rng rng(73);
  for (int d = 2; d <= 4; ++d) {
    for (int t = 0; t < 10; ++t) {
      const DensityMatrix rho = testkit::random_density(d, rng);
      for (const auto& f : forms()) {
        const HessianMatrix h = hessian_general(rho, basis_for(d), f);
        EXPECT_LT((h.lambda - h.lambda.transpose()).cwiseAbs().maxCoeff(), 1e-12);
        EXPECT_GT(min_eigenvalue(h.lambda), 0.0) << f.name();
      }
    }
  }
}

TEST(Hessian, RankDeficientVonNeumannInvalid) {
  Rng rng(74);
  const DensityMatrix pure = testkit::random_density(3, rng, 1);
  EXPECT_THROW(hessian_general(pure, basis_for(3), EntropicForm::von_neumann()),
               ApproximationInvalidError);
  EXPECT_NO_THROW(hessian_general(pure, basis_for(3), EntropicForm::quadratic()));
}

TEST(Hessian, ConfluentLimitIsContinuous) {
  const EntropicForm vn = EntropicForm::von_neumann();
  const HessianMatrix a = hessian_for_bloch(Vec3(0.0, 0.0, 1e-9), 2, vn);
  const HessianMatrix b = hessian_for_bloch(Vec3(0.0, 0.0, 1e-5), 2, vn);
  EXPECT_LT((a.lambda - b.lambda).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(MinimizeQuadratic, WernerIsDegenerate) {
  const OptimizationResult r = minimize_quadratic(werner(0.5));
  EXPECT_TRUE(r.degenerate);
  EXPECT_NEAR(r.lambda_max, 0.25, 1e-14);
  EXPECT_NEAR(r.s_min, 1.0 - 0.25, 1e-14);
  EXPECT_EQ(r.method, Method::ExactQuadratic);
}

TEST(MinimizeQuadratic, XStatePicksX) {
  const BlochDecomposition b = x_state({0.0, 0.0, 0.5, 0.1, 0.2});
  const OptimizationResult r = minimize_quadratic(b);
  EXPECT_FALSE(r.degenerate);
  EXPECT_NEAR(r.lambda_max, 0.25, 1e-14);
  EXPECT_NEAR((r.k_opt - Vec3::UnitX()).norm(), 0.0, 1e-12);
}

TEST(MinimizeQuadratic, MatchesOracle) {
  Rng rng(75);
  for (int t = 0; t < 12; ++t) {
    const BlochDecomposition b = testkit::random_state(t % 3 == 2 ? 3 : 2, rng);
    const OptimizationResult exact = minimize_quadratic(b);
    const OptimizationResult oracle = minimize_oracle(b, EntropicForm::quadratic());
    EXPECT_NEAR(exact.s_min, oracle.s_min, 1e-8) << t;
    const Vec3 k = exact.k_opt;
    EXPECT_NEAR(conditional_entropy(b, ProjectiveDirection(k), EntropicForm::quadratic()),
                exact.s_min, 1e-12);
    if (!exact.degenerate) {
      EXPECT_LT(angle_between(exact.k_opt, oracle.k_opt), 1e-4);
    }
  }
}

TEST(MinimizeQuadratic, NoPovmBeatsTheOptimum) {
  Rng rng(76);
  const EntropicForm q = EntropicForm::quadratic();
  for (int t = 0; t < 20; ++t) {
    const BlochDecomposition b = testkit::random_state(2, rng);
    const double s_min = minimize_quadratic(b).s_min;
    for (int j = 0; j < 10; ++j) {
      const RankOnePovm m = testkit::random_povm(3 + j % 4, rng);
      EXPECT_GE(povm_conditional_entropy(b, m, q), s_min - 1e-12);
    }
  }
}

TEST(MinimizeQuadratic, SingularWeightThrows) {
  EXPECT_THROW(minimize_quadratic(schmidt_pure(1.0)), SingularWeightError);
}

TEST(MinimizeWeak, QuadraticCoincidesWithExact) {
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const BlochDecomposition b = testkit::random_state(t % 2 ? 3 : 2, rng);
    const OptimizationResult a = minimize_quadratic(b);
    const OptimizationResult w = minimize_weak_correlation(b, EntropicForm::quadratic());
    EXPECT_NEAR(a.lambda_max, w.lambda_max, 1e-10);
    EXPECT_NEAR(a.s_min, w.s_min, 1e-10);
  }
}

TEST(MinimizeWeak, UniversalAtMaximallyMixedMarginal) {
  Rng rng(78);
  for (int t = 0; t < 10; ++t) {
    BlochDecomposition b = testkit::random_state(2, rng);
    b.r_A.setZero();
    const Vec3 k_quad = minimize_quadratic(b).k_opt;
    for (const auto& f : forms()) {
      const OptimizationResult w = minimize_weak_correlation(b, f);
      EXPECT_LT(angle_between(w.k_opt, k_quad), 1e-8) << f.name();
      EXPECT_NEAR(w.lambda_max, 0.25 * std::abs(f.d2f(0.5)) * minimize_quadratic(b).lambda_max,
                  1e-10);
    }
  }
}

TEST(MinimizeWeak, ConvergesToOracleForWeakCorrelations) {
  Rng rng(79);
  const EntropicForm vn = EntropicForm::von_neumann();
  for (int t = 0; t < 4; ++t) {
    const BlochDecomposition base = testkit::random_full_rank_base(2, rng);
    double prev = 0.0;
    for (double eps : {0.1, 0.01}) {
      const BlochDecomposition b = testkit::scaled(base, eps);
      const double weak = minimize_weak_correlation(b, vn).s_min;
      const double exact = minimize_oracle(b, vn).s_min;
      const double rel = std::abs(weak - exact) / (eps * eps);
      if (eps < 0.1) {
        EXPECT_LT(rel, 0.5 * prev + 1e-9);
      }
      prev = rel;
    }
  }
}

TEST(WeakDecrease, AlignedMatchesGeneric) {
  Rng rng(80);
  for (const auto& f : forms()) {
    for (int t = 0; t < 10; ++t) {
      const double r_A = 0.1 + 0.05 * t;
      const BlochDecomposition b = x_state({r_A, 0.2, 0.1, 0.05, -0.1});
      const ProjectiveDirection k(testkit::random_unit(rng));
      const AlignedDecrease a = aligned_axes_decrease(b, f, k);
      EXPECT_NEAR(a.value, weak_entropy_decrease(b, k, f), 1e-12) << f.name();
      EXPECT_TRUE(a.parallel);
    }
  }
}

TEST(WeakDecrease, AlignedRejectsGenericStates) {
  Rng rng(81);
  const BlochDecomposition b = testkit::random_state(2, rng);
  EXPECT_THROW(aligned_axes_decrease(b, EntropicForm::von_neumann(),
                                     ProjectiveDirection(Vec3::UnitZ())),
               ValidationError);
}

TEST(WeakDecrease, XStateLambdaValue) {
  const BlochDecomposition b = x_state({0.25, 0.25, 0.1, 0.1, -0.25});
  const EntropicForm vn = EntropicForm::von_neumann();
  const OptimizationResult w = minimize_weak_correlation(b, vn);
  EXPECT_NEAR(w.lambda_max, 0.08014972449383129, 1e-12);
  EXPECT_LT(angle_between(w.k_opt, Vec3::UnitZ()), 1e-12);
  const AlignedDecrease a = aligned_axes_decrease(b, vn, ProjectiveDirection(Vec3::UnitZ()));
  EXPECT_EQ(a.max_axis, 2);
  EXPECT_NEAR(a.max_value, w.lambda_max, 1e-12);
}

TEST(WeakDecrease, SwitchesAxisAtTransitionRatio) {
  // J_x = J_y X states with r_A = 0.5, r_B = 0.25: z wins while
  // C_x^2 / C_z^2 < eta(0.5) / (1 - r_B^2) = 1.2945624556470576
  const EntropicForm vn = EntropicForm::von_neumann();
  const double ratio = 1.2945624556470576;
  const double c_z = 0.2;
  for (double factor : {0.98, 1.02}) {
    const double c_x = c_z * std::sqrt(ratio * factor);
    BlochDecomposition b = BlochDecomposition::zero(2);
    b.r_A(2) = 0.5;
    b.r_B(2) = 0.25;
    b.C = Vec3(c_x, c_x, c_z).asDiagonal();
    const AlignedDecrease a = aligned_axes_decrease(b, vn, ProjectiveDirection(Vec3::UnitZ()));
    EXPECT_EQ(a.max_axis, factor < 1.0 ? 2 : 0);
  }
}

TEST(Oracle, VonNeumannOnBell) {
  BlochDecomposition b = BlochDecomposition::zero(2);
  b.C = Vec3(1.0, -1.0, 1.0).asDiagonal();
  const OptimizationResult r = minimize_oracle(b, EntropicForm::von_neumann());
  EXPECT_NEAR(r.s_min, 0.0, 1e-10);
  EXPECT_NEAR(r.lambda_max, 1.0, 1e-10);
}

TEST(Oracle, DeterministicAndCanonical) {
  Rng rng(82);
  const BlochDecomposition b = testkit::random_state(2, rng);
  const OptimizationResult a = minimize_oracle(b, EntropicForm::von_neumann());
  const OptimizationResult c = minimize_oracle(b, EntropicForm::von_neumann());
  EXPECT_EQ(a.k_opt, c.k_opt);
  EXPECT_EQ(a.s_min, c.s_min);
  Eigen::Index idx;
  a.k_opt.cwiseAbs().maxCoeff(&idx);
  EXPECT_GT(a.k_opt(idx), 0.0);
}

TEST(Oracle, BeatsEveryGridDirection) {
  Rng rng(83);
  const EntropicForm vn = EntropicForm::von_neumann();
  for (int t = 0; t < 5; ++t) {
    const BlochDecomposition b = testkit::random_state(t % 2 ? 3 : 2, rng);
    const OptimizationResult r = minimize_oracle(b, vn, {.grid_n = 400});
    for (int j = 0; j < 200; ++j) {
      const ProjectiveDirection k(testkit::random_unit(rng));
      EXPECT_LE(r.s_min, conditional_entropy(b, k, vn) + 1e-12);
    }
  }
}

TEST(MethodNames, Strings) {
  EXPECT_EQ(to_string(Method::ExactQuadratic), "exact_quadratic");
  EXPECT_EQ(to_string(Method::WeakCorrelation), "weak_correlation");
  EXPECT_EQ(to_string(Method::Oracle), "oracle");
}
