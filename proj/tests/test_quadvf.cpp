#include "birat/errors.hpp"
#include "birat/models.hpp"
#include "birat/quadvf.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace birat;

namespace {

// f = (1 + 2x - y + 3xy, -x^2 + 4 y^2)
QuadraticVectorField sample_field() {
  Eigen::Vector2d c0(1.0, 0.0);
  Eigen::Matrix2d lin;
  lin << 2.0, -1.0, 0.0, 0.0;
  const std::vector<QuadEntry> q{{0, 0, 1, 3.0}, {1, 0, 0, -1.0}, {1, 1, 1, 4.0}};
  return QuadraticVectorField(c0, lin, q);
}

Eigen::Vector2d sample_exact(double x, double y) {
  return {1 + 2 * x - y + 3 * x * y, -x * x + 4 * y * y};
}

Eigen::MatrixXd central_difference(const QuadraticVectorField& vf, const StateVector& x) {
  const double d = 1e-6;
  Eigen::MatrixXd out(vf.dim(), vf.dim());
  for (int m = 0; m < vf.dim(); ++m) {
    StateVector p = x, q = x;
    p[m] += d;
    q[m] -= d;
    out.col(m) = (vf.evaluate(p) - vf.evaluate(q)) / (2 * d);
  }
  return out;
}

}  // namespace

TEST(QuadVF, EvaluateMatchesHandExpansion) {
  const auto vf = sample_field();
  for (double x : {-1.5, 0.0, 0.7}) {
    for (double y : {-0.3, 2.0}) {
      EXPECT_NEAR((vf.evaluate(Eigen::Vector2d(x, y)) - sample_exact(x, y)).norm(), 0.0, 1e-13);
    }
  }
}

TEST(QuadVF, TensorIsSymmetric) {
  const auto vf = sample_field();
  EXPECT_DOUBLE_EQ(vf.quad(0, 0, 1), 1.5);
  EXPECT_DOUBLE_EQ(vf.quad(0, 1, 0), 1.5);
  EXPECT_DOUBLE_EQ(vf.quad(1, 1, 1), 4.0);
}

TEST(QuadVF, SplitEntriesAccumulate) {
  // 3xy given as 1*x*y + 2*y*x
  const std::vector<QuadEntry> q{{0, 0, 1, 1.0}, {0, 1, 0, 2.0}};
  QuadraticVectorField vf(Eigen::Vector2d::Zero(), Eigen::Matrix2d::Zero(), q);
  EXPECT_NEAR(vf.evaluate(Eigen::Vector2d(2, 5))[0], 30.0, 1e-13);
}

TEST(QuadVF, JacobianMatchesCentralDifferences) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  const auto vf = enzyme_vf(EnzymeParams{1.3, 0.4, 0.2, 1.0, 0.05});
  for (int t = 0; t < 20; ++t) {
    StateVector x(4);
    for (int i = 0; i < 4; ++i) x[i] = u(rng);
    EXPECT_LT((vf.jacobian(x) - central_difference(vf, x)).cwiseAbs().maxCoeff(), 1e-7);
  }
}

TEST(QuadVF, PolarizationOnDiagonalIsField) {
  const auto vf = sample_field();
  const Eigen::Vector2d x(0.3, -1.1);
  EXPECT_NEAR((vf.polarized_rhs(x, x) - vf.evaluate(x)).norm(), 0.0, 1e-14);
}

TEST(QuadVF, PolarizationIsSymmetricAndBilinear) {
  const auto vf = sample_field();
  const Eigen::Vector2d a(0.3, -1.1), b(2.0, 0.4);
  EXPECT_NEAR((vf.polarized_rhs(a, b) - vf.polarized_rhs(b, a)).norm(), 0.0, 1e-14);
  // f((a+b)/2) = (Q(a,a) + 2Q(a,b) + Q(b,b))/4
  const Eigen::Vector2d mid = 0.5 * (a + b);
  const Eigen::Vector2d rhs = 0.25 * (vf.evaluate(a) + 2 * vf.polarized_rhs(a, b) + vf.evaluate(b));
  EXPECT_NEAR((vf.evaluate(mid) - rhs).norm(), 0.0, 1e-13);
}

TEST(QuadVF, LinearFirstIntegrals) {
  const EnzymeParams p{1.0, 0.5, 0.1, 1.0, 0.01};
  const auto vf = enzyme_vf(p);
  EXPECT_TRUE(vf.annihilated_by(Eigen::Vector4d(0, 1, 1, 0)));
  EXPECT_TRUE(vf.annihilated_by(Eigen::Vector4d(1, 0, 1, 1)));
  EXPECT_FALSE(vf.annihilated_by(Eigen::Vector4d(1, 0, 0, 0)));
  const auto diml = enzyme_diml_vf({});
  EXPECT_TRUE(diml.annihilated_by(Eigen::Vector3d(1, 1e-2, 1)));
}

TEST(QuadVF, DimensionlessFieldAtInitialState) {
  const auto vf = enzyme_diml_vf({0.5, 0.6, 1e-2});
  const StateVector f = vf.evaluate(Eigen::Vector3d(1, 0, 0));
  EXPECT_NEAR(f[0], -1.0, 1e-14);
  EXPECT_NEAR(f[1], 100.0, 1e-12);
  EXPECT_NEAR(f[2], 0.0, 1e-14);
}

TEST(QuadVF, EnzymeFieldHandValue) {
  // s=e=1, c=p=0, k1=1: ds=-1, de=-1, dc=1, dp=0
  const auto vf = enzyme_vf(EnzymeParams{1.0, 0.5, 0.1, 1.0, 1.0});
  const StateVector f = vf.evaluate(Eigen::Vector4d(1, 1, 0, 0));
  EXPECT_NEAR((f - Eigen::Vector4d(-1, -1, 1, 0)).norm(), 0.0, 1e-14);
}

TEST(QuadVF, SparseStorageAgreesWithDense) {
  const int n = 40;
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> idx(0, n - 1);
  std::vector<QuadEntry> q;
  for (int t = 0; t < 120; ++t) q.push_back({idx(rng), idx(rng), idx(rng), u(rng)});
  Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) lin(i, (i + 1) % n) = u(rng);
  QuadraticVectorField vf(Eigen::VectorXd::Zero(n), lin, q);
  ASSERT_TRUE(vf.is_sparse());
  StateVector x(n);
  for (int i = 0; i < n; ++i) x[i] = u(rng);
  StateVector expect = lin * x;
  for (const auto& e : q) expect[e.i] += e.value * x[e.j] * x[e.k];
  EXPECT_LT((vf.evaluate(x) - expect).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((Eigen::MatrixXd(vf.jacobian_sparse(x)) - vf.jacobian(x)).cwiseAbs().maxCoeff(), 1e-13);
  EXPECT_LT((vf.jacobian(x) - central_difference(vf, x)).cwiseAbs().maxCoeff(), 1e-6);
}

TEST(QuadVF, JsonRoundTrip) {
  const auto vf = enzyme_vf(EnzymeParams{1.0, 0.5, 0.1, 1.0, 0.01});
  const auto back = vector_field_from_json(to_json(vf));
  const Eigen::Vector4d x(0.3, 0.2, 0.1, 0.7);
  EXPECT_NEAR((back.evaluate(x) - vf.evaluate(x)).norm(), 0.0, 1e-15);
}

TEST(QuadVF, RejectsMismatchedShapes) {
  EXPECT_THROW(QuadraticVectorField(Eigen::Vector2d::Zero(), Eigen::Matrix3d::Zero(), {}),
               DimensionMismatch);
  const std::vector<QuadEntry> bad{{0, 5, 0, 1.0}};
  EXPECT_THROW(QuadraticVectorField(Eigen::Vector2d::Zero(), Eigen::Matrix2d::Zero(), bad),
               Error);
  const auto vf = sample_field();
  EXPECT_THROW(vf.evaluate(Eigen::Vector3d::Zero()), DimensionMismatch);
}
