#include "birat/errors.hpp"
#include "birat/kahan.hpp"
#include "birat/models.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace birat;

TEST(Models, NondimensionalizeStandardValues) {
  const auto s = nondimensionalize(EnzymeParams{2.0, 1.0, 0.2, 1.0, 0.01});
  EXPECT_DOUBLE_EQ(s.params.mu, 0.5);
  EXPECT_DOUBLE_EQ(s.params.nu, 0.6);
  EXPECT_DOUBLE_EQ(s.params.eps, 0.01);
  EXPECT_DOUBLE_EQ(s.time_scale, 0.02);
}

TEST(Models, DimensionlessFieldIsRescaledEnzymeField) {
  const EnzymeParams p{2.0, 1.0, 0.2, 1.5, 0.03};
  const auto s = nondimensionalize(p);
  const auto full = enzyme_vf(p);
  const auto diml = enzyme_diml_vf(s.params);
  const Eigen::Vector3d u(0.4, 0.3, 0.1);  // x, y, z
  // s = s0 x, c = e0 y, e = e0 - c, p = s0 z
  const Eigen::Vector4d state(p.s0 * u[0], p.e0 * (1 - u[1]), p.e0 * u[1], p.s0 * u[2]);
  const Eigen::VectorXd f = full.evaluate(state) / s.time_scale;
  const Eigen::VectorXd g = diml.evaluate(u);
  EXPECT_NEAR(f[0] / p.s0, g[0], 1e-12);
  EXPECT_NEAR(f[2] / p.e0, g[1], 1e-10);
  EXPECT_NEAR(f[3] / p.s0, g[2], 1e-12);
}

TEST(Models, ReducedFieldIsLeadingBlock) {
  const DimensionlessEnzymeParams p;
  const auto full = enzyme_diml_vf(p);
  const auto red = enzyme_reduced_vf(p);
  const Eigen::Vector2d xy(0.7, 0.2);
  EXPECT_NEAR((red.evaluate(xy) - full.evaluate(Eigen::Vector3d(0.7, 0.2, 5.0)).head(2)).norm(), 0, 1e-13);
}

TEST(Models, ParameterValidation) {
  EXPECT_THROW(enzyme_vf(EnzymeParams{1, 1, 1, 1, 0}), InvalidArgument);
  EXPECT_THROW(enzyme_diml_vf({0.6, 0.5, 0.01}), InvalidArgument);
  EXPECT_THROW(michaelis_menten(-0.6, 0.6), PoleError);
  EXPECT_NEAR(michaelis_menten(1.0, 0.6), 0.625, 1e-15);
}

TEST(Models, StepWarning) {
  EXPECT_FALSE(enzyme_step_warning({}, 1e-3));
  EXPECT_TRUE(enzyme_step_warning({}, 0.1));
}

TEST(Models, ProductAccumulateIsTrapezoid) {
  const DimensionlessEnzymeParams p;
  const std::vector<double> y{1.0, 1.0, 1.0};
  const auto z = product_accumulate(y, 0.5, p);
  ASSERT_EQ(z.size(), 3u);
  EXPECT_NEAR(z[2], (p.nu - p.mu) * 1.0, 1e-15);
}

TEST(Models, ProductAccumulateMatchesKahanZ) {
  const DimensionlessEnzymeParams p;
  const auto vf = enzyme_diml_vf(p);
  StateVector x = Eigen::Vector3d(1, 0, 0);
  std::vector<double> ys{0.0};
  for (int k = 0; k < 200; ++k) {
    x = kahan_step(vf, x, {1e-3});
    ys.push_back(x[1]);
  }
  EXPECT_NEAR(product_accumulate(ys, 1e-3, p).back(), x[2], 1e-14);
}

TEST(Schnakenberg, SteadyStateIsFixedPoint) {
  const SchnakenbergParams p{0.1, 0.5};
  const Eigen::Vector2d s = schnakenberg_steady_state(p);
  EXPECT_LT(schnakenberg_field(p, s[0], s[1]).norm(), 1e-15);
  EXPECT_LT((schnakenberg_step(p, s[0], s[1], 0.1) - s).norm(), 1e-15);
}

TEST(Schnakenberg, StepSolvesItsScheme) {
  // (yt - y)/h = b - x^2 yt ; (xt - x)/h = a - (x + xt)/2 + x xt yt
  const SchnakenbergParams p{0.2, 0.7};
  const double x = 0.8, y = 1.1, h = 0.05;
  const Eigen::Vector2d s = schnakenberg_step(p, x, y, h);
  EXPECT_NEAR((s[1] - y) / h, p.b - x * x * s[1], 1e-13);
  EXPECT_NEAR((s[0] - x) / h, p.a - 0.5 * (x + s[0]) + x * s[0] * s[1], 1e-13);
  const Eigen::Vector2d back = schnakenberg_inverse_step(p, s[0], s[1], h);
  EXPECT_NEAR(back[0], x, 1e-14);
  EXPECT_NEAR(back[1], y, 1e-14);
}

TEST(Schnakenberg, TraceMatchesFieldJacobian) {
  const SchnakenbergParams p{0.1, 0.5};
  const Eigen::Vector2d s = schnakenberg_steady_state(p);
  const double d = 1e-6;
  const double dfx = (schnakenberg_field(p, s[0] + d, s[1])[0] - schnakenberg_field(p, s[0] - d, s[1])[0]) / (2 * d);
  const double dgy = (schnakenberg_field(p, s[0], s[1] + d)[1] - schnakenberg_field(p, s[0], s[1] - d)[1]) / (2 * d);
  EXPECT_NEAR(schnakenberg_trace(p), dfx + dgy, 1e-8);
}

TEST(Schnakenberg, HopfBoundary) {
  const auto roots = schnakenberg_hopf_b(0.1);
  ASSERT_EQ(roots.size(), 2u);
  for (double b : roots) EXPECT_NEAR(schnakenberg_trace({0.1, b}), 0.0, 1e-12);
  EXPECT_NEAR(roots[0], 0.10915, 1e-4);
  EXPECT_NEAR(roots[1], 0.77889, 1e-4);
  EXPECT_GT(schnakenberg_trace({0.1, 0.5 * (roots[0] + roots[1])}), 0.0);
  EXPECT_THROW(schnakenberg_hopf_b(0.0), InvalidArgument);
}

TEST(Models, StateNames) {
  EXPECT_EQ(model_state_names("enzyme4"), (std::vector<std::string>{"s", "e", "c", "p"}));
  EXPECT_THROW(model_state_names("nope"), InvalidArgument);
}

TEST(Schnakenberg, HandValueAtOrigin) {
  const double a = 0.3, h = 0.2;
  const Eigen::Vector2d s = schnakenberg_step({a, 0.0}, 0.0, 0.0, h);
  EXPECT_EQ(s[1], 0.0);
  EXPECT_NEAR(s[0], h * a / (1 + h / 2), 1e-16);
}

TEST(Schnakenberg, ConsistentWithField) {
  const SchnakenbergParams p{0.1, 0.5};
  const double x = 0.8, y = 1.2;
  for (double h : {1e-3, 1e-4}) {
    const Eigen::Vector2d s = schnakenberg_step(p, x, y, h);
    const Eigen::Vector2d approx = Eigen::Vector2d(x, y) + h * schnakenberg_field(p, x, y);
    EXPECT_LT((s - approx).cwiseAbs().maxCoeff(), 10 * h * h);
  }
}

TEST(Models, EnzymeRatesAndScaling) {
  const auto vf = enzyme_vf(EnzymeParams{1.0, 0.5, 0.5, 1.0, 1.0});
  EXPECT_LT((vf.evaluate(Eigen::Vector4d(1, 1, 0, 0)) - Eigen::Vector4d(-1, -1, 1, 0)).norm(), 1e-15);
  EXPECT_LT(vf.evaluate(Eigen::Vector4d(0, 1, 0, 0.3)).norm(), 1e-15);
  const auto a = nondimensionalize(EnzymeParams{1.0, 0.5, 0.1, 1.0, 1e-2});
  const auto b = nondimensionalize(EnzymeParams{3.0, 1.5, 0.3, 1.0, 1e-2});
  EXPECT_DOUBLE_EQ(a.params.mu, 0.5);
  EXPECT_DOUBLE_EQ(a.params.nu, 0.6);
  EXPECT_NEAR(a.params.mu, b.params.mu, 1e-15);
  EXPECT_NEAR(a.params.nu, b.params.nu, 1e-15);
  EXPECT_DOUBLE_EQ(a.params.eps, b.params.eps);
}

TEST(Models, LVFieldSteadyStates) {
  const auto vf = lv_vf();
  EXPECT_LT(vf.evaluate(Eigen::Vector2d(1, 1)).norm(), 1e-15);
  EXPECT_LT(vf.evaluate(Eigen::Vector2d(0, 0)).norm(), 1e-15);
  Eigen::Matrix2d j;
  j << 0, -1, 1, 0;
  EXPECT_LT((vf.jacobian(Eigen::Vector2d(1, 1)) - j).norm(), 1e-15);
}
