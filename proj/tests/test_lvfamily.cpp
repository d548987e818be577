#include "birat/errors.hpp"
#include "birat/kahan.hpp"
#include "birat/lvfamily.hpp"
#include "birat/models.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

using namespace birat;

namespace {

bool has(const std::vector<CaseLabel>& v, CaseLabel c) {
  return std::find(v.begin(), v.end(), c) != v.end();
}

// The two defining equations, written out directly.
Eigen::Vector2d residual(const LVParams& p, double x, double y, double xt, double yt, double h) {
  const auto& n = p.numeric();
  const double e1 = xt - x - h * (n.a * x + n.a_hat * xt) +
                    h * (n.b * x * y + n.c * xt * yt + n.d * x * yt + n.e * xt * y);
  const double e2 = yt - y + h * (n.A * y + n.A_hat * yt) -
                    h * (n.B * x * y + n.C * xt * yt + n.D * x * yt + n.E * xt * y);
  return {e1, e2};
}

LVParams random_constrained(std::mt19937_64& rng) {
  std::array<BigRational, 10> v;
  for (auto& q : v) q = random_rational(rng);
  v[4] = 1 - v[1] - v[2] - v[3];
  v[9] = 1 - v[6] - v[7] - v[8];
  return LVParams(v);
}

const MultiPoly X = MultiPoly::var(MultiPoly::X);
const MultiPoly H = MultiPoly::var(MultiPoly::H);

}  // namespace

TEST(LVParams, ParsesAndPrints) {
  const auto p = LVParams::parse("{1/2, 0, 3/2, -1/2, 0, 1/2, 4/5, 0, 1/5, 0}");
  EXPECT_EQ(p, presets::periodic_vi());
  EXPECT_EQ(p.to_string(), "{1/2,0,3/2,-1/2,0,1/2,4/5,0,1/5,0}");
  EXPECT_EQ(p.a_hat(), BigRational(1, 2));
  EXPECT_DOUBLE_EQ(p.numeric().B, 0.8);
}

TEST(LVParams, ConstraintViolationNamesSum) {
  try {
    LVParams::parse("1/4,1/4,1/4,1/4,0,1/4,1/4,1/4,1/4,0");
    FAIL();
  } catch (const ConstraintViolation& ex) {
    EXPECT_NE(std::string(ex.what()).find("b+c+d+e"), std::string::npos);
  }
  try {
    LVParams::parse("0,1,0,0,0,0,1,1,0,0");
    FAIL();
  } catch (const ConstraintViolation& ex) {
    EXPECT_NE(std::string(ex.what()).find("B+C+D+E"), std::string::npos);
  }
  EXPECT_THROW(LVParams::parse("1,2,3"), ParseError);
  EXPECT_THROW(LVParams::parse("1/0,0,0,0,1,0,0,-1,0,2"), ParseError);
}

TEST(Classify, MickensSet) {
  const auto p = presets::mickens();
  const auto cases = classify_birational(p);
  EXPECT_EQ(cases, (std::vector<CaseLabel>{CaseLabel::iii, CaseLabel::vii}));
  EXPECT_EQ(classify_symplectic(p), std::vector<SymplecticLabel>{SymplecticLabel::I});
  EXPECT_TRUE(check_sympcon(p));
}

TEST(Classify, PresetSets) {
  EXPECT_TRUE(has(classify_birational(presets::periodic_vi()), CaseLabel::vi));
  EXPECT_EQ(classify_symplectic(presets::periodic_vi()),
            std::vector<SymplecticLabel>{SymplecticLabel::III});
  for (int d : {0, 1}) {
    EXPECT_TRUE(has(classify_birational(presets::decay_iv(d)), CaseLabel::iv));
  }
  EXPECT_TRUE(check_sympcon(presets::decay_iv(0)));
  EXPECT_FALSE(check_sympcon(presets::decay_iv(1)));
  EXPECT_FALSE(classify_birational(presets::kahan()).empty());
}

TEST(Classify, RepresentativesLandInTheirCase) {
  std::mt19937_64 rng(1);
  for (CaseLabel c : kAllCases) {
    for (int t = 0; t < 10; ++t) {
      const auto p = random_case_representative(c, rng);
      EXPECT_TRUE(has(classify_birational(p), c)) << to_string(c) << " " << p.to_string();
    }
  }
  for (SymplecticLabel c : kAllSymplecticCases) {
    const auto p = random_symplectic_representative(c, rng);
    const auto got = classify_symplectic(p);
    EXPECT_NE(std::find(got.begin(), got.end(), c), got.end());
  }
}

TEST(Classify, InversionPairsCases) {
  std::mt19937_64 rng(2);
  for (CaseLabel c : kAllCases) {
    const auto p = random_case_representative(c, rng);
    EXPECT_EQ(invert_params(invert_params(p)), p);
    EXPECT_TRUE(has(classify_birational(invert_params(p)), inverse_case(c))) << to_string(c);
    EXPECT_EQ(inverse_case(inverse_case(c)), c);
  }
}

TEST(Classify, NonCaseSamplerIsOutsideAllCases) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) EXPECT_TRUE(classify_birational(random_non_case_params(rng)).empty());
}

TEST(LVStep, MickensHandValue) {
  // xt (1 + h + h y) = x (1 + 2h)
  const Eigen::Vector2d s = lv_step(presets::mickens(), 1.0, 0.0, 1.0);
  EXPECT_NEAR(s[0], 1.5, 1e-15);
}

TEST(LVStep, SolvesDefiningEquations) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (CaseLabel c : kAllCases) {
    const auto p = random_case_representative(c, rng);
    for (int t = 0; t < 10; ++t) {
      const double x = u(rng), y = u(rng);
      const Eigen::Vector2d s = lv_step(p, x, y, 0.05);
      EXPECT_LT(residual(p, x, y, s[0], s[1], 0.05).cwiseAbs().maxCoeff(), 1e-13) << to_string(c);
    }
  }
}

TEST(LVStep, RoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.2, 2.0);
  for (CaseLabel c : kAllCases) {
    const auto p = random_case_representative(c, rng);
    for (int t = 0; t < 10; ++t) {
      const Eigen::Vector2d x(u(rng), u(rng));
      const Eigen::Vector2d s = lv_step(p, x[0], x[1], 0.01);
      const Eigen::Vector2d back = lv_inverse_step(p, s[0], s[1], 0.01);
      EXPECT_LT((back - x).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(LVStep, NonBirationalSetIsRejected) {
  std::mt19937_64 rng(6);
  EXPECT_THROW(lv_step(random_non_case_params(rng), 1.0, 1.0, 0.1), NotBirational);
}

TEST(LVStep, JacobianMatchesFiniteDifference) {
  std::mt19937_64 rng(7);
  for (CaseLabel c : kAllCases) {
    const auto p = random_case_representative(c, rng);
    const double x = 0.9, y = 1.3, h = 0.05, d = 1e-6;
    Eigen::Matrix2d fd;
    fd.col(0) = (lv_step(p, x + d, y, h) - lv_step(p, x - d, y, h)) / (2 * d);
    fd.col(1) = (lv_step(p, x, y + d, h) - lv_step(p, x, y - d, h)) / (2 * d);
    EXPECT_LT((lv_step_jacobian(p, x, y, h) - fd).cwiseAbs().maxCoeff(), 1e-7) << to_string(c);
  }
}

TEST(LVStep, SymplecticResidual) {
  EXPECT_LT(std::abs(symplectic_residual(presets::kahan(), 0.7, 1.9, 0.1)), 1e-13);
  EXPECT_GT(std::abs(symplectic_residual(presets::decay_iv(1), 0.7, 1.9, 0.1)), 1e-4);
}

TEST(LVStep, Hamiltonian) {
  EXPECT_NEAR(lv_hamiltonian(1, 1), -2.0, 1e-15);
  EXPECT_THROW(lv_hamiltonian(-1, 1), DomainError);
}

TEST(Certificate, LeadingCoefficientsMatchClosedForms) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 25; ++t) {
    const auto p = random_constrained(rng);
    const auto k = [&p](Coef c) { return MultiPoly(p[c]); };
    const MultiPoly A = k(Coef::A);
    const MultiPoly one(1);
    const MultiPoly p2 = -H * ((k(Coef::c) * k(Coef::D) - k(Coef::d) * k(Coef::C)) * H * X +
                               k(Coef::c) * (A * H - one - H));
    const MultiPoly pt2 =
        H * ((k(Coef::B) * (one - k(Coef::c) - k(Coef::d)) - k(Coef::b) * (one - k(Coef::C) - k(Coef::D))) *
                 H * X +
             k(Coef::b) * (A * H - one));
    const auto cert = symbolic_certificate(p);
    EXPECT_EQ(cert.p2(), p2) << p.to_string();
    EXPECT_EQ(cert.p2_tilde(), pt2) << p.to_string();
    EXPECT_EQ(cert.delta(), cert.forward.linear * cert.forward.linear -
                                MultiPoly(4) * cert.forward.lead * cert.forward.constant);
  }
}

TEST(Certificate, CaseRepresentativesCertified) {
  std::mt19937_64 rng(9);
  for (CaseLabel c : kAllCases) {
    const auto p = random_case_representative(c, rng);
    EXPECT_EQ(symbolic_certificate(p).verdict, CertificateVerdict::Birational) << p.to_string();
  }
}

TEST(Certificate, NonCaseSetsNotCertified) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 10; ++t) {
    const auto p = random_non_case_params(rng);
    EXPECT_EQ(symbolic_certificate(p).verdict, CertificateVerdict::NotCertified) << p.to_string();
  }
}

TEST(Certificate, JsonReport) {
  const auto p = presets::mickens();
  const auto j = to_json(classify(p, true), p);
  EXPECT_EQ(j.at("certificate").at("verdict"), "BIRATIONAL");
  EXPECT_EQ(j.at("symplectic_cases").size(), 1u);
  EXPECT_TRUE(j.at("sympcon_satisfied").get<bool>());
}

TEST(Classify, KahanSet) {
  const auto p = presets::kahan();
  EXPECT_EQ(classify_birational(p), std::vector<CaseLabel>{CaseLabel::i});
  EXPECT_EQ(classify_symplectic(p), std::vector<SymplecticLabel>{SymplecticLabel::II});
  EXPECT_TRUE(check_sympcon(p));
  EXPECT_TRUE(classify_symplectic(presets::decay_iv(1)).empty());
  EXPECT_TRUE(check_sympcon(LVParams::parse("0,0,0,1/2,1/2,0,0,0,1/2,1/2")));
}

TEST(Classify, InversionMapsCaseTwoToThree) {
  std::mt19937_64 rng(12);
  const auto p = random_case_representative(CaseLabel::ii, rng);
  EXPECT_TRUE(has(classify_birational(invert_params(p)), CaseLabel::iii));
  const auto q = random_case_representative(CaseLabel::i, rng);
  EXPECT_TRUE(has(classify_birational(invert_params(q)), CaseLabel::i));
}

TEST(LVStep, KahanSetMatchesGenericKahan) {
  const auto vf = lv_vf();
  const Eigen::Vector2d x(2.0, 0.5);
  const Eigen::Vector2d a = lv_step(presets::kahan(), x[0], x[1], 0.01);
  EXPECT_LT((a - kahan_step(vf, x, {0.01})).cwiseAbs().maxCoeff(), 1e-12);
  const Eigen::Vector2d b = lv_inverse_step(presets::kahan(), x[0], x[1], 0.01);
  EXPECT_LT((b - kahan_inverse_step(vf, x, {0.01})).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LVStep, FixedPoint) {
  std::mt19937_64 rng(13);
  for (CaseLabel c : kAllCases) {
    const Eigen::Vector2d s = lv_step(random_case_representative(c, rng), 1.0, 1.0, 0.1);
    EXPECT_LT((s - Eigen::Vector2d(1, 1)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(LVStep, MickensSecondHandValue) {
  const Eigen::Vector2d s = lv_step(presets::mickens(), 1.5, 1.0, 0.1);
  EXPECT_NEAR(s[0], 1.5, 1e-15);
  // (yt - y)/h = -yt + (-xt yt + 2 xt y)  with A = 0, C = -1, E = 2
  EXPECT_NEAR((s[1] - 1.0) / 0.1, -s[1] - s[0] * s[1] + 2 * s[0] * 1.0, 1e-13);
}

TEST(Certificate, KahanLeadingCoefficientsVanish) {
  const auto cert = symbolic_certificate(presets::kahan());
  EXPECT_TRUE(cert.p2().is_zero());
  EXPECT_TRUE(cert.p2_tilde().is_zero());
  EXPECT_EQ(cert.verdict, CertificateVerdict::Birational);
  EXPECT_TRUE(is_perfect_square(cert.delta()));
}

TEST(Certificate, CaseFourCertifiedBySquareDiscriminant) {
  const auto cert = symbolic_certificate(presets::decay_iv(1));
  EXPECT_FALSE(cert.p2_tilde().is_zero());
  ASSERT_TRUE(cert.inverse.discriminant_root);
  EXPECT_EQ(*cert.inverse.discriminant_root * *cert.inverse.discriminant_root, cert.delta_tilde());
  EXPECT_EQ(cert.verdict, CertificateVerdict::Birational);
}

TEST(Certificate, QuarterSetNotCertified) {
  EXPECT_EQ(symbolic_certificate(LVParams::parse("1/2,1/4,1/4,1/4,1/4,1/2,1/4,1/4,1/4,1/4")).verdict,
            CertificateVerdict::NotCertified);
}

TEST(LVStep, HamiltonianIsFirstIntegralOfField) {
  // dH/dt = (1/x - 1) x (1 - y) + (1/y - 1) y (x - 1)
  for (double x : {0.3, 1.7}) {
    for (double y : {0.5, 2.2}) {
      const double dH = (1 / x - 1) * x * (1 - y) + (1 / y - 1) * y * (x - 1);
      EXPECT_NEAR(dH, 0.0, 1e-12);
      EXPECT_DOUBLE_EQ(lv_hamiltonian(x, y), lv_hamiltonian(y, x));
    }
  }
}
