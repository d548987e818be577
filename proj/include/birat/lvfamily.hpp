#pragma once

#include "birat/ratpoly.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <array>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace birat {

/// Coefficient slots of the discrete Lotka-Volterra family
///
///   (xt - x)/h =  a x + (1-a) xt - (b x y + c xt yt + d x yt + e xt y)
///   (yt - y)/h = -A y - (1-A) yt + (B x y + C xt yt + D x yt + E xt y)
///
/// in the order of the 10-entry list {a,b,c,d,e,A,B,C,D,E}.
enum class Coef : int { a, b, c, d, e, A, B, C, D, E };

inline constexpr std::array<std::string_view, 10> kCoefNames{"a", "b", "c", "d", "e",
                                                             "A", "B", "C", "D", "E"};

/// Floating view of an LVParams, with the derived a_hat = 1 - a and A_hat = 1 - A.
struct LVNumeric {
  double a, b, c, d, e, A, B, C, D, E;
  double a_hat, A_hat;
};

/// Exact parameter set. Construction enforces b+c+d+e = 1 and B+C+D+E = 1.
class LVParams {
 public:
  explicit LVParams(std::array<BigRational, 10> values);

  /// Parses ten exact literals ("1/2", "-0.5", "2").
  static LVParams parse(std::span<const std::string> entries);
  /// Parses "{1/2,0,0,1/2,...}" or "1/2,0,..." (braces and whitespace optional).
  static LVParams parse(std::string_view list);

  const BigRational& operator[](Coef c) const { return values_[static_cast<int>(c)]; }
  const std::array<BigRational, 10>& values() const { return values_; }
  BigRational a_hat() const { return 1 - values_[0]; }
  BigRational A_hat() const { return 1 - values_[5]; }
  const LVNumeric& numeric() const { return numeric_; }

  /// "{1/2,0,0,1/2,1/2,1/2,0,0,1/2,1/2}"
  std::string to_string() const;

  friend bool operator==(const LVParams& l, const LVParams& r) { return l.values_ == r.values_; }

 private:
  std::array<BigRational, 10> values_;
  LVNumeric numeric_{};
};

enum class CaseLabel { i, ii, iii, iv, v, vi, vii };
enum class SymplecticLabel { I, II, III };

inline constexpr std::array<CaseLabel, 7> kAllCases{CaseLabel::i,  CaseLabel::ii, CaseLabel::iii,
                                                    CaseLabel::iv, CaseLabel::v,  CaseLabel::vi,
                                                    CaseLabel::vii};
inline constexpr std::array<SymplecticLabel, 3> kAllSymplecticCases{
    SymplecticLabel::I, SymplecticLabel::II, SymplecticLabel::III};

std::string_view to_string(CaseLabel c);
std::string_view to_string(SymplecticLabel c);

/// Every birational case template the parameters satisfy (possibly several, possibly none).
std::vector<CaseLabel> classify_birational(const LVParams& p);
/// Every symplectic case template the parameters satisfy.
std::vector<SymplecticLabel> classify_symplectic(const LVParams& p);
/// dE - De = cC = dC = cE = bB = bD = eB = 0.
bool check_sympcon(const LVParams& p);

/// Parameters of the inverse scheme (to be used with step -h):
/// a -> 1-a, A -> 1-A, b <-> c, B <-> C, d <-> e, D <-> E.
LVParams invert_params(const LVParams& p);

/// Label paired with c under inversion: i<->i, ii<->iii, iv<->v, vi<->vii.
CaseLabel inverse_case(CaseLabel c);

inline constexpr double kDefaultLeadTol = 1e-9;

/// One step of the scheme, solved by elimination: the two bilinear equations are
/// reduced to a quadratic in one unknown whose leading coefficient must vanish
/// (relative to tol). Eliminates xt first, then yt if that fails.
Eigen::Vector2d lv_step(const LVParams& p, double x, double y, double h,
                        double tol = kDefaultLeadTol);

/// lv_step(invert_params(p), xt, yt, -h, tol).
Eigen::Vector2d lv_inverse_step(const LVParams& p, double xt, double yt, double h,
                                double tol = kDefaultLeadTol);

/// Jacobian d(xt, yt)/d(x, y) of one step, by implicit differentiation of the
/// defining equations at the computed step pair.
Eigen::Matrix2d lv_step_jacobian(const LVParams& p, double x, double y, double h,
                                 double tol = kDefaultLeadTol);

/// det(phi') - xt yt / (x y); zero for maps preserving dx^dy/(xy).
double symplectic_residual(const LVParams& p, double x, double y, double h,
                           double tol = kDefaultLeadTol);

/// log(xy) - x - y; throws DomainError outside the open positive quadrant.
double lv_hamiltonian(double x, double y);

enum class CertificateVerdict { Birational, NotCertified };
std::string_view to_string(CertificateVerdict v);

/// Quadratic q2 v^2 + q1 v + q0 obtained by eliminating one unknown, with its discriminant.
struct EliminationEvidence {
  MultiPoly lead;
  MultiPoly linear;
  MultiPoly constant;
  MultiPoly discriminant;
  std::optional<MultiPoly> discriminant_root;
  bool rational = false;
};

/// Exact elimination in both directions with symbolic x, y, h.
///
/// forward: eliminates xt, giving p2 yt^2 + p1 yt + p0 with p_j in (x, y, h).
/// inverse: eliminates x, giving pt2 y^2 + pt1 y + pt0 with pt_j in (xt, yt, h);
///          stored with xt, yt in the x, y slots of MultiPoly.
struct SymbolicCertificate {
  EliminationEvidence forward;
  EliminationEvidence inverse;
  CertificateVerdict verdict = CertificateVerdict::NotCertified;

  const MultiPoly& p2() const { return forward.lead; }
  const MultiPoly& p2_tilde() const { return inverse.lead; }
  const MultiPoly& delta() const { return forward.discriminant; }
  const MultiPoly& delta_tilde() const { return inverse.discriminant; }
};

SymbolicCertificate symbolic_certificate(const LVParams& p);

inline constexpr MultiPoly::VarNames kInverseVarNames{"xt", "yt", "h"};

struct ClassificationReport {
  std::vector<CaseLabel> birational_cases;
  std::vector<SymplecticLabel> symplectic_cases;
  bool sympcon_satisfied = false;
  std::optional<SymbolicCertificate> certificate;
};

ClassificationReport classify(const LVParams& p, bool certify);
nlohmann::json to_json(const ClassificationReport& r, const LVParams& p);

// Sampling helpers used by the verification suites.

/// Random rational with numerator in [-max_num, max_num] and denominator in [1, max_den].
BigRational random_rational(std::mt19937_64& rng, int max_num = 4, int max_den = 4);
/// Random member of the given birational case with random rational free parameters.
LVParams random_case_representative(CaseLabel c, std::mt19937_64& rng);
/// Random member of the given symplectic case.
LVParams random_symplectic_representative(SymplecticLabel c, std::mt19937_64& rng);
/// Random constraint-satisfying set that matches none of the seven birational cases.
LVParams random_non_case_params(std::mt19937_64& rng);

/// Named parameter sets used throughout the examples.
namespace presets {
LVParams kahan();
LVParams mickens();
/// Case (vi) set with closed-looking orbits.
LVParams periodic_vi();
/// Case (iv) sets {1/2, 3/2, 0, d, -d-1/2, 1/2, 0, 0, 0, 1}.
LVParams decay_iv(const BigRational& d);
}  // namespace presets

}  // namespace birat
