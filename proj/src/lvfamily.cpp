#include "birat/lvfamily.hpp"

#include "birat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace birat {

using enum Coef;

// ---------------------------------------------------------------------------
// Parameters

LVParams::LVParams(std::array<BigRational, 10> values) : values_(std::move(values)) {
  const BigRational lower = values_[1] + values_[2] + values_[3] + values_[4];
  const BigRational upper = values_[6] + values_[7] + values_[8] + values_[9];
  if (lower != 1) {
    throw ConstraintViolation("b+c+d+e = " + birat::to_string(lower) + ", must equal 1");
  }
  if (upper != 1) {
    throw ConstraintViolation("B+C+D+E = " + birat::to_string(upper) + ", must equal 1");
  }
  const auto num = [this](Coef k) { return (*this)[k].get_d(); };
  numeric_ = LVNumeric{num(a), num(b), num(c), num(d), num(e), num(A), num(B), num(C), num(D),
                       num(E), a_hat().get_d(), A_hat().get_d()};
}

LVParams LVParams::parse(std::span<const std::string> entries) {
  if (entries.size() != 10) {
    throw ParseError("expected 10 parameters {a,b,c,d,e,A,B,C,D,E}, got " +
                     std::to_string(entries.size()));
  }
  std::array<BigRational, 10> v;
  for (std::size_t i = 0; i < 10; ++i) v[i] = parse_rational(entries[i]);
  return LVParams(std::move(v));
}

LVParams LVParams::parse(std::string_view list) {
  std::string s(list);
  std::erase_if(s, [](char c) { return c == '{' || c == '}' || c == '[' || c == ']'; });
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) parts.push_back(item);
  return parse(parts);
}

std::string LVParams::to_string() const {
  std::string out = "{";
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ",";
    out += birat::to_string(values_[i]);
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// Classification

std::string_view to_string(CaseLabel c) {
  static constexpr std::array<std::string_view, 7> names{"i", "ii", "iii", "iv", "v", "vi", "vii"};
  return names[static_cast<int>(c)];
}

std::string_view to_string(SymplecticLabel c) {
  static constexpr std::array<std::string_view, 3> names{"I", "II", "III"};
  return names[static_cast<int>(c)];
}

std::string_view to_string(CertificateVerdict v) {
  return v == CertificateVerdict::Birational ? "BIRATIONAL" : "NOT_CERTIFIED";
}

namespace {

bool zero(const LVParams& p, std::initializer_list<Coef> cs) {
  return std::all_of(cs.begin(), cs.end(), [&](Coef c) { return sgn(p[c]) == 0; });
}

bool sums_to_one(const LVParams& p, std::initializer_list<Coef> cs) {
  BigRational s = 0;
  for (Coef c : cs) s += p[c];
  return s == 1;
}

bool matches(const LVParams& p, CaseLabel label) {
  switch (label) {
    case CaseLabel::i:
      return zero(p, {b, c, B, C}) && sums_to_one(p, {d, e}) && sums_to_one(p, {D, E});
    case CaseLabel::ii:
      return zero(p, {b, c, e, C}) && p[d] == 1 && sums_to_one(p, {B, D, E});
    case CaseLabel::iii:
      return zero(p, {b, c, d, B}) && p[e] == 1 && sums_to_one(p, {C, D, E});
    case CaseLabel::iv:
      return zero(p, {c, B, C, D}) && p[E] == 1 && sums_to_one(p, {b, d, e});
    case CaseLabel::v:
      return zero(p, {b, B, C, E}) && p[D] == 1 && sums_to_one(p, {c, d, e});
    case CaseLabel::vi:
      return zero(p, {b, e, C, E}) && sums_to_one(p, {c, d}) && sums_to_one(p, {B, D});
    case CaseLabel::vii:
      return zero(p, {c, d, B, D}) && sums_to_one(p, {b, e}) && sums_to_one(p, {C, E});
  }
  return false;
}

bool matches(const LVParams& p, SymplecticLabel label) {
  switch (label) {
    case SymplecticLabel::I:
      return zero(p, {c, d, B, D}) && sums_to_one(p, {b, e}) && sums_to_one(p, {C, E});
    case SymplecticLabel::II:
      return zero(p, {b, c, B, C}) && p[D] == p[d] && p[E] == p[e] && sums_to_one(p, {d, e});
    case SymplecticLabel::III:
      return zero(p, {b, e, C, E}) && sums_to_one(p, {c, d}) && sums_to_one(p, {B, D});
  }
  return false;
}

}  // namespace

std::vector<CaseLabel> classify_birational(const LVParams& p) {
  std::vector<CaseLabel> out;
  for (CaseLabel c : kAllCases) {
    if (matches(p, c)) out.push_back(c);
  }
  return out;
}

std::vector<SymplecticLabel> classify_symplectic(const LVParams& p) {
  std::vector<SymplecticLabel> out;
  for (SymplecticLabel c : kAllSymplecticCases) {
    if (matches(p, c)) out.push_back(c);
  }
  return out;
}

bool check_sympcon(const LVParams& p) {
  return p[d] * p[E] - p[D] * p[e] == 0 && sgn(p[c] * p[C]) == 0 && sgn(p[d] * p[C]) == 0 &&
         sgn(p[c] * p[E]) == 0 && sgn(p[b] * p[B]) == 0 && sgn(p[b] * p[D]) == 0 &&
         sgn(p[e] * p[B]) == 0;
}

LVParams invert_params(const LVParams& p) {
  return LVParams({BigRational(1 - p[a]), p[c], p[b], p[e], p[d], BigRational(1 - p[A]), p[C],
                   p[B], p[E], p[D]});
}

CaseLabel inverse_case(CaseLabel label) {
  switch (label) {
    case CaseLabel::ii: return CaseLabel::iii;
    case CaseLabel::iii: return CaseLabel::ii;
    case CaseLabel::iv: return CaseLabel::v;
    case CaseLabel::v: return CaseLabel::iv;
    case CaseLabel::vi: return CaseLabel::vii;
    case CaseLabel::vii: return CaseLabel::vi;
    case CaseLabel::i: break;
  }
  return CaseLabel::i;
}

// ---------------------------------------------------------------------------
// Elimination machinery shared by the numeric stepper and the exact certificate.

namespace {

/// E(u, v) = k0 + ku u + kv v + kuv u v.
template <class T>
struct Bilinear {
  T k0, ku, kv, kuv;
};

template <class T>
struct Quadratic {
  T q2, q1, q0;
};

template <class T>
struct Coefficients {
  T a, b, c, d, e, A, B, C, D, E, a_hat, A_hat;
};

template <class T>
Bilinear<T> swapped(const Bilinear<T>& s) {
  return {s.k0, s.kv, s.ku, s.kuv};
}

/// Resultant with respect to u: (ku1 + kuv1 v)(k02 + kv2 v) - (ku2 + kuv2 v)(k01 + kv1 v).
template <class T>
Quadratic<T> eliminate_u(const Bilinear<T>& e1, const Bilinear<T>& e2) {
  return {e1.kuv * e2.kv - e2.kuv * e1.kv,
          e1.ku * e2.kv + e1.kuv * e2.k0 - e2.ku * e1.kv - e2.kuv * e1.k0,
          e1.ku * e2.k0 - e2.ku * e1.k0};
}

/// Defining equations (times h) as bilinear forms in the unknowns (xt, yt).
template <class T>
std::pair<Bilinear<T>, Bilinear<T>> forward_system(const Coefficients<T>& k, const T& x,
                                                   const T& y, const T& h) {
  Bilinear<T> e1{T(-x) - h * k.a * x + h * k.b * x * y, T(1) - h * k.a_hat + h * k.e * y,
                 h * k.d * x, h * k.c};
  Bilinear<T> e2{T(-y) + h * k.A * y - h * k.B * x * y, T(-(h * k.E * y)),
                 T(1) + h * k.A_hat - h * k.D * x, T(-(h * k.C))};
  return {std::move(e1), std::move(e2)};
}

/// Same equations as bilinear forms in the unknowns (x, y), given (xt, yt).
template <class T>
std::pair<Bilinear<T>, Bilinear<T>> backward_system(const Coefficients<T>& k, const T& xt,
                                                    const T& yt, const T& h) {
  Bilinear<T> e1{xt - h * k.a_hat * xt + h * k.c * xt * yt, T(-1) - h * k.a + h * k.d * yt,
                 h * k.e * xt, h * k.b};
  Bilinear<T> e2{yt + h * k.A_hat * yt - h * k.C * xt * yt, T(-(h * k.D * yt)),
                 T(-1) + h * k.A - h * k.E * xt, T(-(h * k.B))};
  return {std::move(e1), std::move(e2)};
}

Coefficients<double> numeric_coefficients(const LVParams& p) {
  const LVNumeric& n = p.numeric();
  return {n.a, n.b, n.c, n.d, n.e, n.A, n.B, n.C, n.D, n.E, n.a_hat, n.A_hat};
}

Coefficients<MultiPoly> exact_coefficients(const LVParams& p) {
  return {p[a], p[b], p[c], p[d], p[e], p[A], p[B], p[C], p[D], p[E], p.a_hat(), p.A_hat()};
}

std::string point_context(const LVParams& p, double x, double y, double h) {
  std::ostringstream os;
  os.precision(17);
  os << " at (x, y) = (" << x << ", " << y << "), h = " << h << ", params " << p.to_string();
  return os.str();
}

/// Solves e1 = e2 = 0 by eliminating u. Returns std::nullopt when the quadratic
/// leading coefficient is not negligible.
std::optional<Eigen::Vector2d> solve_by_elimination(const Bilinear<double>& e1,
                                                    const Bilinear<double>& e2, double tol,
                                                    const std::string& context) {
  const Quadratic<double> q = eliminate_u(e1, e2);
  if (std::abs(q.q2) > tol * (std::abs(q.q1) + std::abs(q.q0) + 1.0)) return std::nullopt;
  if (std::abs(q.q1) < tol) {
    throw DegenerateLinearTerm("linear coefficient of the eliminated quadratic vanishes" + context);
  }
  const double v = -q.q0 / q.q1;
  double alpha = e1.ku + e1.kuv * v;
  double beta = e1.k0 + e1.kv * v;
  if (std::abs(alpha) < tol) {
    alpha = e2.ku + e2.kuv * v;
    beta = e2.k0 + e2.kv * v;
    if (std::abs(alpha) < tol) {
      throw DegenerateLinearTerm("both equations lose the eliminated unknown" + context);
    }
  }
  return Eigen::Vector2d(-beta / alpha, v);
}

}  // namespace

Eigen::Vector2d lv_step(const LVParams& p, double x, double y, double h, double tol) {
  const auto [e1, e2] = forward_system(numeric_coefficients(p), x, y, h);
  const std::string context = point_context(p, x, y, h);
  if (auto uv = solve_by_elimination(e1, e2, tol, context)) return *uv;  // u = xt, v = yt
  if (auto vu = solve_by_elimination(swapped(e1), swapped(e2), tol, context)) {
    return {(*vu)[1], (*vu)[0]};  // u = yt, v = xt
  }
  throw NotBirational("neither elimination order yields a linear equation" + context);
}

Eigen::Vector2d lv_inverse_step(const LVParams& p, double xt, double yt, double h, double tol) {
  return lv_step(invert_params(p), xt, yt, -h, tol);
}

Eigen::Matrix2d lv_step_jacobian(const LVParams& p, double x, double y, double h, double tol) {
  const Eigen::Vector2d next = lv_step(p, x, y, h, tol);
  const double xt = next[0];
  const double yt = next[1];
  const auto k = numeric_coefficients(p);
  const auto [f1, f2] = forward_system(k, x, y, h);
  const auto [b1, b2] = backward_system(k, xt, yt, h);

  Eigen::Matrix2d dE_dnext;
  dE_dnext << f1.ku + f1.kuv * yt, f1.kv + f1.kuv * xt,  //
      f2.ku + f2.kuv * yt, f2.kv + f2.kuv * xt;
  Eigen::Matrix2d dE_dcur;
  dE_dcur << b1.ku + b1.kuv * y, b1.kv + b1.kuv * x,  //
      b2.ku + b2.kuv * y, b2.kv + b2.kuv * x;

  const double det = dE_dnext.determinant();
  if (std::abs(det) <= 1e-14 * dE_dnext.cwiseAbs().maxCoeff() * dE_dnext.cwiseAbs().maxCoeff()) {
    throw SingularImplicitSystem("d(E1,E2)/d(xt,yt) is singular" + point_context(p, x, y, h));
  }
  return -dE_dnext.inverse() * dE_dcur;
}

double symplectic_residual(const LVParams& p, double x, double y, double h, double tol) {
  const Eigen::Vector2d next = lv_step(p, x, y, h, tol);
  const Eigen::Matrix2d jac = lv_step_jacobian(p, x, y, h, tol);
  return jac.determinant() - next[0] * next[1] / (x * y);
}

double lv_hamiltonian(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0)) {
    throw DomainError("Hamiltonian log(xy) - x - y requires x > 0 and y > 0");
  }
  return std::log(x * y) - x - y;
}

// ---------------------------------------------------------------------------
// Exact certificate

namespace {

EliminationEvidence evidence_from(const Quadratic<MultiPoly>& q) {
  EliminationEvidence ev;
  ev.lead = q.q2;
  ev.linear = q.q1;
  ev.constant = q.q0;
  ev.discriminant = q.q1 * q.q1 - MultiPoly(4L) * q.q2 * q.q0;
  ev.discriminant_root = is_perfect_square(ev.discriminant);
  ev.rational = ev.lead.is_zero() ? !ev.linear.is_zero() : ev.discriminant_root.has_value();
  return ev;
}

}  // namespace

SymbolicCertificate symbolic_certificate(const LVParams& p) {
  const auto k = exact_coefficients(p);
  const MultiPoly x = MultiPoly::var(MultiPoly::X);
  const MultiPoly y = MultiPoly::var(MultiPoly::Y);
  const MultiPoly h = MultiPoly::var(MultiPoly::H);

  SymbolicCertificate cert;
  const auto [f1, f2] = forward_system(k, x, y, h);
  cert.forward = evidence_from(eliminate_u(f1, f2));
  // (xt, yt) occupy the x, y slots here; the unknowns are the previous (x, y).
  const auto [b1, b2] = backward_system(k, x, y, h);
  cert.inverse = evidence_from(eliminate_u(b1, b2));
  cert.verdict = cert.forward.rational && cert.inverse.rational ? CertificateVerdict::Birational
                                                                : CertificateVerdict::NotCertified;
  return cert;
}

ClassificationReport classify(const LVParams& p, bool certify) {
  ClassificationReport r;
  r.birational_cases = classify_birational(p);
  r.symplectic_cases = classify_symplectic(p);
  r.sympcon_satisfied = check_sympcon(p);
  if (certify) r.certificate = symbolic_certificate(p);
  return r;
}

nlohmann::json to_json(const ClassificationReport& r, const LVParams& p) {
  nlohmann::json j;
  auto params = nlohmann::json::array();
  for (const auto& v : p.values()) params.push_back(birat::to_string(v));
  j["params"] = std::move(params);
  auto cases = nlohmann::json::array();
  for (CaseLabel c : r.birational_cases) cases.push_back(std::string(to_string(c)));
  j["birational_cases"] = std::move(cases);
  auto sym = nlohmann::json::array();
  for (SymplecticLabel c : r.symplectic_cases) sym.push_back(std::string(to_string(c)));
  j["symplectic_cases"] = std::move(sym);
  j["sympcon_satisfied"] = r.sympcon_satisfied;
  if (r.certificate) {
    const auto& c = *r.certificate;
    const auto root = [](const EliminationEvidence& ev, const MultiPoly::VarNames& names) {
      return ev.discriminant_root ? nlohmann::json(ev.discriminant_root->to_string(names))
                                  : nlohmann::json(nullptr);
    };
    j["certificate"] = {
        {"verdict", std::string(to_string(c.verdict))},
        {"p2", c.p2().to_string()},
        {"p2_tilde", c.p2_tilde().to_string(kInverseVarNames)},
        {"delta_root", root(c.forward, MultiPoly::kDefaultNames)},
        {"delta_tilde_root", root(c.inverse, kInverseVarNames)},
    };
  }
  return j;
}

// ---------------------------------------------------------------------------
// Sampling

BigRational random_rational(std::mt19937_64& rng, int max_num, int max_den) {
  std::uniform_int_distribution<int> num(-max_num, max_num);
  std::uniform_int_distribution<int> den(1, max_den);
  const int n = num(rng);
  const int dd = den(rng);
  BigRational q(n, dd);
  q.canonicalize();
  return q;
}

LVParams random_case_representative(CaseLabel label, std::mt19937_64& rng) {
  const BigRational pa = random_rational(rng);
  const BigRational pA = random_rational(rng);
  const BigRational r1 = random_rational(rng);
  const BigRational r2 = random_rational(rng);
  const BigRational zero = 0;
  const BigRational one = 1;
  switch (label) {
    case CaseLabel::i:
      return LVParams({pa, zero, zero, r1, 1 - r1, pA, zero, zero, r2, 1 - r2});
    case CaseLabel::ii:
      return LVParams({pa, zero, zero, one, zero, pA, r1, zero, r2, 1 - r1 - r2});
    case CaseLabel::iii:
      return LVParams({pa, zero, zero, zero, one, pA, zero, r1, r2, 1 - r1 - r2});
    case CaseLabel::iv:
      return LVParams({pa, r1, zero, r2, 1 - r1 - r2, pA, zero, zero, zero, one});
    case CaseLabel::v:
      return LVParams({pa, zero, r1, r2, 1 - r1 - r2, pA, zero, zero, one, zero});
    case CaseLabel::vi:
      return LVParams({pa, zero, r1, 1 - r1, zero, pA, r2, zero, 1 - r2, zero});
    case CaseLabel::vii:
      return LVParams({pa, r1, zero, zero, 1 - r1, pA, zero, r2, zero, 1 - r2});
  }
  throw InvalidArgument("unknown case label");
}

LVParams random_symplectic_representative(SymplecticLabel label, std::mt19937_64& rng) {
  switch (label) {
    case SymplecticLabel::I:
      return random_case_representative(CaseLabel::vii, rng);
    case SymplecticLabel::III:
      return random_case_representative(CaseLabel::vi, rng);
    case SymplecticLabel::II: {
      const BigRational pa = random_rational(rng);
      const BigRational pA = random_rational(rng);
      const BigRational pd = random_rational(rng);
      const BigRational pe = 1 - pd;
      return LVParams({pa, 0, 0, pd, pe, pA, 0, 0, pd, pe});
    }
  }
  throw InvalidArgument("unknown symplectic label");
}

LVParams random_non_case_params(std::mt19937_64& rng) {
  for (;;) {
    std::array<BigRational, 10> v;
    for (int i : {0, 1, 2, 3, 5, 6, 7, 8}) v[i] = random_rational(rng);
    v[4] = 1 - v[1] - v[2] - v[3];
    v[9] = 1 - v[6] - v[7] - v[8];
    LVParams p(std::move(v));
    if (classify_birational(p).empty()) return p;
  }
}

namespace presets {

LVParams kahan() { return LVParams::parse("1/2,0,0,1/2,1/2,1/2,0,0,1/2,1/2"); }

LVParams mickens() { return LVParams::parse("2,0,0,0,1,0,0,-1,0,2"); }

LVParams periodic_vi() { return LVParams::parse("1/2,0,3/2,-1/2,0,1/2,4/5,0,1/5,0"); }

LVParams decay_iv(const BigRational& dv) {
  const BigRational half(1, 2);
  return LVParams({half, BigRational(3, 2), 0, dv, BigRational(-dv - half), half, 0, 0, 0, 1});
}

}  // namespace presets

}  // namespace birat
