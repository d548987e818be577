#include "birat/models.hpp"

#include "birat/errors.hpp"

#include <cmath>
#include <sstream>

namespace birat {

QuadraticVectorField enzyme_vf(const EnzymeParams& p) {
  if (!(p.k1 > 0 && p.km1 > 0 && p.k2 > 0 && p.s0 > 0 && p.e0 > 0)) {
    throw InvalidArgument("enzyme parameters k1, k-1, k2, s0, e0 must all be positive");
  }
  constexpr int s = 0, e = 1, c = 2, prod = 3;
  Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(4, 4);
  lin(s, c) = p.km1;
  lin(e, c) = p.km1 + p.k2;
  lin(c, c) = -(p.km1 + p.k2);
  lin(prod, c) = p.k2;
  const std::vector<QuadEntry> quad{
      {s, e, s, -p.k1},
      {e, e, s, -p.k1},
      {c, e, s, p.k1},
  };
  return QuadraticVectorField(Eigen::VectorXd::Zero(4), std::move(lin), quad);
}

EnzymeScaling nondimensionalize(const EnzymeParams& p) {
  if (!(p.k1 > 0 && p.km1 > 0 && p.k2 > 0 && p.s0 > 0 && p.e0 > 0)) {
    throw InvalidArgument("enzyme parameters k1, k-1, k2, s0, e0 must all be positive");
  }
  EnzymeScaling out;
  out.params.mu = p.km1 / (p.k1 * p.s0);
  out.params.nu = (p.km1 + p.k2) / (p.k1 * p.s0);
  out.params.eps = p.e0 / p.s0;
  out.time_scale = p.k1 * p.e0;
  out.state_scales = Eigen::Vector3d(p.s0, p.e0, p.s0);
  return out;
}

namespace {

void check_diml(const DimensionlessEnzymeParams& p) {
  if (!(p.mu > 0 && p.nu > p.mu && p.eps > 0)) {
    throw InvalidArgument("dimensionless enzyme parameters need nu > mu > 0 and eps > 0");
  }
}

}  // namespace

QuadraticVectorField enzyme_diml_vf(const DimensionlessEnzymeParams& p) {
  check_diml(p);
  constexpr int x = 0, y = 1, z = 2;
  const double inv_eps = 1.0 / p.eps;
  Eigen::MatrixXd lin = Eigen::MatrixXd::Zero(3, 3);
  lin(x, x) = -1.0;
  lin(x, y) = p.mu;
  lin(y, x) = inv_eps;
  lin(y, y) = -p.nu * inv_eps;
  lin(z, y) = p.nu - p.mu;
  const std::vector<QuadEntry> quad{{x, x, y, 1.0}, {y, x, y, -inv_eps}};
  return QuadraticVectorField(Eigen::VectorXd::Zero(3), std::move(lin), quad);
}

QuadraticVectorField enzyme_reduced_vf(const DimensionlessEnzymeParams& p) {
  check_diml(p);
  const double inv_eps = 1.0 / p.eps;
  Eigen::MatrixXd lin(2, 2);
  lin << -1.0, p.mu, inv_eps, -p.nu * inv_eps;
  const std::vector<QuadEntry> quad{{0, 0, 1, 1.0}, {1, 0, 1, -inv_eps}};
  return QuadraticVectorField(Eigen::VectorXd::Zero(2), std::move(lin), quad);
}

std::optional<std::string> enzyme_step_warning(const DimensionlessEnzymeParams& p, double h) {
  if (std::abs(h) / p.eps <= 1.0) return std::nullopt;
  std::ostringstream os;
  os << "h/eps = " << std::abs(h) / p.eps
     << " > 1: the step does not resolve the initial transient of y";
  return os.str();
}

std::vector<double> product_accumulate(std::span<const double> y_values, double h,
                                       const DimensionlessEnzymeParams& p) {
  std::vector<double> z;
  if (y_values.empty()) return z;
  z.reserve(y_values.size());
  const double w = 0.5 * h * (p.nu - p.mu);
  double sum = 0.0;
  z.push_back(0.0);
  for (std::size_t i = 1; i < y_values.size(); ++i) {
    sum += y_values[i - 1] + y_values[i];
    z.push_back(w * sum);
  }
  return z;
}

double michaelis_menten(double x, double nu) {
  if (nu + x == 0.0) throw PoleError("Michaelis-Menten level undefined at x = -nu");
  return x / (nu + x);
}

QuadraticVectorField lv_vf() {
  Eigen::MatrixXd lin(2, 2);
  lin << 1.0, 0.0, 0.0, -1.0;
  const std::vector<QuadEntry> quad{{0, 0, 1, -1.0}, {1, 0, 1, 1.0}};
  return QuadraticVectorField(Eigen::VectorXd::Zero(2), std::move(lin), quad);
}

Eigen::Vector2d schnakenberg_step(const SchnakenbergParams& p, double x, double y, double h) {
  const double dy = 1.0 + h * x * x;
  if (dy == 0.0) throw DenominatorVanishes("schnakenberg_step: 1 + h x^2 = 0");
  const double yt = (y + h * p.b) / dy;
  const double dx = 1.0 + 0.5 * h - h * x * yt;
  if (dx == 0.0) throw DenominatorVanishes("schnakenberg_step: 1 + h/2 - h x yt = 0");
  const double xt = (x + h * (p.a - 0.5 * x)) / dx;
  return {xt, yt};
}

Eigen::Vector2d schnakenberg_inverse_step(const SchnakenbergParams& p, double xt, double yt,
                                          double h) {
  const double dx = 1.0 - 0.5 * h + h * xt * yt;
  if (dx == 0.0) throw DenominatorVanishes("schnakenberg_inverse_step: 1 - h/2 + h xt yt = 0");
  const double x = (xt * (1.0 + 0.5 * h) - h * p.a) / dx;
  const double y = yt * (1.0 + h * x * x) - h * p.b;
  return {x, y};
}

Eigen::Vector2d schnakenberg_field(const SchnakenbergParams& p, double x, double y) {
  return {p.a - x + x * x * y, p.b - x * x * y};
}

Eigen::Vector2d schnakenberg_steady_state(const SchnakenbergParams& p) {
  const double s = p.a + p.b;
  if (s == 0.0) throw DomainError("Schnakenberg steady state requires a + b != 0");
  return {s, p.b / (s * s)};
}

double schnakenberg_trace(const SchnakenbergParams& p) {
  const double s = p.a + p.b;
  return -1.0 + 2.0 * p.b / s - s * s;
}

std::vector<double> schnakenberg_hopf_b(double a) {
  if (!(a > 0.0)) throw InvalidArgument("schnakenberg_hopf_b requires a > 0");
  // (a + b) * trace = b - a - (a + b)^3 changes sign where the trace does.
  const auto g = [a](double b) { return b - a - std::pow(a + b, 3); };
  // Past b = 1 the cubic dominates: g < 0 for all larger b.
  const double upper = std::max(1.0, 2.0 * a) + 1.0;
  constexpr int kSamples = 4000;
  std::vector<double> roots;
  double prev_b = 0.0;
  double prev_g = g(prev_b);
  for (int i = 1; i <= kSamples; ++i) {
    const double bb = upper * i / kSamples;
    const double gb = g(bb);
    if ((prev_g < 0.0) != (gb < 0.0)) {
      double lo = prev_b, hi = bb, glo = prev_g;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g(mid);
        if ((gm < 0.0) == (glo < 0.0)) {
          lo = mid;
          glo = gm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    prev_b = bb;
    prev_g = gb;
  }
  return roots;
}

std::vector<std::string> model_state_names(std::string_view model) {
  if (model == "enzyme4") return {"s", "e", "c", "p"};
  if (model == "enzyme3") return {"x", "y", "z"};
  if (model == "lv" || model == "schnakenberg") return {"x", "y"};
  throw InvalidArgument("unknown model '" + std::string(model) +
                        "' (expected enzyme4, enzyme3, lv or schnakenberg)");
}

}  // namespace birat
