#pragma once

#include "birat/quadvf.hpp"

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace birat {

/// Rate constants and initial concentrations of S + E <-> C -> P + E.
struct EnzymeParams {
  double k1 = 1.0;   // 1/(concentration * time)
  double km1 = 1.0;  // 1/time
  double k2 = 1.0;   // 1/time
  double s0 = 1.0;
  double e0 = 1.0;
};

struct DimensionlessEnzymeParams {
  double mu = 0.5;   // k_{-1} / (k1 s0)
  double nu = 0.6;   // (k_{-1} + k2) / (k1 s0)
  double eps = 1e-2; // e0 / s0
};

struct SchnakenbergParams {
  double a = 0.1;
  double b = 0.5;
};

/// Mass-action field in (s, e, c, p).
QuadraticVectorField enzyme_vf(const EnzymeParams& p);

struct EnzymeScaling {
  DimensionlessEnzymeParams params;
  /// tau = time_scale * t, time_scale = k1 e0.
  double time_scale = 1.0;
  /// (x, y, z) = (s / s0, c / e0, p / s0).
  Eigen::Vector3d state_scales = Eigen::Vector3d::Ones();
};

EnzymeScaling nondimensionalize(const EnzymeParams& p);

/// Reduced dimensionless field in (x, y, z):
///   x' = -x + mu y + x y,  y' = (x - nu y - x y) / eps,  z' = (nu - mu) y.
QuadraticVectorField enzyme_diml_vf(const DimensionlessEnzymeParams& p);

/// The (x, y) block of enzyme_diml_vf, which decouples from z.
QuadraticVectorField enzyme_reduced_vf(const DimensionlessEnzymeParams& p);

/// Warning text when h / eps > 1, i.e. the step cannot resolve the fast transient.
std::optional<std::string> enzyme_step_warning(const DimensionlessEnzymeParams& p, double h);

/// z_n = (h/2)(nu - mu) sum_{i<n} (y_i + y_{i+1}), with z_0 = 0; one entry per y value.
std::vector<double> product_accumulate(std::span<const double> y_values, double h,
                                       const DimensionlessEnzymeParams& p);

/// Quasi-steady complex level x / (nu + x).
double michaelis_menten(double x, double nu);

/// x' = x(1 - y), y' = y(x - 1).
QuadraticVectorField lv_vf();

/// Birational map for x' = a - x + x^2 y, y' = b - x^2 y.
Eigen::Vector2d schnakenberg_step(const SchnakenbergParams& p, double x, double y, double h);
Eigen::Vector2d schnakenberg_inverse_step(const SchnakenbergParams& p, double xt, double yt,
                                          double h);
/// Right-hand side of the continuous system.
Eigen::Vector2d schnakenberg_field(const SchnakenbergParams& p, double x, double y);
/// (a + b, b / (a + b)^2)
Eigen::Vector2d schnakenberg_steady_state(const SchnakenbergParams& p);
/// Trace of the Jacobian at the steady state: -1 + 2b/(a+b) - (a+b)^2.
double schnakenberg_trace(const SchnakenbergParams& p);
/// All b > 0 at which the steady-state trace vanishes for the given a (ascending).
/// Between consecutive roots with positive trace the steady state is an unstable focus/node.
std::vector<double> schnakenberg_hopf_b(double a);

/// Registry of built-in models for the command line.
inline constexpr std::array<std::string_view, 4> kModelNames{"enzyme4", "enzyme3", "lv",
                                                             "schnakenberg"};
/// State names in storage order, e.g. {"s","e","c","p"}; throws InvalidArgument for unknown models.
std::vector<std::string> model_state_names(std::string_view model);

}  // namespace birat
