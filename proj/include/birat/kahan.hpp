#pragma once

#include "birat/quadvf.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace birat {

struct KahanStepConfig {
  double h = 0.0;
  /// When set, (I - h/2 f')^{-1} is replaced by its geometric series truncated after K terms.
  std::optional<int> series_order;
  /// Relative pivot tolerance below which the step matrix counts as singular.
  double singular_tol = 1e-12;
};

/// Tolerance on |f(x*)| used to accept a point as a steady state.
inline constexpr double kSteadyStateTol = 1e-10;

/// Kahan's map: xt = x + h (I - h/2 f'(x))^{-1} f(x).
///
/// xt solves (xt - x)/h = Q(x, xt) where Q is the symmetric polarization of f.
/// Dispatches to kahan_step_series when cfg.series_order is set.
StateVector kahan_step(const QuadraticVectorField& vf, const StateVector& x,
                       const KahanStepConfig& cfg);

/// Inverse map: x = xt - h (I + h/2 f'(xt))^{-1} f(xt).
StateVector kahan_inverse_step(const QuadraticVectorField& vf, const StateVector& xt,
                               const KahanStepConfig& cfg);

/// x + h * sum_{m=0}^{K} (h/2)^m f'(x)^m f(x). K = 0 is explicit Euler.
StateVector kahan_step_series(const QuadraticVectorField& vf, const StateVector& x,
                              const KahanStepConfig& cfg);

/// (xt - x)/h - [-f(x)/2 + 2 f((x + xt)/2) - f(xt)/2]. Vanishes on Kahan step pairs.
StateVector rk_equivalence_residual(const QuadraticVectorField& vf, const StateVector& x,
                                    const StateVector& xt, double h);

/// Mobius image (1 + h lambda/2) / (1 - h lambda/2) of a vector-field eigenvalue.
std::complex<double> multiplier_of_eigenvalue(std::complex<double> lambda, double h);

/// phi'(x*) = I + h (I - h/2 f'(x*))^{-1} f'(x*) at a steady state x*.
Eigen::MatrixXd kahan_jacobian_at_fixed_point(const QuadraticVectorField& vf,
                                              const StateVector& xstar, double h);

/// Eigenvalues of phi'(x*). Throws NotASteadyState if |f(x*)| > kSteadyStateTol.
std::vector<std::complex<double>> map_multipliers_at_fixed_point(const QuadraticVectorField& vf,
                                                                 const StateVector& xstar,
                                                                 double h);

}  // namespace birat
