#pragma once

#include "birat/quadvf.hpp"

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace birat {

/// Orbit of a one-step map sampled at t_k = t_0 + k * step_size.
struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector> states;
  double step_size = 0.0;
  std::string map_id;

  std::size_t size() const { return states.size(); }
  /// Column of one state component.
  std::vector<double> component(int index) const;
};

using StepMap = std::function<StateVector(const StateVector&)>;
/// Map family parameterized by the step size.
using StepFamily = std::function<StateVector(const StateVector&, double h)>;

/// Iterates `step` from x0. Stops early (keeping the states computed so far) and
/// rethrows if a step fails; see integrate_partial for the non-throwing variant.
Trajectory integrate(const StepMap& step, const StateVector& x0, double h, std::size_t steps,
                     std::string map_id, double t0 = 0.0);

struct PartialTrajectory {
  Trajectory trajectory;
  std::string error;  // empty when all steps succeeded
};
PartialTrajectory integrate_partial(const StepMap& step, const StateVector& x0, double h,
                                    std::size_t steps, std::string map_id, double t0 = 0.0);

/// max_k |w.x_k - w.x_0| / (1 + |w.x_0|)
double conservation_drift(const Trajectory& traj, const Eigen::VectorXd& w);

struct EnergyProfile {
  double oscillation = 0.0;    // max - min of H
  double secular_slope = 0.0;  // least-squares slope of H against t
};
EnergyProfile energy_profile(const Trajectory& traj,
                             const std::function<double(const StateVector&)>& energy);

struct RoundtripReport {
  double max_error = 0.0;
  std::vector<std::string> failures;  // one message per sample where a map threw
};
RoundtripReport roundtrip_error(const StepMap& forward, const StepMap& inverse,
                                const std::vector<StateVector>& points);

struct ConvergenceReport {
  double slope = 0.0;
  std::vector<double> step_sizes;
  std::vector<double> errors;
  double reference_step = 0.0;
  double end_time = 0.0;
};

/// Integrates to a common end time for every h, measures the max-norm error against
/// the same family run at min(h_list)/64, and fits log(error) against log(h).
ConvergenceReport convergence_order(const StepFamily& family, const StateVector& x0, double T,
                                    const std::vector<double>& h_list);

/// Least-squares slope of ys against xs.
double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys);

/// Central-difference Jacobian of a map.
Eigen::MatrixXd finite_difference_jacobian(const StepMap& map, const StateVector& x,
                                           double delta = 1e-5);

/// Pairs each eigenvalue of the map Jacobian with the image mu(lambda, h) of an
/// eigenvalue of f'(x*) (greedy minimal distance) and returns the largest mismatch.
double multiplier_agreement(const Eigen::MatrixXd& map_jacobian, const QuadraticVectorField& vf,
                            const StateVector& xstar, double h);

enum class OrbitKind { PeriodicLike, Decaying, Diverging, Inconclusive };
std::string to_string(OrbitKind k);

struct OrbitVerdict {
  OrbitKind kind = OrbitKind::Inconclusive;
  double amplitude_ratio = 1.0;
  /// Slope of the upper envelope (successive local maxima) against time.
  double secular_slope = 0.0;
  double early_amplitude = 0.0;
  double late_amplitude = 0.0;
  double late_mean = 0.0;
};

struct OrbitThresholds {
  double early_fraction = 0.25;
  double late_fraction = 0.25;
  double periodic_ratio_lo = 0.9;
  double periodic_ratio_hi = 1.1;
  double periodic_slope = 1e-4;
  double decaying_ratio = 0.5;
  double diverging_ratio = 2.0;
  double overflow_guard = 1e8;
};

OrbitVerdict orbit_verdict(const Trajectory& traj, int component, const OrbitThresholds& th = {});

struct ReturnMap {
  std::vector<double> times;
  /// Signed distance along the section from the anchor point.
  std::vector<double> distances;
};

/// Crossings of the half-line through `anchor` along `axis_component` (the side where
/// state[axis] > anchor[axis]), detected where state[level_component] passes
/// anchor[level_component]. An orbit winding around the anchor crosses once per
/// revolution. Crossing points are linearly interpolated.
ReturnMap return_map(const Trajectory& traj, const StateVector& anchor, int level_component,
                     int axis_component);

}  // namespace birat
