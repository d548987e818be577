#include "birat/geomcheck.hpp"

#include "birat/errors.hpp"
#include "birat/kahan.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace birat {

std::vector<double> Trajectory::component(int index) const {
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s[index]);
  return out;
}

PartialTrajectory integrate_partial(const StepMap& step, const StateVector& x0, double h,
                                    std::size_t steps, std::string map_id, double t0) {
  PartialTrajectory out;
  Trajectory& traj = out.trajectory;
  traj.step_size = h;
  traj.map_id = std::move(map_id);
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  traj.times.push_back(t0);
  traj.states.push_back(x0);
  StateVector x = x0;
  for (std::size_t k = 1; k <= steps; ++k) {
    try {
      x = step(x);
    } catch (const Error& ex) {
      out.error = "step " + std::to_string(k) + ": " + ex.what();
      return out;
    }
    traj.times.push_back(t0 + static_cast<double>(k) * h);
    traj.states.push_back(x);
  }
  return out;
}

Trajectory integrate(const StepMap& step, const StateVector& x0, double h, std::size_t steps,
                     std::string map_id, double t0) {
  auto partial = integrate_partial(step, x0, h, steps, std::move(map_id), t0);
  if (!partial.error.empty()) throw Error(partial.error);
  return std::move(partial.trajectory);
}

double conservation_drift(const Trajectory& traj, const Eigen::VectorXd& w) {
  if (traj.states.empty()) return 0.0;
  if (traj.states.front().size() != w.size()) {
    throw DimensionMismatch("conservation_drift: functional length differs from state length");
  }
  const double ref = w.dot(traj.states.front());
  double worst = 0.0;
  for (const auto& s : traj.states) worst = std::max(worst, std::abs(w.dot(s) - ref));
  return worst / (1.0 + std::abs(ref));
}

double least_squares_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t n = std::min(xs.size(), ys.size());
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  return sxx == 0.0 ? 0.0 : sxy / sxx;
}

EnergyProfile energy_profile(const Trajectory& traj,
                             const std::function<double(const StateVector&)>& energy) {
  EnergyProfile out;
  if (traj.states.empty()) return out;
  std::vector<double> values;
  values.reserve(traj.states.size());
  for (const auto& s : traj.states) values.push_back(energy(s));
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  out.oscillation = *hi - *lo;
  out.secular_slope = least_squares_slope(traj.times, values);
  return out;
}

RoundtripReport roundtrip_error(const StepMap& forward, const StepMap& inverse,
                                const std::vector<StateVector>& points) {
  RoundtripReport out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    try {
      const StateVector back = inverse(forward(points[i]));
      out.max_error = std::max(out.max_error, (back - points[i]).cwiseAbs().maxCoeff());
    } catch (const Error& ex) {
      out.failures.push_back("sample " + std::to_string(i) + ": " + ex.what());
    }
  }
  return out;
}

namespace {

StateVector run_to(const StepFamily& family, StateVector x, double h, std::size_t steps) {
  for (std::size_t k = 0; k < steps; ++k) x = family(x, h);
  return x;
}

std::size_t steps_for(double T, double h) {
  const double n = std::round(T / h);
  if (std::abs(n * h - T) > 1e-9 * std::max(1.0, std::abs(T))) {
    throw InvalidArgument("convergence_order: end time is not a multiple of every step size");
  }
  return static_cast<std::size_t>(n);
}

}  // namespace

ConvergenceReport convergence_order(const StepFamily& family, const StateVector& x0, double T,
                                    const std::vector<double>& h_list) {
  if (h_list.size() < 2) throw InvalidArgument("convergence_order needs at least two step sizes");
  ConvergenceReport out;
  out.step_sizes = h_list;
  const double h_min = *std::min_element(h_list.begin(), h_list.end());
  const double h_max = *std::max_element(h_list.begin(), h_list.end());
  if (!(h_min > 0.0)) throw InvalidArgument("convergence_order: step sizes must be positive");
  // Round down to a whole number of the coarsest steps; the finer grids in the
  // usual halving sequences land on the same time.
  out.end_time = std::floor(T / h_max + 1e-9) * h_max;
  out.reference_step = h_min / 64.0;
  const StateVector ref =
      run_to(family, x0, out.reference_step, steps_for(out.end_time, out.reference_step));
  std::vector<double> log_h, log_err;
  for (double h : h_list) {
    const StateVector xh = run_to(family, x0, h, steps_for(out.end_time, h));
    const double err = (xh - ref).cwiseAbs().maxCoeff();
    out.errors.push_back(err);
    log_h.push_back(std::log(h));
    log_err.push_back(std::log(err));
  }
  out.slope = least_squares_slope(log_h, log_err);
  return out;
}

Eigen::MatrixXd finite_difference_jacobian(const StepMap& map, const StateVector& x, double delta) {
  const Eigen::Index n = x.size();
  Eigen::MatrixXd jac(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    StateVector plus = x;
    StateVector minus = x;
    plus[m] += delta;
    minus[m] -= delta;
    jac.col(m) = (map(plus) - map(minus)) / (2.0 * delta);
  }
  return jac;
}

double multiplier_agreement(const Eigen::MatrixXd& map_jacobian, const QuadraticVectorField& vf,
                            const StateVector& xstar, double h) {
  const StateVector f = vf.evaluate(xstar);
  if (f.cwiseAbs().maxCoeff() > kSteadyStateTol) {
    throw NotASteadyState("multiplier_agreement: point is not a steady state");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> field_solver(vf.jacobian(xstar), false);
  Eigen::EigenSolver<Eigen::MatrixXd> map_solver(map_jacobian, false);
  const Eigen::VectorXcd lambdas = field_solver.eigenvalues();
  const Eigen::VectorXcd numeric = map_solver.eigenvalues();
  std::vector<std::complex<double>> predicted;
  for (Eigen::Index i = 0; i < lambdas.size(); ++i) {
    predicted.push_back(multiplier_of_eigenvalue(lambdas[i], h));
  }
  std::vector<bool> used(predicted.size(), false);
  double worst = 0.0;
  for (Eigen::Index i = 0; i < numeric.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = 0;
    for (std::size_t j = 0; j < predicted.size(); ++j) {
      if (used[j]) continue;
      const double dist = std::abs(numeric[i] - predicted[j]);
      if (dist < best) {
        best = dist;
        best_j = j;
      }
    }
    used[best_j] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

std::string to_string(OrbitKind k) {
  switch (k) {
    case OrbitKind::PeriodicLike: return "PERIODIC_LIKE";
    case OrbitKind::Decaying: return "DECAYING";
    case OrbitKind::Diverging: return "DIVERGING";
    case OrbitKind::Inconclusive: break;
  }
  return "INCONCLUSIVE";
}

OrbitVerdict orbit_verdict(const Trajectory& traj, int component, const OrbitThresholds& th) {
  OrbitVerdict v;
  const std::vector<double> values = traj.component(component);
  const std::size_t n = values.size();
  if (n == 0) return v;
  const auto window = [n](double frac) {
    return std::clamp<std::size_t>(static_cast<std::size_t>(frac * static_cast<double>(n)), 1, n);
  };
  const std::size_t early_n = window(th.early_fraction);
  const std::size_t late_n = window(th.late_fraction);

  const auto amplitude = [&](std::size_t begin, std::size_t count) {
    const auto [lo, hi] =
        std::minmax_element(values.begin() + static_cast<std::ptrdiff_t>(begin),
                            values.begin() + static_cast<std::ptrdiff_t>(begin + count));
    return *hi - *lo;
  };
  v.early_amplitude = amplitude(0, early_n);
  v.late_amplitude = amplitude(n - late_n, late_n);
  double late_sum = 0.0;
  for (std::size_t i = n - late_n; i < n; ++i) late_sum += values[i];
  v.late_mean = late_sum / static_cast<double>(late_n);

  if (v.early_amplitude == 0.0) {
    v.amplitude_ratio = v.late_amplitude == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
  } else {
    v.amplitude_ratio = v.late_amplitude / v.early_amplitude;
  }

  std::vector<double> peak_t, peak_v;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (values[i] > values[i - 1] && values[i] >= values[i + 1]) {
      peak_t.push_back(traj.times[i]);
      peak_v.push_back(values[i]);
    }
  }
  v.secular_slope = peak_t.size() >= 2 ? least_squares_slope(peak_t, peak_v)
                                       : least_squares_slope(traj.times, values);

  const bool overflow = std::any_of(values.begin(), values.end(), [&](double x) {
    return !std::isfinite(x) || std::abs(x) > th.overflow_guard;
  });
  if (overflow || v.amplitude_ratio > th.diverging_ratio) {
    v.kind = OrbitKind::Diverging;
  } else if (v.amplitude_ratio >= th.periodic_ratio_lo && v.amplitude_ratio <= th.periodic_ratio_hi &&
             std::abs(v.secular_slope) <= th.periodic_slope) {
    v.kind = OrbitKind::PeriodicLike;
  } else if (v.amplitude_ratio < th.decaying_ratio && v.secular_slope <= 0.0) {
    // shrinking upper envelope: the component settles toward a constant
    v.kind = OrbitKind::Decaying;
  } else {
    v.kind = OrbitKind::Inconclusive;
  }
  return v;
}

ReturnMap return_map(const Trajectory& traj, const StateVector& anchor, int level_component,
                     int axis_component) {
  ReturnMap out;
  const double level = anchor[level_component];
  for (std::size_t k = 0; k + 1 < traj.states.size(); ++k) {
    const StateVector& s0 = traj.states[k];
    const StateVector& s1 = traj.states[k + 1];
    const double d0 = s0[level_component] - level;
    const double d1 = s1[level_component] - level;
    if (!((d0 < 0.0 && d1 >= 0.0) || (d0 > 0.0 && d1 <= 0.0))) continue;
    const double frac = d0 / (d0 - d1);
    const double axis = s0[axis_component] + frac * (s1[axis_component] - s0[axis_component]);
    const double dist = axis - anchor[axis_component];
    if (dist <= 0.0) continue;
    out.times.push_back(traj.times[k] + frac * (traj.times[k + 1] - traj.times[k]));
    out.distances.push_back(dist);
  }
  return out;
}

}  // namespace birat
