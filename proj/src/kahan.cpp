#include "birat/kahan.hpp"

#include "birat/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <cmath>
#include <sstream>
#include <string>

namespace birat {

namespace {

std::string describe_state(const StateVector& x) {
  std::ostringstream os;
  os.precision(17);
  os << "(";
  for (Eigen::Index i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
  os << ")";
  return os.str();
}

[[noreturn]] void throw_singular(double h, const StateVector& x, const char* which) {
  std::ostringstream os;
  os.precision(17);
  os << "singular step matrix " << which << " at h = " << h << ", x = " << describe_state(x);
  throw SingularStepMatrix(os.str(), h);
}

// Solves (I + sign * h/2 f'(x)) z = rhs.
StateVector solve_step_matrix(const QuadraticVectorField& vf, const StateVector& x, double sign,
                              const StateVector& rhs, const KahanStepConfig& cfg,
                              const char* which) {
  const int n = vf.dim();
  const double half_h = sign * 0.5 * cfg.h;
  if (vf.is_sparse()) {
    Eigen::SparseMatrix<double> m = vf.jacobian_sparse(x) * half_h;
    for (int i = 0; i < n; ++i) m.coeffRef(i, i) += 1.0;
    m.makeCompressed();
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success) throw_singular(cfg.h, x, which);
    StateVector z = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !z.allFinite()) throw_singular(cfg.h, x, which);
    return z;
  }
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) + half_h * vf.jacobian(x);
  const double scale = m.cwiseAbs().maxCoeff();
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > cfg.singular_tol * scale)) throw_singular(cfg.h, x, which);
  return lu.solve(rhs);
}

void check_config(const KahanStepConfig& cfg) {
  if (cfg.h == 0.0) throw InvalidArgument("step size h must be nonzero");
  if (!(cfg.singular_tol > 0.0)) throw InvalidArgument("singular_tol must be positive");
  if (cfg.series_order && *cfg.series_order < 0) {
    throw InvalidArgument("series_order must be non-negative");
  }
}

}  // namespace

StateVector kahan_step(const QuadraticVectorField& vf, const StateVector& x,
                       const KahanStepConfig& cfg) {
  if (cfg.series_order) return kahan_step_series(vf, x, cfg);
  check_config(cfg);
  const StateVector f = vf.evaluate(x);
  return x + cfg.h * solve_step_matrix(vf, x, -1.0, f, cfg, "I - (h/2) f'(x)");
}

StateVector kahan_inverse_step(const QuadraticVectorField& vf, const StateVector& xt,
                               const KahanStepConfig& cfg) {
  check_config(cfg);
  const StateVector f = vf.evaluate(xt);
  return xt - cfg.h * solve_step_matrix(vf, xt, 1.0, f, cfg, "I + (h/2) f'(xt)");
}

StateVector kahan_step_series(const QuadraticVectorField& vf, const StateVector& x,
                              const KahanStepConfig& cfg) {
  check_config(cfg);
  if (!cfg.series_order) throw InvalidArgument("kahan_step_series requires series_order");
  const int order = *cfg.series_order;
  StateVector term = vf.evaluate(x);
  StateVector sum = term;
  if (order > 0) {
    const double half_h = 0.5 * cfg.h;
    if (vf.is_sparse()) {
      const Eigen::SparseMatrix<double> jac = vf.jacobian_sparse(x);
      for (int m = 1; m <= order; ++m) {
        term = half_h * (jac * term);
        sum += term;
      }
    } else {
      const Eigen::MatrixXd jac = vf.jacobian(x);
      for (int m = 1; m <= order; ++m) {
        term = half_h * (jac * term);
        sum += term;
      }
    }
  }
  return x + cfg.h * sum;
}

StateVector rk_equivalence_residual(const QuadraticVectorField& vf, const StateVector& x,
                                    const StateVector& xt, double h) {
  if (x.size() != xt.size()) throw DimensionMismatch("rk_equivalence_residual: x and xt differ in length");
  if (h == 0.0) throw InvalidArgument("step size h must be nonzero");
  const StateVector rk = -0.5 * vf.evaluate(x) + 2.0 * vf.evaluate(0.5 * (x + xt)) -
                         0.5 * vf.evaluate(xt);
  return (xt - x) / h - rk;
}

std::complex<double> multiplier_of_eigenvalue(std::complex<double> lambda, double h) {
  const std::complex<double> half = 0.5 * h * lambda;
  const std::complex<double> denom = 1.0 - half;
  if (std::abs(denom) <= 1e-15 * (1.0 + std::abs(half))) {
    throw PoleAtTwoOverH("multiplier undefined: h * lambda = 2");
  }
  return (1.0 + half) / denom;
}

Eigen::MatrixXd kahan_jacobian_at_fixed_point(const QuadraticVectorField& vf,
                                              const StateVector& xstar, double h) {
  const StateVector f = vf.evaluate(xstar);
  if (f.cwiseAbs().maxCoeff() > kSteadyStateTol) {
    throw NotASteadyState("|f(x*)| = " + std::to_string(f.cwiseAbs().maxCoeff()) +
                          " exceeds steady-state tolerance at x* = " + describe_state(xstar));
  }
  const int n = vf.dim();
  const Eigen::MatrixXd jac = vf.jacobian(xstar);
  const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) - 0.5 * h * jac;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
  const double min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  if (!(min_pivot > 1e-12 * m.cwiseAbs().maxCoeff())) {
    throw_singular(h, xstar, "I - (h/2) f'(x*)");
  }
  return Eigen::MatrixXd::Identity(n, n) + h * lu.solve(jac);
}

std::vector<std::complex<double>> map_multipliers_at_fixed_point(const QuadraticVectorField& vf,
                                                                 const StateVector& xstar,
                                                                 double h) {
  const Eigen::MatrixXd jac = kahan_jacobian_at_fixed_point(vf, xstar, h);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(jac, /*computeEigenvectors=*/false);
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

}  // namespace birat
