#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include <nlohmann/json.hpp>

#include <span>
#include <vector>

namespace birat {

using StateVector = Eigen::VectorXd;

/// One entry of a quadratic coefficient tensor: contributes value * x_j * x_k to f_i.
struct QuadEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// Vector field whose components are polynomials of degree at most two:
///
///   f_i(x) = c0_i + sum_j lin_ij x_j + sum_{j,k} quad_ijk x_j x_k
///
/// The quadratic tensor is always stored symmetric in (j, k). Input entries are
/// accumulated and then symmetrized, so a single entry (i, j, k, v) with j != k
/// describes the monomial v * x_j * x_k. Fields with dim <= kDenseLimit keep a
/// dense N^3 tensor; larger fields keep only the nonzero entries with j <= k.
class QuadraticVectorField {
 public:
  static constexpr int kDenseLimit = 32;

  QuadraticVectorField(Eigen::VectorXd c0, Eigen::MatrixXd lin, std::span<const QuadEntry> quad);

  static QuadraticVectorField zero(int dim);

  int dim() const { return static_cast<int>(c0_.size()); }
  bool is_sparse() const { return dense_quad_.empty(); }

  const Eigen::VectorXd& constant() const { return c0_; }
  const Eigen::MatrixXd& linear() const { return lin_; }
  /// Symmetric tensor entry quad_ijk.
  double quad(int i, int j, int k) const;
  /// Nonzero symmetric tensor entries with j <= k.
  const std::vector<QuadEntry>& quad_entries() const { return sym_entries_; }

  StateVector evaluate(const StateVector& x) const;
  Eigen::MatrixXd jacobian(const StateVector& x) const;
  Eigen::SparseMatrix<double> jacobian_sparse(const StateVector& x) const;

  /// Symmetric polarization Q(x, xt): x_j x_k -> (x_j xt_k + xt_j x_k) / 2,
  /// x_j -> (x_j + xt_j) / 2, constants unchanged.
  StateVector polarized_rhs(const StateVector& x, const StateVector& xt) const;

  /// True when w . f(x) vanishes identically as a polynomial, i.e. w . x is a
  /// linear first integral of the flow.
  bool annihilated_by(const Eigen::VectorXd& w, double tol = 1e-12) const;

  /// Row i scaled by s: returns a new field with f_i replaced by s * f_i.
  QuadraticVectorField scale_row(int i, double s) const;

 private:
  void check_dim(const StateVector& x, const char* what) const;

  Eigen::VectorXd c0_;
  Eigen::MatrixXd lin_;
  std::vector<QuadEntry> sym_entries_;  // j <= k
  std::vector<double> dense_quad_;      // N^3, empty when sparse
};

nlohmann::json to_json(const QuadraticVectorField& vf);
QuadraticVectorField vector_field_from_json(const nlohmann::json& j);

}  // namespace birat
