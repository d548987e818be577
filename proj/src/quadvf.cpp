#include "birat/quadvf.hpp"

#include "birat/errors.hpp"

#include <cmath>
#include <map>
#include <string>
#include <tuple>

namespace birat {

namespace {

std::size_t tensor_index(int n, int i, int j, int k) {
  return (static_cast<std::size_t>(i) * n + j) * n + k;
}

}  // namespace

QuadraticVectorField::QuadraticVectorField(Eigen::VectorXd c0, Eigen::MatrixXd lin,
                                           std::span<const QuadEntry> quad)
    : c0_(std::move(c0)), lin_(std::move(lin)) {
  const int n = dim();
  if (n <= 0) throw InvalidArgument("vector field dimension must be positive");
  if (lin_.rows() != n || lin_.cols() != n) {
    throw DimensionMismatch("linear part is " + std::to_string(lin_.rows()) + "x" +
                            std::to_string(lin_.cols()) + ", expected " + std::to_string(n) +
                            "x" + std::to_string(n));
  }
  if (!c0_.allFinite() || !lin_.allFinite()) {
    throw InvalidArgument("vector field coefficients must be finite");
  }

  // Monomial coefficients keyed by (i, min(j,k), max(j,k)).
  std::map<std::tuple<int, int, int>, double> monomials;
  for (const auto& e : quad) {
    if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n || e.k < 0 || e.k >= n) {
      throw DimensionMismatch("quadratic entry index out of range for dim " + std::to_string(n));
    }
    if (!std::isfinite(e.value)) throw InvalidArgument("vector field coefficients must be finite");
    monomials[{e.i, std::min(e.j, e.k), std::max(e.j, e.k)}] += e.value;
  }

  for (const auto& [key, m] : monomials) {
    if (m == 0.0) continue;
    const auto [i, j, k] = key;
    sym_entries_.push_back({i, j, k, j == k ? m : 0.5 * m});
  }

  if (n <= kDenseLimit) {
    dense_quad_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
    for (const auto& e : sym_entries_) {
      dense_quad_[tensor_index(n, e.i, e.j, e.k)] = e.value;
      dense_quad_[tensor_index(n, e.i, e.k, e.j)] = e.value;
    }
  }
}

QuadraticVectorField QuadraticVectorField::zero(int dim) {
  return QuadraticVectorField(Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Zero(dim, dim), {});
}

double QuadraticVectorField::quad(int i, int j, int k) const {
  const int n = dim();
  if (!dense_quad_.empty()) return dense_quad_[tensor_index(n, i, j, k)];
  const int lo = std::min(j, k);
  const int hi = std::max(j, k);
  for (const auto& e : sym_entries_) {
    if (e.i == i && e.j == lo && e.k == hi) return e.value;
  }
  return 0.0;
}

void QuadraticVectorField::check_dim(const StateVector& x, const char* what) const {
  if (x.size() != dim()) {
    throw DimensionMismatch(std::string(what) + " has length " + std::to_string(x.size()) +
                            ", vector field has dim " + std::to_string(dim()));
  }
}

StateVector QuadraticVectorField::evaluate(const StateVector& x) const {
  check_dim(x, "state");
  StateVector f = c0_ + lin_ * x;
  for (const auto& e : sym_entries_) {
    const double w = e.j == e.k ? 1.0 : 2.0;
    f[e.i] += w * e.value * x[e.j] * x[e.k];
  }
  return f;
}

Eigen::MatrixXd QuadraticVectorField::jacobian(const StateVector& x) const {
  check_dim(x, "state");
  Eigen::MatrixXd jac = lin_;
  for (const auto& e : sym_entries_) {
    if (e.j == e.k) {
      jac(e.i, e.j) += 2.0 * e.value * x[e.j];
    } else {
      jac(e.i, e.j) += 2.0 * e.value * x[e.k];
      jac(e.i, e.k) += 2.0 * e.value * x[e.j];
    }
  }
  return jac;
}

Eigen::SparseMatrix<double> QuadraticVectorField::jacobian_sparse(const StateVector& x) const {
  check_dim(x, "state");
  const int n = dim();
  std::vector<Eigen::Triplet<double>> triplets;
  for (int c = 0; c < n; ++c) {
    for (int r = 0; r < n; ++r) {
      if (lin_(r, c) != 0.0) triplets.emplace_back(r, c, lin_(r, c));
    }
  }
  for (const auto& e : sym_entries_) {
    if (e.j == e.k) {
      triplets.emplace_back(e.i, e.j, 2.0 * e.value * x[e.j]);
    } else {
      triplets.emplace_back(e.i, e.j, 2.0 * e.value * x[e.k]);
      triplets.emplace_back(e.i, e.k, 2.0 * e.value * x[e.j]);
    }
  }
  Eigen::SparseMatrix<double> jac(n, n);
  jac.setFromTriplets(triplets.begin(), triplets.end());  // duplicates are summed
  return jac;
}

StateVector QuadraticVectorField::polarized_rhs(const StateVector& x, const StateVector& xt) const {
  check_dim(x, "state");
  check_dim(xt, "shifted state");
  StateVector q = c0_ + 0.5 * lin_ * (x + xt);
  for (const auto& e : sym_entries_) {
    if (e.j == e.k) {
      q[e.i] += e.value * x[e.j] * xt[e.j];
    } else {
      q[e.i] += e.value * (x[e.j] * xt[e.k] + xt[e.j] * x[e.k]);
    }
  }
  return q;
}

bool QuadraticVectorField::annihilated_by(const Eigen::VectorXd& w, double tol) const {
  check_dim(w, "functional");
  if (std::abs(w.dot(c0_)) > tol) return false;
  if ((w.transpose() * lin_).cwiseAbs().maxCoeff() > tol) return false;
  std::map<std::pair<int, int>, double> contracted;
  for (const auto& e : sym_entries_) contracted[{e.j, e.k}] += w[e.i] * e.value;
  for (const auto& [jk, v] : contracted) {
    if (std::abs(v) > tol) return false;
  }
  return true;
}

QuadraticVectorField QuadraticVectorField::scale_row(int i, double s) const {
  Eigen::VectorXd c0 = c0_;
  Eigen::MatrixXd lin = lin_;
  c0[i] *= s;
  lin.row(i) *= s;
  std::vector<QuadEntry> raw;
  raw.reserve(sym_entries_.size());
  for (auto e : sym_entries_) {
    if (e.i == i) e.value *= s;
    // back to monomial coefficients
    raw.push_back({e.i, e.j, e.k, e.j == e.k ? e.value : 2.0 * e.value});
  }
  return QuadraticVectorField(std::move(c0), std::move(lin), raw);
}

nlohmann::json to_json(const QuadraticVectorField& vf) {
  const int n = vf.dim();
  nlohmann::json j;
  j["dim"] = n;
  j["c0"] = std::vector<double>(vf.constant().data(), vf.constant().data() + n);
  auto lin = nlohmann::json::array();
  for (int r = 0; r < n; ++r) {
    auto row = nlohmann::json::array();
    for (int c = 0; c < n; ++c) row.push_back(vf.linear()(r, c));
    lin.push_back(std::move(row));
  }
  j["lin"] = std::move(lin);
  auto quad = nlohmann::json::array();
  for (const auto& e : vf.quad_entries()) quad.push_back({e.i, e.j, e.k, e.value});
  j["quad"] = std::move(quad);
  return j;
}

QuadraticVectorField vector_field_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("dim").get<int>();
    if (n <= 0) throw ParseError("vector field JSON: dim must be positive");
    const auto c0v = j.at("c0").get<std::vector<double>>();
    if (static_cast<int>(c0v.size()) != n) throw ParseError("vector field JSON: c0 length != dim");
    Eigen::VectorXd c0 = Eigen::Map<const Eigen::VectorXd>(c0v.data(), n);
    const auto linv = j.at("lin").get<std::vector<std::vector<double>>>();
    if (static_cast<int>(linv.size()) != n) throw ParseError("vector field JSON: lin must be dim x dim");
    Eigen::MatrixXd lin(n, n);
    for (int r = 0; r < n; ++r) {
      if (static_cast<int>(linv[r].size()) != n) {
        throw ParseError("vector field JSON: lin must be dim x dim");
      }
      for (int c = 0; c < n; ++c) lin(r, c) = linv[r][c];
    }
    std::vector<QuadEntry> raw;
    for (const auto& q : j.at("quad")) {
      if (!q.is_array() || q.size() != 4) {
        throw ParseError("vector field JSON: quad entries are [i, j, k, value]");
      }
      QuadEntry e{q[0].get<int>(), q[1].get<int>(), q[2].get<int>(), q[3].get<double>()};
      if (e.j > e.k) throw ParseError("vector field JSON: quad entries must have j <= k");
      // A listed entry with j < k stands for both quad_ijk and quad_ikj.
      if (e.j != e.k) e.value *= 2.0;
      raw.push_back(e);
    }
    return QuadraticVectorField(std::move(c0), std::move(lin), raw);
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("vector field JSON: ") + ex.what());
  }
}

}  // namespace birat
