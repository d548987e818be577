#include "birat/verify.hpp"

#include "birat/errors.hpp"
#include "birat/geomcheck.hpp"
#include "birat/kahan.hpp"
#include "birat/lvfamily.hpp"
#include "birat/models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace birat {

namespace {

CheckResult below(std::string name, double value, double threshold) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = threshold;
  c.passed = std::isfinite(value) && value < threshold;
  return c;
}

CheckResult within(std::string name, double value, double lo, double hi) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.threshold = hi;
  c.passed = value >= lo && value <= hi;
  std::ostringstream os;
  os << "expected in [" << lo << ", " << hi << "]";
  c.detail = os.str();
  return c;
}

std::vector<Eigen::Vector2d> sample_box(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<Eigen::Vector2d> out;
  for (int i = 0; i < n; ++i) {
    const double x = u(rng);
    out.emplace_back(x, u(rng));
  }
  return out;
}

double max_symplectic_residual(const LVParams& p, const std::vector<Eigen::Vector2d>& pts,
                               double h) {
  double worst = 0.0;
  for (const auto& q : pts) {
    worst = std::max(worst, std::abs(symplectic_residual(p, q[0], q[1], h)));
  }
  return worst;
}

void conservation(std::vector<CheckResult>& out) {
  const DimensionlessEnzymeParams p;
  const auto vf = enzyme_diml_vf(p);
  const KahanStepConfig cfg{1e-3, std::nullopt, 1e-12};
  const auto traj = integrate([&](const StateVector& s) { return kahan_step(vf, s, cfg); },
                              Eigen::Vector3d(1, 0, 0), cfg.h, 100000, "enzyme3 kahan");
  out.push_back(below("conservation/enzyme3 x+eps*y+z", conservation_drift(traj, Eigen::Vector3d(1, p.eps, 1)),
                      1e-10));

  const EnzymeParams ep{1.0, 0.5, 0.1, 1.0, 1e-2};
  const auto vf4 = enzyme_vf(ep);
  const auto traj4 = integrate([&](const StateVector& s) { return kahan_step(vf4, s, cfg); },
                               Eigen::Vector4d(ep.s0, ep.e0, 0, 0), cfg.h, 20000, "enzyme4 kahan");
  out.push_back(below("conservation/enzyme4 e+c", conservation_drift(traj4, Eigen::Vector4d(0, 1, 1, 0)),
                      1e-10));
  out.push_back(below("conservation/enzyme4 s+c+p",
                      conservation_drift(traj4, Eigen::Vector4d(1, 0, 1, 1)), 1e-10));
}

void symplectic(std::vector<CheckResult>& out, const VerifyOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  const auto pts = sample_box(rng, 100, 0.2, 2.0);
  const double tol = opts.tol.value_or(1e-9);
  const double h = 0.1;
  const std::pair<const char*, LVParams> sets[] = {
      {"kahan", presets::kahan()}, {"mickens", presets::mickens()}, {"periodic_vi", presets::periodic_vi()}};
  for (const auto& [name, p] : sets) {
    out.push_back(below(std::string("symplectic/") + name, max_symplectic_residual(p, pts, h), tol));
  }
  CheckResult c;
  c.name = "symplectic/decay_iv d=1";
  c.expected_fail = true;
  c.value = max_symplectic_residual(presets::decay_iv(1), pts, h);
  c.threshold = 1e-4;
  c.passed = c.value > c.threshold;
  c.detail = "not symplectic: residual must exceed the threshold somewhere";
  out.push_back(c);
}

void roundtrip(std::vector<CheckResult>& out, const VerifyOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  const double tol = opts.tol.value_or(1e-9);
  const double h = 0.01;
  for (CaseLabel c : kAllCases) {
    const LVParams p = random_case_representative(c, rng);
    const auto pts = sample_box(rng, 50, 0.2, 2.0);
    double worst = 0.0;
    std::string failure;
    for (const auto& q : pts) {
      try {
        const Eigen::Vector2d fwd = lv_step(p, q[0], q[1], h);
        const Eigen::Vector2d back = lv_inverse_step(p, fwd[0], fwd[1], h);
        worst = std::max(worst, (back - q).cwiseAbs().maxCoeff());
      } catch (const Error& ex) {
        failure = ex.what();
        worst = std::numeric_limits<double>::infinity();
      }
    }
    auto r = below("roundtrip/case " + std::string(to_string(c)), worst, tol);
    r.detail = p.to_string() + (failure.empty() ? "" : " (" + failure + ")");
    out.push_back(r);
  }

  const double tight = opts.tol.value_or(1e-10);
  const auto vf = enzyme_diml_vf(DimensionlessEnzymeParams{});
  const KahanStepConfig cfg{1e-3, std::nullopt, 1e-12};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<StateVector> pts3;
  for (int i = 0; i < 50; ++i) {
    const double x = u(rng), y = u(rng);
    pts3.push_back(Eigen::Vector3d(x, y, u(rng)));
  }
  const auto rep = roundtrip_error([&](const StateVector& s) { return kahan_step(vf, s, cfg); },
                                   [&](const StateVector& s) { return kahan_inverse_step(vf, s, cfg); },
                                   pts3);
  auto enzyme = below("roundtrip/enzyme3 kahan", rep.failures.empty() ? rep.max_error
                                                                      : std::numeric_limits<double>::infinity(),
                      tight);
  out.push_back(enzyme);

  const SchnakenbergParams sp{0.1, 0.5};
  std::vector<StateVector> pts2;
  for (const auto& q : sample_box(rng, 50, 0.2, 2.0)) pts2.push_back(q);
  const auto srep = roundtrip_error(
      [&](const StateVector& s) { return StateVector(schnakenberg_step(sp, s[0], s[1], 0.01)); },
      [&](const StateVector& s) { return StateVector(schnakenberg_inverse_step(sp, s[0], s[1], 0.01)); },
      pts2);
  out.push_back(below("roundtrip/schnakenberg",
                      srep.failures.empty() ? srep.max_error : std::numeric_limits<double>::infinity(),
                      tight));
}

void convergence(std::vector<CheckResult>& out) {
  const auto vf = lv_vf();
  const std::vector<double> hs{0.02, 0.01, 0.005, 0.0025};
  const Eigen::Vector2d x0(2.0, 0.5);
  const auto family = [&](std::optional<int> order) {
    return [&vf, order](const StateVector& s, double h) {
      return kahan_step(vf, s, KahanStepConfig{h, order, 1e-12});
    };
  };
  const auto kahan = convergence_order(family(std::nullopt), x0, 1.0, hs);
  out.push_back(within("convergence/kahan lv", kahan.slope, 1.8, 2.2));
  const auto euler = convergence_order(family(0), x0, 1.0, hs);
  out.push_back(within("convergence/euler lv", euler.slope, 0.8, 1.2));
}

void multipliers(std::vector<CheckResult>& out) {
  const LVParams p = presets::kahan();
  for (double h : {0.01, 0.1}) {
    const Eigen::Matrix2d jac = lv_step_jacobian(p, 1.0, 1.0, h);
    const Eigen::Vector2cd ev = Eigen::EigenSolver<Eigen::Matrix2d>(jac, false).eigenvalues();
    const std::complex<double> i(0.0, 1.0);
    const std::complex<double> mu[] = {(1.0 + i * h / 2.0) / (1.0 - i * h / 2.0),
                                       (1.0 - i * h / 2.0) / (1.0 + i * h / 2.0)};
    const double d_direct = std::max(std::abs(ev[0] - mu[0]), std::abs(ev[1] - mu[1]));
    const double d_swapped = std::max(std::abs(ev[0] - mu[1]), std::abs(ev[1] - mu[0]));
    std::ostringstream tag;
    tag << "h=" << h;
    out.push_back(below("multipliers/kahan lv match " + tag.str(), std::min(d_direct, d_swapped), 1e-8));
    const double modulus = std::max(std::abs(std::abs(ev[0]) - 1.0), std::abs(std::abs(ev[1]) - 1.0));
    out.push_back(below("multipliers/kahan lv unit modulus " + tag.str(), modulus, 1e-10));
    const double agree = multiplier_agreement(jac, lv_vf(), Eigen::Vector2d(1, 1), h);
    out.push_back(below("multipliers/kahan lv vs field spectrum " + tag.str(), agree, 1e-8));
  }
}

void run_one(std::string_view name, const VerifyOptions& opts, std::vector<CheckResult>& out) {
  if (name == "conservation") {
    conservation(out);
  } else if (name == "symplectic") {
    symplectic(out, opts);
  } else if (name == "roundtrip") {
    roundtrip(out, opts);
  } else if (name == "convergence") {
    convergence(out);
  } else if (name == "multipliers") {
    multipliers(out);
  }
}

}  // namespace

bool SuiteReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool is_suite(std::string_view name) {
  return std::find(std::begin(kSuiteNames), std::end(kSuiteNames), name) != std::end(kSuiteNames);
}

SuiteReport run_suite(std::string_view name, const VerifyOptions& opts) {
  if (!is_suite(name)) {
    throw InvalidArgument("unknown suite '" + std::string(name) +
                          "' (expected conservation, symplectic, roundtrip, convergence, multipliers or all)");
  }
  SuiteReport r;
  r.suite = std::string(name);
  r.seed = opts.seed;
  if (name == "all") {
    for (auto s : kSuiteNames) {
      if (s != "all") run_one(s, opts, r.checks);
    }
  } else {
    run_one(name, opts, r.checks);
  }
  return r;
}

nlohmann::json to_json(const SuiteReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json j{{"name", c.name},
                     {"passed", c.passed},
                     {"expected_fail", c.expected_fail},
                     {"threshold", c.threshold}};
    j["value"] = std::isfinite(c.value) ? nlohmann::json(c.value) : nlohmann::json(nullptr);
    if (!c.detail.empty()) j["detail"] = c.detail;
    checks.push_back(std::move(j));
  }
  return {{"suite", r.suite}, {"seed", r.seed}, {"passed", r.all_passed()}, {"checks", checks}};
}

}  // namespace birat
