// Acceptance suite: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "mdscm/analysis.hpp"
#include "mdscm/cli/config.hpp"
#include "mdscm/cli/runner.hpp"
#include "oracle.hpp"

using namespace mdscm;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

double rel_err(double got, double expected) {
  return std::fabs(got - expected) / std::max(std::fabs(expected), 1e-300);
}

// ---------------------------------------------------------------------------

Verdict c1_operator_oracle() {
  const int jmax = 12;
  const JacobiParams params{0.0, 0.0};
  const auto basis = build_basis(params, jmax);
  std::vector<std::vector<oracle::hp>> jac, mono;
  for (int j = 0; j <= jmax; ++j) {
    jac.push_back(oracle::jacobi_in_shifted_monomials(j, params.c, params.d));
    std::vector<oracle::hp> m(j + 1, oracle::hp(0));
    m[j] = 1;
    mono.push_back(std::move(m));
  }
  double inside = 0.0, recurrence = 0.0, quadrature = 0.0;
  for (double alpha : {0.3, 1.1, 1.5, 1.9}) {
    for (int g = 1; g <= 40; ++g) {
      const double y_in = -1.0 + 2.0 * g / 40.0;
      const double y_rec = 1.0 + 1.0 * g / 40.0;          // within one element: recurrence
      const double y_quad = 2.0 + 3.0 * g / 40.0;         // beyond 1 + delta: quadrature
      const auto in = frac_deriv_jacobi_inside(params, jmax, alpha, y_in);
      const auto rec = dtilde_jacobi(params, jmax, alpha, y_rec, TailMode::recurrence);
      const auto quad = frac_deriv_lagrange_all(basis, alpha, y_quad, Side::beyond, TailMode::quadrature);
      for (int j = 0; j <= jmax; ++j) {
        inside = std::max(inside, rel_err(in[j], static_cast<double>(oracle::left_derivative(jac[j], alpha, y_in))));
        recurrence = std::max(
            recurrence, rel_err(rec[j], static_cast<double>(oracle::history_derivative(jac[j], alpha, y_rec))));
        // (y+1)^j through its nodal values
        double q = 0.0;
        for (int i = 0; i <= jmax; ++i) q += std::pow(basis.nodes[i] + 1.0, j) * quad[i];
        quadrature = std::max(
            quadrature, rel_err(q, static_cast<double>(oracle::history_derivative(mono[j], alpha, y_quad))));
      }
    }
  }
  const double worst = std::max({inside, recurrence, quadrature});
  return {worst <= 1e-9, "inside " + sci(inside) + ", beyond recurrence " + sci(recurrence) +
                             ", beyond quadrature " + sci(quadrature) + " (bound 1e-9)"};
}

Verdict c2_mdfdm_exactness() {
  const std::vector<ElementMesh> meshes = {
      make_uniform(-1, 1, 16, 8),
      make_graded(-1, 1, 12, 6, 2.0),
      make_geometric(-1, 1, 10, 8, 0.5),
  };
  double worst = 0.0;
  for (const auto& mesh : meshes) {
    const int deg = mesh.min_degree();
    // p(x) = (x+1)^2 - (x+1)^3/2 + (x+1)^4/3 - ..., p(-1) = p'(-1) = 0
    std::vector<oracle::hp> a(deg + 1, oracle::hp(0));
    for (int n = 2; n <= deg; ++n) a[n] = oracle::hp((n % 2 == 0 ? 1.0 : -1.0) / (n - 1));
    auto p = [&](double x) {
      double v = 0.0;
      for (std::size_t n = a.size(); n-- > 0;) v = v * (x + 1) + static_cast<double>(a[n]);
      return v;
    };
    for (double alpha : {0.3, 1.1, 1.5, 1.9}) {
      const auto d = assemble_mdfdm(mesh, OrderField::constant(alpha));
      const auto u = mesh.sample(p);
      const Eigen::VectorXd v = d.matrix * Eigen::Map<const Eigen::VectorXd>(u.data(), u.size()) +
                                p(mesh.x_right()) * d.right_column;
      const auto xs = mesh.dof_coordinates();
      for (int g = 0; g < mesh.num_dofs(); ++g) {
        worst = std::max(worst, rel_err(v[g], static_cast<double>(oracle::left_derivative(a, alpha, xs[g]))));
      }
    }
  }
  return {worst <= 1e-8, "max relative error " + sci(worst) + " over uniform/graded/geometric meshes (bound 1e-8)"};
}

Verdict c3_spectrum() {
  bool pass = true;
  std::string detail;
  for (double alpha : {1.01, 1.99}) {
    for (int N : {4, 8}) {
      const auto mesh = make_uniform(-1, 1, 8, N);
      const auto d = assemble_mdfdm(mesh, OrderField::constant(alpha)).matrix;
      const double tau = alpha < 1.5 ? 1.0 : 100.0;
      const double bare = eigenvalues(d).max_real;
      const double pen = eigenvalues(d + assemble_penalty(mesh, tau)).max_real;
      pass = pass && bare > 0.0 && pen < 0.0;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s[a=%g N=%d: D %.3g, D+R(tau=%g) %.3g]", detail.empty() ? "" : " ", alpha,
                    N, bare, tau, pen);
      detail += buf;
    }
  }
  return {pass, "max Re eig " + detail};
}

Verdict c4_condition() {
  std::string detail;
  double k0 = 0.0, k1 = 0.0;
  for (int M : {8, 16, 32}) {
    const auto mesh = make_uniform(-1, 1, M, 4);
    const auto d = assemble_mdfdm(mesh, OrderField::constant(1.5)).matrix;
    // lambda = 0: the matrix is -(D + R)
    k0 = condition_number_l2(-d);
    k1 = condition_number_l2(-d - assemble_penalty(mesh, 1000.0));
    detail += (detail.empty() ? "" : " ") + std::string("[M=") + std::to_string(M) + " tau=0 " + sci(k0) +
              ", tau=1000 " + sci(k1) + "]";
  }
  return {k1 < k0, "L2 condition numbers " + detail + "; needs tau=1000 < tau=0 at M=32"};
}

HelmholtzProblem sine_problem(const OrderField& order, double tau) {
  HelmholtzProblem p;
  p.lambda = 1.0;
  p.order = order;
  p.tau = tau;
  p.rhs = [order](double x) { return std::sin(kPi * x) - sin_rl_series(order(x), x); };
  return p;
}

Verdict c5_spectral_convergence() {
  const std::vector<OrderField> orders = {
      OrderField::constant(1.1), OrderField::constant(1.5), OrderField::constant(1.9),
      OrderField::function([](double x, double) { return 1.1 + (x + 1) / 2.5; }, 1.1, 1.9, false,
                           "1.1+(x+1)/2.5")};
  bool pass = true;
  std::string detail;
  for (const auto& order : orders) {
    std::string seq;
    double prev = -1.0;
    bool ok = true;
    bool reached = false;
    for (int N = 4; N <= 20; N += 4) {
      const auto r = solve_helmholtz(sine_problem(order, 1000.0), make_uniform(-1, 1, 4, N));
      const double err = linf_error(r, [](double x) { return std::sin(kPi * x); });
      seq += (seq.empty() ? "" : ",") + sci(err);
      // once at 1e-8 the geometric decay requirement stops
      if (prev > 0.0 && !reached && !(err <= prev / 10.0)) ok = false;
      if (err <= 1e-8) reached = true;
      prev = err;
    }
    pass = pass && ok && reached;
    detail += (detail.empty() ? "" : " ") + std::string("[a=") + order.description() + ": " + seq + "]";
  }
  return {pass, "L-inf errors N=4..20 " + detail};
}

Verdict c6_penalty_necessity() {
  const double alpha = 1.5;
  auto exact = [alpha](double x) { return (1 - x) * std::pow(1 + x, alpha - 1); };
  HelmholtzProblem p;
  p.lambda = 0.0;
  p.order = OrderField::constant(alpha);
  p.rhs = [alpha](double) { return std::tgamma(1 + alpha); };
  const auto mesh = make_geometric(-1, 1, 16, 4, 0.5);
  p.tau = 0.0;
  const double plain = linf_error(solve_helmholtz(p, mesh), exact);
  p.tau = 1000.0;
  const double pen = linf_error(solve_helmholtz(p, mesh), exact);
  const bool ratio = 10.0 * pen <= plain;
  const bool bound = pen <= 1e-3;
  return {ratio && bound, "tau=0 " + sci(plain) + ", tau=1000 " + sci(pen) + " (ratio " + sci(plain / pen) +
                              (ratio ? " >= 10 ok" : " < 10") + "; absolute bound 1e-3 " +
                              (bound ? "met" : "not met") + ")"};
}

BurgersProblem burgers_case(OrderField order, double tau, double dt, double t_final) {
  BurgersProblem p;
  p.epsilon = 1.0;
  p.order = std::move(order);
  p.u0 = [](double x) { return std::sin(kPi * x); };
  p.tau = tau;
  p.dt = dt;
  p.t_final = t_final;
  return p;
}

Verdict c7_burgers_reference() {
  const auto coarse_mesh = make_uniform(-1, 1, 100, 3);
  const auto coarse = solve_burgers(burgers_case(OrderField::constant(1.5), 1e3, 1e-3, 1.0), coarse_mesh, {});
  const auto ref_mesh = make_graded(-1, 1, 200, 3, 3.0);
  const auto ref = solve_burgers(burgers_case(OrderField::constant(1.5), 1e5, 2.5e-4, 1.0), ref_mesh, {});
  bool finite = true;
  for (double v : coarse.u) finite = finite && std::isfinite(v);
  const bool zero_bc = coarse.u.front() == 0.0 && coarse.u.back() == 0.0;
  double diff = 0.0;
  for (std::size_t i = 0; i < coarse.x.size(); ++i) {
    diff = std::max(diff, std::fabs(coarse.u[i] - ref_mesh.interpolate(ref.unknowns, 0.0, 0.0, coarse.x[i])));
  }
  return {finite && zero_bc && diff <= 5e-3,
          std::string("finite ") + (finite ? "yes" : "no") + ", boundary zero " + (zero_bc ? "yes" : "no") +
              ", L-inf distance to graded M=200 reference " + sci(diff) + " (bound 5e-3)"};
}

Verdict c8_temporal_order() {
  const auto mesh = make_uniform(-1, 1, 20, 4);
  auto run = [&](double dt) {
    auto p = burgers_case(OrderField::constant(1.5), 1e3, dt, 1.0);
    p.stability_gate = false;
    return solve_burgers(p, mesh, {}).unknowns;
  };
  const auto ref = run(2.5e-4);
  std::vector<double> errs;
  for (double dt : {4e-3, 2e-3, 1e-3}) {
    const auto u = run(dt);
    double e = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) e = std::max(e, std::fabs(u[i] - ref[i]));
    errs.push_back(e);
  }
  const double p1 = std::log2(errs[0] / errs[1]);
  const double p2 = std::log2(errs[1] / errs[2]);
  const bool pass = std::fabs(p1 - 2.0) <= 0.3 && std::fabs(p2 - 2.0) <= 0.3;
  char buf[200];
  std::snprintf(buf, sizeof(buf), "errors dt=4e-3,2e-3,1e-3 vs dt=2.5e-4: %.3e, %.3e, %.3e; orders %.3f, %.3f (2.0 +- 0.3)",
                errs[0], errs[1], errs[2], p1, p2);
  return {pass, buf};
}

Verdict c9_variable_order(const std::filesystem::path& dir) {
  namespace cli = mdscm::cli;
  bool pass = true;
  std::string detail;
  for (int k = 1; k <= 5; ++k) {
    const std::string preset = "burgers-case" + std::to_string(k);
    std::map<std::string, std::string> o = {
        {"preset", preset}, {"tau", "1e5"}, {"output_dir", dir.string()}, {"name", "c9-case" + std::to_string(k)}};
    if (k == 1) o["alpha"] = "1.5";
    bool ok = true;
    try {
      const auto result = cli::run(cli::resolve_config(nlohmann::json::object(), o));
      for (const auto& f : result.files) {
        std::ifstream in(f);
        std::string line;
        std::getline(in, line);
        while (std::getline(in, line)) {
          const double v = std::stod(line.substr(line.find(',') + 1));
          ok = ok && std::isfinite(v);
        }
      }
      ok = ok && result.files.size() == 5;
    } catch (const std::exception& e) {
      ok = false;
      detail += std::string(" (") + e.what() + ")";
    }
    pass = pass && ok;
    detail += " case" + std::to_string(k) + (ok ? " ok" : " FAILED");
  }
  return {pass, "M=100 N=3 tau=1e5 dt=1e-3 t=1, finite snapshots at t=0.25,0.5,0.75,1:" + detail};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Verdict c10_determinism(const std::filesystem::path& dir) {
  namespace cli = mdscm::cli;
  int compared = 0;
  std::string mismatches;
  for (const auto& preset : cli::presets()) {
    std::vector<std::string> files[2];
    for (int rep = 0; rep < 2; ++rep) {
      const auto sub = dir / ("run" + std::to_string(rep));
      const auto result = cli::run(cli::resolve_config(
          nlohmann::json::object(), {{"preset", preset.name}, {"output_dir", sub.string()}}));
      files[rep] = result.files;
    }
    if (files[0].size() != files[1].size()) {
      mismatches += " " + preset.name;
      continue;
    }
    for (std::size_t i = 0; i < files[0].size(); ++i) {
      ++compared;
      if (slurp(files[0][i]) != slurp(files[1][i]) || slurp(files[0][i]).empty()) mismatches += " " + files[0][i];
    }
  }
  return {mismatches.empty(), std::to_string(cli::presets().size()) + " presets run twice, " +
                                  std::to_string(compared) + " CSV files compared" +
                                  (mismatches.empty() ? ", all byte-identical" : ", differing:" + mismatches)};
}

}  // namespace

int main() {
  const auto scratch = std::filesystem::temp_directory_path() / "mdscm_acceptance";
  std::filesystem::remove_all(scratch);
  struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> check;
  };
  const std::vector<Criterion> criteria = {
      {1, "fractional operator matches the monomial closed form", c1_operator_oracle},
      {2, "MDFDM polynomial exactness", c2_mdfdm_exactness},
      {3, "spectrum without and with penalty", c3_spectrum},
      {4, "penalty lowers the condition number at the largest M", c4_condition},
      {5, "Helmholtz spectral convergence", c5_spectral_convergence},
      {6, "penalty necessity on the geometric mesh", c6_penalty_necessity},
      {7, "Burgers case 1 against a self-converged reference", c7_burgers_reference},
      {8, "Burgers temporal order", c8_temporal_order},
      {9, "variable-order Burgers cases stay finite", [&] { return c9_variable_order(scratch / "c9"); }},
      {10, "byte-identical preset reruns", [&] { return c10_determinism(scratch / "c10"); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!v.pass) ++failures;
    std::printf("C%-2d %s  %s: %s [%.1fs]\n", c.id, v.pass ? "PASS" : "FAIL", c.title, v.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::filesystem::remove_all(scratch);
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
