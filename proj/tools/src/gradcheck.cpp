#include "vctl/cli/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vctl/cli/csv.hpp"
#include "vctl/sensitivity/adjoint.hpp"
#include "vctl/sensitivity/gradient.hpp"
#include "vctl/sensitivity/tangent.hpp"

namespace vctl::cli {

ControlTrajectory random_direction(int coils, const PhaseGrid& grid, int modes, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  ControlTrajectory d(coils, grid.nt + 1);
  const double T = grid.final_time();
  for (int j = 0; j < coils; ++j) {
    std::vector<double> a(modes), b(modes);
    for (int m = 0; m < modes; ++m) {
      a[m] = coef(rng);
      b[m] = coef(rng);
    }
    for (int k = 0; k <= grid.nt; ++k) {
      const double s = std::numbers::pi * grid.time(k) / T;
      double v = 0.0;
      for (int m = 0; m < modes; ++m) v += a[m] * std::sin((m + 1) * s) + b[m] * std::cos((m + 1) * s);
      d(j, k) = v;
    }
  }
  const double peak = d.max_abs();
  if (peak > 0.0) d.scale(1.0 / peak);
  return d;
}

namespace {

double relative(double a, double ref) {
  const double den = std::abs(ref);
  return den > 0.0 ? std::abs(a - ref) / den : std::abs(a - ref);
}

}  // namespace

GradcheckReport gradient_check(ReducedProblem& problem, const ControlTrajectory& u, const GradcheckConfig& cfg,
                               const std::function<void(const std::string&)>& log) {
  const auto say = [&](const std::string& s) {
    if (log) log(s);
  };
  GradcheckReport rep;
  const PhaseGrid& g = problem.grid();
  rep.base = problem.forward(u);
  AdjointResult adj;
  if (problem.weights().tracking) adj = solve_adjoint(rep.base, problem.target(), problem.weights());
  const ControlTrajectory grad = assemble_gradient(adj, u, problem.model(), problem.weights(), g.dt);
  const ControlTrajectory reg_grad = regularization_gradient(u, problem.model(), problem.weights(), g.dt);

  std::vector<double> eps = cfg.epsilons;
  std::sort(eps.begin(), eps.end());
  std::mt19937_64 rng(cfg.seed);
  for (int dir = 0; dir < cfg.directions; ++dir) {
    const ControlTrajectory d = random_direction(problem.model().coils(), g, cfg.modes, rng);
    const double a = grad.dot(d);
    double t = reg_grad.dot(d);
    if (problem.weights().tracking) t += tracking_derivative(rep.base, problem.target(), solve_tangent(rep.base, problem.model(), d));
    std::vector<double> fd(eps.size());
    for (std::size_t e = 0; e < eps.size(); ++e) {
      fd[e] = fd_gradient(problem, u, d, eps[e]);
      rep.rows.push_back({dir, eps[e], fd[e], a, relative(fd[e], a)});
      say("direction " + std::to_string(dir) + " eps " + format_number(eps[e]) + " fd " + format_number(fd[e]) +
          " adjoint " + format_number(a));
    }
    std::size_t pick = 0;
    for (std::size_t e = 0; e + 1 < eps.size(); ++e)
      if (relative(fd[e], fd[e + 1]) <= 0.01) {
        pick = e;
        break;
      }
    rep.plateau_eps.push_back(eps[pick]);
    rep.plateau_rel_err.push_back(relative(fd[pick], a));
    rep.adjoint_value.push_back(a);
    rep.tangent_value.push_back(t);
    rep.duality_gap.push_back(relative(t, a));
  }
  return rep;
}

void write_gradcheck_csv(const std::filesystem::path& path, const GradcheckReport& rep) {
  CsvWriter w(path, {"direction", "eps", "fd_value", "adjoint_value", "rel_err", "tangent_value", "duality_gap",
                     "plateau"});
  for (const GradcheckRow& r : rep.rows)
    w.row({static_cast<double>(r.direction), r.eps, r.fd, r.adjoint, r.rel_err, rep.tangent_value[r.direction],
           rep.duality_gap[r.direction], r.eps == rep.plateau_eps[r.direction] ? 1.0 : 0.0});
}

}  // namespace vctl::cli
