#include "vctl/maxwell/wave_oracle.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace vctl {
namespace {

struct GaussRule {
  std::vector<double> nodes;  // on [-1, 1]
  std::vector<double> weights;
};

GaussRule make_gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = rule.weights[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

const GaussRule& gauss_legendre(int n) {
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

// (1/2pi) * integral over |y - x| < sigma of q(y) / sqrt(sigma^2 - |x - y|^2) dy.
template <class Q>
double disc_mean(const Q& q, const Vec2& x, double sigma, const GaussRule& rule, int angular) {
  if (sigma <= 0.0) return 0.0;
  double total = 0.0;
  const double dtheta = 2.0 * std::numbers::pi / angular;
  for (int a = 0; a < angular; ++a) {
    const double theta = a * dtheta;
    const Vec2 omega{std::cos(theta), std::sin(theta)};
    double radial = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
      const double s = 0.5 * sigma * (rule.nodes[k] + 1.0);
      const double r = std::sqrt(std::max(0.0, sigma * sigma - s * s));
      radial += rule.weights[k] * q(x + omega * r);
    }
    total += 0.5 * sigma * radial;
  }
  return total * dtheta / (2.0 * std::numbers::pi);
}

}  // namespace

double wave_oracle(const SpaceTimeFunction& source, const SpaceFunction& g, const SpaceFunction& h, double t,
                   const Vec2& x, const WaveOracleOptions& options) {
  if (std::abs(x.x1) > options.extent || std::abs(x.x2) > options.extent)
    throw std::domain_error("wave_oracle evaluation point outside the grid");
  if (t < 0.0) throw std::domain_error("wave_oracle needs t >= 0");
  if (t == 0.0) return g ? g(x) : 0.0;

  const GaussRule& rule = gauss_legendre(options.radial_nodes);
  const int angular = options.angular_nodes;
  double u = 0.0;

  if (source) {
    const int nt = options.time_nodes;
    const double dtau = t / nt;
    for (int k = 0; k <= nt; ++k) {
      const double tau = k * dtau;
      const double w = (k == 0 || k == nt) ? 0.5 : 1.0;
      auto q = [&](const Vec2& y) { return source(tau, y); };
      u += w * dtau * disc_mean(q, x, t - tau, rule, angular);
    }
  }
  if (h) u += disc_mean(h, x, t, rule, angular);
  if (g) {
    const double step = 1e-3 * t;
    auto m = [&](double s) { return disc_mean(g, x, s, rule, angular); };
    u += (m(t - 2 * step) - 8.0 * m(t - step) + 8.0 * m(t + step) - m(t + 2 * step)) / (12.0 * step);
  }
  return u;
}

}  // namespace vctl
