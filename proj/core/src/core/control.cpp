#include "vctl/core/control.hpp"

#include <algorithm>
#include <cmath>

#include "vctl/core/error.hpp"
#include "vctl/core/profiles.hpp"

namespace vctl {

Vec2 CoilSpec::evaluate(const Vec2& x) const {
  const Vec2 y = x - center;
  const double w = smooth_bump(norm(y) / radius);
  if (w == 0.0) return {};
  if (shape == CoilShape::ring) return perp(y) * (amplitude * w / radius);
  return Vec2{std::cos(angle), std::sin(angle)} * (amplitude * w);
}

std::string to_string(CoilShape shape) { return shape == CoilShape::ring ? "ring" : "straight"; }

CoilShape coil_shape_from_string(const std::string& name) {
  if (name == "ring") return CoilShape::ring;
  if (name == "straight") return CoilShape::straight;
  throw ConfigError("unknown coil shape '" + name + "' (expected ring or straight)");
}

ControlModel::ControlModel(const PhaseGrid& grid, std::vector<CoilSpec> coils) : specs_(std::move(coils)) {
  const int nx = grid.nx;
  std::vector<double> radii;
  for (const CoilSpec& spec : specs_) {
    if (!(spec.radius > 0.0)) throw ConfigError("coil radius must be positive");
    FaceVector z(nx);
    for (int i = 1; i < nx; ++i)
      for (int j = 0; j < nx; ++j) {
        z.c1[face1_index(nx, i, j)] = spec.evaluate({grid.x_line(i), grid.x_center(j)}).x1;
        z.c2[face2_index(nx, j, i)] = spec.evaluate({grid.x_center(j), grid.x_line(i)}).x2;
      }
    profiles_.push_back(std::move(z));
    radii.push_back(spec.support_radius());
  }
  finish(grid, std::move(radii));
}

ControlModel::ControlModel(const PhaseGrid& grid, std::vector<FaceVector> profiles, std::vector<double> radii)
    : profiles_(std::move(profiles)) {
  if (radii.size() != profiles_.size()) throw ConfigError("one support radius per coil profile required");
  const int nx = grid.nx;
  for (std::size_t k = 0; k < profiles_.size(); ++k) {
    const FaceVector& z = profiles_[k];
    if (z.nx != nx) throw ConfigError("coil profile resolution does not match the grid");
    for (int i = 0; i <= nx; ++i)
      for (int j = 0; j < nx; ++j) {
        const bool out1 = norm({grid.x_line(i), grid.x_center(j)}) >= radii[k];
        const bool out2 = norm({grid.x_center(j), grid.x_line(i)}) >= radii[k];
        if ((out1 && z.c1[face1_index(nx, i, j)] != 0.0) || (out2 && z.c2[face2_index(nx, j, i)] != 0.0))
          throw ConfigError("coil profile " + std::to_string(k) + " does not vanish outside its support radius");
      }
  }
  finish(grid, std::move(radii));
}

void ControlModel::finish(const PhaseGrid& grid, std::vector<double> radii) {
  nx_ = grid.nx;
  dx_ = grid.dx();
  radii_ = std::move(radii);
  c_.clear();
  for (std::size_t k = 0; k < profiles_.size(); ++k) {
    const double c = inner(profiles_[k], profiles_[k], dx_);
    if (!(c > 0.0)) throw ConfigError("coil profile " + std::to_string(k) + " vanishes on the grid");
    c_.push_back(c);
  }
  support_radius_ = radii_.empty() ? 0.0 : *std::max_element(radii_.begin(), radii_.end());
}

FaceVector ControlModel::assemble(std::span<const double> weights) const {
  FaceVector u(nx_);
  for (int j = 0; j < coils(); ++j)
    if (weights[j] != 0.0) u.axpy(weights[j], profiles_[j]);
  return u;
}

std::vector<double> ControlModel::project(const FaceVector& field) const {
  std::vector<double> out(profiles_.size());
  for (std::size_t j = 0; j < profiles_.size(); ++j) out[j] = inner(profiles_[j], field, dx_);
  return out;
}

bool ControlTrajectory::feasible(double tolerance) const {
  return std::all_of(values_.begin(), values_.end(), [&](double v) { return std::abs(v) <= 1.0 + tolerance; });
}

double ControlTrajectory::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> ControlTrajectory::at_half_step(int n) const {
  std::vector<double> out(coils_);
  for (int j = 0; j < coils_; ++j) out[j] = 0.5 * ((*this)(j, n) + (*this)(j, n + 1));
  return out;
}

void ControlTrajectory::axpy(double a, const ControlTrajectory& other) {
  for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += a * other.values_[k];
}

void ControlTrajectory::scale(double a) {
  for (double& v : values_) v *= a;
}

double ControlTrajectory::dot(const ControlTrajectory& other) const {
  double s = 0.0;
  for (std::size_t k = 0; k < values_.size(); ++k) s += values_[k] * other.values_[k];
  return s;
}

double ControlTrajectory::norm() const { return std::sqrt(dot(*this)); }

}  // namespace vctl
