#pragma once

#include <span>
#include <string>
#include <vector>

#include "vctl/core/field_state.hpp"
#include "vctl/core/grid.hpp"

namespace vctl {

enum class CoilShape { ring, straight };

/// Analytic description of one coil current profile z_j.
///
/// ring:     z(x) = A bump(|x-c|/R) (x-c)^perp / R   (divergence free loop)
/// straight: z(x) = A bump(|x-c|/R) (cos a, sin a)
struct CoilSpec {
  CoilShape shape = CoilShape::ring;
  Vec2 center;
  double radius = 1.0;
  double amplitude = 1.0;
  double angle = 0.0;

  Vec2 evaluate(const Vec2& x) const;
  /// Radius r_j of the origin-centred disc outside of which z_j vanishes.
  double support_radius() const { return norm(center) + radius; }
  friend bool operator==(const CoilSpec&, const CoilSpec&) = default;
};

std::string to_string(CoilShape shape);
CoilShape coil_shape_from_string(const std::string& name);

/// Fixed coil profiles z_j sampled on the staggered faces with c_j = ||z_j||^2.
class ControlModel {
 public:
  ControlModel() = default;
  ControlModel(const PhaseGrid& grid, std::vector<CoilSpec> coils);
  /// Pre-sampled profiles; radii are the support radii r_j.
  ControlModel(const PhaseGrid& grid, std::vector<FaceVector> profiles, std::vector<double> radii);

  int coils() const { return static_cast<int>(profiles_.size()); }
  const FaceVector& profile(int j) const { return profiles_[j]; }
  /// c_j = ||z_j||^2_{L^2} by face quadrature.
  double norm_constant(int j) const { return c_[j]; }
  const std::vector<double>& norm_constants() const { return c_; }
  /// L = max_j r_j.
  double support_radius() const { return support_radius_; }
  const std::vector<CoilSpec>& specs() const { return specs_; }
  int nx() const { return nx_; }

  /// U = sum_j weights[j] z_j on faces.
  FaceVector assemble(std::span<const double> weights) const;
  /// dx^2 sum_faces z_j . field for every coil.
  std::vector<double> project(const FaceVector& field) const;

 private:
  void finish(const PhaseGrid& grid, std::vector<double> radii);

  int nx_ = 0;
  double dx_ = 0.0;
  std::vector<CoilSpec> specs_;
  std::vector<FaceVector> profiles_;
  std::vector<double> c_;
  std::vector<double> radii_;
  double support_radius_ = 0.0;
};

/// Coil intensities u_j(t_k) on the time grid t_k = k dt, k = 0..nt.
class ControlTrajectory {
 public:
  ControlTrajectory() = default;
  ControlTrajectory(int coils, int times, double value = 0.0)
      : coils_(coils), times_(times), values_(static_cast<std::size_t>(coils) * times, value) {}

  int coils() const { return coils_; }
  int times() const { return times_; }
  double& operator()(int j, int k) { return values_[static_cast<std::size_t>(j) * times_ + k]; }
  double operator()(int j, int k) const { return values_[static_cast<std::size_t>(j) * times_ + k]; }
  std::span<double> coil(int j) { return {values_.data() + static_cast<std::size_t>(j) * times_, static_cast<std::size_t>(times_)}; }
  std::span<const double> coil(int j) const {
    return {values_.data() + static_cast<std::size_t>(j) * times_, static_cast<std::size_t>(times_)};
  }
  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }

  /// |u_j(t_k)| <= 1 everywhere.
  bool feasible(double tolerance = 0.0) const;
  double max_abs() const;
  /// Intensities of all coils at half step n + 1/2 (average of nodes n and n+1).
  std::vector<double> at_half_step(int n) const;

  void axpy(double a, const ControlTrajectory& other);
  void scale(double a);
  /// Plain Euclidean dot product over all entries.
  double dot(const ControlTrajectory& other) const;
  double norm() const;

  friend bool operator==(const ControlTrajectory&, const ControlTrajectory&) = default;

 private:
  int coils_ = 0;
  int times_ = 0;
  std::vector<double> values_;
};

}  // namespace vctl
