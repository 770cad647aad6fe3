#pragma once

// p = 1 closed forms: planar rotations R_{θ,U} = exp(−θ·E_1∧U), the
// two-reflection decomposition R_{θ,U}·J = S_V with V = cos(θ/2)E_1 +
// sin(θ/2)U, and the line-bundle exponential
//   exp(−θ·E_1∧U, λE_1) = (R_{θ,U}, λ·(2 sin(θ/2)/θ)·V).

#include <string>
#include <vector>

#include "cartan/grassmann.hpp"
#include "cartan/liegroup.hpp"

namespace cartan {

/// Unit vector orthogonal to E_1.
class UnitDirection {
public:
  /// Throws InvariantViolation unless |U| = 1 and ⟨U, E_1⟩ = 0 within 1e−12.
  explicit UnitDirection(Vec u);
  const Vec& vec() const { return u_; }
  long n() const { return u_.size(); }

private:
  Vec u_;
};

/// A line through the origin, represented by a unit vector whose first
/// nonzero component is positive.
class Line {
public:
  explicit Line(const Vec& v);
  const Vec& representative() const { return v_; }
  long n() const { return v_.size(); }
  Plane as_plane() const;
  /// Angle in [0, π/2] between the two lines.
  double angle_to(const Line& other) const;

private:
  Vec v_;
};

Rotation rotation_in_plane(double theta, const UnitDirection& u);

/// I − 2·V·Vᵀ. Throws InvalidArgument unless |V| = 1 within 1e−12.
Mat reflection_about_hyperplane_normal(const Vec& v);

/// Whether R_{θ,U}·J_{1,q} equals the reflection about V = cos(θ/2)E_1 +
/// sin(θ/2)U within 1e−10.
bool two_reflections_check(double theta, const UnitDirection& u);

/// [cos(θ/2)E_1 + sin(θ/2)U].
Line half_angle_line(double theta, const UnitDirection& u);

Motion line_bundle_exp(double theta, const UnitDirection& u, double lambda);

/// One cell of the Möbius band C(2,1) sampled as exp(d_1) ⊂ SE(2).
struct MoebiusRecord {
  double theta;
  double lambda;
  double r00, r01, r10, r11;
  double x0, x1;
  double line_angle;
  double y0, y1;
};

/// θ_i = 2π·i/num_theta for i < num_theta; λ_j evenly spaced on
/// [−λ_max, λ_max] (λ = 0 when num_lambda = 1). Row-major in (θ, λ).
std::vector<MoebiusRecord> moebius_grid(long num_theta, long num_lambda, double lambda_max);

/// Same cells, computed one per loop iteration in parallel.
std::vector<MoebiusRecord> moebius_grid_parallel(long num_theta, long num_lambda, double lambda_max);

/// Seam check of the band: for each λ ≠ 0 pairs the last θ column (fiber
/// coefficient λ) with the θ = 0 column (coefficient −λ) and tests line
/// coincidence within 2π/num_theta plus orientation reversal of the fiber
/// relative to the θ = 0 line direction.
struct SeamReport {
  long pairs = 0;
  long passed = 0;
  double max_line_angle = 0.0;
};
SeamReport moebius_seam_check(const std::vector<MoebiusRecord>& grid, long num_theta, long num_lambda);

std::string moebius_csv_header();
std::string moebius_csv_row(const MoebiusRecord& r);

} // namespace cartan
