#pragma once

// SO(n), SE(n) and their Lie algebras. The exponential and logarithm are
// evaluated in the canonical block basis of the skew generator, where the
// translation part of exp reduces to 2×2 half-angle formulas.

#include "cartan/matcore.hpp"

namespace cartan {

/// Element of SO(n).
class Rotation {
public:
  /// Validates RᵀR = I and det R = 1 within tolerances().orth; throws
  /// NotOrthogonal otherwise.
  explicit Rotation(Mat mat);
  static Rotation identity(long n) { return Rotation(Mat::Identity(n, n), Trusted{}); }
  /// No validation; for values produced by closed-form group arithmetic.
  static Rotation trusted(Mat mat) { return Rotation(std::move(mat), Trusted{}); }

  long n() const { return mat_.rows(); }
  const Mat& mat() const { return mat_; }
  Rotation inverse() const { return Rotation(mat_.transpose(), Trusted{}); }

private:
  struct Trusted {};
  Rotation(Mat mat, Trusted) : mat_(std::move(mat)) {}
  Mat mat_;
};

inline Rotation operator*(const Rotation& a, const Rotation& b) { return Rotation::trusted(a.mat() * b.mat()); }

/// Element of so(n). Stored exactly skew (the input is antisymmetrized after
/// validation).
class SkewMatrix {
public:
  /// Throws InvariantViolation unless ‖M + Mᵀ‖_max ≤ tolerances().skew·n·max(1, ‖M‖_max).
  explicit SkewMatrix(const Mat& mat);
  static SkewMatrix zero(long n) { return SkewMatrix(Mat::Zero(n, n)); }

  long n() const { return mat_.rows(); }
  const Mat& mat() const { return mat_; }

private:
  Mat mat_;
};

/// g = (R, X) ∈ SE(n), acting as x ↦ R·x + X.
struct Motion {
  Rotation rot;
  Vec trans;

  Motion(Rotation r, Vec x);
  static Motion identity(long n) { return Motion(Rotation::identity(n), Vec::Zero(n)); }

  long n() const { return rot.n(); }
  /// The (n+1)×(n+1) homogeneous matrix [[R, X], [0, 1]].
  Mat homogeneous() const;
};

/// ξ = (ω, v) ∈ se(n).
struct Screw {
  SkewMatrix omega;
  Vec v;

  Screw(SkewMatrix w, Vec vv);
  static Screw zero(long n) { return Screw(SkewMatrix::zero(n), Vec::Zero(n)); }

  long n() const { return omega.n(); }
  /// The (n+1)×(n+1) matrix [[ω, v], [0, 0]].
  Mat homogeneous() const;
  Screw scaled(double s) const { return Screw(SkewMatrix(s * omega.mat()), s * v); }
};

/// What so_log / se_log do when a canonical angle lies within
/// tolerances().branch of π.
enum class BranchPolicy {
  Strict,          ///< throw LogBranchAmbiguity
  ResolvePositive, ///< take θ = +π for the ambiguous blocks
};

Motion se_mul(const Motion& g1, const Motion& g2);
Motion se_inv(const Motion& g);
Screw se_bracket(const Screw& a, const Screw& b);

Rotation so_exp(const SkewMatrix& omega);
SkewMatrix so_log(const Rotation& r, BranchPolicy policy = BranchPolicy::Strict);

/// 2·sin(θ/2)/θ with its removable singularity at θ = 0 filled in.
double half_angle_factor(double theta);

/// Y_ω(v) = Σ_{m≥1} ω^{m−1} v / m!, evaluated in the canonical basis of ω.
Vec y_omega(const SkewMatrix& omega, const Vec& v);

/// Inverse of v ↦ Y_ω(v). Throws YOmegaSingular if some block's half-angle
/// factor falls below tolerances().sing.
Vec y_omega_solve(const SkewMatrix& omega, const Vec& y);

/// The linear map v ↦ Y_ω(v) as an n×n matrix.
Mat y_omega_matrix(const SkewMatrix& omega);

Motion se_exp(const Screw& xi);
Screw se_log(const Motion& g, BranchPolicy policy = BranchPolicy::Strict);

/// Max-abs distance between homogeneous matrices.
double motion_distance(const Motion& a, const Motion& b);

} // namespace cartan
