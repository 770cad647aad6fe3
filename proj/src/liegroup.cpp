#include "cartan/liegroup.hpp"

#include <cmath>
#include <numbers>

#include "cartan/error.hpp"
#include "cartan/tolerances.hpp"

namespace cartan {

namespace {

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

} // namespace

Rotation::Rotation(Mat mat) : mat_(std::move(mat)) {
  if (mat_.rows() != mat_.cols() || mat_.rows() == 0) {
    throw Error(ErrorCode::NotOrthogonal, "rotation must be a nonempty square matrix",
                {{"rows", mat_.rows()}, {"cols", mat_.cols()}});
  }
  if (!mat_.allFinite()) {
    throw Error(ErrorCode::NotOrthogonal, "rotation has non-finite entries");
  }
  const long n = mat_.rows();
  const double orth_err = max_abs(mat_.transpose() * mat_ - Mat::Identity(n, n));
  const double det = mat_.determinant();
  if (orth_err > tolerances().orth || std::abs(det - 1.0) > tolerances().orth) {
    throw Error(ErrorCode::NotOrthogonal, "matrix is not in SO(n)", {{"orth_error", orth_err}, {"det", det}});
  }
}

SkewMatrix::SkewMatrix(const Mat& mat) {
  if (mat.rows() != mat.cols() || mat.rows() == 0) {
    throw Error(ErrorCode::InvariantViolation, "skew matrix must be a nonempty square matrix");
  }
  if (!mat.allFinite()) {
    throw Error(ErrorCode::InvariantViolation, "skew matrix has non-finite entries");
  }
  const double n = static_cast<double>(mat.rows());
  const double err = max_abs(mat + mat.transpose());
  if (err > tolerances().skew * n * std::max(1.0, max_abs(mat))) {
    throw Error(ErrorCode::InvariantViolation, "matrix is not skew-symmetric", {{"error", err}});
  }
  mat_ = 0.5 * (mat - mat.transpose());
}

Motion::Motion(Rotation r, Vec x) : rot(std::move(r)), trans(std::move(x)) {
  require_same_dim(rot.n(), trans.size(), "Motion");
  if (!trans.allFinite()) {
    throw Error(ErrorCode::InvariantViolation, "translation has non-finite entries");
  }
}

Mat Motion::homogeneous() const {
  const long k = n();
  Mat h = Mat::Identity(k + 1, k + 1);
  h.topLeftCorner(k, k) = rot.mat();
  h.topRightCorner(k, 1) = trans;
  return h;
}

Screw::Screw(SkewMatrix w, Vec vv) : omega(std::move(w)), v(std::move(vv)) {
  require_same_dim(omega.n(), v.size(), "Screw");
  if (!v.allFinite()) {
    throw Error(ErrorCode::InvariantViolation, "screw translation has non-finite entries");
  }
}

Mat Screw::homogeneous() const {
  const long k = n();
  Mat h = Mat::Zero(k + 1, k + 1);
  h.topLeftCorner(k, k) = omega.mat();
  h.topRightCorner(k, 1) = v;
  return h;
}

Motion se_mul(const Motion& g1, const Motion& g2) {
  require_same_dim(g1.n(), g2.n(), "se_mul");
  return Motion(g1.rot * g2.rot, g1.trans + g1.rot.mat() * g2.trans);
}

Motion se_inv(const Motion& g) {
  Rotation rt = g.rot.inverse();
  Vec x = -(rt.mat() * g.trans);
  return Motion(std::move(rt), std::move(x));
}

Screw se_bracket(const Screw& a, const Screw& b) {
  require_same_dim(a.n(), b.n(), "se_bracket");
  const Mat& w1 = a.omega.mat();
  const Mat& w2 = b.omega.mat();
  return Screw(SkewMatrix(w1 * w2 - w2 * w1), w1 * b.v - w2 * a.v);
}

Rotation so_exp(const SkewMatrix& omega) {
  const CanonicalForm form = skew_canonical_form(omega.mat());
  return Rotation::trusted(form.q * form.rotation_blocks() * form.q.transpose());
}

SkewMatrix so_log(const Rotation& r, BranchPolicy policy) {
  CanonicalRotationForm form = canonical_rotation_form(r.mat());
  const double boundary = std::numbers::pi - tolerances().branch;
  for (std::size_t k = 0; k < form.angles.size(); ++k) {
    double& angle = form.angles[k];
    if (std::abs(angle) <= boundary) {
      continue;
    }
    if (policy == BranchPolicy::Strict) {
      throw Error(ErrorCode::LogBranchAmbiguity, "log branch ambiguity: rotation angle at pi",
                  {{"angle", angle}, {"block", k}});
    }
    if (angle < 0.0) {
      const long i = 2 * static_cast<long>(k);
      form.q.col(i).swap(form.q.col(i + 1));
      angle = -angle;
    }
  }
  return SkewMatrix(form.q * form.skew_blocks() * form.q.transpose());
}

double half_angle_factor(double theta) {
  if (std::abs(theta) < 1e-4) {
    const double t2 = theta * theta;
    return 1.0 - t2 / 24.0 + t2 * t2 / 1920.0;
  }
  return 2.0 * std::sin(0.5 * theta) / theta;
}

Vec y_omega(const SkewMatrix& omega, const Vec& v) {
  require_same_dim(omega.n(), v.size(), "y_omega");
  const CanonicalForm form = skew_canonical_form(omega.mat());
  Vec local = form.q.transpose() * v;
  for (std::size_t k = 0; k < form.angles.size(); ++k) {
    const long i = 2 * static_cast<long>(k);
    const double theta = form.angles[k];
    const double f = half_angle_factor(theta);
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const double a = local(i), b = local(i + 1);
    local(i) = f * (c * a - s * b);
    local(i + 1) = f * (s * a + c * b);
  }
  return form.q * local;
}

Vec y_omega_solve(const SkewMatrix& omega, const Vec& y) {
  require_same_dim(omega.n(), y.size(), "y_omega_solve");
  const CanonicalForm form = skew_canonical_form(omega.mat());
  Vec local = form.q.transpose() * y;
  for (std::size_t k = 0; k < form.angles.size(); ++k) {
    const long i = 2 * static_cast<long>(k);
    const double theta = form.angles[k];
    const double f = half_angle_factor(theta);
    if (std::abs(f) < tolerances().sing) {
      throw Error(ErrorCode::YOmegaSingular, "Y_omega singular", {{"angle", theta}, {"factor", f}});
    }
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const double a = local(i), b = local(i + 1);
    local(i) = (c * a + s * b) / f;
    local(i + 1) = (-s * a + c * b) / f;
  }
  return form.q * local;
}

Mat y_omega_matrix(const SkewMatrix& omega) {
  const long n = omega.n();
  const CanonicalForm form = skew_canonical_form(omega.mat());
  Mat local = Mat::Identity(n, n);
  for (std::size_t k = 0; k < form.angles.size(); ++k) {
    const long i = 2 * static_cast<long>(k);
    const double theta = form.angles[k];
    const double f = half_angle_factor(theta);
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    local(i, i) = f * c;
    local(i, i + 1) = -f * s;
    local(i + 1, i) = f * s;
    local(i + 1, i + 1) = f * c;
  }
  return form.q * local * form.q.transpose();
}

Motion se_exp(const Screw& xi) {
  const CanonicalForm form = skew_canonical_form(xi.omega.mat());
  Rotation r = Rotation::trusted(form.q * form.rotation_blocks() * form.q.transpose());
  return Motion(std::move(r), y_omega(xi.omega, xi.v));
}

Screw se_log(const Motion& g, BranchPolicy policy) {
  SkewMatrix omega = so_log(g.rot, policy);
  Vec v = y_omega_solve(omega, g.trans);
  return Screw(std::move(omega), std::move(v));
}

double motion_distance(const Motion& a, const Motion& b) {
  require_same_dim(a.n(), b.n(), "motion_distance");
  return max_abs(a.homogeneous() - b.homogeneous());
}

} // namespace cartan
