#include "cartan/projective.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "cartan/error.hpp"

namespace cartan {

namespace {

constexpr double kUnitTol = 1e-12;

MoebiusRecord moebius_cell(long i, long j, long num_theta, long num_lambda, double lambda_max) {
  const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(num_theta);
  const double lambda =
      num_lambda == 1 ? 0.0
                      : -lambda_max + 2.0 * lambda_max * static_cast<double>(j) / static_cast<double>(num_lambda - 1);
  static const UnitDirection e2(basis_vector(1, 2));
  const Motion g = line_bundle_exp(theta, e2, lambda);
  const Mat& r = g.rot.mat();
  return {theta, lambda, r(0, 0), r(0, 1), r(1, 0), r(1, 1), g.trans(0), g.trans(1), 0.5 * theta,
          g.trans(0), g.trans(1)};
}

void check_grid_args(long num_theta, long num_lambda, double lambda_max) {
  if (num_theta < 1 || num_lambda < 1 || !(lambda_max >= 0.0) || !std::isfinite(lambda_max)) {
    throw Error(ErrorCode::InvalidArgument, "moebius grid requires positive sizes and finite lambda_max >= 0",
                {{"num_theta", num_theta}, {"num_lambda", num_lambda}, {"lambda_max", lambda_max}});
  }
}

} // namespace

UnitDirection::UnitDirection(Vec u) : u_(std::move(u)) {
  if (u_.size() < 2 || !u_.allFinite() || std::abs(u_.norm() - 1.0) > kUnitTol || std::abs(u_(0)) > kUnitTol) {
    throw Error(ErrorCode::InvariantViolation, "direction must be a unit vector orthogonal to E_1");
  }
}

Line::Line(const Vec& v) {
  const double norm = v.norm();
  if (!v.allFinite() || norm == 0.0) {
    throw Error(ErrorCode::InvalidArgument, "line needs a nonzero finite direction");
  }
  v_ = v / norm;
  for (long k = 0; k < v_.size(); ++k) {
    if (std::abs(v_(k)) > kUnitTol) {
      if (v_(k) < 0.0) {
        v_ = -v_;
      }
      break;
    }
  }
}

Plane Line::as_plane() const { return Plane(trusted_frame(v_)); }

double Line::angle_to(const Line& other) const {
  require_same_dim(n(), other.n(), "Line::angle_to");
  const double c = v_.dot(other.v_);
  return std::atan2((v_ - c * other.v_).norm(), std::abs(c));
}

Rotation rotation_in_plane(double theta, const UnitDirection& u) {
  const long n = u.n();
  return so_exp(SkewMatrix(-theta * wedge(basis_vector(0, n), u.vec())));
}

Mat reflection_about_hyperplane_normal(const Vec& v) {
  if (!v.allFinite() || std::abs(v.norm() - 1.0) > kUnitTol) {
    throw Error(ErrorCode::InvalidArgument, "reflection normal must be a unit vector", {{"norm", v.norm()}});
  }
  return Mat::Identity(v.size(), v.size()) - 2.0 * v * v.transpose();
}

bool two_reflections_check(double theta, const UnitDirection& u) {
  const long n = u.n();
  const Signature sig(1, n - 1);
  const Mat rj = rotation_in_plane(theta, u).mat() * sig.matrix();
  const Vec v = std::cos(0.5 * theta) * basis_vector(0, n) + std::sin(0.5 * theta) * u.vec();
  return (rj - reflection_about_hyperplane_normal(v)).cwiseAbs().maxCoeff() <= 1e-10;
}

Line half_angle_line(double theta, const UnitDirection& u) {
  return Line(std::cos(0.5 * theta) * basis_vector(0, u.n()) + std::sin(0.5 * theta) * u.vec());
}

Motion line_bundle_exp(double theta, const UnitDirection& u, double lambda) {
  const long n = u.n();
  const Vec e1 = basis_vector(0, n);
  const Vec& uv = u.vec();
  const double c = std::cos(theta), s = std::sin(theta);
  Mat r = Mat::Identity(n, n) + (c - 1.0) * (e1 * e1.transpose() + uv * uv.transpose()) +
          s * (uv * e1.transpose() - e1 * uv.transpose());
  const Vec y =
      lambda * half_angle_factor(theta) * (std::cos(0.5 * theta) * e1 + std::sin(0.5 * theta) * uv);
  return Motion(Rotation::trusted(std::move(r)), y);
}

std::vector<MoebiusRecord> moebius_grid(long num_theta, long num_lambda, double lambda_max) {
  check_grid_args(num_theta, num_lambda, lambda_max);
  std::vector<MoebiusRecord> out;
  out.reserve(static_cast<std::size_t>(num_theta * num_lambda));
  for (long i = 0; i < num_theta; ++i) {
    for (long j = 0; j < num_lambda; ++j) {
      out.push_back(moebius_cell(i, j, num_theta, num_lambda, lambda_max));
    }
  }
  return out;
}

std::vector<MoebiusRecord> moebius_grid_parallel(long num_theta, long num_lambda, double lambda_max) {
  check_grid_args(num_theta, num_lambda, lambda_max);
  const long total = num_theta * num_lambda;
  std::vector<MoebiusRecord> out(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(static)
  for (long k = 0; k < total; ++k) {
    out[static_cast<std::size_t>(k)] = moebius_cell(k / num_lambda, k % num_lambda, num_theta, num_lambda, lambda_max);
  }
  return out;
}

SeamReport moebius_seam_check(const std::vector<MoebiusRecord>& grid, long num_theta, long num_lambda) {
  if (static_cast<long>(grid.size()) != num_theta * num_lambda || num_theta < 2) {
    throw Error(ErrorCode::InvalidArgument, "seam check needs the full grid with at least two theta columns");
  }
  SeamReport report;
  const double resolution = 2.0 * std::numbers::pi / static_cast<double>(num_theta);
  const auto at = [&](long i, long j) -> const MoebiusRecord& {
    return grid[static_cast<std::size_t>(i * num_lambda + j)];
  };
  for (long j = 0; j < num_lambda; ++j) {
    const MoebiusRecord& seam = at(num_theta - 1, j);
    if (seam.lambda == 0.0) {
      continue;
    }
    const MoebiusRecord& start = at(0, num_lambda - 1 - j);
    ++report.pairs;

    const Line seam_line(Vec{{std::cos(seam.line_angle), std::sin(seam.line_angle)}});
    const Line start_line(Vec{{std::cos(start.line_angle), std::sin(start.line_angle)}});
    const double angle = seam_line.angle_to(start_line);
    report.max_line_angle = std::max(report.max_line_angle, angle);

    // Fiber coordinates along the θ = 0 line direction.
    const Vec& dir = start_line.representative();
    const double seam_coord = dir(0) * seam.y0 + dir(1) * seam.y1;
    const double start_coord = dir(0) * start.y0 + dir(1) * start.y1;
    const bool mirrored = std::abs(start.lambda + seam.lambda) <= 1e-12 * (1.0 + std::abs(seam.lambda));
    const bool reversed = mirrored && seam_coord * start_coord > 0.0 &&
                          std::signbit(seam_coord) != std::signbit(seam.lambda);
    if (angle <= resolution && reversed) {
      ++report.passed;
    }
  }
  return report;
}

std::string moebius_csv_header() { return "theta,lambda,r00,r01,r10,r11,x0,x1,line_angle,y0,y1"; }

std::string moebius_csv_row(const MoebiusRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.theta,
                r.lambda, r.r00, r.r01, r.r10, r.r11, r.x0, r.x1, r.line_angle, r.y0, r.y1);
  return buf;
}

} // namespace cartan
