#include "cartan/sampling.hpp"

#include <Eigen/SVD>

#include "cartan/error.hpp"

namespace cartan {

Rotation sample_rotation(CounterRng& rng, long n) { return Rotation::trusted(random_rotation_matrix(rng, n)); }

Motion sample_motion(CounterRng& rng, long n, double scale) {
  Rotation r = sample_rotation(rng, n);
  return Motion(std::move(r), scale * gaussian_vector(rng, n));
}

SkewMatrix sample_skew(CounterRng& rng, long n, double scale) {
  const Mat g = gaussian_matrix(rng, n, n);
  return SkewMatrix(scale * (g - g.transpose()) / std::sqrt(2.0));
}

Screw sample_screw(CounterRng& rng, long n, double max_norm) {
  const Mat g = gaussian_matrix(rng, n, n);
  Mat w = (g - g.transpose()) / std::sqrt(2.0);
  Vec v = gaussian_vector(rng, n);
  const double norm = std::sqrt(w.squaredNorm() + v.squaredNorm());
  const double radius = max_norm * rng.uniform();
  const double s = norm > 0.0 ? radius / norm : 0.0;
  return Screw(SkewMatrix(s * w), s * v);
}

Plane sample_plane(CounterRng& rng, long n, long p) {
  if (p < 0 || p > n) {
    throw Error(ErrorCode::InvalidArgument, "sample_plane requires 0 <= p <= n", {{"n", n}, {"p", p}});
  }
  return Plane(trusted_frame(random_orthogonal_matrix(rng, n).leftCols(p)));
}

BundlePoint sample_bundle_point(CounterRng& rng, long n, long p, double scale) {
  Plane plane = sample_plane(rng, n, p);
  Vec fiber = plane.frame().cols() * (scale * gaussian_vector(rng, p));
  return BundlePoint(std::move(plane), std::move(fiber));
}

CartanMotion sample_cartan_motion(CounterRng& rng, long n, long p, double scale) {
  return rho_inv(sample_bundle_point(rng, n, p, scale));
}

DpElement sample_dp_element(CounterRng& rng, const Signature& sig, double max_b_norm, double scale) {
  Mat b = gaussian_matrix(rng, sig.q, sig.p);
  const double radius = max_b_norm * rng.uniform();
  if (b.size() > 0) {
    const double spectral = Eigen::JacobiSVD<Mat>(b).singularValues()(0);
    b *= spectral > 0.0 ? radius / spectral : 0.0;
  }
  return DpElement(DpGenerator(sig, std::move(b)), scale * gaussian_vector(rng, sig.p));
}

Motion sample_fixed_point(CounterRng& rng, const Signature& sig) {
  const long n = sig.n();
  Mat r = Mat::Zero(n, n);
  Mat a = sig.p > 0 ? random_orthogonal_matrix(rng, sig.p) : Mat(0, 0);
  Mat b = sig.q > 0 ? random_orthogonal_matrix(rng, sig.q) : Mat(0, 0);
  const double det_a = sig.p > 0 ? a.determinant() : 1.0;
  const double det_b = sig.q > 0 ? b.determinant() : 1.0;
  if (det_a * det_b < 0.0) {
    if (sig.q > 0) {
      b.col(sig.q - 1) *= -1.0;
    } else {
      a.col(sig.p - 1) *= -1.0;
    }
  }
  r.topLeftCorner(sig.p, sig.p) = a;
  r.bottomRightCorner(sig.q, sig.q) = b;
  Vec x = Vec::Zero(n);
  x.tail(sig.q) = gaussian_vector(rng, sig.q);
  return Motion(Rotation::trusted(std::move(r)), std::move(x));
}

Motion sample_q_element(CounterRng& rng, const Signature& sig) {
  const long n = sig.n();
  // Admissible dimensions k of the (−1)-eigenspace: det((I − 2P_k)·J) = 1.
  std::vector<long> dims;
  for (long k = sig.p % 2; k <= n; k += 2) {
    dims.push_back(k);
  }
  const long k = dims[static_cast<std::size_t>(rng() % dims.size())];
  const Mat frame = random_orthogonal_matrix(rng, n).leftCols(k);
  const Mat s = Mat::Identity(n, n) - 2.0 * frame * frame.transpose();
  Vec y = frame * gaussian_vector(rng, k);
  return Motion(Rotation::trusted(s * sig.matrix()), std::move(y));
}

UnitDirection sample_direction(CounterRng& rng, long n) {
  Vec u = gaussian_vector(rng, n);
  u(0) = 0.0;
  while (u.norm() < 1e-8) {
    u = gaussian_vector(rng, n);
    u(0) = 0.0;
  }
  return UnitDirection(u / u.norm());
}

} // namespace cartan
