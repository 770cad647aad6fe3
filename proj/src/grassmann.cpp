#include "cartan/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "cartan/error.hpp"
#include "cartan/tolerances.hpp"

namespace cartan {

namespace {

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_signature(const Signature& sig, long n, const char* what) {
  require_same_dim(sig.n(), n, what);
}

} // namespace

Signature::Signature(long p_, long q_) : p(p_), q(q_) {
  if (p < 0 || q < 0 || p + q < 1) {
    throw Error(ErrorCode::InvalidArgument, "signature requires p, q >= 0 and p + q >= 1", {{"p", p}, {"q", q}});
  }
}

Mat Signature::matrix() const {
  Vec d = Vec::Ones(n());
  d.head(p).setConstant(-1.0);
  return d.asDiagonal();
}

Vec Signature::apply(const Vec& x) const {
  require_same_dim(n(), x.size(), "Signature::apply");
  Vec y = x;
  y.head(p) = -y.head(p);
  return y;
}

Plane::Plane(const Frame& frame) : projector_(cartan::projector(frame)), frame_(frame) {}

Plane Plane::reference(long n, long p) {
  if (p < 0 || p > n) {
    throw Error(ErrorCode::InvalidArgument, "reference plane requires 0 <= p <= n", {{"n", n}, {"p", p}});
  }
  return Plane(trusted_frame(Mat::Identity(n, p)));
}

Plane Plane::transformed(const Rotation& a) const {
  require_same_dim(a.n(), n(), "Plane::transformed");
  return Plane(trusted_frame(a.mat() * frame_.cols()));
}

CartanRotation::CartanRotation(Rotation r, Signature sig) : rot_(std::move(r)), sig_(sig) {
  const long n = rot_.n();
  require_signature(sig_, n, "CartanRotation");
  Mat rj = rot_.mat();
  rj.leftCols(sig_.p) = -rj.leftCols(sig_.p);
  const double asym = max_abs(rj - rj.transpose());
  const double invol = max_abs(rj * rj - Mat::Identity(n, n));
  const double tol = tolerances().invol;
  if (asym > tol || invol > tol) {
    throw Error(ErrorCode::NotInCartanModel, "not in the Cartan model: R*J is not a symmetric involution",
                {{"asymmetry", asym}, {"involution_error", invol}});
  }
  // Eigenvalues of R·J are ±1, so the trace fixes the (−1) multiplicity.
  const double expected = static_cast<double>(n - 2 * sig_.p);
  if (std::abs(rj.trace() - expected) > 0.5) {
    throw Error(ErrorCode::NotInCartanModel, "not in the Cartan model: (-1)-eigenspace has the wrong dimension",
                {{"trace", rj.trace()}, {"expected", expected}});
  }
}

DpGenerator::DpGenerator(Signature s, Mat bb) : sig(s), b(std::move(bb)) {
  if (b.rows() != sig.q || b.cols() != sig.p) {
    throw Error(ErrorCode::DimensionMismatch, "d_p generator must be q x p",
                {{"rows", b.rows()}, {"cols", b.cols()}, {"p", sig.p}, {"q", sig.q}});
  }
  if (!b.allFinite()) {
    throw Error(ErrorCode::InvariantViolation, "d_p generator has non-finite entries");
  }
}

SkewMatrix DpGenerator::embed() const {
  const long n = sig.n();
  Mat w = Mat::Zero(n, n);
  w.bottomLeftCorner(sig.q, sig.p) = b;
  w.topRightCorner(sig.p, sig.q) = -b.transpose();
  return SkewMatrix(w);
}

Plane plane_from_span(const Mat& vectors) { return Plane(orthonormalize(vectors)); }

double plane_distance(const Plane& a, const Plane& b) {
  require_same_dim(a.n(), b.n(), "plane_distance");
  require_same_dim(a.p(), b.p(), "plane_distance");
  return (a.projector() - b.projector()).norm();
}

bool plane_equal(const Plane& a, const Plane& b) { return plane_distance(a, b) <= tolerances().plane; }

Rotation sigma0(const Rotation& r, const Signature& sig) {
  require_signature(sig, r.n(), "sigma0");
  Mat m = r.mat();
  // J·R·J negates the off-diagonal blocks.
  m.topRightCorner(sig.p, sig.q) *= -1.0;
  m.bottomLeftCorner(sig.q, sig.p) *= -1.0;
  return Rotation::trusted(std::move(m));
}

bool in_Q0(const Rotation& r, const Signature& sig) {
  require_signature(sig, r.n(), "in_Q0");
  const Mat rj = r.mat() * sig.matrix();
  return (rj * rj - Mat::Identity(r.n(), r.n())).norm() <= tolerances().invol;
}

Rotation twisted_act0(const Rotation& a, const Rotation& r, const Signature& sig) {
  require_same_dim(a.n(), r.n(), "twisted_act0");
  return a * r * sigma0(a, sig).inverse();
}

CartanRotation cartan_embed0(const Plane& plane) {
  const long n = plane.n();
  const Signature sig(plane.p(), n - plane.p());
  const Mat a = complete_to_special_orthogonal(plane.frame());
  const Mat j = sig.matrix();
  return CartanRotation(Rotation::trusted(a * j * a.transpose() * j), sig);
}

Plane rho0(const Rotation& r, const Signature& sig) {
  require_signature(sig, r.n(), "rho0");
  const Mat rj = r.mat() * sig.matrix();
  Frame frame = [&] {
    try {
      return eigenspace_of_symmetric_involution(rj, -1);
    } catch (const Error& e) {
      throw Error(ErrorCode::NotInCartanModel, std::string("not in the Cartan model: ") + e.what(), e.context());
    }
  }();
  if (frame.p() != sig.p) {
    throw Error(ErrorCode::NotInCartanModel, "not in the Cartan model: (-1)-eigenspace has the wrong dimension",
                {{"dimension", frame.p()}, {"p", sig.p}});
  }
  return Plane(frame);
}

Plane rho0(const CartanRotation& r) { return rho0(r.rot(), r.sig()); }

CartanRotation dp_exp(const DpGenerator& gen) {
  Rotation r = so_exp(gen.embed());
  try {
    return CartanRotation(std::move(r), gen.sig);
  } catch (const Error& e) {
    throw Error(ErrorCode::NumericalFault, std::string("dp_exp left the Cartan model: ") + e.what(), e.context());
  }
}

GrassmannLog grassmann_log_from_reference(const Plane& plane) {
  const long n = plane.n();
  const long p = plane.p();
  const long q = n - p;
  const Mat& f = plane.frame().cols();
  const Mat top = f.topRows(p);
  const Mat bottom = f.bottomRows(q);

  Eigen::JacobiSVD<Mat> svd(top, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Mat& left = svd.matrixU();
  const Mat& right = svd.matrixV();
  const Vec& cosines = svd.singularValues();
  Mat bw = bottom * right; // columns orthogonal, norms sin(phi_i)

  GrassmannLog out;
  out.principal_angles.resize(p);
  for (long i = 0; i < p; ++i) {
    const double s = bw.col(i).norm();
    const double phi = std::atan2(s, cosines(i));
    out.principal_angles(i) = phi;
    bw.col(i) *= s > 0.0 ? phi / s : 1.0;
  }
  out.h = bw * left.transpose();
  std::sort(out.principal_angles.data(), out.principal_angles.data() + p);
  return out;
}

DpGenerator dp_log0(const CartanRotation& r) {
  const Plane plane = rho0(r);
  const GrassmannLog log = grassmann_log_from_reference(plane);
  const long p = r.sig().p;
  if (p > 0) {
    const double widest = log.principal_angles(p - 1);
    if (widest >= 0.5 * std::numbers::pi - tolerances().branch) {
      throw Error(ErrorCode::CutLocus, "cut locus: generator not unique", {{"principal_angle", widest}});
    }
  }
  return DpGenerator(r.sig(), 2.0 * log.h);
}

} // namespace cartan
