#include "cartan/bundle.hpp"

#include <algorithm>

#include <Eigen/SVD>

#include "cartan/error.hpp"
#include "cartan/tolerances.hpp"

namespace cartan {

namespace {

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Residual of σ(g)·g against the identity, translation part scaled by |Y| + 1.
double q_residual(const Motion& g, const Signature& sig) {
  const Motion s = se_mul(sigma(g, sig), g);
  const long n = g.n();
  const double rot_err = (s.rot.mat() - Mat::Identity(n, n)).norm();
  const double trans_err = s.trans.norm() / (1.0 + g.trans.norm());
  return std::max(rot_err, trans_err);
}

} // namespace

BundlePoint::BundlePoint(Plane plane, Vec fiber) : plane_(std::move(plane)), fiber_(std::move(fiber)) {
  require_same_dim(plane_.n(), fiber_.size(), "BundlePoint");
  if (!fiber_.allFinite()) {
    throw Error(ErrorCode::InvariantViolation, "fiber has non-finite entries");
  }
  const double err = (plane_.projector() * fiber_ - fiber_).norm();
  if (err > tolerances().fiber * (fiber_.norm() + 1.0)) {
    throw Error(ErrorCode::InvariantViolation, "fiber vector does not lie in the plane", {{"error", err}});
  }
}

CartanMotion::CartanMotion(Motion motion, Signature sig) : motion_(std::move(motion)), sig_(sig) {
  require_same_dim(sig_.n(), motion_.n(), "CartanMotion");
  const double residual = q_residual(motion_, sig_);
  if (residual > tolerances().invol) {
    throw Error(ErrorCode::NotInCartanModel, "not in the Cartan model: sigma(g) != g^-1", {{"residual", residual}});
  }
  (void)CartanRotation(motion_.rot, sig_);
  // Y in rho0(R): R·J·Y = −Y.
  const Vec rjy = motion_.rot.mat() * sig_.apply(motion_.trans);
  const double fiber_err = (rjy + motion_.trans).norm() / (1.0 + motion_.trans.norm());
  if (fiber_err > tolerances().invol) {
    throw Error(ErrorCode::NotInCartanModel, "not in the Cartan model: translation outside rho0(R)",
                {{"error", fiber_err}});
  }
}

DpElement::DpElement(DpGenerator g, Vec vv) : gen(std::move(g)), v(std::move(vv)) {
  require_same_dim(gen.sig.p, v.size(), "DpElement");
  if (!v.allFinite()) {
    throw Error(ErrorCode::InvariantViolation, "d_p translation has non-finite entries");
  }
}

Screw DpElement::embed() const {
  Vec full = Vec::Zero(gen.sig.n());
  full.head(gen.sig.p) = v;
  return Screw(gen.embed(), std::move(full));
}

Motion sigma(const Motion& g, const Signature& sig) {
  return Motion(sigma0(g.rot, sig), sig.apply(g.trans));
}

bool is_fixed_point(const Motion& g, const Signature& sig) {
  require_same_dim(sig.n(), g.n(), "is_fixed_point");
  const double tol = tolerances().invol;
  const double sigma_err = motion_distance(sigma(g, sig), g);
  const bool by_sigma = sigma_err <= tol;

  // σ(g) − g is exactly −2× the off-diagonal rotation blocks and the first p
  // translation entries, so the structural test uses half the tolerance.
  const Mat& r = g.rot.mat();
  const double structure_err =
      std::max({max_abs(r.topRightCorner(sig.p, sig.q)), max_abs(r.bottomLeftCorner(sig.q, sig.p)),
                max_abs(g.trans.head(sig.p))});
  const bool by_structure = structure_err <= 0.5 * tol;

  if (by_sigma != by_structure) {
    throw Error(ErrorCode::NumericalFault, "fixed-point tests disagree",
                {{"sigma_error", sigma_err}, {"structure_error", structure_err}});
  }
  return by_sigma;
}

bool in_Q(const Motion& g, const Signature& sig) {
  require_same_dim(sig.n(), g.n(), "in_Q");
  return q_residual(g, sig) <= tolerances().invol;
}

Motion twisted_act(const Motion& a, const Motion& g, const Signature& sig) {
  require_same_dim(a.n(), g.n(), "twisted_act");
  require_same_dim(sig.n(), g.n(), "twisted_act");
  const Mat& am = a.rot.mat();
  const Mat j = sig.matrix();
  const Mat arjaj = am * g.rot.mat() * j * am.transpose() * j;
  const Vec closed_trans = a.trans + am * g.trans - am * g.rot.mat() * j * am.transpose() * a.trans;

  Motion by_group = se_mul(se_mul(a, g), sigma(se_inv(a), sig));

  const double scale = 1e-11 * static_cast<double>(g.n()) * (1.0 + a.trans.norm() + g.trans.norm());
  const double err = std::max(max_abs(arjaj - by_group.rot.mat()), max_abs(closed_trans - by_group.trans));
  if (err > scale) {
    throw Error(ErrorCode::NumericalFault, "twisted action routes disagree", {{"error", err}});
  }
  return by_group;
}

CartanMotion tau(const Motion& g, const Signature& sig) {
  require_same_dim(sig.n(), g.n(), "tau");
  Motion t = se_mul(g, sigma(se_inv(g), sig));
  try {
    return CartanMotion(std::move(t), sig);
  } catch (const Error& e) {
    throw Error(ErrorCode::NumericalFault, std::string("tau left the Cartan model: ") + e.what(), e.context());
  }
}

Vec double_projection(const Rotation& a, const Vec& x, const Signature& sig) {
  require_same_dim(a.n(), x.size(), "double_projection");
  require_same_dim(sig.n(), x.size(), "double_projection");
  const Mat& am = a.mat();
  Vec y = x - am * sig.apply(am.transpose() * x);
  const Mat lead = am.leftCols(sig.p);
  const Vec twice_projected = 2.0 * lead * (lead.transpose() * x);
  const double err = (y - twice_projected).norm();
  if (err > 1e-10 * (1.0 + x.norm())) {
    throw Error(ErrorCode::NumericalFault, "double projection identity violated", {{"error", err}});
  }
  return y;
}

BundlePoint rho(const CartanMotion& s) {
  Plane plane = rho0(s.motion().rot, s.sig());
  try {
    return BundlePoint(std::move(plane), s.motion().trans);
  } catch (const Error& e) {
    throw Error(ErrorCode::NumericalFault, std::string("rho: ") + e.what(), e.context());
  }
}

CartanMotion rho_inv(const BundlePoint& b) {
  const CartanRotation r = cartan_embed0(b.plane());
  return CartanMotion(Motion(r.rot(), b.fiber()), r.sig());
}

BundlePoint bundle_act(const Motion& a, const BundlePoint& b) {
  require_same_dim(a.n(), b.n(), "bundle_act");
  Plane moved = b.plane().transformed(a.rot);
  Vec fiber = a.rot.mat() * b.fiber() + 2.0 * moved.projector() * a.trans;
  return BundlePoint(std::move(moved), std::move(fiber));
}

Motion find_transporter(const BundlePoint& src, const BundlePoint& dst) {
  require_same_dim(src.n(), dst.n(), "find_transporter");
  require_same_dim(src.p(), dst.p(), "find_transporter");
  const Mat from = complete_to_special_orthogonal(src.plane().frame());
  const Mat to = complete_to_special_orthogonal(dst.plane().frame());
  Rotation a = Rotation::trusted(to * from.transpose());
  Vec x = 0.5 * (dst.fiber() - a.mat() * src.fiber());
  return Motion(std::move(a), std::move(x));
}

CartanMotion dp_exp_full(const DpElement& xi) {
  Motion g = se_exp(xi.embed());
  try {
    return CartanMotion(std::move(g), xi.gen.sig);
  } catch (const Error& e) {
    throw Error(ErrorCode::NumericalFault, std::string("dp_exp_full left the Cartan model: ") + e.what(),
                e.context());
  }
}

CartanMotion dp_exp_full_via_tau(const DpElement& xi) {
  return tau(se_exp(xi.scaled(0.5).embed()), xi.gen.sig);
}

DpElement dp_log_full(const CartanMotion& s) {
  DpGenerator gen = dp_log0(s.rotation());
  const long p = gen.sig.p;
  const Vec& y = s.motion().trans;
  if (p == 0) {
    return DpElement(std::move(gen), Vec(0));
  }
  const Mat restricted = y_omega_matrix(gen.embed()).leftCols(p);
  Eigen::JacobiSVD<Mat> svd(restricted, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vec& sv = svd.singularValues();
  const double cond = sv(0) / sv(p - 1);
  if (!(cond <= tolerances().cond)) {
    throw Error(ErrorCode::NearSingularIsomorphism, "near-singular isomorphism", {{"condition", cond}});
  }
  Vec v = svd.solve(y);
  const double residual = (restricted * v - y).norm();
  if (residual > 1e-8 * (1.0 + y.norm())) {
    throw Error(ErrorCode::NearSingularIsomorphism, "near-singular isomorphism: restricted system residual too large",
                {{"residual", residual}});
  }
  return DpElement(std::move(gen), std::move(v));
}

} // namespace cartan
