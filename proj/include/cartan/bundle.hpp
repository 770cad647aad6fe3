#pragma once

// The canonical vector bundle C(n,p) over G(n,p) realized as the symmetric
// space SE(n)/SE(n)^σ, where σ(R, X) = (J·R·J, J·X).
//
// The Cartan model S_p = {g·σ(g)⁻¹} ⊂ SE(n) consists of motions (R, Y) with
// R ∈ S_p⁰ and Y in the plane ρ₀(R); ρ(R, Y) = (ρ₀(R), Y) identifies it with
// the bundle. SE(n) acts on S_p by σ-twisted conjugation and on the bundle
// by (A, X) ∗ (π, Y) = (A·π, A·Y + 2·pr_{A·π}X); ρ intertwines the two.

#include "cartan/grassmann.hpp"
#include "cartan/liegroup.hpp"

namespace cartan {

/// (π, Y) with Y ∈ π.
class BundlePoint {
public:
  /// Throws InvariantViolation unless ‖P·Y − Y‖ ≤ tolerances().fiber·(‖Y‖ + 1).
  BundlePoint(Plane plane, Vec fiber);

  const Plane& plane() const { return plane_; }
  const Vec& fiber() const { return fiber_; }
  long n() const { return plane_.n(); }
  long p() const { return plane_.p(); }

private:
  Plane plane_;
  Vec fiber_;
};

/// Element (R, Y) of S_p.
class CartanMotion {
public:
  /// Validates σ(g) = g⁻¹, the S_p⁰ invariants of R, and J·Y = −R⁻¹·Y, all
  /// within tolerances().invol. Throws NotInCartanModel otherwise.
  CartanMotion(Motion motion, Signature sig);

  const Motion& motion() const { return motion_; }
  const Signature& sig() const { return sig_; }
  CartanRotation rotation() const { return CartanRotation(motion_.rot, sig_); }

private:
  Motion motion_;
  Signature sig_;
};

/// Element (ω_B, Σ v_k E_k) of d_p.
struct DpElement {
  DpGenerator gen;
  Vec v; // coefficients on E_1..E_p

  DpElement(DpGenerator g, Vec vv);
  Screw embed() const;
  DpElement scaled(double s) const { return DpElement(DpGenerator(gen.sig, s * gen.b), s * v); }
};

Motion sigma(const Motion& g, const Signature& sig);

/// Membership in SE(n)^σ. Evaluates both σ(g) = g and the block structure
/// (vanishing off-diagonal rotation blocks and first p translation entries);
/// throws NumericalFault if the two tests disagree.
bool is_fixed_point(const Motion& g, const Signature& sig);

/// ‖σ(g)·g − (I, 0)‖_F ≤ tolerances().invol.
bool in_Q(const Motion& g, const Signature& sig);

/// a • g = a·g·σ(a⁻¹). The closed form
/// (A·R·J·A⁻¹·J, X + A·Y − A·R·J·A⁻¹·X) is cross-checked against group
/// arithmetic; a disagreement throws NumericalFault.
Motion twisted_act(const Motion& a, const Motion& g, const Signature& sig);

/// τ(g) = g·σ(g⁻¹).
CartanMotion tau(const Motion& g, const Signature& sig);

/// X − A·J·A⁻¹·X, checked against 2·pr_{A·π₀}X.
Vec double_projection(const Rotation& a, const Vec& x, const Signature& sig);

BundlePoint rho(const CartanMotion& s);
CartanMotion rho_inv(const BundlePoint& b);

BundlePoint bundle_act(const Motion& a, const BundlePoint& b);

/// A motion carrying `src` to `dst` under bundle_act.
Motion find_transporter(const BundlePoint& src, const BundlePoint& dst);

/// se_exp of the embedded screw.
CartanMotion dp_exp_full(const DpElement& xi);
/// τ(se_exp(ξ/2)), the same point built through the orbit map.
CartanMotion dp_exp_full_via_tau(const DpElement& xi);

/// Inverse of dp_exp_full on the generic region: the rotation part through
/// dp_log0, the translation coefficients by least squares on the p columns
/// Y_ω(E_k). Throws CutLocus (propagated) or NearSingularIsomorphism.
DpElement dp_log_full(const CartanMotion& s);

} // namespace cartan
