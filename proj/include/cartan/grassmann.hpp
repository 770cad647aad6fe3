#pragma once

// The Grassmannian G(n,p) and its Cartan model S_p⁰ ⊂ SO(n).
//
// A plane is identified with its orthogonal projector P. The Cartan model
// attaches to P the rotation R = A·J·A⁻¹·J for any A ∈ SO(n) carrying the
// reference plane π₀ = span(E_1..E_p) onto P; since A·J·A⁻¹ = I − 2P, the
// result is independent of A. Conversely P is recovered as the (−1)
// eigenspace of the symmetric involution R·J.

#include "cartan/liegroup.hpp"
#include "cartan/matcore.hpp"

namespace cartan {

/// J_{p,q} = diag(−I_p, I_q).
struct Signature {
  long p = 0;
  long q = 0;

  Signature(long p_, long q_);
  long n() const { return p + q; }
  Mat matrix() const;
  /// J·x, flipping the first p coordinates.
  Vec apply(const Vec& x) const;
};

/// A p-dimensional linear subspace of R^n.
class Plane {
public:
  explicit Plane(const Frame& frame);

  long n() const { return projector_.rows(); }
  long p() const { return frame_.p(); }
  const Mat& projector() const { return projector_; }
  const Frame& frame() const { return frame_; }

  /// span(E_1, …, E_p).
  static Plane reference(long n, long p);
  /// The image A·π of the plane under A ∈ SO(n).
  Plane transformed(const Rotation& a) const;

private:
  Mat projector_;
  Frame frame_;
};

/// Element of S_p⁰: (R·J)² = I, R·J symmetric, and the (−1) eigenspace of
/// R·J has dimension p.
class CartanRotation {
public:
  /// Validates the invariants; throws NotInCartanModel otherwise.
  CartanRotation(Rotation r, Signature sig);

  const Rotation& rot() const { return rot_; }
  const Signature& sig() const { return sig_; }

private:
  Rotation rot_;
  Signature sig_;
};

/// Element of d_p⁰: ω = [[0, −Bᵀ], [B, 0]] with B of size q×p.
struct DpGenerator {
  Signature sig;
  Mat b;

  DpGenerator(Signature s, Mat bb);
  SkewMatrix embed() const;
};

Plane plane_from_span(const Mat& vectors);

/// Projector distance ≤ tolerances().plane.
bool plane_equal(const Plane& a, const Plane& b);
double plane_distance(const Plane& a, const Plane& b);

Rotation sigma0(const Rotation& r, const Signature& sig);
bool in_Q0(const Rotation& r, const Signature& sig);
/// A • R = A·R·σ₀(A)⁻¹.
Rotation twisted_act0(const Rotation& a, const Rotation& r, const Signature& sig);

CartanRotation cartan_embed0(const Plane& plane);
/// (−1) eigenspace of R·J.
Plane rho0(const CartanRotation& r);
/// (−1) eigenspace of R·J for an arbitrary rotation; throws
/// NotInCartanModel unless R·J is a symmetric involution with a
/// p-dimensional (−1) eigenspace.
Plane rho0(const Rotation& r, const Signature& sig);

CartanRotation dp_exp(const DpGenerator& gen);

/// Principal angles (ascending, in [0, π/2]) between π₀ = span(E_1..E_p) and
/// the plane, together with the generator H ∈ R^{q×p} of the Grassmann
/// geodesic exp([[0,−Hᵀ],[H,0]])·π₀ = plane.
struct GrassmannLog {
  Vec principal_angles;
  Mat h;
};
GrassmannLog grassmann_log_from_reference(const Plane& plane);

/// Generator B = 2H with dp_exp(B) = R. Throws CutLocus when a principal
/// angle between ρ₀(R) and π₀ is within tolerances().branch of π/2.
DpGenerator dp_log0(const CartanRotation& r);

} // namespace cartan
