#pragma once

// Dense kernels used throughout the library: wedge generators, orthonormal
// frames and projectors, frame completion to SO(n), the block-diagonal
// canonical form of rotations and skew matrices, and eigenspaces of
// symmetric involutions.

#include <vector>

#include <Eigen/Dense>

namespace cartan {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Standard basis vector E_i (0-based index) of R^n.
Vec basis_vector(long i, long n);

/// a ∧ b := a·bᵀ − b·aᵀ.
Mat wedge(const Vec& a, const Vec& b);

/// E_i ∧ E_j in so(n), 0-based indices: entry (i,j) = +1, (j,i) = −1.
Mat skew_wedge(long i, long j, long n);

/// True when every entry is finite.
bool all_finite(const Mat& m);

/// n×p matrix with orthonormal columns. p may be zero.
class Frame {
public:
  /// Validates colsᵀ·cols = I within tolerances().orth.
  explicit Frame(Mat cols);

  long n() const { return cols_.rows(); }
  long p() const { return cols_.cols(); }
  const Mat& cols() const { return cols_; }

private:
  struct Trusted {};
  Frame(Mat cols, Trusted) : cols_(std::move(cols)) {}
  friend Frame orthonormalize(const Mat&);
  friend Frame trusted_frame(Mat);

  Mat cols_;
};

/// Wraps columns already known to be orthonormal (no validation).
Frame trusted_frame(Mat cols);

/// Modified Gram–Schmidt with one reorthogonalization pass, columns in
/// order. Throws DegenerateSpanningSet when the smallest singular value of
/// the input is below tolerances().rank relative to the largest.
Frame orthonormalize(const Mat& vectors);

/// F·Fᵀ.
Mat projector(const Frame& frame);

/// A ∈ SO(n) whose first p columns are the frame's columns. The complement
/// is a seeded Gaussian block orthonormalized against the frame, so A is a
/// pure function of the frame; the last column is negated if det A = −1.
Mat complete_to_special_orthogonal(const Frame& frame);

/// R = Q·blockdiag(B(θ_1), …, B(θ_k), I)·Qᵀ, where B is either the rotation
/// block R(θ) = [[cos, −sin], [sin, cos]] or the skew block
/// Π(θ) = [[0, −θ], [θ, 0]] depending on which decomposition produced it.
struct CanonicalForm {
  Mat q;                      // orthogonal, det = +1
  std::vector<double> angles; // one per 2×2 block, sorted descending
  long fixed_dim = 0;         // n − 2k

  long n() const { return q.rows(); }
  /// Assembles blockdiag(R(θ_i), I_fixed).
  Mat rotation_blocks() const;
  /// Assembles blockdiag(Π(θ_i), 0_fixed).
  Mat skew_blocks() const;
};

using CanonicalRotationForm = CanonicalForm;

/// Canonical form of R ∈ SO(n): angles in (−π, π], nonzero. Pairs of −1
/// eigenvalues become θ = π blocks. Each block's first basis vector is
/// sign-fixed (first significant component positive); det Q = 1 is restored
/// by negating the last fixed column, or, when there is none, by swapping
/// the last block's basis (negating its angle unless it is π).
/// Throws NotOrthogonal for invalid input and IllConditionedSpectrum when
/// the Schur form is not block diagonal within tolerances().eig.
CanonicalRotationForm canonical_rotation_form(const Mat& r);

/// Canonical form of a skew matrix ω = Q·blockdiag(Π(θ_i), 0)·Qᵀ with
/// θ_i > 0 except possibly the last block (det fix). Angles are unbounded.
CanonicalForm skew_canonical_form(const Mat& omega);

/// Orthonormal basis of the (eigenvalue = ±1) eigenspace of a symmetric
/// involution S. Throws NotOrthogonalSymmetry unless Sᵀ = S and S² = I
/// within tolerances().invol.
Frame eigenspace_of_symmetric_involution(const Mat& s, int eigenvalue);

} // namespace cartan
