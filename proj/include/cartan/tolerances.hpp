#pragma once

#include <map>
#include <string>

namespace cartan {

/// Numerical thresholds shared by all modules. Values scaled "per n" are
/// multiplied by the ambient dimension at the point of use.
struct Tolerances {
  double orth = 1e-9;     // orthonormality / determinant checks
  double invol = 1e-8;    // involution and Q-membership residuals
  double eig = 1e-7;      // eigenvalue clustering and Schur block shape
  double recon = 1e-10;   // canonical-form reconstruction, per n
  double rank = 1e-10;    // relative smallest singular value of a spanning set
  double branch = 1e-6;   // distance of a log angle from the branch boundary pi
  double sing = 1e-9;     // smallest admissible half-angle factor in Y_omega
  double plane = 1e-8;    // projector distance for plane equality
  double fiber = 1e-9;    // fiber membership, scaled by |Y| + 1
  double skew = 1e-12;    // skew-symmetry of so(n) elements, per n
  double cond = 1e8;      // largest admissible condition number of the restricted d_p system

  /// Multiplies every tolerance (not `cond`) by `factor`.
  Tolerances scaled(double factor) const;

  /// Sets a tolerance by its short name; throws Error(InvalidArgument) on an
  /// unknown name or a non-positive value.
  void set(const std::string& name, double value);

  std::map<std::string, double> as_map() const;
};

/// Process-wide tolerances. Set once at startup (CLI flags, environment);
/// reads are unsynchronized.
const Tolerances& tolerances();
void set_tolerances(const Tolerances& tol);

/// Restores the previous process-wide tolerances on destruction.
class ScopedTolerances {
public:
  explicit ScopedTolerances(const Tolerances& tol) : saved_(tolerances()) { set_tolerances(tol); }
  ~ScopedTolerances() { set_tolerances(saved_); }
  ScopedTolerances(const ScopedTolerances&) = delete;
  ScopedTolerances& operator=(const ScopedTolerances&) = delete;

private:
  Tolerances saved_;
};

} // namespace cartan
