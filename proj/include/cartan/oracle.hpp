#pragma once

// Reference computations that share no code with the library's closed-form
// paths. Used by the verification harness and the test suites.

#include <Eigen/Dense>

namespace cartan::oracle {

/// Σ_{m < terms} Aᵐ / m!.
Eigen::MatrixXd series_exp(const Eigen::MatrixXd& a, int terms = 50);

/// Σ_{m ≥ 1, m ≤ terms} ω^{m−1} v / m!.
Eigen::VectorXd series_y_omega(const Eigen::MatrixXd& omega, const Eigen::VectorXd& v, int terms = 50);

/// Orthogonal projector onto the column span, from the left singular
/// vectors whose singular values exceed `rank_tol` relative to the largest.
Eigen::MatrixXd svd_projector(const Eigen::MatrixXd& span, double rank_tol = 1e-10);

/// Max-abs entry of a − b.
double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

} // namespace cartan::oracle
