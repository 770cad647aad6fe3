#include "cartan/oracle.hpp"

#include <Eigen/SVD>

namespace cartan::oracle {

Eigen::MatrixXd series_exp(const Eigen::MatrixXd& a, int terms) {
  const long n = a.rows();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int m = 1; m < terms; ++m) {
    term = term * a / static_cast<double>(m);
    sum += term;
  }
  return sum;
}

Eigen::VectorXd series_y_omega(const Eigen::MatrixXd& omega, const Eigen::VectorXd& v, int terms) {
  // term_m = ω^{m−1} v / m!
  Eigen::VectorXd term = v;
  Eigen::VectorXd sum = v;
  for (int m = 2; m <= terms; ++m) {
    term = omega * term / static_cast<double>(m);
    sum += term;
  }
  return sum;
}

Eigen::MatrixXd svd_projector(const Eigen::MatrixXd& span, double rank_tol) {
  const long n = span.rows();
  if (span.cols() == 0) {
    return Eigen::MatrixXd::Zero(n, n);
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(span, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  long rank = 0;
  while (rank < sv.size() && sv(rank) > rank_tol * sv(0)) {
    ++rank;
  }
  const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
  return u * u.transpose();
}

double max_abs_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return a.size() == 0 ? 0.0 : (a - b).cwiseAbs().maxCoeff();
}

} // namespace cartan::oracle
