#include "cartan/random.hpp"

#include <cmath>
#include <numbers>

namespace cartan {

double CounterRng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double CounterRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) {
    u1 = uniform();
  }
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Mat gaussian_matrix(CounterRng& rng, long rows, long cols) {
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      m(i, j) = rng.normal();
    }
  }
  return m;
}

Vec gaussian_vector(CounterRng& rng, long n) {
  Vec v(n);
  for (long i = 0; i < n; ++i) {
    v(i) = rng.normal();
  }
  return v;
}

Mat random_orthogonal_matrix(CounterRng& rng, long n) {
  const Mat g = gaussian_matrix(rng, n, n);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  const Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (long j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) {
      q.col(j) = -q.col(j);
    }
  }
  return q;
}

Mat random_rotation_matrix(CounterRng& rng, long n) {
  Mat q = random_orthogonal_matrix(rng, n);
  if (q.determinant() < 0.0) {
    q.col(n - 1) = -q.col(n - 1);
  }
  return q;
}

Vec random_unit_vector(CounterRng& rng, long n) {
  Vec v = gaussian_vector(rng, n);
  while (v.norm() < 1e-12) {
    v = gaussian_vector(rng, n);
  }
  return v.normalized();
}

} // namespace cartan
