#include "cartan/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "cartan/error.hpp"
#include "cartan/random.hpp"
#include "cartan/tolerances.hpp"

namespace cartan {

namespace {

constexpr std::uint64_t kCompletionSeed = 0x5eed'c0de'2024'0001ULL;

// Entries below this magnitude are skipped when choosing a sign pivot.
constexpr double kSignPivot = 1e-12;

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

// Sign of the first component that is not negligible; ties broken by the next.
bool first_significant_negative(const Vec& v) {
  for (long k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > kSignPivot) {
      return v(k) < 0.0;
    }
  }
  return false;
}

// Removes the components of `v` along the first `count` columns of `basis`,
// twice. Returns the residual.
Vec project_out(const Mat& basis, long count, Vec v) {
  for (int pass = 0; pass < 2; ++pass) {
    for (long k = 0; k < count; ++k) {
      v -= basis.col(k).dot(v) * basis.col(k);
    }
  }
  return v;
}

struct Block {
  double angle;
  Vec a;
  Vec b;
};

enum class BlockKind { Rotation, Skew };

CanonicalForm canonical_from_schur(const Mat& m, BlockKind kind) {
  const long n = m.rows();
  const double tol = tolerances().eig;
  const double scale = std::max(1.0, max_abs(m));

  Eigen::RealSchur<Mat> schur(m);
  if (schur.info() != Eigen::Success) {
    throw Error(ErrorCode::IllConditionedSpectrum, "ill-conditioned spectrum: Schur iteration did not converge");
  }
  const Mat& t = schur.matrixT();
  const Mat& u = schur.matrixU();

  std::vector<Block> blocks;
  std::vector<Vec> fixed;
  std::vector<Vec> negative; // eigenvalue −1 of a rotation

  long i = 0;
  while (i < n) {
    const bool two = (i + 1 < n) && t(i + 1, i) != 0.0;
    const long width = two ? 2 : 1;
    // A normal matrix has a block-diagonal Schur form.
    for (long c = i + width; c < n; ++c) {
      for (long r = i; r < i + width; ++r) {
        if (std::abs(t(r, c)) > tol * scale) {
          throw Error(ErrorCode::IllConditionedSpectrum, "ill-conditioned spectrum: Schur form not block diagonal",
                      {{"row", r}, {"col", c}, {"value", t(r, c)}});
        }
      }
    }
    if (two) {
      const double a = t(i, i), b = t(i, i + 1), c = t(i + 1, i), d = t(i + 1, i + 1);
      double angle = 0.0;
      if (kind == BlockKind::Rotation) {
        if (std::abs(a - d) > tol || std::abs(b + c) > tol) {
          throw Error(ErrorCode::IllConditionedSpectrum, "ill-conditioned spectrum: 2x2 block is not a rotation");
        }
        angle = std::atan2(0.5 * (c - b), 0.5 * (a + d));
      } else {
        if (std::abs(a) > tol * scale || std::abs(d) > tol * scale || std::abs(b + c) > tol * scale) {
          throw Error(ErrorCode::IllConditionedSpectrum, "ill-conditioned spectrum: 2x2 block is not skew");
        }
        angle = 0.5 * (c - b);
      }
      Vec ua = u.col(i), ub = u.col(i + 1);
      if (angle < 0.0) {
        std::swap(ua, ub);
        angle = -angle;
      }
      if (angle == 0.0) {
        fixed.push_back(ua);
        fixed.push_back(ub);
      } else {
        blocks.push_back({angle, ua, ub});
      }
    } else {
      const double lambda = t(i, i);
      if (kind == BlockKind::Rotation) {
        if (std::abs(lambda - 1.0) <= tol) {
          fixed.push_back(u.col(i));
        } else if (std::abs(lambda + 1.0) <= tol) {
          negative.push_back(u.col(i));
        } else {
          throw Error(ErrorCode::IllConditionedSpectrum, "ill-conditioned spectrum: real eigenvalue is not +-1",
                      {{"eigenvalue", lambda}});
        }
      } else {
        if (std::abs(lambda) > tol * scale) {
          throw Error(ErrorCode::IllConditionedSpectrum, "ill-conditioned spectrum: skew matrix with real eigenvalue",
                      {{"eigenvalue", lambda}});
        }
        fixed.push_back(u.col(i));
      }
    }
    i += width;
  }

  if (negative.size() % 2 != 0) {
    throw Error(ErrorCode::NotOrthogonal, "rotation has an odd number of -1 eigenvalues");
  }
  for (std::size_t k = 0; k < negative.size(); k += 2) {
    blocks.push_back({std::numbers::pi, negative[k], negative[k + 1]});
  }

  std::stable_sort(blocks.begin(), blocks.end(), [](const Block& x, const Block& y) { return x.angle > y.angle; });

  for (Block& blk : blocks) {
    if (first_significant_negative(blk.a)) {
      blk.a = -blk.a;
      blk.b = -blk.b;
    }
  }
  for (Vec& f : fixed) {
    if (first_significant_negative(f)) {
      f = -f;
    }
  }

  CanonicalForm form;
  form.q.resize(n, n);
  long col = 0;
  for (const Block& blk : blocks) {
    form.q.col(col++) = blk.a;
    form.q.col(col++) = blk.b;
    form.angles.push_back(blk.angle);
  }
  for (const Vec& f : fixed) {
    form.q.col(col++) = f;
  }
  form.fixed_dim = static_cast<long>(fixed.size());

  if (n > 0 && form.q.determinant() < 0.0) {
    if (form.fixed_dim > 0) {
      form.q.col(n - 1) = -form.q.col(n - 1);
    } else {
      const long last = 2 * static_cast<long>(form.angles.size()) - 2;
      form.q.col(last).swap(form.q.col(last + 1));
      double& angle = form.angles.back();
      if (!(kind == BlockKind::Rotation && angle == std::numbers::pi)) {
        angle = -angle;
      }
    }
  }
  return form;
}

} // namespace

Vec basis_vector(long i, long n) {
  if (i < 0 || i >= n) {
    throw Error(ErrorCode::InvalidArgument, "basis index out of range", {{"index", i}, {"n", n}});
  }
  Vec e = Vec::Zero(n);
  e(i) = 1.0;
  return e;
}

Mat wedge(const Vec& a, const Vec& b) {
  require_same_dim(a.size(), b.size(), "wedge");
  return a * b.transpose() - b * a.transpose();
}

Mat skew_wedge(long i, long j, long n) {
  if (n < 1 || i < 0 || j < 0 || i >= n || j >= n) {
    throw Error(ErrorCode::InvalidArgument, "skew_wedge: index out of range", {{"i", i}, {"j", j}, {"n", n}});
  }
  if (i == j) {
    throw Error(ErrorCode::InvalidArgument, "skew_wedge: i == j", {{"i", i}});
  }
  Mat m = Mat::Zero(n, n);
  m(i, j) = 1.0;
  m(j, i) = -1.0;
  return m;
}

bool all_finite(const Mat& m) { return m.allFinite(); }

Frame::Frame(Mat cols) : cols_(std::move(cols)) {
  if (!cols_.allFinite()) {
    throw Error(ErrorCode::InvariantViolation, "frame has non-finite entries");
  }
  if (cols_.cols() > cols_.rows()) {
    throw Error(ErrorCode::InvariantViolation, "frame has more columns than rows");
  }
  const long p = cols_.cols();
  const double err = max_abs(cols_.transpose() * cols_ - Mat::Identity(p, p));
  if (err > tolerances().orth) {
    throw Error(ErrorCode::InvariantViolation, "frame columns are not orthonormal", {{"error", err}});
  }
}

Frame trusted_frame(Mat cols) { return Frame(std::move(cols), Frame::Trusted{}); }

Frame orthonormalize(const Mat& vectors) {
  const long n = vectors.rows();
  const long p = vectors.cols();
  if (!vectors.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "spanning set has non-finite entries");
  }
  if (p > n) {
    throw Error(ErrorCode::DegenerateSpanningSet, "degenerate spanning set: more vectors than dimensions",
                {{"n", n}, {"p", p}});
  }
  if (p == 0) {
    return Frame(Mat(n, 0), Frame::Trusted{});
  }
  const Vec sv = Eigen::JacobiSVD<Mat>(vectors).singularValues();
  if (sv(p - 1) <= tolerances().rank * std::max(1.0, sv(0))) {
    throw Error(ErrorCode::DegenerateSpanningSet, "degenerate spanning set",
                {{"smallest_singular_value", sv(p - 1)}});
  }
  Mat q(n, p);
  for (long k = 0; k < p; ++k) {
    const Vec r = project_out(q, k, vectors.col(k));
    q.col(k) = r / r.norm();
  }
  return Frame(std::move(q), Frame::Trusted{});
}

Mat projector(const Frame& frame) { return frame.cols() * frame.cols().transpose(); }

Mat complete_to_special_orthogonal(const Frame& frame) {
  const long n = frame.n();
  const long p = frame.p();
  Mat a(n, n);
  a.leftCols(p) = frame.cols();
  CounterRng rng(kCompletionSeed, static_cast<std::uint64_t>(n));
  long k = p;
  while (k < n) {
    const Vec r = project_out(a, k, gaussian_vector(rng, n));
    const double norm = r.norm();
    if (norm > 1e-6) {
      a.col(k++) = r / norm;
    }
  }
  if (n > 0 && a.determinant() < 0.0) {
    a.col(n - 1) = -a.col(n - 1);
  }
  return a;
}

Mat CanonicalForm::rotation_blocks() const {
  const long n = q.rows();
  Mat d = Mat::Identity(n, n);
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const long i = 2 * static_cast<long>(k);
    const double c = std::cos(angles[k]), s = std::sin(angles[k]);
    d(i, i) = c;
    d(i, i + 1) = -s;
    d(i + 1, i) = s;
    d(i + 1, i + 1) = c;
  }
  return d;
}

Mat CanonicalForm::skew_blocks() const {
  const long n = q.rows();
  Mat d = Mat::Zero(n, n);
  for (std::size_t k = 0; k < angles.size(); ++k) {
    const long i = 2 * static_cast<long>(k);
    d(i, i + 1) = -angles[k];
    d(i + 1, i) = angles[k];
  }
  return d;
}

CanonicalRotationForm canonical_rotation_form(const Mat& r) {
  if (r.rows() != r.cols() || r.rows() == 0) {
    throw Error(ErrorCode::NotOrthogonal, "rotation must be a nonempty square matrix");
  }
  if (!r.allFinite()) {
    throw Error(ErrorCode::NotOrthogonal, "rotation has non-finite entries");
  }
  const long n = r.rows();
  const double orth_err = max_abs(r.transpose() * r - Mat::Identity(n, n));
  const double det = r.determinant();
  if (orth_err > tolerances().orth || std::abs(det - 1.0) > tolerances().orth) {
    throw Error(ErrorCode::NotOrthogonal, "matrix is not in SO(n)", {{"orth_error", orth_err}, {"det", det}});
  }
  return canonical_from_schur(r, BlockKind::Rotation);
}

CanonicalForm skew_canonical_form(const Mat& omega) {
  if (omega.rows() != omega.cols() || omega.rows() == 0) {
    throw Error(ErrorCode::InvalidArgument, "skew matrix must be a nonempty square matrix");
  }
  return canonical_from_schur(0.5 * (omega - omega.transpose()), BlockKind::Skew);
}

Frame eigenspace_of_symmetric_involution(const Mat& s, int eigenvalue) {
  if (eigenvalue != 1 && eigenvalue != -1) {
    throw Error(ErrorCode::InvalidArgument, "eigenvalue must be +1 or -1", {{"eigenvalue", eigenvalue}});
  }
  if (s.rows() != s.cols()) {
    throw Error(ErrorCode::NotOrthogonalSymmetry, "not an orthogonal symmetry: matrix is not square");
  }
  const long n = s.rows();
  const double asym = max_abs(s - s.transpose());
  const double invol = max_abs(s * s - Mat::Identity(n, n));
  if (!s.allFinite() || asym > tolerances().invol || invol > tolerances().invol) {
    throw Error(ErrorCode::NotOrthogonalSymmetry, "not an orthogonal symmetry",
                {{"asymmetry", asym}, {"involution_error", invol}});
  }
  Eigen::SelfAdjointEigenSolver<Mat> solver(0.5 * (s + s.transpose()));
  const Vec& values = solver.eigenvalues(); // ascending
  long count = 0;
  for (long k = 0; k < n; ++k) {
    if ((eigenvalue < 0) == (values(k) < 0.0)) {
      ++count;
    }
  }
  Mat cols(n, count);
  const long start = eigenvalue < 0 ? 0 : n - count;
  for (long k = 0; k < count; ++k) {
    Vec v = solver.eigenvectors().col(start + k);
    cols.col(k) = first_significant_negative(v) ? Vec(-v) : v;
  }
  return trusted_frame(std::move(cols));
}

} // namespace cartan
