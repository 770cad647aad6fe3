#include "cartan/bundle.hpp"
#include "cartan/projective.hpp"
#include "cartan/random.hpp"
#include "cartan/sampling.hpp"
#include "support.hpp"

namespace cartan {
namespace {

using test::kPi;
using test::rot2;
using test::vec;

TEST(UnitDirection, Validation) {
  EXPECT_NO_THROW(UnitDirection(vec({0, 1})));
  EXPECT_CARTAN_ERROR(UnitDirection(vec({0, 2})), ErrorCode::InvariantViolation);
  EXPECT_CARTAN_ERROR(UnitDirection(vec({0.1, 1})), ErrorCode::InvariantViolation);
}

TEST(Line, CanonicalRepresentative) {
  const Line a(vec({-1, -1}));
  EXPECT_GT(a.representative()(0), 0.0);
  EXPECT_NEAR(a.representative().norm(), 1.0, 1e-15);
  EXPECT_NEAR(a.angle_to(Line(vec({1, 1}))), 0.0, 1e-15);
  EXPECT_NEAR(Line(vec({1, 0})).angle_to(Line(vec({0, 1}))), kPi / 2, 1e-15);
  EXPECT_NEAR(Line(vec({1, 0})).angle_to(Line(vec({-1, 0.1}))), std::atan(0.1), 1e-15);
}

TEST(RotationInPlane, Examples) {
  const UnitDirection e2(vec({0, 1}));
  EXPECT_LE(test::maxabs(rotation_in_plane(0.0, e2).mat(), Mat::Identity(2, 2)), 0.0);
  EXPECT_LE(test::maxabs(rotation_in_plane(kPi / 2, e2).mat(), (Mat(2, 2) << 0, -1, 1, 0).finished()), 1e-15);

  CounterRng rng(50, 0);
  for (int k = 0; k < 100; ++k) {
    const long n = 2 + k % 4;
    const UnitDirection u = sample_direction(rng, n);
    const double t = (rng.uniform() * 2 - 1) * kPi;
    const Mat r = rotation_in_plane(t, u).mat();
    const Vec e1 = basis_vector(0, n);
    EXPECT_LE((r * e1 - (std::cos(t) * e1 + std::sin(t) * u.vec())).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LE((r * u.vec() - (-std::sin(t) * e1 + std::cos(t) * u.vec())).cwiseAbs().maxCoeff(), 1e-12);
    // fixes the complement of span(E_1, U)
    const Mat basis = (Mat(n, 2) << e1, u.vec()).finished();
    const Mat comp = Mat::Identity(n, n) - basis * basis.transpose();
    EXPECT_LE(((r - Mat::Identity(n, n)) * comp).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Reflection, Examples) {
  Mat j = Mat::Identity(3, 3);
  j(0, 0) = -1;
  EXPECT_EQ(reflection_about_hyperplane_normal(basis_vector(0, 3)), j);
  EXPECT_EQ(reflection_about_hyperplane_normal(vec({0, 1})), (Mat(2, 2) << 1, 0, 0, -1).finished());
  CounterRng rng(51, 0);
  for (int k = 0; k < 50; ++k) {
    const Vec v = random_unit_vector(rng, 4);
    const Mat s = reflection_about_hyperplane_normal(v);
    EXPECT_LE(test::maxabs(s * s, Mat::Identity(4, 4)), 1e-12);
    EXPECT_LE(test::maxabs(s * v, -v), 1e-15);
    EXPECT_NEAR(s.determinant(), -1.0, 1e-12);
  }
  EXPECT_CARTAN_ERROR(reflection_about_hyperplane_normal(vec({1, 1})), ErrorCode::InvalidArgument);
}

TEST(TwoReflections, Examples) {
  EXPECT_TRUE(two_reflections_check(0.0, UnitDirection(vec({0, 1}))));
  EXPECT_TRUE(two_reflections_check(kPi / 2, UnitDirection(vec({0, 1}))));
  CounterRng rng(52, 0);
  for (int k = 0; k < 100; ++k) {
    const UnitDirection u = sample_direction(rng, 2 + k % 4);
    EXPECT_TRUE(two_reflections_check((rng.uniform() * 4 - 2) * kPi, u));
  }
}

TEST(HalfAngleLine, Examples) {
  const UnitDirection e2(vec({0, 1}));
  EXPECT_NEAR(half_angle_line(0.0, e2).angle_to(Line(vec({1, 0}))), 0.0, 1e-15);
  EXPECT_NEAR(half_angle_line(kPi, e2).angle_to(Line(vec({0, 1}))), 0.0, 1e-15);
  CounterRng rng(53, 0);
  for (int k = 0; k < 200; ++k) {
    const long n = 2 + k % 4;
    const UnitDirection u = sample_direction(rng, n);
    const double t = rng.uniform() * 2 * kPi;
    const Plane viaRho = rho0(rotation_in_plane(t, u), Signature(1, n - 1));
    EXPECT_LE(plane_distance(half_angle_line(t, u).as_plane(), viaRho), 1e-8);
  }
}

TEST(LineBundleExp, Examples) {
  const UnitDirection e2(vec({0, 1}));
  const Motion a = line_bundle_exp(0.0, e2, 1.0);
  EXPECT_LE(motion_distance(a, Motion(Rotation::identity(2), vec({1, 0}))), 0.0);
  const Motion b = line_bundle_exp(kPi, e2, 1.0);
  EXPECT_LE(test::maxabs(b.rot.mat(), rot2(kPi)), 1e-15);
  EXPECT_NEAR(b.trans(0), 0.0, 1e-12);
  EXPECT_NEAR(b.trans(1), 2 / kPi, 1e-12);
}

TEST(LineBundleExp, MatchesSeExp) {
  CounterRng rng(54, 0);
  for (int k = 0; k < 300; ++k) {
    const long n = 2 + k % 4;
    const UnitDirection u = sample_direction(rng, n);
    const double t = (rng.uniform() * 2 - 1) * 2 * kPi;
    const double lambda = (rng.uniform() * 2 - 1) * 3;
    const Screw xi(SkewMatrix(-t * wedge(basis_vector(0, n), u.vec())), lambda * basis_vector(0, n));
    EXPECT_LE(motion_distance(line_bundle_exp(t, u, lambda), se_exp(xi)), 1e-10);
    EXPECT_TRUE(in_Q(line_bundle_exp(t, u, lambda), Signature(1, n - 1)));
  }
}

TEST(MoebiusGrid, Examples) {
  const auto single = moebius_grid(1, 1, 0.0);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].theta, 0.0);
  EXPECT_EQ(single[0].lambda, 0.0);
  EXPECT_EQ(single[0].r00, 1.0);
  EXPECT_EQ(single[0].r11, 1.0);
  EXPECT_EQ(single[0].x0, 0.0);

  const auto grid = moebius_grid(4, 3, 1.0);
  ASSERT_EQ(grid.size(), 12u);
  const MoebiusRecord& r = grid[2 * 3 + 2]; // θ = π, λ = 1
  EXPECT_NEAR(r.theta, kPi, 1e-15);
  EXPECT_EQ(r.lambda, 1.0);
  EXPECT_NEAR(r.x0, 0.0, 1e-12);
  EXPECT_NEAR(r.x1, 2 / kPi, 1e-12);
}

TEST(MoebiusGrid, RecordsLieInCartanModel) {
  for (const MoebiusRecord& r : moebius_grid(32, 5, 2.0)) {
    const Motion g(Rotation((Mat(2, 2) << r.r00, r.r01, r.r10, r.r11).finished()), vec({r.x0, r.x1}));
    EXPECT_TRUE(in_Q(g, Signature(1, 1)));
    EXPECT_NO_THROW(CartanMotion(g, Signature(1, 1)));
    const BundlePoint b = rho(CartanMotion(g, Signature(1, 1)));
    EXPECT_LE(std::abs(Line(b.plane().frame().cols().col(0)).angle_to(Line(vec({std::cos(r.line_angle), std::sin(r.line_angle)})))),
              1e-9);
  }
}

TEST(MoebiusGrid, ParallelMatchesSerial) {
  const auto a = moebius_grid(64, 9, 2.0);
  const auto b = moebius_grid_parallel(64, 9, 2.0);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(moebius_csv_row(a[i]), moebius_csv_row(b[i]));
  }
}

TEST(MoebiusSeam, AllPairsPass) {
  for (long nt : {16L, 64L, 128L}) {
    const auto grid = moebius_grid(nt, 9, 2.0);
    const SeamReport rep = moebius_seam_check(grid, nt, 9);
    EXPECT_EQ(rep.pairs, 8);
    EXPECT_EQ(rep.passed, rep.pairs);
    EXPECT_LE(rep.max_line_angle, 2 * kPi / nt);
  }
}

TEST(MoebiusSeam, DetectsMissingTwist) {
  // Flipping the sign of the fiber on the last column (an untwisted band)
  // must break the orientation-reversal test.
  auto grid = moebius_grid(32, 5, 1.0);
  for (long j = 0; j < 5; ++j) {
    MoebiusRecord& r = grid[31 * 5 + j];
    r.y0 = -r.y0;
    r.y1 = -r.y1;
    r.x0 = -r.x0;
    r.x1 = -r.x1;
  }
  const SeamReport rep = moebius_seam_check(grid, 32, 5);
  EXPECT_EQ(rep.pairs, 4);
  EXPECT_EQ(rep.passed, 0);
}

TEST(MoebiusCsv, Format) {
  EXPECT_EQ(moebius_csv_header(), "theta,lambda,r00,r01,r10,r11,x0,x1,line_angle,y0,y1");
  const auto grid = moebius_grid(1, 1, 0.0);
  EXPECT_EQ(moebius_csv_row(grid[0]), "0,0,1,0,0,1,0,0,0,0,0");
}

} // namespace
} // namespace cartan
