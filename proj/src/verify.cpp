#include "cartan/verify.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include <Eigen/SVD>

#include "cartan/bundle.hpp"
#include "cartan/error.hpp"
#include "cartan/grassmann.hpp"
#include "cartan/oracle.hpp"
#include "cartan/parallel.hpp"
#include "cartan/projective.hpp"
#include "cartan/sampling.hpp"
#include "cartan/tolerances.hpp"

namespace cartan {

namespace {

using SampleBody = std::function<double(CounterRng&)>;

struct Property {
  std::string module;
  std::string name;
  double threshold;
  SampleBody body;
  long samples = -1; // -1: use the configured count
};

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double q_residual(const Motion& g, const Signature& sig) {
  const Motion s = se_mul(sigma(g, sig), g);
  return std::max(max_abs(s.rot.mat() - Mat::Identity(g.n(), g.n())), s.trans.cwiseAbs().maxCoeff());
}

double fiber_distance(const BundlePoint& a, const BundlePoint& b) {
  return std::max(plane_distance(a.plane(), b.plane()), (a.fiber() - b.fiber()).cwiseAbs().maxCoeff());
}

// Largest canonical angle of a rotation.
double widest_angle(const Rotation& r) {
  double widest = 0.0;
  for (double a : canonical_rotation_form(r.mat()).angles) {
    widest = std::max(widest, std::abs(a));
  }
  return widest;
}

// Skew matrix with spectral norm uniform in [0, bound).
SkewMatrix bounded_skew(CounterRng& rng, long n, double bound) {
  const SkewMatrix w = sample_skew(rng, n);
  const Vec sv = Eigen::JacobiSVD<Mat>(w.mat()).singularValues();
  const double s = sv(0) > 0.0 ? bound * rng.uniform() / sv(0) : 0.0;
  return SkewMatrix(s * w.mat());
}

std::vector<Property> build_properties(long n, long p) {
  const Signature sig(p, n - p);
  const double dn = static_cast<double>(n);
  const Tolerances& tol = tolerances();
  std::vector<Property> props;

  // matcore
  props.push_back({"matcore", "skew_wedge_antisymmetry", 0.0, [n](CounterRng& rng) {
                     const long i = static_cast<long>(rng() % static_cast<std::uint64_t>(n));
                     long j = static_cast<long>(rng() % static_cast<std::uint64_t>(n - 1));
                     j += j >= i ? 1 : 0;
                     const Mat w = skew_wedge(i, j, n);
                     return max_abs(w.transpose() + w);
                   }});
  props.push_back({"matcore", "projector_idempotent_symmetric", 1e-12 * dn, [n, p](CounterRng& rng) {
                     const Mat pr = projector(orthonormalize(gaussian_matrix(rng, n, p)));
                     return std::max(max_abs(pr * pr - pr), max_abs(pr - pr.transpose()));
                   }});
  props.push_back({"matcore", "canonical_rotation_reconstruction", 1e-10, [n](CounterRng& rng) {
                     const Mat r = random_rotation_matrix(rng, n);
                     const CanonicalRotationForm f = canonical_rotation_form(r);
                     const double det_err = std::abs(f.q.determinant() - 1.0);
                     return std::max((f.q * f.rotation_blocks() * f.q.transpose() - r).norm(), det_err);
                   }});
  props.push_back({"matcore", "completion_special_orthogonal", 1e-10, [n, p](CounterRng& rng) {
                     const Frame f = orthonormalize(gaussian_matrix(rng, n, p));
                     const Mat a = complete_to_special_orthogonal(f);
                     const Mat lead = a.leftCols(p);
                     return std::max({std::abs(a.determinant() - 1.0),
                                      max_abs(a.transpose() * a - Mat::Identity(n, n)),
                                      max_abs(lead * lead.transpose() - projector(f))});
                   }});
  props.push_back({"matcore", "symmetric_involution_eigenspace", 1e-10, [n, p, sig](CounterRng& rng) {
                     const Mat a = random_rotation_matrix(rng, n);
                     const Mat s = a * sig.matrix() * a.transpose();
                     const Frame minus = eigenspace_of_symmetric_involution(s, -1);
                     const Frame plus = eigenspace_of_symmetric_involution(s, 1);
                     if (minus.p() != p || plus.p() != n - p) {
                       return std::numeric_limits<double>::infinity();
                     }
                     return std::max(max_abs(s * minus.cols() + minus.cols()), max_abs(s * plus.cols() - plus.cols()));
                   }});

  // liegroup
  props.push_back({"liegroup", "se_group_axioms", 1e-11 * dn, [n](CounterRng& rng) {
                     const Motion a = sample_motion(rng, n), b = sample_motion(rng, n), c = sample_motion(rng, n);
                     const double assoc = motion_distance(se_mul(se_mul(a, b), c), se_mul(a, se_mul(b, c)));
                     const double inv = std::max(motion_distance(se_mul(a, se_inv(a)), Motion::identity(n)),
                                                 motion_distance(se_mul(se_inv(a), a), Motion::identity(n)));
                     return std::max(assoc, inv);
                   }});
  props.push_back({"liegroup", "se_exp_series_oracle", 1e-9, [n](CounterRng& rng) {
                     const Screw xi = sample_screw(rng, n, 4.0);
                     return oracle::max_abs_diff(se_exp(xi).homogeneous(), oracle::series_exp(xi.homogeneous()));
                   }});
  props.push_back({"liegroup", "y_omega_identity", 1e-10, [n](CounterRng& rng) {
                     const SkewMatrix w = sample_skew(rng, n);
                     const Vec v = gaussian_vector(rng, n);
                     const Mat r = so_exp(w).mat();
                     return (w.mat() * y_omega(w, v) - (r - Mat::Identity(n, n)) * v).cwiseAbs().maxCoeff();
                   }});
  props.push_back({"liegroup", "y_omega_series_oracle", 1e-9, [n](CounterRng& rng) {
                     const Screw xi = sample_screw(rng, n, 4.0);
                     return (y_omega(xi.omega, xi.v) - oracle::series_y_omega(xi.omega.mat(), xi.v))
                         .cwiseAbs()
                         .maxCoeff();
                   }});
  props.push_back({"liegroup", "y_omega_solve_roundtrip", 1e-9, [n](CounterRng& rng) {
                     const SkewMatrix w = bounded_skew(rng, n, std::numbers::pi);
                     const Vec v = gaussian_vector(rng, n);
                     return (y_omega_solve(w, y_omega(w, v)) - v).cwiseAbs().maxCoeff();
                   }});
  props.push_back({"liegroup", "so_log_roundtrip", 1e-8, [n](CounterRng& rng) {
                     const SkewMatrix w = bounded_skew(rng, n, std::numbers::pi - 1e-3);
                     const Rotation r = so_exp(w);
                     return max_abs(so_exp(so_log(r)).mat() - r.mat());
                   }});
  props.push_back({"liegroup", "se_log_roundtrip", 1e-8, [n](CounterRng& rng) {
                     Motion g = sample_motion(rng, n);
                     while (widest_angle(g.rot) > std::numbers::pi - 1e-3) {
                       g = sample_motion(rng, n);
                     }
                     return motion_distance(se_exp(se_log(g)), g);
                   }});

  // grassmann
  props.push_back({"grassmann", "sigma0_involutive_automorphism", 1e-12 * dn, [n, sig](CounterRng& rng) {
                     const Rotation a = sample_rotation(rng, n), b = sample_rotation(rng, n);
                     const double invol = max_abs(sigma0(sigma0(a, sig), sig).mat() - a.mat());
                     const double hom = max_abs(sigma0(a * b, sig).mat() - (sigma0(a, sig) * sigma0(b, sig)).mat());
                     return std::max(invol, hom);
                   }});
  props.push_back({"grassmann", "q0_twisted_invariance", tol.invol, [n, sig](CounterRng& rng) {
                     const Rotation a = sample_rotation(rng, n);
                     const Rotation r = sample_q_element(rng, sig).rot;
                     const Mat rj = twisted_act0(a, r, sig).mat() * sig.matrix();
                     return (rj * rj - Mat::Identity(n, n)).norm();
                   }});
  props.push_back({"grassmann", "rho0_embed_roundtrips", 1e-9, [n, p, sig](CounterRng& rng) {
                     const Plane plane = sample_plane(rng, n, p);
                     const CartanRotation r = cartan_embed0(plane);
                     const double forward = plane_distance(rho0(r), plane);
                     const CartanRotation s = dp_exp(DpGenerator(sig, gaussian_matrix(rng, n - p, p)));
                     const double backward = max_abs(cartan_embed0(rho0(s)).rot().mat() - s.rot().mat());
                     return std::max(forward, backward);
                   }});
  props.push_back({"grassmann", "rho0_equivariance", tol.plane, [n, p](CounterRng& rng) {
                     const Rotation a = sample_rotation(rng, n);
                     const CartanRotation r = cartan_embed0(sample_plane(rng, n, p));
                     const CartanRotation moved(twisted_act0(a, r.rot(), r.sig()), r.sig());
                     return plane_distance(rho0(moved), rho0(r).transformed(a));
                   }});
  props.push_back({"grassmann", "dp_exp_in_cartan_model", tol.invol, [n, sig](CounterRng& rng) {
                     const CartanRotation r = dp_exp(DpGenerator(sig, 2.0 * gaussian_matrix(rng, sig.q, sig.p)));
                     const Mat rj = r.rot().mat() * sig.matrix();
                     return std::max(max_abs(rj * rj - Mat::Identity(n, n)), max_abs(rj - rj.transpose()));
                   }});
  props.push_back({"grassmann", "dp_log0_roundtrip", 1e-8, [sig](CounterRng& rng) {
                     const DpElement xi = sample_dp_element(rng, sig, std::numbers::pi - 0.1);
                     const CartanRotation r = dp_exp(xi.gen);
                     return max_abs(dp_log0(r).b - xi.gen.b);
                   }});

  // bundle
  props.push_back({"bundle", "fixed_point_characterization", 1e-12, [n, sig](CounterRng& rng) {
                     const Motion fixed = sample_fixed_point(rng, sig);
                     const double err = motion_distance(sigma(fixed, sig), fixed);
                     if (!is_fixed_point(fixed, sig)) {
                       return std::numeric_limits<double>::infinity();
                     }
                     // A generic motion is not fixed; either answer must agree with the block test.
                     const Motion g = sample_motion(rng, n);
                     const bool generic = is_fixed_point(g, sig);
                     return generic ? std::numeric_limits<double>::infinity() : err;
                   }});
  props.push_back({"bundle", "sigma_involutive_automorphism", 1e-12 * dn, [n, sig](CounterRng& rng) {
                     const Motion g = sample_motion(rng, n), h = sample_motion(rng, n);
                     const double invol = motion_distance(sigma(sigma(g, sig), sig), g);
                     const double hom = motion_distance(sigma(se_mul(g, h), sig), se_mul(sigma(g, sig), sigma(h, sig)));
                     return std::max(invol, hom);
                   }});
  props.push_back({"bundle", "q_twisted_invariance", tol.invol, [n, sig](CounterRng& rng) {
                     const Motion a = sample_motion(rng, n);
                     const Motion g = sample_q_element(rng, sig);
                     return q_residual(twisted_act(a, g, sig), sig);
                   }});
  props.push_back({"bundle", "tau_image_in_Q", 1e-10, [n, sig](CounterRng& rng) {
                     const CartanMotion t = tau(sample_motion(rng, n), sig);
                     return motion_distance(sigma(t.motion(), sig), se_inv(t.motion()));
                   }});
  props.push_back({"bundle", "rho_equivariance", 1e-9, [n, p](CounterRng& rng) {
                     const Motion a = sample_motion(rng, n);
                     const CartanMotion s = sample_cartan_motion(rng, n, p);
                     const CartanMotion moved(twisted_act(a, s.motion(), s.sig()), s.sig());
                     return fiber_distance(rho(moved), bundle_act(a, rho(s)));
                   }});
  props.push_back({"bundle", "rho_bijectivity", 1e-9, [n, p, sig](CounterRng& rng) {
                     const BundlePoint b = sample_bundle_point(rng, n, p);
                     const double forward = fiber_distance(rho(rho_inv(b)), b);
                     const CartanMotion s = tau(sample_motion(rng, n), sig);
                     const double backward = motion_distance(rho_inv(rho(s)).motion(), s.motion());
                     return std::max(forward, backward);
                   }});
  props.push_back({"bundle", "bundle_action_law", 1e-10, [n, p](CounterRng& rng) {
                     const Motion a1 = sample_motion(rng, n), a2 = sample_motion(rng, n);
                     const BundlePoint b = sample_bundle_point(rng, n, p);
                     return fiber_distance(bundle_act(se_mul(a1, a2), b), bundle_act(a1, bundle_act(a2, b)));
                   }});
  props.push_back({"bundle", "dp_exp_routes_agree", 1e-10, [sig](CounterRng& rng) {
                     const DpElement xi = sample_dp_element(rng, sig, 2.0 * std::numbers::pi);
                     return motion_distance(dp_exp_full(xi).motion(), dp_exp_full_via_tau(xi).motion());
                   }});
  props.push_back({"bundle", "dp_log_full_roundtrip", 1e-8, [sig](CounterRng& rng) {
                     const DpElement xi = sample_dp_element(rng, sig, std::numbers::pi - 0.1);
                     const DpElement back = dp_log_full(dp_exp_full(xi));
                     return std::max(max_abs(back.gen.b - xi.gen.b), (back.v - xi.v).cwiseAbs().maxCoeff());
                   }});
  props.push_back({"bundle", "double_projection_oracle", 1e-10, [n, sig](CounterRng& rng) {
                     const Rotation a = sample_rotation(rng, n);
                     const Vec x = gaussian_vector(rng, n);
                     const Mat pr = oracle::svd_projector(a.mat().leftCols(sig.p));
                     return (double_projection(a, x, sig) - 2.0 * pr * x).cwiseAbs().maxCoeff();
                   }});
  props.push_back({"bundle", "transporter_witness", 1e-9, [n, p](CounterRng& rng) {
                     const BundlePoint src = sample_bundle_point(rng, n, p);
                     const BundlePoint dst = sample_bundle_point(rng, n, p);
                     return fiber_distance(bundle_act(find_transporter(src, dst), src), dst);
                   }});

  // projective
  props.push_back({"projective", "line_bundle_exp_matches_se_exp", 1e-10, [n](CounterRng& rng) {
                     const UnitDirection u = sample_direction(rng, n);
                     const double theta = (2.0 * rng.uniform() - 1.0) * 2.0 * std::numbers::pi;
                     const double lambda = 2.0 * rng.normal();
                     const Vec e1 = basis_vector(0, n);
                     const Screw xi(SkewMatrix(-theta * wedge(e1, u.vec())), lambda * e1);
                     return motion_distance(line_bundle_exp(theta, u, lambda), se_exp(xi));
                   }});
  props.push_back({"projective", "half_angle_line_matches_rho0", tol.plane, [n](CounterRng& rng) {
                     const UnitDirection u = sample_direction(rng, n);
                     const double theta = (2.0 * rng.uniform() - 1.0) * 2.0 * std::numbers::pi;
                     const Plane from_eigenspace = rho0(rotation_in_plane(theta, u), Signature(1, n - 1));
                     return plane_distance(half_angle_line(theta, u).as_plane(), from_eigenspace);
                   }});
  props.push_back({"projective", "two_reflections", 0.5, [n](CounterRng& rng) {
                     const UnitDirection u = sample_direction(rng, n);
                     const double theta = (2.0 * rng.uniform() - 1.0) * 2.0 * std::numbers::pi;
                     return two_reflections_check(theta, u) ? 0.0 : 1.0;
                   }});
  props.push_back({"projective", "moebius_seam", 0.0,
                   [](CounterRng&) {
                     constexpr long kTheta = 128, kLambda = 9;
                     const auto grid = moebius_grid(kTheta, kLambda, 2.0);
                     const SeamReport seam = moebius_seam_check(grid, kTheta, kLambda);
                     return static_cast<double>(seam.pairs - seam.passed);
                   },
                   1});
  return props;
}

} // namespace

VerifyReport run_verification(const VerifyConfig& config) {
  if (config.p < 1 || config.p >= config.n || config.samples < 1) {
    throw Error(ErrorCode::InvalidArgument, "verify requires 1 <= p < n and samples >= 1",
                {{"n", config.n}, {"p", config.p}, {"samples", config.samples}});
  }
  const auto start = std::chrono::steady_clock::now();
  VerifyReport report;
  report.config = config;
  report.pass = true;

  const std::vector<Property> props = build_properties(config.n, config.p);
  for (std::size_t k = 0; k < props.size(); ++k) {
    const Property& prop = props[k];
    const long count = prop.samples > 0 ? prop.samples : config.samples;
    std::atomic<long> failures{0};
    const std::uint64_t stream_base = static_cast<std::uint64_t>(k) << 32;
    const SampleFn fn = [&](long i) {
      CounterRng rng(config.seed, stream_base + static_cast<std::uint64_t>(i));
      try {
        const double err = prop.body(rng);
        if (!std::isfinite(err)) {
          ++failures;
          return 0.0;
        }
        return err;
      } catch (const std::exception&) {
        ++failures;
        return 0.0;
      }
    };
    const double worst = config.parallel ? max_over_parallel(count, fn) : max_over_serial(count, fn);

    PropertyResult r;
    r.name = prop.name;
    r.module = prop.module;
    r.samples = count;
    r.failures = failures.load();
    r.max_error = worst;
    r.threshold = prop.threshold;
    r.pass = r.failures == 0 && worst <= prop.threshold;
    report.pass = report.pass && r.pass;
    report.properties.push_back(std::move(r));
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json to_json(const VerifyReport& report, bool with_timing) {
  nlohmann::json props = nlohmann::json::array();
  for (const PropertyResult& r : report.properties) {
    props.push_back({{"module", r.module},
                     {"name", r.name},
                     {"samples", r.samples},
                     {"failures", r.failures},
                     {"max_error", r.max_error},
                     {"threshold", r.threshold},
                     {"pass", r.pass}});
  }
  nlohmann::json j = {{"n", report.config.n},
                      {"p", report.config.p},
                      {"seed", report.config.seed},
                      {"samples", report.config.samples},
                      {"pass", report.pass},
                      {"properties", std::move(props)}};
  if (with_timing) {
    j["wall_time_s"] = report.wall_seconds;
  }
  return j;
}

} // namespace cartan
