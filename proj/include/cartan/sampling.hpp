#pragma once

// Seeded samplers for every domain type. All draws go through a
// CounterRng, so a value is a pure function of (seed, stream, counter).

#include "cartan/bundle.hpp"
#include "cartan/projective.hpp"
#include "cartan/random.hpp"

namespace cartan {

Rotation sample_rotation(CounterRng& rng, long n);
/// Haar rotation with Gaussian translation of standard deviation `scale`.
Motion sample_motion(CounterRng& rng, long n, double scale = 1.0);
/// Skew matrix with Gaussian entries of standard deviation `scale`.
SkewMatrix sample_skew(CounterRng& rng, long n, double scale = 1.0);
/// Screw with ‖[[ω, v], [0, 0]]‖_F uniform in [0, max_norm].
Screw sample_screw(CounterRng& rng, long n, double max_norm);
Plane sample_plane(CounterRng& rng, long n, long p);
BundlePoint sample_bundle_point(CounterRng& rng, long n, long p, double scale = 1.0);
CartanMotion sample_cartan_motion(CounterRng& rng, long n, long p, double scale = 1.0);
/// d_p element with spectral norm of B uniform in [0, max_b_norm] and
/// Gaussian v of standard deviation `scale`.
DpElement sample_dp_element(CounterRng& rng, const Signature& sig, double max_b_norm, double scale = 1.0);
/// (blockdiag(A, B), (0_p, x)) with A ∈ O(p), B ∈ O(q), det A·det B = 1.
Motion sample_fixed_point(CounterRng& rng, const Signature& sig);
/// Element of Q from any connected component: R = (I − 2P_k)·J where the
/// plane has dimension k ≡ p (mod 2), and Y in that plane.
Motion sample_q_element(CounterRng& rng, const Signature& sig);
UnitDirection sample_direction(CounterRng& rng, long n);

} // namespace cartan
