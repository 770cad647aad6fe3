#pragma once

// JSON encodings:
//   matrix        {"rows": r, "cols": c, "data": [row-major doubles]}
//   plane         {"n": n, "p": p, "frame": matrix}
//   motion        {"R": matrix, "X": [doubles]}
//   screw         {"omega": matrix, "v": [doubles]}
//   bundle point  {"plane": plane, "fiber": [doubles]}
//   cartan motion motion + {"p": p, "q": q}
//   cartan rot.   {"R": matrix, "p": p, "q": q}
//   d_p element   {"p": p, "q": q, "B": matrix (q×p), "v": [doubles]}
// Decoding validates every type invariant and throws Error(ParseError) on
// malformed input.

#include <nlohmann/json.hpp>

#include "cartan/bundle.hpp"
#include "cartan/grassmann.hpp"
#include "cartan/liegroup.hpp"

namespace cartan {

using Json = nlohmann::json;

Json to_json(const Mat& m);
Json to_json(const Vec& v);
Json to_json(const Plane& plane);
Json to_json(const Motion& g);
Json to_json(const Screw& xi);
Json to_json(const BundlePoint& b);
Json to_json(const CartanMotion& s);
Json to_json(const CartanRotation& r);
Json to_json(const DpElement& xi);

Mat matrix_from_json(const Json& j);
Vec vector_from_json(const Json& j);
Plane plane_from_json(const Json& j);
Rotation rotation_from_json(const Json& j);
SkewMatrix skew_from_json(const Json& j);
Motion motion_from_json(const Json& j);
Screw screw_from_json(const Json& j);
BundlePoint bundle_point_from_json(const Json& j);
CartanMotion cartan_motion_from_json(const Json& j);
CartanRotation cartan_rotation_from_json(const Json& j);
DpElement dp_element_from_json(const Json& j);

} // namespace cartan
