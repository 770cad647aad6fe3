#include "cartan/serialize.hpp"

#include <string>

#include "cartan/error.hpp"

namespace cartan {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'", {{"field", key}});
  }
  return j.at(key);
}

long integer_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) {
    throw Error(ErrorCode::ParseError, std::string("field '") + key + "' must be an integer", {{"field", key}});
  }
  return v.get<long>();
}

double number(const Json& j) {
  if (!j.is_number()) {
    throw Error(ErrorCode::ParseError, "expected a number");
  }
  return j.get<double>();
}

Signature signature_from_json(const Json& j) { return Signature(integer_field(j, "p"), integer_field(j, "q")); }

} // namespace

Json to_json(const Mat& m) {
  Json data = Json::array();
  for (long i = 0; i < m.rows(); ++i) {
    for (long k = 0; k < m.cols(); ++k) {
      data.push_back(m(i, k));
    }
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Json to_json(const Vec& v) {
  Json out = Json::array();
  for (long i = 0; i < v.size(); ++i) {
    out.push_back(v(i));
  }
  return out;
}

Json to_json(const Plane& plane) {
  return {{"n", plane.n()}, {"p", plane.p()}, {"frame", to_json(plane.frame().cols())}};
}

Json to_json(const Motion& g) { return {{"R", to_json(g.rot.mat())}, {"X", to_json(g.trans)}}; }

Json to_json(const Screw& xi) { return {{"omega", to_json(xi.omega.mat())}, {"v", to_json(xi.v)}}; }

Json to_json(const BundlePoint& b) { return {{"plane", to_json(b.plane())}, {"fiber", to_json(b.fiber())}}; }

Json to_json(const CartanMotion& s) {
  Json j = to_json(s.motion());
  j["p"] = s.sig().p;
  j["q"] = s.sig().q;
  return j;
}

Json to_json(const CartanRotation& r) {
  return {{"R", to_json(r.rot().mat())}, {"p", r.sig().p}, {"q", r.sig().q}};
}

Json to_json(const DpElement& xi) {
  return {{"p", xi.gen.sig.p}, {"q", xi.gen.sig.q}, {"B", to_json(xi.gen.b)}, {"v", to_json(xi.v)}};
}

Mat matrix_from_json(const Json& j) {
  const long rows = integer_field(j, "rows");
  const long cols = integer_field(j, "cols");
  const Json& data = field(j, "data");
  if (rows < 0 || cols < 0 || !data.is_array() || static_cast<long>(data.size()) != rows * cols) {
    throw Error(ErrorCode::ParseError, "matrix data does not match rows*cols", {{"rows", rows}, {"cols", cols}});
  }
  Mat m(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long k = 0; k < cols; ++k) {
      m(i, k) = number(data[static_cast<std::size_t>(i * cols + k)]);
    }
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::ParseError, "matrix has non-finite entries");
  }
  return m;
}

Vec vector_from_json(const Json& j) {
  if (!j.is_array()) {
    throw Error(ErrorCode::ParseError, "expected an array of numbers");
  }
  Vec v(static_cast<long>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v(static_cast<long>(i)) = number(j[i]);
  }
  if (!v.allFinite()) {
    throw Error(ErrorCode::ParseError, "vector has non-finite entries");
  }
  return v;
}

Plane plane_from_json(const Json& j) {
  const long n = integer_field(j, "n");
  const long p = integer_field(j, "p");
  const Mat frame = matrix_from_json(field(j, "frame"));
  if (frame.rows() != n || frame.cols() != p) {
    throw Error(ErrorCode::ParseError, "plane frame does not match (n, p)",
                {{"n", n}, {"p", p}, {"rows", frame.rows()}, {"cols", frame.cols()}});
  }
  return plane_from_span(frame);
}

Rotation rotation_from_json(const Json& j) { return Rotation(matrix_from_json(j)); }

SkewMatrix skew_from_json(const Json& j) { return SkewMatrix(matrix_from_json(j)); }

Motion motion_from_json(const Json& j) {
  return Motion(rotation_from_json(field(j, "R")), vector_from_json(field(j, "X")));
}

Screw screw_from_json(const Json& j) {
  return Screw(skew_from_json(field(j, "omega")), vector_from_json(field(j, "v")));
}

BundlePoint bundle_point_from_json(const Json& j) {
  return BundlePoint(plane_from_json(field(j, "plane")), vector_from_json(field(j, "fiber")));
}

CartanMotion cartan_motion_from_json(const Json& j) {
  return CartanMotion(motion_from_json(j), signature_from_json(j));
}

CartanRotation cartan_rotation_from_json(const Json& j) {
  return CartanRotation(rotation_from_json(field(j, "R")), signature_from_json(j));
}

DpElement dp_element_from_json(const Json& j) {
  const Signature sig = signature_from_json(j);
  return DpElement(DpGenerator(sig, matrix_from_json(field(j, "B"))), vector_from_json(field(j, "v")));
}

} // namespace cartan
