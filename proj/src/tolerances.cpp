#include "cartan/tolerances.hpp"

#include "cartan/error.hpp"

namespace cartan {

namespace {

Tolerances& global_tolerances() {
  static Tolerances tol;
  return tol;
}

} // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::InvalidArgument: return "invalid_argument";
  case ErrorCode::DimensionMismatch: return "dimension_mismatch";
  case ErrorCode::InvariantViolation: return "invariant_violation";
  case ErrorCode::DegenerateSpanningSet: return "degenerate_spanning_set";
  case ErrorCode::NotOrthogonal: return "not_orthogonal";
  case ErrorCode::IllConditionedSpectrum: return "ill_conditioned_spectrum";
  case ErrorCode::NotOrthogonalSymmetry: return "not_an_orthogonal_symmetry";
  case ErrorCode::LogBranchAmbiguity: return "log_branch_ambiguity";
  case ErrorCode::YOmegaSingular: return "y_omega_singular";
  case ErrorCode::NotInCartanModel: return "not_in_cartan_model";
  case ErrorCode::CutLocus: return "cut_locus";
  case ErrorCode::NearSingularIsomorphism: return "near_singular_isomorphism";
  case ErrorCode::NumericalFault: return "numerical_fault";
  case ErrorCode::ParseError: return "parse_error";
  }
  return "unknown";
}

Tolerances Tolerances::scaled(double factor) const {
  Tolerances t = *this;
  t.orth *= factor;
  t.invol *= factor;
  t.eig *= factor;
  t.recon *= factor;
  t.rank *= factor;
  t.branch *= factor;
  t.sing *= factor;
  t.plane *= factor;
  t.fiber *= factor;
  t.skew *= factor;
  return t;
}

std::map<std::string, double> Tolerances::as_map() const {
  return {{"orth", orth},   {"invol", invol}, {"eig", eig},     {"recon", recon},
          {"rank", rank},   {"branch", branch}, {"sing", sing}, {"plane", plane},
          {"fiber", fiber}, {"skew", skew},   {"cond", cond}};
}

void Tolerances::set(const std::string& name, double value) {
  if (!(value > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "tolerance must be positive", {{"name", name}, {"value", value}});
  }
  double* slot = nullptr;
  if (name == "orth") slot = &orth;
  else if (name == "invol") slot = &invol;
  else if (name == "eig") slot = &eig;
  else if (name == "recon") slot = &recon;
  else if (name == "rank") slot = &rank;
  else if (name == "branch") slot = &branch;
  else if (name == "sing") slot = &sing;
  else if (name == "plane") slot = &plane;
  else if (name == "fiber") slot = &fiber;
  else if (name == "skew") slot = &skew;
  else if (name == "cond") slot = &cond;
  if (slot == nullptr) {
    throw Error(ErrorCode::InvalidArgument, "unknown tolerance '" + name + "'", {{"name", name}});
  }
  *slot = value;
}

const Tolerances& tolerances() { return global_tolerances(); }

void set_tolerances(const Tolerances& tol) { global_tolerances() = tol; }

} // namespace cartan
