#include "cartan/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "cartan/bundle.hpp"
#include "cartan/error.hpp"
#include "cartan/projective.hpp"
#include "cartan/sampling.hpp"
#include "cartan/serialize.hpp"
#include "cartan/tolerances.hpp"
#include "cartan/verify.hpp"

namespace cartan::cli {

namespace {

constexpr const char* kTolScaleEnv = "CARTAN_BUNDLE_TOL_SCALE";

struct Options {
  std::string in_path;
  std::string out_path;
  long n = 4;
  long p = 2;
  std::uint64_t seed = 0;
  long samples = 1;
  std::string format = "json";
  std::string kind;
  double bound = -1.0;
  bool so = false, se = false, dp = false;
  bool resolve_pi = false;
  bool serial = false;
  bool timing = false;
  long num_theta = 64;
  long num_lambda = 9;
  double lambda_max = 2.0;
};

double parse_double(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) {
      throw std::invalid_argument(text);
    }
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument, "cannot parse " + what + " as a number", {{"value", text}});
  }
}

// Strips --tol.<name> options (CLI11 has no dynamic option names) and applies
// them together with the environment scale.
Tolerances extract_tolerances(std::vector<std::string>& args) {
  Tolerances tol = tolerances();
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a.rfind("--tol.", 0) != 0) {
      rest.push_back(a);
      continue;
    }
    std::string name = a.substr(6);
    std::string value;
    if (const auto eq = name.find('='); eq != std::string::npos) {
      value = name.substr(eq + 1);
      name = name.substr(0, eq);
    } else if (i + 1 < args.size()) {
      value = args[++i];
    } else {
      throw Error(ErrorCode::InvalidArgument, "missing value for " + a);
    }
    tol.set(name, parse_double(value, a));
  }
  args = std::move(rest);
  if (const char* env = std::getenv(kTolScaleEnv); env != nullptr && *env != '\0') {
    const double scale = parse_double(env, kTolScaleEnv);
    if (!(scale > 0.0)) {
      throw Error(ErrorCode::InvalidArgument, std::string(kTolScaleEnv) + " must be positive", {{"value", scale}});
    }
    tol = tol.scaled(scale);
  }
  return tol;
}

Json read_input(const Options& opt, std::istream& in) {
  std::string text;
  if (!opt.in_path.empty()) {
    std::ifstream file(opt.in_path);
    if (!file) {
      throw Error(ErrorCode::InvalidArgument, "cannot open input file", {{"path", opt.in_path}});
    }
    std::stringstream buf;
    buf << file.rdbuf();
    text = buf.str();
  } else {
    std::stringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed JSON: ") + e.what());
  }
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::ParseError, std::string("missing field '") + key + "'", {{"field", key}});
  }
  return j.at(key);
}

Signature signature_for(const Options& opt, long n) {
  if (opt.p < 0 || opt.p > n) {
    throw Error(ErrorCode::InvalidArgument, "--p must satisfy 0 <= p <= n", {{"n", n}, {"p", opt.p}});
  }
  return Signature(opt.p, n - opt.p);
}

void check_config(const Options& opt) {
  if (opt.p < 1 || opt.p >= opt.n) {
    throw Error(ErrorCode::InvalidArgument, "configuration requires 1 <= p < n", {{"n", opt.n}, {"p", opt.p}});
  }
  if (opt.samples < 1) {
    throw Error(ErrorCode::InvalidArgument, "--samples must be >= 1", {{"samples", opt.samples}});
  }
}

Json cmd_exp(const Options& opt, const Json& input) {
  if (opt.so) {
    return to_json(so_exp(skew_from_json(input)).mat());
  }
  if (opt.dp) {
    return to_json(dp_exp_full(dp_element_from_json(input)));
  }
  return to_json(se_exp(screw_from_json(input)));
}

Json cmd_log(const Options& opt, const Json& input) {
  const BranchPolicy policy = opt.resolve_pi ? BranchPolicy::ResolvePositive : BranchPolicy::Strict;
  if (opt.so) {
    return to_json(so_log(rotation_from_json(input), policy).mat());
  }
  if (opt.dp) {
    return to_json(dp_log_full(cartan_motion_from_json(input)));
  }
  return to_json(se_log(motion_from_json(input), policy));
}

Json cmd_embed(const Json& input) {
  if (input.is_object() && input.contains("plane")) {
    return to_json(rho_inv(bundle_point_from_json(input)));
  }
  return to_json(cartan_embed0(plane_from_json(input)));
}

Json cmd_project(const Json& input) {
  if (input.is_object() && input.contains("X")) {
    return to_json(rho(cartan_motion_from_json(input)));
  }
  return to_json(rho0(cartan_rotation_from_json(input)));
}

Json cmd_act(const Json& input) {
  const Motion a = motion_from_json(member(input, "a"));
  if (input.contains("point")) {
    return to_json(bundle_act(a, bundle_point_from_json(input.at("point"))));
  }
  const Motion g = motion_from_json(member(input, "g"));
  const Signature sig(member(input, "p").get<long>(), member(input, "q").get<long>());
  return to_json(twisted_act(a, g, sig));
}

Json cmd_transport(const Json& input) {
  return to_json(find_transporter(bundle_point_from_json(member(input, "src")),
                                  bundle_point_from_json(member(input, "dst"))));
}

Json cmd_tau(const Options& opt, const Json& input) {
  const Motion g = motion_from_json(input);
  return to_json(tau(g, signature_for(opt, g.n())));
}

Json sample_one(const Options& opt, CounterRng& rng) {
  const Signature sig(opt.p, opt.n - opt.p);
  const std::string& k = opt.kind;
  if (k == "rotation") return to_json(sample_rotation(rng, opt.n).mat());
  if (k == "motion") return to_json(sample_motion(rng, opt.n));
  if (k == "skew") return to_json(sample_skew(rng, opt.n).mat());
  if (k == "screw") return to_json(sample_screw(rng, opt.n, opt.bound > 0.0 ? opt.bound : 4.0));
  if (k == "plane") return to_json(sample_plane(rng, opt.n, opt.p));
  if (k == "bundle") return to_json(sample_bundle_point(rng, opt.n, opt.p));
  if (k == "cartan") return to_json(sample_cartan_motion(rng, opt.n, opt.p));
  if (k == "dp") {
    return to_json(sample_dp_element(rng, sig, opt.bound > 0.0 ? opt.bound : std::numbers::pi - 0.1));
  }
  if (k == "fixed") return to_json(sample_fixed_point(rng, sig));
  if (k == "q") return to_json(sample_q_element(rng, sig));
  throw Error(ErrorCode::InvalidArgument, "invalid sample kind '" + k + "'", {{"kind", k}});
}

Json cmd_sample(const Options& opt) {
  check_config(opt);
  Json out = Json::array();
  for (long i = 0; i < opt.samples; ++i) {
    CounterRng rng(opt.seed, static_cast<std::uint64_t>(i));
    out.push_back(sample_one(opt, rng));
  }
  return out;
}

void write_output(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out_path);
  if (!file) {
    throw Error(ErrorCode::InvalidArgument, "cannot open output file", {{"path", opt.out_path}});
  }
  file << text;
}

std::string moebius_text(const Options& opt) {
  const std::vector<MoebiusRecord> grid = moebius_grid_parallel(opt.num_theta, opt.num_lambda, opt.lambda_max);
  std::string text;
  if (opt.format == "csv") {
    text = moebius_csv_header() + "\n";
    for (const MoebiusRecord& r : grid) {
      text += moebius_csv_row(r) + "\n";
    }
    return text;
  }
  for (const MoebiusRecord& r : grid) {
    const Json j = {{"theta", r.theta}, {"lambda", r.lambda}, {"r00", r.r00}, {"r01", r.r01},
                    {"r10", r.r10},     {"r11", r.r11},       {"x0", r.x0},   {"x1", r.x1},
                    {"line_angle", r.line_angle}, {"y0", r.y0}, {"y1", r.y1}};
    text += j.dump() + "\n";
  }
  return text;
}

void write_error(std::ostream& err, std::string_view code, const std::string& detail, const Json& context) {
  const Json j = {{"error", code}, {"detail", detail}, {"context", context}};
  err << j.dump() << "\n";
}

} // namespace

int run_command(const std::vector<std::string>& args_in, std::istream& in, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = args_in;
  Options opt;

  CLI::App app{"Cartan model of canonical vector bundles over Grassmannians"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  const auto add_io = [&](CLI::App* sub) {
    sub->add_option("--in", opt.in_path, "input JSON file (default: stdin)");
    sub->add_option("--out", opt.out_path, "output file (default: stdout)");
  };
  const auto add_group_flags = [&](CLI::App* sub) {
    auto* so = sub->add_flag("--so", opt.so, "SO(n) / so(n)");
    auto* se = sub->add_flag("--se", opt.se, "SE(n) / se(n) (default)");
    auto* dp = sub->add_flag("--dp", opt.dp, "d_p and the Cartan model S_p");
    so->excludes(se)->excludes(dp);
    se->excludes(dp);
  };

  auto* exp_cmd = app.add_subcommand("exp", "exponential of a skew matrix, screw, or d_p element");
  add_io(exp_cmd);
  add_group_flags(exp_cmd);

  auto* log_cmd = app.add_subcommand("log", "principal logarithm of a rotation, motion, or S_p element");
  add_io(log_cmd);
  add_group_flags(log_cmd);
  log_cmd->add_flag("--resolve-pi", opt.resolve_pi, "take +pi for rotation angles at the branch boundary");

  auto* embed_cmd = app.add_subcommand("embed", "plane -> S_p^0, or bundle point -> S_p");
  add_io(embed_cmd);
  auto* project_cmd = app.add_subcommand("project", "S_p^0 -> plane (rho0), or S_p -> bundle point (rho)");
  add_io(project_cmd);
  auto* act_cmd = app.add_subcommand("act", "twisted action {a,g,p,q} or bundle action {a,point}");
  add_io(act_cmd);
  auto* transport_cmd = app.add_subcommand("transport", "motion carrying bundle point src to dst");
  add_io(transport_cmd);
  auto* tau_cmd = app.add_subcommand("tau", "orbit map g -> g sigma(g)^-1");
  add_io(tau_cmd);
  tau_cmd->add_option("--p", opt.p, "dimension p of the reference plane")->required();

  auto* sample_cmd = app.add_subcommand("sample", "seeded random values");
  sample_cmd->add_option("--kind", opt.kind, "rotation|motion|skew|screw|plane|bundle|cartan|dp|fixed|q")->required();
  sample_cmd->add_option("--n", opt.n, "ambient dimension");
  sample_cmd->add_option("--p", opt.p, "plane dimension");
  sample_cmd->add_option("--seed", opt.seed, "RNG seed");
  sample_cmd->add_option("--samples", opt.samples, "number of values");
  sample_cmd->add_option("--bound", opt.bound, "norm bound for screw / d_p samples");
  sample_cmd->add_option("--out", opt.out_path, "output file (default: stdout)");

  auto* verify_cmd = app.add_subcommand("verify", "randomized verification of every library property");
  verify_cmd->add_option("--n", opt.n, "ambient dimension");
  verify_cmd->add_option("--p", opt.p, "plane dimension");
  verify_cmd->add_option("--seed", opt.seed, "RNG seed");
  opt.samples = 500;
  verify_cmd->add_option("--samples", opt.samples, "samples per property");
  verify_cmd->add_flag("--serial", opt.serial, "use the serial reference kernels");
  verify_cmd->add_flag("--timing", opt.timing, "include wall time in the report");
  verify_cmd->add_option("--out", opt.out_path, "output file (default: stdout)");

  auto* moebius_cmd = app.add_subcommand("moebius", "sample the Moebius band C(2,1) as exp(d_1) in SE(2)");
  moebius_cmd->add_option("--num-theta", opt.num_theta, "grid size in theta over [0, 2pi)");
  moebius_cmd->add_option("--num-lambda", opt.num_lambda, "grid size in lambda over [-lambda_max, lambda_max]");
  moebius_cmd->add_option("--lambda-max", opt.lambda_max, "fiber coefficient range");
  moebius_cmd->add_option("--format", opt.format, "json (JSON lines) or csv")->check(CLI::IsMember({"json", "csv"}));
  moebius_cmd->add_option("--out", opt.out_path, "output file (default: stdout)");

  try {
    const ScopedTolerances scoped(extract_tolerances(args));
    if (!args.empty() && args.front().rfind('-', 0) != 0) {
      try {
        static_cast<void>(app.get_subcommand(args.front()));
      } catch (const CLI::OptionNotFound&) {
        throw Error(ErrorCode::InvalidArgument, "unknown command '" + args.front() + "'",
                    {{"command", args.front()}});
      }
    }
    std::reverse(args.begin(), args.end());
    try {
      app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return kOk;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return kOk;
    } catch (const CLI::ParseError& e) {
      write_error(err, error_code_name(ErrorCode::InvalidArgument), e.what(), {{"usage", app.help()}});
      return kDomainError;
    }

    if (verify_cmd->parsed()) {
      VerifyConfig config{opt.n, opt.p, opt.seed, opt.samples, !opt.serial};
      check_config(opt);
      const VerifyReport report = run_verification(config);
      write_output(opt, out, to_json(report, opt.timing).dump(2) + "\n");
      return report.pass ? kOk : kVerifyFailed;
    }
    if (moebius_cmd->parsed()) {
      write_output(opt, out, moebius_text(opt));
      return kOk;
    }
    if (sample_cmd->parsed()) {
      write_output(opt, out, cmd_sample(opt).dump(2) + "\n");
      return kOk;
    }

    const Json input = read_input(opt, in);
    Json result;
    if (exp_cmd->parsed()) result = cmd_exp(opt, input);
    else if (log_cmd->parsed()) result = cmd_log(opt, input);
    else if (embed_cmd->parsed()) result = cmd_embed(input);
    else if (project_cmd->parsed()) result = cmd_project(input);
    else if (act_cmd->parsed()) result = cmd_act(input);
    else if (transport_cmd->parsed()) result = cmd_transport(input);
    else if (tau_cmd->parsed()) result = cmd_tau(opt, input);
    write_output(opt, out, result.dump(2) + "\n");
    return kOk;
  } catch (const Error& e) {
    write_error(err, error_code_name(e.code()), e.what(), e.context());
    return kDomainError;
  } catch (const nlohmann::json::exception& e) {
    write_error(err, error_code_name(ErrorCode::ParseError), e.what(), Json::object());
    return kDomainError;
  }
}

} // namespace cartan::cli
