// lllshift: build, certify, solve and check the free-subshift LLL instance.
//
// Exit codes: 0 success/clean, 1 verification or heuristic failure,
// 2 input error, 3 infeasible or unverified parameters, 4 resample budget exceeded.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lllshift/certificate.hpp"
#include "lllshift/errors.hpp"
#include "lllshift/instance.hpp"
#include "lllshift/io.hpp"
#include "lllshift/solver.hpp"
#include "lllshift/verifier.hpp"

namespace {

using namespace lllshift;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInput = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitBudget = 4;
constexpr std::uint64_t kMinMeasureRuns = 100;


int run(const std::vector<std::string>& args);

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
  }
}

// Every run that writes a file records the manifest next to it: the fields
// that determine the output plus the exact argument vector for `replay`.
void emit_manifest(const std::string& out_path, const std::string& command,
                   const std::vector<std::pair<std::string, std::string>>& fields,
                   const std::vector<std::string>& args) {
  if (out_path.empty() || out_path == "-") return;
  std::string text = "command=" + command + "\n";
  for (const auto& [k, v] : fields) text += k + "=" + v + "\n";
  for (const auto& a : args) text += "arg=" + a + "\n";
  write_text_file(out_path + ".manifest", text);
}

std::shared_ptr<const Window> make_window(GroupKind kind, const std::string& spec, std::uint64_t radius) {
  if (!spec.empty()) return std::make_shared<const Window>(Window::parse(kind, spec));
  return std::make_shared<const Window>(Window::ball(kind, radius));
}

InstanceDescription load_instance(const std::string& path) { return parse_instance(read_text_file(path)); }

int cmd_params(const std::string& group, const std::string& psi_path, std::uint64_t k_flag, const std::string& out,
               const std::vector<std::string>& args) {
  std::uint64_t k = k_flag;
  if (!psi_path.empty()) {
    k = parse_pattern(parse_group_kind(group), read_text_file(psi_path)).size();
  }
  if (k == 0) throw ParseError("params needs --psi or a positive --k");
  const ParameterCertificate cert = derive_certificate(k);
  const bool verified = verify_certificate(cert);
  emit(out, format_certificate(cert, verified));
  emit_manifest(out, "params",
                {{"group", group}, {"psi", psi_path}, {"k", std::to_string(k)}, {"N", std::to_string(cert.N)},
                 {"a", to_decimal_floor(cert.a)}, {"M", std::to_string(cert.M)}},
                args);
  return verified ? kExitOk : kExitInfeasible;
}

int cmd_verify_cert(const std::string& cert_path) {
  const ParameterCertificate cert = parse_certificate(read_text_file(cert_path));
  const CertificateCheck check = check_certificate(cert);
  std::cout << "well_formed=" << check.well_formed << "\n"
            << "b_exceeds_half=" << check.b_exceeds_half << "\n"
            << "occurrence_condition=" << check.occurrence_ok << "\n"
            << "period_condition=" << check.period_ok << "\n"
            << "verified=" << (check.verified() ? "true" : "false") << "\n";
  return check.verified() ? kExitOk : kExitInfeasible;
}

struct BuildOptions {
  std::string group = "Z";
  std::string psi;
  std::string cert;
  std::optional<std::uint64_t> N;
  std::optional<std::uint64_t> M;
  std::uint64_t n_max = 1;
  std::string out;
};

int cmd_build(const BuildOptions& o, const std::vector<std::string>& args) {
  const GroupKind kind = parse_group_kind(o.group);
  std::optional<Pattern> psi;
  if (!o.psi.empty()) psi = parse_pattern(kind, read_text_file(o.psi));

  InstanceDescription d{Instance(kind, std::nullopt, {}), 0, 0, 0, o.n_max, std::nullopt, false};
  if (!o.cert.empty()) {
    if (o.N || o.M) throw ParseError("--cert and --N/--M are mutually exclusive");
    if (!psi) throw ParseError("a certified build needs --psi");
    const ParameterCertificate cert = parse_certificate(read_text_file(o.cert));
    if (cert.k != psi->size()) throw ParseError("certificate k does not match |dom(psi)|");
    if (!verify_certificate(cert)) {
      std::cerr << "certificate does not verify\n";
      return kExitInfeasible;
    }
    d.N = cert.N;
    d.M = cert.M;
    d.a = cert.a;
    d.certified = true;
  } else {
    if (!o.M || (psi && !o.N)) throw ParseError("build needs --cert, or --M (and --N with --psi) for a toy instance");
    d.N = psi ? static_cast<std::size_t>(*o.N) : 0;
    d.M = *o.M;
  }
  d.k = psi ? psi->size() : 0;
  d.instance = Instance::build(kind, psi, d.N, d.M, o.n_max);
  emit(o.out, format_instance(d));
  emit_manifest(o.out, "build",
                {{"group", o.group}, {"psi", o.psi}, {"k", std::to_string(d.k)}, {"N", std::to_string(d.N)},
                 {"M", std::to_string(d.M)}, {"a", d.a ? to_decimal_floor(*d.a) : ""},
                 {"n_max", std::to_string(o.n_max)}},
                args);
  return kExitOk;
}

std::uint64_t effective_n_max(const InstanceDescription& d, std::optional<std::uint64_t> requested) {
  if (!requested) return d.n_max;
  if (*requested > d.n_max) throw ParseError("--n-max exceeds the instance's n_max");
  return *requested;
}

struct SolveOptions {
  std::string instance;
  std::string window;
  std::uint64_t radius = 10;
  std::uint64_t seed = 1;
  std::uint64_t max_resamples = 1'000'000;
  std::optional<std::uint64_t> n_max;
  std::string out;
  std::string report;
};

int cmd_solve(const SolveOptions& o, const std::vector<std::string>& args) {
  const InstanceDescription d = load_instance(o.instance);
  if (!d.certified) std::cerr << "warning: instance is not certified; termination is not guaranteed\n";
  const auto window = make_window(d.instance.kind(), o.window, o.radius);
  const std::uint64_t n_max = effective_n_max(d, o.n_max);
  const SolveReport report = solve(window, d.instance, SolverConfig{n_max, o.max_resamples, o.seed});

  emit(o.out, format_coloring(report.assignment, o.seed, report.resample_count));
  emit_manifest(o.out, "solve",
                {{"group", std::string(to_string(d.instance.kind()))}, {"instance", o.instance},
                 {"k", std::to_string(d.k)}, {"N", std::to_string(d.N)}, {"M", std::to_string(d.M)},
                 {"a", d.a ? to_decimal_floor(*d.a) : ""}, {"n_max", std::to_string(n_max)},
                 {"window", window->to_string()}, {"seed", std::to_string(o.seed)},
                 {"max_resamples", std::to_string(o.max_resamples)}},
                args);
  std::ostringstream summary;
  summary << "status=" << (report.solved() ? "solved" : "max_resamples_exceeded") << "\n"
          << "resamples=" << report.resample_count << "\n"
          << "distinct_constraints_resampled=" << report.histogram.size() << "\n";
  for (const auto& [c, count] : report.histogram) summary << "histogram " << c << " " << count << "\n";
  if (!o.report.empty()) {
    write_text_file(o.report, summary.str());
  } else if (!o.out.empty() && o.out != "-") {
    std::cout << summary.str();
  }
  return report.solved() ? kExitOk : kExitBudget;
}

int cmd_verify(const std::string& coloring_path, const std::string& instance_path,
               std::optional<std::uint64_t> n_max_flag, const std::string& out) {
  const InstanceDescription d = load_instance(instance_path);
  const std::string text = read_text_file(coloring_path);
  if (coloring_group(text) != d.instance.kind()) throw ParseError("coloring and instance use different groups");
  const ColoringFile coloring = parse_coloring(text);
  const std::uint64_t n_max = effective_n_max(d, n_max_flag);
  const VerificationReport report = full_report(coloring.assignment, d.instance, n_max);
  emit(out, format_report(report, d.instance));
  if (!out.empty() && out != "-" && !report.clean()) std::cout << format_report(report, d.instance);
  return report.clean() ? kExitOk : kExitFailed;
}

struct MeasureFlags {
  std::string instance;
  std::string pattern;
  std::string loc1;
  std::string loc2;
  std::string window;
  std::uint64_t radius = 10;
  std::uint64_t runs = 2000;
  std::uint64_t seed = 1;
  double tol = 0.05;
  std::optional<std::uint64_t> margin;
  std::uint64_t max_resamples = 1'000'000;
  std::optional<std::uint64_t> n_max;
  unsigned threads = 0;
  std::string out;
};

int cmd_measure(const MeasureFlags& o, const std::vector<std::string>& args) {
  if (o.runs < kMinMeasureRuns) {
    std::cerr << "refusing to estimate frequencies from fewer than " << kMinMeasureRuns << " runs\n";
    return kExitInput;
  }
  const InstanceDescription d = load_instance(o.instance);
  const GroupKind kind = d.instance.kind();
  const Pattern pattern = parse_pattern(kind, read_text_file(o.pattern));
  const GroupElement loc1 = parse_element(kind, o.loc1);
  const GroupElement loc2 = parse_element(kind, o.loc2);
  const auto window = make_window(kind, o.window, o.radius);
  const WindowProblem problem(window, d.instance.truncated(effective_n_max(d, o.n_max)));
  MeasureOptions options;
  options.margin = o.margin;
  options.max_resamples = o.max_resamples;
  options.threads = o.threads;
  const InvarianceResult result = invariance_check(pattern, loc1, loc2, problem, o.runs, o.seed, o.tol, options);

  std::ostringstream text;
  text << "heuristic=empirical cylinder frequencies of Moser-Tardos outputs; not a correctness claim\n"
       << format_estimate(result.first) << "\n"
       << format_estimate(result.second) << "\n";
  text.setf(std::ios::fixed);
  text.precision(6);
  text << "difference=" << result.difference << "\n"
       << "tolerance=" << result.tolerance << "\n"
       << "invariance=" << (result.pass ? "pass" : "fail") << "\n";
  emit(o.out, text.str());
  emit_manifest(o.out, "measure",
                {{"group", std::string(to_string(kind))}, {"instance", o.instance}, {"pattern", o.pattern},
                 {"window", window->to_string()}, {"seed", std::to_string(o.seed)}, {"runs", std::to_string(o.runs)}},
                args);
  return result.pass ? kExitOk : kExitFailed;
}

int cmd_oracle(const std::string& instance_path, const std::string& window_spec, std::uint64_t radius, bool list,
               std::optional<std::uint64_t> n_max_flag) {
  const InstanceDescription d = load_instance(instance_path);
  const auto window = make_window(d.instance.kind(), window_spec, radius);
  if (window->size() > kBruteForceMaxCells) {
    std::cerr << "window has " << window->size() << " cells; the oracle accepts at most " << kBruteForceMaxCells
              << "\n";
    return kExitInput;
  }
  const Instance instance = d.instance.truncated(effective_n_max(d, n_max_flag));
  const auto constraints = constraints_in_window(*window, instance);
  const auto solutions = brute_force_solution_masks(*window, instance, constraints);
  std::cout << "window=" << window->to_string() << "\n"
            << "constraints=" << constraints.size() << "\n"
            << "solutions=" << solutions.size() << "\n";
  if (list) {
    for (std::uint32_t mask : solutions) {
      std::string row;
      for (std::size_t i = 0; i < window->size(); ++i) row += static_cast<char>('0' + ((mask >> i) & 1U));
      std::cout << row << "\n";
    }
  }
  return kExitOk;
}

int cmd_replay(const std::string& manifest_path) {
  std::vector<std::string> args;
  std::istringstream in(read_text_file(manifest_path));
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("arg=", 0) == 0) args.push_back(line.substr(4));
  }
  if (args.empty()) throw ParseError("manifest has no arg= lines");
  return run(args);
}

int run(const std::vector<std::string>& args) {
  CLI::App app{"lllshift: free subshifts from an invariant Lovasz Local Lemma instance"};
  app.require_subcommand(1);

  std::string group = "Z", psi, out, cert;
  std::uint64_t k = 0;
  auto* params = app.add_subcommand("params", "derive and verify N, a, M for a pattern (or size k)");
  params->add_option("--group", group, "group of the pattern (Z, Z2, F2)");
  params->add_option("--psi", psi, "pattern file");
  params->add_option("--k", k, "pattern size, instead of --psi");
  params->add_option("--out", out, "certificate file (default stdout)");

  auto* verify_cert = app.add_subcommand("verify-cert", "re-verify a certificate file");
  verify_cert->add_option("--cert", cert, "certificate file")->required();

  BuildOptions build_opts;
  auto* build = app.add_subcommand("build", "choose D0, D1..Dn_max and write an instance description");
  build->add_option("--group", build_opts.group, "Z, Z2 or F2");
  build->add_option("--psi", build_opts.psi, "pattern file");
  build->add_option("--cert", build_opts.cert, "certificate file");
  build->add_option("--N", build_opts.N, "toy instance: |D0| (uncertified)");
  build->add_option("--M", build_opts.M, "toy instance: M (uncertified)");
  build->add_option("--n-max", build_opts.n_max, "period families n = 1..n_max");
  build->add_option("--out", build_opts.out, "instance file (default stdout)");

  SolveOptions solve_opts;
  auto* solve_cmd = app.add_subcommand("solve", "Moser-Tardos on a finite window");
  solve_cmd->add_option("--instance", solve_opts.instance, "instance file")->required();
  solve_cmd->add_option("--window", solve_opts.window, "box:lo..hi, box:x0..x1,y0..y1 or ball:R");
  solve_cmd->add_option("--radius", solve_opts.radius, "ball radius when --window is absent");
  solve_cmd->add_option("--seed", solve_opts.seed, "seed");
  solve_cmd->add_option("--max-resamples", solve_opts.max_resamples, "resample budget");
  solve_cmd->add_option("--n-max", solve_opts.n_max, "use period families n <= n_max only");
  solve_cmd->add_option("--out", solve_opts.out, "coloring file (default stdout)");
  solve_cmd->add_option("--report", solve_opts.report, "solver report file");

  std::string coloring, instance_path;
  std::optional<std::uint64_t> verify_n_max;
  auto* verify = app.add_subcommand("verify", "check a coloring against an instance");
  verify->add_option("--coloring", coloring, "coloring file")->required();
  verify->add_option("--instance", instance_path, "instance file")->required();
  verify->add_option("--n-max", verify_n_max, "check period families n <= n_max only");
  verify->add_option("--out", out, "report file (default stdout)");

  MeasureFlags measure_opts;
  auto* measure = app.add_subcommand("measure", "heuristic invariance check of cylinder frequencies");
  measure->add_option("--instance", measure_opts.instance, "instance file")->required();
  measure->add_option("--pattern", measure_opts.pattern, "pattern file")->required();
  measure->add_option("--loc1", measure_opts.loc1, "first location")->required();
  measure->add_option("--loc2", measure_opts.loc2, "second location")->required();
  measure->add_option("--window", measure_opts.window, "window spec");
  measure->add_option("--radius", measure_opts.radius, "ball radius when --window is absent");
  measure->add_option("--runs", measure_opts.runs, "number of seeds (>= 100)");
  measure->add_option("--seed", measure_opts.seed, "first seed");
  measure->add_option("--tol", measure_opts.tol, "tolerance on the frequency difference");
  measure->add_option("--margin", measure_opts.margin, "interior margin");
  measure->add_option("--max-resamples", measure_opts.max_resamples, "resample budget per run");
  measure->add_option("--n-max", measure_opts.n_max, "use period families n <= n_max only");
  measure->add_option("--threads", measure_opts.threads, "worker threads (0 = all cores)");
  measure->add_option("--out", measure_opts.out, "estimate file (default stdout)");

  std::string oracle_window;
  std::uint64_t oracle_radius = 1;
  bool oracle_list = false;
  std::optional<std::uint64_t> oracle_n_max;
  auto* oracle = app.add_subcommand("oracle", "count window solutions by exhaustive enumeration");
  oracle->add_option("--instance", instance_path, "instance file")->required();
  oracle->add_option("--window", oracle_window, "window spec");
  oracle->add_option("--radius", oracle_radius, "ball radius when --window is absent");
  oracle->add_option("--n-max", oracle_n_max, "use period families n <= n_max only");
  oracle->add_flag("--list", oracle_list, "print every solution");

  std::string manifest;
  auto* replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  replay->add_option("--manifest", manifest, "manifest file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  if (params->parsed()) return cmd_params(group, psi, k, out, args);
  if (verify_cert->parsed()) return cmd_verify_cert(cert);
  if (build->parsed()) return cmd_build(build_opts, args);
  if (solve_cmd->parsed()) return cmd_solve(solve_opts, args);
  if (verify->parsed()) return cmd_verify(coloring, instance_path, verify_n_max, out);
  if (measure->parsed()) return cmd_measure(measure_opts, args);
  if (oracle->parsed()) return cmd_oracle(instance_path, oracle_window, oracle_radius, oracle_list, oracle_n_max);
  if (replay->parsed()) return cmd_replay(manifest);
  return kExitInput;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    return run(args);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const UsageError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
