#include "fermifuse/implementer_fusion.hpp"
#include "fermifuse/suites.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace fermifuse;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("FileError", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_suite(const std::string& name, int n, std::uint64_t seed, double tol, int trials,
              bool timings) {
  std::vector<SuiteReport> reports;
  if (name == "all") {
    for (const std::string& s : suite_names())
      reports.push_back(run_suite(s, n, seed, tol, trials, timings));
    std::cout << reports_to_json(reports);
  } else {
    reports.push_back(run_suite(name, n, seed, tol, trials, timings));
    std::cout << report_to_json(reports.front());
  }
  for (const auto& r : reports)
    if (!r.pass()) return 1;
  return 0;
}

int cmd_fuse(const std::string& left_path, const std::string& right_path, int n) {
  OrthogonalElement gl, gr;
  try {
    gl = orthogonal_from_json(read_file(left_path));
    gr = orthogonal_from_json(read_file(right_path));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  }

  const FockSpace fock = make_fock(build_model(n));
  if (gl.g.rows() != fock.model.dim_v() || gr.g.rows() != fock.model.dim_v()) {
    std::cerr << "parse error: inputs must have dim " << fock.model.dim_v() << "\n";
    return 2;
  }

  try {
    const Implementer u = implement(fock, gl);
    const Implementer v = implement(fock, gr);
    if (!fusable(fock.model, u, v)) {
      std::cerr << "not fusable: the condition g'_- = tau g_+ tau fails for the pair\n";
      return 3;
    }
    const FusionContext ctx = make_fusion_context(fock);
    const Implementer fused = mu_hat(ctx, u, v);

    nlohmann::ordered_json out;
    out["g_fused"] = nlohmann::ordered_json::parse(orthogonal_to_json(fused.g));
    out["u_fused"] = nlohmann::ordered_json::parse(implementer_to_json(fused));
    out["residuals"] = {
        {"implementation", implementation_residual(fock, fused.u, fused.g.g)},
        {"unitarity",
         (fused.u * fused.u.adjoint() - Mat::Identity(fock.dim, fock.dim)).norm()}};
    std::cout << out.dump(2) << "\n";
    return 0;
  } catch (const Error& e) {
    if (e.code() == "NotFusable" || e.code() == "NotThetaOrthogonal" || e.code() == "NotEven") {
      std::cerr << "not fusable: " << e.what() << "\n";
      return 3;
    }
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite free-fermion laboratory: implementers, modular theory, Connes fusion"};
  app.require_subcommand(1);

  int n = 4;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int trials = 10;
  bool timings = false;

  auto* suite = app.add_subcommand("suite", "run a verification suite and print a JSON report");
  std::string suite_name;
  suite->add_option("name", suite_name, "one of: car irreducible implementer modular "
                                        "standardform fusion-coherence mu-hat theorem-agree "
                                        "fibre all")
      ->required();
  suite->add_option("--n", n, "number of modes N (even, 2..6)");
  suite->add_option("--seed", seed, "base RNG seed");
  suite->add_option("--tol", tol, "generic predicate tolerance");
  suite->add_option("--trials", trials, "randomized trials per suite");
  suite->add_flag("--timings", timings, "record wall time in the JSON (breaks byte-stability)");

  auto* fusec = app.add_subcommand("fuse", "Connes-fuse the implementers of two theta-orthogonals");
  std::string left_path, right_path;
  fusec->add_option("left", left_path, "JSON file with the first orthogonal element")->required();
  fusec->add_option("right", right_path, "JSON file with the second orthogonal element")
      ->required();
  fusec->add_option("--n", n, "number of modes N (even, 2..6)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (suite->parsed()) {
      if (!is_suite_name(suite_name)) {
        std::cerr << "unknown suite '" << suite_name << "'\n" << app.help() << "\n";
        return 2;
      }
      if (trials < 1) {
        std::cerr << "--trials must be positive\n";
        return 2;
      }
      return cmd_suite(suite_name, n, seed, tol, trials, timings);
    }
    if (fusec->parsed()) return cmd_fuse(left_path, right_path, n);
  } catch (const fermifuse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
