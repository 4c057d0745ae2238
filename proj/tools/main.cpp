// Command line front end: solve a single problem instance, run a refinement
// study over a grid of (epsilon, N), or tabulate the theoretical error
// envelopes. Data files are written deterministically (shortest round-trip
// number formatting, no timestamps), so identical invocations produce
// byte-identical files.
//
// Exit codes: 0 success, 1 computation/runtime failure, 2 usage error.

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spcd/spcd.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

// Shortest decimal string that round-trips to the same double.
std::string fmt_double(double v) {
  std::array<char, 32> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

// Fixed-width scientific cell for the human-readable tables.
std::string fmt_sci(double v) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.4e", v);
  return std::string(buf.data());
}

int usage_error(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return kExitUsage;
}

int write_or_fail(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return kExitFailure;
  }
  out << content;
  out.close();
  if (!out) {
    std::cerr << "error: failed while writing '" << path << "'\n";
    return kExitFailure;
  }
  return 0;
}

spcd::MeshKind parse_mesh(const std::string& name) {
  return name == "uniform" ? spcd::MeshKind::Uniform
                           : spcd::MeshKind::Shishkin;
}

spcd::Scheme parse_scheme(const std::string& name) {
  return name == "central" ? spcd::Scheme::CentralUniform
                           : spcd::Scheme::Upwind;
}

// Shared validation for solve/study. Returns empty on success, otherwise the
// message for the usage error. Nothing is computed and no file is touched
// until this passes.
std::optional<std::string> check_run_args(const std::vector<double>& eps_list,
                                          const std::vector<int>& n_list,
                                          const std::string& mesh,
                                          const std::string& scheme,
                                          double alpha, double sigma0,
                                          bool want_increasing) {
  if (!(alpha > 0.0)) return "--alpha must be positive";
  if (!(sigma0 > 0.0)) return "--sigma0 must be positive";
  if (eps_list.empty()) return "--eps needs at least one value";
  if (n_list.empty()) return "--n needs at least one value";
  for (double eps : eps_list)
    if (!(eps > 0.0) || eps > 1.0)
      return "--eps values must lie in (0, 1]";
  if (scheme == "central" && mesh == "shishkin")
    return "the central scheme runs on uniform meshes only";
  for (int n : n_list) {
    if (mesh == "uniform" && n < 2) return "--n must be >= 2 on uniform meshes";
    if (mesh == "shishkin" && (n < 4 || n % 2 != 0))
      return "--n must be even and >= 4 on shishkin meshes";
  }
  if (want_increasing)
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
      if (n_list[i] >= n_list[i + 1])
        return "--n values must be strictly increasing";
  return std::nullopt;
}

struct SolveArgs {
  double eps = 0.0;
  int n = 0;
  std::string mesh;
  std::string scheme;
  double alpha = 1.0;
  double sigma0 = 2.0;
  std::string out;
  std::string format = "csv";
};

int run_solve(const SolveArgs& args) {
  if (auto msg = check_run_args({args.eps}, {args.n}, args.mesh, args.scheme,
                                args.alpha, args.sigma0, false))
    return usage_error(*msg);

  spcd::SolutionGrid grid;
  try {
    const spcd::Problem problem = spcd::Problem::model(args.eps, args.alpha);
    const spcd::Mesh mesh =
        args.mesh == "uniform"
            ? spcd::uniform_mesh(args.n)
            : spcd::shishkin_mesh(args.n, args.eps, args.alpha, args.sigma0);
    grid = spcd::solve_bvp(problem, mesh, parse_scheme(args.scheme));
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  std::ostringstream body;
  if (args.format == "csv") {
    body << "x,u_numeric,u_exact,abs_error\n";
    for (std::size_t i = 0; i < grid.mesh.points.size(); ++i) {
      const double exact = (*grid.u_exact)[i];
      body << fmt_double(grid.mesh.points[i]) << ','
           << fmt_double(grid.u_numeric[i]) << ',' << fmt_double(exact) << ','
           << fmt_double(std::abs(grid.u_numeric[i] - exact)) << '\n';
    }
  } else {
    body << std::setw(14) << "x" << std::setw(18) << "u_numeric"
         << std::setw(18) << "u_exact" << std::setw(14) << "abs_error" << '\n';
    for (std::size_t i = 0; i < grid.mesh.points.size(); ++i) {
      const double exact = (*grid.u_exact)[i];
      body << std::setw(14) << fmt_sci(grid.mesh.points[i]) << std::setw(18)
           << fmt_sci(grid.u_numeric[i]) << std::setw(18) << fmt_sci(exact)
           << std::setw(14) << fmt_sci(std::abs(grid.u_numeric[i] - exact))
           << '\n';
    }
  }
  if (int rc = write_or_fail(args.out, body.str())) return rc;

  std::cout << "max_norm_error = " << fmt_double(spcd::max_norm_error(grid))
            << "\n"
            << "solve_time_s = "
            << fmt_double(grid.solve_stats.elapsed.count()) << "\n";
  return 0;
}

struct StudyArgs {
  std::vector<double> eps_list;
  std::vector<int> n_list;
  std::string mesh;
  std::string scheme;
  double alpha = 1.0;
  double sigma0 = 2.0;
  double envelope_c = 1.0;
  std::string out;
  std::string format = "csv";
};

int run_study(const StudyArgs& args) {
  if (auto msg = check_run_args(args.eps_list, args.n_list, args.mesh,
                                args.scheme, args.alpha, args.sigma0, true))
    return usage_error(*msg);
  if (!(args.envelope_c > 0.0)) return usage_error("--const must be positive");

  std::vector<spcd::ConvergenceReport> reports;
  try {
    for (double eps : args.eps_list) {
      const spcd::Problem problem = spcd::Problem::model(eps, args.alpha);
      spcd::StudyOptions options;
      options.sigma0 = args.sigma0;
      if (args.mesh == "shishkin") options.envelope_constant = args.envelope_c;
      reports.push_back(spcd::refinement_study(problem, args.n_list,
                                               parse_mesh(args.mesh),
                                               parse_scheme(args.scheme),
                                               options));
    }
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }

  std::ostringstream body;
  if (args.format == "csv") {
    body << "epsilon,N,max_error,order,theory_bound\n";
    for (std::size_t r = 0; r < reports.size(); ++r) {
      for (const spcd::StudyRow& row : reports[r].rows) {
        body << fmt_double(args.eps_list[r]) << ',' << row.n_intervals << ','
             << fmt_double(row.max_error) << ',';
        if (row.observed_order) body << fmt_double(*row.observed_order);
        body << ',';
        if (row.theory_bound) body << fmt_double(*row.theory_bound);
        body << '\n';
      }
    }
  } else {
    body << "max-norm errors\n" << std::setw(12) << "eps \\ N";
    for (int n : args.n_list) body << std::setw(13) << n;
    body << '\n';
    for (std::size_t r = 0; r < reports.size(); ++r) {
      body << std::setw(12) << fmt_double(args.eps_list[r]);
      for (const spcd::StudyRow& row : reports[r].rows)
        body << std::setw(13) << fmt_sci(row.max_error);
      body << '\n';
    }
    bool any_order = false;
    for (const auto& report : reports)
      for (const auto& row : report.rows)
        if (row.observed_order) any_order = true;
    if (any_order) {
      body << "\nobserved orders\n" << std::setw(12) << "eps \\ N";
      for (std::size_t i = 1; i < args.n_list.size(); ++i)
        body << std::setw(13) << args.n_list[i];
      body << '\n';
      for (std::size_t r = 0; r < reports.size(); ++r) {
        body << std::setw(12) << fmt_double(args.eps_list[r]);
        for (std::size_t i = 1; i < reports[r].rows.size(); ++i) {
          const auto& order = reports[r].rows[i].observed_order;
          if (order) {
            std::array<char, 32> cell{};
            std::snprintf(cell.data(), cell.size(), "%.4f", *order);
            body << std::setw(13) << cell.data();
          } else {
            body << std::setw(13) << "-";
          }
        }
        body << '\n';
      }
    }
  }
  if (int rc = write_or_fail(args.out, body.str())) return rc;

  std::cout << "wrote " << args.out << "\n";
  return 0;
}

struct BoundsArgs {
  std::vector<int> n_list;
  std::vector<double> eps_list;
  std::string mesh = "shishkin";
  double alpha = 1.0;
  double envelope_c = 1.0;
  std::string out;
  std::string format = "csv";
};

int run_bounds(const BoundsArgs& args) {
  if (!(args.envelope_c > 0.0)) return usage_error("--const must be positive");
  if (!(args.alpha > 0.0)) return usage_error("--alpha must be positive");
  if (args.n_list.empty()) return usage_error("--n needs at least one value");
  for (int n : args.n_list)
    if (n < 2) return usage_error("--n values must be >= 2");

  std::ostringstream body;
  if (args.mesh == "shishkin") {
    if (args.format == "csv") {
      body << "N,shishkin_bound\n";
      for (int n : args.n_list)
        body << n << ','
             << fmt_double(spcd::shishkin_envelope(n, args.envelope_c))
             << '\n';
    } else {
      body << std::setw(10) << "N" << std::setw(16) << "shishkin_bound"
           << '\n';
      for (int n : args.n_list)
        body << std::setw(10) << n << std::setw(16)
             << fmt_sci(spcd::shishkin_envelope(n, args.envelope_c)) << '\n';
    }
  } else {
    // pointwise uniform-mesh envelope: needs a single N and a single epsilon
    if (args.n_list.size() != 1)
      return usage_error("uniform bounds take exactly one --n value");
    if (args.eps_list.size() != 1)
      return usage_error("uniform bounds take exactly one --eps value");
    const double eps = args.eps_list.front();
    if (!(eps > 0.0) || eps > 1.0)
      return usage_error("--eps values must lie in (0, 1]");
    const int n = args.n_list.front();
    const double h = 1.0 / n;
    const spcd::Mesh mesh = spcd::uniform_mesh(n);
    if (args.format == "csv") {
      body << "x,upwind_bound\n";
      for (double x : mesh.points)
        body << fmt_double(x) << ','
             << fmt_double(spcd::uniform_upwind_envelope(x, h, eps, args.alpha,
                                                         args.envelope_c))
             << '\n';
    } else {
      body << std::setw(14) << "x" << std::setw(16) << "upwind_bound" << '\n';
      for (double x : mesh.points)
        body << std::setw(14) << fmt_sci(x) << std::setw(16)
             << fmt_sci(spcd::uniform_upwind_envelope(x, h, eps, args.alpha,
                                                      args.envelope_c))
             << '\n';
    }
  }
  if (int rc = write_or_fail(args.out, body.str())) return rc;

  std::cout << "wrote " << args.out << "\n";
  return 0;
}

// Default output path: <stem>.csv, or <stem>.txt for the table format.
void apply_default_out(std::string& out, const std::string& format,
                       const std::string& stem) {
  if (out.empty()) out = stem + (format == "table" ? ".txt" : ".csv");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Finite difference solver for -eps*u'' + a(x)*u' = f(x) on (0, 1) "
      "with u(0) = u(1) = 0"};
  app.require_subcommand(1);

  const auto mesh_values = CLI::IsMember({"uniform", "shishkin"});
  const auto scheme_values = CLI::IsMember({"central", "upwind"});
  const auto format_values = CLI::IsMember({"csv", "table"});

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand(
      "solve", "Solve one instance and write nodal values with errors");
  solve->add_option("--eps", solve_args.eps, "Perturbation parameter in (0, 1]")
      ->required();
  solve->add_option("--n", solve_args.n, "Number of mesh intervals")
      ->required();
  solve->add_option("--mesh", solve_args.mesh, "Mesh family")
      ->required()
      ->check(mesh_values);
  solve->add_option("--scheme", solve_args.scheme, "Difference scheme")
      ->required()
      ->check(scheme_values);
  solve->add_option("--alpha", solve_args.alpha,
                    "Lower bound on the convection coefficient");
  solve->add_option("--sigma0", solve_args.sigma0,
                    "Layer width multiplier for shishkin meshes");
  solve->add_option("--out", solve_args.out, "Output path");
  solve->add_option("--format", solve_args.format, "Output format")
      ->check(format_values);

  StudyArgs study_args;
  CLI::App* study = app.add_subcommand(
      "study", "Refinement study over epsilon and N grids");
  study->add_option("--eps", study_args.eps_list, "Perturbation parameters")
      ->required();
  study->add_option("--n", study_args.n_list,
                    "Interval counts, strictly increasing")
      ->required();
  study->add_option("--mesh", study_args.mesh, "Mesh family")
      ->required()
      ->check(mesh_values);
  study->add_option("--scheme", study_args.scheme, "Difference scheme")
      ->required()
      ->check(scheme_values);
  study->add_option("--alpha", study_args.alpha,
                    "Lower bound on the convection coefficient");
  study->add_option("--sigma0", study_args.sigma0,
                    "Layer width multiplier for shishkin meshes");
  study->add_option("--const", study_args.envelope_c,
                    "Constant C in the theoretical bound column");
  study->add_option("--out", study_args.out, "Output path");
  study->add_option("--format", study_args.format, "Output format")
      ->check(format_values);

  BoundsArgs bounds_args;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Tabulate theoretical error envelopes");
  bounds->add_option("--n", bounds_args.n_list, "Interval counts")->required();
  bounds->add_option("--eps", bounds_args.eps_list,
                     "Perturbation parameter (uniform bounds only)");
  bounds->add_option("--mesh", bounds_args.mesh, "Mesh family")
      ->check(mesh_values);
  bounds->add_option("--alpha", bounds_args.alpha,
                     "Lower bound on the convection coefficient");
  bounds->add_option("--const", bounds_args.envelope_c,
                     "Constant C in the envelope");
  bounds->add_option("--out", bounds_args.out, "Output path");
  bounds->add_option("--format", bounds_args.format, "Output format")
      ->check(format_values);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  apply_default_out(solve_args.out, solve_args.format, "solution");
  apply_default_out(study_args.out, study_args.format, "study");
  apply_default_out(bounds_args.out, bounds_args.format, "bounds");

  if (solve->parsed()) return run_solve(solve_args);
  if (study->parsed()) return run_study(study_args);
  return run_bounds(bounds_args);
}
