#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "spcd/assembly.hpp"
#include "spcd/mesh.hpp"
#include "spcd/problem.hpp"
#include "spcd/thomas.hpp"

namespace spcd {

/// Mesh plus nodal values of the computed solution; exact nodal values are
/// attached whenever the problem has a closed form.
struct SolutionGrid {
  Mesh mesh;
  std::vector<double> u_numeric;
  std::optional<std::vector<double>> u_exact;
  SolveStats solve_stats;
};

/// max_i |u_numeric_i - u_exact_i| over all N + 1 nodes.
inline double max_norm_error(const SolutionGrid& grid) {
  if (!grid.u_exact)
    throw std::invalid_argument("max_norm_error: grid has no exact values");
  if (grid.u_exact->size() != grid.u_numeric.size())
    throw std::invalid_argument("max_norm_error: nodal value length mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.u_numeric.size(); ++i)
    worst = std::max(worst, std::abs(grid.u_numeric[i] - (*grid.u_exact)[i]));
  return worst;
}

/// Convergence rate log2(e_coarse / e_fine) for one mesh doubling.
inline double observed_order(double error_coarse, double error_fine) {
  if (!(error_coarse > 0.0) || !(error_fine > 0.0))
    throw std::domain_error("observed_order: errors must be positive");
  return std::log2(error_coarse / error_fine);
}

/// Pointwise envelope C * (h + exp(-alpha * (1 - x_i) / (alpha * h + 2 eps)))
/// for the upwind scheme on a uniform mesh: O(h) away from the layer, but the
/// second term refuses to shrink near x = 1 once h dominates eps.
inline double uniform_upwind_envelope(double x_i, double h, double epsilon,
                                      double alpha, double c_const) {
  if (!(x_i >= 0.0 && x_i <= 1.0))
    throw std::domain_error("uniform_upwind_envelope: x outside [0, 1]");
  if (!(h > 0.0) || !(epsilon > 0.0) || !(alpha > 0.0) || !(c_const > 0.0))
    throw std::domain_error(
        "uniform_upwind_envelope: h, epsilon, alpha, C must be positive");
  return c_const *
         (h + std::exp(-alpha * (1.0 - x_i) / (alpha * h + 2.0 * epsilon)));
}

/// eps-uniform envelope C * ln(N) / N for the upwind scheme on the
/// layer-adapted mesh.
inline double shishkin_envelope(int n_intervals, double c_const) {
  if (n_intervals < 2)
    throw std::domain_error("shishkin_envelope: need at least 2 intervals");
  if (!(c_const > 0.0))
    throw std::domain_error("shishkin_envelope: C must be positive");
  const double n = static_cast<double>(n_intervals);
  return c_const * std::log(n) / n;
}

/// Assemble, solve, reattach boundary values, and (for the model problem)
/// sample the exact solution at the nodes.
inline SolutionGrid solve_bvp(const Problem& problem, const Mesh& mesh,
                              Scheme scheme) {
  const TridiagonalSystem system = assemble(problem, mesh, scheme);
  SolveResult solved = thomas_solve(system);

  SolutionGrid grid;
  grid.mesh = mesh;
  grid.solve_stats = solved.stats;
  grid.u_numeric.resize(mesh.points.size());
  grid.u_numeric.front() = problem.u_left();
  grid.u_numeric.back() = problem.u_right();
  std::copy(solved.solution.begin(), solved.solution.end(),
            grid.u_numeric.begin() + 1);

  if (auto exact = ExactSolution::try_create(problem)) {
    std::vector<double> values(mesh.points.size());
    for (std::size_t i = 0; i < mesh.points.size(); ++i)
      values[i] = (*exact)(mesh.points[i]);
    grid.u_exact = std::move(values);
  }
  return grid;
}

struct StudyRow {
  int n_intervals = 0;
  double max_error = 0.0;
  std::optional<double> observed_order;  // only between exact mesh doublings
  std::optional<double> theory_bound;    // only when an envelope was requested
};

struct ConvergenceReport {
  std::vector<StudyRow> rows;
  Scheme scheme = Scheme::Upwind;
  MeshKind mesh_kind = MeshKind::Uniform;
  double epsilon = 0.0;
};

struct StudyOptions {
  double sigma0 = 2.0;
  /// When set and the mesh is layer-adapted, theory_bound gets
  /// shishkin_envelope(N, C) per row.
  std::optional<double> envelope_constant;
};

/// Solve the same problem across a strictly increasing list of interval
/// counts and report max-norm errors, doubling rates, and optional theory
/// bounds. Any failure propagates; no partial report is returned.
inline ConvergenceReport refinement_study(const Problem& problem,
                                          std::span<const int> n_list,
                                          MeshKind mesh_kind, Scheme scheme,
                                          const StudyOptions& options = {}) {
  if (n_list.empty())
    throw std::invalid_argument("refinement_study: empty interval list");
  for (std::size_t i = 0; i + 1 < n_list.size(); ++i)
    if (n_list[i] >= n_list[i + 1])
      throw std::invalid_argument(
          "refinement_study: interval counts must be strictly increasing");

  ConvergenceReport report;
  report.scheme = scheme;
  report.mesh_kind = mesh_kind;
  report.epsilon = problem.epsilon();
  report.rows.reserve(n_list.size());

  for (int n : n_list) {
    const Mesh mesh = mesh_kind == MeshKind::Uniform
                          ? uniform_mesh(n)
                          : shishkin_mesh(n, problem.epsilon(),
                                          problem.alpha(), options.sigma0);
    const SolutionGrid grid = solve_bvp(problem, mesh, scheme);

    StudyRow row;
    row.n_intervals = n;
    row.max_error = max_norm_error(grid);
    if (!report.rows.empty()) {
      const StudyRow& prev = report.rows.back();
      if (n == 2 * prev.n_intervals && prev.max_error > 0.0 &&
          row.max_error > 0.0)
        row.observed_order = observed_order(prev.max_error, row.max_error);
    }
    if (mesh_kind == MeshKind::Shishkin && options.envelope_constant)
      row.theory_bound = shishkin_envelope(n, *options.envelope_constant);
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace spcd
