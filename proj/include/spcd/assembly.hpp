#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "spcd/mesh.hpp"
#include "spcd/problem.hpp"

namespace spcd {

enum class Scheme {
  CentralUniform,  // second-order central differences, uniform meshes only
  Upwind           // first-order upwinded convection, any mesh
};

/// Interior rows of the eliminated system T u = rhs. Boundary unknowns are
/// folded into rhs, so sub and sup carry n - 1 entries for n unknowns.
struct TridiagonalSystem {
  std::vector<double> sub;
  std::vector<double> diag;
  std::vector<double> sup;
  std::vector<double> rhs;

  std::size_t size() const { return diag.size(); }
};

/// Coefficients of a single interior row:
/// c_sub * u_{i-1} + c_diag * u_i + c_sup * u_{i+1}.
struct StencilRow {
  double sub;
  double diag;
  double sup;
};

/// Central-difference row on a uniform mesh of width h:
/// (-eps/h^2) [1, -2, 1] + (a_i / 2h) [-1, 0, 1].
inline StencilRow central_row(double h, double epsilon, double a_i) {
  const double diffusion = epsilon / (h * h);
  const double convection = a_i / (2.0 * h);
  return {-diffusion - convection, 2.0 * diffusion, -diffusion + convection};
}

/// Upwind row on a possibly nonuniform mesh: three-point second difference
/// plus a backward first difference for the convection term (the layer sits
/// at x = 1, so upstream is to the left).
inline StencilRow upwind_row(double h_left, double h_right, double epsilon,
                             double a_i) {
  const double spread = h_left + h_right;
  const double convection = a_i / h_left;
  return {-2.0 * epsilon / (h_left * spread) - convection,
          2.0 * epsilon / (h_left * h_right) + convection,
          -2.0 * epsilon / (h_right * spread)};
}

/**
 * @brief Assemble the interior finite difference system for problem + mesh +
 *        scheme. Row i carries rhs_i = f(x_i); the operator rows are left
 *        unscaled. Dirichlet values enter through the first and last rhs.
 *
 * The central scheme insists on a uniform mesh; the upwind rows on any mesh
 * form an M-matrix (positive diagonal, nonpositive off-diagonals, weak row
 * dominance), which is what keeps the solve pivot-free and the discrete
 * solution within the bounds of the data.
 */
inline TridiagonalSystem assemble(const Problem& problem, const Mesh& mesh,
                                  Scheme scheme) {
  if (scheme == Scheme::CentralUniform && mesh.kind != MeshKind::Uniform)
    throw std::invalid_argument(
        "assemble: central scheme requires a uniform mesh");
  const int n_int = mesh.n_intervals();
  if (n_int < 2)
    throw std::invalid_argument("assemble: mesh has no interior nodes");

  for (double x : mesh.points)
    if (!(problem.coeff_a(x) >= problem.alpha()))
      throw std::invalid_argument(
          "assemble: coeff_a(x) < alpha at a mesh node");

  const std::size_t n = static_cast<std::size_t>(n_int) - 1;
  TridiagonalSystem sys;
  sys.sub.resize(n - 1);
  sys.diag.resize(n);
  sys.sup.resize(n - 1);
  sys.rhs.resize(n);

  const double h_uniform = 1.0 / n_int;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + 1;
    const double x_i = mesh.points[i];
    const double a_i = problem.coeff_a(x_i);
    const StencilRow row =
        scheme == Scheme::CentralUniform
            ? central_row(h_uniform, problem.epsilon(), a_i)
            : upwind_row(mesh.points[i] - mesh.points[i - 1],
                         mesh.points[i + 1] - mesh.points[i],
                         problem.epsilon(), a_i);
    sys.diag[k] = row.diag;
    sys.rhs[k] = problem.source_f(x_i);
    if (k > 0)
      sys.sub[k - 1] = row.sub;
    else
      sys.rhs[k] -= row.sub * problem.u_left();
    if (k + 1 < n)
      sys.sup[k] = row.sup;
    else
      sys.rhs[k] -= row.sup * problem.u_right();
  }

  for (const auto* band : {&sys.sub, &sys.diag, &sys.sup, &sys.rhs})
    for (double v : *band)
      if (!std::isfinite(v))
        throw std::invalid_argument(
            "assemble: non-finite entry (check the coefficient callbacks)");
  return sys;
}

/// Max-norm residual max_i |(T * candidate - rhs)_i| via explicit row-wise
/// multiplication; certifies a solution independently of the solve path.
inline double residual_max_norm(const TridiagonalSystem& system,
                                std::span<const double> candidate) {
  const std::size_t n = system.size();
  if (candidate.size() != n)
    throw std::invalid_argument("residual_max_norm: candidate length mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double r = system.diag[i] * candidate[i] - system.rhs[i];
    if (i > 0) r += system.sub[i - 1] * candidate[i - 1];
    if (i + 1 < n) r += system.sup[i] * candidate[i + 1];
    worst = std::max(worst, std::abs(r));
  }
  return worst;
}

}  // namespace spcd
