#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

namespace spcd {

enum class MeshKind { Uniform, Shishkin };

/// Partition 0 = x_0 < x_1 < ... < x_N = 1 together with how it was built.
/// sigma and transition are only set for layer-adapted meshes.
struct Mesh {
  std::vector<double> points;
  MeshKind kind = MeshKind::Uniform;
  std::optional<double> sigma;
  std::optional<double> transition;

  int n_intervals() const { return static_cast<int>(points.size()) - 1; }
};

/// Equidistant mesh x_i = i / N with N >= 2 intervals.
inline Mesh uniform_mesh(int n_intervals) {
  if (n_intervals < 2)
    throw std::invalid_argument("uniform_mesh: need at least 2 intervals");
  Mesh mesh;
  mesh.kind = MeshKind::Uniform;
  mesh.points.resize(static_cast<std::size_t>(n_intervals) + 1);
  for (int i = 0; i <= n_intervals; ++i)
    mesh.points[static_cast<std::size_t>(i)] =
        static_cast<double>(i) / n_intervals;
  mesh.points.front() = 0.0;
  mesh.points.back() = 1.0;
  return mesh;
}

/**
 * @brief Piecewise-equidistant layer-adapted mesh.
 *
 * With sigma = min(1/2, (sigma0 / alpha) * eps * ln N), the coarse region
 * [0, 1 - sigma] and the fine region [1 - sigma, 1] each get N/2 equal
 * subintervals. Each half is generated by interpolating from its own
 * endpoints, never by accumulating widths, so x_{N/2} equals 1 - sigma
 * exactly and the fine width is computed from the exact difference
 * 1 - transition. When the min clamps sigma to 1/2 (eps not small against
 * 1/ln N) the mesh degenerates to the uniform one, which is fine.
 */
inline Mesh shishkin_mesh(int n_intervals, double epsilon, double alpha = 1.0,
                          double sigma0 = 2.0) {
  if (n_intervals < 4 || n_intervals % 2 != 0)
    throw std::invalid_argument("shishkin_mesh: N must be even and >= 4");
  if (!(epsilon > 0.0) || epsilon > 1.0)
    throw std::invalid_argument("shishkin_mesh: epsilon must lie in (0, 1]");
  if (!(alpha > 0.0))
    throw std::invalid_argument("shishkin_mesh: alpha must be positive");
  if (!(sigma0 > 0.0))
    throw std::invalid_argument("shishkin_mesh: sigma0 must be positive");

  const double sigma =
      std::min(0.5, (sigma0 / alpha) * epsilon *
                        std::log(static_cast<double>(n_intervals)));
  const double transition = 1.0 - sigma;
  const int half = n_intervals / 2;

  Mesh mesh;
  mesh.kind = MeshKind::Shishkin;
  mesh.sigma = sigma;
  mesh.transition = transition;
  mesh.points.resize(static_cast<std::size_t>(n_intervals) + 1);

  // 1 - transition is exact (both operands in [1/2, 1]), so the fine half is
  // laid out against the true remaining width instead of re-rounding sigma.
  const double fine = 1.0 - transition;
  for (int i = 1; i < half; ++i)
    mesh.points[static_cast<std::size_t>(i)] =
        transition * (static_cast<double>(i) / half);
  for (int k = 1; k < half; ++k)
    mesh.points[static_cast<std::size_t>(half + k)] =
        transition + fine * (static_cast<double>(k) / half);
  mesh.points[0] = 0.0;
  mesh.points[static_cast<std::size_t>(half)] = transition;
  mesh.points[static_cast<std::size_t>(n_intervals)] = 1.0;

  // eps * N far below double resolution would collapse adjacent fine points
  for (std::size_t i = 0; i + 1 < mesh.points.size(); ++i)
    if (!(mesh.points[i] < mesh.points[i + 1]))
      throw std::invalid_argument(
          "shishkin_mesh: epsilon too small for this N, fine points collide");
  return mesh;
}

/// Widths h_i = x_{i+1} - x_i, one per interval.
inline std::vector<double> interval_widths(const Mesh& mesh) {
  std::vector<double> widths(mesh.points.size() - 1);
  for (std::size_t i = 0; i + 1 < mesh.points.size(); ++i)
    widths[i] = mesh.points[i + 1] - mesh.points[i];
  return widths;
}

}  // namespace spcd
